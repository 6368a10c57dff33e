//! The Lerch zeta-function L(λ,α,s) = Σ_{m≥0} e^{2πiλm} (m+α)^{-s}, its
//! functional equation, the bilateral Lipschitz identity, and the
//! Lipschitz–Kronecker closed-form sum.
//!
//! For non-integral λ the evaluator uses the real-axis Mellin-type integral
//!   Γ(s)·L(λ,α,s) = ∫₀^∞ x^{s-1} e^{-αx} / (1 - e^{2πiλ - x}) dx,
//! whose denominator is bounded away from zero on x > 0. Subtracting the
//! degree-1 Taylor polynomial of the non-power factor at x = 0 and folding
//! the subtracted monomials back as 1/(s+k) terms gives
//!   L = [ (s+1)·g₀ + s·g₁ + s(s+1)·(J₀ + J₁) ] / Γ(s+2),
//! regular through s = 0 and s = -1 and supported on Re s > -3/2. Integral
//! λ delegates to the Hurwitz evaluator (the polar case).

use num_complex::Complex64;

use crate::error::EvalError;
use crate::hurwitz::hurwitz_zeta;
use crate::quadrature::integrate;
use crate::special::{bernoulli_factorial_ratio, gamma};
use crate::{real_pow, unit_phase, ComplexValue, EvalResult};

use std::f64::consts::PI;

/// Lerch parameters (λ, α); the exponent s is supplied per call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchParams {
    lambda: f64,
    alpha: f64,
}

impl LerchParams {
    pub fn new(lambda: f64, alpha: f64) -> Result<Self, EvalError> {
        if !lambda.is_finite() || !alpha.is_finite() {
            return Err(EvalError::Domain(format!(
                "non-finite Lerch parameters λ={lambda}, α={alpha}"
            )));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(EvalError::Domain(format!("need α in (0,1], got {alpha}")));
        }
        Ok(Self { lambda, alpha })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Integral λ: the series degenerates to ζ(s,α), with a pole at s = 1.
    pub fn is_polar(&self) -> bool {
        self.lambda == self.lambda.round()
    }
}

/// Half-plane supported by the integral evaluator for non-integral λ.
const EVALUATOR_RE_FLOOR: f64 = -1.5;

/// L(λ,α,s). Integral λ is exactly ζ(s,α); otherwise the function is entire
/// in s (this evaluator covers Re s > -3/2).
pub fn lerch_zeta(p: &LerchParams, s: ComplexValue) -> Result<EvalResult, EvalError> {
    lerch_eval(p.lambda, p.alpha, s)
}

/// Core evaluator; accepts any α > 0 (internal recursions shift α above 1).
fn lerch_eval(lambda: f64, alpha: f64, s: ComplexValue) -> Result<EvalResult, EvalError> {
    let lam = lambda - lambda.floor(); // in [0,1)
    if lam == 0.0 {
        return hurwitz_zeta(s, alpha);
    }
    if s.re <= EVALUATOR_RE_FLOOR {
        return Err(EvalError::Domain(format!(
            "integral evaluator covers Re s > {EVALUATOR_RE_FLOOR}, got {s}"
        )));
    }

    // Peel leading terms until the exponential scale e^{-αx} keeps the
    // upper integral short: L(λ,α,s) = α^{-s} + e^{2πiλ} L(λ,α+1,s).
    let w = unit_phase(lam);
    let mut prefix = Complex64::new(0.0, 0.0);
    let mut phase = Complex64::new(1.0, 0.0);
    let mut a = alpha;
    while a < 0.75 {
        prefix += phase * real_pow(a, -s);
        phase *= w;
        a += 1.0;
    }

    let g0 = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - w);
    let g1 = -a * g0 - w * g0 * g0;
    let f = |x: f64| {
        let denom = Complex64::new(1.0, 0.0) - w * (-x).exp();
        Complex64::new((-a * x).exp(), 0.0) / denom
    };

    let scale = 1.0 + g0.norm() + g1.norm();
    let sm1 = s - 1.0;
    let (j0, e0) = integrate(
        |x| real_pow(x, sm1) * (f(x) - g0 - g1 * x),
        0.0,
        1.0,
        1e-13 * scale,
    )?;
    let x_cut = (46.0 + 6.0 * s.re.max(0.0)) / a;
    let (j1, e1) = integrate(|x| real_pow(x, sm1) * f(x), 1.0, x_cut, 1e-13 * scale)?;

    let g2 = gamma(s + 2.0)?;
    let core = ((s + 1.0) * g0 + s * g1 + s * (s + 1.0) * (j0 + j1)) / g2;
    let value = prefix + phase * core;
    let err = ((e0 + e1) * (s.norm() + 1.0) * (s.norm() + 2.0) / g2.norm()
        + 1e-20 * scale)
        + f64::EPSILON * value.norm();
    EvalResult::new(value, err)
}

/// Residual of the Lerch functional equation on its strip of validity
/// (λ ∈ (0,1), α ∈ (0,1], Re s ∈ (0,1)):
/// L(λ,α,1-s) = (2π)^{-s} Γ(s) [ e^{πis/2 - 2πiαλ} L(-α,λ,s)
///                              + e^{-πis/2 + 2πiα(1-λ)} L(α,1-λ,s) ].
pub fn lerch_fe_residual(p: &LerchParams, s: ComplexValue) -> Result<f64, EvalError> {
    let (lam, alpha) = (p.lambda, p.alpha);
    if !(lam > 0.0 && lam < 1.0) {
        return Err(EvalError::Domain(format!(
            "functional equation needs λ in (0,1), got {lam}"
        )));
    }
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(EvalError::Domain(format!(
            "functional equation needs Re s in (0,1), got {s}"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let lhs = lerch_eval(lam, alpha, one - s)?.value;
    let t1 = lerch_eval(-alpha, lam, s)?.value;
    let t2 = lerch_eval(alpha, 1.0 - lam, s)?.value;
    let i_half_pi_s = (Complex64::new(0.0, PI / 2.0) * s).exp();
    let rhs = real_pow(2.0 * PI, -s)
        * gamma(s)?
        * (i_half_pi_s * unit_phase(-alpha * lam) * t1
            + i_half_pi_s.inv() * unit_phase(alpha * (1.0 - lam)) * t2);
    Ok((lhs - rhs).norm())
}

/// One-sided twisted sum T(λ,β,s) = Σ_{k≥0} e^{2πiλk} (k+β)^{-s} for
/// non-integral λ, by Euler–Maclaurin with the oscillatory tail integral
/// ∫_N^∞ e^{2πiλx}(x+β)^{-s} dx = e^{-2πiλβ} z^{s-1} Γ(1-s, z(N+β)),
/// z = -2πiλ, evaluated by the large-argument asymptotic series. Valid on
/// Re s > 0 (and beyond; the oscillation regularizes the sum).
pub fn twisted_sum(lambda: f64, beta: f64, s: ComplexValue) -> Result<EvalResult, EvalError> {
    let lam = lambda - lambda.round(); // in [-1/2, 1/2]
    if lam == 0.0 {
        return Err(EvalError::Domain(format!(
            "twisted sum needs non-integral λ, got {lambda}"
        )));
    }
    if beta <= 0.0 {
        return Err(EvalError::Domain(format!("need β > 0, got {beta}")));
    }
    let n = 64.0_f64.max((8.0 / lam.abs()).ceil()).max(4.0 * s.norm()) as u64;

    // direct head
    let w = unit_phase(lam);
    let mut head = Complex64::new(0.0, 0.0);
    let mut phase = Complex64::new(1.0, 0.0);
    for k in 0..n {
        head += phase * real_pow(k as f64 + beta, -s);
        phase *= w;
    }

    let x = n as f64 + beta;
    let z = Complex64::new(0.0, -2.0 * PI * lam);
    // Γ(1-s, zx) ~ (zx)^{-s} e^{-zx} Σ_k Π_j (1-s-j)/ (zx)^k, |zx| ≥ 50.
    let zx = z * x;
    let mut series = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut asym_err = 0.0;
    for k in 1..=45 {
        let next = term * (Complex64::new(1.0 - k as f64, 0.0) - s) / zx;
        if next.norm() >= term.norm() && k > 2 {
            asym_err = term.norm();
            break;
        }
        term = next;
        series += term;
        asym_err = term.norm();
        if term.norm() < 1e-18 {
            break;
        }
    }
    let zx_pow = ((-s) * zx.ln()).exp();
    let e_zx = unit_phase((lam * x).rem_euclid(1.0)); // e^{-zx}, |·| = 1
    let tail_gamma = zx_pow * e_zx * series;
    let tail = unit_phase(-lam * beta) * ((s - 1.0) * z.ln()).exp() * tail_gamma;
    let tail_scale = (zx_pow * ((s - 1.0) * z.ln()).exp()).norm();

    // Euler–Maclaurin endpoint terms at N for f(x) = e^{2πiλx}(x+β)^{-s}:
    // f^{(r)}(N) = e^{2πiλN} Σ_i C(r,i) (2πiλ)^{r-i} (-1)^i (s)_i (N+β)^{-s-i}.
    let phase_n = unit_phase((lam * n as f64).rem_euclid(1.0));
    let max_i = 60;
    let mut poch = Vec::with_capacity(max_i); // (-1)^i (s)_i (N+β)^{-s-i}
    let mut acc = real_pow(x, -s);
    let mut rising = Complex64::new(1.0, 0.0);
    for i in 0..max_i {
        poch.push(rising * acc * if i % 2 == 0 { 1.0 } else { -1.0 });
        rising *= s + i as f64;
        acc /= x;
    }
    let zpow: Vec<Complex64> = {
        let mut v = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..max_i {
            v.push(v.last().unwrap() * z * (-1.0)); // (2πiλ)^k = (-z)^k
        }
        v
    };
    let deriv = |r: usize| -> Complex64 {
        let mut binom = 1.0f64;
        let mut sum = Complex64::new(0.0, 0.0);
        for i in 0..=r {
            sum += binom * zpow[r - i] * poch[i];
            binom = binom * (r - i) as f64 / (i + 1) as f64;
        }
        phase_n * sum
    };

    let f_n = phase_n * real_pow(x, -s);
    let mut corrections = Complex64::new(0.0, 0.0);
    let mut em_err = f_n.norm();
    let mut last = f64::INFINITY;
    for j in 1..=28 {
        let t = bernoulli_factorial_ratio(2 * j) * deriv(2 * j as usize - 1);
        let mag = t.norm();
        if mag > last {
            em_err = 2.0 * last;
            break;
        }
        corrections += t;
        em_err = 2.0 * mag;
        last = mag;
        if mag < 1e-18 * (1.0 + head.norm()) {
            break;
        }
    }

    let value = head + tail + f_n * 0.5 - corrections;
    let err = em_err + asym_err * tail_scale + 8.0 * f64::EPSILON * (head.norm() + 1.0);
    EvalResult::new(value, err)
}

/// Residual of the bilateral Lipschitz identity for u, v ∉ Z, Re s ∈ (0,1):
/// Γ(s/2) Σ_n e^{-2πiv(n+u)} [π(n+u)²]^{-s/2}
///   = Γ((1-s)/2) Σ_n e^{2πinu} [π(n+v)²]^{-(1-s)/2}.
/// Both bilateral sums split into one-sided twisted sums summed symmetrically.
pub fn lipschitz_fe_residual(u: f64, v: f64, s: ComplexValue) -> Result<f64, EvalError> {
    if u == u.round() || v == v.round() {
        return Err(EvalError::Domain(format!(
            "identity needs u, v off the integers, got u={u}, v={v}"
        )));
    }
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(EvalError::Domain(format!(
            "identity needs Re s in (0,1), got {s}"
        )));
    }
    let u = u - u.floor();
    let v = v - v.floor();
    let one = Complex64::new(1.0, 0.0);

    // Σ_n e^{-2πiv(n+u)} |n+u|^{-s} = e^{-2πiuv} [T(-v,u,s) + e^{2πiv} T(v,1-u,s)]
    let xsum = twisted_sum(-v, u, s)?.value + unit_phase(v) * twisted_sum(v, 1.0 - u, s)?.value;
    // Σ_n e^{2πinu} |n+v|^{-(1-s)} = T(u,v,1-s) + e^{-2πiu} T(-u,1-v,1-s)
    let ysum = twisted_sum(u, v, one - s)?.value
        + unit_phase(-u) * twisted_sum(-u, 1.0 - v, one - s)?.value;

    let lhs = gamma(s / 2.0)? * real_pow(PI, -s / 2.0) * unit_phase(-u * v) * xsum;
    let rhs = gamma((one - s) / 2.0)? * real_pow(PI, (s - one) / 2.0) * ysum;
    Ok((lhs - rhs).norm())
}

/// Principal-value evaluation of Σ_{m∈Z} e^{2πimλ}/(m-α) against the two
/// closed-form candidates. Returns (lhs, [historical candidate
/// 2πi e^{2πiαλ}/(1-e^{πiαλ}), geometric candidate 2πi e^{2πiαλ}/(1-e^{2πiα})]).
pub fn lipschitz_kronecker_check(
    lambda: f64,
    alpha: f64,
) -> Result<(ComplexValue, [ComplexValue; 2]), EvalError> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(EvalError::Domain(format!("need λ in (0,1), got {lambda}")));
    }
    if alpha == alpha.round() {
        return Err(EvalError::Domain(format!("need α off the integers, got {alpha}")));
    }
    let lhs = kronecker_pv_sum(lambda, alpha, 200_000);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let numer = two_pi_i * unit_phase(alpha * lambda);
    let historical = numer / (Complex64::new(1.0, 0.0) - unit_phase(alpha * lambda / 2.0));
    let geometric = numer / (Complex64::new(1.0, 0.0) - unit_phase(alpha));
    Ok((lhs, [historical, geometric]))
}

/// Symmetric partial sums S(M) = Σ_{|m| ≤ M} e^{2πimλ}/(m-α), averaged over a
/// window of cutoffs (the boundary term oscillates with mean ~ M^{-2}).
pub(crate) fn kronecker_pv_sum(lambda: f64, alpha: f64, m0: u64) -> ComplexValue {
    let w = unit_phase(lambda);
    let mut pos = Complex64::new(1.0, 0.0);
    let mut neg = Complex64::new(1.0, 0.0);
    let mut s = Complex64::new(-1.0 / alpha, 0.0);
    let window = 4000;
    let mut averaged = Complex64::new(0.0, 0.0);
    for m in 1..=(m0 + window) {
        pos *= w;
        neg *= w.conj();
        let mf = m as f64;
        s += pos / (mf - alpha) - neg / (mf + alpha);
        if m > m0 {
            averaged += s;
        }
    }
    averaged / window as f64
}
