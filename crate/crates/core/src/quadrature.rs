//! Adaptive Gauss-Kronrod quadrature for complex-valued integrands.
//!
//! A 7-point Gauss / 15-point Kronrod pair is applied per panel; the
//! Gauss-Kronrod difference drives globally adaptive refinement (the panel
//! with the largest error estimate is always split next). Integrands are
//! real-axis, complex-valued closures.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::EvalError;

/// Kronrod abscissae for the 7/15 pair (positive half; last entry is 0).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Gauss weights for the embedded 7-point rule (nodes XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss-Kronrod panel: returns (kronrod, |kronrod - gauss|, sum of |f| weights).
fn panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    let mut resabs = WGK[7] * f_center.norm();

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        let fsum = f1 + f2;
        kronrod += WGK[j] * fsum;
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }

    (
        kronrod * half,
        (kronrod - gauss).norm() * half.abs(),
        resabs * half.abs(),
    )
}

/// A refinable panel, ordered by its error estimate (max-heap).
struct Entry {
    lo: f64,
    hi: f64,
    value: Complex64,
    err: f64,
    resabs: f64,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrate `f` over the finite interval `[a, b]` to absolute tolerance `tol`.
///
/// Globally adaptive: the panel with the worst error estimate is bisected
/// until the summed estimate meets `tol`, a panel shrinks to roundoff width,
/// or the panel budget runs out. Returns the integral with its achieved error
/// estimate; fails with `EvalError::Quadrature` only when the estimate is
/// still three orders above the requested tolerance.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(Complex64, f64), EvalError> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(EvalError::Quadrature("non-finite endpoint".into()));
    }
    if a == b {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }

    const MAX_PANELS: usize = 20_000;

    let (value, err, resabs) = panel(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Entry {
        lo: a,
        hi: b,
        value,
        err,
        resabs,
    });
    // Panels no longer worth splitting (roundoff-limited or too thin).
    let mut settled_value = Complex64::new(0.0, 0.0);
    let mut settled_err = 0.0f64;
    let mut active_err = err;
    let mut panels = 1usize;

    let width_floor = 8.0 * f64::EPSILON * (a.abs().max(b.abs()).max(1.0));

    while active_err + settled_err > tol && panels < MAX_PANELS {
        let worst = match heap.pop() {
            Some(e) => e,
            None => break,
        };
        active_err -= worst.err;
        let noise_floor = 50.0 * f64::EPSILON * worst.resabs;
        if worst.err <= noise_floor || (worst.hi - worst.lo).abs() <= width_floor {
            settled_value += worst.value;
            settled_err += worst.err;
            continue;
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        for (lo, hi) in [(worst.lo, mid), (mid, worst.hi)] {
            let (value, err, resabs) = panel(&f, lo, hi);
            active_err += err;
            heap.push(Entry {
                lo,
                hi,
                value,
                err,
                resabs,
            });
        }
        panels += 1;
    }

    let mut total = settled_value;
    for e in heap {
        total += e.value;
    }
    let total_err = active_err + settled_err;
    if !total.is_finite() {
        return Err(EvalError::Quadrature(format!(
            "integrand produced non-finite values on [{a}, {b}]"
        )));
    }
    if total_err > 1e3 * tol.max(f64::EPSILON) {
        return Err(EvalError::Quadrature(format!(
            "tolerance {tol:.2e} unreached on [{a}, {b}]: error estimate {total_err:.2e}"
        )));
    }
    Ok((total, total_err))
}
