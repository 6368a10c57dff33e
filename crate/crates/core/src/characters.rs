//! Dirichlet characters mod m: enumeration, conductors, Gauss sums, and the
//! Kronecker symbol.
//!
//! The unit group (Z/mZ)* is decomposed into cyclic components (primitive
//! roots for odd prime powers; the {±1} × <5> structure for powers of two).
//! A character stores one exact angle numerator per residue — the value at n
//! is e^{2πi k(n)/φ(m)} — so products, conjugates, and orthogonality sums
//! stay exact in integer arithmetic until the final rendering.

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::EvalError;
use crate::{unit_phase, ComplexValue};

/// Largest modulus `enumerate_characters` accepts: the full table costs
/// O(m·φ(m)) storage, which stays a few megabytes up to here.
pub const ENUMERATION_LIMIT: u64 = 2000;

/// One cyclic component of (Z/p^e Z)*: a generator and its order.
#[derive(Debug, Clone)]
struct CyclicFactor {
    generator: u64, // lifted by CRT so it is ≡ 1 mod every other component
    order: u64,
}

/// A Dirichlet character mod m, stored as an exact angle table:
/// `angles[n] = Some(k)` means χ(n) = e^{2πi k / φ(m)}; `None` means χ(n)=0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    phi: u64,
    angles: Vec<Option<u64>>,
    conductor: u64,
    principal: bool,
    parity: i32,
}

fn prime_factorization(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

pub fn euler_phi(m: u64) -> u64 {
    prime_factorization(m)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product::<u64>()
        .max(1)
}

/// Primitive root mod an odd prime p (smallest, by exhaustive order test).
fn primitive_root_odd_prime(p: u64) -> u64 {
    let q_factors: Vec<u64> = prime_factorization(p - 1).into_iter().map(|(q, _)| q).collect();
    'outer: for g in 2..p {
        for &q in &q_factors {
            if pow_mod(g, (p - 1) / q, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root");
}

/// Cyclic generators of (Z/p^e Z)*, each given mod p^e.
fn component_factors(p: u64, e: u32) -> Vec<CyclicFactor> {
    let pe = p.pow(e);
    if p == 2 {
        return match e {
            1 => vec![],
            2 => vec![CyclicFactor { generator: 3, order: 2 }],
            _ => vec![
                CyclicFactor { generator: pe - 1, order: 2 },
                CyclicFactor { generator: 5, order: pe / 4 },
            ],
        };
    }
    let g = primitive_root_odd_prime(p);
    // Lift to p^e: g works unless g^{p-1} ≡ 1 mod p², in which case g+p does.
    let lifted = if e >= 2 && pow_mod(g, p - 1, p * p) == 1 { g + p } else { g };
    vec![CyclicFactor {
        generator: lifted,
        order: (p - 1) * p.pow(e - 1),
    }]
}

/// Discrete-log tables of (Z/mZ)*: a flattened list of cyclic factors (CRT-
/// lifted generators) and, per residue class coprime to m, its exponent
/// vector.
struct UnitGroup {
    phi: u64,
    orders: Vec<u64>,
    dlogs: Vec<Option<Vec<u64>>>, // indexed by residue mod m
}

impl UnitGroup {
    fn new(m: u64) -> Self {
        if m == 1 {
            return UnitGroup {
                phi: 1,
                orders: vec![],
                dlogs: vec![Some(vec![])],
            };
        }
        let factorization = prime_factorization(m);
        // CRT-lift each component generator to be 1 mod the complement.
        let mut factors: Vec<CyclicFactor> = Vec::new();
        for &(p, e) in &factorization {
            let pe = p.pow(e);
            let rest = m / pe;
            for f in component_factors(p, e) {
                let lifted = if rest == 1 {
                    f.generator
                } else {
                    crt_combine(f.generator, pe, 1, rest)
                };
                factors.push(CyclicFactor {
                    generator: lifted,
                    order: f.order,
                });
            }
        }
        let phi = euler_phi(m);

        // Walk the full group once: enumerate exponent vectors in mixed
        // radix, multiplying generators as we go.
        let mut dlogs: Vec<Option<Vec<u64>>> = vec![None; m as usize];
        let orders: Vec<u64> = factors.iter().map(|f| f.order).collect();
        let r = factors.len();
        let mut exps = vec![0u64; r];
        let mut value = 1u64;
        // Precompute generator powers stepping one position at a time:
        // iterate odometer-style; on incrementing digit i, multiply by g_i
        // and reset lower digits by multiplying their inverse cycles — the
        // simplest correct approach is recomputation per digit rollover.
        loop {
            dlogs[value as usize] = Some(exps.clone());
            // odometer increment
            let mut i = 0;
            loop {
                if i == r {
                    debug_assert_eq!(
                        dlogs.iter().filter(|d| d.is_some()).count() as u64,
                        phi
                    );
                    return UnitGroup { phi, orders, dlogs };
                }
                exps[i] += 1;
                value = value * factors[i].generator % m;
                if exps[i] < orders[i] {
                    break;
                }
                // digit rolls over: g_i^{order} = 1, so value is already
                // back to the right coset; reset the digit.
                exps[i] = 0;
                i += 1;
            }
        }
    }
}

/// CRT: the unique x mod (m1·m2) with x ≡ a1 (m1), x ≡ a2 (m2); m1, m2 coprime.
fn crt_combine(a1: u64, m1: u64, a2: u64, m2: u64) -> u64 {
    // Solve m1·t ≡ a2 − a1 (mod m2) via the extended Euclid inverse.
    let inv = mod_inverse(m1 % m2, m2);
    let diff = (a2 as i128 - a1 as i128).rem_euclid(m2 as i128) as u64;
    let t = diff * inv % m2;
    a1 + m1 * t
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // Extended Euclid; a and m coprime.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

impl DirichletCharacter {
    /// Internal: build from a complete angle table (numerators over φ(m)).
    fn from_angles(modulus: u64, angles: Vec<Option<u64>>) -> Self {
        let phi = euler_phi(modulus);
        let principal = angles
            .iter()
            .all(|a| matches!(a, None | Some(0)));
        let parity = if modulus <= 2 {
            1
        } else {
            match angles[(modulus - 1) as usize] {
                Some(0) => 1,
                Some(k) if k == phi / 2 => -1,
                other => unreachable!("χ(-1) must be ±1, got angle {other:?}"),
            }
        };
        let conductor = Self::compute_conductor(modulus, &angles);
        DirichletCharacter {
            modulus,
            phi,
            angles,
            conductor,
            principal,
            parity,
        }
    }

    /// Smallest f | m such that χ(u) = 1 whenever u ≡ 1 (mod f), gcd(u,m)=1.
    fn compute_conductor(m: u64, angles: &[Option<u64>]) -> u64 {
        let mut divisors: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
        divisors.sort_unstable();
        'next: for f in divisors {
            let mut u = 1u64;
            loop {
                if let Some(k) = angles[(u % m) as usize] {
                    if k != 0 {
                        continue 'next;
                    }
                }
                u += f;
                if u > m {
                    break;
                }
            }
            return f;
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_principal(&self) -> bool {
        self.principal
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    /// χ(-1): +1 for even characters, -1 for odd ones.
    pub fn parity(&self) -> i32 {
        self.parity
    }

    /// True when every value is real (a quadratic or principal character).
    pub fn is_real(&self) -> bool {
        self.angles
            .iter()
            .flatten()
            .all(|&k| k == 0 || 2 * k == self.phi)
    }

    /// Exact angle of χ(n) as (numerator, φ(m)), or None when χ(n) = 0.
    pub fn angle(&self, n: u64) -> Option<(u64, u64)> {
        self.angles[(n % self.modulus) as usize].map(|k| (k, self.phi))
    }

    /// χ(n) rendered as a complex number.
    pub fn eval(&self, n: u64) -> ComplexValue {
        match self.angles[(n % self.modulus) as usize] {
            None => Complex64::new(0.0, 0.0),
            Some(k) => unit_phase(k as f64 / self.phi as f64),
        }
    }

    /// Pointwise product of two characters to the same modulus.
    pub fn multiply(&self, other: &DirichletCharacter) -> Result<DirichletCharacter, EvalError> {
        if self.modulus != other.modulus {
            return Err(EvalError::Domain(format!(
                "character product needs equal moduli, got {} and {}",
                self.modulus, other.modulus
            )));
        }
        let angles = self
            .angles
            .iter()
            .zip(&other.angles)
            .map(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => Some((x + y) % self.phi),
                _ => None,
            })
            .collect();
        Ok(DirichletCharacter::from_angles(self.modulus, angles))
    }

    /// Complex conjugate character.
    pub fn conjugate(&self) -> DirichletCharacter {
        let angles = self
            .angles
            .iter()
            .map(|a| a.map(|k| if k == 0 { 0 } else { self.phi - k }))
            .collect();
        DirichletCharacter::from_angles(self.modulus, angles)
    }

    /// Extend a character to a larger modulus M (χ_M(n) = χ(n) on units,
    /// 0 off them). Requires modulus | M.
    pub fn induce(&self, new_modulus: u64) -> Result<DirichletCharacter, EvalError> {
        if new_modulus % self.modulus != 0 {
            return Err(EvalError::Domain(format!(
                "cannot induce mod {} to non-multiple {new_modulus}",
                self.modulus
            )));
        }
        let new_phi = euler_phi(new_modulus);
        let scale = new_phi / self.phi; // phi(modulus) | phi(new_modulus)
        let angles = (0..new_modulus)
            .map(|n| {
                if n.gcd(&new_modulus) != 1 {
                    None
                } else {
                    self.angles[(n % self.modulus) as usize].map(|k| k * scale)
                }
            })
            .collect();
        Ok(DirichletCharacter::from_angles(new_modulus, angles))
    }

    /// Gauss sum τ(χ) = Σ_{a mod m} χ(a) e^{2πi a/m}.
    pub fn gauss_sum(&self) -> ComplexValue {
        let m = self.modulus;
        let mut sum = Complex64::new(0.0, 0.0);
        for a in 0..m {
            if let Some(k) = self.angles[a as usize] {
                // exact rational angle: k/φ + a/m
                sum += unit_phase(k as f64 / self.phi as f64 + a as f64 / m as f64);
            }
        }
        if m == 1 {
            // Single term a = 0: e^0 = 1.
            return Complex64::new(1.0, 0.0);
        }
        sum
    }
}

/// All φ(m) Dirichlet characters mod m, in a deterministic order with the
/// principal character first.
pub fn enumerate_characters(m: u64) -> Result<Vec<DirichletCharacter>, EvalError> {
    if m == 0 {
        return Err(EvalError::Domain("modulus must be positive".into()));
    }
    if m > ENUMERATION_LIMIT {
        return Err(EvalError::Limit(format!(
            "character enumeration capped at modulus {ENUMERATION_LIMIT}, got {m}"
        )));
    }
    let group = UnitGroup::new(m);
    let phi = group.phi;
    let r = group.orders.len();

    let mut out = Vec::with_capacity(phi as usize);
    let mut t = vec![0u64; r]; // character exponents, mixed radix
    loop {
        // angle numerator of χ(n): Σ_i t_i · x_i · (φ / d_i) mod φ
        let weights: Vec<u64> = group.orders.iter().map(|d| phi / d).collect();
        let angles: Vec<Option<u64>> = group
            .dlogs
            .iter()
            .map(|dl| {
                dl.as_ref().map(|xs| {
                    xs.iter()
                        .zip(&t)
                        .zip(&weights)
                        .map(|((x, ti), w)| (x % phi) * ti % phi * w % phi)
                        .fold(0u64, |acc, v| (acc + v) % phi)
                })
            })
            .collect();
        out.push(DirichletCharacter::from_angles(m, angles));

        // odometer over (d_1, ..., d_r)
        let mut i = 0;
        loop {
            if i == r {
                debug_assert_eq!(out.len() as u64, phi);
                return Ok(out);
            }
            t[i] += 1;
            if t[i] < group.orders[i] {
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

/// Kronecker symbol (D/n) for nonzero D and positive n: completely
/// multiplicative in n, agreeing with the Legendre symbol at odd primes
/// not dividing D, with (D/2) = 0, +1, -1 according to D mod 8.
pub fn kronecker_symbol(d: i64, n: u64) -> Result<i32, EvalError> {
    if d == 0 {
        return Err(EvalError::Domain("Kronecker symbol needs D != 0".into()));
    }
    if n == 0 {
        return Err(EvalError::Domain("Kronecker symbol needs n > 0".into()));
    }
    let mut result = 1i32;
    let mut n = n;

    // Factor powers of two out of n: (D/2) per factor.
    let twos = n.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return Ok(0);
        }
        let dm8 = d.rem_euclid(8);
        let d2 = if dm8 == 1 || dm8 == 7 { 1 } else { -1 };
        if twos % 2 == 1 {
            result *= d2;
        }
        n >>= twos;
    }
    // Jacobi symbol (D/n) for odd n > 0 by binary reciprocity.
    let mut a = d.rem_euclid(n as i64) as u64;
    let mut nn = n;
    while a != 0 {
        let z = a.trailing_zeros();
        if z % 2 == 1 {
            let nm8 = nn % 8;
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        a >>= z;
        if a % 4 == 3 && nn % 4 == 3 {
            result = -result;
        }
        let tmp = nn % a;
        nn = a;
        a = tmp;
    }
    if nn == 1 {
        Ok(result)
    } else {
        Ok(0)
    }
}

/// True for fundamental discriminants: D ≡ 1 (mod 4) squarefree, or D = 4k
/// with k ≡ 2 or 3 (mod 4) squarefree. (1 is excluded as degenerate.)
pub fn is_fundamental_discriminant(d: i64) -> bool {
    fn squarefree(mut n: u64) -> bool {
        let mut p = 2u64;
        while p * p <= n {
            if n % (p * p) == 0 {
                return false;
            }
            while n % p == 0 {
                n /= p;
            }
            p += 1;
        }
        true
    }
    if d == 0 || d == 1 {
        return false;
    }
    let r = d.rem_euclid(4);
    if r == 1 {
        squarefree(d.unsigned_abs())
    } else if r == 0 {
        let k = d / 4;
        let kr = k.rem_euclid(4);
        (kr == 2 || kr == 3) && squarefree(k.unsigned_abs())
    } else {
        false
    }
}

/// The quadratic character χ_D(n) = (D/n) as a Dirichlet character mod |D|.
/// For fundamental D this is primitive and real.
pub fn character_from_discriminant(d: i64) -> Result<DirichletCharacter, EvalError> {
    if !is_fundamental_discriminant(d) {
        return Err(EvalError::Domain(format!(
            "{d} is not a fundamental discriminant"
        )));
    }
    let m = d.unsigned_abs();
    let phi = euler_phi(m);
    let angles = (0..m)
        .map(|n| match kronecker_symbol(d, n.max(1)).expect("valid inputs") {
            _ if n != 0 && n.gcd(&m) != 1 => None,
            _ if n == 0 && m != 1 => None,
            1 => Some(0),
            -1 => Some(phi / 2),
            0 => None,
            _ => unreachable!(),
        })
        .collect();
    Ok(DirichletCharacter::from_angles(m, angles))
}
