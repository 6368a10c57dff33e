//! Prime sieve and prime-sum utilities.
//!
//! A packed-bitset Eratosthenes sieve backs prime counting, iteration,
//! reciprocal sums (compensated), and truncated Euler products.

use num_complex::Complex64;

use crate::error::EvalError;
use crate::{real_pow, ComplexValue, EvalResult};

/// Hard cap on sieve size: 10^8 costs 12.5 MB of bits and a fraction of a
/// second; anything larger deserves a segmented design this crate does not
/// need.
pub const SIEVE_LIMIT_MAX: u64 = 100_000_000;

/// Bitset sieve of Eratosthenes over 0..=limit.
pub struct PrimeSieve {
    limit: u64,
    words: Vec<u64>,
}

impl PrimeSieve {
    /// Sieve all primes up to and including `limit`.
    pub fn new(limit: u64) -> Result<Self, EvalError> {
        if limit > SIEVE_LIMIT_MAX {
            return Err(EvalError::Limit(format!(
                "sieve limit {limit} exceeds maximum {SIEVE_LIMIT_MAX}"
            )));
        }
        let n = limit as usize;
        let mut words = vec![!0u64; n / 64 + 1];
        let clear = |words: &mut [u64], i: usize| words[i / 64] &= !(1u64 << (i % 64));
        clear(&mut words, 0);
        if n >= 1 {
            clear(&mut words, 1);
        }
        let mut p = 2usize;
        while p * p <= n {
            if words[p / 64] >> (p % 64) & 1 == 1 {
                let mut m = p * p;
                while m <= n {
                    clear(&mut words, m);
                    m += p;
                }
            }
            p += 1;
        }
        // Mask off bits beyond `limit` so popcounts stay honest.
        let last_bits = n % 64 + 1;
        if last_bits < 64 {
            let len = words.len();
            words[len - 1] &= (1u64 << last_bits) - 1;
        }
        Ok(PrimeSieve { limit, words })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Primality test for n <= limit.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "sieve queried beyond its limit");
        self.words[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    /// Iterator over primes <= limit, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(move |&n| self.is_prime(n))
    }

    /// pi(x): number of primes <= x (x may be below the sieve limit).
    pub fn prime_count(&self, x: u64) -> u64 {
        assert!(x <= self.limit, "sieve queried beyond its limit");
        let full_words = (x + 1) / 64;
        let mut count: u64 = self.words[..full_words as usize]
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum();
        let rem = (x + 1) % 64;
        if rem > 0 {
            let mask = (1u64 << rem) - 1;
            count += (self.words[full_words as usize] & mask).count_ones() as u64;
        }
        count
    }

    /// sum_{p <= x} 1/p with Kahan compensation.
    pub fn mertens_sum(&self, x: u64) -> f64 {
        assert!(x <= self.limit, "sieve queried beyond its limit");
        let mut sum = 0.0f64;
        let mut c = 0.0f64;
        for p in (2..=x).filter(|&n| self.is_prime(n)) {
            let y = 1.0 / p as f64 - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        sum
    }

    /// Estimate of the Meissel-Mertens constant from the sum to x:
    /// sum_{p <= x} 1/p - ln ln x.
    pub fn mertens_constant_estimate(&self, x: u64) -> f64 {
        self.mertens_sum(x) - (x as f64).ln().ln()
    }

    /// Truncated prime zeta sum_{p <= x} p^{-s} for real s > 0 (compensated).
    pub fn prime_zeta_truncated(&self, s: f64, x: u64) -> f64 {
        assert!(x <= self.limit, "sieve queried beyond its limit");
        let mut sum = 0.0f64;
        let mut c = 0.0f64;
        for p in (2..=x).filter(|&n| self.is_prime(n)) {
            let y = (p as f64).powf(-s) - c;
            let t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        sum
    }

    /// pi(x) ln(x) / x, the ratio the prime number theorem drives to 1.
    pub fn pnt_ratio(&self, x: u64) -> f64 {
        assert!(x >= 2, "pnt ratio needs x >= 2");
        self.prime_count(x) as f64 * (x as f64).ln() / x as f64
    }
}

/// Truncated Euler product prod_{p <= limit} (1 - p^{-s})^{-1} for Re s > 1.
///
/// The error estimate is the standard tail bound for the missing factors,
/// |log tail| <= sum_{n > limit} n^{-Re s} <= limit^{1-Re s} / (Re s - 1).
pub fn euler_product_zeta(
    s: ComplexValue,
    sieve: &PrimeSieve,
    limit: u64,
) -> Result<EvalResult, EvalError> {
    if s.re <= 1.0 {
        return Err(EvalError::Domain(format!(
            "Euler product diverges for Re s <= 1, got {s}"
        )));
    }
    let mut log_sum = Complex64::new(0.0, 0.0);
    for p in (2..=limit).filter(|&n| sieve.is_prime(n)) {
        let f = Complex64::new(1.0, 0.0) - real_pow(p as f64, -s);
        log_sum -= f.ln();
    }
    let value = log_sum.exp();
    let tail = (limit as f64).powf(1.0 - s.re) / (s.re - 1.0);
    let err = value.norm() * tail + f64::EPSILON * value.norm();
    EvalResult::new(value, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;

    #[test]
    fn sieve_counts_match_reference() {
        let sieve = PrimeSieve::new(1_000_000).unwrap();
        assert_eq!(sieve.prime_count(100), 25);
        assert_eq!(sieve.prime_count(10_000), 1229);
        assert_eq!(sieve.prime_count(1_000_000), 78_498);
        assert_eq!(sieve.prime_count(1), 0);
        assert_eq!(sieve.prime_count(2), 1);
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        // Independent recount: trial division over an awkward word-boundary
        // range, compared bit for bit.
        let sieve = PrimeSieve::new(10_000).unwrap();
        let trial = |n: u64| -> bool {
            if n < 2 {
                return false;
            }
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    return false;
                }
                d += 1;
            }
            true
        };
        for n in 0..=10_000 {
            assert_eq!(sieve.is_prime(n), trial(n), "mismatch at {n}");
        }
    }

    #[test]
    fn sieve_limit_enforced() {
        assert!(matches!(
            PrimeSieve::new(SIEVE_LIMIT_MAX + 1),
            Err(EvalError::Limit(_))
        ));
    }

    #[test]
    fn reciprocal_sum_exact_small() {
        // sum_{p <= 10} 1/p = 1/2 + 1/3 + 1/5 + 1/7 = 247/210.
        let sieve = PrimeSieve::new(10).unwrap();
        let mut exact = BigRational::zero();
        for p in sieve.primes() {
            exact += BigRational::new(BigInt::from(1), BigInt::from(p));
        }
        assert_eq!(exact, BigRational::new(BigInt::from(247), BigInt::from(210)));
        let float = sieve.mertens_sum(10);
        assert!((float - 247.0 / 210.0).abs() < 1e-15);
    }

    #[test]
    fn mertens_constant_from_million() {
        // sum_{p<=x} 1/p - ln ln x tends to the Meissel-Mertens constant
        // 0.26149...; at x = 10^6 the error term is well inside 0.01.
        let sieve = PrimeSieve::new(1_000_000).unwrap();
        let est = sieve.mertens_constant_estimate(1_000_000);
        assert!(
            (est - 0.261497).abs() < 0.01,
            "estimate {est} strayed from the Meissel-Mertens constant"
        );
    }

    #[test]
    fn prime_zeta_at_two() {
        // sum_{p <= 10^6} p^{-2} sits just below the full prime zeta value
        // P(2) = 0.452247420041...; the tail beyond 10^6 is under 1e-7.
        let sieve = PrimeSieve::new(1_000_000).unwrap();
        let v = sieve.prime_zeta_truncated(2.0, 1_000_000);
        assert!(v < 0.452_247_420_041);
        assert!((v - 0.452_247_420_041).abs() < 1e-6);
        assert!((v - 0.452_247_35).abs() < 5e-7);
    }

    #[test]
    fn pnt_ratio_descends_toward_one() {
        let sieve = PrimeSieve::new(1_000_000).unwrap();
        let r4 = sieve.pnt_ratio(10_000);
        let r6 = sieve.pnt_ratio(1_000_000);
        assert!(r6 > 1.0 && r6 < r4, "ratios {r4}, {r6} not descending");
        assert!((r6 - 1.084_49).abs() < 1e-3);
    }

    #[test]
    fn euler_product_approximates_zeta_two() {
        let sieve = PrimeSieve::new(100_000).unwrap();
        let z = euler_product_zeta(Complex64::new(2.0, 0.0), &sieve, 100_000).unwrap();
        let exact = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        assert!((z.value.re - exact).abs() < 2e-5);
        assert!((z.value.re - exact).abs() <= z.err_estimate * 2.0 + 1e-12);
        assert!(z.value.im.abs() < 1e-12);
    }

    #[test]
    fn euler_product_rejects_divergent_region() {
        let sieve = PrimeSieve::new(100).unwrap();
        assert!(matches!(
            euler_product_zeta(Complex64::new(0.9, 0.0), &sieve, 100),
            Err(EvalError::Domain(_))
        ));
    }
}
