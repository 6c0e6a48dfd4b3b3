//! Exact rational arithmetic helpers and the special number sequences used by
//! the su(2) sun-product coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient. Always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// a(a-1)...(a-r+1); equals 1 for r = 0.
pub fn falling_factorial(a: i64, r: u32) -> BigInt {
    (0..r as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i))
}

/// Precomputed Euler (secant convention) and Bernoulli numbers up to a bound.
///
/// `euler[n]` is zero for odd `n`; `euler[2k]` is the t^{2k}/(2k)! coefficient
/// of sec t, so every entry is non-negative. Bernoulli numbers use B_1 = -1/2.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialNumberCache {
    euler: Vec<Rational>,
    bernoulli: Vec<Rational>,
}

impl SpecialNumberCache {
    pub fn new(max_index: usize) -> Self {
        let mut bernoulli: Vec<Rational> = Vec::with_capacity(max_index + 1);
        for n in 0..=max_index {
            if n == 0 {
                bernoulli.push(Rational::one());
                continue;
            }
            // sum_{k=0}^{n} C(n+1, k) B_k = 0
            let mut acc = Rational::zero();
            for (k, b) in bernoulli.iter().enumerate() {
                acc += Rational::from_integer(binomial(n as u64 + 1, k as u64)) * b;
            }
            bernoulli.push(-acc / rat(n as i64 + 1));
        }

        // Signed Euler numbers satisfy sum_{k=0}^{m} C(2m, 2k) E_{2k} = 0 for m >= 1.
        let mut signed: Vec<Rational> = Vec::new();
        for m in 0..=max_index / 2 {
            if m == 0 {
                signed.push(Rational::one());
                continue;
            }
            let mut acc = Rational::zero();
            for (k, e) in signed.iter().enumerate() {
                acc += Rational::from_integer(binomial(2 * m as u64, 2 * k as u64)) * e;
            }
            signed.push(-acc);
        }
        let mut euler = vec![Rational::zero(); max_index + 1];
        for (m, e) in signed.into_iter().enumerate() {
            euler[2 * m] = e.abs();
        }
        SpecialNumberCache { euler, bernoulli }
    }

    pub fn max_index(&self) -> usize {
        self.bernoulli.len() - 1
    }

    pub fn euler(&self, n: usize) -> Result<Rational> {
        if n % 2 == 1 {
            return Err(Error::invalid(
                "arith",
                format!("Euler numbers are indexed by even integers, got {n}"),
            ));
        }
        self.euler
            .get(n)
            .cloned()
            .ok_or_else(|| Error::limit("arith", format!("index {n} beyond cache")))
    }

    pub fn bernoulli(&self, n: usize) -> Result<Rational> {
        self.bernoulli
            .get(n)
            .cloned()
            .ok_or_else(|| Error::limit("arith", format!("index {n} beyond cache")))
    }
}

/// E_n in the all-positive secant convention.
pub fn euler_number(n: u32) -> Result<Rational> {
    if n % 2 == 1 {
        return Err(Error::invalid(
            "arith",
            format!("Euler numbers are indexed by even integers, got {n}"),
        ));
    }
    SpecialNumberCache::new(n as usize).euler(n as usize)
}

/// B_n with B_1 = -1/2.
pub fn bernoulli_number(n: u32) -> Rational {
    SpecialNumberCache::new(n as usize)
        .bernoulli(n as usize)
        .expect("cache covers requested index")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Coefficients of 1/c(t) as an exact power series, by long division.
    fn series_reciprocal(c: &[Rational], order: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); order + 1];
        for n in 0..=order {
            let mut acc = if n == 0 {
                Rational::one()
            } else {
                Rational::zero()
            };
            for k in 1..=n.min(c.len() - 1) {
                acc -= &c[k] * &out[n - k];
            }
            out[n] = acc / &c[0];
        }
        out
    }

    fn cos_series(order: usize) -> Vec<Rational> {
        (0..=order)
            .map(|k| {
                if k % 2 == 1 {
                    Rational::zero()
                } else {
                    let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
                    Rational::new(BigInt::from(sign), factorial(k as u64))
                }
            })
            .collect()
    }

    fn sin_series(order: usize) -> Vec<Rational> {
        (0..=order)
            .map(|k| {
                if k % 2 == 0 {
                    Rational::zero()
                } else {
                    let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
                    Rational::new(BigInt::from(sign), factorial(k as u64))
                }
            })
            .collect()
    }

    #[test]
    fn euler_numbers_match_secant_series() {
        let sec = series_reciprocal(&cos_series(12), 12);
        for n in (0..=12).step_by(2) {
            let expected = &sec[n] * Rational::from_integer(factorial(n as u64));
            assert_eq!(euler_number(n as u32).unwrap(), expected, "E_{n}");
        }
        assert_eq!(euler_number(0).unwrap(), rat(1));
        assert_eq!(euler_number(4).unwrap(), rat(5));
        assert_eq!(euler_number(6).unwrap(), rat(61));
    }

    #[test]
    fn odd_euler_index_rejected() {
        assert!(matches!(
            euler_number(3),
            Err(Error::InvalidArgument { .. })
        ));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_number(0), rat(1));
        assert_eq!(bernoulli_number(1), ratio(-1, 2));
        assert_eq!(bernoulli_number(2), ratio(1, 6));
        assert_eq!(bernoulli_number(4), ratio(-1, 30));
        assert_eq!(bernoulli_number(3), rat(0));
    }

    #[test]
    fn tan_series_from_bernoulli() {
        // tan = sin / cos computed by exact series division.
        let order = 11;
        let inv_cos = series_reciprocal(&cos_series(order), order);
        let sin = sin_series(order);
        let mut tan = vec![Rational::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                tan[i + j] += &sin[i] * &inv_cos[j];
            }
        }
        let cache = SpecialNumberCache::new(12);
        for n in 0..=4usize {
            let m = 2 * n + 2;
            let two = BigInt::from(2).pow(m as u32);
            let raw = Rational::from_integer(&two * (&two - 1)) * cache.bernoulli(m).unwrap()
                / Rational::from_integer(factorial(m as u64));
            let signed = if n % 2 == 0 { raw } else { -raw };
            assert_eq!(signed, tan[2 * n + 1], "tau_{n}");
        }
    }

    #[test]
    fn gamma_matches_secant_coefficients() {
        let sec = series_reciprocal(&cos_series(8), 8);
        for n in 0..=4usize {
            let g = euler_number(2 * n as u32).unwrap()
                / Rational::from_integer(factorial(2 * n as u64));
            assert_eq!(g, sec[2 * n]);
        }
    }

    #[test]
    fn falling_factorial_cases() {
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(3, 0), BigInt::from(1));
        assert_eq!(falling_factorial(2, 3), BigInt::from(0));
        assert_eq!(falling_factorial(-1, 2), BigInt::from(2));
    }

    #[test]
    fn regenerated_cache_is_identical() {
        assert_eq!(SpecialNumberCache::new(20), SpecialNumberCache::new(20));
        let small = SpecialNumberCache::new(8);
        let big = SpecialNumberCache::new(16);
        for n in 0..=8 {
            assert_eq!(small.bernoulli(n).unwrap(), big.bernoulli(n).unwrap());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_rat() -> impl Strategy<Value = Rational> {
            (-50i64..50, 1i64..20).prop_map(|(n, d)| ratio(n, d))
        }

        proptest! {
            #[test]
            fn field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
                prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
                prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            }
        }
    }
}
