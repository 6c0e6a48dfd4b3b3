//! Factorization of multivariate rational polynomials into irreducibles, and
//! normalization into the semigroup of polynomials whose leading graded-lex
//! coefficient is 1.
//!
//! Irreducibility is over Q. Over R a univariate irreducible has degree at
//! most 2, so the two notions differ on inputs such as `x^2 - 2`; everything
//! built on top of this module uses polynomials where they agree.

mod modp;
mod multi;
mod upoly;

use num_traits::One;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Limits for the factorizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Inputs of larger total degree are rejected with a resource-limit error.
    pub degree_bound: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { degree_bound: 12 }
    }
}

/// `unit * prod factor^mult`, factors normalized and irreducible, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, nvars: usize) -> Poly {
        let mut out = Poly::constant(nvars, self.unit.clone());
        for (f, k) in &self.factors {
            out = &out * &f.pow(*k);
        }
        out
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn len(&self) -> u32 {
        self.factors.iter().map(|(_, k)| k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The factors as a flat sorted multiset.
    pub fn multiset(&self) -> Vec<Poly> {
        self.factors
            .iter()
            .flat_map(|(f, k)| std::iter::repeat_n(f.clone(), *k as usize))
            .collect()
    }
}

/// Splits off the leading graded-lex coefficient. Zero maps to `(1, 0)`.
pub fn normalize(f: &Poly) -> (Rational, Poly) {
    if f.is_zero() {
        return (Rational::one(), f.clone());
    }
    let lc = f.leading_coeff();
    let g = f.scale(&(Rational::one() / &lc));
    (lc, g)
}

pub fn factorize(f: &Poly) -> Result<Factorization> {
    factorize_with(f, &FactorConfig::default())
}

pub fn factorize_with(f: &Poly, cfg: &FactorConfig) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::invalid(
            "factor",
            "cannot factor the zero polynomial",
        ));
    }
    let d = f.total_degree();
    if d > cfg.degree_bound {
        return Err(Error::limit(
            "factor",
            format!(
                "total degree {d} exceeds the factorization degree bound {}",
                cfg.degree_bound
            ),
        ));
    }
    let unit = f.leading_coeff();
    if f.is_constant() {
        return Ok(Factorization {
            unit,
            factors: Vec::new(),
        });
    }
    let (_, f_int) = f.primitive_integer();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (h, k) in multi::factor_poly(&f_int) {
        let (_, h) = normalize(&h);
        match factors.iter_mut().find(|(g, _)| *g == h) {
            Some(slot) => slot.1 += k,
            None => factors.push((h, k)),
        }
    }
    factors.sort();
    let out = Factorization { unit, factors };
    if out.expand(f.nvars()) != *f {
        return Err(Error::internal(
            "factor",
            "factorization does not reproduce its input",
        ));
    }
    Ok(out)
}

/// True iff `f` has exactly one irreducible factor, with multiplicity one.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.is_constant() {
        return Err(Error::invalid(
            "factor",
            "irreducibility of a constant is undefined",
        ));
    }
    Ok(factorize(f)?.len() == 1)
}

/// Normalized irreducible test that avoids a full factorization when the
/// polynomial is not normalized.
pub fn is_normalized_irreducible(f: &Poly) -> Result<bool> {
    if f.is_constant() || !f.leading_coeff().is_one() {
        return Ok(false);
    }
    is_irreducible(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::poly::Monomial;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    fn c(v: i64) -> Poly {
        Poly::constant(3, rat(v))
    }

    #[test]
    fn normalize_examples() {
        let f = (&x(0) * &x(0)).scale(&rat(3));
        assert_eq!(normalize(&f), (rat(3), &x(0) * &x(0)));
        let g = &c(2) - &x(1);
        assert_eq!(normalize(&g), (rat(-1), &x(1) - &c(2)));
        assert_eq!(normalize(&Poly::zero(3)), (rat(1), Poly::zero(3)));
        let (_, h) = normalize(&g);
        assert_eq!(normalize(&h), (rat(1), h.clone()));
    }

    #[test]
    fn difference_of_squares() {
        let f = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let fz = factorize(&f).unwrap();
        assert_eq!(fz.unit, rat(1));
        assert_eq!(fz.factors, vec![(&x(0) - &x(1), 1), (&x(0) + &x(1), 1)]);
    }

    #[test]
    fn irreducibility_examples() {
        let sum_sq = &(&x(0) * &x(0)) + &(&x(1) * &x(1));
        assert!(is_irreducible(&sum_sq).unwrap());
        assert!(!is_irreducible(&(&(&x(0) * &x(0)) - &c(1))).unwrap());
        assert!(is_irreducible(&(&(&x(0) * &x(1)) + &c(1))).unwrap());
        assert!(matches!(
            is_irreducible(&c(4)),
            Err(Error::InvalidArgument { .. })
        ));
    }

    #[test]
    fn scalar_content() {
        let fz = factorize(&x(0).scale(&rat(6))).unwrap();
        assert_eq!(fz.unit, rat(6));
        assert_eq!(fz.factors, vec![(x(0), 1)]);
        let fz = factorize(&c(-5)).unwrap();
        assert_eq!(fz.unit, rat(-5));
        assert!(fz.factors.is_empty());
    }

    #[test]
    fn repeated_and_mixed_factors() {
        // (x1 + x2 x3)^2 (x1^2 + x3^2 + 1) x2 / 4
        let a = &x(0) + &(&x(1) * &x(2));
        let b = &(&(&x(0) * &x(0)) + &(&x(2) * &x(2))) + &c(1);
        let f = (&(&a * &a) * &(&b * &x(1))).scale(&ratio(1, 4));
        let fz = factorize(&f).unwrap();
        assert_eq!(fz.expand(3), f);
        assert_eq!(fz.len(), 4);
        assert!(fz.factors.contains(&(a.clone(), 2)));
        assert!(fz.factors.contains(&(b.clone(), 1)));
        assert!(fz.factors.contains(&(x(1), 1)));
    }

    #[test]
    fn needs_shear() {
        // x1 x2 - x3^2 + x1 is irreducible and has no pure power of top degree.
        let f = &(&(&x(0) * &x(1)) - &(&x(2) * &x(2))) + &x(0);
        assert!(is_irreducible(&f).unwrap());
        let g = &x(0) * &x(1) + Poly::one(3);
        let prod = &f * &g;
        let fz = factorize(&prod).unwrap();
        assert_eq!(fz.len(), 2);
        assert_eq!(fz.expand(3), prod);
    }

    #[test]
    fn univariate_repeated() {
        let f = (&x(0) - &c(1)).pow(3);
        let fz = factorize(&(&f * &(&(&x(0) * &x(0)) + &c(1)))).unwrap();
        assert_eq!(
            fz.factors,
            vec![(&x(0) - &c(1), 3), (&(&x(0) * &x(0)) + &c(1), 1)]
        );
    }

    #[test]
    fn non_squarefree_multivariate_image() {
        // Every image at small points of (x1^2 - x2^2)^2 stays non-squarefree.
        let f = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let sq = &f * &f;
        let fz = factorize(&sq).unwrap();
        assert_eq!(fz.factors, vec![(&x(0) - &x(1), 2), (&x(0) + &x(1), 2)]);
    }

    #[test]
    fn degree_bound_enforced() {
        let f = x(0).pow(13);
        assert!(matches!(factorize(&f), Err(Error::ResourceLimit { .. })));
        let cfg = FactorConfig { degree_bound: 20 };
        assert_eq!(factorize_with(&f, &cfg).unwrap().factors, vec![(x(0), 13)]);
    }

    #[test]
    fn leading_monomial_of_factors_is_one() {
        let f = &(&x(0) * &x(1)).scale(&rat(2)) - &x(2).scale(&rat(3));
        let fz = factorize(&f).unwrap();
        let (m, k) = fz.factors[0].0.leading_term().unwrap();
        assert_eq!(*m, Monomial::from_exponents(&[1, 1, 0]));
        assert!(k.is_one());
        assert_eq!(fz.unit, rat(2));
    }

    mod props {
        use super::*;
        use crate::testutil::arb_poly;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn round_trip(f in arb_poly(3, 3), g in arb_poly(3, 3)) {
                let p = &f * &g;
                prop_assume!(!p.is_zero());
                let fz = factorize(&p).unwrap();
                prop_assert_eq!(fz.expand(3), p);
            }

            #[test]
            fn multiplicative(f in arb_poly(3, 2), g in arb_poly(3, 2)) {
                prop_assume!(!f.is_zero() && !g.is_zero());
                let a = factorize(&f).unwrap();
                let b = factorize(&g).unwrap();
                let ab = factorize(&(&f * &g)).unwrap();
                let mut union = a.multiset();
                union.extend(b.multiset());
                union.sort();
                prop_assert_eq!(ab.multiset(), union);
                prop_assert_eq!(ab.unit, &a.unit * &b.unit);
            }

            #[test]
            fn idempotent_on_factors(f in arb_poly(3, 3)) {
                prop_assume!(!f.is_constant());
                for (h, _) in factorize(&f).unwrap().factors {
                    let again = factorize(&h).unwrap();
                    prop_assert_eq!(again.unit, rat(1));
                    prop_assert_eq!(again.factors, vec![(h.clone(), 1)]);
                }
            }
        }
    }
}
