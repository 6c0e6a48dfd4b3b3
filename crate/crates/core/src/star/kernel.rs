use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::StarProduct;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::{Monomial, NuObject, Poly, VarSpace};

type Bidiff = HashMap<(Monomial, Monomial), Rational>;

/// `f * g = exp(nu B)(f, g)` for a constant-coefficient bidifferential
/// operator `B = sum_t c_t d_{left_t} (x) d_{right_t}`.
///
/// Moyal, partial Moyal and standard ordering are all of this shape; they
/// differ only in the list of `(left, right, c)` triples.
#[derive(Debug)]
pub struct ExpKernel {
    name: &'static str,
    space: VarSpace,
    terms: Vec<(usize, usize, Rational)>,
    /// `powers[r]` holds `B^r / r!` as a map from derivative pairs to coefficients.
    powers: Mutex<Vec<Bidiff>>,
}

impl ExpKernel {
    fn new(name: &'static str, space: VarSpace, terms: Vec<(usize, usize, Rational)>) -> Self {
        let mut unit = Bidiff::new();
        unit.insert((Monomial::one(), Monomial::one()), Rational::one());
        ExpKernel {
            name,
            space,
            terms,
            powers: Mutex::new(vec![unit]),
        }
    }

    /// Full Moyal product over every symplectic pair.
    pub fn moyal(space: &VarSpace) -> Result<Self> {
        let all: Vec<usize> = (0..space.pairs().len()).collect();
        let mut k = ExpKernel::partial_moyal(space, &all)?;
        k.name = "moyal";
        Ok(k)
    }

    /// Moyal product restricted to the listed pairs (indices into `space.pairs()`).
    pub fn partial_moyal(space: &VarSpace, active: &[usize]) -> Result<Self> {
        if space.pairs().is_empty() {
            return Err(Error::invalid(
                "star",
                "the variable space has no symplectic pair",
            ));
        }
        let mut terms = Vec::new();
        for &k in active {
            let &(q, p) = space
                .pairs()
                .get(k)
                .ok_or_else(|| Error::invalid("star", format!("pair index {k} out of range")))?;
            terms.push((q, p, Rational::one()));
            terms.push((p, q, -Rational::one()));
        }
        Ok(ExpKernel::new("partial-moyal", space.clone(), terms))
    }

    /// `f * g = sum_r (2 nu)^r / r! d_q^r f d_p^r g` summed over all pairs.
    pub fn standard(space: &VarSpace) -> Result<Self> {
        if space.pairs().is_empty() {
            return Err(Error::invalid(
                "star",
                "the variable space has no symplectic pair",
            ));
        }
        let terms = space
            .pairs()
            .iter()
            .map(|&(q, p)| (q, p, Rational::from_integer(BigInt::from(2))))
            .collect();
        Ok(ExpKernel::new("standard", space.clone(), terms))
    }

    fn power(&self, r: usize) -> Bidiff {
        let mut cache = self.powers.lock().expect("kernel cache poisoned");
        while cache.len() <= r {
            let n = cache.len();
            let prev = &cache[n - 1];
            let mut next = Bidiff::new();
            for ((a, b), c) in prev {
                for (l, rt, ct) in &self.terms {
                    let key = (a.mul(&Monomial::var(*l)), b.mul(&Monomial::var(*rt)));
                    *next.entry(key).or_insert_with(Rational::zero) += c * ct;
                }
            }
            let inv = Rational::new(BigInt::one(), BigInt::from(n));
            next.retain(|_, c| !c.is_zero());
            for c in next.values_mut() {
                *c *= &inv;
            }
            cache.push(next);
        }
        cache[r].clone()
    }
}

impl StarProduct for ExpKernel {
    fn name(&self) -> &'static str {
        self.name
    }

    fn space(&self) -> &VarSpace {
        &self.space
    }

    fn mul_poly(&self, f: &Poly, g: &Poly) -> Result<NuObject> {
        super::check_space(self, f, g)?;
        let n = f.nvars();
        let mut out = NuObject::zero(n);
        if f.is_zero() || g.is_zero() {
            return Ok(out);
        }
        let max_r = f.total_degree().min(g.total_degree()) as usize;
        for r in 0..=max_r {
            let mut acc = Poly::zero(n);
            for ((a, b), c) in self.power(r) {
                let df = f.diff_multi(&a);
                if df.is_zero() {
                    continue;
                }
                let dg = g.diff_multi(&b);
                if dg.is_zero() {
                    continue;
                }
                acc += &(&df * &dg).scale(&c);
            }
            out.add_at(r as i32, &acc);
        }
        Ok(out)
    }
}
