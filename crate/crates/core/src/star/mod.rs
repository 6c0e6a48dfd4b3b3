//! Star products and the operations built on them.
//!
//! Every product implements [`StarProduct`] and is registered by name in a
//! [`StarRegistry`], so callers pick the variant at runtime:
//!
//! | name            | product                                                     |
//! |-----------------|-------------------------------------------------------------|
//! | `moyal`         | `exp(nu P)` over every symplectic pair                      |
//! | `partial-moyal` | `exp(nu P)` over a chosen subset of pairs                   |
//! | `standard`      | `sum (2 nu)^r / r! d_q^r f d_p^r g`                         |
//! | `su2`           | covariant product on su(2)*, by left-multiplication recursion |
//! | `su2-lift`      | the same product computed through R^6                       |
//!
//! The bracket sign is `P(f, g) = sum (df/dq dg/dp - df/dp dg/dq)`. For the
//! standard ordering the q-derivatives fall on the left factor, which is the
//! placement that gives `C_1(f, g) - C_1(g, f) = 2 P(f, g)` with this sign.

mod kernel;
mod su2;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

pub use kernel::ExpKernel;
pub use su2::{lift_to_r6, su2_left_mul, su2_lift_coordinates, Su2LiftStar, Su2Star};

use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};
use crate::poly::{NuObject, Poly, TSeries, VarSpace};

/// An associative formal deformation of the pointwise product.
pub trait StarProduct: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn space(&self) -> &VarSpace;

    /// Product of two `nu`-free polynomials. The series terminates.
    fn mul_poly(&self, f: &Poly, g: &Poly) -> Result<NuObject>;

    /// Product extended bilinearly over `nu`.
    fn mul(&self, f: &NuObject, g: &NuObject) -> Result<NuObject> {
        let mut out = NuObject::zero(self.space().len());
        for (a, fa) in f.iter() {
            for (b, gb) in g.iter() {
                out += &self.mul_poly(fa, gb)?.shift(a + b);
            }
        }
        Ok(out)
    }
}

pub(crate) fn check_space<S: StarProduct + ?Sized>(s: &S, f: &Poly, g: &Poly) -> Result<()> {
    let n = s.space().len();
    if f.nvars() != n || g.nvars() != n {
        return Err(Error::invalid(
            "star",
            format!(
                "{} product on {} variables got operands in {} and {}",
                s.name(),
                n,
                f.nvars(),
                g.nvars()
            ),
        ));
    }
    Ok(())
}

/// Construction options shared by the registered builders.
#[derive(Clone, Debug, Default)]
pub struct StarOptions {
    /// Active pair indices for `partial-moyal`; `None` keeps every pair.
    pub active_pairs: Option<Vec<usize>>,
}

type Builder = fn(&VarSpace, &StarOptions) -> Result<Box<dyn StarProduct>>;

pub struct StarEntry {
    pub name: &'static str,
    pub summary: &'static str,
    build: Builder,
}

/// Name-indexed collection of star product constructors.
pub struct StarRegistry {
    entries: Vec<StarEntry>,
}

impl StarRegistry {
    pub fn empty() -> Self {
        StarRegistry {
            entries: Vec::new(),
        }
    }

    pub fn with_defaults() -> Self {
        let mut r = StarRegistry::empty();
        r.register("moyal", "exp(nu P) over every symplectic pair", |s, _| {
            Ok(Box::new(ExpKernel::moyal(s)?))
        });
        r.register(
            "partial-moyal",
            "exp(nu P) over a subset of pairs",
            |s, o| {
                let active = match &o.active_pairs {
                    Some(a) => a.clone(),
                    None => (0..s.pairs().len()).collect(),
                };
                Ok(Box::new(ExpKernel::partial_moyal(s, &active)?))
            },
        );
        r.register(
            "standard",
            "standard ordering, q-derivatives on the left",
            |s, _| Ok(Box::new(ExpKernel::standard(s)?)),
        );
        r.register("su2", "covariant product on su(2)*", |s, _| {
            Ok(Box::new(Su2Star::new(s)?))
        });
        r.register("su2-lift", "su(2)* product through Moyal on R^6", |s, _| {
            Ok(Box::new(Su2LiftStar::new(s)?))
        });
        r
    }

    /// Adds or replaces a builder.
    pub fn register(&mut self, name: &'static str, summary: &'static str, build: Builder) {
        self.entries.retain(|e| e.name != name);
        self.entries.push(StarEntry {
            name,
            summary,
            build,
        });
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name).collect()
    }

    pub fn entries(&self) -> &[StarEntry] {
        &self.entries
    }

    pub fn build(
        &self,
        name: &str,
        space: &VarSpace,
        opts: &StarOptions,
    ) -> Result<Arc<dyn StarProduct>> {
        let entry = self
            .entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| {
                Error::invalid(
                    "star",
                    format!(
                        "unknown star product {name:?}; known: {}",
                        self.names().join(", ")
                    ),
                )
            })?;
        Ok(Arc::from((entry.build)(space, opts)?))
    }
}

impl Default for StarRegistry {
    fn default() -> Self {
        StarRegistry::with_defaults()
    }
}

/// `(f * g - g * f) / 2 nu`.
pub fn star_commutator(s: &dyn StarProduct, f: &NuObject, g: &NuObject) -> Result<NuObject> {
    let fg = s.mul(f, g)?;
    let gf = s.mul(g, f)?;
    Ok((&fg - &gf)
        .shift(-1)
        .scale(&Rational::new(1.into(), 2.into())))
}

/// `H * H * ... * H` with `k` factors; `k = 0` gives 1.
pub fn star_power(s: &dyn StarProduct, h: &NuObject, k: u32) -> Result<NuObject> {
    let mut acc = NuObject::one(s.space().len());
    for _ in 0..k {
        acc = s.mul(&acc, h)?;
    }
    Ok(acc)
}

/// `sum_{r <= t_order} (1/r!) (t / 2 nu)^r H^{*r}`; coefficient `r` is the
/// `t^r` coefficient.
pub fn star_exponential(s: &dyn StarProduct, h: &Poly, t_order: usize) -> Result<TSeries> {
    let h = NuObject::from_poly(h.clone());
    let mut coeffs = Vec::with_capacity(t_order + 1);
    let mut power = NuObject::one(s.space().len());
    for r in 0..=t_order {
        if r > 0 {
            power = s.mul(&power, &h)?;
        }
        let denom = factorial(r as u64) * (BigInt::from(1) << r);
        coeffs.push(
            power
                .scale(&Rational::new(1.into(), denom))
                .shift(-(r as i32)),
        );
    }
    Ok(TSeries::new(coeffs))
}

/// `(1/k!) sum_sigma F_sigma1 * .. * F_sigmak` for the multiset given as
/// distinct factors with multiplicities.
///
/// Distinct words are summed once each by peeling off the first letter, so
/// the cost grows with the number of sub-multisets rather than with `k!`.
pub fn symmetrized_product(s: &dyn StarProduct, groups: &[(Poly, u32)]) -> Result<NuObject> {
    fn words(
        s: &dyn StarProduct,
        counts: &mut Vec<u32>,
        factors: &[NuObject],
        memo: &mut HashMap<Vec<u32>, NuObject>,
    ) -> Result<NuObject> {
        if let Some(hit) = memo.get(counts.as_slice()) {
            return Ok(hit.clone());
        }
        let mut acc = NuObject::zero(s.space().len());
        for i in 0..counts.len() {
            if counts[i] == 0 {
                continue;
            }
            counts[i] -= 1;
            let tail = words(s, counts, factors, memo)?;
            counts[i] += 1;
            acc += &s.mul(&factors[i], &tail)?;
        }
        memo.insert(counts.clone(), acc.clone());
        Ok(acc)
    }
    let n = s.space().len();
    let factors: Vec<NuObject> = groups
        .iter()
        .map(|(f, _)| NuObject::from_poly(f.clone()))
        .collect();
    let mut counts: Vec<u32> = groups.iter().map(|(_, k)| *k).collect();
    let mut memo = HashMap::new();
    memo.insert(vec![0; counts.len()], NuObject::one(n));
    let total = words(s, &mut counts, &factors, &mut memo)?;
    let mut weight = BigInt::from(1);
    let mut k = 0u64;
    for (_, m) in groups {
        weight *= factorial(*m as u64);
        k += *m as u64;
    }
    Ok(total.scale(&Rational::new(weight, factorial(k))))
}

/// A `nu`-series tagged with the star product it belongs to.
#[derive(Clone, Debug)]
pub struct StarEl {
    pub value: NuObject,
    star: Arc<dyn StarProduct>,
}

impl StarEl {
    pub fn new(star: Arc<dyn StarProduct>, value: NuObject) -> Self {
        StarEl { value, star }
    }

    pub fn star(&self) -> &Arc<dyn StarProduct> {
        &self.star
    }

    fn same_product(&self, other: &StarEl) -> bool {
        Arc::ptr_eq(&self.star, &other.star)
    }

    pub fn mul(&self, other: &StarEl) -> Result<StarEl> {
        if !self.same_product(other) {
            return Err(Error::invalid(
                "star",
                format!(
                    "cannot multiply {} and {} elements",
                    self.star.name(),
                    other.star.name()
                ),
            ));
        }
        Ok(StarEl::new(
            self.star.clone(),
            self.star.mul(&self.value, &other.value)?,
        ))
    }
}
