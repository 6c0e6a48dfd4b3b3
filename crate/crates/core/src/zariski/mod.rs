//! The Zariski algebra of irreducible-factor multisets and its deformations.
//!
//! A polynomial `u = c u_1^{m_1} ... u_k^{m_k}` is sent to `c Z[u_1; ..; u_k]`
//! (factors repeated by multiplicity). This map, `zeta`, is multiplicative
//! but deliberately not additive. The deformed product of two Z-monomials
//! evaluates the symmetrized star product of the joint factor list and sends
//! every `nu`-coefficient of the result back through `zeta`. Only the `nu^0`
//! parts of the operands take part, so positive powers are annihilated.

mod elem;
mod taylor;
mod text;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::One;

pub use elem::{ZElem, ZMonomial, ZNu};
pub use taylor::TaylorElem;
pub use text::{taylor_space, TaylorDisplay, ZElemDisplay, ZNuDisplay};

use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};
use crate::factor::{factorize, normalize};
use crate::poly::{NuObject, Poly, VarSpace};
use crate::star::{ExpKernel, StarProduct};

/// Largest factor count accepted by the symmetrized evaluation.
pub const MAX_EVAL_FACTORS: usize = 16;

/// `zeta` with a shared factorization cache. Cheap to share between threads.
#[derive(Debug, Default)]
pub struct Zeta {
    cache: Mutex<HashMap<Poly, (Rational, ZMonomial)>>,
}

impl Zeta {
    pub fn new() -> Self {
        Zeta::default()
    }

    /// `(c, m)` with `p = c * expand(m)`; `None` for the zero polynomial.
    pub fn split(&self, p: &Poly) -> Result<Option<(Rational, ZMonomial)>> {
        if p.is_zero() {
            return Ok(None);
        }
        if let Some(hit) = self.cache.lock().expect("zeta cache poisoned").get(p) {
            return Ok(Some(hit.clone()));
        }
        let f = factorize(p)?;
        let out = (f.unit.clone(), ZMonomial::from_factors(f.multiset()));
        self.cache
            .lock()
            .expect("zeta cache poisoned")
            .insert(p.clone(), out.clone());
        Ok(Some(out))
    }

    /// `Z_p`, with `Z_{cu} = c Z_u` and `Z_0 = 0`.
    pub fn of_poly(&self, p: &Poly) -> Result<ZElem> {
        Ok(match self.split(p)? {
            None => ZElem::zero(),
            Some((c, m)) => ZElem::monomial(m, c),
        })
    }

    /// `zeta` applied to every `nu`-coefficient.
    pub fn of_nu(&self, p: &NuObject) -> Result<ZNu> {
        let mut out = ZNu::zero();
        for (k, c) in p.iter() {
            out.add_at(k, &self.of_poly(c)?);
        }
        Ok(out)
    }

    /// `delta_i`: the derivative through the Leibniz rule on irreducible
    /// factors, each differentiated factor re-expressed by `zeta`.
    pub fn delta(&self, i: usize, a: &ZElem) -> Result<ZElem> {
        let mut out = ZElem::zero();
        for (m, c) in a.terms() {
            for (k, f) in m.factors().iter().enumerate() {
                let d = self.of_poly(&f.diff(i))?;
                if d.is_zero() {
                    continue;
                }
                let rest = ZElem::monomial(m.without(k), c.clone());
                out += &rest.mul(&d);
            }
        }
        Ok(out)
    }
}

/// The deformed Zariski product context built over one star product.
#[derive(Debug)]
pub struct Zariski {
    star: Arc<dyn StarProduct>,
    zeta: Zeta,
    evals: Mutex<HashMap<ZMonomial, Arc<ZNu>>>,
}

impl Zariski {
    pub fn new(star: Arc<dyn StarProduct>) -> Self {
        Zariski {
            star,
            zeta: Zeta::new(),
            evals: Mutex::new(HashMap::new()),
        }
    }

    /// R^n with the Moyal product over `(x1, x2), (x3, x4), ..`. For odd `n`
    /// the last coordinate stays central, which is the partial Moyal product
    /// on the first `n - 1` coordinates.
    pub fn for_dimension(n: usize) -> Result<Self> {
        if !(2..=crate::poly::MAX_VARS).contains(&n) {
            return Err(Error::invalid(
                "zariski",
                format!("dimension {n} unsupported"),
            ));
        }
        let space = VarSpace::euclidean(n);
        let kernel = if n.is_multiple_of(2) {
            ExpKernel::moyal(&space)?
        } else {
            let all: Vec<usize> = (0..space.pairs().len()).collect();
            ExpKernel::partial_moyal(&space, &all)?
        };
        Ok(Zariski::new(Arc::new(kernel)))
    }

    pub fn star(&self) -> &Arc<dyn StarProduct> {
        &self.star
    }

    pub fn space(&self) -> &VarSpace {
        self.star.space()
    }

    pub fn nvars(&self) -> usize {
        self.star.space().len()
    }

    pub fn zeta(&self) -> &Zeta {
        &self.zeta
    }

    /// Irreducible factors of the classical part, or `None` when that part
    /// vanishes. The lowest nonzero coefficient must be normalized.
    pub fn alpha(&self, p: &NuObject) -> Result<Option<ZMonomial>> {
        let Some(low) = p.min_power() else {
            return Ok(None);
        };
        if low < 0 {
            return Err(Error::invalid(
                "zariski",
                "alpha takes series without negative powers of nu",
            ));
        }
        let lead = p.coeff(low).leading_coeff();
        if !lead.is_one() {
            return Err(Error::invalid(
                "zariski",
                format!("alpha needs a normalized series; leading coefficient is {lead}"),
            ));
        }
        if low > 0 {
            return Ok(None);
        }
        Ok(self.zeta.split(&p.coeff(0))?.map(|(_, m)| m))
    }

    /// `(1/k!) sum_sigma P_sigma1 * .. * P_sigmak` over the factor list.
    pub fn eval_t(&self, tensor: &ZMonomial) -> Result<NuObject> {
        let n = self.nvars();
        if tensor.len() > MAX_EVAL_FACTORS {
            return Err(Error::limit(
                "zariski",
                format!(
                    "symmetrizing {} factors exceeds the bound {MAX_EVAL_FACTORS}",
                    tensor.len()
                ),
            ));
        }
        if let Some(f) = tensor.factors().iter().find(|f| f.nvars() != n) {
            return Err(Error::invalid(
                "zariski",
                format!("factor in {} variables, product acts on {n}", f.nvars()),
            ));
        }
        crate::star::symmetrized_product(self.star.as_ref(), &tensor.grouped())
    }

    /// `T(alpha(P) (x) alpha(Q))`.
    pub fn times_alpha(&self, p: &NuObject, q: &NuObject) -> Result<NuObject> {
        match (self.alpha(p)?, self.alpha(q)?) {
            (Some(a), Some(b)) => self.eval_t(&a.mul(&b)),
            _ => Ok(NuObject::zero(self.nvars())),
        }
    }

    /// `zeta(T(u))` for the joint factor list `u`, cached.
    pub fn z_eval(&self, u: &ZMonomial) -> Result<Arc<ZNu>> {
        if let Some(hit) = self.evals.lock().expect("eval cache poisoned").get(u) {
            return Ok(hit.clone());
        }
        let value = Arc::new(self.zeta.of_nu(&self.eval_t(u)?)?);
        self.evals
            .lock()
            .expect("eval cache poisoned")
            .insert(u.clone(), value.clone());
        Ok(value)
    }

    /// `Z_u .nu Z_v = zeta(u x_alpha v)` on ZElem operands.
    pub fn z_mul(&self, a: &ZElem, b: &ZElem) -> Result<ZNu> {
        let mut out = ZNu::zero();
        for (u, cu) in a.terms() {
            for (v, cv) in b.terms() {
                let prod = self.z_eval(&u.mul(v))?;
                out += &prod.scale(&(cu * cv));
            }
        }
        Ok(out)
    }

    /// The deformed product on `Z_nu`: only the `nu^0` parts contribute.
    pub fn z_mul_nu(&self, a: &ZNu, b: &ZNu) -> Result<ZNu> {
        for z in [a, b] {
            if z.min_power().is_some_and(|k| k < 0) {
                return Err(Error::invalid(
                    "zariski",
                    "operands may not carry negative powers of nu",
                ));
            }
        }
        self.z_mul(&a.classical(), &b.classical())
    }

    /// The `m`-fold product `Z .nu Z .nu .. .nu Z`, folded from the left.
    pub fn power(&self, z: &ZNu, m: u32) -> Result<ZNu> {
        let mut acc = ZNu::from_elem(ZElem::unit());
        for _ in 0..m {
            acc = self.z_mul_nu(&acc, z)?;
        }
        Ok(acc)
    }

    /// `sum_r (1/r!) (t/2nu)^r Z_h^{.r}`: entry `r` is the `t^r` coefficient.
    pub fn exponential(&self, h: &Poly, t_order: usize) -> Result<Vec<ZNu>> {
        let (c, hn) = normalize(h);
        if !c.is_one() {
            return Err(Error::invalid(
                "zariski",
                format!("exponent must be normalized, leading coefficient {c}"),
            ));
        }
        let z = ZNu::from_elem(self.zeta.of_poly(&hn)?);
        let mut out = Vec::with_capacity(t_order + 1);
        let mut power = ZNu::from_elem(ZElem::unit());
        for r in 0..=t_order {
            if r > 0 {
                power = self.z_mul_nu(&power, &z)?;
            }
            let denom = factorial(r as u64) * (BigInt::one() << r);
            out.push(
                power
                    .scale(&Rational::new(BigInt::one(), denom))
                    .shift(-(r as i32)),
            );
        }
        Ok(out)
    }
}

/// A polynomial `u` with `delta_i delta_j Z_u != delta_j delta_i Z_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusWitness {
    pub u: Poly,
    pub i: usize,
    pub j: usize,
    pub ij: ZElem,
    pub ji: ZElem,
}

impl FrobeniusWitness {
    /// Recomputes both sides from scratch.
    pub fn verify(&self) -> Result<bool> {
        let zeta = Zeta::new();
        if !crate::factor::is_normalized_irreducible(&self.u)? {
            return Ok(false);
        }
        let z = zeta.of_poly(&self.u)?;
        let ij = zeta.delta(self.i, &zeta.delta(self.j, &z)?)?;
        let ji = zeta.delta(self.j, &zeta.delta(self.i, &z)?)?;
        Ok(ij != ji && ij == self.ij && ji == self.ji)
    }
}

/// Searches normalized irreducible polynomials in `x1, x2` (inside `nvars`
/// variables) with at most three terms, coefficients in `{-1, 1}` and total
/// degree at most `max_degree`. Returns the graded-lex smallest witness for
/// the pair `(x1, x2)`.
pub fn frobenius_search(nvars: usize, max_degree: u32) -> Result<Option<FrobeniusWitness>> {
    if nvars < 2 {
        return Err(Error::invalid(
            "zariski",
            "the search needs at least two variables",
        ));
    }
    let monos = crate::poly::Monomial::all_up_to_degree(2, max_degree);
    let n = monos.len();
    let mut supports: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        supports.push(vec![a]);
        for b in a + 1..n {
            supports.push(vec![a, b]);
            for c in b + 1..n {
                supports.push(vec![a, b, c]);
            }
        }
    }
    let mut candidates: Vec<Poly> = Vec::new();
    for support in &supports {
        for bits in 0..1u32 << support.len() {
            let terms = support.iter().enumerate().map(|(k, &m)| {
                let c = if bits >> k & 1 == 1 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                (monos[m], c)
            });
            let p = Poly::from_terms(nvars, terms);
            if p.total_degree() >= 2 && p.leading_coeff().is_one() {
                candidates.push(p);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let zeta = Zeta::new();
    for u in candidates {
        if !crate::factor::is_irreducible(&u)? {
            continue;
        }
        let z = zeta.of_poly(&u)?;
        let ij = zeta.delta(0, &zeta.delta(1, &z)?)?;
        let ji = zeta.delta(1, &zeta.delta(0, &z)?)?;
        if ij != ji {
            return Ok(Some(FrobeniusWitness {
                u,
                i: 0,
                j: 1,
                ij,
                ji,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests;
