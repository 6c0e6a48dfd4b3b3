//! Differential-operator series and the A/B equivalence residuals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{SunCoefficients, SunRule};
use crate::arith::{binomial, factorial, Rational};
use crate::error::{Error, Result};
use crate::poly::{Monomial, NuObject, Poly};

/// `sum_alpha c_alpha(x) d^alpha`, keyed by the derivative multi-index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<Monomial, Poly>,
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(nvars: usize) -> Self {
        DiffOp::term(Poly::one(nvars), Monomial::one())
    }

    pub fn term(coeff: Poly, alpha: Monomial) -> Self {
        let mut d = DiffOp::zero(coeff.nvars());
        d.add_term(alpha, &coeff);
        d
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Poly)> + '_ {
        self.terms.iter()
    }

    pub fn add_term(&mut self, alpha: Monomial, coeff: &Poly) {
        let slot = self
            .terms
            .entry(alpha)
            .or_insert_with(|| Poly::zero(coeff.nvars()));
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(*a, c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        let mut out = DiffOp::zero(self.nvars);
        for (a, p) in &self.terms {
            out.add_term(*a, &p.scale(c));
        }
        out
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(f.nvars());
        for (alpha, c) in &self.terms {
            let d = f.diff_multi(alpha);
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        out
    }

    /// `self . other`, using `d^alpha (c g) = sum_{gamma <= alpha} C(alpha, gamma) d^gamma c d^{alpha - gamma} g`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero(self.nvars);
        for (alpha, c) in &self.terms {
            for (beta, d) in &other.terms {
                for gamma in sub_indices(alpha, self.nvars) {
                    let dc = d.diff_multi(&gamma);
                    if dc.is_zero() {
                        continue;
                    }
                    let mut w = BigInt::one();
                    for i in 0..self.nvars {
                        w *= binomial(alpha.get(i) as u64, gamma.get(i) as u64);
                    }
                    let rest = alpha.div(&gamma).expect("gamma <= alpha").mul(beta);
                    out.add_term(rest, &(c * &dc).scale(&Rational::from_integer(w)));
                }
            }
        }
        out
    }
}

fn sub_indices(alpha: &Monomial, n: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for i in 0..n {
        let mut next = Vec::new();
        for m in &out {
            for e in 0..=alpha.get(i) {
                next.push(m.with(i, e));
            }
        }
        out = next;
    }
    out
}

/// `S = sum_r nu^r S_r` with `S_0 = Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOpSeries {
    nvars: usize,
    terms: BTreeMap<u32, DiffOp>,
}

impl DiffOpSeries {
    pub fn identity(nvars: usize) -> Self {
        DiffOpSeries {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Builds `Id + sum_{r >= 1} nu^r S_r`; an entry at `r = 0` is rejected.
    pub fn new(nvars: usize, higher: impl IntoIterator<Item = (u32, DiffOp)>) -> Result<Self> {
        let mut s = DiffOpSeries::identity(nvars);
        for (r, d) in higher {
            if r == 0 {
                return Err(Error::invalid(
                    "equiv",
                    "the order-0 term is fixed to the identity",
                ));
            }
            if d.nvars() != nvars {
                return Err(Error::invalid(
                    "equiv",
                    "operator in the wrong number of variables",
                ));
            }
            let merged = s.terms.get(&r).map_or(d.clone(), |e| e.add(&d));
            s.terms.insert(r, merged);
        }
        s.terms.retain(|_, d| !d.is_zero());
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeff(&self, r: u32) -> DiffOp {
        if r == 0 {
            return DiffOp::identity(self.nvars);
        }
        self.terms
            .get(&r)
            .cloned()
            .unwrap_or_else(|| DiffOp::zero(self.nvars))
    }

    /// `S(F)` for a `nu`-series `F`, extended `nu`-linearly.
    pub fn apply(&self, f: &NuObject) -> NuObject {
        let mut out = f.clone();
        for (r, d) in &self.terms {
            out += &f.map_polys(|p| d.apply(p)).shift(*r as i32);
        }
        out
    }

    /// Composition `self . other` truncated at `nu^max_order`.
    pub fn compose(&self, other: &DiffOpSeries, max_order: u32) -> DiffOpSeries {
        let mut out = DiffOpSeries::identity(self.nvars);
        for a in 0..=max_order {
            for b in 0..=max_order - a {
                if a + b == 0 {
                    continue;
                }
                let prod = self.coeff(a).compose(&other.coeff(b));
                if prod.is_zero() {
                    continue;
                }
                let merged = out
                    .terms
                    .get(&(a + b))
                    .map_or(prod.clone(), |e| e.add(&prod));
                out.terms.insert(a + b, merged);
            }
        }
        out.terms.retain(|_, d| !d.is_zero());
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMode {
    /// `S(F o1 G) = S(F) o2 S(G)` with the products expanded over their cochains.
    A,
    /// `S(F o1 G) = F o2 G`.
    B,
}

/// Residual of the chosen equivalence relation on `(F, G)`, truncated at
/// `nu^nu_order`. Zero certifies the relation to that order.
pub fn apply_equivalence(
    s: &DiffOpSeries,
    mode: EquivMode,
    p1: &dyn SunRule,
    p2: &dyn SunRule,
    f: &Poly,
    g: &Poly,
    nu_order: u32,
) -> Result<NuObject> {
    if p1.space().len() != s.nvars() || p2.space().len() != s.nvars() {
        return Err(Error::invalid(
            "equiv",
            "products and operator series act on different spaces",
        ));
    }
    let lhs = s.apply(&p1.mul(f, g)?);
    let rhs = match mode {
        EquivMode::B => p2.mul(f, g)?,
        EquivMode::A => {
            let sf = s.apply(&NuObject::from_poly(f.clone()));
            let sg = s.apply(&NuObject::from_poly(g.clone()));
            let mut acc = NuObject::zero(s.nvars());
            for (a, fa) in sf.iter() {
                for (b, gb) in sg.iter() {
                    acc += &p2.mul(fa, gb)?.shift(a + b);
                }
            }
            acc
        }
    };
    Ok((&lhs - &rhs).truncate(nu_order as i32))
}

/// `S` with `S_{2r} = eta_r` for `2r <= nu_order`, which carries the usual
/// product to the su(2)* sun product in the sense of mode B.
pub fn weak_trivializer(
    coeffs: &SunCoefficients,
    nvars: usize,
    nu_order: u32,
) -> Result<DiffOpSeries> {
    let r_top = (nu_order / 2) as usize;
    if r_top > coeffs.r_max() {
        return Err(Error::invalid(
            "equiv",
            format!("nu order {nu_order} needs coefficients up to r = {r_top}"),
        ));
    }
    let mut higher = Vec::new();
    for r in 1..=r_top {
        higher.push((2 * r as u32, eta_operator(coeffs, nvars, r)));
    }
    DiffOpSeries::new(nvars, higher)
}

/// `eta_r = (A_r + sum_p z_{p,r} D^{(p)}) Delta^r` with
/// `D^{(p)} = sum_{|alpha| = p} p!/alpha! x^alpha d^alpha` and
/// `Delta^r = sum_{|beta| = r} r!/beta! d^{2 beta}`.
fn eta_operator(coeffs: &SunCoefficients, nvars: usize, r: usize) -> DiffOp {
    let multinomial = |k: usize, m: &Monomial| Rational::new(factorial(k as u64), m.factorial());
    let mut out = DiffOp::zero(nvars);
    for beta in Monomial::all_of_degree(nvars, r as u32) {
        let twice = beta.mul(&beta);
        let wb = multinomial(r, &beta);
        out.add_term(twice, &Poly::constant(nvars, &wb * coeffs.big_a(r)));
        for p in 1..=r {
            let zp = coeffs.z(p, r);
            for alpha in Monomial::all_of_degree(nvars, p as u32) {
                let c = &wb * &multinomial(p, &alpha) * zp;
                out.add_term(alpha.mul(&twice), &Poly::monomial(nvars, alpha, c));
            }
        }
    }
    out
}
