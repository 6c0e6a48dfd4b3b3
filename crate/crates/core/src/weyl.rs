//! Numeric Weyl quantization on a truncated Fock space.
//!
//! `Q = sqrt(hbar/2)(a + a+)` and `P = i sqrt(hbar/2)(a+ - a)`, so that
//! `[Q, P] = i hbar` away from the truncation edge. A monomial `q^a p^b` maps
//! to the average over all orderings of `a` copies of `Q` and `b` copies of
//! `P`, which is the operator counterpart of the Moyal product at
//! `nu = i hbar / 2`.
//!
//! A product of `d` ladder operators is exact on the leading `dim - d` rows
//! and columns; [`OperatorMatrix::exact_band`] reports that size.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::{NuObject, Poly, VarSpace};
use crate::star::{star_exponential, ExpKernel, StarProduct};

pub type CMatrix = DMatrix<Complex64>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FockTruncation {
    dim: usize,
    hbar: f64,
}

impl FockTruncation {
    pub fn new(dim: usize, hbar: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::invalid(
                "weyl",
                format!("dimension {dim} is below 2"),
            ));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::invalid(
                "weyl",
                format!("hbar must be positive, got {hbar}"),
            ));
        }
        Ok(FockTruncation { dim, hbar })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// The default exclusion band, `dim / 2`.
    pub fn default_band(&self) -> usize {
        self.dim / 2
    }

    pub fn annihilation(&self) -> CMatrix {
        let mut a = CMatrix::zeros(self.dim, self.dim);
        for n in 1..self.dim {
            a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
        }
        a
    }

    pub fn position(&self) -> CMatrix {
        let a = self.annihilation();
        (&a + a.adjoint()) * Complex64::new((self.hbar / 2.0).sqrt(), 0.0)
    }

    pub fn momentum(&self) -> CMatrix {
        let a = self.annihilation();
        (a.adjoint() - &a) * Complex64::new(0.0, (self.hbar / 2.0).sqrt())
    }

    /// `nu = i hbar / 2`.
    pub fn nu(&self) -> Complex64 {
        Complex64::new(0.0, self.hbar / 2.0)
    }
}

#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub matrix: CMatrix,
    pub truncation: FockTruncation,
    degree: u32,
}

impl OperatorMatrix {
    /// Leading block on which truncation has no effect.
    pub fn exact_band(&self) -> usize {
        self.truncation.dim.saturating_sub(self.degree as usize)
    }

    /// Set when the truncation leaves no exact block at all.
    pub fn truncation_warning(&self) -> bool {
        self.exact_band() == 0
    }

    /// `max |M - M^+|`.
    pub fn hermitian_defect(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.adjoint()), self.truncation.dim)
    }
}

/// Largest entry modulus over the leading `band x band` block.
pub fn max_abs(m: &CMatrix, band: usize) -> f64 {
    let band = band.min(m.nrows()).min(m.ncols());
    let mut worst = 0.0f64;
    for i in 0..band {
        for j in 0..band {
            worst = worst.max(m[(i, j)].norm());
        }
    }
    worst
}

fn to_f64(c: &Rational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

fn phase_plane_poly(f: &Poly) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::invalid(
            "weyl",
            format!(
                "expected a polynomial in (q, p), got {} variables",
                f.nvars()
            ),
        ));
    }
    Ok(())
}

/// Weyl images of `q^a p^b`, each computed once from the distinct words
/// `W(a, b) = Q W(a - 1, b) + P W(a, b - 1)`.
struct Symmetrizer {
    q: CMatrix,
    p: CMatrix,
    words: HashMap<(u32, u32), CMatrix>,
}

impl Symmetrizer {
    fn new(t: &FockTruncation) -> Self {
        let mut words = HashMap::new();
        words.insert((0, 0), CMatrix::identity(t.dim, t.dim));
        Symmetrizer {
            q: t.position(),
            p: t.momentum(),
            words,
        }
    }

    fn words(&mut self, a: u32, b: u32) -> CMatrix {
        if let Some(w) = self.words.get(&(a, b)) {
            return w.clone();
        }
        let n = self.q.nrows();
        let mut acc = CMatrix::zeros(n, n);
        if a > 0 {
            let tail = self.words(a - 1, b);
            acc += &self.q * tail;
        }
        if b > 0 {
            let tail = self.words(a, b - 1);
            acc += &self.p * tail;
        }
        self.words.insert((a, b), acc.clone());
        acc
    }

    /// Average over orderings: distinct words weighted by `a! b! / (a + b)!`.
    fn monomial(&mut self, a: u32, b: u32) -> CMatrix {
        let w = self.words(a, b);
        let mut weight = 1.0f64;
        for k in 1..=b {
            weight *= k as f64 / (a + k) as f64;
        }
        w * Complex64::new(weight, 0.0)
    }

    fn poly(&mut self, f: &Poly, scale: Complex64, into: &mut CMatrix) {
        for (m, c) in f.terms() {
            let w = self.monomial(m.get(0), m.get(1));
            *into += w * (scale * to_f64(c));
        }
    }
}

pub fn weyl_quantize(f: &Poly, t: &FockTruncation) -> Result<OperatorMatrix> {
    weyl_quantize_nu(&NuObject::from_poly(f.clone()), t)
}

/// Quantizes every `nu^k` coefficient and sums them with `nu = i hbar / 2`.
pub fn weyl_quantize_nu(f: &NuObject, t: &FockTruncation) -> Result<OperatorMatrix> {
    if f.nvars() != 2 {
        return Err(Error::invalid("weyl", "expected a series in (q, p)"));
    }
    let mut sym = Symmetrizer::new(t);
    let mut out = CMatrix::zeros(t.dim, t.dim);
    let mut degree = 0;
    for (k, fk) in f.iter() {
        sym.poly(fk, t.nu().powi(k), &mut out);
        degree = degree.max(fk.total_degree());
    }
    Ok(OperatorMatrix {
        matrix: out,
        truncation: *t,
        degree,
    })
}

/// `max |W(f *_M g) - W(f) W(g)|` over the leading `band x band` block.
pub fn star_vs_operator(f: &Poly, g: &Poly, t: &FockTruncation, band: usize) -> Result<f64> {
    phase_plane_poly(f)?;
    phase_plane_poly(g)?;
    if band >= t.dim {
        return Err(Error::invalid(
            "weyl",
            format!("band {band} must be below dimension {}", t.dim),
        ));
    }
    let moyal = ExpKernel::moyal(&VarSpace::phase_plane())?;
    let fg = moyal.mul_poly(f, g)?;
    let lhs = weyl_quantize_nu(&fg, t)?;
    let prod = weyl_quantize(f, t)?.matrix * weyl_quantize(g, t)?.matrix;
    Ok(max_abs(&(lhs.matrix - prod), band))
}

/// `(q^2 + p^2) / 2`.
pub fn oscillator() -> Poly {
    let q = Poly::var(2, 0);
    let p = Poly::var(2, 1);
    (&(&q * &q) + &(&p * &p)).scale(&Rational::new(1.into(), 2.into()))
}

fn oscillator_eigen(
    t: &FockTruncation,
) -> Result<nalgebra::SymmetricEigen<Complex64, nalgebra::Dyn>> {
    let h = weyl_quantize(&oscillator(), t)?.matrix;
    Ok(h.symmetric_eigen())
}

fn sorted_pairs(e: &nalgebra::SymmetricEigen<Complex64, nalgebra::Dyn>) -> Vec<(f64, usize)> {
    let mut v: Vec<(f64, usize)> = e.eigenvalues.iter().copied().zip(0..).collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    v
}

/// The lowest `k` eigenvalues of `W((q^2 + p^2) / 2)`.
pub fn ho_spectrum(t: &FockTruncation, k: usize) -> Result<Vec<f64>> {
    if 2 * k > t.dim {
        return Err(Error::invalid(
            "weyl",
            format!("k = {k} needs dimension at least {}", 2 * k),
        ));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let e = oscillator_eigen(t)?;
    Ok(sorted_pairs(&e)
        .into_iter()
        .take(k)
        .map(|(l, _)| l)
        .collect())
}

/// `max_n |H Pi_n - lambda_n Pi_n|` together with `max_{n,m} |Pi_n Pi_m - delta_nm Pi_n|`
/// over the lowest `k` levels, measured on the leading `band x band` block.
pub fn spectral_projector_residual(
    t: &FockTruncation,
    k: usize,
    band: usize,
) -> Result<(f64, f64)> {
    let h = weyl_quantize(&oscillator(), t)?.matrix;
    let e = h.clone().symmetric_eigen();
    let pairs = sorted_pairs(&e);
    let projectors: Vec<(f64, CMatrix)> = pairs
        .iter()
        .take(k)
        .map(|&(l, i)| {
            let v = e.eigenvectors.column(i);
            (l, v * v.adjoint())
        })
        .collect();
    let mut eigen = 0.0f64;
    let mut ortho = 0.0f64;
    for (n, (l, pn)) in projectors.iter().enumerate() {
        eigen = eigen.max(max_abs(&(&h * pn - pn * Complex64::new(*l, 0.0)), band));
        for (m, (_, pm)) in projectors.iter().enumerate() {
            let want = if n == m {
                pn.clone()
            } else {
                CMatrix::zeros(t.dim, t.dim)
            };
            ortho = ortho.max(max_abs(&(pn * pm - want), band));
        }
    }
    Ok((eigen, ortho))
}

/// For `r <= order`, the deviation between the Weyl image of the `t^r`
/// coefficient of the star exponential of `H` and the `t^r` Taylor
/// coefficient of `exp(t W(H) / (i hbar))`, relative to `max(1, |coefficient|)`.
///
/// The Taylor coefficients of the matrix exponential are read off by the
/// Cauchy formula on a circle of radius `rho`, sampled at `samples` points.
pub fn exponential_cross_check(
    h: &Poly,
    t: &FockTruncation,
    order: usize,
    band: usize,
) -> Result<Vec<f64>> {
    phase_plane_poly(h)?;
    let moyal = ExpKernel::moyal(&VarSpace::phase_plane())?;
    let series = star_exponential(&moyal, h, order)?;
    let a = weyl_quantize(h, t)?.matrix * Complex64::new(0.0, -1.0 / t.hbar);
    // The Frobenius norm bounds the spectral radius; rho |A| <= 4 keeps
    // both the aliasing and the roundoff of the Cauchy sum small.
    let bound = a.norm();
    let rho = if bound > 0.0 {
        (4.0 / bound).min(1.0)
    } else {
        1.0
    };
    let samples = 64usize;
    let mut taylor = vec![CMatrix::zeros(t.dim, t.dim); order + 1];
    for s in 0..samples {
        let theta = std::f64::consts::TAU * s as f64 / samples as f64;
        let z = Complex64::from_polar(rho, theta);
        let ez = (&a * z).exp();
        for (r, slot) in taylor.iter_mut().enumerate() {
            *slot += &ez * (z.powi(-(r as i32)) / samples as f64);
        }
    }
    let mut out = Vec::with_capacity(order + 1);
    for (r, want) in taylor.iter().enumerate() {
        let got = weyl_quantize_nu(series.coeff(r), t)?.matrix;
        let scale = max_abs(want, band).max(1.0);
        out.push(max_abs(&(got - want), band) / scale);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q() -> Poly {
        Poly::var(2, 0)
    }

    fn p() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn constants_and_number_operator() {
        let t = FockTruncation::new(20, 1.0).unwrap();
        let one = weyl_quantize(&Poly::one(2), &t).unwrap();
        assert!(max_abs(&(one.matrix - CMatrix::identity(20, 20)), 20) < 1e-15);
        let h = weyl_quantize(&(&(&q() * &q()) + &(&p() * &p())), &t).unwrap();
        for n in 0..10 {
            assert!((h.matrix[(n, n)].re - (2 * n + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_monomial_is_symmetrized() {
        let t = FockTruncation::new(12, 1.0).unwrap();
        let (qm, pm) = (t.position(), t.momentum());
        let qp = weyl_quantize(&(&q() * &p()), &t).unwrap();
        let want = (&qm * &pm + &pm * &qm) * Complex64::new(0.5, 0.0);
        assert!(max_abs(&(qp.matrix - want), 12) < 1e-14);
    }

    #[test]
    fn real_polynomials_give_hermitian_matrices() {
        let t = FockTruncation::new(16, 0.7).unwrap();
        let f = &(&q().pow(3) * &p()) - &(&p().pow(2) * &q()).scale(&rat(3));
        let w = weyl_quantize(&f, &t).unwrap();
        assert!(w.hermitian_defect() < 1e-12);
        assert_eq!(w.exact_band(), 12);
        assert!(!w.truncation_warning());
        assert!(
            weyl_quantize(&q().pow(3), &FockTruncation::new(3, 1.0).unwrap())
                .unwrap()
                .truncation_warning()
        );
    }

    #[test]
    fn moyal_products_match_operator_products() {
        let t30 = FockTruncation::new(30, 1.0).unwrap();
        assert!(star_vs_operator(&q(), &p(), &t30, 15).unwrap() < 1e-10);
        let t40 = FockTruncation::new(40, 1.0).unwrap();
        assert!(star_vs_operator(&q().pow(2), &p().pow(2), &t40, 15).unwrap() < 1e-9);
        let f = &q().pow(2) + &p();
        assert!(star_vs_operator(&f, &Poly::one(2), &t40, 15).unwrap() < 1e-12);
    }

    #[test]
    fn oscillator_levels() {
        let t = FockTruncation::new(40, 1.0).unwrap();
        let levels = ho_spectrum(&t, 5).unwrap();
        for (n, l) in levels.iter().enumerate() {
            assert!((l - (n as f64 + 0.5)).abs() < 1e-9, "{levels:?}");
        }
        let t2 = FockTruncation::new(40, 2.0).unwrap();
        assert!((ho_spectrum(&t2, 1).unwrap()[0] - 1.0).abs() < 1e-9);
        assert!(ho_spectrum(&t, 0).unwrap().is_empty());
        assert!(ho_spectrum(&t, 21).is_err());
    }

    #[test]
    fn projectors_diagonalize_the_oscillator() {
        let t = FockTruncation::new(40, 1.0).unwrap();
        let (eigen, ortho) = spectral_projector_residual(&t, 5, 20).unwrap();
        assert!(eigen < 1e-9 && ortho < 1e-9, "{eigen} {ortho}");
    }

    #[test]
    fn star_exponential_matches_matrix_exponential() {
        let t = FockTruncation::new(24, 1.0).unwrap();
        let dev = exponential_cross_check(&oscillator(), &t, 6, 10).unwrap();
        assert!(dev.iter().all(|d| *d < 1e-8), "{dev:?}");
    }

    #[test]
    fn invalid_truncations() {
        assert!(FockTruncation::new(1, 1.0).is_err());
        assert!(FockTruncation::new(4, 0.0).is_err());
        let t = FockTruncation::new(4, 1.0).unwrap();
        assert!(star_vs_operator(&q(), &p(), &t, 4).is_err());
        assert!(weyl_quantize(&Poly::var(3, 0), &t).is_err());
    }
}
