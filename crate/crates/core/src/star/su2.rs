//! The covariant star product on su(2)*.
//!
//! The product comes from the Moyal product on R^6 through the map
//! `L_i = sum eps_ijk q_j p_k`; with the bracket sign used in [`crate::poly`]
//! this is the choice for which `{L_1, L_2} = L_3`. Left multiplication by a
//! coordinate has the closed form
//!
//! `L_i * F = L_i F + nu sum eps_ijk L_k dF/dL_j + nu^2 (2 dF/dL_i + sum_j L_j d^2F/dL_i dL_j)`
//!
//! and a general product is unwound from it: with `F = L_i F'`,
//! `F * G = L_i * (F' * G) - nu X(F') * G - nu^2 Y(F') * G`, where `X`, `Y`
//! are the first and second order parts of the formula above.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use super::kernel::ExpKernel;
use super::StarProduct;
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::poly::{Monomial, NuObject, Poly, VarSpace};

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// First-order part `sum_jk eps_ijk L_k dF/dL_j`.
fn x_part(i: usize, f: &Poly) -> Poly {
    let mut out = Poly::zero(3);
    for j in 0..3 {
        for k in 0..3 {
            let e = levi_civita(i, j, k);
            if e != 0 {
                out += &(&Poly::var(3, k) * &f.diff(j)).scale(&rat(e));
            }
        }
    }
    out
}

/// Second-order part `2 dF/dL_i + sum_j L_j d^2F/dL_i dL_j`.
fn y_part(i: usize, f: &Poly) -> Poly {
    let fi = f.diff(i);
    let mut out = fi.scale(&rat(2));
    for j in 0..3 {
        out += &(&Poly::var(3, j) * &fi.diff(j));
    }
    out
}

/// `L_i * F` for `i` in `0..3`.
pub fn su2_left_mul(i: usize, f: &Poly) -> Result<NuObject> {
    if i >= 3 {
        return Err(Error::invalid(
            "star",
            format!("su(2) axis index {} out of range", i + 1),
        ));
    }
    if f.nvars() != 3 {
        return Err(Error::invalid(
            "star",
            "su(2) polynomials live in three variables",
        ));
    }
    let mut out = NuObject::from_poly(&Poly::var(3, i) * f);
    out.add_at(1, &x_part(i, f));
    out.add_at(2, &y_part(i, f));
    Ok(out)
}

fn left_mul_nu(i: usize, f: &NuObject) -> NuObject {
    let mut out = NuObject::zero(3);
    for (k, p) in f.iter() {
        out += &su2_left_mul(i, p).expect("three variables").shift(k);
    }
    out
}

fn check_su2_space(space: &VarSpace) -> Result<()> {
    if space.len() != 3 {
        return Err(Error::invalid(
            "star",
            format!(
                "the su(2) star product needs three variables, got {}",
                space.len()
            ),
        ));
    }
    Ok(())
}

/// Covariant su(2) star product, evaluated through the left-multiplication
/// recursion with a shared cache of monomial products.
#[derive(Debug)]
pub struct Su2Star {
    space: VarSpace,
    cache: Mutex<HashMap<(Monomial, Monomial), NuObject>>,
}

impl Su2Star {
    pub fn new(space: &VarSpace) -> Result<Self> {
        check_su2_space(space)?;
        Ok(Su2Star {
            space: space.clone(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    fn mono_mul(&self, a: &Monomial, b: &Monomial) -> NuObject {
        if let Some(hit) = self
            .cache
            .lock()
            .expect("su2 cache poisoned")
            .get(&(*a, *b))
        {
            return hit.clone();
        }
        let out = if a.is_one() || b.is_one() {
            NuObject::from_poly(Poly::monomial(3, a.mul(b), Rational::one()))
        } else {
            let i = (0..3)
                .find(|&i| a.get(i) > 0)
                .expect("nonconstant monomial");
            let rest = a.with(i, a.get(i) - 1);
            let rest_p = Poly::monomial(3, rest, Rational::one());
            let g = Poly::monomial(3, *b, Rational::one());
            let mut acc = left_mul_nu(i, &self.poly_mul(&rest_p, &g));
            acc -= &self.poly_mul(&x_part(i, &rest_p), &g).shift(1);
            acc -= &self.poly_mul(&y_part(i, &rest_p), &g).shift(2);
            acc
        };
        self.cache
            .lock()
            .expect("su2 cache poisoned")
            .insert((*a, *b), out.clone());
        out
    }

    fn poly_mul(&self, f: &Poly, g: &Poly) -> NuObject {
        let mut out = NuObject::zero(3);
        for (ma, ca) in f.terms() {
            for (mb, cb) in g.terms() {
                out += &self.mono_mul(ma, mb).scale(&(ca * cb));
            }
        }
        out
    }
}

impl StarProduct for Su2Star {
    fn name(&self) -> &'static str {
        "su2"
    }

    fn space(&self) -> &VarSpace {
        &self.space
    }

    fn mul_poly(&self, f: &Poly, g: &Poly) -> Result<NuObject> {
        super::check_space(self, f, g)?;
        Ok(self.poly_mul(f, g))
    }
}

/// The components of `L = q x p` on R^6 with coordinates (q1, q2, q3, p1, p2, p3).
pub fn su2_lift_coordinates() -> [Poly; 3] {
    let q = |j: usize| Poly::var(6, j);
    let p = |j: usize| Poly::var(6, 3 + j);
    [
        &(&q(1) * &p(2)) - &(&q(2) * &p(1)),
        &(&q(2) * &p(0)) - &(&q(0) * &p(2)),
        &(&q(0) * &p(1)) - &(&q(1) * &p(0)),
    ]
}

/// Pulls a polynomial in `(L1, L2, L3)` back to R^6.
pub fn lift_to_r6(f: &Poly) -> Poly {
    f.compose(&su2_lift_coordinates())
}

/// The same product computed literally: lift both factors to R^6, take the
/// Moyal product there and re-express each homogeneous block in the L
/// coordinates by an exact linear solve.
#[derive(Debug)]
pub struct Su2LiftStar {
    space: VarSpace,
    moyal: ExpKernel,
}

impl Su2LiftStar {
    pub fn new(space: &VarSpace) -> Result<Self> {
        check_su2_space(space)?;
        Ok(Su2LiftStar {
            space: space.clone(),
            moyal: ExpKernel::moyal(&VarSpace::phase_space6())?,
        })
    }
}

/// Solves `sum_a c_a L^a = target` over L-monomials of degree `d`.
fn reexpress_block(target: &Poly, d: u32) -> Option<Poly> {
    let basis = Monomial::all_of_degree(3, d);
    let images: Vec<Poly> = basis
        .iter()
        .map(|m| lift_to_r6(&Poly::monomial(3, *m, Rational::one())))
        .collect();
    // Rows indexed by R^6 monomials appearing anywhere.
    let mut rows: Vec<Monomial> = images
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|p| p.terms().map(|(m, _)| *m))
        .collect();
    rows.sort();
    rows.dedup();
    let ncols = basis.len();
    let mut mat: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut row: Vec<Rational> = images.iter().map(|p| p.coeff(r)).collect();
            row.push(target.coeff(r));
            row
        })
        .collect();
    let sol = solve_augmented(&mut mat, ncols)?;
    Some(Poly::from_terms(3, basis.into_iter().zip(sol)))
}

/// Gauss-Jordan elimination on an augmented matrix with `ncols` unknowns.
/// Returns `None` if the system is inconsistent. Free variables are set to 0.
pub(crate) fn solve_augmented(mat: &mut [Vec<Rational>], ncols: usize) -> Option<Vec<Rational>> {
    let nrows = mat.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = Rational::one() / &mat[r][c];
        for v in mat[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..nrows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..=ncols {
                    let t = &f * &mat[r][j];
                    mat[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    if mat[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = mat[i][ncols].clone();
    }
    Some(sol)
}

impl StarProduct for Su2LiftStar {
    fn name(&self) -> &'static str {
        "su2-lift"
    }

    fn space(&self) -> &VarSpace {
        &self.space
    }

    fn mul_poly(&self, f: &Poly, g: &Poly) -> Result<NuObject> {
        super::check_space(self, f, g)?;
        let lifted = self.moyal.mul_poly(&lift_to_r6(f), &lift_to_r6(g))?;
        let mut out = NuObject::zero(3);
        for (k, coeff) in lifted.iter() {
            let top = coeff.total_degree();
            for deg in 0..=top {
                let block = coeff.homogeneous_part(deg);
                if block.is_zero() {
                    continue;
                }
                if deg % 2 == 1 {
                    return Err(Error::internal(
                        "star",
                        "odd-degree block in the lifted product",
                    ));
                }
                let back = reexpress_block(&block, deg / 2).ok_or_else(|| {
                    Error::internal("star", "lifted product is not a polynomial in L")
                })?;
                out.add_at(k, &back);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn left_multiplication_examples() {
        let s = VarSpace::su2();
        assert_eq!(su2_left_mul(2, &l(2)).unwrap().to_text(&s), "L3^2 + 2*nu^2");
        assert_eq!(su2_left_mul(0, &l(1)).unwrap().to_text(&s), "L1*L2 + nu*L3");
        assert_eq!(su2_left_mul(0, &Poly::one(3)).unwrap().to_text(&s), "L1");
        assert!(su2_left_mul(3, &l(0)).is_err());
    }

    #[test]
    fn lift_bracket_has_positive_sign() {
        let r6 = VarSpace::phase_space6();
        let [a, b, c] = su2_lift_coordinates();
        assert_eq!(crate::poly::poisson_bracket(&r6, &a, &b).unwrap(), c);
    }

    #[test]
    fn recursion_matches_lift() {
        let s = VarSpace::su2();
        let fast = Su2Star::new(&s).unwrap();
        let slow = Su2LiftStar::new(&s).unwrap();
        let f = &(&l(0) * &l(1)) + &l(2);
        let g = &(&l(2) * &l(2)) - &l(0);
        assert_eq!(
            fast.mul_poly(&f, &g).unwrap(),
            slow.mul_poly(&f, &g).unwrap()
        );
    }

    #[test]
    fn faithful_to_moyal_on_r6() {
        let s = VarSpace::su2();
        let star = Su2Star::new(&s).unwrap();
        let moyal = ExpKernel::moyal(&VarSpace::phase_space6()).unwrap();
        let f = &(&l(0) * &l(0)) + &l(1);
        let g = &(&l(1) * &l(2)) + &l(0);
        let ours = star.mul_poly(&f, &g).unwrap().map_polys(lift_to_r6);
        let direct = moyal.mul_poly(&lift_to_r6(&f), &lift_to_r6(&g)).unwrap();
        assert_eq!(ours, direct);
    }

    #[test]
    fn rejects_wrong_space() {
        assert!(Su2Star::new(&VarSpace::phase_plane()).is_err());
    }
}
