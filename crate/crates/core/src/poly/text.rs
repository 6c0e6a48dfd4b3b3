//! Canonical text form.
//!
//! Terms are written in descending graded-lex order. A coefficient of 1 is
//! omitted, rationals print as `a/b`, and a negative term is joined with
//! ` - `. For `nu`-series the powers are listed in ascending order, each block
//! again in descending graded-lex order, and every term reads `c*nu^k*mono`.

use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::{Monomial, NuObject, Poly, VarSpace};
use crate::arith::Rational;

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    space: &'a VarSpace,
}

pub struct NuDisplay<'a> {
    obj: &'a NuObject,
    space: &'a VarSpace,
}

impl Poly {
    pub fn display<'a>(&'a self, space: &'a VarSpace) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, space }
    }

    pub fn to_text(&self, space: &VarSpace) -> String {
        self.display(space).to_string()
    }
}

impl NuObject {
    pub fn display<'a>(&'a self, space: &'a VarSpace) -> NuDisplay<'a> {
        NuDisplay { obj: self, space }
    }

    pub fn to_text(&self, space: &VarSpace) -> String {
        self.display(space).to_string()
    }
}

/// `x1^2*x2`, or the empty string for the unit monomial.
pub fn monomial_text(m: &Monomial, space: &VarSpace) -> String {
    let mut out = String::new();
    for i in 0..space.len() {
        let e = m.get(i);
        if e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(space.name(i));
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
    out
}

/// Writes the magnitude part of one term, given the already-rendered
/// non-numeric factors (`nu^k`, monomial) joined by `*`.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    body: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else if neg {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    let mag = c.abs();
    if body.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        f.write_str(body)
    } else {
        write!(f, "{mag}*{body}")
    }
}

pub(crate) fn nu_factor(k: i32) -> String {
    match k {
        0 => String::new(),
        1 => "nu".to_string(),
        _ => format!("nu^{k}"),
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms().rev() {
            write_term(f, first, c, &monomial_text(m, self.space))?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for NuDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.obj.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, p) in self.obj.iter() {
            let nu = nu_factor(k);
            for (m, c) in p.terms().rev() {
                let mono = monomial_text(m, self.space);
                let body = match (nu.is_empty(), mono.is_empty()) {
                    (true, _) => mono,
                    (false, true) => nu.clone(),
                    (false, false) => format!("{nu}*{mono}"),
                };
                write_term(f, first, c, &body)?;
                first = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn poly_text() {
        let s = VarSpace::euclidean(3);
        let x1 = Poly::var(3, 0);
        let x2 = Poly::var(3, 1);
        let x3 = Poly::var(3, 2);
        let f = &(&(&x1 * &x1) * &x2).scale(&ratio(3, 2)) - &x3;
        assert_eq!(f.to_text(&s), "3/2*x1^2*x2 - x3");
        assert_eq!((-&x1).to_text(&s), "-x1");
        assert_eq!(Poly::constant(3, rat(-7)).to_text(&s), "-7");
        assert_eq!(Poly::zero(3).to_text(&s), "0");
        assert_eq!((&x1 + &Poly::one(3)).to_text(&s), "x1 + 1");
    }

    #[test]
    fn nu_text() {
        let s = VarSpace::su2();
        let l1 = Poly::var(3, 0);
        let l2 = Poly::var(3, 1);
        let l3 = Poly::var(3, 2);
        let a = &NuObject::from_poly(&l1 * &l2) + &NuObject::monomial(1, l3.clone());
        assert_eq!(a.to_text(&s), "L1*L2 + nu*L3");
        let b = &NuObject::from_poly(&l3 * &l3) + &NuObject::monomial(2, Poly::constant(3, rat(2)));
        assert_eq!(b.to_text(&s), "L3^2 + 2*nu^2");
        let c = NuObject::monomial(-1, l1.scale(&ratio(-1, 2)));
        assert_eq!(c.to_text(&s), "-1/2*nu^-1*L1");
    }
}
