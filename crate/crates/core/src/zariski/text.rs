//! Text forms. A Zariski term reads `c * nu^k * y1^a*y2^b * Z[f1; f2]`,
//! omitting the parts that are trivial; the unit is `Z[]`.

use std::fmt;

use num_traits::{One, Signed};

use super::{TaylorElem, ZElem, ZMonomial, ZNu};
use crate::arith::Rational;
use crate::poly::text::{monomial_text, nu_factor};
use crate::poly::VarSpace;

pub struct ZElemDisplay<'a> {
    elem: &'a ZElem,
    space: &'a VarSpace,
}

pub struct ZNuDisplay<'a> {
    elem: &'a ZNu,
    space: &'a VarSpace,
}

pub struct TaylorDisplay<'a> {
    elem: &'a TaylorElem,
    space: &'a VarSpace,
}

/// Names `y1..yn` for the Taylor variables.
pub fn taylor_space(n: usize) -> VarSpace {
    let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    VarSpace::new(&names, &[]).expect("valid Taylor variable names")
}

impl ZMonomial {
    pub fn to_text(&self, space: &VarSpace) -> String {
        let parts: Vec<String> = self.factors().iter().map(|f| f.to_text(space)).collect();
        format!("Z[{}]", parts.join("; "))
    }
}

fn term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    prefix: &[String],
    z: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let mag = c.abs();
    if !mag.is_one() {
        write!(f, "{mag} * ")?;
    }
    for p in prefix.iter().filter(|p| !p.is_empty()) {
        write!(f, "{p} * ")?;
    }
    f.write_str(z)
}

fn write_nu(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    z: &ZNu,
    y: &str,
    space: &VarSpace,
) -> fmt::Result {
    for (k, e) in z.iter() {
        let prefix = [nu_factor(k), y.to_string()];
        for (m, c) in e.terms().rev() {
            term(f, *first, c, &prefix, &m.to_text(space))?;
            *first = false;
        }
    }
    Ok(())
}

impl fmt::Display for ZElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.elem.terms().rev() {
            term(f, first, c, &[], &m.to_text(self.space))?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for ZNuDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        write_nu(f, &mut first, self.elem, "", self.space)
    }
}

impl fmt::Display for TaylorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        let ys = taylor_space(self.elem.nvars());
        let mut first = true;
        for (y, z) in self.elem.terms() {
            write_nu(f, &mut first, z, &monomial_text(y, &ys), self.space)?;
        }
        Ok(())
    }
}

impl ZElem {
    pub fn display<'a>(&'a self, space: &'a VarSpace) -> ZElemDisplay<'a> {
        ZElemDisplay { elem: self, space }
    }

    pub fn to_text(&self, space: &VarSpace) -> String {
        self.display(space).to_string()
    }
}

impl ZNu {
    pub fn display<'a>(&'a self, space: &'a VarSpace) -> ZNuDisplay<'a> {
        ZNuDisplay { elem: self, space }
    }

    pub fn to_text(&self, space: &VarSpace) -> String {
        self.display(space).to_string()
    }
}

impl TaylorElem {
    pub fn display<'a>(&'a self, space: &'a VarSpace) -> TaylorDisplay<'a> {
        TaylorDisplay { elem: self, space }
    }

    pub fn to_text(&self, space: &VarSpace) -> String {
        self.display(space).to_string()
    }
}
