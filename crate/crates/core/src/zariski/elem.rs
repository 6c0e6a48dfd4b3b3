use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::poly::Poly;

/// A multiset of normalized irreducible polynomials, stored in descending
/// graded-lex order. The empty multiset is the unit `Z[]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ZMonomial(Vec<Poly>);

impl ZMonomial {
    pub fn one() -> Self {
        ZMonomial(Vec::new())
    }

    /// Sorts the factors; callers guarantee each is normalized and irreducible.
    pub fn from_factors(mut factors: Vec<Poly>) -> Self {
        factors.sort_by(|a, b| b.cmp(a));
        ZMonomial(factors)
    }

    pub fn factors(&self) -> &[Poly] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset union, the classical product `Z_u Z_v = Z_uv`.
    pub fn mul(&self, other: &ZMonomial) -> ZMonomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ZMonomial::from_factors(v)
    }

    /// The multiset with the factor at `k` removed.
    pub fn without(&self, k: usize) -> ZMonomial {
        let mut v = self.0.clone();
        v.remove(k);
        ZMonomial(v)
    }

    /// The product of the factors as a polynomial in `nvars` variables.
    pub fn expand(&self, nvars: usize) -> Poly {
        self.0.iter().fold(Poly::one(nvars), |acc, f| &acc * f)
    }

    /// Distinct factors with multiplicities, in storage order.
    pub fn grouped(&self) -> Vec<(Poly, u32)> {
        let mut out: Vec<(Poly, u32)> = Vec::new();
        for f in &self.0 {
            match out.last_mut() {
                Some((g, k)) if g == f => *k += 1,
                _ => out.push((f.clone(), 1)),
            }
        }
        out
    }
}

/// An element of the Zariski algebra: rational combination of Z-monomials.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ZElem {
    terms: BTreeMap<ZMonomial, Rational>,
}

impl ZElem {
    pub fn zero() -> Self {
        ZElem::default()
    }

    pub fn unit() -> Self {
        ZElem::monomial(ZMonomial::one(), Rational::one())
    }

    pub fn monomial(m: ZMonomial, c: Rational) -> Self {
        let mut z = ZElem::zero();
        z.add_term(m, c);
        z
    }

    pub fn add_term(&mut self, m: ZMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ZMonomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &ZMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> ZElem {
        if c.is_zero() {
            return ZElem::zero();
        }
        ZElem {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// The classical product, extended bilinearly from `Z_u Z_v = Z_uv`.
    pub fn mul(&self, other: &ZElem) -> ZElem {
        let mut out = ZElem::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl AddAssign<&ZElem> for ZElem {
    fn add_assign(&mut self, rhs: &ZElem) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&ZElem> for ZElem {
    fn sub_assign(&mut self, rhs: &ZElem) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&ZElem> for &ZElem {
    type Output = ZElem;
    fn add(self, rhs: &ZElem) -> ZElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&ZElem> for &ZElem {
    type Output = ZElem;
    fn sub(self, rhs: &ZElem) -> ZElem {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &ZElem {
    type Output = ZElem;
    fn neg(self) -> ZElem {
        self.scale(&-Rational::one())
    }
}

/// A polynomial in `nu` with Zariski coefficients. Negative powers are
/// representable so that exponential series fit the same type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ZNu {
    coeffs: BTreeMap<i32, ZElem>,
}

impl ZNu {
    pub fn zero() -> Self {
        ZNu::default()
    }

    pub fn from_elem(z: ZElem) -> Self {
        ZNu::monomial(0, z)
    }

    pub fn monomial(k: i32, z: ZElem) -> Self {
        let mut out = ZNu::zero();
        out.add_at(k, &z);
        out
    }

    pub fn add_at(&mut self, k: i32, z: &ZElem) {
        if z.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        *slot += z;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i32) -> ZElem {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn classical(&self) -> ZElem {
        self.coeff(0)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i32, &ZElem)> + '_ {
        self.coeffs.iter().map(|(k, z)| (*k, z))
    }

    pub fn min_power(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn scale(&self, c: &Rational) -> ZNu {
        let mut out = ZNu::zero();
        for (k, z) in &self.coeffs {
            out.add_at(*k, &z.scale(c));
        }
        out
    }

    pub fn shift(&self, s: i32) -> ZNu {
        ZNu {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, z)| (k + s, z.clone()))
                .collect(),
        }
    }
}

impl From<ZElem> for ZNu {
    fn from(z: ZElem) -> Self {
        ZNu::from_elem(z)
    }
}

impl AddAssign<&ZNu> for ZNu {
    fn add_assign(&mut self, rhs: &ZNu) {
        for (k, z) in &rhs.coeffs {
            self.add_at(*k, z);
        }
    }
}

impl SubAssign<&ZNu> for ZNu {
    fn sub_assign(&mut self, rhs: &ZNu) {
        for (k, z) in &rhs.coeffs {
            self.add_at(*k, &-z);
        }
    }
}

impl Add<&ZNu> for &ZNu {
    type Output = ZNu;
    fn add(self, rhs: &ZNu) -> ZNu {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&ZNu> for &ZNu {
    type Output = ZNu;
    fn sub(self, rhs: &ZNu) -> ZNu {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &ZNu {
    type Output = ZNu;
    fn neg(self) -> ZNu {
        self.scale(&-Rational::one())
    }
}
