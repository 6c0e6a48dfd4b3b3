use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::Zero;

use super::Poly;
use crate::arith::Rational;

/// Laurent polynomial in the formal parameter `nu` with [`Poly`] coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NuObject {
    nvars: usize,
    coeffs: BTreeMap<i32, Poly>,
}

impl NuObject {
    pub fn zero(nvars: usize) -> Self {
        NuObject {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        NuObject::from_poly(Poly::one(nvars))
    }

    pub fn from_poly(p: Poly) -> Self {
        NuObject::monomial(0, p)
    }

    /// `nu^k * p`.
    pub fn monomial(k: i32, p: Poly) -> Self {
        let mut out = NuObject::zero(p.nvars());
        out.add_at(k, &p);
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `nu^k` (zero if absent).
    pub fn coeff(&self, k: i32) -> Poly {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn coeff_ref(&self, k: i32) -> Option<&Poly> {
        self.coeffs.get(&k)
    }

    /// Non-zero coefficients in ascending `nu` order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i32, &Poly)> + '_ {
        self.coeffs.iter().map(|(k, p)| (*k, p))
    }

    pub fn min_power(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// The classical (`nu^0`) part.
    pub fn classical(&self) -> Poly {
        self.coeff(0)
    }

    pub fn add_at(&mut self, k: i32, p: &Poly) {
        assert_eq!(p.nvars(), self.nvars, "mismatched variable counts");
        if p.is_zero() {
            return;
        }
        let slot = self
            .coeffs
            .entry(k)
            .or_insert_with(|| Poly::zero(self.nvars));
        *slot += p;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn scale(&self, c: &Rational) -> NuObject {
        let mut out = NuObject::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (k, p) in &self.coeffs {
            out.coeffs.insert(*k, p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> NuObject {
        let mut out = NuObject::zero(self.nvars);
        for (k, a) in &self.coeffs {
            out.add_at(*k, &(a * p));
        }
        out
    }

    /// Multiply by `nu^k`.
    pub fn shift(&self, k: i32) -> NuObject {
        NuObject {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, p)| (e + k, p.clone()))
                .collect(),
        }
    }

    /// Drop every power above `max`.
    pub fn truncate(&self, max: i32) -> NuObject {
        NuObject {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| **k <= max)
                .map(|(k, p)| (*k, p.clone()))
                .collect(),
        }
    }

    pub fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> NuObject {
        let mut out = NuObject::zero(self.nvars);
        for (k, p) in &self.coeffs {
            let q = f(p);
            if out.nvars != q.nvars() {
                out.nvars = q.nvars();
            }
            out.add_at(*k, &q);
        }
        out
    }

    /// Substitute a numeric value for `nu`, evaluating coefficients with `eval`.
    pub fn eval_nu<T, F>(&self, nu: T, mut eval: F) -> T
    where
        T: Copy + std::ops::Mul<Output = T> + std::ops::Add<Output = T> + num_traits::Zero,
        T: num_traits::Inv<Output = T> + num_traits::One,
        F: FnMut(&Poly) -> T,
    {
        let mut acc = T::zero();
        for (k, p) in &self.coeffs {
            let base = if *k < 0 { nu.inv() } else { nu };
            let mut w = T::one();
            for _ in 0..k.unsigned_abs() {
                w = w * base;
            }
            acc = acc + w * eval(p);
        }
        acc
    }
}

impl From<Poly> for NuObject {
    fn from(p: Poly) -> Self {
        NuObject::from_poly(p)
    }
}

impl AddAssign<&NuObject> for NuObject {
    fn add_assign(&mut self, rhs: &NuObject) {
        for (k, p) in &rhs.coeffs {
            self.add_at(*k, p);
        }
    }
}

impl SubAssign<&NuObject> for NuObject {
    fn sub_assign(&mut self, rhs: &NuObject) {
        for (k, p) in &rhs.coeffs {
            self.add_at(*k, &-p);
        }
    }
}

impl Add<&NuObject> for &NuObject {
    type Output = NuObject;
    fn add(self, rhs: &NuObject) -> NuObject {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&NuObject> for &NuObject {
    type Output = NuObject;
    fn sub(self, rhs: &NuObject) -> NuObject {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &NuObject {
    type Output = NuObject;
    fn neg(self) -> NuObject {
        NuObject {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|(k, p)| (*k, -p)).collect(),
        }
    }
}

impl Mul<&NuObject> for &NuObject {
    type Output = NuObject;
    fn mul(self, rhs: &NuObject) -> NuObject {
        let mut out = NuObject::zero(self.nvars);
        for (a, f) in &self.coeffs {
            for (b, g) in &rhs.coeffs {
                out.add_at(a + b, &(f * g));
            }
        }
        out
    }
}

/// Truncated power series in `t` whose coefficients are [`NuObject`]s.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TSeries {
    coeffs: Vec<NuObject>,
}

impl TSeries {
    pub fn new(coeffs: Vec<NuObject>) -> Self {
        assert!(!coeffs.is_empty(), "a t-series has at least the t^0 term");
        TSeries { coeffs }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &NuObject {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[NuObject] {
        &self.coeffs
    }

    /// Lowest t-order at which the two series differ.
    pub fn first_difference(&self, other: &TSeries) -> Option<usize> {
        let n = self.coeffs.len().min(other.coeffs.len());
        (0..n).find(|&r| self.coeffs[r] != other.coeffs[r])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn products_collect_by_nu_power() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let a = &NuObject::from_poly(x.clone()) + &NuObject::monomial(1, y.clone());
        let b = &NuObject::from_poly(x.clone()) - &NuObject::monomial(1, y.clone());
        let prod = &a * &b;
        assert_eq!(prod.coeff(0), &x * &x);
        assert!(prod.coeff(1).is_zero());
        assert_eq!(prod.coeff(2), -(&y * &y));
    }

    #[test]
    fn laurent_powers() {
        let one = Poly::one(1);
        let a = NuObject::monomial(-2, one.clone());
        let b = NuObject::monomial(3, one.scale(&rat(5)));
        assert_eq!((&a * &b).coeff(1), Poly::constant(1, rat(5)));
        assert_eq!(a.min_power(), Some(-2));
        assert_eq!(b.shift(-3).classical(), Poly::constant(1, rat(5)));
    }

    #[test]
    fn ring_axioms_on_small_objects() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let a = &NuObject::from_poly(x.clone()) + &NuObject::monomial(1, y.clone());
        let b = NuObject::monomial(-1, &x + &y);
        let c = &NuObject::monomial(2, x.clone()) + &NuObject::one(2);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }
}
