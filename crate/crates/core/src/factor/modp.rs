//! Dense univariate polynomials over a small prime field `F_p`.
//!
//! Index `i` holds the coefficient of `x^i`; vectors are kept trimmed so the
//! zero polynomial is the empty vector.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

pub(crate) type Fp = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

pub(crate) fn trim(v: &mut Fp) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn deg(a: &Fp) -> isize {
    a.len() as isize - 1
}

impl Field {
    pub fn new(p: u64) -> Self {
        Field { p }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    #[cfg(test)]
    pub fn add_poly(&self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        let mut out: Fp = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn sub_poly(&self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        let mut out: Fp = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul_poly(&self, a: &Fp, b: &Fp) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale_poly(&self, a: &Fp, c: u64) -> Fp {
        let mut out: Fp = a.iter().map(|&x| self.mul(x, c)).collect();
        trim(&mut out);
        out
    }

    pub fn monic(&self, a: &Fp) -> Fp {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale_poly(a, self.inv(lc)),
        }
    }

    pub fn divrem(&self, a: &Fp, b: &Fp) -> (Fp, Fp) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut r = a.clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = self.mul(*r.last().unwrap(), inv);
            q[shift] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = self.sub(r[shift + j], self.mul(c, bj));
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &Fp, b: &Fp) -> Fp {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &Fp, b: &Fp) -> Fp {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &Fp, b: &Fp) -> (Fp, Fp, Fp) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("gcd of two zero polynomials"));
        (
            self.scale_poly(&r0, inv),
            self.scale_poly(&s0, inv),
            self.scale_poly(&t0, inv),
        )
    }

    pub fn deriv(&self, a: &Fp) -> Fp {
        let mut out: Fp = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        trim(&mut out);
        out
    }

    pub fn powmod(&self, base: &Fp, exp: &BigUint, m: &Fp) -> Fp {
        let mut acc: Fp = vec![1];
        acc = self.rem(&acc, m);
        let base = self.rem(base, m);
        let bits = exp.bits();
        for i in (0..bits).rev() {
            acc = self.rem(&self.mul_poly(&acc, &acc), m);
            if exp.bit(i) {
                acc = self.rem(&self.mul_poly(&acc, &base), m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self, f: &Fp) -> bool {
        let d = self.deriv(f);
        !d.is_empty() && self.gcd(f, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g, d)` where `g` is the product of all irreducible factors of
    /// degree `d`.
    fn distinct_degree(&self, f: &Fp) -> Vec<(Fp, usize)> {
        let x: Fp = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut out = Vec::new();
        let mut f = f.clone();
        let mut h = self.rem(&x, &f);
        let mut d = 0;
        while deg(&f) >= 2 * (d as isize + 1) {
            d += 1;
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub_poly(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        if deg(&f) > 0 {
            let n = deg(&f) as usize;
            out.push((f, n));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of irreducibles of degree `d`.
    fn equal_degree<R: Rng>(&self, f: &Fp, d: usize, rng: &mut R, out: &mut Vec<Fp>) {
        let n = deg(f) as usize;
        if n == d {
            out.push(f.clone());
            return;
        }
        let e = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let mut a: Fp = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            let b = self.powmod(&a, &e, f);
            let b = self.sub_poly(&b, &vec![1]);
            if b.is_empty() {
                continue;
            }
            let g = self.gcd(&b, f);
            if g.len() > 1 && g.len() < f.len() {
                let q = self.divrem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&self.monic(&q), d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor_squarefree<R: Rng>(&self, f: &Fp, rng: &mut R) -> Vec<Fp> {
        debug_assert!(f.last() == Some(&1));
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out.sort();
        out
    }
}

/// Reduces a big integer into `[0, p)`.
pub(crate) fn reduce_big(c: &num_bigint::BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    let m = num_bigint::BigInt::from(p);
    let r = c.mod_floor(&m);
    let digits = r.to_u64_digits().1;
    if digits.is_empty() {
        0
    } else {
        debug_assert!(digits.len() == 1);
        digits[0]
    }
}

pub(crate) fn is_zero_mod(c: &num_bigint::BigInt, p: u64) -> bool {
    reduce_big(c, p).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gcd_and_ext_gcd() {
        let f = Field::new(7);
        let a = f.mul_poly(&vec![1, 1], &vec![2, 1]);
        let b = f.mul_poly(&vec![1, 1], &vec![3, 1]);
        assert_eq!(f.gcd(&a, &b), vec![1, 1]);
        let (g, s, t) = f.ext_gcd(&a, &b);
        assert_eq!(f.add_poly(&f.mul_poly(&s, &a), &f.mul_poly(&t, &b)), g);
    }

    #[test]
    fn factors_multiply_back() {
        let f = Field::new(5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x + 1)(x + 2)(x^2 + 2) over F_5; x^2 + 2 has no root mod 5.
        let g = f.mul_poly(&f.mul_poly(&vec![1, 1], &vec![2, 1]), &vec![2, 0, 1]);
        let fs = f.factor_squarefree(&g, &mut rng);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(vec![1], |acc, h| f.mul_poly(&acc, h));
        assert_eq!(prod, g);
    }

    #[test]
    fn equal_degree_splitting() {
        let f = Field::new(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // x^2 + 1 and x^2 + x + 2 are both irreducible over F_3.
        let g = f.mul_poly(&vec![1, 0, 1], &vec![2, 1, 1]);
        let fs = f.factor_squarefree(&g, &mut rng);
        assert_eq!(fs, vec![vec![1, 0, 1], vec![2, 1, 1]]);
    }
}
