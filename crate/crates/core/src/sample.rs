//! Seeded random generators for randomized identity checks.

use rand::Rng;

use crate::arith::{rat, ratio};
use crate::factor::{is_irreducible, normalize};
use crate::poly::{Monomial, Poly};

/// Shape of random polynomials.
#[derive(Clone, Copy, Debug)]
pub struct PolyShape {
    pub nvars: usize,
    pub max_degree: u32,
    pub max_terms: usize,
    /// Numerators are drawn from `-coeff..=coeff`.
    pub coeff: i64,
    /// Denominators are drawn from `1..=denom`.
    pub denom: i64,
}

impl PolyShape {
    pub fn new(nvars: usize, max_degree: u32) -> Self {
        PolyShape {
            nvars,
            max_degree,
            max_terms: 4,
            coeff: 3,
            denom: 1,
        }
    }

    pub fn terms(mut self, n: usize) -> Self {
        self.max_terms = n;
        self
    }

    pub fn denominators(mut self, d: i64) -> Self {
        self.denom = d;
        self
    }
}

pub fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, degree: u32) -> Monomial {
    let mut m = Monomial::one();
    for _ in 0..degree {
        m.0[rng.gen_range(0..nvars)] += 1;
    }
    m
}

/// A random polynomial, possibly zero.
pub fn random_poly<R: Rng>(rng: &mut R, shape: &PolyShape) -> Poly {
    let mut p = Poly::zero(shape.nvars);
    let n = rng.gen_range(1..=shape.max_terms);
    for _ in 0..n {
        let d = rng.gen_range(0..=shape.max_degree);
        let m = random_monomial(rng, shape.nvars, d);
        let num = rng.gen_range(-shape.coeff..=shape.coeff);
        let den = rng.gen_range(1..=shape.denom);
        p.add_term(m, ratio(num, den));
    }
    p
}

/// A random nonconstant polynomial.
pub fn random_nonconstant<R: Rng>(rng: &mut R, shape: &PolyShape) -> Poly {
    loop {
        let p = random_poly(rng, shape);
        if !p.is_constant() {
            return p;
        }
    }
}

/// A random normalized irreducible polynomial whose total degree is between
/// 1 and `max_degree`, built from at most `max_terms` terms and a nonzero top
/// term.
pub fn random_irreducible<R: Rng>(rng: &mut R, shape: &PolyShape) -> Poly {
    loop {
        let d = rng.gen_range(1..=shape.max_degree);
        let mut p = random_poly(
            rng,
            &PolyShape {
                max_degree: d,
                ..*shape
            },
        );
        let top = random_monomial(rng, shape.nvars, d);
        p.add_term(top, rat(rng.gen_range(1..=shape.coeff.max(1))));
        if p.is_constant() {
            continue;
        }
        if is_irreducible(&p).unwrap_or(false) {
            return normalize(&p).1;
        }
    }
}

/// A random element of `S_n` as an image vector.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}
