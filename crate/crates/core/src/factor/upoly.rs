//! Dense univariate polynomials over Z and Q and the Zassenhaus factorizer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Field, Fp};
use crate::arith::Rational;

pub(crate) type ZPoly = Vec<BigInt>;
pub(crate) type QPoly = Vec<Rational>;

pub(crate) fn trim_z(v: &mut ZPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn trim_q(v: &mut QPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_q(&mut out);
    out
}

pub(crate) fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    let mut out: QPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim_q(&mut out);
    out
}

pub(crate) fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lc = b.last().unwrap().clone();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lc;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        trim_q(&mut r);
    }
    trim_q(&mut q);
    (q, r)
}

pub(crate) fn q_monic(a: &QPoly) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => a.iter().map(|c| c / lc).collect(),
    }
}

pub(crate) fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = q_divrem(&a, &b).1;
        a = b;
        b = r;
    }
    q_monic(&a)
}

/// `(g, s, t)` with `s a + t b = g` and `g` monic.
pub(crate) fn q_ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![Rational::one()], Vec::new());
    let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = q_sub(&s0, &q_mul(&q, &s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = q_sub(&t0, &q_mul(&q, &t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    let lc = r0.last().expect("gcd of two zero polynomials").clone();
    let div = |v: &QPoly| v.iter().map(|c| c / &lc).collect::<QPoly>();
    (div(&r0), div(&s0), div(&t0))
}

pub(crate) fn q_deriv(a: &QPoly) -> QPoly {
    let mut out: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect();
    trim_q(&mut out);
    out
}

pub(crate) fn q_is_squarefree(a: &QPoly) -> bool {
    a.len() <= 2 || q_gcd(a, &q_deriv(a)).len() == 1
}

/// Scales to an integer primitive polynomial with positive leading coefficient.
pub(crate) fn q_to_primitive_z(a: &QPoly) -> ZPoly {
    let mut lcm = BigInt::one();
    for c in a {
        lcm = lcm.lcm(c.denom());
    }
    let mut out: ZPoly = a
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = out.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() {
        for c in out.iter_mut() {
            *c = &*c / &g;
        }
    }
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

pub(crate) fn z_to_q(a: &ZPoly) -> QPoly {
    a.iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect()
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(&mut out);
    out
}

/// Exact quotient over Z, or `None`.
fn z_div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let mut r = a.clone();
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lc = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while !r.is_empty() {
        if r.len() < b.len() {
            return None;
        }
        let shift = r.len() - b.len();
        let (c, rem) = r.last().unwrap().div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        trim_z(&mut r);
    }
    trim_z(&mut q);
    Some(q)
}

fn z_primitive(a: &ZPoly) -> ZPoly {
    let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let mut out: ZPoly = a.iter().map(|c| c / &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| {
        (3..)
            .step_by(2)
            .take_while(|d| d * d <= n)
            .all(|d| n % d != 0)
    })
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Lift `g = prod u_i (mod p)` to a factorization modulo `p^k`. `g` must be
/// monic modulo `p^k` and the `u_i` monic and pairwise coprime modulo `p`.
fn hensel_lift(field: Field, g: &ZPoly, factors: &[Fp], k: u32) -> Vec<ZPoly> {
    let p = field.p;
    let pb = BigInt::from(p);
    let r = factors.len();
    // s_i (U / u_i) summed over i is 1 mod p.
    let total = factors
        .iter()
        .fold(vec![1u64], |acc, f| field.mul_poly(&acc, f));
    let s: Vec<Fp> = factors
        .iter()
        .map(|u| {
            let cof = field.divrem(&total, u).0;
            let (_, inv, _) = field.ext_gcd(&cof, u);
            inv
        })
        .collect();
    let mut lifted: Vec<ZPoly> = factors
        .iter()
        .map(|u| u.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut pk = pb.clone();
    for _ in 1..k {
        let prod = lifted
            .iter()
            .fold(vec![BigInt::one()], |acc, u| z_mul(&acc, u));
        let n = g.len().max(prod.len());
        let zero = BigInt::zero();
        let mut e: Fp = (0..n)
            .map(|i| {
                let d = g.get(i).unwrap_or(&zero) - prod.get(i).unwrap_or(&zero);
                debug_assert!(d.mod_floor(&pk).is_zero());
                modp::reduce_big(&(d / &pk), p)
            })
            .collect();
        modp::trim(&mut e);
        if !e.is_empty() {
            for i in 0..r {
                let delta = field.rem(&field.mul_poly(&e, &s[i]), &factors[i]);
                for (j, c) in delta.iter().enumerate() {
                    lifted[i][j] += &pk * BigInt::from(*c);
                }
            }
        }
        pk *= &pb;
    }
    lifted
}

/// Irreducible factors of a primitive squarefree `f` with positive leading
/// coefficient and degree >= 1, as primitive integer polynomials.
pub(crate) fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    let (field, modular) = small_primes()
        .find_map(|p| {
            if modp::is_zero_mod(&lc, p) {
                return None;
            }
            let field = Field::new(p);
            let mut fp: Fp = f.iter().map(|c| modp::reduce_big(c, p)).collect();
            modp::trim(&mut fp);
            if !field.is_squarefree(&fp) {
                return None;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            Some((field, field.factor_squarefree(&field.monic(&fp), &mut rng)))
        })
        .expect("some prime keeps a squarefree polynomial squarefree");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Factor coefficients are bounded by |lc| 2^n |f|_2; lift past twice that.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) * lc.abs() * (BigInt::one() << n) * 2u32;
    let pb = BigInt::from(field.p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lc_inv = lc
        .modinv(&modulus)
        .expect("leading coefficient is a unit mod p");
    let g: ZPoly = f
        .iter()
        .map(|c| (c * &lc_inv).mod_floor(&modulus))
        .collect();
    let mut lifted = hensel_lift(field, &g, &modular, k);

    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        let lc_rest = rest.last().unwrap().clone();
        for subset in subsets(lifted.len(), size) {
            let mut cand: ZPoly = vec![lc_rest.clone()];
            for &i in &subset {
                cand = z_mul(&cand, &lifted[i]);
                for c in cand.iter_mut() {
                    *c = c.mod_floor(&modulus);
                }
            }
            let cand: ZPoly = cand.iter().map(|c| sym_mod(c, &modulus)).collect();
            let h = z_primitive(&cand);
            if let Some(q) = z_div_exact(&rest, &h) {
                hit = Some((subset, h, q));
                break;
            }
        }
        match hit {
            Some((subset, h, q)) => {
                found.push(h);
                rest = q;
                let mut keep = Vec::new();
                for (i, u) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(u);
                    }
                }
                lifted = keep;
            }
            None => size += 1,
        }
    }
    found.push(z_primitive(&rest));
    found
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Monic irreducible factors over Q of a squarefree polynomial of degree >= 1.
pub(crate) fn factor_q_squarefree(f: &QPoly) -> Vec<QPoly> {
    let z = q_to_primitive_z(f);
    zassenhaus(&z).iter().map(|h| q_monic(&z_to_q(h))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn splits_difference_of_squares() {
        let fs = zassenhaus(&z(&[-1, 0, 1]));
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn irreducible_stays_whole() {
        assert_eq!(zassenhaus(&z(&[1, 0, 1])).len(), 1);
        // x^4 + 1 splits modulo every prime but is irreducible over Q.
        assert_eq!(zassenhaus(&z(&[1, 0, 0, 0, 1])), vec![z(&[1, 0, 0, 0, 1])]);
    }

    #[test]
    fn non_monic_product() {
        // (2x + 1)(3x^2 - 5)(x - 7)
        let f = z_mul(&z_mul(&z(&[1, 2]), &z(&[-5, 0, 3])), &z(&[-7, 1]));
        let mut fs = zassenhaus(&f);
        fs.sort();
        let mut want = vec![z(&[1, 2]), z(&[-5, 0, 3]), z(&[-7, 1])];
        want.sort();
        assert_eq!(fs, want);
    }

    #[test]
    fn rational_gcd() {
        let a = q_mul(&vec![rat(1), rat(1)], &vec![rat(-2), rat(1)]);
        let b = q_mul(&vec![rat(1), rat(1)], &vec![rat(3), rat(1)]);
        assert_eq!(q_gcd(&a, &b), vec![rat(1), rat(1)]);
        assert!(!q_is_squarefree(&q_mul(&a, &a)));
    }
}
