//! Multivariate factorization over Q by evaluation, univariate factoring and
//! Hensel lifting in the ideal of the evaluation point.
//!
//! The input is first sheared so that one variable `x` appears to the full
//! total degree; the result is then monic in `x` up to a constant, which makes
//! it primitive in `x` and lets every lifted factor be taken monic. Lifting is
//! truncated by total degree in the remaining variables.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::upoly::{
    factor_q_squarefree, q_deriv, q_divrem, q_ext_gcd, q_gcd, q_is_squarefree, q_mul, subsets,
    trim_q, QPoly,
};
use crate::arith::{rat, Rational};
use crate::poly::{Monomial, Poly};

fn to_qpoly(p: &Poly, x: usize) -> QPoly {
    let mut out = vec![Rational::zero(); p.degree_in(x) as usize + 1];
    for (m, c) in p.terms() {
        debug_assert_eq!(m.degree(), m.get(x), "not univariate in x{x}");
        out[m.get(x) as usize] += c;
    }
    trim_q(&mut out);
    out
}

fn from_qpoly(q: &QPoly, nvars: usize, x: usize) -> Poly {
    Poly::from_terms(
        nvars,
        q.iter()
            .enumerate()
            .map(|(i, c)| (Monomial::one().with(x, i as u32), c.clone())),
    )
}

fn ydeg(m: &Monomial, x: usize) -> u32 {
    m.degree() - m.get(x)
}

fn mul_trunc(a: &Poly, b: &Poly, x: usize, k: u32) -> Poly {
    let mut out = Poly::zero(a.nvars());
    for (ma, ca) in a.terms() {
        let da = ydeg(ma, x);
        if da > k {
            continue;
        }
        for (mb, cb) in b.terms() {
            if da + ydeg(mb, x) <= k {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
    }
    out
}

fn evaluate_ys(p: &Poly, ys: &[usize], point: &[Rational]) -> Poly {
    let mut out = p.clone();
    for (&y, v) in ys.iter().zip(point) {
        out = out.substitute(y, v);
    }
    out
}

/// Substitution `y_j -> y_j + c_j x + a_j`; the other variables are fixed.
fn shear(p: &Poly, x: usize, ys: &[usize], c: &[Rational], a: &[Rational]) -> Poly {
    let n = p.nvars();
    let subs: Vec<Poly> = (0..n)
        .map(|i| match ys.iter().position(|&y| y == i) {
            None => Poly::var(n, i),
            Some(j) => {
                let mut s = Poly::var(n, i);
                s.add_term(Monomial::var(x), c[j].clone());
                s.add_term(Monomial::one(), a[j].clone());
                s
            }
        })
        .collect();
    p.compose(&subs)
}

/// Picks the main variable and a shear making `f` monic in it up to a constant.
fn choose_main(f: &Poly, used: &[usize]) -> (usize, Vec<usize>, Vec<Rational>) {
    let d = f.total_degree();
    for &m in used {
        if !f.coeff(&Monomial::one().with(m, d)).is_zero() {
            let ys: Vec<usize> = used.iter().copied().filter(|&v| v != m).collect();
            let zeros = vec![Rational::zero(); ys.len()];
            return (m, ys, zeros);
        }
    }
    let m = used[0];
    let ys: Vec<usize> = used[1..].to_vec();
    let top = f.homogeneous_part(d);
    for radius in 1i64.. {
        let side = (2 * radius + 1) as usize;
        let count = side.pow(ys.len() as u32);
        for code in 0..count {
            let mut rem = code;
            let mut c = Vec::with_capacity(ys.len());
            for _ in &ys {
                c.push((rem % side) as i64 - radius);
                rem /= side;
            }
            if c.iter().all(|v| v.abs() < radius) {
                continue;
            }
            let mut point = vec![Rational::zero(); f.nvars()];
            point[m] = Rational::one();
            for (&y, v) in ys.iter().zip(&c) {
                point[y] = rat(*v);
            }
            if !top.eval(&point).is_zero() {
                return (m, ys, c.into_iter().map(rat).collect());
            }
        }
    }
    unreachable!("a nonzero form does not vanish on every integer point")
}

/// Searches for an evaluation point where the image stays squarefree.
fn squarefree_point(
    g: &Poly,
    x: usize,
    ys: &[usize],
    rng: &mut ChaCha8Rng,
    tries: usize,
) -> Option<Vec<Rational>> {
    for t in 0..tries {
        let a: Vec<Rational> = if t == 0 {
            vec![Rational::zero(); ys.len()]
        } else {
            let r = 2 + t as i64;
            ys.iter().map(|_| rat(rng.gen_range(-r..=r))).collect()
        };
        let img = to_qpoly(&evaluate_ys(g, ys, &a), x);
        if q_is_squarefree(&img) {
            return Some(a);
        }
    }
    None
}

/// Lagrange basis polynomial in variable `y` for node `t` among `nodes`.
fn lagrange(nvars: usize, y: usize, nodes: &[Rational], t: usize) -> Poly {
    let mut out = Poly::one(nvars);
    for (s, b) in nodes.iter().enumerate() {
        if s == t {
            continue;
        }
        let mut lin = Poly::var(nvars, y);
        lin.add_term(Monomial::one(), -b);
        out = &out * &lin.scale(&(Rational::one() / (&nodes[t] - b)));
    }
    out
}

/// gcd of `g` and `dg/dx` for `g` monic in `x` (constant leading coefficient),
/// by dense evaluation on a grid and interpolation, verified by division.
fn gcd_with_derivative(g: &Poly, x: usize, ys: &[usize], rng: &mut ChaCha8Rng) -> Poly {
    let n = g.nvars();
    let gx = g.diff(x);
    let bounds: Vec<usize> = ys.iter().map(|&y| g.degree_in(y) as usize).collect();
    for _ in 0..8 {
        let nodes: Vec<Vec<Rational>> = bounds
            .iter()
            .map(|&b| {
                let mut vs: Vec<i64> = Vec::new();
                while vs.len() <= b {
                    let v = rng.gen_range(1..100_000i64);
                    if !vs.contains(&v) {
                        vs.push(v);
                    }
                }
                vs.into_iter().map(rat).collect()
            })
            .collect();
        let grid: usize = bounds.iter().map(|b| b + 1).product();
        let mut images = Vec::with_capacity(grid);
        let mut degree = None;
        let mut consistent = true;
        for code in 0..grid {
            let mut rem = code;
            let mut idx = Vec::with_capacity(ys.len());
            for b in &bounds {
                idx.push(rem % (b + 1));
                rem /= b + 1;
            }
            let point: Vec<Rational> = idx
                .iter()
                .enumerate()
                .map(|(j, &t)| nodes[j][t].clone())
                .collect();
            let a = to_qpoly(&evaluate_ys(g, ys, &point), x);
            let b = to_qpoly(&evaluate_ys(&gx, ys, &point), x);
            let h = q_gcd(&a, &b);
            match degree {
                None => degree = Some(h.len()),
                Some(d) if d != h.len() => {
                    consistent = false;
                    break;
                }
                _ => {}
            }
            images.push((idx, h));
        }
        if !consistent {
            continue;
        }
        let len = degree.unwrap_or(1);
        if len <= 1 {
            return Poly::one(n);
        }
        let mut h = Poly::zero(n);
        h.add_term(Monomial::one().with(x, len as u32 - 1), Rational::one());
        for (idx, img) in &images {
            let mut basis = Poly::one(n);
            for (j, &t) in idx.iter().enumerate() {
                basis = &basis * &lagrange(n, ys[j], &nodes[j], t);
            }
            for (k, c) in img.iter().enumerate().take(len - 1) {
                if !c.is_zero() {
                    h += &basis.mul_monomial(&Monomial::one().with(x, k as u32), c);
                }
            }
        }
        if g.div_exact(&h).is_some() && gx.div_exact(&h).is_some() {
            return h;
        }
    }
    panic!("gcd interpolation failed on every evaluation grid")
}

/// Irreducible factors of `g`, squarefree and monic in `x`, with `g(x, a)`
/// squarefree.
fn hensel_factor(g: &Poly, x: usize, ys: &[usize], a: &[Rational]) -> Vec<Poly> {
    let n = g.nvars();
    let zeros = vec![Rational::zero(); ys.len()];
    let lc = g.coeff(&Monomial::one().with(x, g.degree_in(x)));
    let f = shear(g, x, ys, &zeros, a).scale(&(Rational::one() / &lc));
    let f0 = to_qpoly(&evaluate_ys(&f, ys, &zeros), x);
    let us = factor_q_squarefree(&f0);
    if us.len() == 1 {
        return vec![g.clone()];
    }

    let total = us
        .iter()
        .fold(vec![Rational::one()], |acc, u| q_mul(&acc, u));
    let s: Vec<QPoly> = us
        .iter()
        .map(|u| {
            let cof = q_divrem(&total, u).0;
            let (_, inv, _) = q_ext_gcd(&q_divrem(&cof, u).1, u);
            inv
        })
        .collect();
    let depth = f.terms().map(|(m, _)| ydeg(m, x)).max().unwrap_or(0);
    let mut lifted: Vec<Poly> = us.iter().map(|u| from_qpoly(u, n, x)).collect();
    for k in 1..=depth {
        let prod = lifted
            .iter()
            .fold(Poly::one(n), |acc, u| mul_trunc(&acc, u, x, k));
        let mut err: BTreeMap<Monomial, QPoly> = BTreeMap::new();
        for (m, c) in f.terms() {
            if ydeg(m, x) == k {
                add_slot(&mut err, m, x, c.clone());
            }
        }
        for (m, c) in prod.terms() {
            if ydeg(m, x) == k {
                add_slot(&mut err, m, x, -c);
            }
        }
        for (beta, e) in err {
            let mut e = e;
            trim_q(&mut e);
            if e.is_empty() {
                continue;
            }
            for (i, u) in us.iter().enumerate() {
                let delta = q_divrem(&q_mul(&e, &s[i]), u).1;
                for (j, c) in delta.iter().enumerate() {
                    lifted[i].add_term(beta.with(x, j as u32), c.clone());
                }
            }
        }
    }

    let mut rest = f;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in subsets(lifted.len(), size) {
            let cand = subset.iter().fold(Poly::one(n), |acc, &i| {
                mul_trunc(&acc, &lifted[i], x, depth)
            });
            if cand.total_degree() > rest.total_degree() {
                continue;
            }
            if let Some(q) = rest.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => size += 1,
        }
    }
    found.push(rest);
    let back: Vec<Rational> = a.iter().map(|v| -v).collect();
    found
        .iter()
        .map(|h| shear(h, x, ys, &zeros, &back))
        .collect()
}

fn add_slot(err: &mut BTreeMap<Monomial, QPoly>, m: &Monomial, x: usize, c: Rational) {
    let e = m.get(x) as usize;
    let slot = err.entry(m.with(x, 0)).or_default();
    if slot.len() <= e {
        slot.resize(e + 1, Rational::zero());
    }
    slot[e] += c;
}

fn multiplicity(f: &Poly, h: &Poly) -> (u32, Poly) {
    let mut k = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.div_exact(h) {
        cur = q;
        k += 1;
    }
    (k, cur)
}

/// Irreducible factors with multiplicities, up to constant multiples. The
/// product of `factor^mult` equals `f` up to a nonzero rational constant.
pub(crate) fn factor_poly(f: &Poly) -> Vec<(Poly, u32)> {
    let n = f.nvars();
    let mut out = Vec::new();
    let mut f = f.clone();

    // Monomial content: each variable is irreducible on its own.
    for i in 0..n {
        let k = f.terms().map(|(m, _)| m.get(i)).min().unwrap_or(0);
        if k > 0 {
            let xi = Monomial::one().with(i, k);
            f = f
                .div_exact(&Poly::monomial(n, xi, Rational::one()))
                .expect("monomial content");
            out.push((Poly::var(n, i), k));
        }
    }
    if f.is_constant() {
        return out;
    }

    let used = f.support_vars();
    if used.len() == 1 {
        let x = used[0];
        let q = to_qpoly(&f, x);
        let g = q_gcd(&q, &q_deriv(&q));
        let sqfree = q_divrem(&q, &g).0;
        let mut rest = f.clone();
        for u in factor_q_squarefree(&sqfree) {
            let h = from_qpoly(&u, n, x);
            let (k, r) = multiplicity(&rest, &h);
            rest = r;
            out.push((h, k));
        }
        return out;
    }

    let seed = f.terms().fold(0u64, |acc, (m, _)| {
        acc.wrapping_mul(31).wrapping_add(m.degree() as u64 + 1)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x, ys, c) = choose_main(&f, &used);
    let zeros = vec![Rational::zero(); ys.len()];
    let g = shear(&f, x, &ys, &c, &zeros);

    let factors: Vec<(Poly, u32)> = match squarefree_point(&g, x, &ys, &mut rng, 12) {
        Some(a) => hensel_factor(&g, x, &ys, &a)
            .into_iter()
            .map(|h| (h, 1))
            .collect(),
        None => {
            let h = gcd_with_derivative(&g, x, &ys, &mut rng);
            let sqfree = g.div_exact(&h).expect("gcd divides its argument");
            let a = squarefree_point(&sqfree, x, &ys, &mut rng, 200)
                .expect("squarefree polynomial has a squarefree image");
            let mut rest = g.clone();
            hensel_factor(&sqfree, x, &ys, &a)
                .into_iter()
                .map(|h| {
                    let (k, r) = multiplicity(&rest, &h);
                    rest = r;
                    (h, k)
                })
                .collect()
        }
    };
    let back: Vec<Rational> = c.iter().map(|v| -v).collect();
    for (h, k) in factors {
        out.push((shear(&h, x, &ys, &back, &zeros), k));
    }
    out
}
