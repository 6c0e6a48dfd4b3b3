//! Coefficients of the su(2)* sun product.
//!
//! `gamma_n = E_2n / (2n)!` are the secant coefficients and
//! `tau_n = (-1)^n 2^{2n+2} (2^{2n+2} - 1) B_{2n+2} / (2n+2)!` the tangent
//! coefficients (`tau_0 = 1`, `tau_1 = 1/3`). The factor `(-1)^n` makes every
//! `tau_n` positive with `B_1 = -1/2`; it is the sign for which the closed
//! form matches the recursion at `(n, r) = (2, 1)` and `(4, 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, falling_factorial, Rational, SpecialNumberCache};
use crate::error::{Error, Result};
use crate::poly::{Monomial, NuObject, Poly};

#[derive(Clone, Debug, PartialEq)]
pub struct SunCoefficients {
    n_max: usize,
    r_max: usize,
    gamma: Vec<Rational>,
    tau: Vec<Rational>,
    /// `A_k = sum_{i+j=k} gamma_i gamma_j`.
    big_a: Vec<Rational>,
    /// `z[r][p]` for `1 <= p <= r`; index 0 unused.
    z: Vec<Vec<Rational>>,
    recursion: Vec<Vec<Rational>>,
    closed: Vec<Vec<Option<Rational>>>,
}

impl SunCoefficients {
    pub fn new(n_max: usize, r_max: usize) -> Self {
        let numbers = SpecialNumberCache::new(2 * r_max + 2);
        let gamma: Vec<Rational> = (0..=r_max)
            .map(|n| {
                numbers.euler(2 * n).expect("even index")
                    / Rational::from_integer(factorial(2 * n as u64))
            })
            .collect();
        let tau: Vec<Rational> = (0..=r_max)
            .map(|n| {
                let m = 2 * n as u32 + 2;
                let pow = BigInt::one() << m;
                let mut t = Rational::from_integer(&pow * (&pow - 1u32))
                    * numbers.bernoulli(m as usize).expect("cached")
                    / Rational::from_integer(factorial(m as u64));
                if n % 2 == 1 {
                    t = -t;
                }
                t
            })
            .collect();
        let big_a: Vec<Rational> = (0..=r_max)
            .map(|k| (0..=k).map(|i| &gamma[i] * &gamma[k - i]).sum())
            .collect();

        let mut z = vec![Vec::new(); r_max + 1];
        for (r, row) in z.iter_mut().enumerate().skip(1) {
            *row = vec![Rational::zero(); r + 1];
            for p in 1..=r {
                let mut acc = Rational::zero();
                for k in p..=r {
                    let mut inner = Rational::zero();
                    for part in partitions(k, p) {
                        let mut term = Rational::one();
                        for &n in &part {
                            term *= &tau[n];
                        }
                        for mult in multiplicities(&part) {
                            term /= Rational::from_integer(factorial(mult as u64));
                        }
                        inner += term;
                    }
                    acc += &big_a[r - k] * inner;
                }
                row[p] = acc;
            }
        }

        let mut recursion = vec![vec![Rational::one(); r_max + 1]; n_max + 1];
        for n in 1..=n_max {
            for r in 1..=r_max {
                let n_i = n as i64;
                let r_i = r as i64;
                let v = Rational::from_integer(BigInt::from(n_i - 2 * r_i)) * &recursion[n - 1][r]
                    + Rational::from_integer(BigInt::from(n_i - 2 * r_i + 2))
                        * &recursion[n - 1][r - 1];
                recursion[n][r] = v / Rational::from_integer(BigInt::from(n_i));
            }
        }

        let mut closed = vec![vec![None; r_max + 1]; n_max + 1];
        for (n, row) in closed.iter_mut().enumerate() {
            for (r, slot) in row.iter_mut().enumerate() {
                if n >= 2 * r {
                    *slot = Some(euler_sum(&gamma, &tau, n, r));
                }
            }
        }

        SunCoefficients {
            n_max,
            r_max,
            gamma,
            tau,
            big_a,
            z,
            recursion,
            closed,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn r_max(&self) -> usize {
        self.r_max
    }

    pub fn gamma(&self, n: usize) -> &Rational {
        &self.gamma[n]
    }

    pub fn tau(&self, n: usize) -> &Rational {
        &self.tau[n]
    }

    pub fn big_a(&self, k: usize) -> &Rational {
        &self.big_a[k]
    }

    pub fn z(&self, p: usize, r: usize) -> &Rational {
        &self.z[r][p]
    }

    /// `a(n, r)` from the recursion.
    pub fn a(&self, n: usize, r: usize) -> &Rational {
        &self.recursion[n][r]
    }

    /// `a(n, r)` from the Euler-number sum; defined for `n >= 2r`.
    pub fn a_closed(&self, n: usize, r: usize) -> Option<&Rational> {
        self.closed[n][r].as_ref()
    }

    /// `A_r + sum_p z_{p,r} (n - 2r)(n - 2r - 1)..(n - 2r - p + 1)`, the value of
    /// `eta_r / Delta^r` on homogeneous polynomials of degree `n`.
    pub fn a_from_eta(&self, n: usize, r: usize) -> Rational {
        let mut v = self.big_a[r].clone();
        for p in 1..=r {
            let ff = falling_factorial(n as i64 - 2 * r as i64, p as u32);
            v += &self.z[r][p] * Rational::from_integer(ff);
        }
        v
    }

    /// Cells `(n, r)` with `n >= 2r` where the recursion and the closed form disagree.
    pub fn disagreements(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for n in 0..=self.n_max {
            for r in 0..=self.r_max {
                if let Some(c) = &self.closed[n][r] {
                    if *c != self.recursion[n][r] {
                        out.push((n, r));
                    }
                }
            }
        }
        out
    }

    /// `eta_r(f)` for `1 <= r <= r_max`.
    pub fn eta(&self, r: usize, f: &Poly) -> Result<Poly> {
        if r == 0 || r > self.r_max {
            return Err(Error::invalid(
                "sun",
                format!(
                    "eta_{r} needs 1 <= r <= {} for this coefficient table",
                    self.r_max
                ),
            ));
        }
        let lap = laplacian_pow(f, r as u32);
        let mut out = lap.scale(&self.big_a[r]);
        for p in 1..=r {
            out += &euler_falling(&lap, p as u32).scale(&self.z[r][p]);
        }
        Ok(out)
    }
}

/// Coefficient of `x^r` in `gamma(x)^2 tau(x)^{n - 2r}`.
fn euler_sum(gamma: &[Rational], tau: &[Rational], n: usize, r: usize) -> Rational {
    let trunc_mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        (0..=r)
            .map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum())
            .collect()
    };
    let g: Vec<Rational> = gamma[..=r].to_vec();
    let t: Vec<Rational> = tau[..=r].to_vec();
    let mut acc = trunc_mul(&g, &g);
    for _ in 0..n - 2 * r {
        acc = trunc_mul(&acc, &t);
    }
    acc[r].clone()
}

/// Partitions of `k` into exactly `p` positive parts, non-increasing.
fn partitions(k: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (1..=max.min(left)).rev() {
            if v * parts < left {
                break;
            }
            cur.push(v);
            rec(left - v, parts - 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, p, k, &mut Vec::new(), &mut out);
    out
}

/// How often each distinct value occurs in a sorted partition.
fn multiplicities(part: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < part.len() {
        let j = part[i..].iter().take_while(|&&v| v == part[i]).count();
        out.push(j);
        i += j;
    }
    out
}

/// `Delta^r f` with `Delta = sum_k d^2/dx_k^2`.
pub fn laplacian_pow(f: &Poly, r: u32) -> Poly {
    let mut out = f.clone();
    for _ in 0..r {
        let mut next = Poly::zero(f.nvars());
        for k in 0..f.nvars() {
            next += &out.diff_n(k, 2);
        }
        out = next;
    }
    out
}

/// `D (D - 1) .. (D - p + 1) f` with `D` the Euler operator.
pub fn euler_falling(f: &Poly, p: u32) -> Poly {
    let terms = f.terms().map(|(m, c)| {
        let ff = falling_factorial(m.degree() as i64, p);
        (*m, c * Rational::from_integer(ff))
    });
    Poly::from_terms(f.nvars(), terms.collect::<Vec<(Monomial, Rational)>>())
}

/// `F . G + sum_{r >= 1} nu^{2r} eta_r(F G)`.
pub fn sun_closed_form(f: &Poly, g: &Poly, coeffs: &SunCoefficients) -> Result<NuObject> {
    let h = f * g;
    let mut out = NuObject::from_poly(h.clone());
    for r in 1..=(h.total_degree() / 2) as usize {
        out.add_at(2 * r as i32, &coeffs.eta(r, &h)?);
    }
    Ok(out)
}

/// `sum_r nu^{2r} a(2n, r) Delta^r (F G)` for `F, G` homogeneous of degree `n`.
pub fn sun_homogeneous(f: &Poly, g: &Poly, coeffs: &SunCoefficients) -> Result<NuObject> {
    let n = f.total_degree();
    let homogeneous = |p: &Poly| p.terms().all(|(m, _)| m.degree() == n);
    if !homogeneous(f) || !homogeneous(g) {
        return Err(Error::invalid(
            "sun",
            "both factors must be homogeneous of the same degree",
        ));
    }
    let top = 2 * n as usize;
    if top > coeffs.n_max || n as usize > coeffs.r_max {
        return Err(Error::invalid(
            "sun",
            format!("coefficient table too small for degree {n}"),
        ));
    }
    let h = f * g;
    let mut out = NuObject::zero(h.nvars());
    for r in 0..=n as usize {
        out.add_at(
            2 * r as i32,
            &laplacian_pow(&h, r as u32).scale(coeffs.a(top, r)),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn sequences() {
        let c = SunCoefficients::new(4, 3);
        assert_eq!(*c.gamma(0), rat(1));
        assert_eq!(*c.gamma(1), ratio(1, 2));
        assert_eq!(*c.gamma(2), ratio(5, 24));
        assert_eq!(*c.tau(0), rat(1));
        assert_eq!(*c.tau(1), ratio(1, 3));
        assert_eq!(*c.tau(2), ratio(2, 15));
        assert_eq!(*c.big_a(1), rat(1));
        assert_eq!(*c.z(1, 1), ratio(1, 3));
    }

    #[test]
    fn recursion_values() {
        let c = SunCoefficients::new(10, 5);
        assert_eq!(*c.a(2, 1), rat(1));
        assert_eq!(*c.a(3, 1), ratio(4, 3));
        assert_eq!(*c.a(4, 1), ratio(5, 3));
        for n in 0..=10 {
            assert_eq!(*c.a(n, 0), rat(1));
        }
        for r in 0..=5 {
            assert_eq!(*c.a(0, r), rat(1));
        }
    }

    #[test]
    fn closed_form_tables_agree() {
        let c = SunCoefficients::new(10, 5);
        assert!(c.disagreements().is_empty());
        for r in 1..=5 {
            for n in 2 * r..=10 {
                assert_eq!(c.a_from_eta(n, r), *c.a(n, r), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn partitions_of_six() {
        assert_eq!(
            partitions(6, 3),
            vec![vec![4, 1, 1], vec![3, 2, 1], vec![2, 2, 2]]
        );
        assert_eq!(multiplicities(&[4, 1, 1]), vec![1, 2]);
        assert!(partitions(2, 3).is_empty());
    }

    #[test]
    fn euler_operator_identity() {
        // D(D-1) on a degree-3 monomial multiplies by 6.
        let f = Poly::monomial(3, Monomial::from_exponents(&[1, 2, 0]), rat(1));
        assert_eq!(euler_falling(&f, 2), f.scale(&rat(6)));
        assert_eq!(laplacian_pow(&f, 1), Poly::var(3, 0).scale(&rat(2)));
    }
}
