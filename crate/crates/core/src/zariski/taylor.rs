//! The Taylor algebra `Z_0[y^1..y^n]`, the map `J` and the Nambu brackets on
//! the subalgebra generated by `J`-images.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{ZElem, ZNu, Zariski};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::{permutation_sign, permutations, Monomial};

/// `sum_I y^I A_I` with coefficients in `Z_nu`.
///
/// `in_a_nu` records that the element was built from `J`-images by sums,
/// products, scalings and `Delta_a`; the deformed product only accepts such
/// operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorElem {
    nvars: usize,
    terms: BTreeMap<Monomial, ZNu>,
    in_a_nu: bool,
}

impl TaylorElem {
    pub fn zero(nvars: usize) -> Self {
        TaylorElem {
            nvars,
            terms: BTreeMap::new(),
            in_a_nu: true,
        }
    }

    /// An arbitrary element of the Taylor algebra, not marked as generated by `J`.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, ZNu)>) -> Self {
        let mut out = TaylorElem {
            nvars,
            terms: BTreeMap::new(),
            in_a_nu: false,
        };
        for (m, z) in terms {
            out.add_at(m, &z);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn in_a_nu(&self) -> bool {
        self.in_a_nu
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ZNu)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, y: &Monomial) -> ZNu {
        self.terms.get(y).cloned().unwrap_or_default()
    }

    pub fn add_at(&mut self, y: Monomial, z: &ZNu) {
        if z.is_zero() {
            return;
        }
        let slot = self.terms.entry(y).or_default();
        *slot += z;
        if slot.is_zero() {
            self.terms.remove(&y);
        }
    }

    pub fn add(&self, other: &TaylorElem) -> TaylorElem {
        let mut out = self.clone();
        for (y, z) in &other.terms {
            out.add_at(*y, z);
        }
        out.in_a_nu = self.in_a_nu && other.in_a_nu;
        out
    }

    pub fn sub(&self, other: &TaylorElem) -> TaylorElem {
        self.add(&other.scale(&-Rational::from_integer(BigInt::from(1))))
    }

    pub fn scale(&self, c: &Rational) -> TaylorElem {
        let mut out = TaylorElem {
            nvars: self.nvars,
            terms: BTreeMap::new(),
            in_a_nu: self.in_a_nu,
        };
        for (y, z) in &self.terms {
            out.add_at(*y, &z.scale(c));
        }
        out
    }

    /// The part at `nu^0`.
    pub fn classical(&self) -> TaylorElem {
        let mut out = TaylorElem {
            nvars: self.nvars,
            terms: BTreeMap::new(),
            in_a_nu: self.in_a_nu,
        };
        for (y, z) in &self.terms {
            out.add_at(*y, &ZNu::from_elem(z.classical()));
        }
        out
    }

    /// `Delta_a`: the formal derivative in `y^a`.
    pub fn delta(&self, a: usize) -> TaylorElem {
        let mut out = TaylorElem {
            nvars: self.nvars,
            terms: BTreeMap::new(),
            in_a_nu: self.in_a_nu,
        };
        for (y, z) in &self.terms {
            let e = y.get(a);
            if e == 0 {
                continue;
            }
            out.add_at(
                y.with(a, e - 1),
                &z.scale(&Rational::from_integer(BigInt::from(e))),
            );
        }
        out
    }
}

impl Zariski {
    /// `J(Z_u) = sum_alpha y^alpha / alpha! Z_{d^alpha u}`, extended additively.
    pub fn jmap(&self, z: &ZElem) -> Result<TaylorElem> {
        let n = self.nvars();
        let mut out = TaylorElem::zero(n);
        for (m, c) in z.terms() {
            let u = m.expand(n);
            for alpha in Monomial::all_up_to_degree(n, u.total_degree()) {
                let d = u.diff_multi(&alpha);
                if d.is_zero() {
                    continue;
                }
                let w = Rational::new(BigInt::from(1), alpha.factorial());
                let zd = self.zeta().of_poly(&d.scale(&(c * &w)))?;
                out.add_at(alpha, &ZNu::from_elem(zd));
            }
        }
        Ok(out)
    }

    fn check_generated(&self, a: &TaylorElem) -> Result<()> {
        if !a.in_a_nu {
            return Err(Error::invalid(
                "zariski",
                "operand is not generated by J-images; the deformed product is defined on that subalgebra only",
            ));
        }
        if a.nvars != self.nvars() {
            return Err(Error::invalid(
                "zariski",
                "Taylor element in the wrong number of variables",
            ));
        }
        Ok(())
    }

    /// `A .nu B = sum_{I,J} y^{I+J} A_I .nu B_J`.
    pub fn a_mul_nu(&self, a: &TaylorElem, b: &TaylorElem) -> Result<TaylorElem> {
        self.check_generated(a)?;
        self.check_generated(b)?;
        let mut out = TaylorElem::zero(self.nvars());
        for (i, ai) in a.terms() {
            for (j, bj) in b.terms() {
                out.add_at(i.mul(j), &self.z_mul_nu(ai, bj)?);
            }
        }
        Ok(out)
    }

    /// The undeformed product on the classical parts.
    pub fn a_mul(&self, a: &TaylorElem, b: &TaylorElem) -> Result<TaylorElem> {
        self.check_generated(a)?;
        self.check_generated(b)?;
        let mut out = TaylorElem::zero(self.nvars());
        for (i, ai) in a.terms() {
            for (j, bj) in b.terms() {
                out.add_at(
                    i.mul(j),
                    &ZNu::from_elem(ai.classical().mul(&bj.classical())),
                );
            }
        }
        Ok(out)
    }

    fn nambu_with(
        &self,
        args: &[TaylorElem],
        mul: impl Fn(&TaylorElem, &TaylorElem) -> Result<TaylorElem>,
    ) -> Result<TaylorElem> {
        let n = self.nvars();
        if args.len() != n {
            return Err(Error::invalid(
                "zariski",
                format!(
                    "the bracket on {n} variables takes {n} arguments, got {}",
                    args.len()
                ),
            ));
        }
        for a in args {
            self.check_generated(a)?;
        }
        let derived: Vec<Vec<TaylorElem>> = args
            .iter()
            .map(|a| (0..n).map(|k| a.delta(k)).collect())
            .collect();
        let mut out = TaylorElem::zero(n);
        for perm in permutations(n) {
            let mut acc = derived[0][perm[0]].clone();
            for k in 1..n {
                if acc.is_zero() {
                    break;
                }
                acc = mul(&acc, &derived[k][perm[k]])?;
            }
            if acc.is_zero() {
                continue;
            }
            if permutation_sign(&perm) > 0 {
                out = out.add(&acc);
            } else {
                out = out.sub(&acc);
            }
        }
        Ok(out)
    }

    /// `sum_sigma eps(sigma) Delta_sigma1 A_1 .nu .. .nu Delta_sigman A_n`.
    pub fn quantum_nambu(&self, args: &[TaylorElem]) -> Result<TaylorElem> {
        self.nambu_with(args, |a, b| self.a_mul_nu(a, b))
    }

    /// The same bracket with the undeformed product.
    pub fn classical_nambu(&self, args: &[TaylorElem]) -> Result<TaylorElem> {
        self.nambu_with(args, |a, b| self.a_mul(a, b))
    }

    /// Fundamental Identity residual for the deformed bracket on `2n - 1`
    /// arguments, with the same layout as [`crate::nambu::check_fi`].
    pub fn quantum_fi(&self, fs: &[TaylorElem]) -> Result<TaylorElem> {
        let n = self.nvars();
        if fs.len() != 2 * n - 1 {
            return Err(Error::invalid(
                "zariski",
                format!(
                    "the identity takes {} arguments, got {}",
                    2 * n - 1,
                    fs.len()
                ),
            ));
        }
        let head = &fs[..n - 1];
        let tail = &fs[n - 1..];
        let mut args = head.to_vec();
        args.push(self.quantum_nambu(tail)?);
        let mut residual = self.quantum_nambu(&args)?;
        for k in 0..n {
            let mut a = head.to_vec();
            a.push(tail[k].clone());
            let mut outer = tail.to_vec();
            outer[k] = self.quantum_nambu(&a)?;
            residual = residual.sub(&self.quantum_nambu(&outer)?);
        }
        Ok(residual)
    }
}
