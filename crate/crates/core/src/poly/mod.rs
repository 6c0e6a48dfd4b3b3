//! Exact sparse multivariate polynomials over the rationals.
//!
//! Monomials are dense exponent arrays of fixed width [`MAX_VARS`]; a
//! [`Poly`] records how many of the slots are live. Terms are kept in a
//! `BTreeMap` ordered by graded-lex, so the leading term is always the last
//! entry and printing walks the map in reverse.

mod nu;
pub(crate) mod text;

pub use nu::{NuObject, TSeries};
pub use text::{NuDisplay, PolyDisplay};

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{falling_factorial, Rational};
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;

/// Exponent vector. Ordered graded-lexicographically with x1 > x2 > ... .
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut m = Monomial::one();
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o += e;
        }
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o -= e;
        }
        Some(out)
    }

    pub fn with(&self, i: usize, e: u32) -> Monomial {
        let mut out = *self;
        out.0[i] = e;
        out
    }

    /// Product of factorials of the exponents.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| {
            acc * crate::arith::factorial(e as u64)
        })
    }

    /// All exponent vectors of total degree exactly `d` in the first `n` slots,
    /// in ascending graded-lex order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if i + 1 == n {
                cur.0[i] = left;
                out.push(*cur);
                cur.0[i] = 0;
                return;
            }
            for e in 0..=left {
                cur.0[i] = e;
                rec(n, i + 1, left - e, cur, out);
            }
            cur.0[i] = 0;
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(n, 0, d, &mut Monomial::one(), &mut out);
        out.sort();
        out
    }

    /// All exponent vectors of total degree at most `d`.
    pub fn all_up_to_degree(n: usize, d: u32) -> Vec<Monomial> {
        (0..=d)
            .flat_map(|k| Monomial::all_of_degree(n, k))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "m{:?}", &self.0[..last])
    }
}

/// Named variables together with a symplectic structure: a list of
/// `(q, p)` index pairs and the remaining central (Casimir) variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpace {
    names: Vec<String>,
    pairs: Vec<(usize, usize)>,
    central: Vec<usize>,
}

impl VarSpace {
    pub fn new<S: AsRef<str>>(names: &[S], pairs: &[(usize, usize)]) -> Result<Self> {
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(Error::invalid(
                "poly",
                format!(
                    "variable count must be in 1..={MAX_VARS}, got {}",
                    names.len()
                ),
            ));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || n == "nu" || n == "Z" {
                return Err(Error::invalid("poly", format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::invalid("poly", format!("duplicate variable {n:?}")));
            }
        }
        let mut used = vec![false; names.len()];
        for &(q, p) in pairs {
            if q >= names.len() || p >= names.len() || q == p || used[q] || used[p] {
                return Err(Error::invalid(
                    "poly",
                    format!("invalid symplectic pair ({q}, {p})"),
                ));
            }
            used[q] = true;
            used[p] = true;
        }
        let central = (0..names.len()).filter(|&i| !used[i]).collect();
        Ok(VarSpace {
            names,
            pairs: pairs.to_vec(),
            central,
        })
    }

    /// Variables `x1..xn` with pairs (x1,x2), (x3,x4), ...; an odd last
    /// variable is central.
    pub fn euclidean(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect();
        VarSpace::new(&names, &pairs).expect("valid euclidean space")
    }

    /// `x1..xn` with no symplectic pairs.
    pub fn plain(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        VarSpace::new(&names, &[]).expect("valid plain space")
    }

    /// The phase plane (q, p).
    pub fn phase_plane() -> Self {
        VarSpace::new(&["q", "p"], &[(0, 1)]).expect("valid phase plane")
    }

    /// Coordinates L1, L2, L3 on su(2)*.
    pub fn su2() -> Self {
        VarSpace::new(&["L1", "L2", "L3"], &[]).expect("valid su2 space")
    }

    /// Phase space R^6 with coordinates (q1, q2, q3, p1, p2, p3).
    pub fn phase_space6() -> Self {
        VarSpace::new(
            &["q1", "q2", "q3", "p1", "p2", "p3"],
            &[(0, 3), (1, 4), (2, 5)],
        )
        .expect("valid R^6")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn central(&self) -> &[usize] {
        &self.central
    }

    pub fn var(&self, name: &str) -> Option<Poly> {
        self.index_of(name).map(|i| Poly::var(self.len(), i))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly::monomial(nvars, Monomial::one(), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            i < nvars,
            "variable index {i} out of range for {nvars} variables"
        );
        Poly::monomial(nvars, Monomial::var(i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(
        nvars: usize,
        terms: I,
    ) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
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

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.get(i)).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn leading_monomial(&self) -> Result<Monomial> {
        self.terms
            .keys()
            .next_back()
            .copied()
            .ok_or_else(|| Error::invalid("poly", "leading monomial of the zero polynomial"))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn diff(&self, i: usize) -> Poly {
        self.diff_n(i, 1)
    }

    pub fn diff_n(&self, i: usize, k: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.get(i);
            if e >= k {
                let f = falling_factorial(e as i64, k);
                out.terms
                    .insert(m.with(i, e - k), c * Rational::from_integer(f));
            }
        }
        out
    }

    /// Mixed partial derivative `d^alpha`.
    pub fn diff_multi(&self, alpha: &Monomial) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some(rest) = m.div(alpha) {
                let mut f = BigInt::one();
                for i in 0..self.nvars {
                    f *= falling_factorial(m.get(i) as i64, alpha.get(i));
                }
                out.terms.insert(rest, c * Rational::from_integer(f));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `subs[i]` for variable `i`. All substitutes share a target
    /// variable count.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars, "one substitute per variable");
        let target = subs.first().map_or(0, |s| s.nvars);
        let mut powers: Vec<HashMap<u32, Poly>> = vec![HashMap::new(); self.nvars];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, sub) in subs.iter().enumerate() {
                let e = m.get(i);
                if e == 0 {
                    continue;
                }
                let pw = powers[i].entry(e).or_insert_with(|| sub.pow(e));
                term = &term * pw;
            }
            out += &term;
        }
        out
    }

    /// Re-embed into a space with a different variable count, mapping
    /// variable `i` to `map[i]`.
    pub fn remap(&self, target: usize, map: &[usize]) -> Poly {
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = Monomial::one();
            for i in 0..self.nvars {
                if m.get(i) > 0 {
                    e.0[map[i]] += m.get(i);
                }
            }
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (i, xi) in x.iter().enumerate().take(self.nvars) {
                    let e = m.get(i);
                    if e > 0 {
                        v *= xi.powi(e as i32);
                    }
                }
                v
            })
            .sum()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, xi) in x.iter().enumerate().take(self.nvars) {
                let e = m.get(i);
                if e > 0 {
                    v *= num_traits::pow(xi.clone(), e as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Substitute the constant `value` for variable `i`.
    pub fn substitute(&self, i: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.get(i);
            let v = c * num_traits::pow(value.clone(), e as usize);
            out.add_term(m.with(i, 0), v);
        }
        out
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Coefficients with respect to variable `i`: index k holds the
    /// coefficient of `x_i^k` (still a polynomial in the other variables).
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let deg = self.degree_in(i) as usize;
        let mut out = vec![Poly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            out[m.get(i) as usize].terms.insert(m.with(i, 0), c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            rem -= &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Multiply by the least common multiple of the denominators and divide by
    /// the gcd of the numerators, giving an integer primitive polynomial with
    /// positive leading coefficient. Returns the scale applied.
    pub fn primitive_integer(&self) -> (Rational, Poly) {
        use num_integer::Integer;
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut lcm = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        for c in self.terms.values() {
            let n = (c * Rational::from_integer(lcm.clone())).to_integer();
            g = g.gcd(&n);
        }
        let mut s = Rational::new(lcm, g);
        if self.leading_coeff().is_negative() {
            s = -s;
        }
        (s.clone(), self.scale(&s))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares term sequences from the leading term down: graded-lex on
/// monomials, then coefficients.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| {
            let mut a = self.terms.iter().rev();
            let mut b = other.terms.iter().rev();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(_), None) => return Ordering::Greater,
                    (Some((ma, ca)), Some((mb, cb))) => {
                        let c = ma.cmp(mb).then_with(|| ca.cmp(cb));
                        if c != Ordering::Equal {
                            return c;
                        }
                    }
                }
            }
        })
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = VarSpace::plain(self.nvars.max(1));
        write!(f, "{}", self.display(&space))
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "mismatched variable counts");
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "mismatched variable counts");
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "mismatched variable counts");
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        Poly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Bidifferential operator `sum c * d^a (x) d^b`, keyed by the derivative
/// multi-indices applied to the left and right arguments.
type Bidiff = HashMap<(Monomial, Monomial), Rational>;

fn poisson_bivector(space: &VarSpace) -> Bidiff {
    let mut op = Bidiff::new();
    for &(q, p) in space.pairs() {
        op.insert((Monomial::var(q), Monomial::var(p)), Rational::one());
        op.insert((Monomial::var(p), Monomial::var(q)), -Rational::one());
    }
    op
}

fn apply_bidiff(op: &Bidiff, f: &Poly, g: &Poly) -> Poly {
    let mut out = Poly::zero(f.nvars);
    for ((a, b), c) in op {
        let df = f.diff_multi(a);
        if df.is_zero() {
            continue;
        }
        let dg = g.diff_multi(b);
        if dg.is_zero() {
            continue;
        }
        out += &(&df * &dg).scale(c);
    }
    out
}

/// `P^r(f, g)`, the r-fold power of the Poisson bivector of `space`, with
/// `P(f, g) = sum_pairs (df/dq dg/dp - df/dp dg/dq)` and `P^0(f, g) = fg`.
pub fn poisson_power(space: &VarSpace, f: &Poly, g: &Poly, r: u32) -> Result<Poly> {
    if f.nvars != space.len() || g.nvars != space.len() {
        return Err(Error::invalid(
            "poly",
            "arguments do not live on the given variable space",
        ));
    }
    if r > 0 && space.pairs().is_empty() {
        return Err(Error::invalid(
            "poly",
            "variable space has no symplectic pair",
        ));
    }
    let base = poisson_bivector(space);
    let mut power = Bidiff::new();
    power.insert((Monomial::one(), Monomial::one()), Rational::one());
    for _ in 0..r {
        let mut next = Bidiff::new();
        for ((a, b), c) in &power {
            for ((a2, b2), c2) in &base {
                *next
                    .entry((a.mul(a2), b.mul(b2)))
                    .or_insert_with(Rational::zero) += c * c2;
            }
        }
        next.retain(|_, c| !c.is_zero());
        power = next;
    }
    Ok(apply_bidiff(&power, f, g))
}

/// The Poisson bracket `P(f, g)` of the space's symplectic pairs.
pub fn poisson_bracket(space: &VarSpace, f: &Poly, g: &Poly) -> Result<Poly> {
    poisson_power(space, f, g, 1)
}

/// `sum_{sigma in S_n} sign(sigma) prod_i d f_i / d x_{sigma(i)}`.
pub fn jacobian_det(fs: &[Poly], vars: &[usize]) -> Result<Poly> {
    let n = fs.len();
    if n != vars.len() || n < 2 {
        return Err(Error::invalid(
            "poly",
            format!(
                "need n >= 2 functions and n variables, got {} and {}",
                n,
                vars.len()
            ),
        ));
    }
    let nvars = fs[0].nvars;
    if fs.iter().any(|f| f.nvars != nvars) || vars.iter().any(|&v| v >= nvars) {
        return Err(Error::invalid(
            "poly",
            "functions must share one variable space",
        ));
    }
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(Error::invalid(
                "poly",
                format!("repeated variable index {v}"),
            ));
        }
    }
    // grads[i][j] = d f_i / d x_{vars[j]}
    let grads: Vec<Vec<Poly>> = fs
        .iter()
        .map(|f| vars.iter().map(|&v| f.diff(v)).collect())
        .collect();
    Ok(determinant(&grads, nvars))
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// the first row with memoised minors.
pub(crate) fn determinant(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    let mut memo: HashMap<(usize, u32), Poly> = HashMap::new();
    fn rec(
        m: &[Vec<Poly>],
        row: usize,
        cols: u32,
        nvars: usize,
        memo: &mut HashMap<(usize, u32), Poly>,
    ) -> Poly {
        let n = m.len();
        if row == n {
            return Poly::one(nvars);
        }
        if let Some(p) = memo.get(&(row, cols)) {
            return p.clone();
        }
        let mut acc = Poly::zero(nvars);
        let mut sign_pos = true;
        for c in 0..n {
            if cols & (1 << c) != 0 {
                continue;
            }
            let entry = &m[row][c];
            if !entry.is_zero() {
                let minor = rec(m, row + 1, cols | (1 << c), nvars, memo);
                if !minor.is_zero() {
                    let t = entry * &minor;
                    if sign_pos {
                        acc += &t;
                    } else {
                        acc -= &t;
                    }
                }
            }
            sign_pos = !sign_pos;
        }
        memo.insert((row, cols), acc.clone());
        acc
    }
    if n == 0 {
        return Poly::one(nvars);
    }
    rec(m, 0, 0, nvars, &mut memo)
}

/// Sign of a permutation given as images of `0..n`.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn canonical_bracket_of_q_p() {
        let s = VarSpace::phase_plane();
        let q = s.var("q").unwrap();
        let p = s.var("p").unwrap();
        assert_eq!(poisson_power(&s, &q, &p, 1).unwrap(), Poly::one(2));
        let f = &(&q * &q) + &p;
        assert!(poisson_power(&s, &f, &f, 1).unwrap().is_zero());
    }

    #[test]
    fn second_poisson_power_of_oscillator() {
        // f_qq g_pp - 2 f_qp g_qp + f_pp g_qq with f = g = q^2 + p^2 gives 4 + 4.
        let s = VarSpace::phase_plane();
        let q = s.var("q").unwrap();
        let p = s.var("p").unwrap();
        let h = &(&q * &q) + &(&p * &p);
        assert_eq!(
            poisson_power(&s, &h, &h, 2).unwrap(),
            Poly::constant(2, rat(8))
        );
        assert_eq!(poisson_power(&s, &h, &h, 0).unwrap(), &h * &h);
    }

    #[test]
    fn poisson_power_errors() {
        let s = VarSpace::plain(2);
        let f = Poly::var(2, 0);
        assert!(poisson_power(&s, &f, &f, 1).is_err());
        assert!(poisson_power(&VarSpace::phase_plane(), &Poly::var(3, 0), &f, 1).is_err());
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(
            jacobian_det(&[x(0), x(1), x(2)], &[0, 1, 2]).unwrap(),
            Poly::one(3)
        );
        assert!(jacobian_det(&[x(0), x(0), x(2)], &[0, 1, 2])
            .unwrap()
            .is_zero());
        let x2 = &x(0) * &x(0);
        assert_eq!(
            jacobian_det(&[x2, x(1), x(2)], &[0, 1, 2]).unwrap(),
            x(0).scale(&rat(2))
        );
        assert!(matches!(
            jacobian_det(&[x(0), x(1)], &[0, 0]),
            Err(Error::InvalidArgument { .. })
        ));
    }

    #[test]
    fn leading_monomial_order() {
        let f = &(&x(0) * &x(1)) + &(&x(2) * &x(2));
        assert_eq!(
            f.leading_monomial().unwrap(),
            Monomial::from_exponents(&[1, 1, 0])
        );
        let g = &x(0) + &x(1).pow(3);
        assert_eq!(
            g.leading_monomial().unwrap(),
            Monomial::from_exponents(&[0, 3, 0])
        );
        assert_eq!(
            Poly::constant(3, rat(5)).leading_monomial().unwrap(),
            Monomial::one()
        );
        assert!(Poly::zero(3).leading_monomial().is_err());
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&(&x(0) + &Poly::one(3))).is_none());
    }

    #[test]
    fn compose_and_remap() {
        let f = &x(0) * &x(1);
        let subs = vec![
            &Poly::var(2, 0) + &Poly::var(2, 1),
            Poly::var(2, 1),
            Poly::zero(2),
        ];
        let g = f.compose(&subs);
        let expect = &(&Poly::var(2, 0) * &Poly::var(2, 1)) + &Poly::var(2, 1).pow(2);
        assert_eq!(g, expect);
        assert_eq!(Poly::var(2, 1).remap(3, &[0, 2]), x(2));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutations(4).len(), 24);
    }

    mod props {
        use super::*;
        use crate::testutil::arb_poly;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn partials_commute(f in arb_poly(3, 4)) {
                for i in 0..3 {
                    for j in 0..3 {
                        prop_assert_eq!(f.diff(i).diff(j), f.diff(j).diff(i));
                    }
                }
            }

            #[test]
            fn jacobian_multilinear_alternating(
                f in arb_poly(3, 3), g in arb_poly(3, 3), h in arb_poly(3, 3), k in arb_poly(3, 3)
            ) {
                let v = [0, 1, 2];
                let j = |a: &Poly, b: &Poly, c: &Poly| {
                    jacobian_det(&[a.clone(), b.clone(), c.clone()], &v).unwrap()
                };
                prop_assert_eq!(j(&(&f + &k), &g, &h), &j(&f, &g, &h) + &j(&k, &g, &h));
                prop_assert_eq!(j(&g, &f, &h), -j(&f, &g, &h));
                prop_assert!(j(&f, &f, &h).is_zero());
            }

            #[test]
            fn jacobian_leibniz(
                g in arb_poly(3, 3), h in arb_poly(3, 3), a in arb_poly(3, 3), b in arb_poly(3, 3)
            ) {
                let v = [0, 1, 2];
                let j = |f1: Poly| jacobian_det(&[f1, a.clone(), b.clone()], &v).unwrap();
                let lhs = j(&g * &h);
                let rhs = &(&g * &j(h.clone())) + &(&j(g.clone()) * &h);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn ring_axioms(f in arb_poly(3, 3), g in arb_poly(3, 3), h in arb_poly(3, 3)) {
                prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
                prop_assert_eq!(&f * &g, &g * &f);
                prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            }
        }
    }
}
