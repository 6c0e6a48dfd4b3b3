//! Classical Nambu brackets, property checkers and a fixed-step evolver.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use num_traits::Zero;

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::poly::{jacobian_det, permutation_sign, permutations, Poly};

/// An n-ary bracket on polynomials.
pub trait NambuBracket: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    fn order(&self) -> usize;
    fn nvars(&self) -> usize;
    fn eval_unchecked(&self, fs: &[Poly]) -> Poly;

    fn eval(&self, fs: &[Poly]) -> Result<Poly> {
        if fs.len() != self.order() {
            return Err(Error::invalid(
                "nambu",
                format!(
                    "{} takes {} arguments, got {}",
                    self.name(),
                    self.order(),
                    fs.len()
                ),
            ));
        }
        if let Some(f) = fs.iter().find(|f| f.nvars() != self.nvars()) {
            return Err(Error::invalid(
                "nambu",
                format!(
                    "{} acts on {} variables, argument has {}",
                    self.name(),
                    self.nvars(),
                    f.nvars()
                ),
            ));
        }
        Ok(self.eval_unchecked(fs))
    }
}

/// The Jacobian of `n` functions on R^n.
#[derive(Clone, Debug)]
pub struct Canonical {
    n: usize,
}

impl Canonical {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=crate::poly::MAX_VARS).contains(&n) {
            return Err(Error::invalid(
                "nambu",
                format!("canonical bracket order {n} unsupported"),
            ));
        }
        Ok(Canonical { n })
    }
}

impl NambuBracket for Canonical {
    fn name(&self) -> String {
        format!("canonical{}", self.n)
    }
    fn order(&self) -> usize {
        self.n
    }
    fn nvars(&self) -> usize {
        self.n
    }
    fn eval_unchecked(&self, fs: &[Poly]) -> Poly {
        let vars: Vec<usize> = (0..self.n).collect();
        jacobian_det(fs, &vars).expect("arity checked")
    }
}

/// Order-n bracket on R^(n+1) summed over S_(n+1), with the last permuted
/// index supplying a linear coefficient `x_sigma(n+1)`.
#[derive(Clone, Debug)]
pub struct Linear {
    n: usize,
    perms: Vec<(Vec<usize>, i32)>,
}

impl Linear {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 || n + 1 > crate::poly::MAX_VARS {
            return Err(Error::invalid(
                "nambu",
                format!("linear bracket order {n} unsupported"),
            ));
        }
        let perms = permutations(n + 1)
            .into_iter()
            .map(|p| {
                let s = permutation_sign(&p);
                (p, s)
            })
            .collect();
        Ok(Linear { n, perms })
    }
}

impl NambuBracket for Linear {
    fn name(&self) -> String {
        format!("linear{}", self.n)
    }
    fn order(&self) -> usize {
        self.n
    }
    fn nvars(&self) -> usize {
        self.n + 1
    }
    fn eval_unchecked(&self, fs: &[Poly]) -> Poly {
        let nv = self.n + 1;
        let grads: Vec<Vec<Poly>> = fs
            .iter()
            .map(|f| (0..nv).map(|v| f.diff(v)).collect())
            .collect();
        let mut out = Poly::zero(nv);
        for (perm, sign) in &self.perms {
            let mut term = Poly::var(nv, perm[self.n]);
            for (k, g) in grads.iter().enumerate() {
                term = &term * &g[perm[k]];
                if term.is_zero() {
                    break;
                }
            }
            if *sign > 0 {
                out += &term;
            } else {
                out -= &term;
            }
        }
        out
    }
}

/// `sum_I eta_I det(d f_k / d x_{I_j})` over ascending index tuples `I`.
#[derive(Clone, Debug)]
pub struct Custom {
    order: usize,
    nvars: usize,
    eta: BTreeMap<Vec<usize>, Poly>,
}

impl Custom {
    pub fn new(order: usize, nvars: usize, eta: BTreeMap<Vec<usize>, Poly>) -> Result<Self> {
        if order < 2 || order > nvars {
            return Err(Error::invalid(
                "nambu",
                format!("order {order} on {nvars} variables"),
            ));
        }
        for (idx, c) in &eta {
            let ascending = idx.windows(2).all(|w| w[0] < w[1]);
            if idx.len() != order || !ascending || idx.iter().any(|&i| i >= nvars) {
                return Err(Error::invalid(
                    "nambu",
                    format!(
                        "tensor index {idx:?} must be an ascending {order}-tuple below {nvars}"
                    ),
                ));
            }
            if c.nvars() != nvars {
                return Err(Error::invalid(
                    "nambu",
                    "tensor coefficient in the wrong variable count",
                ));
            }
        }
        Ok(Custom { order, nvars, eta })
    }

    /// The Jacobian tensor on R^n, as a table with a single entry.
    pub fn canonical(n: usize) -> Self {
        let mut eta = BTreeMap::new();
        eta.insert((0..n).collect(), Poly::one(n));
        Custom {
            order: n,
            nvars: n,
            eta,
        }
    }
}

impl NambuBracket for Custom {
    fn name(&self) -> String {
        format!("custom{}", self.order)
    }
    fn order(&self) -> usize {
        self.order
    }
    fn nvars(&self) -> usize {
        self.nvars
    }
    fn eval_unchecked(&self, fs: &[Poly]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (idx, c) in &self.eta {
            let det = jacobian_det(fs, idx).expect("validated tensor index");
            out += &(c * &det);
        }
        out
    }
}

type BracketBuilder = fn(usize) -> Result<Box<dyn NambuBracket>>;

/// Named bracket constructors, selected at runtime from strings such as
/// `canonical3` or `linear3`.
pub struct BracketRegistry {
    entries: Vec<(&'static str, BracketBuilder)>,
}

impl BracketRegistry {
    pub fn with_defaults() -> Self {
        let mut r = BracketRegistry {
            entries: Vec::new(),
        };
        r.register("canonical", |n| Ok(Box::new(Canonical::new(n)?)));
        r.register("linear", |n| Ok(Box::new(Linear::new(n)?)));
        r
    }

    pub fn register(&mut self, family: &'static str, build: BracketBuilder) {
        self.entries.retain(|(f, _)| *f != family);
        self.entries.push((family, build));
    }

    pub fn families(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(f, _)| *f).collect()
    }

    /// Parses `<family><order>`, e.g. `canonical3`.
    pub fn build(&self, spec: &str) -> Result<Box<dyn NambuBracket>> {
        for (family, build) in &self.entries {
            if let Some(rest) = spec.strip_prefix(family) {
                let n: usize = rest.parse().map_err(|_| {
                    Error::invalid(
                        "nambu",
                        format!("bracket {spec:?} lacks an order, e.g. {family}3"),
                    )
                })?;
                return build(n);
            }
        }
        Err(Error::invalid(
            "nambu",
            format!(
                "unknown bracket {spec:?}; known families: {}",
                self.families().join(", ")
            ),
        ))
    }
}

impl Default for BracketRegistry {
    fn default() -> Self {
        BracketRegistry::with_defaults()
    }
}

/// Left side minus right side of the Fundamental Identity on `2n - 1`
/// arguments:
///
/// `{f_1..f_{n-1}, {f_n..f_{2n-1}}} - sum_k {f_n, .., {f_1..f_{n-1}, f_k}, .., f_{2n-1}}`.
pub fn check_fi(b: &dyn NambuBracket, fs: &[Poly]) -> Result<Poly> {
    let n = b.order();
    if fs.len() != 2 * n - 1 {
        return Err(Error::invalid(
            "nambu",
            format!(
                "the identity for order {n} takes {} arguments, got {}",
                2 * n - 1,
                fs.len()
            ),
        ));
    }
    let head = &fs[..n - 1];
    let tail = &fs[n - 1..];
    let inner = b.eval(tail)?;
    let mut args: Vec<Poly> = head.to_vec();
    args.push(inner);
    let mut residual = b.eval(&args)?;
    for k in 0..n {
        let mut a = head.to_vec();
        a.push(tail[k].clone());
        let hk = b.eval(&a)?;
        let mut outer = tail.to_vec();
        outer[k] = hk;
        residual -= &b.eval(&outer)?;
    }
    Ok(residual)
}

/// Residual of the Leibniz rule in the first slot:
/// `{f0 f1, f2..} - f0 {f1, f2..} - {f0, f2..} f1`.
pub fn check_leibniz(b: &dyn NambuBracket, f0: &Poly, rest: &[Poly]) -> Result<Poly> {
    let mut a = vec![f0 * &rest[0]];
    a.extend_from_slice(&rest[1..]);
    let lhs = b.eval(&a)?;
    let t1 = f0 * &b.eval(rest)?;
    let mut c = vec![f0.clone()];
    c.extend_from_slice(&rest[1..]);
    let t2 = &b.eval(&c)? * &rest[0];
    Ok(&(&lhs - &t1) - &t2)
}

/// Maximum over transpositions of `{.., f_i, .., f_j, ..} + {.., f_j, .., f_i, ..}`
/// being nonzero, i.e. `None` when the bracket is skew on these arguments.
pub fn check_skew(b: &dyn NambuBracket, fs: &[Poly]) -> Result<Option<(usize, usize)>> {
    let base = b.eval(fs)?;
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            let mut sw = fs.to_vec();
            sw.swap(i, j);
            if !(&b.eval(&sw)? + &base).is_zero() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Nambu dynamics `dx_i/dt = {H_1, .., H_{n-1}, x_i}`.
#[derive(Debug)]
pub struct Dynamics {
    bracket: Box<dyn NambuBracket>,
    hamiltonians: Vec<Poly>,
    velocity: Vec<Poly>,
}

impl Dynamics {
    pub fn new(bracket: Box<dyn NambuBracket>, hamiltonians: Vec<Poly>) -> Result<Self> {
        let n = bracket.order();
        if hamiltonians.len() + 1 != n {
            return Err(Error::invalid(
                "nambu",
                format!(
                    "an order-{n} bracket needs {} Hamiltonians, got {}",
                    n - 1,
                    hamiltonians.len()
                ),
            ));
        }
        let nv = bracket.nvars();
        let velocity = (0..nv)
            .map(|i| {
                let mut args = hamiltonians.clone();
                args.push(Poly::var(nv, i));
                bracket.eval(&args)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Dynamics {
            bracket,
            hamiltonians,
            velocity,
        })
    }

    pub fn velocity(&self) -> &[Poly] {
        &self.velocity
    }

    pub fn hamiltonians(&self) -> &[Poly] {
        &self.hamiltonians
    }

    pub fn bracket(&self) -> &dyn NambuBracket {
        self.bracket.as_ref()
    }

    /// Exact divergence of the velocity field.
    pub fn divergence(&self) -> Poly {
        let nv = self.bracket.nvars();
        let mut d = Poly::zero(nv);
        for (i, v) in self.velocity.iter().enumerate() {
            d += &v.diff(i);
        }
        d
    }

    fn field(&self, x: &[f64]) -> Vec<f64> {
        self.velocity.iter().map(|v| v.eval_f64(x)).collect()
    }

    /// Classical RK4 with a fixed step from `x0` up to `horizon`.
    pub fn evolve(&self, x0: &[f64], horizon: f64, step: f64) -> Result<Evolution> {
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::invalid(
                "nambu",
                format!("step must be positive, got {step}"),
            ));
        }
        if x0.len() != self.bracket.nvars() {
            return Err(Error::invalid(
                "nambu",
                "initial state has the wrong dimension",
            ));
        }
        let steps = (horizon / step).round() as usize;
        let mut x = x0.to_vec();
        let h0: Vec<f64> = self.hamiltonians.iter().map(|h| h.eval_f64(&x)).collect();
        let mut drift = vec![0.0f64; h0.len()];
        let mut rows = vec![self.row(0.0, &x)];
        let axpy = |x: &[f64], k: &[f64], s: f64| -> Vec<f64> {
            x.iter().zip(k).map(|(a, b)| a + s * b).collect()
        };
        for n in 1..=steps {
            let k1 = self.field(&x);
            let k2 = self.field(&axpy(&x, &k1, step / 2.0));
            let k3 = self.field(&axpy(&x, &k2, step / 2.0));
            let k4 = self.field(&axpy(&x, &k3, step));
            for i in 0..x.len() {
                x[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::IntegrationFailure {
                    step: n,
                    message: "state became non-finite".into(),
                });
            }
            for (k, h) in self.hamiltonians.iter().enumerate() {
                let v = h.eval_f64(&x);
                let scale = h0[k].abs().max(f64::MIN_POSITIVE);
                drift[k] = drift[k].max((v - h0[k]).abs() / scale);
            }
            rows.push(self.row(n as f64 * step, &x));
        }
        Ok(Evolution {
            rows,
            report: ConservationReport {
                steps,
                step,
                horizon,
                initial: h0,
                max_relative_drift: drift,
                divergence_free: self.divergence().is_zero(),
            },
        })
    }

    fn row(&self, t: f64, x: &[f64]) -> Vec<f64> {
        let mut r = vec![t];
        r.extend_from_slice(x);
        r.extend(self.hamiltonians.iter().map(|h| h.eval_f64(x)));
        r
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConservationReport {
    pub steps: usize,
    pub step: f64,
    pub horizon: f64,
    pub initial: Vec<f64>,
    pub max_relative_drift: Vec<f64>,
    pub divergence_free: bool,
}

#[derive(Clone, Debug)]
pub struct Evolution {
    /// Each row is `t, x_1.., H_1..`.
    pub rows: Vec<Vec<f64>>,
    pub report: ConservationReport,
}

impl Evolution {
    pub fn to_csv(&self, names: &[String]) -> String {
        let k = self.report.initial.len();
        let mut out = String::from("t");
        for n in names {
            let _ = write!(out, ",{n}");
        }
        for i in 1..=k {
            let _ = write!(out, ",H{i}");
        }
        out.push('\n');
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|v| format!("{v:.12e}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Euler top on R^3: kinetic energy with moments `inertia` and `|L|^2`.
pub fn euler_top(inertia: &[Rational; 3]) -> Result<Dynamics> {
    let mut kinetic = Poly::zero(3);
    for (i, moment) in inertia.iter().enumerate() {
        if moment.is_zero() {
            return Err(Error::invalid(
                "nambu",
                "moments of inertia must be nonzero",
            ));
        }
        let inv = (moment * rat(2)).recip();
        kinetic += &(&Poly::var(3, i) * &Poly::var(3, i)).scale(&inv);
    }
    let mut sq = Poly::zero(3);
    for i in 0..3 {
        sq += &(&Poly::var(3, i) * &Poly::var(3, i));
    }
    Dynamics::new(Box::new(Canonical::new(3)?), vec![kinetic, sq])
}

/// Nahm's equations with `h = x1^2 - x2^2`, `g = x1^2 - x3^2`.
pub fn nahm() -> Result<Dynamics> {
    let sq = |i: usize| &Poly::var(3, i) * &Poly::var(3, i);
    Dynamics::new(
        Box::new(Canonical::new(3)?),
        vec![&sq(0) - &sq(1), &sq(0) - &sq(2)],
    )
}
