//! Sun products `F (.) G = T(alpha(F G))`.
//!
//! A sun rule fixes a linear map `rho` from monomials to `nu`-series; the
//! product is `rho` applied to the ordinary product of the classical parts,
//! so it is Abelian, associative and blind to positive powers of `nu` in its
//! operands. Rules are registered by name:
//!
//! - `coordinate`: the monomial `x^k` goes to the symmetrized star product of
//!   its coordinates, for any star product;
//! - `moyal-standard`: `q^a p^b` goes to `q^a *_M p^b` on a phase space;
//! - `usual`: `rho` is the identity.

mod coeffs;
mod equiv;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

pub use coeffs::{euler_falling, laplacian_pow, sun_closed_form, sun_homogeneous, SunCoefficients};
pub use equiv::{apply_equivalence, weak_trivializer, DiffOp, DiffOpSeries, EquivMode};

use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};
use crate::poly::{jacobian_det, Monomial, NuObject, Poly, TSeries, VarSpace};
use crate::star::{symmetrized_product, ExpKernel, StarProduct};

pub trait SunRule: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn space(&self) -> &VarSpace;

    /// `T(alpha(x^m))`.
    fn image(&self, m: &Monomial) -> Result<NuObject>;

    /// `T(alpha(f))`, extended linearly.
    fn rho(&self, f: &Poly) -> Result<NuObject> {
        let n = self.space().len();
        if f.nvars() != n {
            return Err(Error::invalid(
                "sun",
                format!(
                    "{} rule acts on {n} variables, operand has {}",
                    self.name(),
                    f.nvars()
                ),
            ));
        }
        let mut out = NuObject::zero(n);
        for (m, c) in f.terms() {
            out += &self.image(m)?.scale(c);
        }
        Ok(out)
    }

    fn mul(&self, f: &Poly, g: &Poly) -> Result<NuObject> {
        if f.nvars() != g.nvars() {
            return Err(Error::invalid(
                "sun",
                "operands live in different variable counts",
            ));
        }
        self.rho(&(f * g))
    }

    /// The product on series; only the `nu^0` parts contribute.
    fn mul_nu(&self, f: &NuObject, g: &NuObject) -> Result<NuObject> {
        self.mul(&f.classical(), &g.classical())
    }
}

type ImageCache = Mutex<HashMap<Monomial, NuObject>>;

fn cached(
    cache: &ImageCache,
    m: &Monomial,
    compute: impl FnOnce() -> Result<NuObject>,
) -> Result<NuObject> {
    if let Some(hit) = cache.lock().expect("sun cache poisoned").get(m) {
        return Ok(hit.clone());
    }
    let v = compute()?;
    cache
        .lock()
        .expect("sun cache poisoned")
        .insert(*m, v.clone());
    Ok(v)
}

/// Default cap on the number of coordinate factors symmetrized at once.
pub const DEFAULT_MAX_FACTORS: u32 = 8;

/// Coordinates of each monomial symmetrized under a star product.
///
/// Above `max_factors` coordinates the su(2)* products switch to the closed
/// form; any other star product reports a resource limit there.
#[derive(Debug)]
pub struct CoordinateSun {
    star: Arc<dyn StarProduct>,
    max_factors: u32,
    closed: Option<Mutex<SunCoefficients>>,
    cache: ImageCache,
}

impl CoordinateSun {
    pub fn new(star: Arc<dyn StarProduct>, max_factors: u32) -> Self {
        let closed = matches!(star.name(), "su2" | "su2-lift")
            .then(|| Mutex::new(SunCoefficients::new(0, 0)));
        CoordinateSun {
            star,
            max_factors,
            closed,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn closed_image(&self, m: &Monomial) -> Option<Result<NuObject>> {
        let table = self.closed.as_ref()?;
        let mut coeffs = table.lock().expect("sun table poisoned");
        let r = (m.degree() / 2) as usize;
        if coeffs.r_max() < r {
            *coeffs = SunCoefficients::new(0, r);
        }
        let one = Rational::from_integer(BigInt::from(1));
        Some(sun_closed_form(
            &Poly::monomial(3, *m, one),
            &Poly::one(3),
            &coeffs,
        ))
    }
}

impl SunRule for CoordinateSun {
    fn name(&self) -> &'static str {
        "coordinate"
    }

    fn space(&self) -> &VarSpace {
        self.star.space()
    }

    fn image(&self, m: &Monomial) -> Result<NuObject> {
        if m.degree() > self.max_factors {
            if let Some(v) = self.closed_image(m) {
                return v;
            }
            return Err(Error::limit(
                "sun",
                format!(
                    "symmetrizing {} coordinates exceeds the bound {}",
                    m.degree(),
                    self.max_factors
                ),
            ));
        }
        cached(&self.cache, m, || {
            let n = self.space().len();
            let groups: Vec<(Poly, u32)> = (0..n)
                .filter(|&i| m.get(i) > 0)
                .map(|i| (Poly::var(n, i), m.get(i)))
                .collect();
            symmetrized_product(self.star.as_ref(), &groups)
        })
    }
}

/// `q-part *_M (everything else)` on a phase space.
#[derive(Debug)]
pub struct MoyalStandardSun {
    moyal: ExpKernel,
    cache: ImageCache,
}

impl MoyalStandardSun {
    pub fn new(space: &VarSpace) -> Result<Self> {
        Ok(MoyalStandardSun {
            moyal: ExpKernel::moyal(space)?,
            cache: Mutex::new(HashMap::new()),
        })
    }
}

impl SunRule for MoyalStandardSun {
    fn name(&self) -> &'static str {
        "moyal-standard"
    }

    fn space(&self) -> &VarSpace {
        self.moyal.space()
    }

    fn image(&self, m: &Monomial) -> Result<NuObject> {
        cached(&self.cache, m, || {
            let n = self.space().len();
            let mut q = Monomial::one();
            for &(qi, _) in self.space().pairs() {
                q = q.with(qi, m.get(qi));
            }
            let rest = m.div(&q).expect("q-part divides the monomial");
            let one = Rational::from_integer(BigInt::from(1));
            self.moyal.mul_poly(
                &Poly::monomial(n, q, one.clone()),
                &Poly::monomial(n, rest, one),
            )
        })
    }
}

/// The undeformed product.
#[derive(Debug)]
pub struct UsualSun {
    space: VarSpace,
}

impl UsualSun {
    pub fn new(space: &VarSpace) -> Self {
        UsualSun {
            space: space.clone(),
        }
    }
}

impl SunRule for UsualSun {
    fn name(&self) -> &'static str {
        "usual"
    }

    fn space(&self) -> &VarSpace {
        &self.space
    }

    fn image(&self, m: &Monomial) -> Result<NuObject> {
        let one = Rational::from_integer(BigInt::from(1));
        Ok(NuObject::from_poly(Poly::monomial(
            self.space.len(),
            *m,
            one,
        )))
    }
}

#[derive(Clone, Debug)]
pub struct SunOptions {
    pub max_factors: u32,
}

impl Default for SunOptions {
    fn default() -> Self {
        SunOptions {
            max_factors: DEFAULT_MAX_FACTORS,
        }
    }
}

type SunBuilder = fn(Arc<dyn StarProduct>, &SunOptions) -> Result<Arc<dyn SunRule>>;

/// Name-indexed sun rules. Each builder receives the star product of the
/// session; rules that do not use it only take its variable space.
pub struct SunRegistry {
    entries: Vec<(&'static str, SunBuilder)>,
}

impl SunRegistry {
    pub fn with_defaults() -> Self {
        let mut r = SunRegistry {
            entries: Vec::new(),
        };
        r.register("coordinate", |s, o| {
            Ok(Arc::new(CoordinateSun::new(s, o.max_factors)))
        });
        r.register("moyal-standard", |s, _| {
            Ok(Arc::new(MoyalStandardSun::new(s.space())?))
        });
        r.register("usual", |s, _| Ok(Arc::new(UsualSun::new(s.space()))));
        r
    }

    pub fn register(&mut self, name: &'static str, build: SunBuilder) {
        self.entries.retain(|(n, _)| *n != name);
        self.entries.push((name, build));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn build(
        &self,
        name: &str,
        star: Arc<dyn StarProduct>,
        opts: &SunOptions,
    ) -> Result<Arc<dyn SunRule>> {
        let (_, build) = self
            .entries
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| {
                Error::invalid(
                    "sun",
                    format!(
                        "unknown sun rule {name:?}; known rules: {}",
                        self.names().join(", ")
                    ),
                )
            })?;
        build(star, opts)
    }
}

impl Default for SunRegistry {
    fn default() -> Self {
        SunRegistry::with_defaults()
    }
}

/// `[F_1, .., F_n] = T(alpha({F_1, .., F_n}))` with the Jacobian bracket on
/// the classical parts.
pub fn quantized_nambu(rule: &dyn SunRule, fs: &[NuObject]) -> Result<NuObject> {
    let n = rule.space().len();
    if fs.len() != n {
        return Err(Error::invalid(
            "sun",
            format!("the bracket on {n} variables takes {n} arguments"),
        ));
    }
    let classical: Vec<Poly> = fs.iter().map(|f| f.classical()).collect();
    let vars: Vec<usize> = (0..n).collect();
    rule.rho(&jacobian_det(&classical, &vars)?)
}

/// Fundamental Identity residual for [`quantized_nambu`] on `2n - 1` arguments.
pub fn quantized_fi(rule: &dyn SunRule, fs: &[NuObject]) -> Result<NuObject> {
    let n = rule.space().len();
    if fs.len() != 2 * n - 1 {
        return Err(Error::invalid(
            "sun",
            format!("the identity takes {} arguments", 2 * n - 1),
        ));
    }
    let head = &fs[..n - 1];
    let tail = &fs[n - 1..];
    let mut args = head.to_vec();
    args.push(quantized_nambu(rule, tail)?);
    let mut residual = quantized_nambu(rule, &args)?;
    for k in 0..n {
        let mut a = head.to_vec();
        a.push(tail[k].clone());
        let mut outer = tail.to_vec();
        outer[k] = quantized_nambu(rule, &a)?;
        residual -= &quantized_nambu(rule, &outer)?;
    }
    Ok(residual)
}

/// `F (.) (d_i(G (.) H) - G (.) d_i H - d_i G (.) H)`.
pub fn weak_leibniz(
    rule: &dyn SunRule,
    i: usize,
    f: &Poly,
    g: &Poly,
    h: &Poly,
) -> Result<NuObject> {
    let gh = rule.mul(g, h)?.map_polys(|p| p.diff(i));
    let inner = &(&gh - &rule.mul(g, &h.diff(i))?) - &rule.mul(&g.diff(i), h)?;
    rule.mul_nu(&NuObject::from_poly(f.clone()), &inner)
}

/// `sum_r (1/r!) (t/2nu)^r H^{(.)r}`; entry `r` is the `t^r` coefficient.
pub fn sun_exponential(rule: &dyn SunRule, h: &Poly, t_order: usize) -> Result<TSeries> {
    let mut coeffs = Vec::with_capacity(t_order + 1);
    let mut power = Poly::one(h.nvars());
    for r in 0..=t_order {
        if r > 0 {
            power = &power * h;
        }
        let denom = factorial(r as u64) * (BigInt::from(1) << r);
        let c = rule
            .rho(&power)?
            .scale(&Rational::new(BigInt::from(1), denom));
        coeffs.push(c.shift(-(r as i32)));
    }
    Ok(TSeries::new(coeffs))
}

/// Lowest positive power of `nu` at which `F (.) G` differs from `F G`.
/// A rule with such a witness cannot be A-equivalent to the usual product.
pub fn strong_triviality_obstruction(
    rule: &dyn SunRule,
    f: &Poly,
    g: &Poly,
) -> Result<Option<i32>> {
    let p = rule.mul(f, g)?;
    let diff = &p - &NuObject::from_poly(f * g);
    let first = diff
        .iter()
        .find(|(k, c)| *k != 0 && !c.is_zero())
        .map(|(k, _)| k);
    Ok(first)
}
