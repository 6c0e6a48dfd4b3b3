use std::collections::VecDeque;
use std::io::Read;
use std::sync::Arc;

use nambu_core::factor::factorize;
use nambu_core::nambu::{check_fi, euler_top, nahm, BracketRegistry};
use nambu_core::parse::{parse_nu, parse_poly, parse_rational, parse_zelem, parse_znu};
use nambu_core::poly::{NuObject, Poly, TSeries, VarSpace};
use nambu_core::sample::{random_poly, PolyShape};
use nambu_core::star::{
    star_commutator, star_exponential, star_power, StarOptions, StarProduct, StarRegistry,
};
use nambu_core::sun::{
    apply_equivalence, quantized_nambu, strong_triviality_obstruction, sun_closed_form,
    sun_exponential, weak_trivializer, DiffOpSeries, EquivMode, SunCoefficients, SunOptions,
    SunRegistry, SunRule,
};
use nambu_core::weyl::{ho_spectrum, spectral_projector_residual, FockTruncation};
use nambu_core::zariski::{frobenius_search, Zariski};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{Command, Mode, StarOp, SunOp, System, Trivializer, ZariskiOp};
use crate::config::Settings;
use crate::error::{usage, CliError};

type Result<T> = std::result::Result<T, CliError>;

/// What a subcommand produced; `text` and `result` carry the same data.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub text: String,
    pub result: Value,
    /// False when a check ran to completion and found a violation.
    pub passed: bool,
}

impl Report {
    fn ok(command: &'static str, text: String, result: Value) -> Self {
        Report {
            command,
            text,
            result,
            passed: true,
        }
    }
}

/// Expression arguments; each `-` takes the next non-empty line of stdin.
pub struct Inputs<R> {
    stdin: Option<R>,
    lines: Option<VecDeque<String>>,
}

impl<R: Read> Inputs<R> {
    pub fn new(stdin: R) -> Self {
        Inputs {
            stdin: Some(stdin),
            lines: None,
        }
    }

    fn get(&mut self, arg: &str) -> Result<String> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.lines.is_none() {
            let mut buf = String::new();
            if let Some(mut s) = self.stdin.take() {
                s.read_to_string(&mut buf)
                    .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            }
            let lines = buf
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(String::from);
            self.lines = Some(lines.collect());
        }
        self.lines
            .as_mut()
            .and_then(|l| l.pop_front())
            .ok_or_else(|| usage("stdin has fewer expressions than '-' arguments"))
    }

    fn all(&mut self, args: &[String]) -> Result<Vec<String>> {
        args.iter().map(|a| self.get(a)).collect()
    }
}

/// `--vars a,b,q:p` gives variables a, b, q, p with (q, p) a symplectic pair.
pub fn parse_vars(spec: &str) -> Result<VarSpace> {
    let mut names = Vec::new();
    let mut pairs = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once(':') {
            Some((q, p)) => {
                pairs.push((names.len(), names.len() + 1));
                names.push(q.trim().to_string());
                names.push(p.trim().to_string());
            }
            None => names.push(item.to_string()),
        }
    }
    Ok(VarSpace::new(&names, &pairs)?)
}

fn space_or(vars: Option<&str>, default: VarSpace) -> Result<VarSpace> {
    match vars {
        Some(v) => parse_vars(v),
        None => Ok(default),
    }
}

fn arity(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(usage(format!(
            "{what} takes {want} expression(s), got {got}"
        )));
    }
    Ok(())
}

fn series_json(s: &TSeries, space: &VarSpace) -> (String, Value) {
    let mut lines = Vec::new();
    let mut coeffs = Vec::new();
    for (r, c) in s.coeffs().iter().enumerate() {
        let t = c.to_text(space);
        lines.push(format!("t^{r}: {t}"));
        coeffs.push(json!({ "order": r, "value": t }));
    }
    (lines.join("\n"), Value::Array(coeffs))
}

pub struct Context<'a, R> {
    pub settings: &'a Settings,
    pub vars: Option<&'a str>,
    pub inputs: Inputs<R>,
}

pub fn run<R: Read>(cmd: &Command, ctx: &mut Context<'_, R>) -> Result<Report> {
    match cmd {
        Command::Factor { expr } => factor_cmd(expr, ctx),
        Command::Star {
            product,
            pairs,
            op,
            power,
            exprs,
        } => star_cmd(product, pairs.as_deref(), *op, *power, exprs, ctx),
        Command::Nambu { bracket, exprs } => nambu_cmd(bracket, exprs, ctx),
        Command::CheckFi {
            bracket,
            degree,
            trials,
        } => check_fi_cmd(bracket, *degree, *trials, ctx),
        Command::Zariski {
            op,
            dim,
            power,
            var,
            max_degree,
            exprs,
        } => zariski_cmd(*op, *dim, *power, *var, *max_degree, exprs, ctx),
        Command::Sun {
            rule,
            product,
            op,
            max_factors,
            exprs,
        } => sun_cmd(rule, product.as_deref(), *op, *max_factors, exprs, ctx),
        Command::Equiv {
            mode,
            p1,
            p2,
            product,
            trivializer,
            exprs,
        } => equiv_cmd(*mode, p1, p2, product, *trivializer, exprs, ctx),
        Command::Spectrum { dim, hbar, k, band } => spectrum_cmd(*dim, *hbar, *k, *band),
        Command::Evolve {
            system,
            inertia,
            x0,
            horizon,
            step,
            csv,
        } => evolve_cmd(*system, inertia, x0, *horizon, *step, csv.as_deref()),
        Command::Coeffs { a, table } => coeffs_cmd(a.as_deref(), table.as_deref()),
    }
}

fn factor_cmd<R: Read>(expr: &str, ctx: &mut Context<'_, R>) -> Result<Report> {
    let space = space_or(ctx.vars, VarSpace::euclidean(3))?;
    let f = parse_poly(&ctx.inputs.get(expr)?, &space)?;
    let fac = factorize(&f)?;
    let mut parts = Vec::new();
    let unit = fac.unit.to_string();
    if fac.unit != Poly::one(1).constant_term() || fac.factors.is_empty() {
        parts.push(unit.clone());
    }
    let mut factors = Vec::new();
    for (g, k) in &fac.factors {
        let t = g.to_text(&space);
        parts.push(if *k == 1 {
            format!("({t})")
        } else {
            format!("({t})^{k}")
        });
        factors.push(json!({ "factor": t, "multiplicity": k }));
    }
    let text = parts.join(" * ");
    let result =
        json!({ "input": f.to_text(&space), "unit": unit, "factors": factors, "text": text });
    Ok(Report::ok("factor", text, result))
}

fn build_star(name: &str, space: &VarSpace, pairs: Option<&str>) -> Result<Arc<dyn StarProduct>> {
    let active_pairs = pairs
        .map(|p| {
            p.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| usage(format!("bad pair index {s:?}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    Ok(StarRegistry::with_defaults().build(name, space, &StarOptions { active_pairs })?)
}

fn default_star_space(product: &str) -> VarSpace {
    if product.starts_with("su2") {
        VarSpace::su2()
    } else {
        VarSpace::phase_plane()
    }
}

fn star_cmd<R: Read>(
    product: &str,
    pairs: Option<&str>,
    op: StarOp,
    power: u32,
    exprs: &[String],
    ctx: &mut Context<'_, R>,
) -> Result<Report> {
    let space = space_or(ctx.vars, default_star_space(product))?;
    let star = build_star(product, &space, pairs)?;
    let args = ctx.inputs.all(exprs)?;
    let vals = args
        .iter()
        .map(|a| parse_nu(a, &space))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let (text, value) = match op {
        StarOp::Mul | StarOp::Commutator => {
            arity("star", vals.len(), 2)?;
            let v = if op == StarOp::Mul {
                star.mul(&vals[0], &vals[1])?
            } else {
                star_commutator(star.as_ref(), &vals[0], &vals[1])?
            };
            let t = v.to_text(&space);
            (t.clone(), Value::String(t))
        }
        StarOp::Power => {
            arity("star --op power", vals.len(), 1)?;
            let t = star_power(star.as_ref(), &vals[0], power)?.to_text(&space);
            (t.clone(), Value::String(t))
        }
        StarOp::Exp => {
            arity("star --op exp", vals.len(), 1)?;
            let h = classical_only(&vals[0])?;
            series_json(
                &star_exponential(star.as_ref(), &h, ctx.settings.t_order)?,
                &space,
            )
        }
    };
    let result =
        json!({ "product": star.name(), "op": format!("{op:?}").to_lowercase(), "value": value });
    Ok(Report::ok("star", text, result))
}

fn classical_only(v: &NuObject) -> Result<Poly> {
    if v.iter().any(|(k, _)| k != 0) {
        return Err(usage("expected an expression without nu"));
    }
    Ok(v.classical())
}

fn bracket_space(vars: Option<&str>, nvars: usize) -> Result<VarSpace> {
    let space = space_or(vars, VarSpace::plain(nvars))?;
    if space.len() != nvars {
        return Err(usage(format!(
            "the bracket acts on {nvars} variables, --vars gives {}",
            space.len()
        )));
    }
    Ok(space)
}

fn nambu_cmd<R: Read>(bracket: &str, exprs: &[String], ctx: &mut Context<'_, R>) -> Result<Report> {
    let b = BracketRegistry::with_defaults().build(bracket)?;
    let space = bracket_space(ctx.vars, b.nvars())?;
    let args = ctx.inputs.all(exprs)?;
    arity("nambu", args.len(), b.order())?;
    let fs = args
        .iter()
        .map(|a| parse_poly(a, &space))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let t = b.eval(&fs)?.to_text(&space);
    let result = json!({ "bracket": b.name(), "value": t });
    Ok(Report::ok("nambu", t, result))
}

fn check_fi_cmd<R: Read>(
    bracket: &str,
    degree: u32,
    trials: usize,
    ctx: &mut Context<'_, R>,
) -> Result<Report> {
    let registry = BracketRegistry::with_defaults();
    let b = registry.build(bracket)?;
    let space = bracket_space(ctx.vars, b.nvars())?;
    let arity = 2 * b.order() - 1;
    let shape = PolyShape::new(b.nvars(), degree);
    let seed = ctx.settings.seed;
    let trial = |k: usize| -> nambu_core::Result<Poly> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let fs: Vec<Poly> = (0..arity).map(|_| random_poly(&mut rng, &shape)).collect();
        check_fi(b.as_ref(), &fs)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.settings.jobs)
        .build()
        .map_err(|e| usage(format!("cannot start {} workers: {e}", ctx.settings.jobs)))?;
    let residuals: Vec<Poly> = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(trial)
            .collect::<nambu_core::Result<Vec<_>>>()
    })?;
    let passed = residuals.iter().filter(|r| r.is_zero()).count();
    let first = residuals.iter().position(|r| !r.is_zero());
    let residual = first.map_or("0".to_string(), |k| residuals[k].to_text(&space));
    let status = if passed == trials { "PASS" } else { "FAIL" };
    let text = format!("{status} residual={residual} ({passed}/{trials})");
    let result = json!({
        "bracket": b.name(),
        "degree": degree,
        "trials": trials,
        "passed": passed,
        "seed": seed,
        "status": status,
        "residual": residual,
        "first_failure": first,
    });
    Ok(Report {
        command: "check-fi",
        text,
        result,
        passed: passed == trials,
    })
}

#[allow(clippy::too_many_arguments)]
fn zariski_cmd<R: Read>(
    op: ZariskiOp,
    dim: usize,
    power: u32,
    var: usize,
    max_degree: u32,
    exprs: &[String],
    ctx: &mut Context<'_, R>,
) -> Result<Report> {
    let z = Zariski::for_dimension(dim)?;
    let space = match ctx.vars {
        Some(v) => {
            let s = parse_vars(v)?;
            if s.len() != dim {
                return Err(usage(format!(
                    "--vars gives {} names for dimension {dim}",
                    s.len()
                )));
            }
            s
        }
        None => z.space().clone(),
    };
    let args = ctx.inputs.all(exprs)?;
    let zeta = z.zeta();
    let opname = format!("{op:?}").to_lowercase();
    let one = |what: &str| arity(what, args.len(), 1);
    let text = match op {
        ZariskiOp::Zeta => {
            one("zariski --op zeta")?;
            zeta.of_poly(&parse_poly(&args[0], &space)?)?
                .to_text(&space)
        }
        ZariskiOp::Mul => {
            arity("zariski --op mul", args.len(), 2)?;
            let a = parse_znu(&args[0], &space, zeta)?;
            let b = parse_znu(&args[1], &space, zeta)?;
            z.z_mul_nu(&a, &b)?.to_text(&space)
        }
        ZariskiOp::Classical => {
            arity("zariski --op classical", args.len(), 2)?;
            let a = parse_zelem(&args[0], &space, zeta)?;
            let b = parse_zelem(&args[1], &space, zeta)?;
            a.mul(&b).to_text(&space)
        }
        ZariskiOp::Power => {
            one("zariski --op power")?;
            z.power(&parse_znu(&args[0], &space, zeta)?, power)?
                .to_text(&space)
        }
        ZariskiOp::Delta => {
            one("zariski --op delta")?;
            if var == 0 || var > dim {
                return Err(usage(format!("--var must be in 1..={dim}")));
            }
            zeta.delta(var - 1, &parse_zelem(&args[0], &space, zeta)?)?
                .to_text(&space)
        }
        ZariskiOp::J => {
            one("zariski --op j")?;
            z.jmap(&parse_zelem(&args[0], &space, zeta)?)?
                .to_text(&space)
        }
        ZariskiOp::Nambu => {
            arity("zariski --op nambu", args.len(), dim)?;
            let js = args
                .iter()
                .map(|a| z.jmap(&parse_zelem(a, &space, zeta)?))
                .collect::<nambu_core::Result<Vec<_>>>()?;
            z.quantum_nambu(&js)?.to_text(&space)
        }
        ZariskiOp::Frobenius => {
            one("zariski --op frobenius")
                .or_else(|_| arity("zariski --op frobenius", args.len(), 0))?;
            let w = frobenius_search(dim, max_degree)?;
            let (text, value) = match w {
                Some(w) => {
                    let (u, ij, ji) = (
                        w.u.to_text(&space),
                        w.ij.to_text(&space),
                        w.ji.to_text(&space),
                    );
                    (
                        format!("u = {u}\nd1 d2 Z_u = {ij}\nd2 d1 Z_u = {ji}"),
                        json!({ "u": u, "d1d2": ij, "d2d1": ji, "verified": w.verify()? }),
                    )
                }
                None => (format!("no witness up to degree {max_degree}"), Value::Null),
            };
            let result = json!({ "op": opname, "dim": dim, "value": value });
            return Ok(Report::ok("zariski", text, result));
        }
    };
    let result = json!({ "op": opname, "dim": dim, "value": text });
    Ok(Report::ok("zariski", text, result))
}

fn build_sun(
    rule: &str,
    product: Option<&str>,
    max_factors: u32,
    vars: Option<&str>,
) -> Result<(Arc<dyn SunRule>, VarSpace)> {
    let product = product.unwrap_or(if rule == "moyal-standard" {
        "moyal"
    } else {
        "su2"
    });
    let space = space_or(vars, default_star_space(product))?;
    let star = build_star(product, &space, None)?;
    let sun = SunRegistry::with_defaults().build(rule, star, &SunOptions { max_factors })?;
    Ok((sun, space))
}

fn sun_cmd<R: Read>(
    rule: &str,
    product: Option<&str>,
    op: SunOp,
    max_factors: u32,
    exprs: &[String],
    ctx: &mut Context<'_, R>,
) -> Result<Report> {
    let (sun, space) = build_sun(rule, product, max_factors, ctx.vars)?;
    let args = ctx.inputs.all(exprs)?;
    let fs = args
        .iter()
        .map(|a| parse_poly(a, &space))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let (text, value) = match op {
        SunOp::Mul => {
            arity("sun", fs.len(), 2)?;
            let t = sun.mul(&fs[0], &fs[1])?.to_text(&space);
            (t.clone(), Value::String(t))
        }
        SunOp::ClosedForm => {
            arity("sun --op closed-form", fs.len(), 2)?;
            if space.len() != 3 {
                return Err(usage("the closed form acts on su(2)* with three variables"));
            }
            let r = ((&fs[0] * &fs[1]).total_degree() / 2) as usize;
            let t = sun_closed_form(&fs[0], &fs[1], &SunCoefficients::new(0, r))?.to_text(&space);
            (t.clone(), Value::String(t))
        }
        SunOp::Nambu => {
            let args: Vec<NuObject> = fs.into_iter().map(NuObject::from_poly).collect();
            let t = quantized_nambu(sun.as_ref(), &args)?.to_text(&space);
            (t.clone(), Value::String(t))
        }
        SunOp::Exp => {
            arity("sun --op exp", fs.len(), 1)?;
            series_json(
                &sun_exponential(sun.as_ref(), &fs[0], ctx.settings.t_order)?,
                &space,
            )
        }
        SunOp::Obstruction => {
            arity("sun --op obstruction", fs.len(), 2)?;
            match strong_triviality_obstruction(sun.as_ref(), &fs[0], &fs[1])? {
                Some(k) => (
                    format!("differs from the usual product at nu^{k}"),
                    json!(k),
                ),
                None => ("agrees with the usual product".to_string(), Value::Null),
            }
        }
    };
    let result =
        json!({ "rule": sun.name(), "op": format!("{op:?}").to_lowercase(), "value": value });
    Ok(Report::ok("sun", text, result))
}

fn equiv_cmd<R: Read>(
    mode: Mode,
    p1: &str,
    p2: &str,
    product: &str,
    trivializer: Trivializer,
    exprs: &[String],
    ctx: &mut Context<'_, R>,
) -> Result<Report> {
    let (s1, space) = build_sun(
        p1,
        Some(product),
        nambu_core::sun::DEFAULT_MAX_FACTORS,
        ctx.vars,
    )?;
    let (s2, _) = build_sun(
        p2,
        Some(product),
        nambu_core::sun::DEFAULT_MAX_FACTORS,
        ctx.vars,
    )?;
    let args = ctx.inputs.all(exprs)?;
    arity("equiv", args.len(), 2)?;
    let f = parse_poly(&args[0], &space)?;
    let g = parse_poly(&args[1], &space)?;
    let order = ctx.settings.nu_order;
    let series = match trivializer {
        Trivializer::Identity => DiffOpSeries::identity(space.len()),
        Trivializer::Eta => weak_trivializer(
            &SunCoefficients::new(0, (order / 2) as usize),
            space.len(),
            order,
        )?,
    };
    let mode_core = match mode {
        Mode::A => EquivMode::A,
        Mode::B => EquivMode::B,
    };
    let residual = apply_equivalence(&series, mode_core, s1.as_ref(), s2.as_ref(), &f, &g, order)?;
    let t = residual.to_text(&space);
    let zero = residual.is_zero();
    let text = format!(
        "residual={t} (through nu^{order}{})",
        if zero { ", equivalent" } else { "" }
    );
    let result = json!({
        "mode": format!("{mode:?}"),
        "p1": s1.name(),
        "p2": s2.name(),
        "nu_order": order,
        "residual": t,
        "zero": zero,
    });
    Ok(Report::ok("equiv", text, result))
}

fn spectrum_cmd(dim: usize, hbar: f64, k: usize, band: Option<usize>) -> Result<Report> {
    let t = FockTruncation::new(dim, hbar)?;
    let band = band.unwrap_or(t.default_band());
    let levels = ho_spectrum(&t, k)?;
    let (eigen, ortho) = spectral_projector_residual(&t, k, band)?;
    let shown: Vec<String> = levels.iter().map(|l| format!("{l:.12}")).collect();
    let text = format!(
        "eigenvalues: [{}]\nprojector residuals: eigen={eigen:.3e} orthogonality={ortho:.3e}",
        shown.join(", ")
    );
    let result = json!({
        "dim": dim,
        "hbar": hbar,
        "band": band,
        "eigenvalues": levels,
        "eigen_residual": eigen,
        "orthogonality_residual": ortho,
    });
    Ok(Report::ok("spectrum", text, result))
}

fn floats(spec: &str, what: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("bad number {s:?} in --{what}")))
        })
        .collect()
}

fn evolve_cmd(
    system: System,
    inertia: &str,
    x0: &str,
    horizon: f64,
    step: f64,
    csv: Option<&str>,
) -> Result<Report> {
    let dynamics = match system {
        System::EulerTop => {
            let moments: Vec<_> = inertia
                .split(',')
                .map(|s| parse_rational(s.trim()))
                .collect::<std::result::Result<_, _>>()?;
            let moments: [_; 3] = moments
                .try_into()
                .map_err(|_| usage("--inertia takes three moments"))?;
            euler_top(&moments)?
        }
        System::Nahm => nahm()?,
    };
    let x = floats(x0, "x0")?;
    let run = dynamics.evolve(&x, horizon, step)?;
    let r = &run.report;
    let names: Vec<String> = (1..=x.len()).map(|i| format!("x{i}")).collect();
    let table = run.to_csv(&names);
    let drift: Vec<String> = r
        .max_relative_drift
        .iter()
        .map(|d| format!("{d:.3e}"))
        .collect();
    let mut text = format!(
        "steps={} step={} horizon={}\nmax relative drift: [{}]\ndivergence-free: {}",
        r.steps,
        r.step,
        r.horizon,
        drift.join(", "),
        r.divergence_free
    );
    let mut result = json!({
        "system": format!("{system:?}"),
        "steps": r.steps,
        "step": r.step,
        "horizon": r.horizon,
        "initial": r.initial,
        "max_relative_drift": r.max_relative_drift,
        "divergence_free": r.divergence_free,
    });
    match csv {
        Some("-") => {
            text = table.trim_end().to_string();
            result["csv"] = Value::String(table);
        }
        Some(path) => {
            std::fs::write(path, &table).map_err(|e| usage(format!("cannot write {path}: {e}")))?;
            result["csv_path"] = Value::String(path.to_string());
        }
        None => {}
    }
    Ok(Report::ok("evolve", text, result))
}

fn coeff_cell(c: &SunCoefficients, n: usize, r: usize) -> (String, Value) {
    let rec = c.a(n, r).to_string();
    let closed = c.a_closed(n, r).map(|v| v.to_string());
    let agree = c.a_closed(n, r).map(|v| v == c.a(n, r));
    let text = format!(
        "a({n},{r}) recursion={rec} closed={} agree={}",
        closed.as_deref().unwrap_or("undefined"),
        agree.map_or("n/a".to_string(), |a| a.to_string())
    );
    (
        text,
        json!({ "n": n, "r": r, "recursion": rec, "closed": closed, "agree": agree }),
    )
}

fn coeffs_cmd(a: Option<&[usize]>, table: Option<&[usize]>) -> Result<Report> {
    match (a, table) {
        (Some([n, r]), None) => {
            let c = SunCoefficients::new(*n, *r);
            let (text, cell) = coeff_cell(&c, *n, *r);
            Ok(Report::ok("coeffs", text, json!({ "cells": [cell] })))
        }
        (None, Some([n, r])) => {
            let c = SunCoefficients::new(*n, *r);
            let mut lines = Vec::new();
            let mut cells = Vec::new();
            for i in 0..=*n {
                for j in 0..=*r {
                    let (t, v) = coeff_cell(&c, i, j);
                    lines.push(t);
                    cells.push(v);
                }
            }
            let bad = c.disagreements();
            lines.push(format!("disagreements: {}", bad.len()));
            Ok(Report {
                command: "coeffs",
                text: lines.join("\n"),
                result: json!({ "cells": cells, "disagreements": bad.len() }),
                passed: bad.is_empty(),
            })
        }
        _ => Err(usage("coeffs needs exactly one of --a N R or --table N R")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vars_with_pairs() {
        let s = parse_vars("q1:p1, z").unwrap();
        assert_eq!(s.names(), ["q1", "p1", "z"]);
        assert_eq!(s.pairs(), [(0, 1)]);
        assert!(parse_vars("a,a").is_err());
    }

    #[test]
    fn stdin_dashes_consume_lines() {
        let mut inputs = Inputs::new("L1\n\n L2 \n".as_bytes());
        assert_eq!(
            inputs.all(&["-".into(), "x".into(), "-".into()]).unwrap(),
            ["L1", "x", "L2"]
        );
        assert!(inputs.get("-").is_err());
    }
}
