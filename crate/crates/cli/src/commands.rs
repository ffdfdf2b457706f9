use std::fmt::Write as _;
use std::io::{self, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use calogero_core::algebra::{Algebra, AlgebraElement};
use calogero_core::coxgroup::{CoxeterGroup, GroupError, Kappa};
use calogero_core::dunkl::{calogero_check, DunklError};
use calogero_core::glc::{build_glc, klein_transport, solve_symbolic, CentralFunction, GlcError};
use calogero_core::rootsystem::{RootSystem, RootSystemError};
use calogero_core::scalar::rational::rat;
use calogero_core::scalar::{parse_rational, Cyclotomic, NuPoly, ScalarError};
use calogero_core::traceval::{bilinear_gram, verify_trace_property, KappaTrace, Strategy, TraceError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::expr::{parse_expr, to_element, ExprError};
use crate::{effective_seed, CentralSource, Cli, Command, Common, TableArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}", render_expr_error(.error, .text))]
    Expr { error: ExprError, text: String },
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Glc(#[from] GlcError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Dunkl(#[from] DunklError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn render_expr_error(error: &ExprError, text: &str) -> String {
    let span = match error {
        ExprError::Syntax { span, .. } | ExprError::UnknownGenerator { span, .. } | ExprError::AmbiguousNu { span, .. } => span.clone(),
        ExprError::Algebra(_) => return error.to_string(),
    };
    let width = text[span.start.min(text.len())..span.end.min(text.len())].chars().count().max(1);
    let pad = text[..span.start.min(text.len())].chars().count();
    format!("{error}\n  {text}\n  {}{}", " ".repeat(pad), "^".repeat(width))
}

fn expr_element(text: &str, alg: &Arc<Algebra>) -> Result<AlgebraElement, CliError> {
    let wrap = |error| CliError::Expr { error, text: text.to_string() };
    let ast = parse_expr(text).map_err(wrap)?;
    to_element(&ast, alg).map_err(wrap)
}

/// Runs one command, writing its report to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let common = Common { seed: effective_seed(cli.common.seed), ..cli.common.clone() };
    match &cli.command {
        Command::Info { system } => info(&common, system, out),
        Command::Glc { system, kappa, nu, symbolic } => glc(&common, system, *kappa, nu.as_deref(), *symbolic, out),
        Command::Trace { system, kappa, nu, central, expr, strategy } => trace(&common, system, *kappa, nu.as_deref(), central, expr, *strategy, out),
        Command::Gram { system, kappa, nu, max_degree, central } => gram(&common, system, *kappa, nu, *max_degree, central, out),
        Command::Dunkl { system, max_degree } => dunkl(&common, system, *max_degree, out),
        Command::Verify { system } => {
            let report = verify(system, common.seed)?;
            report.write(&common, out)?;
            Ok(report.exit_code())
        }
        Command::Table(args) => table(&common, args, out),
    }
}

fn load_group(name: &str) -> Result<Arc<CoxeterGroup>, CliError> {
    let rs = RootSystem::build(name)?;
    Ok(Arc::new(CoxeterGroup::generate(rs)?))
}

fn nvars(g: &CoxeterGroup) -> usize {
    g.root_system().num_classes()
}

fn parse_nu(text: &str, count: usize) -> Result<Vec<Cyclotomic>, CliError> {
    let values = text.split(',').map(|v| parse_rational(v.trim()).map(Cyclotomic::from_rational)).collect::<Result<Vec<_>, _>>()?;
    if values.len() != count {
        return Err(CliError::Usage(format!("--nu needs {count} value(s), one per reflection class; got {}", values.len())));
    }
    Ok(values)
}

/// ν = 0 followed by three pseudo-random rational tuples determined by `seed`.
pub fn nu_samples(count: usize, seed: u64) -> Vec<Vec<Cyclotomic>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![vec![Cyclotomic::from_int(0); count]];
    for _ in 0..3 {
        let tuple = (0..count)
            .map(|_| {
                let num = loop {
                    let k: i64 = rng.gen_range(-12..=12);
                    if k != 0 {
                        break k;
                    }
                };
                Cyclotomic::from_rational(rat(num, rng.gen_range(1..=7)))
            })
            .collect();
        out.push(tuple);
    }
    out
}

fn approx_text(c: &Cyclotomic) -> String {
    let (re, im) = c.approx();
    if im.abs() < 1e-12 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

fn is_rational(c: &Cyclotomic) -> bool {
    c.coeffs()[1..].iter().all(|q| *q == rat(0, 1))
}

fn show_cyc(c: &Cyclotomic, common: &Common) -> String {
    let mut s = c.to_string();
    if !is_rational(c) {
        let _ = write!(s, " [z = e^(2 pi i/{})]", c.conductor());
    }
    if common.approx {
        let _ = write!(s, " ~ {}", approx_text(c));
    }
    s
}

fn show_poly(p: &NuPoly, common: &Common) -> String {
    match p.as_constant() {
        Some(c) => show_cyc(&c, common),
        None => p.to_string(),
    }
}

fn cyc_json(c: &Cyclotomic, common: &Common) -> Value {
    let mut v = json!({ "value": c.to_string(), "conductor": c.conductor() });
    if common.approx {
        v["approx"] = json!(approx_text(c));
    }
    v
}

fn poly_json(p: &NuPoly, common: &Common) -> Value {
    match p.as_constant() {
        Some(c) => cyc_json(&c, common),
        None => json!({ "value": p.to_string() }),
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn info(common: &Common, system: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_group(system)?;
    let (t, st) = (g.counts(Kappa::Plus), g.counts(Kappa::Minus));
    if common.json {
        let classes: Vec<Value> = g
            .classes()
            .iter()
            .map(|c| json!({ "size": c.size(), "order": c.order, "e_plus": c.e_plus, "e_minus": c.e_minus, "representative": word_text(&g, c.representative) }))
            .collect();
        let v = json!({
            "system": g.root_system().name(),
            "rank": g.rank(),
            "order": g.order(),
            "classes": classes,
            "traces": t,
            "supertraces": st,
            "klein": g.has_minus_identity(),
        });
        emit_json(out, &v)?;
        return Ok(0);
    }
    writeln!(out, "{}: rank {}, |W| = {}, {} classes", g.root_system().name(), g.rank(), g.order(), g.classes().len())?;
    writeln!(out, "{:>5} {:>6} {:>6} {:>4} {:>4}  representative", "class", "size", "order", "E+", "E-")?;
    for (k, c) in g.classes().iter().enumerate() {
        writeln!(out, "{:>5} {:>6} {:>6} {:>4} {:>4}  {}", k + 1, c.size(), c.order, c.e_plus, c.e_minus, word_text(&g, c.representative))?;
    }
    writeln!(out, "traces T = {t}, supertraces ST = {st}, Klein operator: {}", if g.has_minus_identity() { "yes" } else { "no" })?;
    Ok(0)
}

fn word_text(g: &CoxeterGroup, x: usize) -> String {
    let w = g.word(x);
    if w.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = w.iter().map(|k| format!("s_{}", k + 1)).collect();
    format!("w[{}]", parts.join(" "))
}

fn glc(common: &Common, system: &str, kappa: Kappa, nu: Option<&str>, symbolic: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_group(system)?;
    let sys = build_glc(&g, kappa);
    let expected = g.counts(kappa);
    let classes = g.classes().len();
    // columns of the basis table, one entry per class
    let (point, columns, residuals_ok): (Option<Vec<Cyclotomic>>, Vec<Vec<NuPoly>>, bool) = if symbolic {
        let sols = solve_symbolic(&g, kappa)?;
        let ok = sols.iter().all(|s| sys.symbolic_residuals(s).iter().all(NuPoly::is_zero));
        (None, sols.into_iter().map(|s| s.values).collect(), ok)
    } else {
        let point = match nu {
            Some(text) => parse_nu(text, nvars(&g))?,
            None => nu_samples(nvars(&g), common.seed).remove(1),
        };
        let basis = sys.solution_basis(&point)?;
        let mut ok = true;
        for b in &basis {
            ok &= sys.residuals(b, &point)?.iter().all(Cyclotomic::is_zero);
        }
        let nv = nvars(&g);
        let cols = basis.into_iter().map(|b| b.into_iter().map(|c| NuPoly::constant(c, nv)).collect()).collect();
        (Some(point), cols, ok)
    };
    let nullity = columns.len();
    if common.json {
        let v = json!({
            "system": g.root_system().name(),
            "kappa": kappa.to_string(),
            "nu": point.as_ref().map(|p| p.iter().map(|c| cyc_json(c, common)).collect::<Vec<_>>()),
            "nullity": nullity,
            "eigenvalue_free_classes": expected,
            "basis": columns.iter().map(|col| col.iter().map(|p| poly_json(p, common)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "residuals_zero": residuals_ok,
        });
        emit_json(out, &v)?;
    } else {
        match &point {
            Some(p) => writeln!(out, "{} kappa = {kappa}, nu = ({})", g.root_system().name(), p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))?,
            None => writeln!(out, "{} kappa = {kappa}, symbolic nu", g.root_system().name())?,
        }
        writeln!(out, "nullity {nullity} ({expected} classes without eigenvalue kappa)")?;
        for k in 0..classes {
            let cells: Vec<String> = columns.iter().map(|col| show_poly(&col[k], common)).collect();
            writeln!(out, "  class {:>3}: {}", k + 1, cells.join(" | "))?;
        }
        writeln!(out, "residual check: {}", if residuals_ok { "all zero" } else { "NONZERO" })?;
    }
    Ok(if residuals_ok && nullity == expected { 0 } else { 1 })
}

/// The central function selected by `--central`.
fn central_function(g: &CoxeterGroup, alg: &Arc<Algebra>, kappa: Kappa, nu: Option<&[Cyclotomic]>, source: &str) -> Result<CentralFunction, CliError> {
    let nv = nvars(g);
    match CentralSource::parse(source) {
        CentralSource::Index(k) => {
            let basis: Vec<CentralFunction> = match nu {
                Some(point) => build_glc(g, kappa)
                    .solution_basis(point)?
                    .into_iter()
                    .map(|b| CentralFunction { values: b.into_iter().map(|c| NuPoly::constant(c, nv)).collect() })
                    .collect(),
                None => solve_symbolic(g, kappa)?,
            };
            if k == 0 || k > basis.len() {
                return Err(CliError::Usage(format!("--central {k}: the solution space has dimension {}", basis.len())));
            }
            Ok(basis.into_iter().nth(k - 1).expect("index checked"))
        }
        CentralSource::File(path) => {
            let text = std::fs::read_to_string(&path)?;
            let mut values = Vec::new();
            for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                let x = expr_element(line, alg)?;
                values.push(scalar_part(&x, g).ok_or_else(|| CliError::Usage(format!("{}: `{line}` is not a scalar", path.display())))?);
            }
            if values.len() != g.classes().len() {
                return Err(CliError::Usage(format!("{}: expected {} class values, found {}", path.display(), g.classes().len(), values.len())));
            }
            Ok(CentralFunction { values })
        }
    }
}

fn scalar_part(x: &AlgebraElement, g: &CoxeterGroup) -> Option<NuPoly> {
    let mut value = NuPoly::zero(nvars(g));
    for (m, c) in x.terms() {
        if m.g != g.identity() || m.e0.iter().chain(&m.e1).any(|&e| e != 0) {
            return None;
        }
        value = c.clone();
    }
    Some(value)
}

#[allow(clippy::too_many_arguments)]
fn trace(common: &Common, system: &str, kappa: Kappa, nu: Option<&str>, central: &str, expr: &str, strategy: Option<u64>, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_group(system)?;
    let alg = Algebra::new(Arc::clone(&g));
    let point = nu.map(|t| parse_nu(t, nvars(&g))).transpose()?;
    let f = central_function(&g, &alg, kappa, point.as_deref(), central)?;
    let x = expr_element(expr, &alg)?;
    let mut tr = KappaTrace::new(Arc::clone(&alg), kappa, f, point.clone())?;
    if let Some(seed) = strategy {
        tr = tr.with_strategy(Strategy::Randomized(seed));
    }
    let mut value = tr.evaluate(&x)?;
    if let Some(p) = &point {
        value = value.specialize(p)?;
    }
    if common.json {
        let v = json!({
            "system": g.root_system().name(),
            "kappa": kappa.to_string(),
            "expr": expr,
            "value": poly_json(&value, common),
        });
        emit_json(out, &v)?;
    } else {
        writeln!(out, "{}", show_poly(&value, common))?;
    }
    Ok(0)
}

fn gram(common: &Common, system: &str, kappa: Kappa, nu: &str, max_degree: usize, central: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_group(system)?;
    let alg = Algebra::new(Arc::clone(&g));
    let point = parse_nu(nu, nvars(&g))?;
    let f = central_function(&g, &alg, kappa, Some(&point), central)?;
    let tr = KappaTrace::new(alg, kappa, f, Some(point))?;
    let mut rows = Vec::new();
    for d in 0..=max_degree {
        let report = bilinear_gram(&tr, d)?;
        rows.push((d, report.dimension(), report.rank));
    }
    if common.json {
        let v = json!({
            "system": g.root_system().name(),
            "kappa": kappa.to_string(),
            "rows": rows.iter().map(|&(d, n, r)| json!({ "max_degree": d, "dimension": n, "rank": r, "degenerate": r < n })).collect::<Vec<_>>(),
        });
        emit_json(out, &v)?;
    } else {
        writeln!(out, "{:>6} {:>10} {:>6}", "degree", "dimension", "rank")?;
        for (d, n, r) in rows {
            writeln!(out, "{d:>6} {n:>10} {r:>6}{}", if r < n { "  degenerate" } else { "" })?;
        }
    }
    Ok(0)
}

fn dunkl(common: &Common, system: &str, max_degree: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = load_group(system)?;
    let report = calogero_check(g, max_degree)?;
    if common.json {
        let v = json!({
            "system": report.system,
            "max_degree": report.max_degree,
            "checks": report.checks.iter().map(|c| json!({ "name": c.name, "cases": c.cases, "passed": c.passed(), "failures": c.failures })).collect::<Vec<_>>(),
        });
        emit_json(out, &v)?;
    } else {
        writeln!(out, "{} Dunkl representation, polynomials of degree <= {}", report.system, report.max_degree)?;
        for c in &report.checks {
            match c.failures.first() {
                None => writeln!(out, "PASS {} ({} cases)", c.name, c.cases)?,
                Some(first) => writeln!(out, "FAIL {} ({} of {} cases): {first}", c.name, c.failures.len(), c.cases)?,
            }
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuiteStatus {
    Passed(String),
    Failed(String),
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub system: String,
    pub suites: Vec<(String, SuiteStatus)>,
}

impl VerifyReport {
    /// The first failing suite and its message.
    pub fn first_failure(&self) -> Option<(&str, &str)> {
        self.suites.iter().find_map(|(name, s)| match s {
            SuiteStatus::Failed(msg) => Some((name.as_str(), msg.as_str())),
            _ => None,
        })
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.first_failure().is_some())
    }

    fn write(&self, common: &Common, out: &mut dyn Write) -> Result<(), CliError> {
        if common.json {
            let suites: Vec<Value> = self
                .suites
                .iter()
                .map(|(name, s)| match s {
                    SuiteStatus::Passed(d) => json!({ "suite": name, "status": "pass", "detail": d }),
                    SuiteStatus::Failed(d) => json!({ "suite": name, "status": "fail", "detail": d }),
                    SuiteStatus::Skipped(d) => json!({ "suite": name, "status": "skipped", "detail": d }),
                })
                .collect();
            let first = self.first_failure().map(|(n, m)| format!("{n}: {m}"));
            return emit_json(out, &json!({ "system": self.system, "suites": suites, "first_failure": first }));
        }
        for (name, s) in &self.suites {
            match s {
                SuiteStatus::Passed(d) => writeln!(out, "PASS {name}: {d}")?,
                SuiteStatus::Failed(d) => writeln!(out, "FAIL {name}: {d}")?,
                SuiteStatus::Skipped(d) => writeln!(out, "SKIP {name}: {d}")?,
            }
        }
        match self.first_failure() {
            Some((n, m)) => writeln!(out, "first failing invariant: {n}: {m}")?,
            None => writeln!(out, "all suites passed")?,
        }
        Ok(())
    }
}

/// Largest group for which the symbolic algebra suites run.
const ALGEBRA_SUITE_LIMIT: usize = 12;
/// Largest group for which the Dunkl suite runs.
const DUNKL_SUITE_LIMIT: usize = 24;

type SuiteResult = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs every invariant suite on one system. Panics inside a suite count as
/// failures of that suite.
pub fn verify(system: &str, seed: u64) -> Result<VerifyReport, CliError> {
    let rs = RootSystem::build(system)?;
    let mut suites = Vec::new();
    let status = |r: std::thread::Result<SuiteResult>| match r {
        Ok(Ok(d)) => SuiteStatus::Passed(d),
        Ok(Err(e)) => SuiteStatus::Failed(e),
        Err(_) => SuiteStatus::Failed("panicked".into()),
    };
    let push = |suites: &mut Vec<(String, SuiteStatus)>, name: &str, s: SuiteStatus| suites.push((name.to_string(), s));
    push(
        &mut suites,
        "rootsystem",
        status(Ok(rs.validate().map(|r| format!("{} roots, {} reflections, {} reflection classes", r.roots, r.reflections, r.classes)).map_err(|e| e.to_string()))),
    );
    let g = Arc::new(CoxeterGroup::generate(rs)?);
    push(&mut suites, "coxgroup", status(catch_unwind(|| group_suite(&g))));
    push(&mut suites, "glc", status(catch_unwind(|| glc_suite(&g, seed))));
    let small = g.order() <= ALGEBRA_SUITE_LIMIT;
    for (name, suite) in [("algebra", algebra_suite as fn(&Arc<CoxeterGroup>, u64) -> SuiteResult), ("traceval", trace_suite)] {
        if small {
            push(&mut suites, name, status(catch_unwind(AssertUnwindSafe(|| suite(&g, seed)))));
        } else {
            push(&mut suites, name, SuiteStatus::Skipped(format!("|W| = {} exceeds {ALGEBRA_SUITE_LIMIT}", g.order())));
        }
    }
    if g.order() <= DUNKL_SUITE_LIMIT {
        push(&mut suites, "dunkl", status(catch_unwind(AssertUnwindSafe(|| dunkl_suite(&g)))));
    } else {
        push(&mut suites, "dunkl", SuiteStatus::Skipped(format!("|W| = {} exceeds {DUNKL_SUITE_LIMIT}", g.order())));
    }
    Ok(VerifyReport { system: g.root_system().name().to_string(), suites })
}

fn group_suite(g: &CoxeterGroup) -> SuiteResult {
    let total: usize = g.classes().iter().map(|c| c.size()).sum();
    check(total == g.order(), || format!("class sizes sum to {total}, |W| = {}", g.order()))?;
    if let Some(kind) = g.root_system().kind() {
        let expected = kind.classical_order();
        check(expected == g.order() as u64, || format!("|W| = {}, expected {expected}", g.order()))?;
    }
    for c in g.classes() {
        let x = c.representative;
        check(g.pow(x, c.order) == g.identity(), || format!("class representative of order {} does not satisfy x^order = 1", c.order))?;
        check(g.eigen_multiplicity(x, Kappa::Plus) == c.e_plus, || "E+ disagrees with the eigenspace".to_string())?;
    }
    let (t, st) = (g.counts(Kappa::Plus), g.counts(Kappa::Minus));
    if g.has_minus_identity() {
        check(t == st, || format!("-I present but T = {t}, ST = {st}"))?;
    }
    Ok(format!("|W| = {}, T = {t}, ST = {st}", g.order()))
}

fn glc_suite(g: &CoxeterGroup, seed: u64) -> SuiteResult {
    let samples = nu_samples(nvars(g), seed);
    for kappa in [Kappa::Plus, Kappa::Minus] {
        let sys = build_glc(g, kappa);
        let expected = g.counts(kappa);
        for nu in &samples {
            let basis = sys.solution_basis(nu).map_err(|e| format!("kappa {kappa}: {e}"))?;
            check(basis.len() == expected, || format!("kappa {kappa}: nullity {} differs from {expected} eigenvalue-free classes", basis.len()))?;
            for b in &basis {
                let res = sys.residuals(b, nu).map_err(|e| e.to_string())?;
                check(res.iter().all(Cyclotomic::is_zero), || format!("kappa {kappa}: nonzero residual"))?;
            }
        }
    }
    if g.has_minus_identity() {
        let nu = samples.last().expect("samples");
        let plus = build_glc(g, Kappa::Plus);
        for b in build_glc(g, Kappa::Minus).solution_basis(nu).map_err(|e| e.to_string())? {
            let moved = klein_transport(&b, g).map_err(|e| e.to_string())?;
            let res = plus.residuals(&moved, nu).map_err(|e| e.to_string())?;
            check(res.iter().all(Cyclotomic::is_zero), || "Klein transport leaves a nonzero residual".to_string())?;
        }
    }
    Ok(format!("nullities match at {} coupling samples for both kappa", samples.len()))
}

fn algebra_suite(g: &Arc<CoxeterGroup>, seed: u64) -> SuiteResult {
    let alg = Algebra::new(Arc::clone(g));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 5;
    for _ in 0..trials {
        let x = alg.random_homogeneous(&mut rng, 1, 2, true);
        let y = alg.random_homogeneous(&mut rng, 1, 2, true);
        let z = alg.random_homogeneous(&mut rng, 2, 2, true);
        let left = alg.multiply(&alg.multiply(&x, &y).map_err(|e| e.to_string())?, &z).map_err(|e| e.to_string())?;
        let right = alg.multiply(&x, &alg.multiply(&y, &z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        check(left.sub(&right).map_err(|e| e.to_string())?.is_zero(), || format!("associativity fails on {x}, {y}, {z}"))?;
    }
    Ok(format!("associativity on {trials} random triples"))
}

fn trace_suite(g: &Arc<CoxeterGroup>, seed: u64) -> SuiteResult {
    let alg = Algebra::new(Arc::clone(g));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut brackets = 0;
    for kappa in [Kappa::Plus, Kappa::Minus] {
        for central in solve_symbolic(g, kappa).map_err(|e| e.to_string())? {
            let tr = KappaTrace::new(Arc::clone(&alg), kappa, central, None).map_err(|e| e.to_string())?;
            let report = verify_trace_property(&tr, 8, 2, &mut rng).map_err(|e| e.to_string())?;
            check(report.passed(), || format!("kappa {kappa}: trace property: {}", report.violations.join("; ")))?;
            brackets += report.pairs;
            let other = tr.with_strategy(Strategy::Randomized(seed));
            let odd = tr.reducing_odd();
            for _ in 0..3 {
                let x = alg.random_homogeneous(&mut rng, 2, 2, true);
                let a = tr.evaluate(&x).map_err(|e| e.to_string())?;
                let b = other.evaluate(&x).map_err(|e| e.to_string())?;
                check(a == b, || format!("kappa {kappa}: reduction strategies disagree on {x}"))?;
                let y = alg.random_homogeneous(&mut rng, 1, 2, true);
                check(odd.evaluate(&y).map_err(|e| e.to_string())?.is_zero(), || format!("kappa {kappa}: odd element {y} has nonzero trace"))?;
            }
        }
    }
    Ok(format!("{brackets} brackets vanish; strategies agree; odd elements vanish"))
}

fn dunkl_suite(g: &Arc<CoxeterGroup>) -> SuiteResult {
    let report = calogero_check(Arc::clone(g), 3).map_err(|e| e.to_string())?;
    for c in &report.checks {
        check(c.passed(), || format!("{}: {}", c.name, c.failures.first().cloned().unwrap_or_default()))?;
    }
    Ok(format!("{} identities on polynomials of degree <= 3", report.checks.len()))
}

/// One row of the dimension table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub system: String,
    pub order: usize,
    pub classes: usize,
    pub traces: usize,
    pub supertraces: usize,
    pub klein: bool,
    /// GLC nullities for κ = +1 at the sampled ν.
    pub nullity_plus: Vec<usize>,
    /// GLC nullities for κ = −1 at the sampled ν.
    pub nullity_minus: Vec<usize>,
}

impl TableRow {
    /// Whether every sampled nullity equals the eigenvalue census.
    pub fn agrees(&self) -> bool {
        self.nullity_plus.iter().all(|&n| n == self.traces) && self.nullity_minus.iter().all(|&n| n == self.supertraces)
    }
}

pub const STANDARD_SYSTEMS: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "G2", "F4", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "I2(9)", "I2(10)", "I2(11)", "I2(12)", "H3", "H4",
];

pub fn table_row(system: &str, seed: u64) -> Result<TableRow, CliError> {
    let g = load_group(system)?;
    let samples = nu_samples(nvars(&g), seed);
    let nullities = |kappa| -> Result<Vec<usize>, CliError> {
        let sys = build_glc(&g, kappa);
        samples.iter().map(|nu| Ok(sys.nullity(nu)?)).collect()
    };
    Ok(TableRow {
        system: g.root_system().name().to_string(),
        order: g.order(),
        classes: g.classes().len(),
        traces: g.counts(Kappa::Plus),
        supertraces: g.counts(Kappa::Minus),
        klein: g.has_minus_identity(),
        nullity_plus: nullities(Kappa::Plus)?,
        nullity_minus: nullities(Kappa::Minus)?,
    })
}

fn table(common: &Common, args: &TableArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let systems: Vec<String> = if args.all || args.systems.is_empty() {
        STANDARD_SYSTEMS.iter().map(|s| s.to_string()).collect()
    } else {
        args.systems.clone()
    };
    let rows = systems.iter().map(|s| table_row(s, common.seed)).collect::<Result<Vec<_>, _>>()?;
    let all_agree = rows.iter().all(TableRow::agrees);
    if common.json {
        let v: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "system": r.system, "order": r.order, "classes": r.classes, "traces": r.traces, "supertraces": r.supertraces,
                    "klein": r.klein, "nullity_plus": r.nullity_plus, "nullity_minus": r.nullity_minus, "agree": r.agrees(),
                })
            })
            .collect();
        emit_json(out, &json!({ "seed": common.seed, "rows": v }))?;
    } else {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        writeln!(out, "{:<8} {:>6} {:>7} {:>3} {:>3} {:>6}  {:<12} {:<12} agree", "system", "|W|", "classes", "T", "ST", "Klein", "GLC(+1)", "GLC(-1)")?;
        for r in &rows {
            writeln!(
                out,
                "{:<8} {:>6} {:>7} {:>3} {:>3} {:>6}  {:<12} {:<12} {}",
                r.system,
                r.order,
                r.classes,
                r.traces,
                r.supertraces,
                if r.klein { "yes" } else { "no" },
                join(&r.nullity_plus),
                join(&r.nullity_minus),
                if r.agrees() { "yes" } else { "NO" }
            )?;
        }
        writeln!(out, "GLC nullities at nu = 0 and three samples from seed {}", common.seed)?;
    }
    Ok(if all_agree { 0 } else { 1 })
}
