use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{error::ErrorKind, Parser, Subcommand};

use ks_core::algebra::{center, validate_algebra, HodgeAlgebra};
use ks_core::clifford::{build, format_element, ks_structure, CliffordAlgebra, CliffordError};
use ks_core::construction::{
    construct, e_beta_maps, left_regular, ConstructionError, ConstructionResult,
};
use ks_core::fixture::{builtin, parse_fixture, Backend, Fixture, FromLiteral, BUILTIN_NAMES};
use ks_core::hodge::{validate_weight1, validate_weight2, WeightOneHS};
use ks_core::linalg::unit_vector;
use ks_core::report::{join, ReportBlock};
use ks_core::scalars::{ComplexQuad, FloatComplex, Rational, Scalar, DEFAULT_TOL};

use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONSTRUCTION: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

/// Rendered report and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

impl Outcome {
    fn new(code: i32, output: impl Into<String>) -> Self {
        Outcome {
            code,
            output: output.into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "kuga-satake",
    version,
    about = "Weight-1 Hodge structures from weight-2 Hodge algebras"
)]
struct Cli {
    /// Seed for the polarization search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance of the float backend.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Use the Clifford algebra of the fixture's lattice as the algebra.
    #[arg(long, global = true)]
    clifford: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Validate the Hodge, algebra and weight-1 data of a fixture.
    Validate { fixture: String },
    /// Build C(H) with its induced grading and the Kuga-Satake structure.
    Clifford { fixture: String },
    /// Decompose and build the polarized weight-1 structure.
    Construct { fixture: String },
    /// Center and t-invariant center of the algebra.
    Center { fixture: String },
    /// Maps e_beta from the weight-1 structure of the first fixture to the
    /// one of the second, through the left regular representation.
    Universal { fixture: String, fixture_b: String },
    /// Run every acceptance criterion.
    Selftest,
}

#[derive(Debug, Clone, Copy)]
struct Opts {
    seed: u64,
    tol: f64,
    clifford: bool,
}

/// Parses `argv` (including the program name) and runs the command. `stdin`
/// is read when a fixture argument is `-`.
pub fn run_command<I, T>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
            return Outcome::new(code, e.render().to_string());
        }
    };
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        return Outcome::new(
            EXIT_CONFIG,
            format!("--tol must lie in (0, 1), got {}\n", cli.tol),
        );
    }
    let opts = Opts {
        seed: cli.seed,
        tol: cli.tol,
        clifford: cli.clifford,
    };
    let mut stdin_used = false;
    let mut load = |name: &str| load_fixture(name, stdin, &mut stdin_used);
    let res = match &cli.cmd {
        Cmd::Selftest => return run_selftest(),
        Cmd::Validate { fixture } => load(fixture).and_then(|f| {
            dispatch(
                &f,
                |x| validate::<ComplexQuad>(x, opts),
                |x| validate::<FloatComplex>(x, opts),
            )
        }),
        Cmd::Clifford { fixture } => load(fixture).and_then(|f| {
            dispatch(
                &f,
                |x| clifford::<ComplexQuad>(x, opts),
                |x| clifford::<FloatComplex>(x, opts),
            )
        }),
        Cmd::Construct { fixture } => load(fixture).and_then(|f| {
            dispatch(
                &f,
                |x| construct_cmd::<ComplexQuad>(x, opts),
                |x| construct_cmd::<FloatComplex>(x, opts),
            )
        }),
        Cmd::Center { fixture } => load(fixture).and_then(|f| {
            dispatch(
                &f,
                |x| center_cmd::<ComplexQuad>(x, opts),
                |x| center_cmd::<FloatComplex>(x, opts),
            )
        }),
        Cmd::Universal { fixture, fixture_b } => load(fixture).and_then(|a| {
            let b = load(fixture_b)?;
            if a.backend != b.backend {
                return Err(Outcome::new(
                    EXIT_CONFIG,
                    "both fixtures must use the same backend\n",
                ));
            }
            match a.backend {
                Backend::Exact => universal_cmd::<ComplexQuad>(&a, &b, opts),
                Backend::Float => universal_cmd::<FloatComplex>(&a, &b, opts),
            }
        }),
    };
    match res {
        Ok(o) | Err(o) => o,
    }
}

fn dispatch(
    f: &Fixture,
    exact: impl FnOnce(&Fixture) -> Result<Outcome, Outcome>,
    float: impl FnOnce(&Fixture) -> Result<Outcome, Outcome>,
) -> Result<Outcome, Outcome> {
    match f.backend {
        Backend::Exact => exact(f),
        Backend::Float => float(f),
    }
}

fn load_fixture(name: &str, stdin: &mut dyn Read, used: &mut bool) -> Result<Fixture, Outcome> {
    let text = if BUILTIN_NAMES.contains(&name) {
        return builtin(name)
            .map_err(|e| Outcome::new(EXIT_CONFIG, format!("builtin {name}: {e}\n")));
    } else if name == "-" {
        if *used {
            return Err(Outcome::new(
                EXIT_CONFIG,
                "standard input can only be read once\n",
            ));
        }
        *used = true;
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Outcome::new(EXIT_CONFIG, format!("reading stdin: {e}\n")))?;
        s
    } else {
        std::fs::read_to_string(name)
            .map_err(|e| Outcome::new(EXIT_CONFIG, format!("reading {name}: {e}\n")))?
    };
    parse_fixture(&text).map_err(|e| {
        Outcome::new(
            EXIT_CONFIG,
            format!(
                "parse error: {e}\nviolated invariant: {}\nexit: {EXIT_CONFIG}\n",
                e.field
            ),
        )
    })
}

/// Report text accumulated by a command.
struct Out {
    text: String,
}

impl Out {
    fn new(f: &Fixture, opts: Opts) -> Self {
        let backend = match f.backend {
            Backend::Exact => format!("exact, d = {}", f.d),
            Backend::Float => format!("float, tol = {:e}", opts.tol),
        };
        let mut text = String::new();
        let _ = writeln!(text, "fixture: {}", f.name);
        let _ = writeln!(text, "seed: {}", opts.seed);
        let _ = writeln!(text, "backend: {backend}");
        Out { text }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn block(&mut self, r: &ReportBlock) {
        self.text.push_str(&r.render());
    }

    fn finish(mut self, code: i32) -> Outcome {
        let _ = writeln!(self.text, "exit: {code}");
        Outcome::new(code, self.text)
    }

    fn fail(mut self, code: i32, msg: impl AsRef<str>, invariant: Option<&str>) -> Outcome {
        self.line(msg);
        if let Some(i) = invariant {
            self.line(format!("violated invariant: {i}"));
        }
        self.finish(code)
    }
}

fn first_failure(r: &ReportBlock) -> Option<String> {
    r.failures().first().map(|c| c.name.clone())
}

fn elem<S: Scalar>(x: &[S], clifford: bool) -> String {
    if clifford {
        format_element(x)
    } else {
        join(x)
    }
}

fn clifford_code(e: &CliffordError) -> i32 {
    match e {
        CliffordError::TooLarge(_) => EXIT_CONFIG,
        CliffordError::HodgeRank(_) | CliffordError::Hodge(_) => EXIT_VALIDATION,
        _ => EXIT_CONSTRUCTION,
    }
}

/// Weight-2 validation followed by the algebra: `C(H)` with `--clifford`,
/// otherwise the fixture's algebra block.
fn prepare<S: FromLiteral>(
    f: &Fixture,
    opts: Opts,
    out: &mut Option<Out>,
) -> Result<(HodgeAlgebra<S>, Option<CliffordAlgebra<S>>), Outcome> {
    let o = out.as_mut().expect("report open");
    let hs = match f.hodge::<S>(opts.tol) {
        Ok(h) => h,
        Err(e) => {
            return Err(out.take().expect("open").fail(
                EXIT_VALIDATION,
                format!("invalid Hodge data: {e}"),
                None,
            ))
        }
    };
    let rep = match validate_weight2(&hs) {
        Ok(r) => r,
        Err(e) => {
            return Err(out.take().expect("open").fail(
                EXIT_VALIDATION,
                format!("invalid Hodge data: {e}"),
                None,
            ))
        }
    };
    o.block(&rep);
    if let Some(name) = first_failure(&rep) {
        return Err(out.take().expect("open").fail(
            EXIT_VALIDATION,
            "weight-2 validation failed",
            Some(&name),
        ));
    }
    if opts.clifford {
        if f.algebra.is_some() {
            return Err(out.take().expect("open").fail(
                EXIT_CONFIG,
                "--clifford generates the algebra, but the fixture already has structure constants",
                None,
            ));
        }
        let cl = build(&f.gram, &hs).map_err(|e| {
            out.take()
                .expect("open")
                .fail(clifford_code(&e), e.to_string(), None)
        })?;
        let o = out.as_mut().expect("open");
        o.block(cl.grading_report());
        return Ok((cl.base().clone(), Some(cl)));
    }
    let a = match f.algebra::<S>(opts.tol) {
        Ok(Some(a)) => a,
        Ok(None) => {
            return Err(out.take().expect("open").fail(
                EXIT_CONFIG,
                "the fixture has no algebra block; pass --clifford to use C(H)",
                None,
            ))
        }
        Err(e) => {
            return Err(out.take().expect("open").fail(
                EXIT_VALIDATION,
                format!("invalid algebra data: {e}"),
                None,
            ))
        }
    };
    let rep = validate_algebra(&a);
    let o = out.as_mut().expect("open");
    o.block(&rep);
    if let Some(name) = first_failure(&rep) {
        return Err(out.take().expect("open").fail(
            EXIT_VALIDATION,
            "algebra validation failed",
            Some(&name),
        ));
    }
    Ok((a, None))
}

fn validate<S: FromLiteral>(f: &Fixture, opts: Opts) -> Result<Outcome, Outcome> {
    let mut out = Some(Out::new(f, opts));
    let has_algebra = f.algebra.is_some() || opts.clifford;
    if has_algebra {
        let (a, _) = prepare::<S>(f, opts, &mut out)?;
        if opts.clifford {
            let rep = validate_algebra(&a);
            out.as_mut().expect("open").block(&rep);
            if let Some(name) = first_failure(&rep) {
                return Err(out.take().expect("open").fail(
                    EXIT_VALIDATION,
                    "algebra validation failed",
                    Some(&name),
                ));
            }
        }
    } else {
        let hs = f
            .hodge::<S>(opts.tol)
            .map_err(|e| e.to_string())
            .and_then(|h| validate_weight2(&h).map_err(|e| e.to_string()));
        let rep = match hs {
            Ok(r) => r,
            Err(e) => {
                return Err(out.take().expect("open").fail(
                    EXIT_VALIDATION,
                    format!("invalid Hodge data: {e}"),
                    None,
                ))
            }
        };
        out.as_mut().expect("open").block(&rep);
        if let Some(name) = first_failure(&rep) {
            return Err(out.take().expect("open").fail(
                EXIT_VALIDATION,
                "weight-2 validation failed",
                Some(&name),
            ));
        }
    }
    let mut out = out.expect("open");
    match f.weight1::<S>(opts.tol) {
        Ok(None) => {}
        Ok(Some(w)) => {
            let rep = validate_weight1(&w);
            out.block(&rep);
            if let Some(name) = first_failure(&rep) {
                return Err(out.fail(EXIT_VALIDATION, "weight-1 validation failed", Some(&name)));
            }
        }
        Err(e) => {
            return Err(out.fail(EXIT_VALIDATION, format!("invalid weight-1 data: {e}"), None))
        }
    }
    Ok(out.finish(EXIT_OK))
}

fn clifford<S: FromLiteral>(f: &Fixture, opts: Opts) -> Result<Outcome, Outcome> {
    let opts = Opts {
        clifford: true,
        ..opts
    };
    let mut out = Some(Out::new(f, opts));
    let (a, cl) = prepare::<S>(f, opts, &mut out)?;
    let cl = cl.expect("clifford requested");
    let mut out = out.expect("open");
    let (p, q, r) = a.hs().hodge_numbers();
    out.line(format!(
        "dim C(H) = {}, Hodge numbers ({p}, {q}, {r})",
        a.dim()
    ));
    out.line(format!("eta = {}", format_element(cl.eta())));
    let alg = validate_algebra(&a);
    out.block(&alg);
    let ks = match ks_structure(&cl, opts.tol, true) {
        Ok(k) => k,
        Err(e) => return Err(out.fail(clifford_code(&e), e.to_string(), None)),
    };
    out.block(&ks.report);
    if let Some(e) = &ks.e {
        out.line(format!("e = {}", format_element(e)));
    }
    out.line(format!("dim W = {}", ks.w.dim()));
    let grading = cl.grading_report();
    let failed = first_failure(grading)
        .or_else(|| first_failure(&alg))
        .or_else(|| first_failure(&ks.report));
    match failed {
        None => Ok(out.finish(EXIT_OK)),
        Some(name) => Err(out.fail(EXIT_CONSTRUCTION, "certificate failed", Some(&name))),
    }
}

fn construction_failure(mut out: Out, e: &ConstructionError) -> Outcome {
    if let ConstructionError::Certificate(_, rep) = e {
        out.line(rep);
    }
    out.fail(
        EXIT_CONSTRUCTION,
        format!("construction failed: {e}"),
        e.invariant(),
    )
}

fn describe_result<S: Scalar>(out: &mut Out, res: &ConstructionResult<S>, clifford: bool) {
    out.block(&res.report);
    out.line(format!(
        "rank {}, g = {}, exact = {}",
        res.w1.rank(),
        res.w1.genus(),
        res.w1.is_exact()
    ));
    out.line(format!("dim W = {}", res.w.dim()));
    out.line(format!("a = {}", elem(&res.a, clifford)));
    for b in &res.sigma_data {
        out.line(format!(
            "sigma {}: dim {}, {}, {}",
            b.label,
            b.dim,
            if b.in_m { "in M" } else { "in W+Wbar" },
            if b.exact { "exact" } else { "float" }
        ));
    }
    for n in &res.notes {
        out.line(format!("note: {n}"));
    }
}

fn construct_cmd<S: FromLiteral>(f: &Fixture, opts: Opts) -> Result<Outcome, Outcome> {
    let mut out = Some(Out::new(f, opts));
    let (a, _) = prepare::<S>(f, opts, &mut out)?;
    let mut out = out.expect("open");
    let (dec, res) = match construct(&a, opts.seed, opts.tol) {
        Ok(x) => x,
        Err(e) => return Err(construction_failure(out, &e)),
    };
    out.block(&dec.report);
    out.line(format!(
        "dim W = {}, dim Wbar = {}, dim M = {}",
        dec.w.dim(),
        dec.wbar.dim(),
        dec.m.dim()
    ));
    describe_result(&mut out, &res, opts.clifford);
    let v = res.w1.validate();
    out.block(&v);
    let failed = first_failure(&dec.report)
        .or_else(|| first_failure(&res.report))
        .or_else(|| first_failure(&v));
    match failed {
        None => Ok(out.finish(EXIT_OK)),
        Some(name) => Err(out.fail(EXIT_CONSTRUCTION, "certificate failed", Some(&name))),
    }
}

fn center_cmd<S: FromLiteral>(f: &Fixture, opts: Opts) -> Result<Outcome, Outcome> {
    let mut out = Some(Out::new(f, opts));
    let (a, _) = prepare::<S>(f, opts, &mut out)?;
    let mut out = out.expect("open");
    let c = match center(&a) {
        Ok(c) => c,
        Err(e) => return Err(out.fail(EXIT_CONSTRUCTION, format!("center failed: {e}"), None)),
    };
    let show = |v: &[Rational]| elem(v, opts.clifford);
    out.line(format!("center: dimension {}", c.center.dim()));
    for v in c.center.vectors() {
        out.line(format!("  {}", show(&v)));
    }
    out.line(format!(
        "t-invariant center: dimension {}",
        c.t_invariant.dim()
    ));
    for v in c.t_invariant.vectors() {
        out.line(format!("  {}", show(&v)));
    }
    for (label, comps) in [
        ("component", &c.components),
        ("t-invariant component", &c.plus_components),
    ] {
        for k in comps {
            out.line(format!(
                "{label}: dim {}, minimal polynomial {}, field {}, totally real {}",
                k.dim, k.minpoly, k.is_field, k.totally_real
            ));
        }
    }
    out.line(format!(
        "intersection form on the center: {}",
        c.form_on_center
    ));
    Ok(out.finish(EXIT_OK))
}

fn weight1_of<S: FromLiteral>(
    f: &Fixture,
    opts: Opts,
) -> Result<(HodgeAlgebra<S>, ConstructionResult<S>, Out), Outcome> {
    let mut out = Some(Out::new(f, opts));
    let (a, _) = prepare::<S>(f, opts, &mut out)?;
    let out = out.expect("open");
    match construct(&a, opts.seed, opts.tol) {
        Ok((_, res)) => Ok((a, res, out)),
        Err(e) => Err(construction_failure(out, &e)),
    }
}

fn universal_cmd<S: FromLiteral>(
    fa: &Fixture,
    fb: &Fixture,
    opts: Opts,
) -> Result<Outcome, Outcome> {
    let (a, res_a, mut out) = weight1_of::<S>(fa, opts)?;
    let (_, res_b, out_b) = weight1_of::<S>(fb, opts)?;
    out.line(format!("target: {}", fb.name));
    let Some(b): Option<&WeightOneHS<S>> = res_b.w1.exact() else {
        return Err(out.fail(
            EXIT_CONSTRUCTION,
            "the target weight-1 structure is only known in floats",
            None,
        ));
    };
    drop(out_b);
    let emb = left_regular(&a);
    let m = b.rank();
    let betas: Vec<Vec<Rational>> = (0..m).map(|i| unit_vector(m, i)).collect();
    match e_beta_maps(&a, &res_a, b, &emb, &betas) {
        Ok(rep) => {
            out.block(&rep);
            match first_failure(&rep) {
                None => Ok(out.finish(EXIT_OK)),
                Some(name) => Err(out.fail(EXIT_CONSTRUCTION, "certificate failed", Some(&name))),
            }
        }
        Err(e) => Err(construction_failure(out, &e)),
    }
}

fn run_selftest() -> Outcome {
    let results = selftest::run_all();
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(text, "{r}");
    }
    let ok = results.iter().all(|r| r.passed);
    let code = if ok { EXIT_OK } else { EXIT_CONSTRUCTION };
    let _ = writeln!(
        text,
        "{} of {} criteria passed",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );
    let _ = writeln!(text, "exit: {code}");
    Outcome::new(code, text)
}
