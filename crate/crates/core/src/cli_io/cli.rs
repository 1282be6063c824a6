use std::io::Read;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::{analyze, emit_report, frame_echo, PipelineError, Report, Stage};
use super::spec_format::{parse_algebra_spec, ParseErrorKind};
use crate::exact_field::Rational;
use crate::models_dynamics::{
    builtin_model, central_flow_period, cocycle_defect, diagonal_flow_differential, heis_reduce_mod_lattice,
    verify_anosov_estimate, BuiltinModel, HeisPoint, REL_TOL_COMPOSED, REL_TOL_SINGLE,
};
use crate::mutation::run_mutation_suite;
use crate::selftest::{render_results, run_selftest};

#[derive(Parser, Debug)]
#[command(name = "cartanpath", version, about = "Cartan connection and curvature of left-invariant strict path structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Spec file; read from stdin when absent.
    #[arg(short = 'f', long = "file")]
    file: Option<PathBuf>,
    /// Apply the structure-group scaling (e1, e2, e3) -> (b e1, e2/b, e3) first.
    #[arg(long = "b", allow_hyphen_values = true, value_parser = parse_rational)]
    b: Option<Rational>,
    /// Multiply the contact form by c first.
    #[arg(long = "c", allow_hyphen_values = true, value_parser = parse_rational)]
    c: Option<Rational>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a spec and check Jacobi and the frame conditions.
    Validate(SpecArgs),
    /// Solve for the normal connection.
    Connection(SpecArgs),
    /// Connection plus curvature coordinates.
    Curvature(SpecArgs),
    /// Curvature, classification and induced metric.
    Classify(SpecArgs),
    /// Mutation checks for a curvature coordinate R.
    Mutate {
        #[arg(long = "R", allow_hyphen_values = true, value_parser = parse_rational)]
        r: Rational,
        /// Group parameters for the adjoint check.
        #[arg(long = "a", value_delimiter = ',', value_parser = parse_rational, default_values = ["1", "4", "9/2"])]
        a: Vec<Rational>,
    },
    /// Built-in models.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
    /// Dynamics checks.
    Flow {
        #[command(subcommand)]
        action: FlowAction,
    },
    /// Run every acceptance check.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum ModelsAction {
    List,
    Show { name: String },
}

#[derive(Subcommand, Debug)]
enum FlowAction {
    /// Stable and unstable norms of the diagonal flow differential.
    Diag {
        #[arg(long = "t", value_delimiter = ',', required = true, allow_hyphen_values = true)]
        t: Vec<f64>,
    },
    /// Period of the central flow on the integer Heisenberg quotient.
    Central {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

/// Exit code and captured output of one invocation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutcome {
    fn ok(stdout: String) -> Self {
        CliOutcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        CliOutcome { code, stdout: String::new(), stderr }
    }
}

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn read_input(file: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, CliOutcome> {
    match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliOutcome::fail(EXIT_USAGE, format!("error: cannot read {}: {e}\n", path.display()))),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| CliOutcome::fail(EXIT_USAGE, format!("error: cannot read stdin: {e}\n")))?;
            Ok(s)
        }
    }
}

fn pipeline_failure(e: PipelineError) -> CliOutcome {
    CliOutcome::fail(EXIT_FAILURE, format!("error: {e}\n"))
}

fn run_spec(command: &str, args: &SpecArgs, stage: Stage, stdin: &mut dyn Read) -> CliOutcome {
    let text = match read_input(&args.file, stdin) {
        Ok(t) => t,
        Err(out) => return out,
    };
    let spec = match parse_algebra_spec(&text) {
        Ok(s) => s,
        Err(e) => {
            let code = match e.kind {
                ParseErrorKind::Jacobi(_) | ParseErrorKind::Frame(_) => EXIT_FAILURE,
                _ => EXIT_USAGE,
            };
            return CliOutcome::fail(code, format!("error: {e}\n"));
        }
    };
    let mut report = Report::new(command);
    report.input = Some(spec.canonical());
    match analyze(&mut report, &spec.frame, stage, args.b.as_ref(), args.c.as_ref()) {
        Ok(()) => CliOutcome::ok(emit_report(&report)),
        Err(e) => pipeline_failure(e),
    }
}

fn run_mutate(r: &Rational, a: &[Rational]) -> CliOutcome {
    if r.is_zero() {
        return CliOutcome::fail(EXIT_FAILURE, "error: R = 0 is the trivial mutation; λ is undefined\n".into());
    }
    let suite = match run_mutation_suite(r, a) {
        Ok(s) => s,
        Err(e) => return CliOutcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    };
    let ok = suite.is_ok();
    let mut report = Report::new("mutate");
    report.mutation = Some(suite);
    let out = emit_report(&report);
    if ok {
        CliOutcome::ok(out)
    } else {
        CliOutcome { code: EXIT_FAILURE, stdout: out, stderr: "error: mutation checks failed\n".into() }
    }
}

fn run_models(action: &ModelsAction) -> CliOutcome {
    match action {
        ModelsAction::List => {
            let mut report = Report::new("models list");
            report.models = Some(BuiltinModel::NAMES.iter().map(|s| s.to_string()).collect());
            CliOutcome::ok(emit_report(&report))
        }
        ModelsAction::Show { name } => {
            let model: BuiltinModel = match name.parse() {
                Ok(m) => m,
                Err(e) => return CliOutcome::fail(EXIT_USAGE, format!("error: {e}\n")),
            };
            let (_, frame) = match builtin_model(&model) {
                Ok(x) => x,
                Err(e) => return CliOutcome::fail(EXIT_FAILURE, format!("error: {e}\n")),
            };
            let mut report = Report::new("models show");
            report.model = Some(model.to_string());
            report.input = Some(frame_echo(&frame));
            match analyze(&mut report, &frame, Stage::Classify, None, None) {
                Ok(()) => CliOutcome::ok(emit_report(&report)),
                Err(e) => pipeline_failure(e),
            }
        }
    }
}

fn run_flow_diag(ts: &[f64]) -> CliOutcome {
    let mut rows = Vec::new();
    for &t in ts {
        match diagonal_flow_differential(t) {
            Ok((s, u)) => rows.push(json!({ "t": t, "stable": s, "unstable": u })),
            Err(e) => return CliOutcome::fail(EXIT_USAGE, format!("error: {e}\n")),
        }
    }
    let nonneg: Vec<f64> = ts.iter().copied().filter(|t| *t >= 0.0).collect();
    let anosov = if nonneg.is_empty() { None } else { verify_anosov_estimate(&nonneg).ok() };
    let mut cocycle_ok = true;
    for pair in ts.windows(2) {
        match cocycle_defect(pair[0], pair[1]) {
            Ok(d) => cocycle_ok &= d < REL_TOL_COMPOSED,
            Err(e) => return CliOutcome::fail(EXIT_USAGE, format!("error: {e}\n")),
        }
    }
    let ok = anosov.as_ref().map_or(true, |a| a.ok) && cocycle_ok;
    let mut report = Report::new("flow diag");
    report.dynamics = Some(json!({
        "flow": "diagonal",
        "estimates": rows,
        "anosov": anosov,
        "cocycle_ok": cocycle_ok,
        "tolerance_single": REL_TOL_SINGLE,
        "tolerance_composed": REL_TOL_COMPOSED,
        "ok": ok,
    }));
    let out = emit_report(&report);
    if ok {
        CliOutcome::ok(out)
    } else {
        CliOutcome { code: EXIT_FAILURE, stdout: out, stderr: "error: flow estimate failed\n".into() }
    }
}

/// Random rational point with small denominators.
pub fn random_heis_point(rng: &mut ChaCha8Rng) -> HeisPoint {
    let mut coord = || Rational::frac(rng.gen_range(-50..=50), rng.gen_range(1..=12));
    HeisPoint::new(coord(), coord(), coord())
}

fn run_flow_central(seed: u64, count: usize) -> CliOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut all_one = true;
    for _ in 0..count {
        let g = random_heis_point(&mut rng);
        let period = central_flow_period(&g);
        all_one &= period.is_one();
        let (_, reduced) = heis_reduce_mod_lattice(&g);
        rows.push(json!({ "basepoint": g, "reduced": reduced, "period": period }));
    }
    let mut report = Report::new("flow central");
    report.dynamics = Some(json!({ "flow": "central", "seed": seed, "samples": rows, "all_periods_one": all_one }));
    let out = emit_report(&report);
    if all_one {
        CliOutcome::ok(out)
    } else {
        CliOutcome { code: EXIT_FAILURE, stdout: out, stderr: "error: unexpected period\n".into() }
    }
}

fn run_selftest_command() -> CliOutcome {
    let results = run_selftest();
    let text = render_results(&results);
    if results.iter().all(|r| r.ok) {
        CliOutcome::ok(text)
    } else {
        CliOutcome { code: EXIT_FAILURE, stdout: text, stderr: "error: selftest failed\n".into() }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn cli_dispatch<I, T>(argv: I, stdin: &mut dyn Read) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutcome::ok(text),
                _ => CliOutcome::fail(EXIT_USAGE, text),
            };
        }
    };
    match &cli.command {
        Command::Validate(a) => run_spec("validate", a, Stage::Validate, stdin),
        Command::Connection(a) => run_spec("connection", a, Stage::Connection, stdin),
        Command::Curvature(a) => run_spec("curvature", a, Stage::Curvature, stdin),
        Command::Classify(a) => run_spec("classify", a, Stage::Classify, stdin),
        Command::Mutate { r, a } => run_mutate(r, a),
        Command::Models { action } => run_models(action),
        Command::Flow { action: FlowAction::Diag { t } } => run_flow_diag(t),
        Command::Flow { action: FlowAction::Central { seed, count } } => run_flow_central(*seed, *count),
        Command::Selftest => run_selftest_command(),
    }
}
