use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use hypercurve_core::arith::Integer;
use hypercurve_core::curvefile::{Curve, CurveFile};
use hypercurve_core::descent::witness_ideal;
use hypercurve_core::field::{make_extension, Rationals};
use hypercurve_core::hypercircle::{
    hypercircle_degree_field, hypercircle_ideal, points_at_infinity, primitive_infinity_point,
    unit_to_hypercircle, LinearFraction,
};
use hypercurve_core::parse::parse;
use hypercurve_core::quadfields::{conic_fields, verify_pairwise_distinct, ConicSpec, Method};
use hypercurve_core::reparam::{optimal_affine_reparametrize, Status};
use hypercurve_core::report::Report;
use hypercurve_core::{Error, ExecMode, Result, Settings};

/// Optimal affine reparametrization of rational curves over number fields,
/// and quadratic fields of parametrization for conics.
#[derive(Parser, Debug)]
#[command(name = "hypercurve", version)]
struct Cli {
    /// Maximum number of S-pairs per Gröbner basis computation.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Print the JSON report on stdout (the summary goes to stderr).
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    /// Run every stage on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimal affine reparametrization of the curve in FILE.
    Reparam { file: PathBuf },
    /// Witness ideal of the curve in FILE.
    Witness { file: PathBuf },
    /// Points at infinity of the witness variety of the curve in FILE.
    Infinity { file: PathBuf },
    /// Hypercircle of a unit (a t + b)/(c t + d) over Q(a).
    Hypercircle {
        /// Minimal polynomial of `a` in `x`.
        #[arg(long)]
        minpoly: String,
        /// The unit, in `t` and `a`.
        #[arg(long)]
        unit: String,
    },
    /// Pairwise distinct quadratic fields of parametrization of a x^2 + b y^2 + c.
    #[command(name = "conic-fields", allow_negative_numbers = true)]
    ConicFields {
        a: Integer,
        b: Integer,
        c: Integer,
        #[arg(long, value_enum, default_value_t = MethodArg::Prime)]
        method: MethodArg,
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Prime,
    Crt,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Reparam { .. } => "reparam",
            Command::Witness { .. } => "witness",
            Command::Infinity { .. } => "infinity",
            Command::Hypercircle { .. } => "hypercircle",
            Command::ConicFields { .. } => "conic-fields",
        }
    }
}

struct Clock {
    start: Instant,
    laps: BTreeMap<String, f64>,
}

impl Clock {
    fn new() -> Self {
        Clock {
            start: Instant::now(),
            laps: BTreeMap::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        let ms = self.start.elapsed().as_secs_f64() * 1e3;
        let prev: f64 = self.laps.values().sum();
        self.laps.insert(name.to_string(), ((ms - prev) * 1e3).round() / 1e3);
    }
}

/// Reads a curve file; its settings apply unless given on the command line.
fn load(file: &PathBuf, cli: &Cli, settings: &Settings) -> Result<(Curve, Settings)> {
    let src = std::fs::read_to_string(file)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", file.display())))?;
    let parsed = CurveFile::parse(&src)?;
    let mut settings = parsed.settings(settings);
    if let Some(b) = cli.budget {
        settings.pair_budget = b;
    }
    Ok((parsed.load(&settings)?, settings))
}

fn run(cli: &Cli, settings: &Settings, clock: &mut Clock) -> Result<Report> {
    match &cli.command {
        Command::Reparam { file } => {
            let (curve, settings) = load(file, cli, settings)?;
            clock.lap("load");
            let rep = optimal_affine_reparametrize(&curve.phi, &settings)?;
            clock.lap("reparametrize");
            Ok(Report::reparam(&curve.field, &rep))
        }
        Command::Witness { file } => {
            let (curve, settings) = load(file, cli, settings)?;
            clock.lap("load");
            let (ideal, _) = witness_ideal(&curve.phi, &curve.field, &settings)?;
            let dim = ideal.dimension(&settings)?;
            clock.lap("witness");
            Ok(Report::witness(&curve.field, &ideal, dim))
        }
        Command::Infinity { file } => {
            let (curve, settings) = load(file, cli, settings)?;
            clock.lap("load");
            let (ideal, _) = witness_ideal(&curve.phi, &curve.field, &settings)?;
            let dim = ideal.dimension(&settings)?;
            clock.lap("witness");
            let points = points_at_infinity(&ideal, &curve.field, &settings)?;
            clock.lap("infinity");
            Ok(Report::infinity(&curve.field, &ideal, &points, dim))
        }
        Command::Hypercircle { minpoly, unit } => {
            let m = parse(minpoly)?.to_poly(&Rationals, &["x"])?;
            let field = make_extension(&Rationals, &m.to_unipoly(0).expect("univariate"), "a", settings)?;
            let f = parse(unit)?.to_ratfun(&field, "t", &[("a", field.generator())])?;
            let u = LinearFraction::from_ratfun(&f)?;
            clock.lap("load");
            let psi = unit_to_hypercircle(&u, &field)?;
            let ideal = hypercircle_ideal(&u, &field, settings)?;
            let points = points_at_infinity(&ideal, &field, settings)?;
            let r = hypercircle_degree_field(&field, &points, settings)?.degree();
            clock.lap("hypercircle");
            let primitive = primitive_infinity_point(&field);
            Ok(Report::hypercircle(&field, &f, &psi, &primitive, &ideal, &points, r))
        }
        Command::ConicFields {
            a,
            b,
            c,
            method,
            count,
        } => {
            let conic = ConicSpec::new(a.clone(), b.clone(), c.clone())?;
            let method = match method {
                MethodArg::Prime => Method::Prime,
                MethodArg::Crt => Method::Crt,
            };
            let fields = conic_fields(&conic, method, *count, settings)?;
            clock.lap("generate");
            let slopes: Vec<Integer> = fields.iter().map(|f| f.n.clone()).collect();
            let distinct = verify_pairwise_distinct(a, b, &slopes, settings);
            clock.lap("verify");
            Ok(Report::conic(&conic, method, &fields, distinct))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut settings = Settings::default();
    if let Some(b) = cli.budget {
        settings.pair_budget = b;
    }
    if cli.sequential {
        settings.exec = ExecMode::Sequential;
    }
    let mut clock = Clock::new();
    let (mut report, code) = match run(&cli, &settings, &mut clock) {
        Ok(r) => {
            let code = if r.status == Status::Fail.to_string() { 1 } else { 0 };
            (r, code)
        }
        Err(e) => (Report::error(cli.command.name(), &e), e.exit_code()),
    };
    if cli.timings {
        clock.lap("report");
        let total = (clock.start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
        clock.laps.insert("total".to_string(), total);
        report.timings = Some(clock.laps);
    }
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
        eprintln!("{}", report.summary());
    } else {
        println!("{}", report.summary());
        if let Some(t) = &report.timings {
            for (k, v) in t {
                println!("  time {k}: {v:.3} ms");
            }
        }
    }
    ExitCode::from(code as u8)
}
