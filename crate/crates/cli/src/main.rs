mod text;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qbd_tails::asymptotics::{full_report, AnalysisReport, Asymptotics};
use qbd_tails::geometry::{Curve, Geometry, CSV_HEADER};
use qbd_tails::kernel::Axis;
use qbd_tails::model::{parse_model, validate, Model, ValidatedModel};
use qbd_tails::netgen::{independent_mm1, jackson_model, x_shaped_example, JacksonParams};
use qbd_tails::numfmt::sig;
use qbd_tails::oracle::{verify_all, Tolerance, MIN_GRID};

const EXIT_INVALID: u8 = 1;
const EXIT_UNSTABLE: u8 = 2;
const EXIT_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "qbd-tails", version, about = "Tail asymptotics of two-dimensional reflecting random walks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stability, domain geometry and the five tail classes of a model.
    Analyze {
        #[command(flatten)]
        io: ModelIo,
    },
    /// Analyze, then check every class against the truncated-chain oracle.
    Verify {
        #[command(flatten)]
        io: ModelIo,
        /// Oracle grid size N (states 0..=N on each axis).
        #[arg(long, default_value_t = 300)]
        n_grid: usize,
        /// Fit window as fractions of N.
        #[arg(long, num_args = 2, value_names = ["A", "B"], default_values_t = [0.3, 0.6])]
        window: Vec<f64>,
        #[arg(long, default_value_t = 5e-3)]
        tol_rate: f64,
        #[arg(long, default_value_t = 0.2)]
        tol_kappa: f64,
        /// Threshold on |b| above which alternation counts as detected.
        #[arg(long, default_value_t = 0.05)]
        tol_periodic: f64,
        /// Directory to receive the five tail sequences as CSV.
        #[arg(long)]
        sequences: Option<PathBuf>,
    },
    /// Write boundary curves and key points as CSV files.
    Plot {
        #[arg(long)]
        model: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Points per curve.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Emit a model file from queueing parameters.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ModelIo {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// Two-node network with simultaneous arrivals and feedback routing.
    Jackson { lambda: f64, mu1: f64, mu2: f64, p: f64, q: f64 },
    /// Two independent M/M/1 queues (rates must sum to at most 1).
    Mm1 { l1: f64, m1: f64, l2: f64, m2: f64 },
    /// Walk with diagonal-only interior moves.
    XShaped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Failure carrying the process exit code.
struct Exit(u8, String);

impl<E: std::fmt::Display> From<E> for Exit {
    fn from(e: E) -> Self {
        Exit(EXIT_INVALID, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let result = match cli.command {
        Command::Analyze { io } => run_analyze(&io),
        Command::Verify { io, n_grid, window, tol_rate, tol_kappa, tol_periodic, sequences } => {
            let tol = Tolerance { rate: tol_rate, kappa: tol_kappa, periodic: tol_periodic };
            run_verify(&io, n_grid, &window, tol, sequences.as_deref())
        }
        Command::Plot { model, out, samples } => run_plot(&model, &out, samples),
        Command::Gen { kind, out } => run_gen(&kind, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var("QBD_TAILS_THREADS") else { return };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring QBD_TAILS_THREADS={v:?}; expected a positive integer"),
    }
}

fn load(path: &Path) -> Result<ValidatedModel, Exit> {
    let text = fs::read_to_string(path).map_err(|e| Exit(EXIT_INVALID, format!("{}: {e}", path.display())))?;
    Ok(validate(parse_model(&text)?)?)
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), Exit> {
    match out {
        Some(p) => fs::write(p, body).map_err(|e| Exit(EXIT_INVALID, format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// Output document: a run header followed by the report body.
fn document(command: &str, report: Value) -> String {
    let run = json!({ "tool": "qbd-tails", "version": env!("CARGO_PKG_VERSION"), "command": command });
    let mut s = serde_json::to_string_pretty(&json!({ "run": run, "report": report })).expect("json");
    s.push('\n');
    s
}

fn report_value(r: &AnalysisReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn run_analyze(io: &ModelIo) -> Result<u8, Exit> {
    let m = load(&io.model)?;
    let report = full_report(&m)?;
    let body = match io.format {
        Format::Json => document("analyze", report_value(&report)),
        Format::Text => text::report(&report),
    };
    emit(io.out.as_deref(), &body)?;
    Ok(if report.stable { 0 } else { EXIT_UNSTABLE })
}

fn grid_window(n: usize, window: &[f64]) -> Result<[usize; 2], Exit> {
    if n < MIN_GRID {
        return Err(Exit(EXIT_INVALID, format!("--n-grid must be at least {MIN_GRID}")));
    }
    let (a, b) = (window[0], window[1]);
    if !(0.0 < a && a < b && b < 1.0) {
        return Err(Exit(EXIT_INVALID, format!("--window needs 0 < A < B < 1, got {a} {b}")));
    }
    Ok([(a * n as f64).round() as usize, (b * n as f64).round() as usize])
}

fn run_verify(io: &ModelIo, n: usize, window: &[f64], tol: Tolerance, sequences: Option<&Path>) -> Result<u8, Exit> {
    let win = grid_window(n, window)?;
    let m = load(&io.model)?;
    let report = full_report(&m)?;
    let Some(classes) = &report.classes else {
        let body = match io.format {
            Format::Json => document("verify", report_value(&report)),
            Format::Text => text::report(&report),
        };
        emit(io.out.as_deref(), &body)?;
        eprintln!("error: model is not stable; nothing to verify");
        return Ok(EXIT_UNSTABLE);
    };
    let (v, seqs) = verify_all(&m, classes, n, Some(win), tol)?;
    if let Some(dir) = sequences {
        fs::create_dir_all(dir).map_err(|e| Exit(EXIT_INVALID, format!("{}: {e}", dir.display())))?;
        for s in &seqs {
            let p = dir.join(format!("{}.csv", s.direction));
            fs::write(&p, s.to_csv()).map_err(|e| Exit(EXIT_INVALID, format!("{}: {e}", p.display())))?;
        }
    }
    let body = match io.format {
        Format::Json => {
            let mut r = report_value(&report);
            r["verification"] = serde_json::to_value(&v).expect("verification serializes");
            document("verify", r)
        }
        Format::Text => format!("{}{}", text::report(&report), text::verification(&v)),
    };
    emit(io.out.as_deref(), &body)?;
    if v.pass {
        return Ok(0);
    }
    for d in v.directions.iter().filter(|d| !d.pass) {
        eprintln!(
            "verification failed: {} (rate gap {}, kappa gap {}, periodic detected {} vs analytic {})",
            d.direction,
            sig(d.rate_gap),
            sig(d.kappa_gap),
            d.periodic_detected,
            d.analytic.periodic
        );
    }
    Ok(EXIT_FAILED)
}

fn run_plot(model: &Path, out: &Path, samples: usize) -> Result<u8, Exit> {
    let m = load(model)?;
    let a = match Asymptotics::new(&m) {
        Ok(a) => a,
        Err(qbd_tails::Error::Unstable) => return Err(Exit(EXIT_UNSTABLE, "model is not stable; nothing to plot".into())),
        Err(e) => return Err(e.into()),
    };
    let g = &a.geometry;
    fs::create_dir_all(out).map_err(|e| Exit(EXIT_INVALID, format!("{}: {e}", out.display())))?;
    for curve in Curve::ALL {
        let s = g.sample_boundary(curve, samples)?;
        let body = format!("{CSV_HEADER}\n{}", s.csv_rows());
        let p = out.join(format!("{}.csv", curve.name()));
        fs::write(&p, body).map_err(|e| Exit(EXIT_INVALID, format!("{}: {e}", p.display())))?;
    }
    let p = out.join("points.csv");
    fs::write(&p, points_csv(g, &a)).map_err(|e| Exit(EXIT_INVALID, format!("{}: {e}", p.display())))?;
    Ok(0)
}

fn points_csv(g: &Geometry, a: &Asymptotics) -> String {
    let mut rows: Vec<(String, [f64; 2])> = Vec::new();
    for (k, tag) in [(Axis::One, 1), (Axis::Two, 2)] {
        rows.push((format!("r{tag}"), g.extreme_r(k)));
        rows.push((format!("max{tag}"), g.extreme_max(k)));
        rows.push((format!("gamma{tag}"), g.gamma_point(k)));
    }
    rows.push(("tau".into(), g.tau));
    if let Some(s) = a.sigma.sigma_plus_1 {
        rows.push(("sigma_plus1".into(), [s, 1.0]));
    }
    if let Some(s) = a.sigma.sigma_plus_2 {
        rows.push(("sigma_plus2".into(), [1.0, s]));
    }
    if let Some(s) = a.sigma.sigma_d {
        rows.push(("sigma_d".into(), [s, s]));
    }
    let mut out = String::from("point,theta1,theta2,u1,u2\n");
    for (name, u) in rows {
        out.push_str(&format!("{name},{},{},{},{}\n", sig(u[0].ln()), sig(u[1].ln()), sig(u[0]), sig(u[1])));
    }
    out
}

fn generated(kind: &GenKind) -> Result<(Model, bool), Exit> {
    Ok(match *kind {
        GenKind::Jackson { lambda, mu1, mu2, p, q } => {
            let params = JacksonParams::new(lambda, mu1, mu2, p, q)?;
            (jackson_model(&params)?, params.is_stable())
        }
        GenKind::Mm1 { l1, m1, l2, m2 } => (independent_mm1(l1, m1, l2, m2)?, true),
        GenKind::XShaped => (x_shaped_example(), true),
    })
}

fn run_gen(kind: &GenKind, out: Option<&Path>) -> Result<u8, Exit> {
    let (model, stable) = generated(kind)?;
    if !stable {
        eprintln!("warning: generated model is unstable");
    }
    emit(out, &model.to_json_text())?;
    Ok(0)
}
