//! Command-line front end for `quandlekit`.
//!
//! [`run`] parses an argument vector and returns a [`CommandResult`]
//! instead of printing, so the binary stays a thin wrapper and tests can
//! drive every subcommand in-process.

mod commands;
mod render;
mod specs;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use quandlekit::{Error, ErrorKind};
use serde_json::{json, Value};

pub use commands::{ColorPayload, DiagPayload, EnumeratePayload, IsoPayload, PolyPayload, TopoCheckPayload, TopoEnumeratePayload};
pub use specs::{parse_quandle_spec, parse_topology_spec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_INDETERMINATE: i32 = 4;

/// Outcome of one invocation. `json` is the machine payload (or an
/// `{"error": ..}` object); `table` is the human rendering, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub json: Value,
    pub table: Option<String>,
    /// `--json` was given.
    pub json_requested: bool,
}

impl CommandResult {
    /// The text the binary writes to stdout.
    pub fn stdout(&self) -> String {
        match (&self.table, self.json_requested) {
            (Some(t), false) => t.clone(),
            _ => serde_json::to_string_pretty(&self.json).expect("values serialize"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "quandlekit", version, about = "Finite, topological and continuous quandles")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite quandle tables
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// Topological quandles on finite spaces
    #[command(subcommand)]
    Topo(TopoCmd),
    /// Alexander structures on the line, circle and diagonal R^n
    #[command(subcommand)]
    Affine(AffineCmd),
    /// Self-distributive bivariate polynomials
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Sampled axiom checks for geometric quandles
    #[command(subcommand)]
    Geom(GeomCmd),
    /// Coloring counts of braid closures
    #[command(subcommand)]
    Color(ColorCmd),
}

#[derive(Subcommand, Debug)]
enum QuandleCmd {
    /// Check a table against the axioms
    Validate {
        /// JSON file: {"n": .., "table": [[..]]} or a bare array of rows
        file: String,
        /// Skip idempotency
        #[arg(long)]
        rack: bool,
    },
    /// Search for an isomorphism between two quandles
    Iso { a: String, b: String },
    /// List one representative per isomorphism class
    Enumerate {
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TopoCmd {
    /// Topological quandle structures on a space, up to isomorphism
    Enumerate {
        /// chain:N, discrete:N, indiscrete:N or a JSON file
        #[arg(long)]
        topology: String,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Check whether a quandle is topological on a space
    Check {
        #[arg(long)]
        topology: String,
        /// dihedral:N, alexander:N:T, trivial:N, pointed-swap or a JSON file
        #[arg(long)]
        quandle: String,
    },
}

#[derive(Subcommand, Debug)]
enum AffineCmd {
    /// Decide isomorphism and emit a certificate for non-isomorphism
    Decide {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "diag")]
        t1: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "diag")]
        t2: Option<String>,
        /// Structures on the circle instead of the line
        #[arg(long, conflicts_with = "diag")]
        circle: bool,
        /// Diagonal R^n structures: entries of t, a colon, entries of s
        #[arg(long, allow_hyphen_values = true)]
        diag: Option<String>,
    },
    /// Re-validate a certificate file
    CheckCert { file: String },
}

#[derive(Subcommand, Debug)]
enum PolyCmd {
    /// Classify a polynomial such as "3*x - 2*y"
    Classify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GeomOp {
    Sphere,
    Rotation,
    Grassmann,
    Trivial,
    Corrupted,
}

#[derive(Subcommand, Debug)]
enum GeomCmd {
    /// Sample the axioms and report maximum residuals
    Check {
        #[arg(long, value_enum)]
        op: GeomOp,
        /// Sphere dimension, or ambient dimension for grassmann
        #[arg(long)]
        dim: Option<usize>,
        /// Subspace rank for grassmann
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Rotation angle in radians, default 2π/3
        #[arg(long)]
        psi: Option<f64>,
        /// Coefficient c in the corrupted op 2(x·y)y − c·x
        #[arg(long, default_value_t = 0.9)]
        factor: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ColorMethod {
    Auto,
    Brute,
    Linear,
}

#[derive(Subcommand, Debug)]
enum ColorCmd {
    /// Count colorings of the closure of a braid
    Count {
        /// Braid word such as "B3: s1 -s2 s1 -s2"
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        quandle: String,
        #[arg(long, value_enum, default_value_t = ColorMethod::Auto)]
        method: ColorMethod,
    },
}

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            let code = match e.kind() {
                K::DisplayHelp | K::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let text = e.render().to_string();
            return CommandResult {
                exit_code: code,
                json: if code == EXIT_OK { json!({ "usage": text }) } else { error_json("usage", &text) },
                table: Some(text),
                json_requested: false,
            };
        }
    };
    let json_requested = cli.json;
    let outcome = match cli.threads {
        Some(0) => Err(Error::InvalidArgument("--threads must be positive".into())),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::InvalidArgument(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match outcome {
        Ok((json, table)) => CommandResult { exit_code: EXIT_OK, json, table, json_requested },
        Err(e) => {
            let (code, kind) = match e.kind() {
                ErrorKind::Input => (EXIT_INPUT, "input"),
                ErrorKind::Guard => (EXIT_GUARD, "guard"),
                ErrorKind::Indeterminate => (EXIT_INDETERMINATE, "indeterminate_precision"),
            };
            let msg = e.to_string();
            CommandResult { exit_code: code, json: error_json(kind, &msg), table: Some(format!("error: {msg}")), json_requested }
        }
    }
}

fn error_json(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

type Output = quandlekit::Result<(Value, Option<String>)>;

fn dispatch(cli: &Cli) -> Output {
    use commands as c;
    match &cli.command {
        Command::Quandle(QuandleCmd::Validate { file, rack }) => c::quandle_validate(file, *rack),
        Command::Quandle(QuandleCmd::Iso { a, b }) => c::quandle_iso(a, b),
        Command::Quandle(QuandleCmd::Enumerate { n, max_n }) => c::quandle_enumerate(*n, *max_n),
        Command::Topo(TopoCmd::Enumerate { topology, max_n }) => c::topo_enumerate(topology, *max_n),
        Command::Topo(TopoCmd::Check { topology, quandle }) => c::topo_check(topology, quandle),
        Command::Affine(AffineCmd::Decide { t1, t2, circle, diag }) => match diag {
            Some(d) => c::affine_diag(d),
            None => c::affine_decide(t1.as_deref().unwrap_or(""), t2.as_deref().unwrap_or(""), *circle),
        },
        Command::Affine(AffineCmd::CheckCert { file }) => c::affine_check_cert(file),
        Command::Poly(PolyCmd::Classify { expr }) => c::poly_classify(expr),
        Command::Geom(GeomCmd::Check { op, dim, rank, trials, tol, psi, factor }) => {
            let seed = cli.seed.unwrap_or(0);
            let psi = psi.unwrap_or(2.0 * std::f64::consts::PI / 3.0);
            match op {
                GeomOp::Sphere => c::geom_sphere(dim.unwrap_or(2), *trials, *tol, seed),
                GeomOp::Rotation => c::geom_rotation(psi, *trials, *tol, seed),
                GeomOp::Grassmann => c::geom_grassmann(*rank, dim.unwrap_or(4), *trials, *tol, seed),
                GeomOp::Trivial => c::geom_trivial(dim.unwrap_or(2), *trials, *tol, seed),
                GeomOp::Corrupted => c::geom_corrupted(dim.unwrap_or(2), *factor, *trials, *tol, seed),
            }
        }
        Command::Color(ColorCmd::Count { braid, quandle, method }) => c::color_count(braid, quandle, *method),
    }
}
