//! Commands of the `polytropes` binary. Each command returns its output and
//! exit code instead of printing, so the binary and the tests share one path.
//!
//! Exit codes: 0 success, 1 verification failure, 2 negative cycle,
//! 3 input is not a Kleene star, 4 enumeration cap exceeded, 5 unreadable
//! or malformed input.

pub mod input;
pub mod json;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use polytropes::cohomology::factorial;
use polytropes::io::render_matrix;
use polytropes::oracle::{OracleConfig, DEFAULT_CAP};
use polytropes::pipeline::{polynomial_triple, PolynomialTriple};
use polytropes::poly::{parse_qpoly, QPoly, VarSet};
use polytropes::tropical::{check_kleene, kleene_star, WeightMatrix};
use polytropes::verify::{verify, verify_supplied, Depth, VerifyReport};
use polytropes::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => core_exit_code(e),
            CliError::Io { .. } | CliError::Usage(_) => 5,
        }
    }
}

fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::NegativeCycle { .. } => 2,
        Error::NotKleene(_) => 3,
        Error::ResourceCap { .. } => 4,
        _ => 5,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "polytropes",
    version,
    about = "Volume, Ehrhart and h*-polynomials of polytropes"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Volume,
    Ehrhart,
    Hstar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DepthArg {
    Quick,
    Full,
}

impl From<DepthArg> for Depth {
    fn from(d: DepthArg) -> Self {
        match d {
            DepthArg::Quick => Depth::Quick,
            DepthArg::Full => Depth::Full,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BatchVerify {
    None,
    Quick,
    Full,
}

#[derive(Clone, Debug, Args)]
pub struct MatrixArg {
    /// File holding the matrix (text rows or a JSON array); `-` reads stdin.
    #[arg(required_unless_present = "matrix")]
    pub input: Option<PathBuf>,
    /// Inline matrix: rows separated by `;`, or a JSON array.
    #[arg(short, long, conflicts_with = "input")]
    pub matrix: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct Enumeration {
    /// Largest lattice box the enumeration may scan.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kleene star (all-pairs shortest paths) of a weight matrix.
    Kleene {
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Volume, Ehrhart or h*-polynomial of the polytrope type of a Kleene star.
    Polynomials {
        #[arg(value_enum)]
        which: Which,
        #[command(flatten)]
        matrix: MatrixArg,
        /// Replace the input by its Kleene star instead of rejecting it.
        #[arg(long)]
        star: bool,
        /// Normalized volume only.
        #[arg(long, conflicts_with = "euclidean")]
        normalized: bool,
        /// Euclidean volume only.
        #[arg(long)]
        euclidean: bool,
        /// Substitute the matrix entries: a polynomial in the dilation factor t.
        #[arg(long, conflicts_with = "evaluate")]
        univariate: bool,
        /// Numbers at the matrix: volume, lattice-point count or h*-vector.
        #[arg(long)]
        evaluate: bool,
        /// Use the K-th dilate of the polytrope.
        #[arg(long, value_name = "K", default_value_t = 1)]
        dilate: i64,
    },
    /// Check the polynomials against lattice-point enumeration.
    Verify {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long)]
        star: bool,
        #[arg(long, value_enum, default_value_t = DepthArg::Quick)]
        depth: DepthArg,
        /// Check this normalized volume polynomial (text or JSON terms)
        /// instead of a freshly computed one.
        #[arg(long, value_name = "FILE")]
        volume: Option<PathBuf>,
        #[command(flatten)]
        enumeration: Enumeration,
    },
    /// Polynomials of every matrix in a file; records are separated by blank lines.
    Batch {
        file: PathBuf,
        #[arg(long)]
        star: bool,
        #[arg(long, value_enum, default_value_t = BatchVerify::Quick)]
        verify: BatchVerify,
        #[command(flatten)]
        enumeration: Enumeration,
    },
}

/// What a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Default::default()
        }
    }

    fn warn(&mut self, line: &str) {
        self.stderr.push_str("warning: ");
        self.stderr.push_str(line);
        self.stderr.push('\n');
    }
}

const TIE_WARNING: &str =
    "the weight ties in the Gröbner basis; polynomials are those of an adjacent maximal cone";

pub fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    let result = match cli.command {
        Command::Kleene { matrix } => cmd_kleene(&matrix, format),
        Command::Polynomials {
            which,
            matrix,
            star,
            normalized,
            euclidean,
            univariate,
            evaluate,
            dilate,
        } => {
            let mode = if univariate {
                Mode::Univariate
            } else if evaluate {
                Mode::Evaluate
            } else {
                Mode::Multivariate
            };
            let scale = match (normalized, euclidean) {
                (true, _) => Some(Scale::Normalized),
                (_, true) => Some(Scale::Euclidean),
                _ => None,
            };
            cmd_polynomials(&matrix, star, which, mode, scale, dilate, format)
        }
        Command::Verify {
            matrix,
            star,
            depth,
            volume,
            enumeration,
        } => cmd_verify(&matrix, star, depth.into(), volume.as_deref(), &enumeration, format),
        Command::Batch {
            file,
            star,
            verify,
            enumeration,
        } => cmd_batch(&file, star, verify, &enumeration, format),
    };
    result.unwrap_or_else(|e| Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: e.exit_code(),
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 5 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

fn read_path(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn load_matrix(arg: &MatrixArg) -> Result<WeightMatrix, CliError> {
    let text = match (&arg.matrix, &arg.input) {
        (Some(m), _) => m.clone(),
        (None, Some(p)) => read_path(p)?,
        (None, None) => return Err(CliError::Usage("no matrix given".into())),
    };
    Ok(input::parse_matrix(&text)?)
}

/// The Kleene star of `w` if `star` is set; otherwise `w`, which must be one.
fn kleene_input(w: WeightMatrix, star: bool) -> Result<WeightMatrix, Error> {
    if star {
        kleene_star(&w)
    } else {
        check_kleene(&w).map(|_| w)
    }
}

fn rows_json(w: &WeightMatrix) -> Value {
    json!(w.rows())
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_kleene(arg: &MatrixArg, format: Format) -> Result<Outcome, CliError> {
    let w = load_matrix(arg)?;
    let star = kleene_star(&w)?;
    let already = star == w;
    Ok(Outcome::ok(match format {
        Format::Text => {
            let mut s = render_matrix(&star);
            s.push('\n');
            if already {
                s.push_str("already a Kleene star\n");
            }
            s
        }
        Format::Json => to_json(&json!({
            "star": rows_json(&star),
            "already_kleene": already,
        })),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Multivariate,
    Univariate,
    Evaluate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scale {
    Normalized,
    Euclidean,
}

fn hstar_terms(t: &PolynomialTriple) -> Value {
    json!(t.hstar.coefficients.iter().map(json::terms).collect::<Vec<_>>())
}

fn cmd_polynomials(
    arg: &MatrixArg,
    star: bool,
    which: Which,
    mode: Mode,
    scale: Option<Scale>,
    dilate: i64,
    format: Format,
) -> Result<Outcome, CliError> {
    if dilate < 0 {
        return Err(CliError::Usage("--dilate must be nonnegative".into()));
    }
    let w = kleene_input(load_matrix(arg)?, star)?;
    let t = polynomial_triple(&w)?;
    let at = w.scale(dilate);
    let text = |p: &QPoly| p.to_string();
    let uni = |p: &QPoly| json!(json::univariate(p));

    let (rendered, value): (String, Value) = match (which, mode) {
        (Which::Volume, Mode::Multivariate) => {
            let p = match scale {
                Some(Scale::Euclidean) => &t.volume.euclidean,
                _ => &t.volume.normalized,
            };
            (text(p), json!(json::terms(p)))
        }
        (Which::Volume, Mode::Univariate) => {
            let p = match scale {
                Some(Scale::Euclidean) => &t.volume.euclidean,
                _ => &t.volume.normalized,
            };
            let u = polytropes::ehrhart::dilate(p, &at)?;
            (text(&u), uni(&u))
        }
        (Which::Volume, Mode::Evaluate) => {
            let norm = t.volume.normalized.eval_integers(&at.to_vector())?;
            let eucl = &norm / BigRational::from_integer(factorial(w.n() - 1));
            match scale {
                Some(Scale::Normalized) => (norm.to_string(), json!({ "normalized": norm.to_string() })),
                Some(Scale::Euclidean) => (eucl.to_string(), json!({ "euclidean": eucl.to_string() })),
                None => (
                    format!("{norm} (normalized), {eucl} (euclidean)"),
                    json!({ "normalized": norm.to_string(), "euclidean": eucl.to_string() }),
                ),
            }
        }
        (Which::Ehrhart, Mode::Multivariate) => {
            (text(&t.ehrhart.multivariate), json!(json::terms(&t.ehrhart.multivariate)))
        }
        (Which::Ehrhart, Mode::Univariate) => {
            let u = t.ehrhart.univariate(&at)?;
            (text(&u), uni(&u))
        }
        (Which::Ehrhart, Mode::Evaluate) => {
            let count = t.ehrhart.count(&w, dilate)?;
            (count.to_string(), json!(count.to_string()))
        }
        (Which::Hstar, Mode::Multivariate) => (t.hstar.to_string(), hstar_terms(&t)),
        (Which::Hstar, Mode::Univariate) => {
            let u = t.hstar.univariate(&at)?;
            (text(&u), uni(&u))
        }
        (Which::Hstar, Mode::Evaluate) => {
            let h = t.hstar.at(&at)?;
            let strs = json::rationals(&h);
            (strs.join(" "), json!(strs))
        }
    };

    let mut out = match format {
        Format::Text => Outcome::ok(rendered + "\n"),
        Format::Json => Outcome::ok(to_json(&json!({
            "which": format!("{which:?}").to_lowercase(),
            "mode": format!("{mode:?}").to_lowercase(),
            "matrix": rows_json(&w),
            "tie_flag": t.volume.tie_flag,
            "result": value,
        }))),
    };
    if t.volume.tie_flag {
        out.warn(TIE_WARNING);
    }
    Ok(out)
}

fn oracle_config(e: &Enumeration) -> OracleConfig {
    OracleConfig {
        cap: e.cap,
        threads: e.threads as usize,
    }
}

fn report_json(r: &VerifyReport) -> Value {
    json!({
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

fn load_volume_fixture(path: &Path, n: usize) -> Result<QPoly, CliError> {
    let text = read_path(path)?;
    let vars = VarSet::a(n);
    if text.trim_start().starts_with('[') {
        let terms: Vec<json::Term> = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(json::from_terms(vars, &terms)?)
    } else {
        Ok(parse_qpoly(vars, &text)?)
    }
}

fn cmd_verify(
    arg: &MatrixArg,
    star: bool,
    depth: Depth,
    volume: Option<&Path>,
    enumeration: &Enumeration,
    format: Format,
) -> Result<Outcome, CliError> {
    let w = kleene_input(load_matrix(arg)?, star)?;
    let cfg = oracle_config(enumeration);
    let report = match volume {
        Some(path) => verify_supplied(&w, load_volume_fixture(path, w.n())?, depth, &cfg)?,
        None => verify(&w, depth, &cfg)?,
    };
    let mut out = Outcome::ok(match format {
        Format::Text => format!("{report}\n"),
        Format::Json => to_json(&report_json(&report)),
    });
    if let Some(c) = report.first_failure() {
        out.code = 1;
        out.stderr = format!("verification failed: {}: {}\n", c.name, c.detail);
    }
    Ok(out)
}

struct BatchRecord {
    line: usize,
    result: Result<(WeightMatrix, PolynomialTriple, Option<VerifyReport>), Error>,
}

impl BatchRecord {
    fn code(&self) -> i32 {
        match &self.result {
            Err(e) => core_exit_code(e),
            Ok((_, _, Some(r))) if !r.passed() => 1,
            Ok(_) => 0,
        }
    }
}

fn process_record(
    rows: &[Vec<i64>],
    star: bool,
    depth: Option<Depth>,
    cfg: &OracleConfig,
) -> Result<(WeightMatrix, PolynomialTriple, Option<VerifyReport>), Error> {
    let w = kleene_input(WeightMatrix::from_rows(rows)?, star)?;
    let t = polynomial_triple(&w)?;
    let report = match depth {
        Some(d) => Some(polytropes::verify::verify_volume(&w, t.volume.clone(), d, cfg)?),
        None => None,
    };
    Ok((w, t, report))
}

fn cmd_batch(
    path: &Path,
    star: bool,
    verify: BatchVerify,
    enumeration: &Enumeration,
    format: Format,
) -> Result<Outcome, CliError> {
    let records = input::parse_batch(&read_path(path)?)?;
    let depth = match verify {
        BatchVerify::None => None,
        BatchVerify::Quick => Some(Depth::Quick),
        BatchVerify::Full => Some(Depth::Full),
    };
    // records run concurrently, each enumeration on its own thread
    let cfg = OracleConfig {
        threads: 1,
        ..oracle_config(enumeration)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(enumeration.threads as usize)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    let results: Vec<BatchRecord> = pool.install(|| {
        records
            .par_iter()
            .map(|r| BatchRecord {
                line: r.line,
                result: process_record(&r.rows, star, depth, &cfg),
            })
            .collect()
    });

    let mut out = Outcome::ok(match format {
        Format::Text => batch_text(&results),
        Format::Json => to_json(&Value::Array(
            results.iter().enumerate().map(|(k, r)| batch_json(k, r)).collect(),
        )),
    });
    for (k, r) in results.iter().enumerate() {
        match &r.result {
            Err(e) => out
                .stderr
                .push_str(&format!("error: record {} (line {}): {e}\n", k + 1, r.line)),
            Ok((_, t, _)) if t.volume.tie_flag => {
                out.warn(&format!("record {} (line {}): {TIE_WARNING}", k + 1, r.line))
            }
            Ok(_) => {}
        }
    }
    out.code = results.iter().map(BatchRecord::code).find(|&c| c != 0).unwrap_or(0);
    Ok(out)
}

fn batch_text(results: &[BatchRecord]) -> String {
    let mut blocks = Vec::with_capacity(results.len());
    for (k, r) in results.iter().enumerate() {
        let mut s = format!("record {} (line {})\n", k + 1, r.line);
        match &r.result {
            Err(e) => s.push_str(&format!("  error: {e}\n")),
            Ok((_, t, report)) => {
                s.push_str(&format!("  volume: {}\n", t.volume.normalized));
                s.push_str(&format!("  ehrhart: {}\n", t.ehrhart.multivariate));
                s.push_str(&format!("  hstar: {}\n", t.hstar));
                if let Some(r) = report {
                    let status = match r.first_failure() {
                        None => format!("PASS ({} checks)", r.checks.len()),
                        Some(c) => format!("FAIL ({}: {})", c.name, c.detail),
                    };
                    s.push_str(&format!("  verify: {status}\n"));
                }
            }
        }
        blocks.push(s);
    }
    blocks.join("\n")
}

fn batch_json(k: usize, r: &BatchRecord) -> Value {
    match &r.result {
        Err(e) => json!({
            "record": k + 1,
            "line": r.line,
            "error": e.to_string(),
            "exit_code": core_exit_code(e),
        }),
        Ok((w, t, report)) => json!({
            "record": k + 1,
            "line": r.line,
            "matrix": rows_json(w),
            "tie_flag": t.volume.tie_flag,
            "volume": json::terms(&t.volume.normalized),
            "ehrhart": json::terms(&t.ehrhart.multivariate),
            "hstar": hstar_terms(t),
            "verify": report.as_ref().map(report_json),
        }),
    }
}
