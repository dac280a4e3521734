//! `secant-forge`: build varieties, secant ideals and projections, compute
//! invariants and run the verification harness. See `docs/report-v1.md` for the
//! JSON envelope printed under `--json`.

mod commands;

use clap::{ArgGroup, Args, Parser, Subcommand};
use secant_forge::groebner::Caps;
use secant_forge::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "secant-forge", version, about = "Higher secant varieties over prime fields")]
pub struct Cli {
    /// Characteristic of the base field. Must match the characteristic of any input file.
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    /// Seed for every random choice (general points, frames, curves).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest degree a Groebner basis may reach.
    #[arg(long, global = true, default_value_t = Caps::default().max_degree)]
    pub max_degree: u32,
    /// Largest number of S-pairs a Groebner basis may reduce.
    #[arg(long, global = true, default_value_t = Caps::default().max_pairs)]
    pub max_pairs: usize,
    /// Largest dense matrix (rows × columns) any linear-algebra step may build.
    #[arg(long, global = true, default_value_t = Caps::default().max_matrix)]
    pub max_matrix: usize,
    /// Print the report-v1 JSON envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Write the ideal (and parametrization sidecar) of a named family.
    Family(FamilyArgs),
    /// Compute the ideal of S^q(X).
    Secant(SecantArgs),
    /// Project X from a point of X, a tangent space, or a given linear space.
    Project(ProjectArgs),
    /// Partial elimination ideals of an ideal at a point of its zero set.
    Pei(PeiArgs),
    /// Dimension, degree, sectional genus and Hilbert series.
    Invariants(InvariantsArgs),
    /// Graded Betti numbers in a window.
    Betti(BettiArgs),
    /// Classify S^q(X) against the minimal-degree and del Pezzo characterizations.
    Classify(ClassifyArgs),
    /// Run named verification suites over the regression corpus.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// rnc, scroll, veronese, trigonal-g3, genus2, elliptic, grassmann,
    /// catalecticant, char2, project, or a compact spec such as `scroll:3,4`.
    pub kind: String,
    #[arg(long)]
    pub d: Option<usize>,
    /// Scroll type, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Elliptic normal curve of degree 3k.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub rows: Option<usize>,
    /// Base family of `project`, as a compact spec (`rnc:6`).
    #[arg(long)]
    pub base: Option<String>,
    /// on-variety, on-secant or outer.
    #[arg(long, default_value = "on-variety")]
    pub center: String,
    /// Output ideal file; defaults to `<label>.ideal` in the current directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SecantArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long, default_value = "interp")]
    pub method: Method,
    /// Highest degree searched by interpolation.
    #[arg(long, default_value_t = 20)]
    pub deg_bound: u32,
    /// Write the reduced Groebner basis instead of the generators found.
    #[arg(long)]
    pub canonical: bool,
    /// Output file; defaults to `<input stem>-S<q>.ideal`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Ideal file or compact family spec.
    pub input: String,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Method {
    Elim,
    Interp,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("center").required(true).args(["inner", "tangential", "space"])))]
pub struct ProjectArgs {
    /// Inner projection from a point of X: coordinates `a:b:...` or `auto`.
    #[arg(long)]
    pub inner: Option<String>,
    /// Projection from the tangent space at a point of X.
    #[arg(long)]
    pub tangential: Option<String>,
    /// Projection from the span of the points listed in a file, one per line.
    #[arg(long)]
    pub space: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    pub input: String,
}

#[derive(Args, Debug)]
pub struct PeiArgs {
    /// Coordinates `a:b:...`, or `auto` for a general point.
    #[arg(long, default_value = "auto")]
    pub point: String,
    /// With `auto`, draw the point on S^q of this variety instead.
    #[arg(long)]
    pub sample_from: Option<PathBuf>,
    /// Secant order used with `--sample-from`.
    #[arg(long, default_value_t = 1)]
    pub q: usize,
    /// Also check the Hilbert-polynomial decomposition and the degree and genus formulas.
    #[arg(long)]
    pub verify_secgenus: bool,
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct BettiArgs {
    /// Rows j shown, `a..b`; the window is computed up to b.
    #[arg(long)]
    pub rows: Option<String>,
    /// Columns i shown, `c..d`; the window is computed up to d.
    #[arg(long)]
    pub cols: Option<String>,
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long, default_value = "interp")]
    pub method: Method,
    /// The input already is the ideal of S^q(X).
    #[arg(long)]
    pub given_secant: bool,
    /// Also run the property suite, IC and the tangential-projection criterion.
    #[arg(long)]
    pub properties: bool,
    /// Ideal file or compact family spec.
    pub input: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite names (comma separated or repeated), or `all`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub suite: Vec<String>,
    /// Skip the corpus entries marked heavy.
    #[arg(long)]
    pub quick: bool,
    /// Only corpus entries whose name contains this text.
    #[arg(long)]
    pub filter: Option<String>,
    /// Seeds per entry for sampled verdicts.
    #[arg(long, default_value_t = 3)]
    pub seeds: usize,
}

/// Why a command stopped, with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// 1: a cap or another computational limit was hit.
    Compute(String),
    /// 2: a verdict or a check came out against expectation.
    Verdict(String),
    /// 3: bad arguments or input files.
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Verdict(_) => 2,
            Failure::Usage(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Compute(m) | Failure::Verdict(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidInput(_) | Error::Parse { .. } | Error::RingMismatch(_) => Failure::Usage(msg),
            Error::Mismatch(_) => Failure::Verdict(msg),
            _ => Failure::Compute(msg),
        }
    }
}

/// What a command hands back: the JSON payload, its text rendering, and whether
/// the verdicts it checked all held.
pub struct Outcome {
    pub result: serde_json::Value,
    pub text: String,
    pub ok: bool,
}

/// Wall time of named steps, kept out of the payload so it stays reproducible.
#[derive(Default)]
pub struct Timings(Vec<(String, u128)>);

impl Timings {
    pub fn time<T>(&mut self, step: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.0.push((step.to_string(), t.elapsed().as_millis()));
        out
    }

    pub fn record(&mut self, step: &str, ms: u128) {
        self.0.push((step.to_string(), ms));
    }

    fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (k, v) in &self.0 {
            m.insert(k.clone(), (*v as u64).into());
        }
        serde_json::Value::Object(m)
    }
}

/// Write to stdout, ignoring a closed pipe (`| head`).
fn emit(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let mut timings = Timings::default();
    let res = commands::Context::new(&cli).and_then(|mut ctx| {
        let start = Instant::now();
        let out = commands::run(&mut ctx, &cli.cmd, &mut timings)?;
        timings.record("total", start.elapsed().as_millis());
        Ok((ctx, out))
    });
    match res {
        Ok((ctx, out)) => {
            if cli.json {
                let env = serde_json::json!({
                    "schema": "report-v1",
                    "command": argv[1..],
                    "prime": ctx.prime,
                    "seed": cli.seed,
                    "caps": ctx.caps,
                    "timings_ms": timings.to_json(),
                    "ok": out.ok,
                    "result": out.result,
                });
                emit(&format!("{}\n", serde_json::to_string_pretty(&env).expect("JSON values serialize")));
            } else {
                emit(&out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 2 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(Failure::from(Error::TooLarge("x".into())).code(), 1);
        assert_eq!(Failure::from(Error::NotStabilized(9)).code(), 1);
        assert_eq!(Failure::from(Error::Mismatch("x".into())).code(), 2);
        assert_eq!(Failure::from(Error::InvalidInput("x".into())).code(), 3);
        assert_eq!(Failure::from(Error::Parse { pos: 0, msg: "x".into() }).code(), 3);
    }

    #[test]
    fn arguments_parse() {
        let c = Cli::try_parse_from(["secant-forge", "--seed", "7", "verify", "--suite", "formulas,kp1"]).unwrap();
        assert_eq!(c.seed, 7);
        assert!(matches!(c.cmd, Cmd::Verify(ref v) if v.suite == ["formulas", "kp1"]));
        assert!(Cli::try_parse_from(["secant-forge", "project", "f.ideal"]).is_err());
        assert!(Cli::try_parse_from(["secant-forge", "project", "--inner", "auto", "--space", "p", "f"]).is_err());
    }
}
