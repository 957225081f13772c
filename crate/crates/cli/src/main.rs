//! `blendext`: run the invariant suites, extend boundary data, evaluate
//! forms and list space dimensions.
//!
//! Exit status is 0 on success, 1 when an assertable check fails or boundary
//! data has mismatched traces, and 2 on usage, parse or domain errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use blendext::bary::{format_rational, parse_rational};
use blendext::extension::extend;
use blendext::forms::{basis, dim_full, dim_trimmed};
use blendext::json::{form_to_json, parse_boundary, parse_form};
use blendext::verify::{self, parse_suites, SuiteConfig, MAX_N};
use blendext::{Degree, Error, Family, RationalPoint, TangentVector};

#[derive(Parser)]
#[command(name = "blendext", version, about = "Exact checks for polynomial extension operators on simplices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run invariant suites and report per-check results.
    Verify(VerifyArgs),
    /// Extend boundary data given as JSON into the simplex.
    Extend(ExtendArgs),
    /// Evaluate a form at a point on tangent vectors.
    Eval(EvalArgs),
    /// Print dimensions of the full and trimmed spaces.
    Bases(BasesArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Simplex dimension: `2`, `1..3` or `1,3`.
    #[arg(long, default_value = "1..2")]
    n: String,
    /// Polynomial degree, same syntax as --n.
    #[arg(long, default_value = "1..2")]
    r: String,
    /// Restrict form degrees, same syntax as --n.
    #[arg(long)]
    k: Option<String>,
    /// `full`, `trimmed` or `both`.
    #[arg(long, default_value = "both")]
    family: String,
    /// `all` or a comma-separated list of suites.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Interior points per case for the oracle suite.
    #[arg(long, default_value_t = 5)]
    points: usize,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Permit ranges beyond n <= 2 with r <= 3 and n = 3 with r <= 2.
    #[arg(long)]
    allow_slow: bool,
    /// Include wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ExtendArgs {
    /// Boundary data JSON file, or `-` for stdin.
    input: PathBuf,
    /// Expected form degree of the data.
    #[arg(long)]
    k: Option<usize>,
    /// Write the extension here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Form JSON file, or `-` for stdin.
    form: PathBuf,
    /// Barycentric coordinates, `p/q,p/q,...`.
    #[arg(long)]
    point: String,
    /// Tangent vector: barycentric components `a,b,...` summing to zero, or
    /// an edge `x1-x0`. Repeat once per form degree.
    #[arg(long = "vector", allow_hyphen_values = true)]
    vectors: Vec<String>,
}

#[derive(Args)]
struct BasesArgs {
    #[arg(long)]
    n: String,
    #[arg(long, default_value = "1..3")]
    r: String,
    #[arg(long)]
    k: Option<String>,
    #[arg(long, default_value = "both")]
    family: String,
    /// Build each basis and compare its size with the closed formula.
    #[arg(long)]
    check: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IncompatibleTraces(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<u8, Failure>;

fn parse_range(text: &str) -> std::result::Result<Vec<usize>, Failure> {
    let bad = || Failure::usage(format!("bad range {text:?}"));
    let one = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let mut out = Vec::new();
    for part in text.split(',') {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (one(a)?, one(b)?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(one(part)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn parse_degrees(text: &str) -> std::result::Result<Vec<u32>, Failure> {
    parse_range(text)?
        .into_iter()
        .map(|r| u32::try_from(r).map_err(|_| Failure::usage(format!("degree {r} too large"))))
        .collect()
}

fn parse_families(text: &str) -> std::result::Result<Vec<Family>, Failure> {
    match text.trim() {
        "both" | "all" => Ok(Family::BOTH.to_vec()),
        other => other
            .split(',')
            .map(|f| f.parse::<Family>().map_err(|_| Failure::usage(format!("unknown family {f:?}"))))
            .collect(),
    }
}

fn read_input(path: &Path) -> std::result::Result<String, Failure> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::usage(format!("stdin: {e}")))
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

fn write_output(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let n = parse_range(&a.n)?;
    if let Some(&bad) = n.iter().find(|&&n| n == 0 || n > MAX_N) {
        return Err(Failure::usage(format!("n = {bad} is outside the supported range 1..={MAX_N}")));
    }
    let mut cfg = SuiteConfig::new(n, parse_degrees(&a.r)?, parse_suites(&a.suite)?);
    cfg.k = a.k.as_deref().map(parse_range).transpose()?;
    cfg.families = parse_families(&a.family)?;
    cfg.seed = a.seed;
    cfg.points = a.points;
    cfg.timings = a.timings;
    cfg.validate()?;
    if cfg.is_slow() && !a.allow_slow {
        return Err(Failure::usage(
            "this range is beyond n <= 2 with r <= 3 and n = 3 with r <= 2; pass --allow-slow to run it",
        ));
    }
    let report = verify::run(&cfg)?;
    for s in &report.suites {
        let status = match (s.assertable, s.passed) {
            (false, _) => "info",
            (true, true) => "pass",
            (true, false) => "FAIL",
        };
        println!("{:<20} {:>8} cases {:>6} failed  {status}", s.suite.name(), s.cases(), s.failures());
        for c in s.checks.iter().filter(|c| !c.passed()) {
            println!("  {:<24} {} of {} failed", c.name, c.failures, c.cases);
        }
        for f in &s.findings {
            if !s.assertable {
                println!("  finding: {f}");
            }
        }
    }
    if let Some(path) = &a.json {
        write_output(path, &report.to_json())?;
    }
    println!("{}", if report.passed { "all assertable checks passed" } else { "some checks failed" });
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_extend(a: ExtendArgs) -> CmdResult {
    let b = parse_boundary(&read_input(&a.input)?)?;
    if let Some(k) = a.k {
        if k != b.k() {
            return Err(Failure::usage(format!("--k {k} but the data are {}-forms", b.k())));
        }
    }
    let u = extend(&b)?;
    let text = serde_json::to_string_pretty(&form_to_json(&u, b.n())).expect("form JSON");
    let (degree, r) = match u.poly_degree() {
        Degree::Finite(d) => (d.to_string(), d.max(1)),
        Degree::NegInfinity => ("-inf".to_string(), 1),
    };
    let summary = format!(
        "polynomial degree {degree}; in P{r}Λ{k}: {}; in P{r}-Λ{k}: {}",
        u.is_member(Family::Full, r),
        u.is_member(Family::Trimmed, r),
        k = u.k()
    );
    match &a.json {
        Some(path) => {
            write_output(path, &text)?;
            println!("{summary}");
        }
        None => {
            println!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(0)
}

fn parse_vector(labels: &[usize], text: &str) -> std::result::Result<TangentVector, Failure> {
    let t = text.trim();
    if let Some((to, from)) = t.split_once('-').filter(|(a, _)| a.starts_with('x')) {
        let idx = |s: &str| {
            s.trim()
                .strip_prefix('x')
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| Failure::usage(format!("bad edge vector {text:?}")))
        };
        return Ok(TangentVector::edge(labels, idx(from)?, idx(to)?)?);
    }
    let coeffs = t.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    Ok(TangentVector::new(labels, coeffs)?)
}

fn cmd_eval(a: EvalArgs) -> CmdResult {
    let u = parse_form(&read_input(&a.form)?)?;
    let x = RationalPoint::parse(u.labels(), &a.point)?;
    let vs = a
        .vectors
        .iter()
        .map(|v| parse_vector(u.labels(), v))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    println!("{}", format_rational(&u.eval(&x, &vs)?));
    Ok(0)
}

fn cmd_bases(a: BasesArgs) -> CmdResult {
    let ns = parse_range(&a.n)?;
    if let Some(&bad) = ns.iter().find(|&&n| n == 0 || n > MAX_N) {
        return Err(Failure::usage(format!("n = {bad} is outside the supported range 1..={MAX_N}")));
    }
    let rs = parse_degrees(&a.r)?;
    if rs.contains(&0) {
        return Err(Failure::usage("r must be at least 1"));
    }
    let ks = a.k.as_deref().map(parse_range).transpose()?;
    let families = parse_families(&a.family)?;
    let mut mismatch = false;
    println!("{:>2} {:>2} {:>2} {:>8} {:>6}", "n", "r", "k", "family", "dim");
    for &n in &ns {
        for &r in &rs {
            for k in (0..=n).filter(|k| ks.as_ref().map_or(true, |ks| ks.contains(k))) {
                for &family in &families {
                    let dim = match family {
                        Family::Full => dim_full(n, r, k),
                        Family::Trimmed => dim_trimmed(n, r, k),
                    };
                    let mut line = format!("{n:>2} {r:>2} {k:>2} {:>8} {dim:>6}", family.name());
                    if a.check {
                        let built = basis(n, r, k, family)?.len() as u64;
                        mismatch |= built != dim;
                        line.push_str(if built == dim { "  ok" } else { "  MISMATCH" });
                    }
                    println!("{line}");
                }
            }
        }
    }
    Ok(if mismatch { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Extend(a) => cmd_extend(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Bases(a) => cmd_bases(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("blendext: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
