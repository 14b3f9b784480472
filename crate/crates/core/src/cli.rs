//! Command line front end. Every subcommand is a plain function from parsed
//! flags to an [`Outcome`] so tests can drive it without spawning processes.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{parse_rational, RatFun, Rational};
use crate::error::{Error, Result};
use crate::identities::{sweep, Guards, HMode, Identity, SweepConfig};
use crate::qbernoulli::{beta_higher, beta_number, beta_weighted, t_sum, t_sum_h, BetaQuery, WeightedBetaQuery};
use crate::qcore::{q_binomial, q_bracket, q_factorial, BaseExp};
use crate::volkenborn::{convergence_report, Family, PadicContext, VolkenbornParams, DEFAULT_BUDGET};

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn from_error(e: &Error) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qsym",
    version,
    about = "Exact Carlitz q-Bernoulli computations, identity sweeps and p-adic convergence checks"
)]
pub struct Cli {
    /// Worker threads for sweeps and Riemann sums
    #[arg(long, global = true, env = "QSYM_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one q-object as an exact rational function
    Compute(ComputeArgs),
    /// Verify identities over a parameter grid (JSON lines)
    Verify(VerifyArgs),
    /// Tabulate beta^(r)_{n,q^w}(arg/w) as CSV
    Table(TableArgs),
    /// p-adic convergence of finite Riemann sums to the closed forms
    Volkenborn(VolkenbornArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComputeKind {
    /// beta^(r)_{n,q^w}(arg/w)
    Beta,
    /// weighted beta^(h,r)_{n,q^w}(arg/w)
    BetaH,
    /// Carlitz number beta_{n,q}
    Number,
    /// T^(r)_{n,i}(wlim | q^b)
    TSum,
    /// T^(h,r)_{n,i}(wlim | q^b)
    TSumH,
    /// [m]_{q^w}
    Bracket,
    /// [r]_{q^w}!
    Factorial,
    /// q-binomial [m choose r]_{q^w}
    Binomial,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(value_enum)]
    pub kind: ComputeKind,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<i64>,
    #[arg(long, default_value_t = 1)]
    pub w: u32,
    /// Scaled argument: the polynomial argument is arg/w
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub arg: i64,
    #[arg(long, default_value_t = 0)]
    pub i: u32,
    #[arg(long, default_value_t = 1)]
    pub wlim: u32,
    #[arg(long, default_value_t = 1)]
    pub b: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, value_enum, default_value = "json")]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identities to check; repeat or separate with commas (default: all)
    #[arg(long, value_delimiter = ',')]
    pub identity: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub max_n: u32,
    #[arg(long, default_value_t = 2)]
    pub max_r: u32,
    #[arg(long, default_value_t = 3)]
    pub max_w: u32,
    #[arg(long, default_value_t = 1)]
    pub max_x: i64,
    /// Offsets o giving h = r + o for the weighted identities
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1,3")]
    pub h_offset: Vec<i64>,
    /// Absolute h values; overrides --h-offset
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub h: Vec<i64>,
    /// Check only this many grid points, drawn with --seed
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include both sides in every report line
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Range such as 0:6, a list 1,3,5 or a single value
    #[arg(long, default_value = "0:4")]
    pub n: String,
    #[arg(long, default_value = "1")]
    pub r: String,
    #[arg(long, default_value = "1")]
    pub w: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub arg: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VolkenbornArgs {
    #[arg(long, value_enum, default_value = "single")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<i64>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub x: i64,
    #[arg(long, default_value_t = 5)]
    pub p: u64,
    /// Evaluation point; defaults to 1+p (5 when p = 2)
    #[arg(long, allow_hyphen_values = true)]
    pub q0: Option<String>,
    /// Largest N
    #[arg(long = "N", default_value_t = 3)]
    pub big_n: u32,
    /// Cap on the number of summands p^(rN)
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Single,
    Multi,
    Weighted,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Single => Family::Single,
            FamilyArg::Multi => Family::Multi,
            FamilyArg::Weighted => Family::Weighted,
        }
    }
}

/// Parses and runs one command line (the first item is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_cli(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: 2 }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Compute(a) => run_compute(a),
        Command::Verify(a) => return run_verify(a, cli.threads),
        Command::Table(a) => run_table(a),
        Command::Volkenborn(a) => return run_volkenborn(a, cli.threads),
    };
    match result {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::from_error(&e),
    }
}

fn need_h(h: Option<i64>) -> Result<i64> {
    h.ok_or_else(|| Error::Domain("this computation needs --h".into()))
}

fn render(f: &RatFun, output: Output) -> String {
    let c = f.canonical();
    match output {
        Output::Json => serde_json::to_string(&c).expect("ratfun serializes") + "\n",
        Output::Pretty => c.to_pretty() + "\n",
        Output::Csv => format!("ratfun\n{}\n", csv_quote(&c.to_pretty())),
    }
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn run_compute(a: &ComputeArgs) -> Result<String> {
    let f = match a.kind {
        ComputeKind::Beta => beta_higher(&BetaQuery::new(a.n, a.r, a.w, a.arg)?)?,
        ComputeKind::BetaH => beta_weighted(&WeightedBetaQuery::new(a.n, need_h(a.h)?, a.r, a.w, a.arg)?)?,
        ComputeKind::Number => {
            BetaQuery::new(a.n, 1, 1, 0)?;
            beta_number(a.n)
        }
        ComputeKind::TSum => t_sum(a.n, a.i, a.r, a.wlim, BaseExp::new(a.b)?)?,
        ComputeKind::TSumH => t_sum_h(a.n, a.i, need_h(a.h)?, a.r, a.wlim, BaseExp::new(a.b)?)?,
        ComputeKind::Bracket => q_bracket(a.m, BaseExp::new(a.w)?),
        ComputeKind::Factorial => q_factorial(a.r, BaseExp::new(a.w)?),
        ComputeKind::Binomial => q_binomial(a.m, a.r, BaseExp::new(a.w)?),
    };
    Ok(render(&f, a.output))
}

fn sweep_config(a: &VerifyArgs, threads: Option<usize>) -> Result<SweepConfig> {
    let identities = if a.identity.is_empty() {
        Identity::ALL.to_vec()
    } else {
        a.identity.iter().map(|s| s.trim().parse()).collect::<Result<Vec<_>>>()?
    };
    let (h, h_mode) =
        if a.h.is_empty() { (a.h_offset.clone(), HMode::OffsetFromR) } else { (a.h.clone(), HMode::Absolute) };
    let range_x = if a.max_x >= 0 { (0..=a.max_x).collect() } else { (a.max_x..=0).collect() };
    Ok(SweepConfig {
        identities,
        n: (0..=a.max_n).collect(),
        r: (1..=a.max_r).collect(),
        h,
        h_mode,
        w1: (1..=a.max_w).collect(),
        w2: (1..=a.max_w).collect(),
        x: range_x,
        guards: Guards::default(),
        threads,
        mutation: None,
    })
}

/// Runs a sweep; prints one JSON line per report and exits 1 if any fails.
pub fn run_verify(a: &VerifyArgs, threads: Option<usize>) -> Outcome {
    let cfg = match sweep_config(a, threads) {
        Ok(c) => c,
        Err(e) => return Outcome::from_error(&e),
    };
    verify_with(&cfg, a.sample.map(|k| (k, a.seed)), a.verbose)
}

/// Sweep driver shared by [`run_verify`] and tests that need a custom
/// configuration (for example one carrying a mutation).
pub fn verify_with(cfg: &SweepConfig, sample: Option<(usize, u64)>, verbose: bool) -> Outcome {
    let reports = match sample {
        None => sweep(cfg),
        Some((k, seed)) => sampled_sweep(cfg, k, seed),
    };
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };
    let mut out = String::new();
    let mut failures = 0;
    for r in &reports {
        out.push_str(&r.to_json_line(verbose));
        out.push('\n');
        failures += usize::from(!r.holds);
    }
    let stderr = format!("{} checks, {} failed\n", reports.len(), failures);
    Outcome { stdout: out, stderr, code: if failures == 0 { 0 } else { 1 } }
}

fn sampled_sweep(cfg: &SweepConfig, k: usize, seed: u64) -> Result<Vec<crate::identities::CheckReport>> {
    cfg.validate()?;
    let grid = cfg.grid();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, grid.len(), k.min(grid.len())).into_vec();
    picked.sort_unstable();
    let points: Vec<_> = picked.into_iter().map(|i| grid[i]).collect();
    crate::identities::run_points(&points, cfg.threads, cfg.mutation)
}

/// Parses `a:b` (inclusive, empty when `b < a`), `a,b,c` or a single value.
pub fn parse_range(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::Parse(format!("not a range: {s:?}"));
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once(':') {
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

fn parse_range_u32(s: &str, name: &str) -> Result<Vec<u32>> {
    parse_range(s)?
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| Error::Domain(format!("{name} = {v} must be nonnegative"))))
        .collect()
}

pub fn run_table(a: &TableArgs) -> Result<String> {
    let sorted = |mut v: Vec<i64>| {
        v.sort_unstable();
        v.dedup();
        v
    };
    let sorted_u = |mut v: Vec<u32>| {
        v.sort_unstable();
        v.dedup();
        v
    };
    let ns = sorted_u(parse_range_u32(&a.n, "n")?);
    let rs = sorted_u(parse_range_u32(&a.r, "r")?);
    let ws = sorted_u(parse_range_u32(&a.w, "w")?);
    let args = sorted(parse_range(&a.arg)?);
    let mut queries = Vec::new();
    for &n in &ns {
        for &r in &rs {
            for &w in &ws {
                for &arg in &args {
                    queries.push(BetaQuery::new(n, r, w, arg)?);
                }
            }
        }
    }
    #[derive(Serialize)]
    struct Row<'a> {
        n: u32,
        r: u32,
        w: u32,
        arg: i64,
        ratfun: &'a RatFun,
    }
    let mut out = String::new();
    if a.output != Output::Json {
        out.push_str("n,r,w,arg,ratfun\n");
    }
    for q in queries {
        let f = beta_higher(&q)?.canonical();
        match a.output {
            Output::Json => {
                let row = Row { n: q.n, r: q.r, w: q.w.get(), arg: q.arg, ratfun: &f };
                out.push_str(&serde_json::to_string(&row).expect("row serializes"));
                out.push('\n');
            }
            Output::Csv | Output::Pretty => {
                let _ = writeln!(out, "{},{},{},{},{}", q.n, q.r, q.w, q.arg, csv_quote(&f.to_pretty()));
            }
        }
    }
    Ok(out)
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Resource(format!("thread pool: {e}")))?
            .install(f)),
    }
}

/// Prints the convergence report; exit 0 iff the valuations are monotone.
pub fn run_volkenborn(a: &VolkenbornArgs, threads: Option<usize>) -> Outcome {
    let go = || -> Result<Outcome> {
        let q0: Option<Rational> = a.q0.as_deref().map(parse_rational).transpose()?;
        let ctx = PadicContext::new(a.p, q0, a.big_n)?.with_budget(a.budget);
        let params = VolkenbornParams { n: a.n, r: a.r, h: a.h, x: a.x };
        let rep = with_threads(threads, || convergence_report(a.family.into(), params, &ctx))??;
        let code = if rep.monotone { 0 } else { 1 };
        let stderr = if rep.monotone { String::new() } else { "valuations are not monotone\n".into() };
        Ok(Outcome { stdout: rep.to_json() + "\n", stderr, code })
    };
    go().unwrap_or_else(|e| Outcome::from_error(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(line: &str) -> Outcome {
        run(std::iter::once("qsym").chain(line.split_whitespace()))
    }

    #[test]
    fn compute_examples() {
        let o = sh("compute beta --n 0 --r 3 --w 1 --arg 0 --output pretty");
        assert_eq!((o.stdout.as_str(), o.code), ("1\n", 0));
        let o = sh("compute beta --n 1 --r 1 --w 1 --arg 0");
        assert_eq!(o.stdout, "{\"num\":[[0,\"-1\"]],\"den\":[[0,\"1\"],[1,\"1\"]]}\n");
        let o = sh("compute beta --n 1 --output pretty");
        assert_eq!(o.stdout, "-1/(1+q)\n");
        let o = sh("compute beta-h --n 1 --h 0 --r 1");
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("degenerate"), "{}", o.stderr);
        assert_eq!(sh("compute t-sum --n 1 --i 0 --wlim 2 --output pretty").stdout, "q\n");
        assert_eq!(sh("compute bracket --m -1 --output pretty").stdout, "-q^-1\n");
        assert_eq!(sh("compute beta --n 1 --w 0").code, 2);
        assert_eq!(sh("compute beta --n 40 --r 4 --w 9 --arg 9000").code, 3);
        assert_eq!(sh("compute nonsense").code, 2);
    }

    #[test]
    fn verify_examples() {
        let o = sh("verify --identity recurrence --max-n 12");
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout.lines().count(), 13);
        let o = sh("verify --identity thm4 --max-w 50");
        assert_eq!(o.code, 3);
        assert!(o.stderr.contains("guard"));
        assert_eq!(sh("verify --identity thm9").code, 2);
        let o = sh("verify --identity thm3,thm5 --max-n 2 --max-r 1 --max-w 2 --max-x 1 --sample 5 --seed 7");
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.lines().count(), 5);
    }

    #[test]
    fn table_examples() {
        let o = sh("table --n 0:1 --r 1 --w 1 --arg 0");
        assert_eq!(o.stdout, "n,r,w,arg,ratfun\n0,1,1,0,\"1\"\n1,1,1,0,\"-1/(1+q)\"\n");
        assert_eq!(sh("table --n 1:0").stdout, "n,r,w,arg,ratfun\n");
        let a = sh("table --n 0:6 --r 2");
        assert_eq!(a.stdout.lines().count(), 8);
        assert_eq!(a, sh("table --n 0:6 --r 2"));
    }

    #[test]
    fn volkenborn_examples() {
        let o = sh("volkenborn --family single --n 2 --p 5 --N 4");
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert_eq!(sh("volkenborn --p 6").code, 2);
        assert_eq!(sh("volkenborn --p 3 --q0 2").code, 2);
        let o = sh("volkenborn --family multi --n 0 --r 2 --p 3 --N 3");
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("\"points\":[[1,\"inf\"],[2,\"inf\"],[3,\"inf\"]]"), "{}", o.stdout);
        assert_eq!(sh("volkenborn --family multi --r 2 --p 5 --N 6").code, 3);
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0:3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_range("2,-1").unwrap(), vec![2, -1]);
        assert!(parse_range("3:").is_err());
        assert!(parse_range("1:0").unwrap().is_empty());
    }
}
