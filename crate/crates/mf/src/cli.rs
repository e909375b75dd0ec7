//! The `mf` command line. [`run`] does all the work and returns the exit
//! code and both output streams, so it can be tested without a process.

use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use mf_core::egyptian::{generate, EgyptianSolution, GenerationRule, SearchTarget};
use mf_core::em::{certify, equation_holds, sieve_range, EmMode, EmQuery, NSpec, SieveSummary, Status};
use mf_core::power_sums::{
    congruence_class_prediction, power_sum, power_sum_mod, restricted_power_sum, valuation_report,
    Prediction, Verdict,
};
use mf_core::{Error, FactorConfig};
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cache::{self, CacheError, SharedBernoulli};
use crate::record::OutputRecord;
use crate::search::{parallel_search, twin_prime_neighbours};
use crate::sweeps::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mf", version, about = "Power sums, Giuga numbers, Bernoulli numbers and the Erdős–Moser equation")]
pub struct Cli {
    /// Print a JSON document instead of the table.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: available processors).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Pollard rho iterations per attempt before giving up on a factor.
    #[arg(long, global = true)]
    effort: Option<u64>,
    /// Bernoulli cache file (overrides $MF_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// p-adic order of S_n(m) against the valuation theorem.
    Valuation {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// S_n(m) exactly, or modulo --modulus; with --p also the restricted sum
    /// and the predicted residue class.
    Powersum {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
    },
    /// d(n), its classification, and optionally one generation step.
    Egyptian {
        #[arg(long, value_parser = parse_bigint)]
        n: BigInt,
        #[arg(long, value_enum)]
        rule: Option<Rule>,
        /// F for the split rules (G is derived).
        #[arg(long, value_parser = parse_bigint)]
        f: Option<BigInt>,
    },
    /// Search an interval for Giuga, primary pseudoperfect or d ≡ 1 numbers.
    Search(SearchArgs),
    /// B_k as numerator / denominator.
    Bernoulli {
        #[arg(long)]
        k: usize,
    },
    /// Constraint certificates for one m.
    EmCheck {
        #[arg(long)]
        m: u64,
        /// Exact exponent; without it only the divisor profile of n is used.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, value_enum, default_value_t = Mode::Eme)]
        mode: Mode,
    },
    /// Sieve an interval of m by the constraints.
    EmSieve {
        #[arg(long, default_value_t = 1)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long)]
        n: Option<u64>,
        /// Also apply the n-dependent conditions for n divisible by this.
        #[arg(long, conflicts_with = "n")]
        profile: Option<u64>,
        #[arg(long, value_enum, default_value_t = Mode::Eme)]
        mode: Mode,
    },
    /// Run a suite of invariant sweeps.
    Verify {
        #[arg(long)]
        suite: String,
        /// Ranges ten times smaller.
        #[arg(long)]
        quick: bool,
    },
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("{s:?} is not an integer"))
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["giuga", "ppp", "plus_one"])))]
struct SearchArgs {
    #[arg(long)]
    giuga: bool,
    #[arg(long)]
    ppp: bool,
    #[arg(long)]
    plus_one: bool,
    #[arg(long, default_value_t = 1)]
    lo: u64,
    #[arg(long)]
    hi: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rule {
    PppUp,
    GiugaDown,
    PppSplit,
    GiugaSplit,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Eme,
    Geme,
}

impl From<Mode> for EmMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Eme => EmMode::Eme,
            Mode::Geme => EmMode::Geme,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Core(Error),
    Cache(CacheError),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<CacheError> for Failure {
    fn from(e: CacheError) -> Self {
        Failure::Cache(e)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Violation(_) | Error::NotIntegral(_) => EXIT_VIOLATION,
        Error::IncompleteFactorization { .. } => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

struct Ctx {
    cfg: FactorConfig,
    cache: Option<PathBuf>,
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return usage("--jobs must be positive");
        }
        builder = builder.num_threads(j);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return usage(&format!("thread pool: {e}")),
    };
    let mut cfg = FactorConfig::default();
    if let Some(e) = cli.effort {
        cfg = cfg.with_rho_iterations(e);
    }
    let ctx = Ctx { cfg, cache: cache::resolve_path(cli.cache.as_deref()) };
    let start = Instant::now();
    let result = pool.install(|| dispatch(&cli.command, &ctx));
    match result {
        Ok((mut record, code)) => {
            record.elapsed_ms = start.elapsed().as_millis() as u64;
            let stdout = if cli.json { record.to_json() + "\n" } else { record.to_table() };
            Output { code, stdout, stderr: String::new() }
        }
        Err(Failure::Core(e)) => Output { code: exit_code(&e), stdout: String::new(), stderr: format!("mf: {e}\n") },
        Err(Failure::Cache(e)) => Output { code: EXIT_USAGE, stdout: String::new(), stderr: format!("mf: {e}\n") },
        Err(Failure::Usage(msg)) => usage(&msg),
    }
}

fn usage(msg: &str) -> Output {
    Output { code: EXIT_USAGE, stdout: String::new(), stderr: format!("mf: {msg}\n") }
}

type Outcome = Result<(OutputRecord, i32), Failure>;

fn dispatch(cmd: &Command, ctx: &Ctx) -> Outcome {
    match cmd {
        Command::Valuation { m, n, p } => cmd_valuation(*m, *n, *p),
        Command::Powersum { m, n, modulus, p } => cmd_powersum(*m, *n, *modulus, *p),
        Command::Egyptian { n, rule, f } => cmd_egyptian(n, *rule, f.as_ref(), ctx),
        Command::Search(a) => cmd_search(a, ctx),
        Command::Bernoulli { k } => cmd_bernoulli(*k, ctx),
        Command::EmCheck { m, n, a, mode } => cmd_em_check(*m, *n, *a, (*mode).into(), ctx),
        Command::EmSieve { lo, hi, n, profile, mode } => cmd_em_sieve(*lo, *hi, *n, *profile, (*mode).into(), ctx),
        Command::Verify { suite, quick } => cmd_verify(suite, *quick, ctx),
    }
}

fn cmd_valuation(m: u64, n: u64, p: u64) -> Outcome {
    let r = valuation_report(m, n, p)?;
    let mut rec = OutputRecord::new(format!("valuation --m {m} --n {n} --p {p}"));
    rec.input("m", m).input("n", n).input("p", p);
    let (kind, value) = match r.prediction {
        Prediction::Equals(v) => ("EQUALS", v),
        Prediction::AtLeast(v) => ("AT_LEAST", v),
    };
    rec.output("case", format!("{:?}", r.case))
        .output("branch", format!("{:?}", r.branch))
        .output("V_p", r.v_p_value)
        .output("actual", r.actual)
        .output("prediction", kind)
        .output("predicted", value);
    if let Some(reference) = r.reference {
        rec.output("v_p(S_{p-1}(m))", reference);
    }
    rec.output("proven", r.proven);
    let (verdict, code) = match r.verdict {
        Verdict::Consistent => ("CONSISTENT", EXIT_OK),
        Verdict::Violation => ("VIOLATION", EXIT_VIOLATION),
    };
    rec.output("verdict", verdict).check("valuation theorem");
    Ok((rec, code))
}

fn cmd_powersum(m: u64, n: u32, modulus: Option<u64>, p: Option<u64>) -> Outcome {
    let mut cmd = format!("powersum --m {m} --n {n}");
    let mut rec = OutputRecord::new("");
    rec.input("m", m).input("n", n);
    match modulus {
        Some(0) => return Err(Failure::Usage("--modulus must be positive".into())),
        Some(md) => {
            cmd += &format!(" --modulus {md}");
            rec.input("modulus", md).output("S_n(m) mod modulus", power_sum_mod(m, n as u64, md));
        }
        None => {
            rec.output("S_n(m)", power_sum(m, n)?);
        }
    }
    if let Some(p) = p {
        cmd += &format!(" --p {p}");
        rec.input("p", p);
        rec.output("restricted", restricted_power_sum(m, n as i64, p)?);
        match congruence_class_prediction(m, n as u64, p) {
            Ok(c) => {
                let actual = power_sum_mod(m, n as u64, c.modulus);
                rec.output("class modulus", c.modulus)
                    .output("predicted residue", c.residue)
                    .output("actual residue", actual)
                    .check("congruence theorem");
                if actual != c.residue {
                    rec.command = cmd;
                    return Ok((rec, EXIT_VIOLATION));
                }
            }
            Err(Error::NotCovered(why)) => {
                rec.output("class", format!("not covered: {why}"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    rec.command = cmd;
    Ok((rec, EXIT_OK))
}

fn cmd_egyptian(n: &BigInt, rule: Option<Rule>, f: Option<&BigInt>, ctx: &Ctx) -> Outcome {
    let sol = EgyptianSolution::new(n, &ctx.cfg)?;
    let mut rec = OutputRecord::new(format!("egyptian --n {n}"));
    rec.input("n", n);
    rec.output("d", &sol.d_raw)
        .output("d mod n", &sol.d_canonical)
        .output_list("classification", sol.classification.names());
    if let Some(rule) = rule {
        let split = |plus: bool| -> Result<(BigInt, BigInt), Failure> {
            let f = f.ok_or_else(|| Failure::Usage("split rules need --f".into()))?;
            let target = if plus { n * n + 1u32 } else { n * n - 1u32 };
            if f.sign() != num_bigint::Sign::Plus || !(&target % f).eq(&BigInt::from(0)) {
                return Err(Failure::Usage(format!("--f must be a positive divisor of {target}")));
            }
            Ok((f.clone(), &target / f))
        };
        let rule = match rule {
            Rule::PppUp => GenerationRule::PppUp,
            Rule::GiugaDown => GenerationRule::GiugaDown,
            Rule::PppSplit => {
                let (f, g) = split(true)?;
                GenerationRule::PppSplit { f, g }
            }
            Rule::GiugaSplit => {
                let (f, g) = split(false)?;
                GenerationRule::GiugaSplit { f, g }
            }
        };
        rec.input("rule", format!("{rule:?}"));
        let g = generate(n, &rule, &ctx.cfg)?;
        rec.output("generated", &g.value)
            .output_list("generated classification", g.output.names())
            .check("generation rule");
    }
    Ok((rec, EXIT_OK))
}

fn cmd_search(a: &SearchArgs, ctx: &Ctx) -> Outcome {
    let (target, flag) = if a.giuga {
        (SearchTarget::Giuga, "--giuga")
    } else if a.ppp {
        (SearchTarget::Ppp, "--ppp")
    } else {
        (SearchTarget::DEqualsPlusOne, "--plus-one")
    };
    let mut rec = OutputRecord::new(format!("search {flag} --lo {} --hi {}", a.lo, a.hi));
    rec.input("lo", a.lo).input("hi", a.hi);
    let outcome = if a.lo > a.hi {
        Default::default()
    } else {
        parallel_search(a.lo, a.hi, target, &ctx.cfg, 0)?
    };
    rec.output_list("hits", &outcome.hits).output("count", outcome.hits.len());
    if target == SearchTarget::Ppp {
        rec.output_list("twin-prime neighbours", twin_prime_neighbours(&outcome.hits));
    }
    rec.output_list("skipped", &outcome.skipped);
    rec.check(flag.trim_start_matches('-'));
    Ok((rec, EXIT_OK))
}

fn load_table(ctx: &Ctx) -> Result<SharedBernoulli, Failure> {
    let table = match &ctx.cache {
        Some(path) => cache::load(path)?.unwrap_or_default(),
        None => Default::default(),
    };
    Ok(SharedBernoulli::new(table))
}

/// Write the table back if it grew.
fn store_table(ctx: &Ctx, shared: &SharedBernoulli, before: usize) -> Result<(), Failure> {
    if let Some(path) = &ctx.cache {
        let t = shared.snapshot();
        if t.max_index() > before {
            cache::save(path, &t)?;
        }
    }
    Ok(())
}

fn cmd_bernoulli(k: usize, ctx: &Ctx) -> Outcome {
    let shared = load_table(ctx)?;
    let before = shared.snapshot().max_index();
    let b = shared.with(k, |t| t.get(k).cloned().expect("extended"));
    store_table(ctx, &shared, before)?;
    let mut rec = OutputRecord::new(format!("bernoulli --k {k}"));
    rec.input("k", k).output("numerator", b.numer()).output("denominator", b.denom());
    if let Some(p) = &ctx.cache {
        rec.input("cache", p.display());
    }
    rec.check("von Staudt-Clausen denominator");
    Ok((rec, EXIT_OK))
}

fn cmd_em_check(m: u64, n: Option<u64>, a: u64, mode: EmMode, ctx: &Ctx) -> Outcome {
    let q = EmQuery::new(m, n, a, mode)?;
    let spec = q.n_spec();
    let certs = certify(m, spec, mode, &ctx.cfg)?;
    let mut cmd = format!("em-check --m {m}");
    if let Some(n) = n {
        cmd += &format!(" --n {n}");
    }
    if mode == EmMode::Geme {
        cmd += &format!(" --a {a} --mode geme");
    }
    let mut rec = OutputRecord::new(cmd);
    rec.input("m", m).input("n", spec).input("a", a).input("mode", format!("{mode:?}"));
    let fails = certs.iter().filter(|c| c.status == Status::Fail).count();
    rec.output_list("certificates", certs.iter().map(|c| c.to_string()));
    rec.output("failed", fails).output("excluded", fails > 0);
    let mut code = EXIT_OK;
    if let Some(n) = n {
        // The equation itself, when it can be decided quickly.
        let holds = if mode == EmMode::Eme { equation_holds(m, n, 1) } else { equation_holds(m, n, a) };
        if let Ok(h) = holds {
            rec.output("equation holds", h);
            if h && fails > 0 {
                code = EXIT_VIOLATION;
            }
        }
    }
    rec.check("Erdős–Moser constraints");
    Ok((rec, code))
}

fn cmd_em_sieve(lo: u64, hi: u64, n: Option<u64>, profile: Option<u64>, mode: EmMode, ctx: &Ctx) -> Outcome {
    if lo == 0 || lo > hi {
        return Err(Failure::Usage("em-sieve needs 1 <= lo <= hi".into()));
    }
    let spec = match (n, profile) {
        (Some(0), _) | (_, Some(0)) => return Err(Failure::Usage("n and the profile must be positive".into())),
        (Some(n), _) => Some(NSpec::Exact(n)),
        (None, Some(d)) => Some(NSpec::Profile(d)),
        (None, None) => None,
    };
    let chunk = 4096u64;
    let starts: Vec<u64> = (0..=(hi - lo) / chunk).map(|i| lo + i * chunk).collect();
    let parts: Vec<Result<SieveSummary, Error>> = starts
        .par_iter()
        .map(|&a| sieve_range(a, hi.min(a.saturating_add(chunk - 1)), spec, mode, &ctx.cfg))
        .collect();
    let mut summary = SieveSummary::default();
    for p in parts {
        summary.merge(p?);
    }
    let mut cmd = format!("em-sieve --lo {lo} --hi {hi}");
    if let Some(s) = spec {
        cmd += &format!(" ({s})");
    }
    let mut rec = OutputRecord::new(cmd);
    rec.input("lo", lo).input("hi", hi);
    if let Some(s) = spec {
        rec.input("n", s);
    }
    rec.output("examined", summary.examined)
        .output("survivor count", summary.survivors.len())
        .output_list("survivors", &summary.survivors)
        .output_list("eliminated", summary.histogram.iter().map(|(k, v)| format!("{k}={v}")))
        .check("Erdős–Moser constraints");
    Ok((rec, EXIT_OK))
}

fn cmd_verify(suite: &str, quick: bool, ctx: &Ctx) -> Outcome {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(suite).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            Failure::Usage(format!("unknown suite {suite:?} (expected {} or all)", names.join(", ")))
        })?]
    };
    let shared = load_table(ctx)?;
    let before = shared.snapshot().max_index();
    let mut rec = OutputRecord::new(format!("verify --suite {suite}{}", if quick { " --quick" } else { "" }));
    rec.input("suite", suite).input("quick", quick);
    let mut all = true;
    let mut lines = Vec::new();
    for s in suites {
        for p in s.run(quick, &ctx.cfg, &shared) {
            all &= p.holds();
            rec.check(&p.name);
            lines.push(p.to_string());
        }
    }
    store_table(ctx, &shared, before)?;
    rec.output_list("properties", lines).output("result", if all { "PASS" } else { "FAIL" });
    Ok((rec, if all { EXIT_OK } else { EXIT_VIOLATION }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mf(args: &str) -> Output {
        run(std::iter::once("mf").chain(args.split_whitespace()))
    }

    fn record(out: &Output) -> OutputRecord {
        OutputRecord::from_table(&out.stdout).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let o = mf("valuation --m 53 --n 2 --p 3");
        assert_eq!(o.code, 0);
        let r = record(&o);
        assert_eq!(r.scalar("actual"), Some("2"));
        assert_eq!(r.scalar("predicted"), Some("2"));

        let r = record(&mf("valuation --m 9 --n 1 --p 3"));
        assert_eq!(r.scalar("prediction"), Some("AT_LEAST"));
        assert_eq!(r.scalar("predicted"), Some("2"));

        let o = mf("valuation --m 8 --n 2 --p 5");
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("not covered"));
    }

    #[test]
    fn odd_half_branch_reports_violation() {
        let o = mf("valuation --m 4 --n 3 --p 3");
        assert_eq!(o.code, EXIT_VIOLATION);
        assert_eq!(record(&o).scalar("proven"), Some("false"));
    }

    #[test]
    fn bernoulli_values() {
        for (k, num, den) in [(12, "-691", "2730"), (0, "1", "1"), (24, "-236364091", "2730"), (1, "-1", "2")] {
            let r = record(&mf(&format!("bernoulli --k {k}")));
            assert_eq!((r.scalar("numerator"), r.scalar("denominator")), (Some(num), Some(den)));
        }
    }

    #[test]
    fn usage_errors() {
        assert_eq!(mf("verify --suite nosuch").code, EXIT_USAGE);
        assert_eq!(mf("search --hi 10").code, EXIT_USAGE);
        assert_eq!(mf("search --giuga --ppp --hi 10").code, EXIT_USAGE);
        assert_eq!(mf("frobnicate").code, EXIT_USAGE);
        assert_eq!(mf("--jobs 0 bernoulli --k 2").code, EXIT_USAGE);
        assert_eq!(mf("em-sieve --lo 5 --hi 4").code, EXIT_USAGE);
        let help = mf("--help");
        assert_eq!(help.code, 0);
        assert!(help.stdout.contains("valuation"));
    }

    #[test]
    fn resource_exit_code() {
        assert_eq!(exit_code(&Error::IncompleteFactorization { n: 1.into(), cofactor: 1.into() }), EXIT_RESOURCE);
        assert_eq!(exit_code(&Error::Violation("x".into())), EXIT_VIOLATION);
    }

    #[test]
    fn egyptian_generation() {
        let r = record(&mf("egyptian --n 42 --rule giuga-down"));
        assert_eq!(r.scalar("d"), Some("-41"));
        assert_eq!(r.scalar("generated"), Some("1722"));
        let list = r.get("generated classification").unwrap().as_list().unwrap();
        assert!(list.iter().any(|s| s == "STRONG_GIUGA"));
        assert_eq!(mf("egyptian --n 6 --rule ppp-split").code, EXIT_USAGE);
    }

    #[test]
    fn em_commands() {
        let r = record(&mf("em-sieve --lo 1 --hi 100"));
        assert_eq!(r.get("survivors").unwrap().as_list().unwrap(), ["10", "42", "82"]);
        let o = mf("em-check --m 2 --n 1 --a 1 --mode geme");
        assert_eq!(o.code, 0);
        assert_eq!(record(&o).scalar("equation holds"), Some("true"));
        assert_eq!(mf("em-check --m 4 --a 2").code, EXIT_USAGE);
    }

    #[test]
    fn json_output_round_trips() {
        let o = mf("--json search --ppp --hi 100000");
        let r = OutputRecord::from_json(&o.stdout).unwrap();
        assert_eq!(r.get("hits").unwrap().as_list().unwrap(), ["2", "6", "42", "1806", "47058"]);
        let empty = record(&mf("search --ppp --hi 1"));
        assert_eq!(empty.get("hits").unwrap().as_list().unwrap().len(), 0);
    }
}
