mod output;

use std::io;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use compcount::asymptotics::{self, constant_c_with, constant_d_with, h_at_ones, l_at_ones, ScanOptions};
use compcount::counting::{self, brute_work, CountOptions, CountQuery, Method};
use compcount::partitions::{self, WeightVector};
use compcount::verify::{self, Suite, VerifyOptions};
use compcount::{ConstraintKind, CoprimalityConstraint, Error, Kernels, Mode};

use output::{Cell, Format, Table};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Exact and asymptotic counts of integer compositions under coprimality
/// constraints.
#[derive(Parser, Debug)]
#[command(name = "compcount", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Largest prime included in Euler products.
    #[arg(long, default_value_t = asymptotics::DEFAULT_PRIME_BOUND, global = true)]
    prime_bound: u64,
    /// Maximum nominal work (loop iterations) per exact count.
    #[arg(long, default_value_t = counting::DEFAULT_WORK_BUDGET, global = true)]
    work_budget: u128,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,
    /// Seed for randomized verification cases.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count k-compositions of n under one constraint.
    ///
    /// Columns: n, k, constraint, method, count, match. With the identity
    /// method the count is also enumerated when that fits in the work
    /// budget, and `match` reports agreement (empty otherwise).
    Count(CountArgs),
    /// Exact counts against main terms over an arithmetic range of n.
    ///
    /// Columns: n, family, k, s_or_t, exact, main, residual,
    /// normalized_residual (residual / n^(k-2)).
    Scan(ScanArgs),
    /// Truncated Euler-product constants.
    ///
    /// Columns: kind, k, s_or_t, prime_bound, value, tail_estimate.
    Constants(ConstantsArgs),
    /// Run self-verification suites; exits 1 on any failure.
    ///
    /// Columns: check_name, cases_run, failures.
    Verify(VerifyArgs),
    /// Restricted partition counts for a weight vector.
    ///
    /// Columns: n, weights, nonneg_count, positive_count, main_term,
    /// main_term_decimal, leading_coeff, next_coeff.
    Partition(PartitionArgs),
}

#[derive(Args, Debug)]
#[group(id = "constraint", required = true, multiple = false)]
struct ConstraintArgs {
    /// All k summands have gcd 1.
    #[arg(long)]
    all_coprime: bool,
    /// The first S summands are coprime to the remaining k - S.
    #[arg(long, value_name = "S")]
    split: Option<usize>,
    /// Every T of the summands have gcd 1.
    #[arg(long, visible_alias = "t-wise", value_name = "T")]
    pairwise: Option<usize>,
}

impl ConstraintArgs {
    fn build(&self, k: usize) -> compcount::Result<CoprimalityConstraint> {
        match (self.split, self.pairwise) {
            (Some(s), _) => CoprimalityConstraint::split(k, s),
            (_, Some(t)) => CoprimalityConstraint::t_wise(k, t),
            _ => CoprimalityConstraint::all_coprime(k),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Identity,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    constraint: ConstraintArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Identity)]
    method: MethodArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    k: usize,
    /// s for family A, t for family B; ignored for R.
    #[arg(long = "param", value_name = "S_OR_T")]
    s_or_t: Option<usize>,
    #[arg(long = "from")]
    n_from: u64,
    #[arg(long = "to")]
    n_to: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    step: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstantKind {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "L", alias = "l")]
    L,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    #[arg(long, value_enum)]
    kind: ConstantKind,
    #[arg(long)]
    k: usize,
    /// Comma-separated s (C, H) or t (D, L) values; all valid ones if omitted.
    #[arg(long = "params", value_delimiter = ',')]
    s_or_t: Vec<usize>,
    /// Decimal digits after the point.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..=15))]
    digits: u8,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Convolution,
    Partitions,
    Asymptotics,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mutation {
    Lambda,
    Psi,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    /// Run with a sign-flipped local table to confirm the suites notice.
    #[arg(long, value_enum, hide = true)]
    mutate: Option<Mutation>,
}

#[derive(Args, Debug)]
struct PartitionArgs {
    #[arg(long)]
    n: u64,
    /// Comma-separated positive weights.
    #[arg(long, value_delimiter = ',', required = true)]
    weights: Vec<u64>,
}

enum Failure {
    Usage(String),
    Budget(String),
    Verify,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Consistency(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    configure_threads(g.threads)?;
    let mode = Mode::default();
    let (table, status) = match &cli.command {
        Command::Count(a) => cmd_count(a, g, mode)?,
        Command::Scan(a) => cmd_scan(a, g, mode)?,
        Command::Constants(a) => (cmd_constants(a, g, mode)?, Ok(())),
        Command::Verify(a) => cmd_verify(a, g, mode),
        Command::Partition(a) => (cmd_partition(a)?, Ok(())),
    };
    table.write(g.format, io::stdout().lock())?;
    status
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: usize) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Internal(e.to_string()))
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: usize) -> Result<(), Failure> {
    Ok(())
}

type Outcome = (Table, Result<(), Failure>);

fn cmd_count(a: &CountArgs, g: &Global, mode: Mode) -> Result<Outcome, Failure> {
    let constraint = a.constraint.build(a.k)?;
    let method = match a.method {
        MethodArg::Brute => Method::BruteForce,
        MethodArg::Identity => Method::Identity,
    };
    let query = CountQuery::new(a.n, constraint, method)?;
    let opts = CountOptions {
        work_budget: g.work_budget,
        kernels: Kernels::STANDARD,
        mode,
    };
    let mut t = Table::new("count", &["n", "k", "constraint", "method", "count", "match"]);
    t.param("n", a.n)
        .param("k", a.k)
        .param("constraint", constraint_label(&constraint))
        .param("method", method_label(method))
        .param("work_budget", g.work_budget.to_string());
    let value = counting::count(&query, &opts)?;
    let check = match method {
        Method::Identity if brute_work(a.n, a.k) <= g.work_budget => {
            let brute = counting::brute_count_with(a.n, &constraint, mode);
            Cell::Bool(brute == value)
        }
        _ => Cell::Empty,
    };
    let mismatch = matches!(check, Cell::Bool(false));
    t.push(vec![
        Cell::Int(a.n),
        Cell::Int(a.k as u64),
        Cell::text(constraint_label(&constraint)),
        Cell::text(method_label(method)),
        Cell::Count(value),
        check,
    ]);
    let status = if mismatch { Err(Failure::Verify) } else { Ok(()) };
    Ok((t, status))
}

fn constraint_label(c: &CoprimalityConstraint) -> String {
    match c.kind() {
        ConstraintKind::AllCoprime => "all-coprime".into(),
        ConstraintKind::SplitCoprime(s) => format!("split:{s}"),
        ConstraintKind::TWiseCoprime(t) => format!("t-wise:{t}"),
    }
}

fn method_label(m: Method) -> &'static str {
    match m {
        Method::BruteForce => "brute",
        Method::Identity => "identity",
    }
}

fn cmd_scan(a: &ScanArgs, g: &Global, mode: Mode) -> Result<Outcome, Failure> {
    let constraint = match (a.family, a.s_or_t) {
        (Family::R, _) => CoprimalityConstraint::all_coprime(a.k)?,
        (Family::A, Some(s)) => CoprimalityConstraint::split(a.k, s)?,
        (Family::B, Some(t)) => CoprimalityConstraint::t_wise(a.k, t)?,
        (_, None) => return Err(Failure::Usage("--param is required for families A and B".into())),
    };
    if a.n_from < a.k as u64 {
        return Err(Failure::Usage(format!("--from must be at least k = {}", a.k)));
    }
    let ns: Vec<u64> = if a.n_from <= a.n_to {
        (a.n_from..=a.n_to).step_by(a.step as usize).collect()
    } else {
        Vec::new()
    };
    let mut t = Table::new(
        "scan",
        &["n", "family", "k", "s_or_t", "exact", "main", "residual", "normalized_residual"],
    );
    t.param("family", constraint.family())
        .param("k", a.k)
        .param("s_or_t", s_or_t_value(&constraint))
        .param("n_from", a.n_from)
        .param("n_to", a.n_to)
        .param("step", a.step)
        .param("prime_bound", g.prime_bound);
    let opts = ScanOptions {
        prime_bound: g.prime_bound,
        work_budget: g.work_budget,
        mode,
    };
    let report = asymptotics::residual_scan(&constraint, &ns, &opts)?;
    let s_or_t = match constraint.kind() {
        ConstraintKind::AllCoprime => Cell::Empty,
        _ => Cell::Int(constraint.parameter() as u64),
    };
    for row in &report.rows {
        t.push(vec![
            Cell::Int(row.n),
            Cell::text(constraint.family()),
            Cell::Int(a.k as u64),
            s_or_t.clone(),
            Cell::Count(row.exact_count.clone()),
            Cell::float(row.main_term, 6),
            Cell::float(row.residual, 6),
            Cell::float(row.normalized_residual, 9),
        ]);
    }
    t.partial = report.truncated;
    let status = if report.truncated {
        Err(Failure::Budget(format!(
            "work budget {} reached; {} of {} rows emitted",
            g.work_budget,
            report.rows.len(),
            ns.len()
        )))
    } else {
        Ok(())
    };
    Ok((t, status))
}

fn s_or_t_value(c: &CoprimalityConstraint) -> serde_json::Value {
    match c.kind() {
        ConstraintKind::AllCoprime => serde_json::Value::Null,
        _ => c.parameter().into(),
    }
}

fn cmd_constants(a: &ConstantsArgs, g: &Global, mode: Mode) -> Result<Table, Failure> {
    let k = a.k;
    if k < 3 {
        return Err(Failure::Usage("constants need k >= 3".into()));
    }
    let params: Vec<usize> = if a.s_or_t.is_empty() {
        match a.kind {
            ConstantKind::C | ConstantKind::H => (1..k).collect(),
            ConstantKind::D | ConstantKind::L => (2..=k).collect(),
        }
    } else {
        a.s_or_t.clone()
    };
    let kind_label = match a.kind {
        ConstantKind::C => "C",
        ConstantKind::D => "D",
        ConstantKind::H => "H",
        ConstantKind::L => "L",
    };
    let mut t = Table::new("constants", &["kind", "k", "s_or_t", "prime_bound", "value", "tail_estimate"]);
    t.param("kind", kind_label)
        .param("k", k)
        .param("s_or_t", params.clone())
        .param("prime_bound", g.prime_bound)
        .param("digits", a.digits);
    for p in params {
        let r = match a.kind {
            ConstantKind::C => constant_c_with(k, p, g.prime_bound, mode)?,
            ConstantKind::D => constant_d_with(k, p, g.prime_bound, mode)?,
            ConstantKind::H => h_at_ones(k, p, g.prime_bound)?,
            ConstantKind::L => l_at_ones(k, p, g.prime_bound)?,
        };
        t.push(vec![
            Cell::text(kind_label),
            Cell::Int(k as u64),
            Cell::Int(p as u64),
            Cell::Int(g.prime_bound),
            Cell::float(r.value, a.digits as usize),
            Cell::Sci {
                value: r.tail_bound_estimate,
                digits: 3,
            },
        ]);
    }
    Ok(t)
}

fn cmd_verify(a: &VerifyArgs, g: &Global, mode: Mode) -> Outcome {
    let suite = match a.suite {
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Convolution => Suite::Convolution,
        SuiteArg::Partitions => Suite::Partitions,
        SuiteArg::Asymptotics => Suite::Asymptotics,
        SuiteArg::All => Suite::All,
    };
    let kernels = match a.mutate {
        None => Kernels::STANDARD,
        Some(Mutation::Lambda) => Kernels::flipped_lambda(),
        Some(Mutation::Psi) => Kernels::flipped_psi(),
    };
    let opts = VerifyOptions {
        kernels,
        seed: g.seed,
        mode,
        work_budget: g.work_budget,
        prime_bound: g.prime_bound,
    };
    let results = verify::run_suite(suite, &opts);
    let mut t = Table::new("verify", &["check_name", "cases_run", "failures"]);
    t.param("suite", format!("{suite:?}").to_lowercase())
        .param("seed", g.seed);
    for r in &results {
        for line in &r.detail {
            eprintln!("{}: {line}", r.name);
        }
        t.push(vec![Cell::text(r.name), Cell::Int(r.cases_run), Cell::Int(r.failures)]);
    }
    let status = if results.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Verify)
    };
    (t, status)
}

fn cmd_partition(a: &PartitionArgs) -> Result<Table, Failure> {
    let w = WeightVector::new(a.weights.clone())?;
    let label = a.weights.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    let mut t = Table::new(
        "partition",
        &[
            "n",
            "weights",
            "nonneg_count",
            "positive_count",
            "main_term",
            "main_term_decimal",
            "leading_coeff",
            "next_coeff",
        ],
    );
    t.param("n", a.n).param("weights", a.weights.clone());
    let p: BigInt = partitions::count_nonneg(a.n, &w);
    let n_pos = partitions::count_positive(a.n, &w);
    let (main, main_dec, lead, next) = match partitions::main_term(a.n, &w) {
        Ok(m) => {
            let dec = ratio_decimal(&m);
            let (c1, c2) = if w.len() >= 2 {
                let (c1, c2) = partitions::leading_coeffs(&w)?;
                (Cell::text(c1.to_string()), Cell::text(c2.to_string()))
            } else {
                (Cell::Empty, Cell::Empty)
            };
            (Cell::text(m.to_string()), dec, c1, c2)
        }
        Err(Error::NonCoprimeWeights(_)) => (Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty),
        Err(e) => return Err(e.into()),
    };
    t.push(vec![
        Cell::Int(a.n),
        Cell::text(label),
        Cell::Count(p),
        Cell::Count(n_pos),
        main,
        main_dec,
        lead,
        next,
    ]);
    Ok(t)
}

fn ratio_decimal(r: &num_rational::BigRational) -> Cell {
    use num_traits::ToPrimitive;
    r.to_f64().map_or(Cell::Empty, |v| Cell::float(v, 6))
}
