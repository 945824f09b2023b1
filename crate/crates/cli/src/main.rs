//! `multizero`: bound queries, table regeneration, and verification sweeps
//! from the command line.
//!
//! Exit codes: 0 success, 1 verification/check failure, 2 usage error,
//! 3 method not applicable to the query.

use clap::{Args, Parser, Subcommand, ValueEnum};
use multizero_core::closed::{condition_a_holds, small_exponent_bound, two_var_upper};
use multizero_core::dbound::{d_bound, sz_gen_bound};
use multizero_core::linear::{equality_prediction, h_bound, HBoundOutcome};
use multizero_core::query::BoundQuery;
use multizero_core::tables::{
    builtin_spec, compare_tables, generate_table, max_improvement_stat, mean_gap_stat,
    mean_improvement_stat, milli_of_ratio, reference_table, DecimalMode, GenerateOptions,
    MeanImprovementReading, TableId,
};
use multizero_core::verify::{
    verify_closed_forms, verify_dominance, verify_equalities,
    verify_hasse_multiplicity_inequality, verify_oracle_soundness,
    verify_witness_achievability, ClosedConfig, DominanceConfig, EqualitiesConfig, HasseConfig,
    OracleConfig, RunReport, WitnessConfig,
};
use multizero_core::Error as CoreError;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_VERIFICATION_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_APPLICABLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "multizero",
    version,
    about = "Bounds on the number of multiplicity-r zeros of multivariate polynomials over grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate bounds for one query
    Bound(BoundArgs),
    /// Regenerate a reference table (CSV plus JSON sidecar) or one summary statistic
    Table(TableArgs),
    /// Run a verification sweep and report pass/fail counts
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Method {
    D,
    H,
    Closed2,
    Small,
    Szgen,
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct BoundArgs {
    /// Leading-monomial exponents i1,...,im
    #[arg(long, value_delimiter = ',', required = true)]
    exponents: Vec<u32>,
    /// Target multiplicity r
    #[arg(long = "r")]
    multiplicity: u32,
    /// Grid set sizes s1,...,sm
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<u32>,
    /// Which bound to evaluate
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// Print the maximizing root assignment alongside h
    #[arg(long)]
    witness: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum StatArg {
    MaxImprovement,
    MeanImprovement,
    MeanGap,
}

#[derive(Args)]
struct TableArgs {
    /// Table id (t1..t8)
    #[arg(long, conflicts_with = "stat")]
    table: Option<String>,
    /// Single summary statistic (needs --m, --q, --r)
    #[arg(long, value_enum, requires_all = ["m", "q", "multiplicity"])]
    stat: Option<StatArg>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long = "r")]
    multiplicity: Option<u32>,
    /// Directory for the CSV and JSON sidecar (defaults to stdout only)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compare against the embedded reference values; mismatches exit 1
    #[arg(long)]
    check: bool,
    /// Also compute cells the reference marks '?' (expensive)
    #[arg(long)]
    include_unknown: bool,
    /// Tolerance in thousandths for decimal comparisons under --check
    #[arg(long, default_value_t = 1)]
    milli_tolerance: i64,
    /// Reading of the mean-improvement expression
    #[arg(long, value_enum, default_value_t = MeanReadingArg::PerMultiplicity)]
    mean_reading: MeanReadingArg,
    /// Decimal reduction for improvement statistics
    #[arg(long, value_enum, default_value_t = DecimalArg::Truncate)]
    improvement_mode: DecimalArg,
    /// Decimal reduction for the gap statistic
    #[arg(long, value_enum, default_value_t = DecimalArg::Truncate)]
    gap_mode: DecimalArg,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum MeanReadingArg {
    PerMultiplicity,
    Raw,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum DecimalArg {
    Truncate,
    HalfUp,
    Ceil,
}

impl From<DecimalArg> for DecimalMode {
    fn from(a: DecimalArg) -> Self {
        match a {
            DecimalArg::Truncate => DecimalMode::Truncate,
            DecimalArg::HalfUp => DecimalMode::HalfUp,
            DecimalArg::Ceil => DecimalMode::Ceil,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum VerifyMode {
    Oracle,
    Witness,
    Dominance,
    Closed,
    Equalities,
    Hasse,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    mode: VerifyMode,
    /// Random trials (oracle: per leading monomial; hasse: total)
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_m: Option<u32>,
    #[arg(long)]
    max_s: Option<u32>,
    #[arg(long)]
    max_r: Option<u32>,
    #[arg(long)]
    max_q: Option<u64>,
    /// Largest leading-monomial exponent in the oracle sweep
    #[arg(long)]
    max_i: Option<u32>,
    /// Field characteristic for the oracle sweep
    #[arg(long)]
    field: Option<u64>,
    /// Floor of the random-support box in the oracle sweep (defaults to
    /// the largest grid exponent)
    #[arg(long)]
    support_cap: Option<u32>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Bound(args) => run_bound(&args),
        Command::Table(args) => run_table(&args),
        Command::Verify(args) => run_verify(&args),
    };
    match code {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// MULTIZERO_THREADS caps the rayon pool used by sweeps and tables.
fn configure_threads() {
    if let Ok(value) = std::env::var("MULTIZERO_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn exit_code_for(err: &CoreError) -> u8 {
    match err {
        CoreError::NotTwoVariables(_)
        | CoreError::ConditionANeedsTwoVariables(_)
        | CoreError::ConditionAViolated => EXIT_NOT_APPLICABLE,
        _ => EXIT_USAGE,
    }
}

fn run_bound(args: &BoundArgs) -> Result<u8, CoreError> {
    let query = BoundQuery::new(
        args.exponents.clone(),
        args.multiplicity,
        args.sizes.clone(),
    )?;
    let mut out = serde_json::Map::new();
    let mut lines: Vec<String> = Vec::new();

    let want = |m: Method| args.method == m || args.method == Method::All;

    if want(Method::D) {
        let d = d_bound(&query)?.value();
        lines.push(format!("d = {d}"));
        out.insert("d".into(), d.into());
    }
    if want(Method::H) {
        match h_bound(&query)? {
            HBoundOutcome::Attained { count, witness } => {
                let mut line = format!("h = {}", count.value());
                if args.witness {
                    line.push_str(&format!("  witness = {witness}"));
                }
                lines.push(line);
                out.insert("h".into(), count.value().into());
                if args.witness {
                    out.insert(
                        "witness".into(),
                        serde_json::to_value(witness.per_variable()).unwrap(),
                    );
                }
            }
            HBoundOutcome::NoExactProduct { variable } => {
                lines.push(format!(
                    "h = undefined: no product of univariate linear terms has this exact \
                     leading monomial (variable {variable} needs more than r*s roots)"
                ));
                out.insert("h".into(), serde_json::Value::Null);
            }
        }
    }
    if want(Method::Szgen) {
        let value = sz_gen_bound(&query)?.value();
        lines.push(format!("szgen = {value}"));
        out.insert("szgen".into(), value.into());
    }
    if want(Method::Closed2) {
        if query.num_vars() != 2 {
            if args.method == Method::Closed2 {
                return Err(CoreError::NotTwoVariables(query.num_vars()));
            }
        } else {
            let (value, case) = two_var_upper(
                query.exponents()[0],
                query.exponents()[1],
                args.multiplicity,
                query.set_sizes()[0],
                query.set_sizes()[1],
            )?;
            lines.push(format!(
                "closed2 = {value} (floor {}) case {case}",
                value.floor()
            ));
            out.insert("closed2".into(), value.to_string().into());
            out.insert("closed2_floor".into(), (value.floor() as i64).into());
            out.insert("closed2_case".into(), case.to_string().into());
        }
    }
    if want(Method::Small) {
        let applicable = query.num_vars() >= 2 && condition_a_holds(&query)?;
        if !applicable {
            if args.method == Method::Small {
                return Err(if query.num_vars() < 2 {
                    CoreError::ConditionANeedsTwoVariables(query.num_vars())
                } else {
                    CoreError::ConditionAViolated
                });
            }
            lines.push("small = not applicable (condition A does not hold)".into());
        } else {
            let value = small_exponent_bound(&query)?;
            lines.push(format!("small = {value} (floor {})", value.floor()));
            out.insert("small".into(), value.to_string().into());
            out.insert("small_floor".into(), (value.floor() as i64).into());
        }
    }
    if args.method == Method::All {
        if let Some((value, rule)) = equality_prediction(&query)? {
            lines.push(format!("equality = {} via {rule}", value.value()));
            out.insert("equality".into(), value.value().into());
            out.insert("equality_rule".into(), rule.to_string().into());
        }
    }

    match args.format {
        OutputFormat::Text => {
            println!("query: {query}");
            for line in lines {
                println!("{line}");
            }
        }
        OutputFormat::Json => {
            out.insert("query".into(), serde_json::to_value(&query).unwrap());
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(EXIT_OK)
}

fn run_table(args: &TableArgs) -> Result<u8, CoreError> {
    if let Some(stat) = args.stat {
        return run_single_stat(args, stat);
    }
    let Some(table) = &args.table else {
        eprintln!("error: pass either --table t1..t8 or --stat with --m/--q/--r");
        return Ok(EXIT_USAGE);
    };
    let id: TableId = match table.parse() {
        Ok(id) => id,
        Err(msg) => {
            eprintln!("error: {msg}");
            return Ok(EXIT_USAGE);
        }
    };
    let options = GenerateOptions {
        include_unknown: args.include_unknown,
        mean_reading: match args.mean_reading {
            MeanReadingArg::PerMultiplicity => MeanImprovementReading::PerMultiplicity,
            MeanReadingArg::Raw => MeanImprovementReading::Raw,
        },
        improvement_mode: args.improvement_mode.into(),
        gap_mode: args.gap_mode.into(),
    };
    let generated = generate_table(&builtin_spec(id), &options)?;

    if let Some(dir) = &args.out {
        match generated.write_files(dir) {
            Ok(path) => eprintln!("wrote {}", path.display()),
            Err(err) => {
                eprintln!("error: cannot write outputs: {err}");
                return Ok(EXIT_USAGE);
            }
        }
    } else {
        print!("{}", generated.to_csv());
    }

    if args.check {
        let mismatches = compare_tables(&generated, &reference_table(id), args.milli_tolerance);
        if mismatches.is_empty() {
            eprintln!("check {id}: all reference cells match");
        } else {
            eprintln!("check {id}: {} mismatches", mismatches.len());
            for m in mismatches.iter().take(20) {
                eprintln!("  {m}");
            }
            return Ok(EXIT_VERIFICATION_FAILED);
        }
    }
    Ok(EXIT_OK)
}

fn run_single_stat(args: &TableArgs, stat: StatArg) -> Result<u8, CoreError> {
    let (m, q, r) = (
        args.m.unwrap_or(2),
        args.q.unwrap_or(5),
        args.multiplicity.unwrap_or(2),
    );
    let (label, exact, mode) = match stat {
        StatArg::MaxImprovement => (
            "max-improvement",
            max_improvement_stat(m, q, r)?.to_big(),
            DecimalMode::from(args.improvement_mode),
        ),
        StatArg::MeanImprovement => (
            "mean-improvement",
            mean_improvement_stat(
                m,
                q,
                r,
                match args.mean_reading {
                    MeanReadingArg::PerMultiplicity => MeanImprovementReading::PerMultiplicity,
                    MeanReadingArg::Raw => MeanImprovementReading::Raw,
                },
            )?,
            DecimalMode::from(args.improvement_mode),
        ),
        StatArg::MeanGap => (
            "mean-gap",
            mean_gap_stat(m, q, r)?,
            DecimalMode::from(args.gap_mode),
        ),
    };
    let milli = milli_of_ratio(&exact, mode);
    println!(
        "{label}(m={m}, q={q}, r={r}) = {exact} ~ {}.{:03}",
        milli / 1000,
        milli % 1000
    );
    Ok(EXIT_OK)
}

fn print_report(report: &RunReport, format: OutputFormat) {
    match format {
        OutputFormat::Text => print!("{}", report.render_text()),
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(report).unwrap())
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<u8, CoreError> {
    let report = match args.mode {
        VerifyMode::Oracle => {
            let mut cfg = OracleConfig::default();
            if let Some(v) = args.field {
                cfg.field = v;
            }
            if let Some(v) = args.max_m {
                cfg.num_vars = v;
            }
            if let Some(v) = args.max_r {
                cfg.multiplicity = v;
            }
            if let Some(v) = args.max_i {
                cfg.max_exponent = v;
            }
            if let Some(v) = args.trials {
                cfg.trials = v;
            }
            if let Some(v) = args.seed {
                cfg.seed = v;
            }
            cfg.support_floor = args.support_cap;
            verify_oracle_soundness(&cfg)?
        }
        VerifyMode::Witness => {
            let mut cfg = WitnessConfig::default();
            if let Some(v) = args.max_m {
                cfg.max_m = v;
            }
            if let Some(v) = args.max_s {
                cfg.max_s = v;
            }
            if let Some(v) = args.max_r {
                cfg.max_r = v;
            }
            verify_witness_achievability(&cfg)?
        }
        VerifyMode::Dominance => {
            let mut cfg = DominanceConfig::default();
            if let Some(v) = args.max_q {
                cfg.max_q = v;
            }
            if let Some(v) = args.max_r {
                cfg.max_r = v as u64;
            }
            if let Some(v) = args.max_m {
                cfg.max_m = v as u64;
            }
            verify_dominance(&cfg)?
        }
        VerifyMode::Closed => {
            let mut cfg = ClosedConfig::default();
            if let Some(v) = args.max_r {
                cfg.two_var_max_r = v;
                cfg.cond_max_r = v.min(4);
            }
            if let Some(v) = args.max_s {
                cfg.two_var_max_s = v;
                cfg.cond_max_s = v.min(6);
            }
            if let Some(v) = args.max_m {
                cfg.cond_max_m = v;
            }
            verify_closed_forms(&cfg)?
        }
        VerifyMode::Equalities => {
            let mut cfg = EqualitiesConfig::default();
            if let Some(v) = args.max_r {
                cfg.max_r = v;
                cfg.cond_max_r = v.min(4);
            }
            if let Some(v) = args.max_s {
                cfg.max_s = v;
                cfg.cond_max_s = v.min(6);
            }
            if let Some(v) = args.max_m {
                cfg.cond_max_m = v;
            }
            verify_equalities(&cfg)?
        }
        VerifyMode::Hasse => {
            let mut cfg = HasseConfig::default();
            if let Some(v) = args.trials {
                cfg.trials = v;
            }
            if let Some(v) = args.seed {
                cfg.seed = v;
            }
            if let Some(v) = args.max_m {
                cfg.max_vars = v;
            }
            if let Some(v) = args.field {
                cfg.fields = vec![v];
            }
            verify_hasse_multiplicity_inequality(&cfg)?
        }
    };
    print_report(&report, args.format);
    Ok(if report.ok() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    })
}
