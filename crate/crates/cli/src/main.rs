use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use detrep::acceptance::{run_suite, suite_passed};
use detrep::complexes::{build_c, build_d, c_ranks, d_ranks, sampled_exactness, verify_d_squared};
use detrep::extengine::{compare_chi, report_l2_l1, report_m_mdual};
use detrep::extensions::extend_ulrich;
use detrep::formulas::{self, big_to_json};
use detrep::model::{DegreeMatrix, DeterminantalModel};
use detrep::report::{scan_csv, scan_grid, ModelDescriptor, ReportEnvelope, ScanOptions};
use detrep::{table, with_prime, Error, Field, DEFAULT_PRIME};

mod range;

use range::{parse_range, GridRange};

#[derive(Parser)]
#[command(name = "detrep", version, about = "Representation type of linear determinantal schemes, computed exactly")]
struct Cli {
    /// Prime for the coefficient field GF(p).
    #[arg(long, global = true, env = "DETREP_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// f, g, h in both forms, the χ bounds and the wildness criterion.
    Formulas(FormulasArgs),
    /// Re-derive the table of (t, c, d) with Ext¹(L₂, L₁) ≠ 0 and diff it against the published rows.
    Table(TableArgs),
    /// Dimensions of graded Ext groups with their closed-form predictions.
    Ext(ExtArgs),
    /// χ(L₂, L₁(ν)) at ν = 0, −1, −2 against the closed-form bound.
    Chi(ModelArgs),
    /// Build C_i or D_i and check d² = 0 and exactness.
    Resolve(ResolveArgs),
    /// Rank-r extension of L₂^{r−1} by L₁ and its Ulrich numerics.
    Extend(ExtendArgs),
    /// Formula (and optionally oracle) values over a grid, as CSV.
    Scan(ScanArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FormulasArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    c: usize,
    #[arg(long)]
    d: Option<usize>,
    /// Restrict the χ bound to one twist.
    #[arg(long, allow_hyphen_values = true, value_parser = clap::value_parser!(i64).range(-2..=0))]
    nu: Option<i64>,
}

#[derive(Args)]
struct TableArgs {
    /// Print the embedded published rows instead of the comparison.
    #[arg(long, alias = "paper")]
    published: bool,
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    c: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Seeds tried before giving up on a majority.
    #[arg(long, default_value_t = 3)]
    retries: usize,
}

#[derive(Copy, Clone, ValueEnum)]
enum PairArg {
    #[value(name = "L2L1")]
    L2L1,
    #[value(name = "MMdual")]
    MMdual,
}

#[derive(Args)]
struct ExtArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value = "L2L1")]
    pair: PairArg,
    #[arg(long = "i", value_delimiter = ',', default_values_t = [0usize, 1, 2])]
    is: Vec<usize>,
    #[arg(long = "nu", value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0i64])]
    nus: Vec<i64>,
}

#[derive(Copy, Clone, ValueEnum)]
enum ComplexArg {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "D", alias = "d")]
    D,
}

#[derive(Args)]
struct ResolveArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum)]
    complex: ComplexArg,
    #[arg(long, allow_hyphen_values = true)]
    i: i64,
    /// Top degree for the exactness check (default t+c+2).
    #[arg(long)]
    nu_max: Option<i64>,
}

#[derive(Args)]
struct ExtendArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    rank: usize,
    /// Highest degree in which I·E = 0 is tested (default t+c+3).
    #[arg(long)]
    reg_bound: Option<i64>,
    /// Include the assembled presentation in the report.
    #[arg(long)]
    presentation: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_parser = parse_range)]
    t_range: GridRange,
    #[arg(long, value_parser = parse_range)]
    c_range: GridRange,
    #[arg(long, value_parser = parse_range)]
    d_range: GridRange,
    /// Also run the Ext oracle where it fits under the size caps.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 21)]
    max_n: usize,
    #[arg(long, default_value_t = 7)]
    max_tc: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Criteria to run (default: all).
    #[arg(long, value_delimiter = ',')]
    criteria: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// Failures mapped onto exit codes.
enum Failure {
    Usage(String),
    Check(String),
    Degenerate(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateSeeds(m) => Failure::Degenerate(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Check(format!("i/o: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let p = cli.prime;
    let result = with_prime!(p, F => run::<F>(&cli, &argv));
    let outcome = match result {
        Ok(r) => r,
        Err(e) => Err(Failure::Usage(format!("{e}; supported: {:?}", detrep::field::SUPPORTED_PRIMES))),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("detrep: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("detrep: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Degenerate(m)) => {
            eprintln!("detrep: {m}");
            ExitCode::from(3)
        }
    }
}

fn emit(env: ReportEnvelope) -> Outcome {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", env.to_pretty())?;
    Ok(())
}

fn run<F: Field>(cli: &Cli, argv: &[String]) -> Outcome {
    let p = cli.prime;
    let command = argv.to_vec();
    match &cli.command {
        Command::Formulas(a) => cmd_formulas(a, command),
        Command::Table(a) => cmd_table(a),
        Command::Ext(a) => cmd_ext::<F>(a, p, command),
        Command::Chi(a) => cmd_chi::<F>(a, p, command),
        Command::Resolve(a) => cmd_resolve::<F>(a, p, command),
        Command::Extend(a) => cmd_extend::<F>(a, p, command),
        Command::Scan(a) => cmd_scan::<F>(a),
        Command::Verify(a) => cmd_verify::<F>(a),
    }
}

fn fgh_json(f: &formulas::Fgh) -> Value {
    json!({ "f": big_to_json(&f.f), "g": big_to_json(&f.g), "h": big_to_json(&f.h) })
}

fn cmd_formulas(a: &FormulasArgs, command: Vec<String>) -> Outcome {
    let both = formulas::fgh(a.t, a.c)?;
    let mut results = json!({
        "t": a.t,
        "c": a.c,
        "fgh": fgh_json(&both.closed),
        "fgh_sum": fgh_json(&both.sum),
        "forms_agree": both.agree(),
    });
    if let Some(d) = a.d {
        if a.c >= 2 && d >= 2 {
            let nus: Vec<i64> = a.nu.map(|v| vec![v]).unwrap_or_else(|| vec![0, -1, -2]);
            let mut chi = serde_json::Map::new();
            for nu in nus {
                chi.insert(nu.to_string(), big_to_json(&formulas::chi_bound(a.t, a.c, d, nu)?));
            }
            results["d"] = json!(d);
            results["chi_bound"] = Value::Object(chi);
            results["bound_attained"] = json!(d == 2 || a.t <= 3);
            results["wild_polynomial"] = big_to_json(&formulas::wild_polynomial(a.t, a.c, d));
            results["criterion"] = json!(formulas::wild_criterion(a.t, a.c, d));
            results["in_published_table"] = json!(table::in_published_table(a.t, a.c, d));
        } else {
            results["d"] = json!(d);
        }
        let v = formulas::verdict(a.t, a.c, a.c + d)?;
        results["verdict"] = serde_json::to_value(&v).expect("verdict serializes");
    }
    emit(ReportEnvelope::new(command, None, results))
}

fn cmd_table(a: &TableArgs) -> Outcome {
    let mut out = io::stdout().lock();
    if a.published {
        writeln!(out, "t,c,d")?;
        for r in table::PUBLISHED_TABLE.iter() {
            writeln!(out, "{}", r.to_string().replace(" & ", ","))?;
        }
        return Ok(());
    }
    let checks = table::check_table();
    write!(out, "{}", table::table_csv(&checks))?;
    let diff = table::table_diff(&checks);
    if diff.is_empty() {
        Ok(())
    } else {
        for line in &diff {
            eprintln!("{line}");
        }
        Err(Failure::Check(format!("{} rows differ from the published table", diff.len())))
    }
}

fn linear_model<F: Field>(a: &ModelArgs) -> Result<DeterminantalModel<F>, Failure> {
    Ok(DeterminantalModel::<F>::linear(a.t, a.c, a.n, a.seed)?)
}

fn descriptor(a: &ModelArgs, p: u64) -> ModelDescriptor {
    ModelDescriptor::linear(a.t, a.c, Some(a.n), p, a.seed)
}

fn cmd_ext<F: Field>(a: &ExtArgs, p: u64, command: Vec<String>) -> Outcome {
    let m = &a.model;
    let report = match a.pair {
        PairArg::L2L1 => report_l2_l1::<F>(m.t, m.c, m.n, &a.is, &a.nus, m.seed, m.retries)?,
        PairArg::MMdual => {
            if a.nus != [0] {
                return Err(Failure::Usage("the M/M^v pair is computed in degree 0 only".into()));
            }
            report_m_mdual::<F>(&DegreeMatrix::linear(m.t, m.c), m.n, &a.is, m.seed, m.retries)?
        }
    };
    let warnings = report.warnings.clone();
    let results = serde_json::to_value(&report).expect("report serializes");
    emit(ReportEnvelope::new(command, Some(descriptor(m, p)), results).with_warnings(warnings))
}

fn cmd_chi<F: Field>(a: &ModelArgs, p: u64, command: Vec<String>) -> Outcome {
    let cmp = compare_chi::<F>(a.t, a.c, a.n, a.seed, a.retries)?;
    let warnings = cmp.warnings.clone();
    let results = serde_json::to_value(&cmp).expect("comparison serializes");
    emit(ReportEnvelope::new(command, Some(descriptor(a, p)), results).with_warnings(warnings))
}

fn cmd_resolve<F: Field>(a: &ResolveArgs, p: u64, command: Vec<String>) -> Outcome {
    let m = &a.model;
    let model = linear_model::<F>(m)?;
    let (cx, expected) = match a.complex {
        ComplexArg::C => {
            let i = usize::try_from(a.i).map_err(|_| Failure::Usage("C_i needs i ≥ 0".into()))?;
            (build_c(&model, i)?, c_ranks(m.t, m.c, i))
        }
        ComplexArg::D => (build_d(&model, a.i)?, d_ranks(m.t, m.c, a.i)),
    };
    let nu_max = a.nu_max.unwrap_or((m.t + m.c + 2) as i64);
    let exact = sampled_exactness(&cx, 0, nu_max);
    let ranks: Vec<u64> = cx.ranks().into_iter().map(|r| r as u64).collect();
    let results = json!({
        "complex": cx.kind.to_string(),
        "ranks": ranks,
        "expected_ranks": expected,
        "twists": cx.modules().iter().map(|f| f.twists.clone()).collect::<Vec<_>>(),
        "d_squared_zero": verify_d_squared(&cx),
        "exactness": exact,
    });
    emit(ReportEnvelope::new(command, Some(descriptor(m, p)), results))
}

fn cmd_extend<F: Field>(a: &ExtendArgs, p: u64, command: Vec<String>) -> Outcome {
    let m = &a.model;
    let model = linear_model::<F>(m)?;
    let reg = a.reg_bound.unwrap_or((m.t + m.c + 3) as i64);
    let (outcome, ext) = match extend_ulrich(&model, a.rank, reg) {
        Err(Error::NotEnoughClasses { requested, available }) => {
            let results = json!({
                "refused": true,
                "rank": a.rank,
                "requested_classes": requested,
                "a_module_class_dim": available,
            });
            emit(ReportEnvelope::new(command, Some(descriptor(m, p)), results))?;
            return Err(Failure::Usage(format!(
                "rank {} needs {requested} independent classes; the measured space has dimension {available}",
                a.rank
            )));
        }
        other => other?,
    };
    let mut results = serde_json::to_value(&outcome).expect("outcome serializes");
    if a.presentation {
        results["presentation"] = ext.to_json();
    }
    let mut warnings = Vec::new();
    if a.rank == 1 {
        warnings.push("rank 1: no extension classes used; E is L1".to_string());
    }
    emit(ReportEnvelope::new(command, Some(descriptor(m, p)), results).with_warnings(warnings))
}

fn cmd_scan<F: Field>(a: &ScanArgs) -> Outcome {
    let grid = scan_grid(&a.t_range.0, &a.c_range.0, &a.d_range.0);
    let opts = ScanOptions { oracle: a.oracle, max_n: a.max_n, max_tc: a.max_tc, seed: a.seed, jobs: a.jobs };
    match &a.out {
        Some(path) => scan_csv::<F, _>(&grid, &opts, &mut BufWriter::new(File::create(path)?))?,
        None => scan_csv::<F, _>(&grid, &opts, &mut io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_verify<F: Field>(a: &VerifyArgs) -> Outcome {
    let results = run_suite::<F>(&a.criteria, a.seed, |r| println!("{}", r.line()));
    let passed = results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed}/{} passed", results.len());
    if suite_passed(&results) {
        Ok(())
    } else {
        Err(Failure::Check("acceptance failure".into()))
    }
}
