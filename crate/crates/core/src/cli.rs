//! The `kummer` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 data or integrity error. Results go to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::kummer::{
    dt_degree_zero, kummer_euler_table, kummer_euler_via_w, verify_all, FaultInjection,
    KummerError, KummerParams, Suite, VerifyConfig,
};
use crate::partitions::{
    cache_path, cache_store, count_order_ideals_table, PartitionError, PartitionStore,
    PartitionTable, Strategy, TableSource,
};
use crate::weights::WeightCache;
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

/// Rows up to this `n` are also recomputed through the weighted partition
/// sum; beyond it the number of partitions makes that route slow.
pub const ROUTE_CHECK_LIMIT: usize = 20;

#[derive(Parser, Debug)]
#[command(
    name = "kummer",
    version,
    about = "Euler characteristics of generalized Kummer schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate chi(K_n(A x Y)) for n = 1..=n-max.
    Table(TableArgs),
    /// Run the cross-route verification suite.
    Verify(VerifyArgs),
    /// Count m-dimensional partitions by brute force.
    Oracle(OracleArgs),
    /// Degree-zero DT invariants of abelian threefolds.
    Dt(DtArgs),
}

#[derive(Args, Debug)]
struct CacheArgs {
    /// Directory holding cached partition tables [default: per-user data dir]
    #[arg(long, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Never read or write cached tables.
    #[arg(long, conflicts_with = "cache")]
    no_cache: bool,
}

impl CacheArgs {
    fn store(&self) -> PartitionStore {
        let dir = if self.no_cache {
            None
        } else {
            self.cache.clone().or_else(default_cache_dir)
        };
        match dir {
            Some(d) => PartitionStore::with_cache_dir(d),
            None => PartitionStore::in_memory(),
        }
        .progress_notes(true)
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    dirs::data_dir().map(|d| d.join("kummer-euler"))
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Dimension of the abelian variety A.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    g: u32,
    /// Dimension of Y.
    #[arg(long, default_value_t = 0)]
    r: u32,
    /// Euler characteristic of Y.
    #[arg(long = "chi-y", allow_negative_numbers = true, default_value_t = 1)]
    chi_y: i64,
    #[arg(long = "n-max", value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "n-max", default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Number of random sequences for the partition-sum equivalence check.
    #[arg(long, default_value_t = 50)]
    random_sequences: usize,
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
    #[arg(long = "k-max")]
    k_max: u64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Tree)]
    strategy: StrategyArg,
    /// Write the counts into this cache directory.
    #[arg(long, value_name = "PATH")]
    cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DtArgs {
    #[arg(long = "n-max", value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Series,
    Partitions,
    Weights,
    Kummer,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Series => Suite::Series,
            SuiteArg::Partitions => Suite::Partitions,
            SuiteArg::Weights => Suite::Weights,
            SuiteArg::Kummer => Suite::Kummer,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Tree,
    Dedup,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableParams {
    pub g: u32,
    pub r: u32,
    pub chi_y: i64,
    pub m: u32,
}

/// One line of `table` output. Numbers are strings so nothing is rounded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: u64,
    pub chi_kn: String,
    pub orbifold: String,
    pub routes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub schema_version: u32,
    pub params: TableParams,
    pub rows: Vec<OutputRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtRecord {
    pub n: u64,
    pub dt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtDocument {
    pub schema_version: u32,
    pub rows: Vec<DtRecord>,
}

/// Parses `"p"` or `"p/q"` back into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.parse().ok()
}

struct Failure {
    code: i32,
    message: String,
}

impl From<KummerError> for Failure {
    fn from(e: KummerError) -> Self {
        let code = match e {
            KummerError::InvalidParams(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        KummerError::from(e).into()
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_DATA,
            message: format!("write failed: {e}"),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure {
            code: EXIT_DATA,
            message: format!("csv output failed: {e}"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Table(a) => cmd_table(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Oracle(a) => cmd_oracle(&a, out, err),
        Command::Dt(a) => cmd_dt(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn to_usize(v: u64) -> Result<usize, Failure> {
    usize::try_from(v).map_err(|_| Failure {
        code: EXIT_USAGE,
        message: format!("{v} is too large"),
    })
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let n_max = to_usize(a.n_max)?;
    let params = KummerParams::new(a.g, a.r, a.chi_y, n_max)?;
    let store = a.cache.store();
    let table = kummer_euler_table(&params, &store)?;
    let weights = WeightCache::new();

    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut routes = vec!["log_series".to_string()];
        if n <= ROUTE_CHECK_LIMIT {
            let via_w = kummer_euler_via_w(&params, n, &store, &weights)?;
            if via_w != Rational::from_integer(table.chi(n).clone()) {
                return Err(Failure {
                    code: EXIT_DATA,
                    message: format!(
                        "internal consistency: routes disagree at n={n}: {} vs {via_w}",
                        table.chi(n)
                    ),
                });
            }
            routes.push("punctual_weights".to_string());
        }
        rows.push(OutputRecord {
            n: n as u64,
            chi_kn: table.chi(n).to_string(),
            orbifold: table.orbifold(n).to_string(),
            routes,
        });
    }
    let doc = TableDocument {
        schema_version: 1,
        params: TableParams {
            g: a.g,
            r: a.r,
            chi_y: a.chi_y,
            m: params.m(),
        },
        rows,
    };
    match a.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &doc).expect("table document serializes");
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["g", "r", "chi_y", "n", "chi_kn", "orbifold"])?;
            for row in &doc.rows {
                w.write_record([
                    a.g.to_string(),
                    a.r.to_string(),
                    a.chi_y.to_string(),
                    row.n.to_string(),
                    row.chi_kn.clone(),
                    row.orbifold.clone(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let n_max = to_usize(a.n_max)?;
    let config = VerifyConfig {
        suite: a.suite.into(),
        random_sequences: a.random_sequences,
        seed: a.seed,
        faults: FaultInjection::default(),
        ..VerifyConfig::with_n_max(n_max)
    };
    let store = a.cache.store();
    let report = verify_all(&config, &store)?;
    match a.format {
        ReportFormat::Text => writeln!(out, "{report}")?,
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).expect("report serializes");
            writeln!(out)?;
        }
    }
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let k_max = to_usize(a.k_max)?;
    let dim = a.m as usize;
    let counts = match a.strategy {
        StrategyArg::Tree => count_order_ideals_table(dim, k_max, Strategy::Tree)?,
        StrategyArg::Dedup => count_order_ideals_table(dim, k_max, Strategy::Dedup)?,
        StrategyArg::Both => {
            let tree = count_order_ideals_table(dim, k_max, Strategy::Tree)?;
            let dedup = count_order_ideals_table(dim, k_max, Strategy::Dedup)?;
            if tree != dedup {
                let k = tree
                    .iter()
                    .zip(&dedup)
                    .position(|(x, y)| x != y)
                    .unwrap_or(0);
                writeln!(
                    err,
                    "strategies disagree at k={k}: tree {} vs dedup {}",
                    tree[k], dedup[k]
                )?;
                return Ok(EXIT_VERIFY_FAILED);
            }
            tree
        }
    };
    let line: Vec<String> = counts.iter().map(u64::to_string).collect();
    writeln!(out, "{}", line.join(" "))?;
    if let Some(dir) = &a.cache {
        std::fs::create_dir_all(dir).map_err(|source| PartitionError::Io {
            path: dir.clone(),
            source,
        })?;
        let table = PartitionTable {
            m: a.m,
            counts: counts.into_iter().map(Into::into).collect(),
            source: TableSource::BruteForce,
        };
        cache_store(&table, &cache_path(dir, a.m))?;
    }
    Ok(EXIT_OK)
}

fn cmd_dt(a: &DtArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let rows: Vec<DtRecord> = (1..=a.n_max)
        .map(|n| DtRecord {
            n,
            dt: dt_degree_zero(n).to_string(),
        })
        .collect();
    match a.format {
        Format::Json => {
            serde_json::to_writer_pretty(
                &mut *out,
                &DtDocument {
                    schema_version: 1,
                    rows,
                },
            )
            .expect("dt document serializes");
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["n", "dt"])?;
            for r in &rows {
                w.write_record([r.n.to_string(), r.dt.clone()])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}
