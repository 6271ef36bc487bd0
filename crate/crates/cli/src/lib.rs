//! Command-line front end: single-instance allocation reports, probability
//! and ergodic-rate sweeps, and preset figure tables.
//!
//! Exit codes: 0 success, 1 numerical or I/O failure, 2 usage error. Every
//! numeric output is reproducible byte for byte from `(flags, seed)`,
//! independent of the worker-thread count.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod sweep;

use clap::{ArgGroup, Args, Parser, Subcommand};
use error::{CliError, CliResult};
use hybrid_noma_core::{
    allocator, comparator, model, ChannelGains, QuadratureConfig, Scheme, SystemParams,
};
use output::Table;
use presets::FigureKind;
use serde_json::json;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use sweep::{ergodic_table, parse_axis, power_axis, prob_table, Estimator, RhoAxes, SweepSpec};

pub const DEFAULT_SEED: u64 = 42;
const DEFAULT_SAMPLES: u64 = 1_000_000;
const DEFAULT_CHUNK: u64 = 1 << 16;

#[derive(Parser)]
#[command(
    name = "hybrid-noma",
    version,
    about = "Hybrid NOMA power allocation, OMA comparison, and failure-probability tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for all Monte Carlo estimators
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Emit JSON instead of CSV / plain text
    #[arg(long, global = true)]
    pub json: bool,

    /// Output file (tables, reports) or directory (figure presets);
    /// defaults to stdout / the current directory
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for sweeps and Monte Carlo (0 = rayon default);
    /// results do not depend on this
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Subcommand)]
pub enum Command {
    /// Solve the optimal power split for one channel realization
    Allocate(AllocateArgs),
    /// Sweep the probability that the hybrid rate fails to beat OMA
    Prob(ProbArgs),
    /// Sweep ergodic hybrid/OMA rates by paired Monte Carlo
    Ergodic(ErgodicArgs),
    /// Emit a preset sweep as CSV plus a metadata sidecar
    Figure(FigureArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("rho_n_src").required(true).args(["rho_n_db", "rho_n"])))]
#[command(group(ArgGroup::new("rho_m_src").required(true).args(["rho_m_db", "rho_m"])))]
pub struct AllocateArgs {
    /// Secondary-user transmit power in dB
    #[arg(long, value_name = "DB")]
    pub rho_n_db: Option<f64>,
    /// Secondary-user transmit power, linear
    #[arg(long, value_name = "LIN")]
    pub rho_n: Option<f64>,
    /// Primary-user transmit power in dB
    #[arg(long, value_name = "DB")]
    pub rho_m_db: Option<f64>,
    /// Primary-user transmit power, linear
    #[arg(long, value_name = "LIN")]
    pub rho_m: Option<f64>,
    /// Energy budget fraction, 0 < eta <= 1
    #[arg(long)]
    pub eta: f64,
    /// QoS target rate of the primary user, BPCU
    #[arg(long)]
    pub r0: f64,
    /// Squared fading magnitude |h_m|^2
    #[arg(long)]
    pub gm: f64,
    /// Squared fading magnitude |h_n|^2
    #[arg(long)]
    pub gn: f64,
    /// Slot duration in seconds
    #[arg(long, default_value_t = 1.0)]
    pub slot_t: f64,
}

#[derive(Args, Default)]
pub struct ProbArgs {
    /// Tied power axis rho_n = rho_m in dB (start:stop:step or list)
    #[arg(long, value_name = "AXIS")]
    pub rho_db: Option<String>,
    /// Tied power axis, linear values
    #[arg(long, value_name = "AXIS")]
    pub rho: Option<String>,
    /// Independent rho_n axis in dB
    #[arg(long, value_name = "AXIS")]
    pub rho_n_db: Option<String>,
    /// Independent rho_n axis, linear
    #[arg(long, value_name = "AXIS")]
    pub rho_n: Option<String>,
    /// Independent rho_m axis in dB
    #[arg(long, value_name = "AXIS")]
    pub rho_m_db: Option<String>,
    /// Independent rho_m axis, linear
    #[arg(long, value_name = "AXIS")]
    pub rho_m: Option<String>,
    /// Energy budget fractions to sweep (default 0.8)
    #[arg(long, value_name = "LIST")]
    pub eta: Option<String>,
    /// QoS target rates to sweep (default 1)
    #[arg(long, value_name = "LIST")]
    pub r0: Option<String>,
    /// Estimator columns: exact, asymptotic, limit-n, limit-m, mc (default exact)
    #[arg(long, value_name = "LIST")]
    pub estimators: Option<String>,
    /// Monte Carlo sample count (default 1000000)
    #[arg(long)]
    pub samples: Option<u64>,
    /// Monte Carlo chunk size (default 65536)
    #[arg(long)]
    pub chunk_size: Option<u64>,
    /// Quadrature absolute tolerance (default 1e-10)
    #[arg(long)]
    pub abs_tol: Option<f64>,
    /// Quadrature subdivision budget (default 200)
    #[arg(long)]
    pub max_subdivisions: Option<usize>,
    /// Key-value sweep spec file; explicit flags override it
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Args, Default)]
pub struct ErgodicArgs {
    /// Tied power axis rho_n = rho_m in dB (start:stop:step or list)
    #[arg(long, value_name = "AXIS")]
    pub rho_db: Option<String>,
    /// Tied power axis, linear values
    #[arg(long, value_name = "AXIS")]
    pub rho: Option<String>,
    /// Independent rho_n axis in dB
    #[arg(long, value_name = "AXIS")]
    pub rho_n_db: Option<String>,
    /// Independent rho_n axis, linear
    #[arg(long, value_name = "AXIS")]
    pub rho_n: Option<String>,
    /// Independent rho_m axis in dB
    #[arg(long, value_name = "AXIS")]
    pub rho_m_db: Option<String>,
    /// Independent rho_m axis, linear
    #[arg(long, value_name = "AXIS")]
    pub rho_m: Option<String>,
    /// Energy budget fractions to sweep (default 0.8)
    #[arg(long, value_name = "LIST")]
    pub eta: Option<String>,
    /// QoS target rates to sweep (default 1)
    #[arg(long, value_name = "LIST")]
    pub r0: Option<String>,
    /// Monte Carlo sample count (default 1000000)
    #[arg(long)]
    pub samples: Option<u64>,
    /// Monte Carlo chunk size (default 65536)
    #[arg(long)]
    pub chunk_size: Option<u64>,
    /// Key-value sweep spec file; explicit flags override it
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct FigureArgs {
    /// Which preset to emit
    #[arg(value_enum)]
    pub which: FigureKind,
    /// Monte Carlo sample count override
    #[arg(long)]
    pub samples: Option<u64>,
}

/// Parses `argv` and runs the selected command, returning the process exit
/// code. Library entry point so tests can drive the CLI in-process.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    let threads = cli.threads;
    let outcome = if threads == 0 {
        dispatch(cli)
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(CliError::Usage(format!("cannot build thread pool: {e}"))),
        }
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    let seed = cli.seed;
    match cli.command {
        Command::Allocate(args) => cmd_allocate(args, cli.json, cli.out.as_deref()),
        Command::Prob(args) => cmd_prob(args, seed, cli.json, cli.out.as_deref()),
        Command::Ergodic(args) => cmd_ergodic(args, seed, cli.json, cli.out.as_deref()),
        Command::Figure(args) => {
            let dir = cli.out.unwrap_or_else(|| PathBuf::from("."));
            presets::run_figure(
                args.which,
                &dir,
                args.samples,
                seed.unwrap_or(DEFAULT_SEED),
            )
        }
    }
}

fn open_sink(out: Option<&std::path::Path>) -> CliResult<Box<dyn Write>> {
    match out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            Ok(Box::new(file))
        }
        None => Ok(Box::new(std::io::stdout())),
    }
}

fn write_table(table: &Table, json: bool, out: Option<&std::path::Path>) -> CliResult<()> {
    let mut sink = open_sink(out)?;
    if json {
        table.write_json(&mut sink)?;
    } else {
        table.write_csv(&mut sink)?;
    }
    Ok(())
}

fn resolve_power_flag(name: &str, db: Option<f64>, linear: Option<f64>) -> CliResult<f64> {
    match (db, linear) {
        (Some(db), None) => Ok(model::db_to_linear(db)),
        (None, Some(lin)) if lin > 0.0 => Ok(lin),
        (None, Some(lin)) => Err(CliError::Usage(format!(
            "invalid --{name} {lin}: linear powers must be > 0"
        ))),
        // clap groups enforce exactly one source
        _ => unreachable!("argument group guarantees one source for {name}"),
    }
}

fn cmd_allocate(args: AllocateArgs, json: bool, out: Option<&std::path::Path>) -> CliResult<i32> {
    let rho_n = resolve_power_flag("rho-n", args.rho_n_db, args.rho_n)?;
    let rho_m = resolve_power_flag("rho-m", args.rho_m_db, args.rho_m)?;
    let params = SystemParams::with_slot(rho_n, rho_m, args.eta, args.r0, args.slot_t)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let gains =
        ChannelGains::new(args.gm, args.gn).map_err(|e| CliError::Usage(e.to_string()))?;

    let tau = model::tau_m(&params, gains.g_m());
    let split = allocator::optimal_split(&params, &gains);
    let hybrid_rate = allocator::optimal_rate(&params, &gains);
    let oma_rate = comparator::oma_rate(&params, gains.g_n());
    let wins = comparator::hybrid_beats_oma(&params, &gains);
    let energy_hybrid = comparator::energy(&params, Scheme::Hybrid);
    let energy_oma = comparator::energy(&params, Scheme::Oma);

    let mut sink = open_sink(out)?;
    if json {
        let report = json!({
            "rho_n": params.rho_n(),
            "rho_m": params.rho_m(),
            "eta": params.eta(),
            "r0": params.r0(),
            "slot_t": params.slot_t(),
            "g_m": gains.g_m(),
            "g_n": gains.g_n(),
            "epsilon0": params.epsilon0(),
            "tau_m": tau,
            "beta1": split.beta1(),
            "beta2": split.beta2(),
            "hybrid_rate": hybrid_rate,
            "oma_rate": oma_rate,
            "hybrid_wins": wins,
            "energy_hybrid": energy_hybrid,
            "energy_oma": energy_oma,
        });
        serde_json::to_writer_pretty(&mut sink, &report).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(sink)?;
    } else {
        writeln!(sink, "parameters:")?;
        writeln!(sink, "  rho_n    = {} ({} dB)", params.rho_n(), fmt_db(params.rho_n()))?;
        writeln!(sink, "  rho_m    = {} ({} dB)", params.rho_m(), fmt_db(params.rho_m()))?;
        writeln!(sink, "  eta      = {}", params.eta())?;
        writeln!(sink, "  r0       = {} BPCU", params.r0())?;
        writeln!(sink, "  slot_t   = {} s", params.slot_t())?;
        writeln!(sink, "channel:")?;
        writeln!(sink, "  g_m      = {}", gains.g_m())?;
        writeln!(sink, "  g_n      = {}", gains.g_n())?;
        writeln!(sink, "derived:")?;
        writeln!(sink, "  epsilon0 = {}", params.epsilon0())?;
        writeln!(sink, "  tau_m    = {tau}")?;
        writeln!(sink, "allocation:")?;
        writeln!(sink, "  beta1    = {}", split.beta1())?;
        writeln!(sink, "  beta2    = {}", split.beta2())?;
        writeln!(sink, "rates (BPCU):")?;
        writeln!(sink, "  hybrid   = {hybrid_rate}")?;
        writeln!(sink, "  oma      = {oma_rate}")?;
        writeln!(sink, "  hybrid beats OMA: {}", if wins { "yes" } else { "no" })?;
        writeln!(sink, "energy (noise-normalized J):")?;
        writeln!(sink, "  hybrid   = {energy_hybrid}")?;
        writeln!(sink, "  oma      = {energy_oma}")?;
    }
    Ok(0)
}

fn fmt_db(linear: f64) -> f64 {
    model::linear_to_db(linear).unwrap_or(f64::NAN)
}

fn resolve_rho_axes(
    rho_db: Option<String>,
    rho: Option<String>,
    rho_n_db: Option<String>,
    rho_n: Option<String>,
    rho_m_db: Option<String>,
    rho_m: Option<String>,
) -> CliResult<RhoAxes> {
    let tied = power_axis(rho_db.as_deref(), rho.as_deref())?;
    let axis_n = power_axis(rho_n_db.as_deref(), rho_n.as_deref())?;
    let axis_m = power_axis(rho_m_db.as_deref(), rho_m.as_deref())?;
    match (tied, axis_n, axis_m) {
        (Some(levels), None, None) => Ok(RhoAxes::Tied(levels)),
        (None, Some(n), Some(m)) => Ok(RhoAxes::Independent { n, m }),
        (None, None, None) => Err(CliError::Usage(
            "no power axis: give --rho-db (tied) or both --rho-n-db and --rho-m-db".into(),
        )),
        _ => Err(CliError::Usage(
            "give either one tied power axis or both independent axes, not a mixture".into(),
        )),
    }
}

fn cmd_prob(
    args: ProbArgs,
    cli_seed: Option<u64>,
    json: bool,
    out: Option<&std::path::Path>,
) -> CliResult<i32> {
    let mut file = match &args.config {
        Some(path) => config::load(path)?,
        None => Default::default(),
    };
    let rho_db = config::take(&mut file, "rho_db", args.rho_db)?;
    let rho = config::take(&mut file, "rho", args.rho)?;
    let rho_n_db = config::take(&mut file, "rho_n_db", args.rho_n_db)?;
    let rho_n = config::take(&mut file, "rho_n", args.rho_n)?;
    let rho_m_db = config::take(&mut file, "rho_m_db", args.rho_m_db)?;
    let rho_m = config::take(&mut file, "rho_m", args.rho_m)?;
    let eta = config::take(&mut file, "eta", args.eta)?;
    let r0 = config::take(&mut file, "r0", args.r0)?;
    let estimators = config::take(&mut file, "estimators", args.estimators)?;
    let samples = config::take(&mut file, "samples", args.samples)?;
    let chunk_size = config::take(&mut file, "chunk_size", args.chunk_size)?;
    let abs_tol = config::take(&mut file, "abs_tol", args.abs_tol)?;
    let max_subdivisions = config::take(&mut file, "max_subdivisions", args.max_subdivisions)?;
    let seed = config::take(&mut file, "seed", cli_seed)?.unwrap_or(DEFAULT_SEED);
    config::reject_unknown(&file)?;

    let spec = SweepSpec {
        rho: resolve_rho_axes(rho_db, rho, rho_n_db, rho_n, rho_m_db, rho_m)?,
        etas: parse_axis(eta.as_deref().unwrap_or("0.8"))?,
        r0s: parse_axis(r0.as_deref().unwrap_or("1"))?,
        estimators: Estimator::parse_list(estimators.as_deref().unwrap_or("exact"))?,
        samples: samples.unwrap_or(DEFAULT_SAMPLES),
        chunk_size: chunk_size.unwrap_or(DEFAULT_CHUNK),
        seed,
        quad: QuadratureConfig::new(
            abs_tol.unwrap_or(1e-10),
            max_subdivisions.unwrap_or(200),
        )
        .map_err(|e| CliError::Usage(e.to_string()))?,
    };

    let (table, failures) = prob_table(&spec)?;
    write_table(&table, json, out)?;
    for failure in &failures {
        eprintln!("warning: {failure}");
    }
    Ok(if failures.is_empty() { 0 } else { 1 })
}

fn cmd_ergodic(
    args: ErgodicArgs,
    cli_seed: Option<u64>,
    json: bool,
    out: Option<&std::path::Path>,
) -> CliResult<i32> {
    let mut file = match &args.config {
        Some(path) => config::load(path)?,
        None => Default::default(),
    };
    let rho_db = config::take(&mut file, "rho_db", args.rho_db)?;
    let rho = config::take(&mut file, "rho", args.rho)?;
    let rho_n_db = config::take(&mut file, "rho_n_db", args.rho_n_db)?;
    let rho_n = config::take(&mut file, "rho_n", args.rho_n)?;
    let rho_m_db = config::take(&mut file, "rho_m_db", args.rho_m_db)?;
    let rho_m = config::take(&mut file, "rho_m", args.rho_m)?;
    let eta = config::take(&mut file, "eta", args.eta)?;
    let r0 = config::take(&mut file, "r0", args.r0)?;
    let samples = config::take(&mut file, "samples", args.samples)?;
    let chunk_size = config::take(&mut file, "chunk_size", args.chunk_size)?;
    let seed = config::take(&mut file, "seed", cli_seed)?.unwrap_or(DEFAULT_SEED);
    config::reject_unknown(&file)?;

    let spec = SweepSpec {
        rho: resolve_rho_axes(rho_db, rho, rho_n_db, rho_n, rho_m_db, rho_m)?,
        etas: parse_axis(eta.as_deref().unwrap_or("0.8"))?,
        r0s: parse_axis(r0.as_deref().unwrap_or("1"))?,
        estimators: Vec::new(),
        samples: samples.unwrap_or(DEFAULT_SAMPLES),
        chunk_size: chunk_size.unwrap_or(DEFAULT_CHUNK),
        seed,
        quad: QuadratureConfig::default(),
    };

    let table = ergodic_table(&spec)?;
    write_table(&table, json, out)?;
    Ok(0)
}
