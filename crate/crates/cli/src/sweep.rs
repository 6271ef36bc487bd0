//! Sweep specifications: axis parsing, grid construction, and evaluation
//! into result tables.

use crate::error::{CliError, CliResult};
use crate::output::{Field, Table};
use hybrid_noma_core::{
    analytic, comparator, db_to_linear, linear_to_db, montecarlo, QuadratureConfig, Scheme,
    SystemParams,
};
use rayon::prelude::*;

/// One power level carried in both scales so tables can echo the dB axis
/// without re-deriving it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLevel {
    pub db: f64,
    pub linear: f64,
}

impl PowerLevel {
    pub fn from_db(db: f64) -> Self {
        Self {
            db,
            linear: db_to_linear(db),
        }
    }

    pub fn from_linear(linear: f64) -> CliResult<Self> {
        Ok(Self {
            db: linear_to_db(linear).map_err(|e| CliError::Usage(e.to_string()))?,
            linear,
        })
    }
}

/// The transmit-power axes of a sweep: one tied axis (`rho_n = rho_m`) or
/// the cartesian product of two independent axes.
#[derive(Debug, Clone, PartialEq)]
pub enum RhoAxes {
    Tied(Vec<PowerLevel>),
    Independent {
        n: Vec<PowerLevel>,
        m: Vec<PowerLevel>,
    },
}

/// Which probability estimators a `prob` sweep evaluates, one column group
/// per entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Exact,
    Asymptotic,
    LimitRhoN,
    LimitRhoM,
    Mc,
}

impl Estimator {
    pub fn parse_list(spec: &str) -> CliResult<Vec<Estimator>> {
        let mut out = Vec::new();
        for token in spec.split(',') {
            let token = token.trim();
            let est = match token.to_ascii_lowercase().replace('-', "_").as_str() {
                "exact" => Estimator::Exact,
                "asymptotic" => Estimator::Asymptotic,
                "limit_n" | "limit_rho_n" => Estimator::LimitRhoN,
                "limit_m" | "limit_rho_m" => Estimator::LimitRhoM,
                "mc" | "montecarlo" => Estimator::Mc,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown estimator `{other}` (expected exact, asymptotic, limit-n, limit-m, mc)"
                    )))
                }
            };
            if out.contains(&est) {
                return Err(CliError::Usage(format!("duplicate estimator `{token}`")));
            }
            out.push(est);
        }
        if out.is_empty() {
            return Err(CliError::Usage("estimator list is empty".into()));
        }
        Ok(out)
    }

    fn columns(&self) -> &'static [&'static str] {
        match self {
            Estimator::Exact => &["p_exact"],
            Estimator::Asymptotic => &["p_asymptotic"],
            Estimator::LimitRhoN => &["p_limit_fixed_rho_n"],
            Estimator::LimitRhoM => &["p_limit_fixed_rho_m"],
            Estimator::Mc => &["p_mc", "p_mc_std_err", "mc_n"],
        }
    }
}

/// A fully resolved sweep: axes, fixed parameters, estimator choice, and
/// Monte Carlo / quadrature settings.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub rho: RhoAxes,
    pub etas: Vec<f64>,
    pub r0s: Vec<f64>,
    pub estimators: Vec<Estimator>,
    pub samples: u64,
    pub chunk_size: u64,
    pub seed: u64,
    pub quad: QuadratureConfig,
}

/// One grid point of a sweep.
#[derive(Debug, Clone, Copy)]
pub struct GridPoint {
    pub rho_n: PowerLevel,
    pub rho_m: PowerLevel,
    pub eta: f64,
    pub r0: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        let rho_empty = match &self.rho {
            RhoAxes::Tied(v) => v.is_empty(),
            RhoAxes::Independent { n, m } => n.is_empty() || m.is_empty(),
        };
        if rho_empty || self.etas.is_empty() || self.r0s.is_empty() {
            return Err(CliError::Usage("sweep axes must be non-empty".into()));
        }
        for &eta in &self.etas {
            if !(eta > 0.0 && eta <= 1.0) {
                return Err(CliError::Usage(format!(
                    "invalid eta {eta}: must satisfy 0 < eta <= 1"
                )));
            }
        }
        for &r0 in &self.r0s {
            if !(r0 > 0.0 && r0.is_finite()) {
                return Err(CliError::Usage(format!("invalid r0 {r0}: must be > 0")));
            }
        }
        if self.samples < 1 {
            return Err(CliError::Usage("samples must be >= 1".into()));
        }
        if self.chunk_size < 1 {
            return Err(CliError::Usage("chunk-size must be >= 1".into()));
        }
        Ok(())
    }

    /// Grid points in deterministic row order: rho_n outer, rho_m, eta, r0.
    pub fn grid(&self) -> Vec<GridPoint> {
        let rho_pairs: Vec<(PowerLevel, PowerLevel)> = match &self.rho {
            RhoAxes::Tied(levels) => levels.iter().map(|&l| (l, l)).collect(),
            RhoAxes::Independent { n, m } => n
                .iter()
                .flat_map(|&rn| m.iter().map(move |&rm| (rn, rm)))
                .collect(),
        };
        let mut grid = Vec::with_capacity(rho_pairs.len() * self.etas.len() * self.r0s.len());
        for (rho_n, rho_m) in rho_pairs {
            for &eta in &self.etas {
                for &r0 in &self.r0s {
                    grid.push(GridPoint {
                        rho_n,
                        rho_m,
                        eta,
                        r0,
                    });
                }
            }
        }
        grid
    }
}

/// Parses an axis specification: `start:stop:step` (inclusive range) or a
/// comma-separated list (a single number is a one-element list).
pub fn parse_axis(spec: &str) -> CliResult<Vec<f64>> {
    let spec = spec.trim();
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Usage(format!(
                "bad axis `{spec}`: ranges are start:stop:step"
            )));
        }
        let start = parse_number(parts[0])?;
        let stop = parse_number(parts[1])?;
        let step = parse_number(parts[2])?;
        if !(step > 0.0) {
            return Err(CliError::Usage(format!(
                "bad axis `{spec}`: step must be > 0"
            )));
        }
        if stop < start {
            return Err(CliError::Usage(format!(
                "bad axis `{spec}`: stop is below start"
            )));
        }
        let mut values = Vec::new();
        let mut k = 0u64;
        loop {
            let v = start + step * k as f64;
            if v > stop + step * 1e-9 {
                break;
            }
            values.push(v.min(stop));
            k += 1;
        }
        Ok(values)
    } else {
        spec.split(',').map(parse_number).collect()
    }
}

fn parse_number(token: &str) -> CliResult<f64> {
    token
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("`{token}` is not a number")))
}

/// Converts a dB axis (or linear axis) specification into power levels.
pub fn power_axis(db_spec: Option<&str>, linear_spec: Option<&str>) -> CliResult<Option<Vec<PowerLevel>>> {
    match (db_spec, linear_spec) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "specify a power axis in dB or linear form, not both".into(),
        )),
        (Some(db), None) => Ok(Some(
            parse_axis(db)?.into_iter().map(PowerLevel::from_db).collect(),
        )),
        (None, Some(lin)) => Ok(Some(
            parse_axis(lin)?
                .into_iter()
                .map(PowerLevel::from_linear)
                .collect::<CliResult<Vec<_>>>()?,
        )),
        (None, None) => Ok(None),
    }
}

fn point_params(pt: &GridPoint) -> CliResult<SystemParams> {
    SystemParams::new(pt.rho_n.linear, pt.rho_m.linear, pt.eta, pt.r0)
        .map_err(|e| CliError::Usage(e.to_string()))
}

const POINT_COLUMNS: [&str; 4] = ["rho_n_db", "rho_m_db", "eta", "r0"];

fn point_fields(pt: &GridPoint) -> Vec<Field> {
    vec![
        Field::Float(pt.rho_n.db),
        Field::Float(pt.rho_m.db),
        Field::Float(pt.eta),
        Field::Float(pt.r0),
    ]
}

/// Evaluates a probability sweep. Quadrature failures flag their cells and
/// are reported alongside the table instead of aborting the run.
pub fn prob_table(spec: &SweepSpec) -> CliResult<(Table, Vec<String>)> {
    spec.validate()?;
    let mut columns: Vec<String> = POINT_COLUMNS.iter().map(|s| s.to_string()).collect();
    for est in &spec.estimators {
        columns.extend(est.columns().iter().map(|s| s.to_string()));
    }

    let grid = spec.grid();
    let evaluated: Vec<(Vec<Field>, Option<String>)> = grid
        .par_iter()
        .map(|pt| eval_prob_point(pt, spec))
        .collect();

    let mut table = Table::new(columns);
    let mut failures = Vec::new();
    for (row, failure) in evaluated {
        table.push_row(row);
        if let Some(msg) = failure {
            failures.push(msg);
        }
    }
    Ok((table, failures))
}

fn eval_prob_point(pt: &GridPoint, spec: &SweepSpec) -> (Vec<Field>, Option<String>) {
    let mut row = point_fields(pt);
    let params = match point_params(pt) {
        Ok(p) => p,
        Err(e) => {
            // validated axes make this unreachable; keep the row shape anyway
            let empty = spec.estimators.iter().map(|e| e.columns().len()).sum();
            row.extend(std::iter::repeat_n(Field::Empty, empty));
            return (row, Some(e.to_string()));
        }
    };
    let mut failure = None;
    for est in &spec.estimators {
        match est {
            Estimator::Exact => match analytic::p_wn_exact(&params, &spec.quad) {
                Ok(v) => row.push(Field::Float(v)),
                Err(e) => {
                    row.push(Field::Empty);
                    failure = Some(format!(
                        "p_exact failed at rho_n={} dB, rho_m={} dB, eta={}, r0={}: {e}",
                        pt.rho_n.db, pt.rho_m.db, pt.eta, pt.r0
                    ));
                }
            },
            Estimator::Asymptotic => row.push(Field::Float(analytic::p_wn_asymptotic(&params))),
            Estimator::LimitRhoN => {
                row.push(Field::Float(analytic::p_wn_limit_fixed_rho_n(&params)))
            }
            Estimator::LimitRhoM => {
                row.push(Field::Float(analytic::p_wn_limit_fixed_rho_m(&params)))
            }
            Estimator::Mc => {
                let cfg = montecarlo::McConfig::with_chunk_size(
                    spec.samples,
                    spec.seed,
                    spec.chunk_size,
                )
                .expect("validated");
                let est = montecarlo::estimate_p_wn(&params, &cfg);
                row.push(Field::Float(est.mean));
                row.push(Field::Float(est.std_err));
                row.push(Field::Int(est.n));
            }
        }
    }
    (row, failure)
}

pub fn ergodic_columns() -> Vec<String> {
    POINT_COLUMNS
        .iter()
        .map(|s| s.to_string())
        .chain(
            [
                "hybrid_rate",
                "hybrid_std_err",
                "oma_rate",
                "oma_std_err",
                "gap",
                "gap_std_err",
                "energy_hybrid",
                "energy_oma",
                "mc_n",
            ]
            .iter()
            .map(|s| s.to_string()),
        )
        .collect()
}

/// Evaluates an ergodic-rate sweep with paired hybrid/OMA sampling.
pub fn ergodic_table(spec: &SweepSpec) -> CliResult<Table> {
    spec.validate()?;
    let grid = spec.grid();
    let rows: Vec<CliResult<Vec<Field>>> = grid
        .par_iter()
        .map(|pt| {
            let params = point_params(pt)?;
            let cfg =
                montecarlo::McConfig::with_chunk_size(spec.samples, spec.seed, spec.chunk_size)
                    .expect("validated");
            let est = montecarlo::ergodic_rates(&params, &cfg);
            let mut row = point_fields(pt);
            row.extend([
                Field::Float(est.hybrid.mean),
                Field::Float(est.hybrid.std_err),
                Field::Float(est.oma.mean),
                Field::Float(est.oma.std_err),
                Field::Float(est.gap.mean),
                Field::Float(est.gap.std_err),
                Field::Float(comparator::energy(&params, Scheme::Hybrid)),
                Field::Float(comparator::energy(&params, Scheme::Oma)),
                Field::Int(est.hybrid.n),
            ]);
            Ok(row)
        })
        .collect();

    let mut table = Table::new(ergodic_columns());
    for row in rows {
        table.push_row(row?);
    }
    Ok(table)
}
