//! Built-in figure sweeps: canonical parameter settings baked in, emitted
//! as a CSV plus a JSON metadata sidecar.

use crate::error::{CliError, CliResult};
use crate::output::Table;
use crate::sweep::{ergodic_table, parse_axis, prob_table, Estimator, PowerLevel, RhoAxes, SweepSpec};
use hybrid_noma_core::QuadratureConfig;
use serde::Serialize;
use serde_json::json;
use std::path::Path;

pub const DEFAULT_FIGURE_SAMPLES: u64 = 1_000_000;
const DEFAULT_CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureKind {
    /// Failure probability vs SNR: exact, asymptotic, and Monte Carlo columns
    Fig2,
    /// Failure probability surface over independent (rho_n, rho_m) axes
    Fig3,
    /// Ergodic hybrid and OMA rates vs SNR for several energy budgets
    Fig4,
}

impl FigureKind {
    pub fn name(&self) -> &'static str {
        match self {
            FigureKind::Fig2 => "fig2",
            FigureKind::Fig3 => "fig3",
            FigureKind::Fig4 => "fig4",
        }
    }
}

#[derive(Serialize)]
struct ToolInfo {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct FigureMeta {
    figure: &'static str,
    description: &'static str,
    tool: ToolInfo,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    parameters: serde_json::Value,
    columns: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    assumptions: Vec<&'static str>,
}

fn db_axis(spec: &str) -> Vec<PowerLevel> {
    parse_axis(spec)
        .expect("preset axis is well-formed")
        .into_iter()
        .map(PowerLevel::from_db)
        .collect()
}

fn fig2_spec(samples: u64, seed: u64) -> SweepSpec {
    SweepSpec {
        rho: RhoAxes::Tied(db_axis("0:40:2")),
        etas: vec![0.8],
        r0s: vec![1.0, 2.0],
        estimators: vec![Estimator::Exact, Estimator::Asymptotic, Estimator::Mc],
        samples,
        chunk_size: DEFAULT_CHUNK,
        seed,
        quad: QuadratureConfig::default(),
    }
}

fn fig3_spec(seed: u64) -> SweepSpec {
    SweepSpec {
        rho: RhoAxes::Independent {
            n: db_axis("0:40:2"),
            m: db_axis("0:40:2"),
        },
        etas: vec![0.8],
        r0s: vec![1.0],
        estimators: vec![Estimator::Exact],
        samples: 1,
        chunk_size: DEFAULT_CHUNK,
        seed,
        quad: QuadratureConfig::default(),
    }
}

fn fig4_spec(samples: u64, seed: u64) -> SweepSpec {
    SweepSpec {
        rho: RhoAxes::Tied(db_axis("0:40:4")),
        etas: vec![0.7, 0.8, 0.9, 1.0],
        r0s: vec![1.0],
        estimators: vec![],
        samples,
        chunk_size: DEFAULT_CHUNK,
        seed,
        quad: QuadratureConfig::default(),
    }
}

fn build(which: FigureKind, samples: u64, seed: u64) -> CliResult<(Table, Vec<String>, FigureMeta)> {
    let tool = ToolInfo {
        name: "hybrid-noma",
        version: env!("CARGO_PKG_VERSION"),
    };
    match which {
        FigureKind::Fig2 => {
            let spec = fig2_spec(samples, seed);
            let (table, failures) = prob_table(&spec)?;
            let meta = FigureMeta {
                figure: "fig2",
                description: "Probability that the optimal hybrid rate fails to exceed the \
                              full-power OMA rate, versus SNR, with exact quadrature, high-SNR \
                              approximation, and Monte Carlo columns.",
                tool,
                seed,
                samples: Some(samples),
                parameters: json!({
                    "rho_db": "0:40:2",
                    "tied_axes": true,
                    "eta": [0.8],
                    "r0": [1.0, 2.0],
                    "estimators": ["exact", "asymptotic", "mc"],
                    "chunk_size": DEFAULT_CHUNK,
                }),
                columns: table.columns.clone(),
                assumptions: vec![
                    "r0 is swept over {1, 2} to produce one probability curve per target rate; \
                     eta stays fixed at 0.8 with rho_n = rho_m",
                ],
            };
            Ok((table, failures, meta))
        }
        FigureKind::Fig3 => {
            let spec = fig3_spec(seed);
            let (table, failures) = prob_table(&spec)?;
            let meta = FigureMeta {
                figure: "fig3",
                description: "Failure probability surface over independent (rho_n, rho_m) axes \
                              from the exact quadrature expression.",
                tool,
                seed,
                samples: None,
                parameters: json!({
                    "rho_n_db": "0:40:2",
                    "rho_m_db": "0:40:2",
                    "tied_axes": false,
                    "eta": [0.8],
                    "r0": [1.0],
                    "estimators": ["exact"],
                }),
                columns: table.columns.clone(),
                assumptions: vec![],
            };
            Ok((table, failures, meta))
        }
        FigureKind::Fig4 => {
            let spec = fig4_spec(samples, seed);
            let table = ergodic_table(&spec)?;
            let meta = FigureMeta {
                figure: "fig4",
                description: "Ergodic rates of the hybrid scheme and full-power OMA versus SNR \
                              for several energy budgets, from paired Monte Carlo sampling.",
                tool,
                seed,
                samples: Some(samples),
                parameters: json!({
                    "rho_db": "0:40:4",
                    "tied_axes": true,
                    "eta": [0.7, 0.8, 0.9, 1.0],
                    "r0": [1.0],
                    "chunk_size": DEFAULT_CHUNK,
                }),
                columns: table.columns.clone(),
                assumptions: vec![
                    "the budget axis eta is swept over {0.7, 0.8, 0.9, 1.0}",
                ],
            };
            Ok((table, Vec::new(), meta))
        }
    }
}

/// Evaluates a preset and writes `<name>.csv` and `<name>.meta.json` into
/// `out_dir`. Returns the process exit code (1 when any cell failed).
pub fn run_figure(
    which: FigureKind,
    out_dir: &Path,
    samples: Option<u64>,
    seed: u64,
) -> CliResult<i32> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;
    let samples = samples.unwrap_or(DEFAULT_FIGURE_SAMPLES);
    let (table, failures, meta) = build(which, samples, seed)?;

    let csv_path = out_dir.join(format!("{}.csv", which.name()));
    let mut csv = std::fs::File::create(&csv_path)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", csv_path.display())))?;
    table.write_csv(&mut csv)?;

    let meta_path = out_dir.join(format!("{}.meta.json", which.name()));
    let mut meta_file = std::fs::File::create(&meta_path)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", meta_path.display())))?;
    serde_json::to_writer_pretty(&mut meta_file, &meta)
        .map_err(|e| CliError::Io(e.to_string()))?;
    use std::io::Write;
    writeln!(meta_file)?;

    for failure in &failures {
        eprintln!("warning: {failure}");
    }
    Ok(if failures.is_empty() { 0 } else { 1 })
}
