//! Random-model experiments: average exact bound improvements per cell.
//!
//! A cell is one model parametrization. Each of its graphs gets its own
//! seed derived from the master seed and the cell parameters, so a cell
//! reproduces byte-identically whether it runs alone or inside a sweep.

use std::fmt::Write as _;
use std::io;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::models::{derive_seed, ModelParams};
use crate::report::compute_bounds;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// All cells must use the same model.
    pub cells: Vec<ModelParams>,
    pub graphs_per_cell: usize,
    pub master_seed: u64,
}

/// Mean and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub std_error: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Summary {
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let std_error = if values.len() > 1 {
            let ss: f64 = values.iter().map(|x| (x - mean).powi(2)).sum();
            (ss / (k - 1.0) / k).sqrt()
        } else {
            0.0
        };
        Summary { mean, std_error }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableCell {
    pub params: ModelParams,
    pub graphs: usize,
    pub agjs: Summary,
    pub delta_neigh: Summary,
    pub delta_var: Summary,
}

/// Stream id for a cell: a fold over the model name, `n` and the exact
/// bit patterns of its probabilities.
fn cell_stream(params: &ModelParams) -> u64 {
    let mut words = vec![params.n() as u64];
    match params {
        ModelParams::Er(p) => words.push(p.p.to_bits()),
        ModelParams::TwoType(p) => {
            words.extend([p.p_low, p.q1, p.q2, p.q3].map(f64::to_bits));
        }
        ModelParams::Bipartite(p) => words.extend([p.a, p.p].map(f64::to_bits)),
    }
    let tag = params.name().bytes().fold(0u64, |h, b| h.rotate_left(8) ^ b as u64);
    words.iter().fold(tag, |h, &w| derive_seed(h, w, 0))
}

/// Seed of graph `index` in the cell described by `params`.
pub fn graph_seed(master_seed: u64, params: &ModelParams, index: usize) -> u64 {
    derive_seed(master_seed, cell_stream(params), index as u64)
}

pub fn run_cell(params: &ModelParams, graphs: usize, master_seed: u64) -> Result<TableCell> {
    params.validate()?;
    if graphs == 0 {
        return Err(Error::InvalidParameter("graphs per cell must be at least 1".into()));
    }
    let rows: Vec<[f64; 3]> = (0..graphs)
        .into_par_iter()
        .map(|i| {
            let d = params.generate(graph_seed(master_seed, params, i))?;
            let r = compute_bounds(&d)?;
            Ok([r.agjs, r.delta_neigh, r.delta_var])
        })
        .collect::<Result<_>>()?;
    let column = |k: usize| Summary::of(&rows.iter().map(|r| r[k]).collect::<Vec<_>>());
    Ok(TableCell {
        params: *params,
        graphs,
        agjs: column(0),
        delta_neigh: column(1),
        delta_var: column(2),
    })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<TableCell>> {
    check_single_model(&config.cells)?;
    config
        .cells
        .iter()
        .map(|p| {
            log::info!("cell {} n={}", p.name(), p.n());
            run_cell(p, config.graphs_per_cell, config.master_seed)
        })
        .collect()
}

fn check_single_model(cells: &[ModelParams]) -> Result<()> {
    if let Some(first) = cells.first() {
        if cells.iter().any(|c| c.name() != first.name()) {
            return Err(Error::InvalidParameter(
                "all cells of one table must use the same model".into(),
            ));
        }
    }
    Ok(())
}

fn param_columns(params: &ModelParams) -> (Vec<&'static str>, Vec<String>) {
    match params {
        ModelParams::Er(p) => (vec!["p"], vec![p.p.to_string()]),
        ModelParams::TwoType(p) => (
            vec!["p_low", "q1", "q2", "q3"],
            [p.p_low, p.q1, p.q2, p.q3].iter().map(f64::to_string).collect(),
        ),
        ModelParams::Bipartite(p) => (vec!["a", "p"], vec![p.a.to_string(), p.p.to_string()]),
    }
}

const STAT_COLUMNS: [&str; 6] = [
    "agjs_mean",
    "agjs_se",
    "dneigh_mean",
    "dneigh_se",
    "dvar_mean",
    "dvar_se",
];

fn header(cell: &TableCell) -> Vec<String> {
    let mut h = vec!["model".to_string(), "n".to_string()];
    h.extend(param_columns(&cell.params).0.into_iter().map(String::from));
    h.push("graphs".into());
    h.extend(STAT_COLUMNS.iter().map(|s| s.to_string()));
    h
}

fn row(cell: &TableCell) -> Vec<String> {
    let mut r = vec![cell.params.name().to_string(), cell.params.n().to_string()];
    r.extend(param_columns(&cell.params).1);
    r.push(cell.graphs.to_string());
    for s in [cell.agjs, cell.delta_neigh, cell.delta_var] {
        r.push(format!("{:.4}", s.mean));
        r.push(format!("{:.4}", s.std_error));
    }
    r
}

pub fn write_csv<W: io::Write>(cells: &[TableCell], out: W) -> Result<()> {
    check_single_model(&cells.iter().map(|c| c.params).collect::<Vec<_>>())?;
    let mut w = csv::Writer::from_writer(out);
    if let Some(first) = cells.first() {
        w.write_record(header(first))?;
    }
    for cell in cells {
        w.write_record(row(cell))?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv(cells: &[TableCell]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(cells, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is ASCII"))
}

pub fn to_markdown(cells: &[TableCell]) -> Result<String> {
    check_single_model(&cells.iter().map(|c| c.params).collect::<Vec<_>>())?;
    let mut out = String::new();
    if let Some(first) = cells.first() {
        let h = header(first);
        let _ = writeln!(out, "| {} |", h.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(h.len()));
    }
    for cell in cells {
        let _ = writeln!(out, "| {} |", row(cell).join(" | "));
    }
    Ok(out)
}
