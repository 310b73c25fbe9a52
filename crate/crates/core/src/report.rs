use std::fmt;

use crate::bounds::{gruber_bound, neighborhood_bound_with, rho_table};
use crate::digraph::Digraph;
use crate::error::Result;
use crate::variance::{bound_from_variance, variance_of_s};

/// All bounds for one digraph.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub n: usize,
    pub arcs: usize,
    pub components: usize,
    pub agjs: f64,
    pub neighborhood: f64,
    pub expected_s: f64,
    pub var_s: f64,
    pub variance_bound: f64,
    pub delta_neigh: f64,
    pub delta_var: f64,
    pub degenerate: bool,
    /// Diagnostic only.
    pub gruber: f64,
}

pub fn compute_bounds(d: &Digraph) -> Result<BoundsReport> {
    let rho = rho_table(d);
    let neigh = neighborhood_bound_with(d, &rho);
    let var = variance_of_s(d)?;
    let vb = bound_from_variance(d, &var)?;
    Ok(BoundsReport {
        n: d.n(),
        arcs: d.arc_count(),
        components: var.components,
        agjs: neigh.agjs,
        neighborhood: neigh.refined,
        expected_s: var.expected_s,
        var_s: var.var_s,
        variance_bound: vb.bound,
        delta_neigh: neigh.refined - neigh.agjs,
        delta_var: vb.correction,
        degenerate: vb.degenerate,
        gruber: gruber_bound(d),
    })
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n                  {}", self.n)?;
        writeln!(f, "m                  {}", self.arcs)?;
        writeln!(f, "components         {}", self.components)?;
        writeln!(f, "agjs               {:.6}", self.agjs)?;
        writeln!(f, "neighborhood_bound {:.6}", self.neighborhood)?;
        writeln!(f, "expected_fvs       {:.6}", self.expected_s)?;
        writeln!(f, "var_fvs            {:.6}", self.var_s)?;
        writeln!(f, "variance_bound     {:.6}", self.variance_bound)?;
        writeln!(f, "delta_neigh        {:.6}", self.delta_neigh)?;
        writeln!(f, "delta_var          {:.6}", self.delta_var)?;
        writeln!(f, "degenerate         {}", self.degenerate)?;
        write!(f, "gruber             {:.6}", self.gruber)
    }
}
