//! Exact variance of the DL output size and the variance-based bound.
//!
//! For each vertex `x` let `E⁻(x)` ("no in-neighbor ranks after x") and
//! `E⁺(x)` ("no out-neighbor ranks after x") be the exclusion events, so
//! `x ∉ S` iff `E⁻(x) ∪ E⁺(x)`. For a pair `(u, v)` the probability
//! `Ψ = P(u ∉ S or v ∉ S)` is expanded by inclusion-exclusion over the
//! four events `E⁻(u), E⁺(u), E⁻(v), E⁺(v)`; all fifteen intersection
//! probabilities have closed forms depending only on degrees, neighborhood
//! overlaps and how `u` and `v` are joined. Then
//! `Cov(1[u∈S], 1[v∈S]) = 1 - Ψ - (1 - rho(u))(1 - rho(v))`.
//!
//! Feeding `Var(|S|)` into the Bhatia–Davis inequality with the range
//! `[β(D), n - c]` gives `α(D) >= Σρ + Var(|S|) / (Σρ - c)`.

use rayon::prelude::*;

use crate::bounds::rho_table;
use crate::digraph::{Digraph, PairCase, PairOverlap, VertexStats};
use crate::error::{Error, Result};

/// Slack for probabilities and variances that should be exact but pass
/// through floating point.
pub const PROBABILITY_SLACK: f64 = 1e-12;
pub const VARIANCE_SLACK: f64 = 1e-9;
/// `Σρ - c` at or below this is treated as zero.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Event bits of a catalog mask.
pub const U_IN: usize = 0b0001;
pub const U_OUT: usize = 0b0010;
pub const V_IN: usize = 0b0100;
pub const V_OUT: usize = 0b1000;

/// Probability that all of `X` precede `v` and all of `Y` precede `w` in a
/// uniform order of `X ∪ Y ∪ {v, w}`, for distinct `v, w ∉ X ∪ Y`, where
/// `|X| = x`, `|Y| = y`, `|X ∩ Y| = t`.
pub fn both_preceded(x: usize, y: usize, t: usize) -> Result<f64> {
    if t > x.min(y) {
        return Err(Error::Domain(format!(
            "g({x}, {y}, {t}) requires t <= min(x, y)"
        )));
    }
    Ok(g(x, y, t))
}

#[inline]
fn g(x: usize, y: usize, t: usize) -> f64 {
    (1.0 / (x + 1) as f64 + 1.0 / (y + 1) as f64) / (x + y - t + 2) as f64
}

/// `1 / ((x + y - t + 1)(z + 1))`: the adjacent-pair closed form where one
/// endpoint is forced to be last.
#[inline]
fn forced_last(x: usize, y: usize, t: usize, z: usize) -> f64 {
    1.0 / (((x + y - t + 1) * (z + 1)) as f64)
}

/// The fifteen inclusion-exclusion terms for an ordered pair `(u, v)`.
///
/// Indexed by a nonempty mask over [`U_IN`], [`U_OUT`], [`V_IN`],
/// [`V_OUT`]; entry `mask` is the probability that every event in the
/// mask occurs.
#[derive(Debug, Clone, PartialEq)]
pub struct PieTerms {
    pub probs: [f64; 16],
    pub case: PairCase,
}

impl PieTerms {
    #[inline]
    pub fn get(&self, mask: usize) -> f64 {
        self.probs[mask]
    }

    /// `Ψ = Σ₁ - Σ₂ + Σ₃ - Σ₄`.
    pub fn psi(&self) -> f64 {
        let mut sums = [0.0; 5];
        for mask in 1..16usize {
            sums[mask.count_ones() as usize] += self.probs[mask];
        }
        sums[1] - sums[2] + sums[3] - sums[4]
    }

    /// The same terms seen from `(v, u)`.
    pub fn swapped(&self) -> Self {
        let mut probs = [0.0; 16];
        for (mask, p) in self.probs.iter().enumerate() {
            probs[swap_mask(mask)] = *p;
        }
        PieTerms {
            probs,
            case: self.case.swapped(),
        }
    }
}

/// Exchanges the roles of `u` and `v` in an event mask.
#[inline]
pub fn swap_mask(mask: usize) -> usize {
    ((mask & 0b0011) << 2) | ((mask & 0b1100) >> 2)
}

/// Test hook: perturbs one catalog term so the verification harness can
/// prove it notices.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogFault {
    pub mask: usize,
    pub case: PairCase,
    pub delta: f64,
}

impl Default for CatalogFault {
    fn default() -> Self {
        CatalogFault {
            mask: U_IN | V_IN,
            case: PairCase::ArcUtoV,
            delta: 0.05,
        }
    }
}

pub fn pie_terms(d: &Digraph, u: usize, v: usize) -> Result<PieTerms> {
    let overlap = d.pair_overlap(u, v)?;
    Ok(catalog(d.stats(u), d.stats(v), &overlap, None))
}

#[doc(hidden)]
pub fn pie_terms_with_fault(d: &Digraph, u: usize, v: usize, fault: Option<CatalogFault>) -> Result<PieTerms> {
    let overlap = d.pair_overlap(u, v)?;
    Ok(catalog(d.stats(u), d.stats(v), &overlap, fault))
}

fn catalog(su: VertexStats, sv: VertexStats, o: &PairOverlap, fault: Option<CatalogFault>) -> PieTerms {
    if o.case == PairCase::ArcVtoU {
        // Evaluate the u -> v column for (v, u) and map back.
        return catalog(sv, su, &o.swapped(), fault).swapped();
    }
    let (ui, uo, ua) = (su.in_degree, su.out_degree, su.total_degree);
    let (vi, vo, va) = (sv.in_degree, sv.out_degree, sv.total_degree);
    let mut p = [0.0; 16];
    p[0] = 1.0;
    p[U_IN] = 1.0 / (ui + 1) as f64;
    p[U_OUT] = 1.0 / (uo + 1) as f64;
    p[V_IN] = 1.0 / (vi + 1) as f64;
    p[V_OUT] = 1.0 / (vo + 1) as f64;
    p[U_IN | U_OUT] = 1.0 / (ua + 1) as f64;
    p[V_IN | V_OUT] = 1.0 / (va + 1) as f64;
    match o.case {
        PairCase::Nonadjacent => {
            p[U_IN | V_IN] = g(ui, vi, o.in_in);
            p[U_IN | V_OUT] = g(ui, vo, o.in_out);
            p[U_OUT | V_IN] = g(uo, vi, o.out_in);
            p[U_OUT | V_OUT] = g(uo, vo, o.out_out);
            p[U_IN | U_OUT | V_IN] = g(ua, vi, o.any_in);
            p[U_IN | U_OUT | V_OUT] = g(ua, vo, o.any_out);
            p[U_IN | V_IN | V_OUT] = g(ui, va, o.in_any);
            p[U_OUT | V_IN | V_OUT] = g(uo, va, o.out_any);
            p[U_IN | U_OUT | V_IN | V_OUT] = g(ua, va, o.any_any);
        }
        PairCase::ArcUtoV => {
            // E⁺(u) ∩ E⁻(v) is impossible, and so is everything containing it.
            p[U_IN | V_IN] = forced_last(ui, vi, o.in_in, ui);
            p[U_IN | V_OUT] = g(ui, vo, o.in_out);
            p[U_OUT | V_OUT] = forced_last(uo, vo, o.out_out, vo);
            p[U_IN | U_OUT | V_OUT] = forced_last(ua, vo, o.any_out, vo);
            p[U_IN | V_IN | V_OUT] = forced_last(ui, va, o.in_any, ui);
        }
        PairCase::TwoCycle => {}
        PairCase::ArcVtoU => unreachable!("canonicalized above"),
    }
    if let Some(f) = fault {
        if f.case == o.case && (1..16).contains(&f.mask) {
            p[f.mask] += f.delta;
        }
    }
    PieTerms { probs: p, case: o.case }
}

/// `P(u ∈ S and v ∈ S) = 1 - Ψ(u, v)`.
pub fn joint_in_prob(d: &Digraph, u: usize, v: usize) -> Result<f64> {
    let terms = pie_terms(d, u, v)?;
    checked_joint(u, v, &terms)
}

fn checked_joint(u: usize, v: usize, terms: &PieTerms) -> Result<f64> {
    let value = 1.0 - terms.psi();
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&value) {
        return Err(Error::ProbabilityOutOfRange { u, v, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

pub fn covariance(d: &Digraph, u: usize, v: usize) -> Result<f64> {
    let joint = joint_in_prob(d, u, v)?;
    let rho = |x| crate::bounds::rho(d, x);
    Ok(joint - (1.0 - rho(u)) * (1.0 - rho(v)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarianceReport {
    /// `E|S| = n - Σρ`.
    pub expected_s: f64,
    pub var_s: f64,
    pub sum_rho: f64,
    pub components: usize,
    /// `(u, v, Cov)` for `u < v` with nonzero covariance, when requested.
    pub pair_covariances: Option<Vec<(usize, usize, f64)>>,
}

pub fn variance_of_s(d: &Digraph) -> Result<VarianceReport> {
    variance_impl(d, false, None)
}

/// Like [`variance_of_s`], also returning every nonzero pair covariance.
pub fn variance_of_s_with_pairs(d: &Digraph) -> Result<VarianceReport> {
    variance_impl(d, true, None)
}

#[doc(hidden)]
pub fn variance_of_s_with_fault(d: &Digraph, fault: Option<CatalogFault>) -> Result<VarianceReport> {
    variance_impl(d, false, fault)
}

/// Covariance sum of one row, plus the individual `(u, v, cov)` entries when kept.
type Row = (f64, Vec<(usize, usize, f64)>);

fn variance_impl(d: &Digraph, keep_pairs: bool, fault: Option<CatalogFault>) -> Result<VarianceReport> {
    let n = d.n();
    let rho = rho_table(d);
    let stats: Vec<VertexStats> = (0..n).map(|v| d.stats(v)).collect();

    // One row per u; rows are reduced in index order so the sum does not
    // depend on the thread schedule.
    let rows: Vec<Row> = (0..n)
        .into_par_iter()
        .map(|u| -> Result<Row> {
            let mut sum = 0.0;
            let mut kept = Vec::new();
            for v in u + 1..n {
                let o = d.overlap(u, v);
                if o.case == PairCase::Nonadjacent && o.any_any == 0 {
                    // Disjoint closed neighborhoods: the indicators are independent.
                    continue;
                }
                let terms = catalog(stats[u], stats[v], &o, fault);
                let joint = checked_joint(u, v, &terms)?;
                let cov = joint - (1.0 - rho[u]) * (1.0 - rho[v]);
                sum += cov;
                if keep_pairs && cov != 0.0 {
                    kept.push((u, v, cov));
                }
            }
            Ok((sum, kept))
        })
        .collect::<Result<_>>()?;

    let diagonal: f64 = rho.iter().map(|r| r * (1.0 - r)).sum();
    let off_diagonal: f64 = rows.iter().map(|(s, _)| s).sum();
    let mut var_s = diagonal + 2.0 * off_diagonal;
    if var_s < -VARIANCE_SLACK {
        return Err(Error::NegativeVariance(var_s));
    }
    var_s = var_s.max(0.0);

    let sum_rho: f64 = rho.iter().sum();
    let pair_covariances = keep_pairs.then(|| rows.into_iter().flat_map(|(_, k)| k).collect());
    Ok(VarianceReport {
        expected_s: n as f64 - sum_rho,
        var_s,
        sum_rho,
        components: d.weak_components().count,
        pair_covariances,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarianceBoundReport {
    pub agjs: f64,
    pub variance: f64,
    /// `Σρ - c`.
    pub denominator: f64,
    pub correction: f64,
    pub bound: f64,
    /// The denominator vanished and the correction was dropped.
    pub degenerate: bool,
}

pub fn variance_bound(d: &Digraph) -> Result<VarianceBoundReport> {
    let report = variance_of_s(d)?;
    bound_from_variance(d, &report)
}

pub(crate) fn bound_from_variance(d: &Digraph, report: &VarianceReport) -> Result<VarianceBoundReport> {
    let denominator = report.sum_rho - report.components as f64;
    if denominator < -DEGENERACY_TOLERANCE {
        return Err(Error::NegativeDenominator(denominator));
    }
    let degenerate = denominator <= DEGENERACY_TOLERANCE;
    if degenerate != every_component_complete_symmetric(d) {
        log::warn!(
            "numeric degeneracy ({degenerate}) disagrees with the structural check; denominator = {denominator:e}"
        );
    }
    let correction = if degenerate { 0.0 } else { report.var_s / denominator };
    Ok(VarianceBoundReport {
        agjs: report.sum_rho,
        variance: report.var_s,
        denominator,
        correction,
        bound: report.sum_rho + correction,
        degenerate,
    })
}

/// Structural form of the degenerate case: each weak component is a
/// complete symmetric digraph.
pub fn every_component_complete_symmetric(d: &Digraph) -> bool {
    d.weak_components()
        .members()
        .iter()
        .all(|m| d.is_complete_symmetric_on(m))
}
