//! Self-check harness: runs the closed forms against the brute-force
//! oracles on exhaustive and random small digraphs.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{agjs_bound, neighborhood_bound};
use crate::digraph::{serialize_edge_list, Digraph, PairCase};
use crate::dl::{is_fvs, optimal_labeling, run_dl, sample_acyclic_set, Labeling};
use crate::models::{gen_er, ErParams};
use crate::oracles::{brute_alpha, brute_beta, enumerate_dl, for_each_permutation, EventTable, MAX_ENUMERATION_N};
use crate::variance::{
    bound_from_variance, every_component_complete_symmetric, pie_terms_with_fault, variance_of_s_with_fault,
    CatalogFault,
};

pub const EXACT_TOLERANCE: f64 = 1e-10;
pub const SANDWICH_SLACK: f64 = 1e-9;
/// Largest `n` for subset-enumeration checks.
pub const MAX_SANDWICH_N: usize = 12;
/// Largest `n` for which every digraph is enumerated.
const EXHAUSTIVE_N: usize = 4;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub samples: usize,
    pub seed: u64,
    #[doc(hidden)]
    pub fault: Option<CatalogFault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 7,
            samples: 200,
            seed: 0x5eed,
            fault: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub message: String,
    /// The offending digraph in edge-list form.
    pub graph: String,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub instances: usize,
    pub failure: Option<Failure>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "PASS  {} ({} instances)", c.name, c.instances)?,
                Some(fail) => {
                    writeln!(f, "FAIL  {} after {} instances: {}", c.name, c.instances, fail.message)?;
                    writeln!(f, "counterexample:")?;
                    for line in fail.graph.lines() {
                        writeln!(f, "    {line}")?;
                    }
                }
            }
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// All digraphs on `n` vertices, one per subset of the `n(n-1)` ordered pairs.
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let arcs = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a);
        Digraph::new(n, arcs).expect("pairs are valid arcs")
    })
}

/// Random ER digraphs with `n` uniform in `lo..=hi` and density cycling
/// through 0.1, 0.2, ..., 0.9.
pub fn random_instances(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(lo..=hi);
            let p = 0.1 * (1 + i % 9) as f64;
            gen_er(&ErParams { n, p }, rng.gen()).expect("valid parameters")
        })
        .collect()
}

/// Runs `check` on every instance, stopping at the first failure.
fn run_check<'a, I, F>(name: &'static str, instances: I, mut check: F) -> CheckOutcome
where
    I: IntoIterator<Item = &'a Digraph>,
    F: FnMut(&Digraph) -> Result<(), String>,
{
    let mut count = 0;
    for d in instances {
        count += 1;
        if let Err(message) = check(d) {
            return CheckOutcome {
                name,
                instances: count,
                failure: Some(Failure {
                    message,
                    graph: serialize_edge_list(d),
                }),
            };
        }
    }
    CheckOutcome {
        name,
        instances: count,
        failure: None,
    }
}

pub fn check_exact_variance(d: &Digraph, fault: Option<CatalogFault>) -> Result<(), String> {
    let exact = enumerate_dl(d).map_err(|e| e.to_string())?;
    let closed = variance_of_s_with_fault(d, fault).map_err(|e| e.to_string())?;
    if (exact.expected - closed.expected_s).abs() > EXACT_TOLERANCE {
        return Err(format!("E|S|: enumeration {} vs closed form {}", exact.expected, closed.expected_s));
    }
    if (exact.variance - closed.var_s).abs() > EXACT_TOLERANCE {
        return Err(format!("Var|S|: enumeration {} vs closed form {}", exact.variance, closed.var_s));
    }
    Ok(())
}

/// Compares all fifteen catalog terms of every ordered pair with event
/// frequencies. Returns which adjacency cases were seen.
pub fn check_catalog(d: &Digraph, fault: Option<CatalogFault>) -> Result<[bool; 4], String> {
    let table = EventTable::enumerate(d).map_err(|e| e.to_string())?;
    let mut seen = [false; 4];
    for u in 0..d.n() {
        for v in (0..d.n()).filter(|&v| v != u) {
            let terms = pie_terms_with_fault(d, u, v, fault).map_err(|e| e.to_string())?;
            seen[terms.case as usize] = true;
            for mask in 1..16 {
                let want = table.probability(u, v, mask);
                if (terms.get(mask) - want).abs() > EXACT_TOLERANCE {
                    return Err(format!(
                        "pair ({u}, {v}) {:?}, event mask {mask:04b}: catalog {} vs frequency {want}",
                        terms.case,
                        terms.get(mask)
                    ));
                }
            }
            let joint = 1.0 - terms.psi();
            if (joint - table.joint_in_s(u, v)).abs() > EXACT_TOLERANCE {
                return Err(format!("pair ({u}, {v}): P(u,v in S) {joint} vs {}", table.joint_in_s(u, v)));
            }
        }
    }
    Ok(seen)
}

pub fn check_sandwich(d: &Digraph, fault: Option<CatalogFault>) -> Result<(), String> {
    let (alpha, witness) = brute_alpha(d).map_err(|e| e.to_string())?;
    if !d.is_acyclic_induced(&witness) {
        return Err("alpha witness is not acyclic".into());
    }
    let alpha = alpha as f64;
    let agjs = agjs_bound(d);
    let neigh = neighborhood_bound(d).refined;
    let var = variance_of_s_with_fault(d, fault).map_err(|e| e.to_string())?;
    let vb = bound_from_variance(d, &var).map_err(|e| e.to_string())?.bound;
    let ok = agjs <= neigh + SANDWICH_SLACK
        && neigh <= alpha + SANDWICH_SLACK
        && agjs <= vb + SANDWICH_SLACK
        && vb <= alpha + SANDWICH_SLACK;
    if !ok {
        return Err(format!("agjs {agjs}, neighborhood {neigh}, variance bound {vb}, alpha {alpha}"));
    }
    Ok(())
}

pub fn check_dl_properties<R: Rng>(d: &Digraph, labelings: usize, rng: &mut R) -> Result<(), String> {
    let c = d.weak_components().count;
    for _ in 0..labelings {
        let l = Labeling::random(d.n(), rng);
        let s = run_dl(d, &l).map_err(|e| e.to_string())?.set;
        if !is_fvs(d, &s) {
            return Err(format!("DL output {s:?} under ranks {:?} is not an FVS", l.ranks()));
        }
        if s.len() + c > d.n() {
            return Err(format!("|S| = {} exceeds n - c = {}", s.len(), d.n() - c));
        }
    }
    Ok(())
}

pub fn check_duality(d: &Digraph) -> Result<(), String> {
    let mut failure = None;
    for_each_permutation(d.n(), |order| {
        if failure.is_some() {
            return;
        }
        let pi = Labeling::from_order(order).expect("permutation");
        let i = sample_acyclic_set(d, &pi).expect("sizes match");
        let s = run_dl(d, &pi.reversed()).expect("sizes match").set;
        let complement: Vec<usize> = (0..d.n()).filter(|v| s.binary_search(v).is_err()).collect();
        if i != complement {
            failure = Some(format!("order {order:?}: I = {i:?}, complement of S = {complement:?}"));
        } else if !d.is_acyclic_induced(&i) {
            failure = Some(format!("order {order:?}: I = {i:?} is not acyclic"));
        }
    });
    failure.map_or(Ok(()), Err)
}

pub fn check_degeneracy(d: &Digraph) -> Result<(), String> {
    let var = variance_of_s_with_fault(d, None).map_err(|e| e.to_string())?;
    let numeric = bound_from_variance(d, &var).map_err(|e| e.to_string())?.degenerate;
    let structural = every_component_complete_symmetric(d);
    if numeric != structural {
        return Err(format!("degenerate flag {numeric} but structural check {structural}"));
    }
    Ok(())
}

pub fn check_optimal_labeling(d: &Digraph) -> Result<(), String> {
    let (beta, fvs) = brute_beta(d).map_err(|e| e.to_string())?;
    if !is_fvs(d, &fvs) {
        return Err("beta witness is not an FVS".into());
    }
    let l = optimal_labeling(d, &fvs).map_err(|e| e.to_string())?;
    let s = run_dl(d, &l).map_err(|e| e.to_string())?.set;
    if s != fvs || s.len() != beta {
        return Err(format!("DL returned {s:?}, expected minimum FVS {fvs:?}"));
    }
    Ok(())
}

pub fn run_verify(config: &VerifyConfig) -> VerifyReport {
    let perm_n = config.max_n.min(MAX_ENUMERATION_N);
    let sandwich_n = config.max_n.min(MAX_SANDWICH_N);
    let fault = config.fault;

    let mut small: Vec<Digraph> = (1..=perm_n.min(EXHAUSTIVE_N)).flat_map(all_digraphs).collect();
    if perm_n > EXHAUSTIVE_N && config.samples > 0 {
        small.extend(random_instances(config.samples, (EXHAUSTIVE_N + 1).max(perm_n.min(5)), perm_n, config.seed));
    }
    let medium = if sandwich_n >= 1 && config.samples > 0 {
        random_instances(config.samples, 1, sandwich_n, config.seed ^ 0xa5a5)
    } else {
        Vec::new()
    };
    let mut targeted: Vec<Digraph> = Vec::new();
    for sizes in [&[1usize][..], &[2], &[3], &[2, 2], &[4, 1, 3], &[5, 5, 2], &[12]] {
        if sizes.iter().sum::<usize>() <= sandwich_n.max(1) {
            targeted.push(
                sizes
                    .iter()
                    .fold(Digraph::empty(0), |acc, &k| acc.disjoint_union(&Digraph::complete_symmetric(k))),
            );
        }
    }

    let mut checks = Vec::new();
    checks.push(run_check("exact variance vs enumeration", &small, |d| check_exact_variance(d, fault)));

    let mut seen = [false; 4];
    let mut catalog = run_check("catalog terms vs event frequencies", &small, |d| {
        let s = check_catalog(d, fault)?;
        for (a, b) in seen.iter_mut().zip(s) {
            *a |= b;
        }
        Ok(())
    });
    if catalog.failure.is_none() && perm_n >= 2 {
        let wanted = [PairCase::Nonadjacent, PairCase::ArcUtoV, PairCase::ArcVtoU, PairCase::TwoCycle];
        if let Some(missing) = wanted.iter().find(|c| !seen[**c as usize]) {
            catalog.failure = Some(Failure {
                message: format!("instance set never exercised {missing:?}"),
                graph: String::new(),
            });
        }
    }
    checks.push(catalog);

    checks.push(run_check("bound sandwich", &medium, |d| check_sandwich(d, fault)));

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x0d1);
    checks.push(run_check("DL feedback property and size cap", medium.iter().chain(&small), |d| {
        check_dl_properties(d, 20, &mut rng)
    }));
    checks.push(run_check("acyclic-set duality", small.iter().filter(|d| d.n() <= 6), check_duality));
    checks.push(run_check("degeneracy characterization", small.iter().chain(&targeted), check_degeneracy));
    checks.push(run_check(
        "optimal labeling reproduces minimum FVS",
        medium.iter().filter(|d| d.n() <= 10),
        check_optimal_labeling,
    ));

    VerifyReport { checks }
}
