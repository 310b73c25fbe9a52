//! First-order lower bounds on the maximum acyclic set size.
//!
//! `rho(v)` is the probability that, in a uniformly random vertex order,
//! `v` precedes all of its out-neighbors or all of its in-neighbors. The
//! vertices for which this happens form an acyclic set, so `Σ rho(v)` is a
//! lower bound (the AGJS bound). The neighborhood refinement adds the
//! expected contribution of a second pass on the residual subgraph left
//! after deleting that set and its neighborhood.

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// `1/(1+x) + 1/(1+y) - 1/(1+x+y-z)`, nonincreasing in each argument on
/// `x, y >= 0`, `0 <= z <= min(x, y)`.
pub fn monotone_f(x: f64, y: f64, z: f64) -> Result<f64> {
    let ok = x >= 0.0 && y >= 0.0 && z >= 0.0 && z <= x.min(y);
    if !ok {
        return Err(Error::Domain(format!(
            "f({x}, {y}, {z}) requires x, y >= 0 and 0 <= z <= min(x, y)"
        )));
    }
    Ok(f_unchecked(x, y, z))
}

#[inline]
fn f_unchecked(x: f64, y: f64, z: f64) -> f64 {
    1.0 / (1.0 + x) + 1.0 / (1.0 + y) - 1.0 / (1.0 + x + y - z)
}

/// Panics if `v` is out of range.
pub fn rho(d: &Digraph, v: usize) -> f64 {
    let s = d.stats(v);
    1.0 / (1 + s.out_degree) as f64 + 1.0 / (1 + s.in_degree) as f64
        - 1.0 / (1 + s.total_degree) as f64
}

pub fn rho_table(d: &Digraph) -> Vec<f64> {
    (0..d.n()).map(|v| rho(d, v)).collect()
}

pub fn agjs_bound(d: &Digraph) -> f64 {
    (0..d.n()).map(|v| rho(d, v)).sum()
}

/// `Σ 1/(1 + d⁺(v))`; weaker than [`agjs_bound`], kept as a diagnostic.
pub fn gruber_bound(d: &Digraph) -> f64 {
    (0..d.n())
        .map(|v| 1.0 / (1 + d.out_neighbors(v).len()) as f64)
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodBoundReport {
    pub agjs: f64,
    pub refined: f64,
    /// `rho(v) * max(0, 1 - rho(v) - Σ_{u ∈ N(v)} rho(u))`.
    pub per_vertex_gain: Vec<f64>,
}

impl NeighborhoodBoundReport {
    pub fn improvement(&self) -> f64 {
        self.refined - self.agjs
    }
}

pub fn neighborhood_bound(d: &Digraph) -> NeighborhoodBoundReport {
    let rho = rho_table(d);
    neighborhood_bound_with(d, &rho)
}

pub(crate) fn neighborhood_bound_with(d: &Digraph, rho: &[f64]) -> NeighborhoodBoundReport {
    let per_vertex_gain: Vec<f64> = (0..d.n())
        .map(|v| {
            let around: f64 = d.neighborhood(v).iter().map(|nb| rho[nb.vertex]).sum();
            rho[v] * (1.0 - rho[v] - around).max(0.0)
        })
        .collect();
    let agjs: f64 = rho.iter().sum();
    let refined = rho
        .iter()
        .zip(&per_vertex_gain)
        .map(|(r, g)| r + g)
        .sum();
    NeighborhoodBoundReport {
        agjs,
        refined,
        per_vertex_gain,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{brute_alpha, for_each_permutation};
    use proptest::prelude::*;

    /// P(v precedes all out-neighbors or all in-neighbors), by enumeration.
    fn rho_by_permutations(d: &Digraph, v: usize) -> f64 {
        let mut hits = 0u64;
        let mut total = 0u64;
        let mut pos = vec![0; d.n()];
        for_each_permutation(d.n(), |order| {
            for (i, &x) in order.iter().enumerate() {
                pos[x] = i;
            }
            let a = d.out_neighbors(v).iter().all(|&w| pos[w] > pos[v]);
            let b = d.in_neighbors(v).iter().all(|&w| pos[w] > pos[v]);
            hits += (a || b) as u64;
            total += 1;
        });
        hits as f64 / total as f64
    }

    fn cycle3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&Digraph::empty(1), 0), 1.0);
        let d = cycle3();
        assert!((rho_by_permutations(&d, 0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((rho(&d, 0) - 2.0 / 3.0).abs() < 1e-15);
        for n in [3, 4] {
            let k = Digraph::complete_symmetric(n);
            let oracle = rho_by_permutations(&k, 0);
            assert!((oracle - 1.0 / n as f64).abs() < 1e-15);
            assert!((rho(&k, 0) - oracle).abs() < 1e-15);
        }
    }

    #[test]
    fn rho_matches_permutation_oracle_on_mixed_graph() {
        let d = Digraph::new(5, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1), (4, 0), (2, 4)]).unwrap();
        for v in 0..5 {
            assert!((rho(&d, v) - rho_by_permutations(&d, v)).abs() < 1e-12);
        }
    }

    #[test]
    fn agjs_examples() {
        let d = cycle3();
        assert!((agjs_bound(&d) - 2.0).abs() < 1e-12);
        assert_eq!(brute_alpha(&d).unwrap().0, 2);
        assert_eq!(agjs_bound(&Digraph::new(2, [(0, 1)]).unwrap()), 2.0);
        assert_eq!(agjs_bound(&Digraph::empty(5)), 5.0);
        assert_eq!(agjs_bound(&Digraph::empty(0)), 0.0);
    }

    #[test]
    fn gruber_is_weaker() {
        let d = cycle3();
        assert!((gruber_bound(&d) - 1.5).abs() < 1e-12);
        assert!(gruber_bound(&d) <= agjs_bound(&d));
    }

    #[test]
    fn f_examples_and_domain() {
        assert_eq!(monotone_f(0.0, 0.0, 0.0).unwrap(), 1.0);
        assert!((monotone_f(1.0, 1.0, 0.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(monotone_f(-1.0, 0.0, 0.0).is_err());
        assert!(monotone_f(1.0, 2.0, 1.5).is_err());
        assert!(monotone_f(1.0, 2.0, -0.5).is_err());
    }

    #[test]
    fn neighborhood_examples() {
        let r = neighborhood_bound(&cycle3());
        assert!(r.per_vertex_gain.iter().all(|&g| g == 0.0));
        assert!((r.refined - 2.0).abs() < 1e-12);

        let r = neighborhood_bound(&Digraph::empty(3));
        assert_eq!(r.refined, 3.0);

        let k = 20;
        let star = Digraph::new(k + 1, (1..=k).map(|x| (0, x))).unwrap();
        let r = neighborhood_bound(&star);
        assert_eq!(r.refined, (k + 1) as f64);
        assert_eq!(r.agjs, (k + 1) as f64);
    }

    #[test]
    fn neighborhood_gain_counts_two_cycle_partner_once() {
        // Vertex 0 has a two-cycle with 1 and an arc to 2; N(0) = {1, 2}.
        let d = Digraph::new(5, [(0, 1), (1, 0), (0, 2), (3, 4)]).unwrap();
        let rho = rho_table(&d);
        let r = neighborhood_bound(&d);
        let expected = rho[0] * (1.0 - rho[0] - rho[1] - rho[2]).max(0.0);
        assert_eq!(r.per_vertex_gain[0], expected);
    }

    fn arb_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::weighted(0.3), n * n).prop_map(move |bits| {
                let arcs = (0..n)
                    .flat_map(|u| (0..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| u != v && bits[u * n + v]);
                Digraph::new(n, arcs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn f_is_monotone(a in 0u32..30, b in 0u32..30, s in 0u32..30, da in 0u32..10, db in 0u32..10, ds in 0u32..10) {
            let s = s.min(a.min(b));
            let (c, d, t) = (a + da, b + db, (s + ds).min((a + da).min(b + db)));
            prop_assume!(s <= t);
            let lo = monotone_f(a as f64, b as f64, s as f64).unwrap();
            let hi = monotone_f(c as f64, d as f64, t as f64).unwrap();
            prop_assert!(lo >= hi - 1e-15);
        }

        #[test]
        fn rho_is_in_unit_interval(d in arb_digraph(10)) {
            for v in 0..d.n() {
                let s = d.stats(v);
                let r = rho(&d, v);
                prop_assert!(r > 0.0 && r <= 1.0 + 1e-15);
                prop_assert_eq!(r == 1.0, s.in_degree == 0 || s.out_degree == 0);
            }
        }

        #[test]
        fn rho_grows_on_induced_subgraphs(d in arb_digraph(10), keep in proptest::collection::vec(any::<bool>(), 10)) {
            let set: Vec<usize> = (0..d.n()).filter(|&v| keep[v]).collect();
            let (h, map) = d.induced_subgraph(&set);
            for (i, &v) in map.iter().enumerate() {
                prop_assert!(rho(&h, i) >= rho(&d, v) - 1e-15);
            }
        }

        #[test]
        fn refinement_dominates(d in arb_digraph(10)) {
            let r = neighborhood_bound(&d);
            prop_assert!(r.refined >= r.agjs);
            prop_assert!(r.per_vertex_gain.iter().all(|&g| g >= 0.0));
            let sum: f64 = r.per_vertex_gain.iter().sum();
            prop_assert!((r.refined - r.agjs - sum).abs() < 1e-9);
        }
    }
}
