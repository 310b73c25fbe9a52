//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use acyclic_bounds::bounds::{monotone_f, neighborhood_bound, rho};
use acyclic_bounds::digraph::serialize_edge_list;
use acyclic_bounds::experiment::{run_cell, TableCell};
use acyclic_bounds::models::{gen_er, BipartiteParams, ErParams, ModelParams, TwoTypeParams};
use acyclic_bounds::verify::{
    all_digraphs, check_catalog, check_degeneracy, check_dl_properties, check_duality, check_exact_variance,
    check_optimal_labeling, check_sandwich, random_instances,
};
use acyclic_bounds::Digraph;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 20_240_601;

fn first_failure<'a, I, F>(instances: I, mut check: F) -> Result<usize, String>
where
    I: IntoIterator<Item = &'a Digraph>,
    F: FnMut(&Digraph) -> Result<(), String>,
{
    let mut count = 0;
    for d in instances {
        check(d).map_err(|e| format!("{e}\ncounterexample:\n{}", serialize_edge_list(d)))?;
        count += 1;
    }
    Ok(count)
}

/// Exhaustive n <= 4 plus at least 200 random graphs with 5 <= n <= 7.
fn oracle_instances() -> Vec<Digraph> {
    let mut v: Vec<Digraph> = (3..=4).flat_map(all_digraphs).collect();
    v.extend(random_instances(270, 5, 7, SEED));
    v
}

fn variance_oracle() -> Outcome {
    let instances = oracle_instances();
    let count = first_failure(&instances, |d| check_exact_variance(d, None))?;
    Ok(format!("{count} graphs (64 on n=3, 4096 on n=4, 270 random on 5..=7)"))
}

fn catalog_terms() -> Outcome {
    let instances = oracle_instances();
    let mut seen = [false; 4];
    let count = first_failure(&instances, |d| {
        let s = check_catalog(d, None)?;
        seen.iter_mut().zip(s).for_each(|(a, b)| *a |= b);
        Ok(())
    })?;
    if seen.iter().any(|s| !s) {
        return Err(format!("adjacency cases exercised: {seen:?}"));
    }
    Ok(format!("{count} graphs, all four ordered-pair cases"))
}

fn sandwich() -> Outcome {
    let instances = random_instances(540, 1, 12, SEED ^ 1);
    let count = first_failure(&instances, |d| check_sandwich(d, None))?;
    Ok(format!("{count} random graphs with n <= 12"))
}

fn dl_properties() -> Outcome {
    let instances = random_instances(600, 1, 30, SEED ^ 2);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let count = first_failure(&instances, |d| check_dl_properties(d, 20, &mut rng))?;
    let small: Vec<Digraph> = (1..=4)
        .flat_map(all_digraphs)
        .chain(random_instances(60, 5, 6, SEED ^ 3))
        .collect();
    let dual = first_failure(&small, check_duality)?;
    Ok(format!("{} (graph, labeling) pairs; duality on {dual} graphs with n <= 6", count * 20))
}

fn optimal_labeling() -> Outcome {
    let instances = random_instances(150, 1, 10, SEED ^ 4);
    let count = first_failure(&instances, check_optimal_labeling)?;
    Ok(format!("{count} graphs with n <= 10"))
}

fn degeneracy() -> Outcome {
    let mut exhaustive = 0;
    for n in 1..=5 {
        for d in all_digraphs(n) {
            check_degeneracy(&d).map_err(|e| format!("{e}\n{}", serialize_edge_list(&d)))?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut targeted = Vec::new();
    for _ in 0..200 {
        let mut d = Digraph::empty(0);
        let budget = rng.gen_range(1..=12);
        while d.n() < budget {
            let k = rng.gen_range(1..=budget - d.n());
            d = d.disjoint_union(&Digraph::complete_symmetric(k));
        }
        targeted.push(d.clone());
        // Dropping one arc from a nontrivial block breaks degeneracy.
        let first = d.arcs().next();
        if let Some(drop) = first {
            targeted.push(Digraph::new(d.n(), d.arcs().filter(|&a| a != drop)).unwrap());
        }
    }
    let count = first_failure(&targeted, check_degeneracy)?;
    Ok(format!("{exhaustive} graphs exhaustively for n <= 5, {count} complete-symmetric unions and near-misses"))
}

fn within(label: &str, got: f64, want: f64, tol: f64) -> Result<String, String> {
    let text = format!("{label} {got:.4} (target {want} ± {tol})");
    if (got - want).abs() <= tol {
        Ok(text)
    } else {
        Err(text)
    }
}

fn cell_checks(cell: &TableCell, targets: [(f64, f64); 3]) -> Outcome {
    let parts = [
        within("agjs", cell.agjs.mean, targets[0].0, targets[0].1),
        within("Δneigh", cell.delta_neigh.mean, targets[1].0, targets[1].1),
        within("Δvar", cell.delta_var.mean, targets[2].0, targets[2].1),
    ];
    let ok = parts.iter().all(Result::is_ok);
    let text = parts.map(|p| p.unwrap_or_else(|e| e)).join(", ");
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

fn table_er() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (p, want) in [(0.05, 0.31), (0.50, 0.50), (0.95, 0.91)] {
        let cell = run_cell(&ModelParams::Er(ErParams { n: 100, p }), 1000, SEED).map_err(|e| e.to_string())?;
        // The published column is a rounded average: sparse graphs do have
        // rare vertices with positive gain, so "0" means 0.00 once rounded.
        let neigh_zero = (cell.delta_neigh.mean * 100.0).round() == 0.0;
        let dvar = within("Δvar", cell.delta_var.mean, want, 0.05);
        ok &= neigh_zero && dvar.is_ok();
        lines.push(format!(
            "p={p}: Δneigh {:.6}{}, {}",
            cell.delta_neigh.mean,
            if neigh_zero { "" } else { " (expected 0)" },
            dvar.unwrap_or_else(|e| e)
        ));
    }
    let checked = direct_gain_check(ErParams { n: 100, p: 0.05 }, 200)?;
    lines.push(format!("direct gain recomputation agrees on {checked} graphs"));
    let text = lines.join("; ");
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

/// Recomputes the neighborhood gain from raw adjacency lists, independent
/// of the library's bound code, and compares graph by graph.
fn direct_gain_check(params: ErParams, graphs: usize) -> Result<usize, String> {
    for i in 0..graphs {
        let d = gen_er(&params, SEED.wrapping_add(i as u64)).map_err(|e| e.to_string())?;
        let n = d.n();
        let nbrs: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = d.out_neighbors(v).iter().chain(d.in_neighbors(v)).copied().collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        let r: Vec<f64> = (0..n)
            .map(|v| {
                let (o, i, t) = (d.out_neighbors(v).len(), d.in_neighbors(v).len(), nbrs[v].len());
                1.0 / (1 + o) as f64 + 1.0 / (1 + i) as f64 - 1.0 / (1 + t) as f64
            })
            .collect();
        let gain: f64 = (0..n)
            .map(|v| r[v] * (1.0 - r[v] - nbrs[v].iter().map(|&u| r[u]).sum::<f64>()).max(0.0))
            .sum();
        let lib = neighborhood_bound(&d).improvement();
        if (gain - lib).abs() > 1e-9 {
            return Err(format!("graph {i}: direct gain {gain} vs library {lib}"));
        }
    }
    Ok(graphs)
}

fn table_two_type() -> Outcome {
    let tol = [0.5, 0.8, 0.4];
    let mut lines = Vec::new();
    let mut ok = true;
    for (q3, want) in [(0.005, [20.89, 8.78, 3.84]), (0.05, [13.47, 0.15, 2.01])] {
        let params = TwoTypeParams { n: 100, p_low: 0.9, q1: 0.7, q2: 0.5, q3 };
        let cell = run_cell(&ModelParams::TwoType(params), 100, SEED).map_err(|e| e.to_string())?;
        let r = cell_checks(&cell, [0, 1, 2].map(|i| (want[i], tol[i])));
        ok &= r.is_ok();
        lines.push(format!("q3={q3}: {}", r.unwrap_or_else(|e| e)));
    }
    let text = lines.join("; ");
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

fn table_bipartite() -> Outcome {
    let params = BipartiteParams { n: 100, a: 0.05, p: 0.65 };
    let cell = run_cell(&ModelParams::Bipartite(params), 100, SEED).map_err(|e| e.to_string())?;
    cell_checks(&cell, [(30.82, 1.5), (16.94, 1.5), (6.09, 0.8)])
}

fn monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let f = |x: u32, y: u32, z: u32| monotone_f(x as f64, y as f64, z as f64).unwrap();
    for _ in 0..10_000 {
        let x = rng.gen_range(0..60u32);
        let y = rng.gen_range(0..60u32);
        let z = rng.gen_range(0..=x.min(y));
        let base = f(x, y, z);
        let (dx, dy, dz) = (rng.gen_range(0..10), rng.gen_range(0..10), rng.gen_range(0..10));
        let z2 = (z + dz).min((x + dx).min(y + dy));
        let moved = [f(x + dx, y, z), f(x, y + dy, z), f(x + dx, y + dy, z2.max(z))];
        if moved.iter().any(|&m| m > base + 1e-15) {
            return Err(format!("f increased from ({x}, {y}, {z}) by ({dx}, {dy}, {dz})"));
        }
    }
    let graphs = random_instances(2_000, 2, 15, SEED ^ 7);
    let mut pairs = 0;
    for d in &graphs {
        let keep: Vec<usize> = (0..d.n()).filter(|_| rng.gen_bool(0.6)).collect();
        let (h, map) = d.induced_subgraph(&keep);
        for (i, &v) in map.iter().enumerate() {
            pairs += 1;
            if rho(&h, i) < rho(d, v) - 1e-15 {
                return Err(format!("rho dropped on induced subgraph at vertex {v}\n{}", serialize_edge_list(d)));
            }
        }
    }
    Ok(format!("10000 triples, {pairs} (subgraph, vertex) pairs"))
}

fn main() -> ExitCode {
    // Under `cargo test`, libtest-style flags may be passed; a filter
    // argument (the first non-flag) restricts to matching criteria.
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria: [Criterion; 10] = [
        ("1 exact variance matches permutation enumeration", variance_oracle),
        ("2 catalog terms match event frequencies", catalog_terms),
        ("3 bound sandwich against brute-force alpha", sandwich),
        ("4 DL output is a small FVS; acyclic-set duality", dl_properties),
        ("5 optimal labeling recovers the minimum FVS", optimal_labeling),
        ("6 degeneracy iff complete symmetric components", degeneracy),
        ("7 ER table cells", table_er),
        ("8 two-type table cells", table_two_type),
        ("9 bipartite table cell", table_bipartite),
        ("10 monotonicity of f and rho", monotonicity),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        if filter.as_ref().is_some_and(|f| !name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{secs:.1}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} [{secs:.1}s]: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
