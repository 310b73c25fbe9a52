use acyclic_bounds::bounds::agjs_bound;
use acyclic_bounds::models::{gen_er, ErParams};
use acyclic_bounds::oracles::{enumerate_dl, monte_carlo_dl};
use acyclic_bounds::variance::variance_of_s;
use acyclic_bounds::Digraph;

#[test]
fn monte_carlo_mean_matches_closed_form() {
    let d = gen_er(&ErParams { n: 50, p: 0.1 }, 17).unwrap();
    let mc = monte_carlo_dl(&d, 100_000, 99).unwrap();
    let expected = d.n() as f64 - agjs_bound(&d);
    assert!(
        (mc.mean - expected).abs() < 4.0 * mc.std_error(),
        "mean {} vs {expected} (se {})",
        mc.mean,
        mc.std_error()
    );
    // The sample variance agrees with the exact variance to within a few percent.
    let var = variance_of_s(&d).unwrap().var_s;
    assert!((mc.sample_var - var).abs() < 0.05 * var, "{} vs {var}", mc.sample_var);
}

#[test]
fn monte_carlo_is_reproducible() {
    let d = gen_er(&ErParams { n: 12, p: 0.3 }, 1).unwrap();
    let a = monte_carlo_dl(&d, 1000, 5).unwrap();
    let b = monte_carlo_dl(&d, 1000, 5).unwrap();
    assert_eq!(a.mean, b.mean);
    assert_eq!(a.sample_var, b.sample_var);
    assert!(monte_carlo_dl(&d, 0, 5).is_err());
}

#[test]
fn enumeration_and_monte_carlo_agree_on_small_graphs() {
    for seed in 0..5 {
        let d = gen_er(&ErParams { n: 7, p: 0.4 }, seed).unwrap();
        let exact = enumerate_dl(&d).unwrap();
        let mc = monte_carlo_dl(&d, 20_000, seed).unwrap();
        assert!((mc.mean - exact.expected).abs() <= 5.0 * mc.std_error().max(1e-12));
        assert_eq!(exact.distribution.values().sum::<u64>(), 5040);
    }
}

#[test]
fn complete_symmetric_fvs_is_deterministic() {
    let d = Digraph::complete_symmetric(6);
    let exact = enumerate_dl(&d).unwrap();
    assert_eq!(exact.expected, 5.0);
    assert_eq!(exact.variance, 0.0);
    let mc = monte_carlo_dl(&d, 100, 1).unwrap();
    assert_eq!(mc.mean, 5.0);
}
