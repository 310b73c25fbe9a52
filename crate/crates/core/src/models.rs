//! Seeded random digraph models.
//!
//! Every generator walks the ordered pairs `(u, v)`, `u != v`, in
//! lexicographic order and draws one Bernoulli trial per pair from a
//! ChaCha8 stream, so `(params, seed)` fixes the digraph exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Partition sizes are computed from products like `0.1 * 150`, which land a
/// hair above or below the intended integer in binary floating point.
const ROUNDING_SLACK: f64 = 1e-9;

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("{name} = {p} is not in [0, 1]")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErParams {
    pub n: usize,
    pub p: f64,
}

/// Low-degree / high-degree model. Vertices `0..floor(p_low * n)` are the
/// low class; `q1` applies high–high, `q2` high–low (either direction),
/// `q3` low–low.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTypeParams {
    pub n: usize,
    pub p_low: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl TwoTypeParams {
    pub fn low_count(&self) -> usize {
        ((self.p_low * self.n as f64 + ROUNDING_SLACK).floor() as usize).min(self.n)
    }
}

/// Bipartite model with parts `A = 0..ceil(n * a)` and `B` the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteParams {
    pub n: usize,
    pub a: f64,
    pub p: f64,
}

impl BipartiteParams {
    pub fn part_a_size(&self) -> usize {
        ((self.n as f64 * self.a - ROUNDING_SLACK).ceil().max(0.0) as usize).min(self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Er(ErParams),
    TwoType(TwoTypeParams),
    Bipartite(BipartiteParams),
}

impl ModelParams {
    pub fn n(&self) -> usize {
        match self {
            ModelParams::Er(p) => p.n,
            ModelParams::TwoType(p) => p.n,
            ModelParams::Bipartite(p) => p.n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelParams::Er(_) => "er",
            ModelParams::TwoType(_) => "two-type",
            ModelParams::Bipartite(_) => "bipartite",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelParams::Er(p) => check_probability("p", p.p),
            ModelParams::TwoType(p) => {
                check_probability("p_low", p.p_low)?;
                check_probability("q1", p.q1)?;
                check_probability("q2", p.q2)?;
                check_probability("q3", p.q3)
            }
            ModelParams::Bipartite(p) => {
                check_probability("a", p.a)?;
                check_probability("p", p.p)
            }
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Digraph> {
        match self {
            ModelParams::Er(p) => gen_er(p, seed),
            ModelParams::TwoType(p) => gen_two_type(p, seed),
            ModelParams::Bipartite(p) => gen_bipartite(p, seed),
        }
    }
}

fn sample_pairs<F>(n: usize, seed: u64, prob: F) -> Result<Digraph>
where
    F: Fn(usize, usize) -> f64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(prob(u, v)) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::new(n, arcs)
}

pub fn gen_er(params: &ErParams, seed: u64) -> Result<Digraph> {
    check_probability("p", params.p)?;
    sample_pairs(params.n, seed, |_, _| params.p)
}

pub fn gen_two_type(params: &TwoTypeParams, seed: u64) -> Result<Digraph> {
    ModelParams::TwoType(*params).validate()?;
    let low = params.low_count();
    sample_pairs(params.n, seed, |u, v| match (u < low, v < low) {
        (false, false) => params.q1,
        (true, true) => params.q3,
        _ => params.q2,
    })
}

pub fn gen_bipartite(params: &BipartiteParams, seed: u64) -> Result<Digraph> {
    ModelParams::Bipartite(*params).validate()?;
    let a = params.part_a_size();
    sample_pairs(params.n, seed, |u, v| if (u < a) != (v < a) { params.p } else { 0.0 })
}

/// Seed for item `index` of stream `stream` under `master` (SplitMix64
/// finalizer over a fixed combination of the three).
pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    let mut z = master
        ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03).rotate_left(17);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
