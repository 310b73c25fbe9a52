//! Brute-force ground truth for small digraphs.
//!
//! Nothing here uses the closed forms it is meant to check: acyclic sets
//! come from subset enumeration, DL statistics and event probabilities from
//! running over every labeling.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;
use crate::dl::{dl_size, Labeling};
use crate::error::{Error, Result};

pub const MAX_ALPHA_N: usize = 15;
pub const MAX_ENUMERATION_N: usize = 8;

/// Calls `f` once for every permutation of `0..n` (iterative Heap's
/// method; `n = 0` yields the empty permutation).
pub fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut f: F) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn check_size(d: &Digraph, limit: usize) -> Result<()> {
    if d.n() > limit {
        return Err(Error::TooLarge { n: d.n(), limit });
    }
    Ok(())
}

/// Maximum acyclic set size and a witness (sorted).
///
/// Each weak component is searched separately, subsets in decreasing
/// cardinality, stopping at the first acyclic one.
pub fn brute_alpha(d: &Digraph) -> Result<(usize, Vec<usize>)> {
    check_size(d, MAX_ALPHA_N)?;
    let mut witness = Vec::new();
    for members in d.weak_components().members() {
        witness.extend(max_acyclic_in(d, &members));
    }
    witness.sort_unstable();
    Ok((witness.len(), witness))
}

fn max_acyclic_in(d: &Digraph, members: &[usize]) -> Vec<usize> {
    let k = members.len();
    let mut local = vec![usize::MAX; d.n()];
    for (i, &v) in members.iter().enumerate() {
        local[v] = i;
    }
    let in_mask: Vec<u32> = members
        .iter()
        .map(|&v| d.in_neighbors(v).iter().fold(0u32, |m, &w| m | 1 << local[w]))
        .collect();
    for size in (0..=k).rev() {
        if let Some(mask) = subsets_of_size(k, size).find(|&m| acyclic_mask(&in_mask, m)) {
            return (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| members[i]).collect();
        }
    }
    unreachable!("the empty set is acyclic")
}

/// Peels vertices with no in-neighbor left inside the mask.
fn acyclic_mask(in_mask: &[u32], mut remaining: u32) -> bool {
    loop {
        if remaining == 0 {
            return true;
        }
        let mut sources = 0u32;
        let mut rest = remaining;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            if in_mask[i as usize] & remaining == 0 {
                sources |= 1 << i;
            }
        }
        if sources == 0 {
            return false;
        }
        remaining &= !sources;
    }
}

/// All `k`-bit masks with `size` bits set, in increasing order (Gosper).
fn subsets_of_size(k: usize, size: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << k;
    let first = if size == 0 { 0u64 } else { (1u64 << size) - 1 };
    let mut next = Some(first).filter(|&m| m < limit);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            let c = current & current.wrapping_neg();
            let r = current + c;
            let m = (((r ^ current) >> 2) / c) | r;
            Some(m).filter(|&m| m < limit)
        };
        Some(current as u32)
    })
}

/// Minimum feedback vertex set size and a witness (the complement of the
/// [`brute_alpha`] witness).
pub fn brute_beta(d: &Digraph) -> Result<(usize, Vec<usize>)> {
    let (alpha, keep) = brute_alpha(d)?;
    let mut in_keep = vec![false; d.n()];
    for &v in &keep {
        in_keep[v] = true;
    }
    let fvs: Vec<usize> = (0..d.n()).filter(|&v| !in_keep[v]).collect();
    Ok((d.n() - alpha, fvs))
}

/// Exact distribution of `|S|` over all `n!` labelings.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactStats {
    pub expected: f64,
    pub variance: f64,
    /// `|S|` value → number of labelings producing it.
    pub distribution: BTreeMap<usize, u64>,
}

pub fn enumerate_dl(d: &Digraph) -> Result<ExactStats> {
    check_size(d, MAX_ENUMERATION_N)?;
    let n = d.n();
    let mut counts = vec![0u64; n + 1];
    let mut rank = vec![0usize; n];
    for_each_permutation(n, |order| {
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i + 1;
        }
        counts[dl_size(d, &rank)] += 1;
    });
    let total: u64 = counts.iter().sum();
    // Integer moments keep the result exact up to the final division.
    let s1: u128 = counts.iter().enumerate().map(|(k, &c)| k as u128 * c as u128).sum();
    let s2: u128 = counts.iter().enumerate().map(|(k, &c)| (k * k) as u128 * c as u128).sum();
    let t = total as f64;
    let expected = s1 as f64 / t;
    let variance = (total as u128 * s2 - s1 * s1) as f64 / (t * t);
    let distribution = counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect();
    Ok(ExactStats {
        expected,
        variance,
        distribution,
    })
}

/// Frequencies of the exclusion events `E⁻(x)`, `E⁺(x)` jointly for every
/// ordered pair, counted over all labelings.
///
/// Masks use the same bit layout as [`crate::variance::PieTerms`].
#[derive(Debug, Clone)]
pub struct EventTable {
    n: usize,
    total: u64,
    /// `atoms[(u * n + v) * 16 + pattern]`: labelings whose exact event
    /// pattern for `(u, v)` is `pattern`.
    atoms: Vec<u64>,
}

impl EventTable {
    pub fn enumerate(d: &Digraph) -> Result<Self> {
        check_size(d, MAX_ENUMERATION_N)?;
        let n = d.n();
        let mut atoms = vec![0u64; n * n * 16];
        let mut total = 0u64;
        let mut pos = vec![0usize; n];
        let mut bits = vec![0usize; n];
        for_each_permutation(n, |order| {
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            for x in 0..n {
                let e_in = d.in_neighbors(x).iter().all(|&w| pos[w] < pos[x]);
                let e_out = d.out_neighbors(x).iter().all(|&w| pos[w] < pos[x]);
                bits[x] = e_in as usize | (e_out as usize) << 1;
            }
            for u in 0..n {
                for v in 0..n {
                    if u != v {
                        atoms[(u * n + v) * 16 + (bits[u] | bits[v] << 2)] += 1;
                    }
                }
            }
            total += 1;
        });
        Ok(EventTable { n, total, atoms })
    }

    /// Probability that every event in `mask` occurs for the pair `(u, v)`.
    pub fn probability(&self, u: usize, v: usize, mask: usize) -> f64 {
        let base = (u * self.n + v) * 16;
        let hits: u64 = (0..16)
            .filter(|&pattern| pattern & mask == mask)
            .map(|pattern| self.atoms[base + pattern])
            .sum();
        hits as f64 / self.total as f64
    }

    /// `P(u ∈ S and v ∈ S)`: neither vertex has any exclusion event.
    pub fn joint_in_s(&self, u: usize, v: usize) -> f64 {
        let base = (u * self.n + v) * 16;
        let hits: u64 = (0..16)
            .filter(|&pattern| pattern & 0b0011 == 0 && pattern & 0b1100 == 0)
            .map(|pattern| self.atoms[base + pattern])
            .sum();
        hits as f64 / self.total as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McStats {
    pub mean: f64,
    /// Bessel-corrected; reported as 0 when `trials == 1`.
    pub sample_var: f64,
    pub variance_defined: bool,
    pub trials: u64,
    pub seed: u64,
}

impl McStats {
    pub fn std_error(&self) -> f64 {
        (self.sample_var / self.trials as f64).sqrt()
    }
}

/// Runs DL on `trials` independent uniform labelings drawn from a ChaCha8
/// stream seeded with `seed`.
pub fn monte_carlo_dl(d: &Digraph, trials: u64, seed: u64) -> Result<McStats> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Welford.
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for k in 1..=trials {
        let labeling = Labeling::random(d.n(), &mut rng);
        let x = dl_size(d, labeling.ranks()) as f64;
        let delta = x - mean;
        mean += delta / k as f64;
        m2 += delta * (x - mean);
    }
    let variance_defined = trials > 1;
    Ok(McStats {
        mean,
        sample_var: if variance_defined { m2 / (trials - 1) as f64 } else { 0.0 },
        variance_defined,
        trials,
        seed,
    })
}
