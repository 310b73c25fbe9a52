//! The DL ("directed labeling") feedback vertex set procedure.
//!
//! Given a labeling, a vertex enters `S` iff it has an in-neighbor and an
//! out-neighbor with strictly larger labels. The minimum-label vertex of
//! any directed cycle always qualifies, so `D - S` is acyclic, and the
//! maximum-label vertex of each weak component never does, so
//! `|S| <= n - c`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// A bijection from vertices to ranks `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    rank: Vec<usize>,
}

impl Labeling {
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let n = rank.len();
        let mut seen = vec![false; n];
        for &r in &rank {
            if r == 0 || r > n || seen[r - 1] {
                return Err(Error::InvalidLabeling { n });
            }
            seen[r - 1] = true;
        }
        Ok(Labeling { rank })
    }

    /// `order[i]` receives rank `i + 1`.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || rank[v] != 0 {
                return Err(Error::InvalidLabeling { n });
            }
            rank[v] = i + 1;
        }
        Ok(Labeling { rank })
    }

    pub fn identity(n: usize) -> Self {
        Labeling {
            rank: (1..=n).collect(),
        }
    }

    /// Uniform over all `n!` labelings (Fisher–Yates shuffle).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut rank: Vec<usize> = (1..=n).collect();
        rank.shuffle(rng);
        Labeling { rank }
    }

    /// `rank ↦ n + 1 - rank`.
    pub fn reversed(&self) -> Self {
        let n = self.rank.len();
        Labeling {
            rank: self.rank.iter().map(|&r| n + 1 - r).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.rank.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    #[inline]
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Vertices in increasing rank order.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.rank.len()];
        for (v, &r) in self.rank.iter().enumerate() {
            order[r - 1] = v;
        }
        order
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FvsResult {
    /// Sorted vertex ids.
    pub set: Vec<usize>,
    pub labeling: Labeling,
}

pub fn run_dl(d: &Digraph, labeling: &Labeling) -> Result<FvsResult> {
    if labeling.len() != d.n() {
        return Err(Error::InvalidLabeling { n: d.n() });
    }
    Ok(FvsResult {
        set: dl_set(d, labeling.ranks()),
        labeling: labeling.clone(),
    })
}

/// Core DL rule on a raw rank slice; no validation.
pub(crate) fn dl_set(d: &Digraph, rank: &[usize]) -> Vec<usize> {
    (0..d.n()).filter(|&u| in_dl_set(d, rank, u)).collect()
}

#[inline]
pub(crate) fn in_dl_set(d: &Digraph, rank: &[usize], u: usize) -> bool {
    let r = rank[u];
    d.in_neighbors(u).iter().any(|&w| rank[w] > r) && d.out_neighbors(u).iter().any(|&w| rank[w] > r)
}

/// `|S|` without materializing the set.
pub(crate) fn dl_size(d: &Digraph, rank: &[usize]) -> usize {
    (0..d.n()).filter(|&u| in_dl_set(d, rank, u)).count()
}

/// The acyclic set of vertices that precede all their out-neighbors or all
/// their in-neighbors under `pi`.
pub fn sample_acyclic_set(d: &Digraph, pi: &Labeling) -> Result<Vec<usize>> {
    if pi.len() != d.n() {
        return Err(Error::InvalidLabeling { n: d.n() });
    }
    let rank = pi.ranks();
    Ok((0..d.n())
        .filter(|&v| {
            let r = rank[v];
            d.out_neighbors(v).iter().all(|&w| rank[w] > r)
                || d.in_neighbors(v).iter().all(|&w| rank[w] > r)
        })
        .collect())
}

pub fn is_fvs(d: &Digraph, set: &[usize]) -> bool {
    let mut keep = vec![true; d.n()];
    for &v in set {
        if v < d.n() {
            keep[v] = false;
        }
    }
    d.is_acyclic_mask(&keep)
}

/// Labeling under which DL returns exactly `fvs`, provided `fvs` is an
/// inclusion-minimal feedback vertex set.
///
/// Members of `fvs` take ranks `1..=|fvs|` in ascending vertex order; the
/// rest follow in topological order of `D - fvs`, ties broken by smallest
/// vertex id.
pub fn optimal_labeling(d: &Digraph, fvs: &[usize]) -> Result<Labeling> {
    let n = d.n();
    let mut in_fvs = vec![false; n];
    for &v in fvs {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        in_fvs[v] = true;
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| in_fvs[v]).collect();

    let mut indeg: Vec<usize> = (0..n)
        .map(|v| d.in_neighbors(v).iter().filter(|&&w| !in_fvs[w]).count())
        .collect();
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&v| !in_fvs[v] && indeg[v] == 0)
        .map(Reverse)
        .collect();
    while let Some(Reverse(x)) = ready.pop() {
        order.push(x);
        for &y in d.out_neighbors(x) {
            if !in_fvs[y] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.push(Reverse(y));
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::NotFeedbackVertexSet);
    }

    let labeling = Labeling::from_order(&order)?;
    let produced = dl_set(d, labeling.ranks());
    let mut expected: Vec<usize> = fvs.to_vec();
    expected.sort_unstable();
    expected.dedup();
    if produced != expected {
        return Err(Error::NotMinimal { produced });
    }
    Ok(labeling)
}
