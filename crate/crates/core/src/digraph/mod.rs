//! Immutable simple loopless digraphs.
//!
//! Vertices are the dense integers `0..n`. Arcs have set semantics: at most
//! one arc per ordered pair, while `u -> v` and `v -> u` may coexist (a
//! two-cycle). All neighbor lists are kept sorted so every traversal and
//! every overlap count is deterministic.

mod io;

pub use io::{parse_edge_list, read_edge_list, serialize_edge_list, write_edge_list};

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Direction flag: the neighbor sends an arc to the vertex.
pub const IN: u8 = 0b01;
/// Direction flag: the vertex sends an arc to the neighbor.
pub const OUT: u8 = 0b10;

/// One entry of the merged neighborhood `N(v) = N⁻(v) ∪ N⁺(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Neighbor {
    pub vertex: usize,
    /// Bitwise combination of [`IN`] and [`OUT`].
    pub dir: u8,
}

impl Neighbor {
    #[inline]
    pub fn is_in(&self) -> bool {
        self.dir & IN != 0
    }

    #[inline]
    pub fn is_out(&self) -> bool {
        self.dir & OUT != 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arc_count: usize,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    adj: Vec<Vec<Neighbor>>,
}

/// Degree data of a single vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexStats {
    pub out_degree: usize,
    pub in_degree: usize,
    /// `|N(v)|`; a two-cycle partner is counted once.
    pub total_degree: usize,
    /// `|N⁺(v) ∩ N⁻(v)|`, the number of two-cycle partners.
    pub two_cycles: usize,
}

/// How a pair of distinct vertices is joined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairCase {
    Nonadjacent,
    ArcUtoV,
    ArcVtoU,
    TwoCycle,
}

impl PairCase {
    pub fn swapped(self) -> Self {
        match self {
            PairCase::ArcUtoV => PairCase::ArcVtoU,
            PairCase::ArcVtoU => PairCase::ArcUtoV,
            other => other,
        }
    }
}

/// Neighborhood overlap counts of an ordered pair `(u, v)`.
///
/// Field names read "u-side, v-side": `in_out` is `|N⁻(u) ∩ N⁺(v)|` and
/// `any_in` is `|N(u) ∩ N⁻(v)|`. Counts are taken over the full
/// neighborhoods, so `u` or `v` themselves are included wherever the set
/// definitions put them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairOverlap {
    pub in_in: usize,
    pub out_out: usize,
    pub in_out: usize,
    pub out_in: usize,
    pub any_in: usize,
    pub in_any: usize,
    pub any_out: usize,
    pub out_any: usize,
    pub any_any: usize,
    pub case: PairCase,
}

impl PairOverlap {
    /// The overlap of `(v, u)` expressed through the counts of `(u, v)`.
    pub fn swapped(&self) -> Self {
        PairOverlap {
            in_in: self.in_in,
            out_out: self.out_out,
            in_out: self.out_in,
            out_in: self.in_out,
            any_in: self.in_any,
            in_any: self.any_in,
            any_out: self.out_any,
            out_any: self.any_out,
            any_any: self.any_any,
            case: self.case.swapped(),
        }
    }
}

/// Weakly connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabels {
    /// Component id per vertex; ids are numbered by smallest member.
    pub labels: Vec<usize>,
    pub count: usize,
}

impl ComponentLabels {
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.labels.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

impl Digraph {
    /// Builds a digraph from an arc list. Duplicate arcs collapse silently.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            check_arc(n, u, v)?;
            set.insert((u, v));
        }
        Ok(Self::from_sorted_arcs(n, set))
    }

    fn from_sorted_arcs(n: usize, arcs: BTreeSet<(usize, usize)>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        // Lexicographic arc order leaves both lists sorted.
        let adj = (0..n)
            .map(|v| merge_neighbors(&in_adj[v], &out_adj[v]))
            .collect();
        Digraph {
            n,
            arc_count: arcs.len(),
            out_adj,
            in_adj,
            adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_arcs(n, BTreeSet::new())
    }

    /// Arcs in both directions between every pair of vertices.
    pub fn complete_symmetric(n: usize) -> Self {
        let arcs = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        Self::from_sorted_arcs(n, arcs)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let shift = self.n;
        let arcs = self
            .arcs()
            .chain(other.arcs().map(|(u, v)| (u + shift, v + shift)))
            .collect();
        Self::from_sorted_arcs(self.n + other.n, arcs)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    /// `N(v)` with direction flags, sorted by vertex.
    #[inline]
    pub fn neighborhood(&self, v: usize) -> &[Neighbor] {
        &self.adj[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out_adj[u].binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn vertex_stats(&self, v: usize) -> Result<VertexStats> {
        self.check_vertex(v)?;
        Ok(self.stats(v))
    }

    /// Same as [`Digraph::vertex_stats`] but panics on an out-of-range vertex.
    #[inline]
    pub fn stats(&self, v: usize) -> VertexStats {
        let out_degree = self.out_adj[v].len();
        let in_degree = self.in_adj[v].len();
        let total_degree = self.adj[v].len();
        VertexStats {
            out_degree,
            in_degree,
            total_degree,
            two_cycles: out_degree + in_degree - total_degree,
        }
    }

    pub fn pair_overlap(&self, u: usize, v: usize) -> Result<PairOverlap> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        Ok(self.overlap(u, v))
    }

    /// Unchecked overlap; one merge pass over the two sorted neighborhoods.
    pub(crate) fn overlap(&self, u: usize, v: usize) -> PairOverlap {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let mut o = PairOverlap {
            in_in: 0,
            out_out: 0,
            in_out: 0,
            out_in: 0,
            any_in: 0,
            in_any: 0,
            any_out: 0,
            out_any: 0,
            any_any: 0,
            case: self.pair_case(u, v),
        };
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].vertex.cmp(&b[j].vertex) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let (x, y) = (a[i], b[j]);
                    let (ui, uo, vi, vo) = (
                        x.is_in() as usize,
                        x.is_out() as usize,
                        y.is_in() as usize,
                        y.is_out() as usize,
                    );
                    o.in_in += ui & vi;
                    o.out_out += uo & vo;
                    o.in_out += ui & vo;
                    o.out_in += uo & vi;
                    o.any_in += vi;
                    o.in_any += ui;
                    o.any_out += vo;
                    o.out_any += uo;
                    o.any_any += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        o
    }

    pub(crate) fn pair_case(&self, u: usize, v: usize) -> PairCase {
        let dir = match self.adj[u].binary_search_by_key(&v, |nb| nb.vertex) {
            Ok(k) => self.adj[u][k].dir,
            Err(_) => 0,
        };
        match (dir & OUT != 0, dir & IN != 0) {
            (false, false) => PairCase::Nonadjacent,
            (true, false) => PairCase::ArcUtoV,
            (false, true) => PairCase::ArcVtoU,
            (true, true) => PairCase::TwoCycle,
        }
    }

    pub fn weak_components(&self) -> ComponentLabels {
        const UNSEEN: usize = usize::MAX;
        let mut labels = vec![UNSEEN; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if labels[start] != UNSEEN {
                continue;
            }
            labels[start] = count;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for nb in &self.adj[x] {
                    if labels[nb.vertex] == UNSEEN {
                        labels[nb.vertex] = count;
                        queue.push_back(nb.vertex);
                    }
                }
            }
            count += 1;
        }
        ComponentLabels { labels, count }
    }

    /// Whether `D[T]` has no directed cycle (Kahn elimination inside `T`).
    /// Out-of-range and repeated entries of `T` are ignored.
    pub fn is_acyclic_induced(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &v in set {
            if v < self.n {
                member[v] = true;
            }
        }
        self.is_acyclic_mask(&member)
    }

    pub(crate) fn is_acyclic_mask(&self, member: &[bool]) -> bool {
        let mut indeg = vec![0usize; self.n];
        let mut size = 0;
        for v in (0..self.n).filter(|&v| member[v]) {
            size += 1;
            indeg[v] = self.in_adj[v].iter().filter(|&&w| member[w]).count();
        }
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| member[v] && indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(x) = stack.pop() {
            removed += 1;
            for &y in &self.out_adj[x] {
                if member[y] {
                    indeg[y] -= 1;
                    if indeg[y] == 0 {
                        stack.push(y);
                    }
                }
            }
        }
        removed == size
    }

    /// Induced subgraph on `set`, relabelled to `0..k` in ascending vertex
    /// order. Returns the subgraph and the original id of each new vertex.
    pub fn induced_subgraph(&self, set: &[usize]) -> (Digraph, Vec<usize>) {
        let mut keep: Vec<usize> = set.iter().copied().filter(|&v| v < self.n).collect();
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let arcs = self
            .arcs()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        (Self::from_sorted_arcs(keep.len(), arcs), keep)
    }

    /// Every pair of distinct vertices in `vertices` spans a two-cycle.
    pub fn is_complete_symmetric_on(&self, vertices: &[usize]) -> bool {
        vertices.iter().all(|&v| {
            vertices
                .iter()
                .all(|&w| w == v || (self.has_arc(v, w) && self.has_arc(w, v)))
        })
    }
}

fn check_arc(n: usize, u: usize, v: usize) -> Result<()> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok(())
}

fn merge_neighbors(ins: &[usize], outs: &[usize]) -> Vec<Neighbor> {
    let mut merged = Vec::with_capacity(ins.len() + outs.len());
    let (mut i, mut j) = (0, 0);
    while i < ins.len() || j < outs.len() {
        let next_in = ins.get(i).copied().unwrap_or(usize::MAX);
        let next_out = outs.get(j).copied().unwrap_or(usize::MAX);
        let (vertex, dir) = match next_in.cmp(&next_out) {
            std::cmp::Ordering::Less => {
                i += 1;
                (next_in, IN)
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                (next_out, OUT)
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                (next_in, IN | OUT)
            }
        };
        merged.push(Neighbor { vertex, dir });
    }
    merged
}
