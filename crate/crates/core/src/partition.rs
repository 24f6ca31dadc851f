//! Partition containers, weight and load accounting, and the exactness
//! verifiers every partitioner is checked against.

use std::fmt;

use rustc_hash::FxHashSet;

use crate::graph::{Adjacency, Digraph, Hypergraph};

/// An owned biclique `(left, right)`: both sides sorted, nonempty and disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Biclique {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl Biclique {
    pub fn new(mut left: Vec<u32>, mut right: Vec<u32>) -> Option<Self> {
        left.sort_unstable();
        right.sort_unstable();
        let b = Self { left, right };
        b.as_ref().is_well_formed().then_some(b)
    }

    pub fn as_ref(&self) -> BicliqueRef<'_> {
        BicliqueRef { left: &self.left, right: &self.right }
    }
}

/// A borrowed view of one member of a [`BicliquePartition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BicliqueRef<'a> {
    pub left: &'a [u32],
    pub right: &'a [u32],
}

impl BicliqueRef<'_> {
    pub fn weight(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.left.len() as u64 * self.right.len() as u64
    }

    pub fn to_owned(&self) -> Biclique {
        Biclique { left: self.left.to_vec(), right: self.right.to_vec() }
    }

    /// Nonempty, strictly increasing sides with no common vertex.
    pub fn is_well_formed(&self) -> bool {
        let sorted = |s: &[u32]| s.windows(2).all(|w| w[0] < w[1]);
        !self.left.is_empty()
            && !self.right.is_empty()
            && sorted(self.left)
            && sorted(self.right)
            && disjoint_sorted(self.left, self.right)
    }
}

fn disjoint_sorted(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Span {
    start: usize,
    left: u32,
    right: u32,
}

/// A list of bicliques over a host with `host_n` vertices, stored flat: all
/// ids live in one buffer, each member is a span `(start, |L|, |R|)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BicliquePartition {
    host_n: usize,
    ids: Vec<u32>,
    spans: Vec<Span>,
}

impl BicliquePartition {
    pub fn new(host_n: usize) -> Self {
        Self { host_n, ids: Vec::new(), spans: Vec::new() }
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn push(&mut self, left: &[u32], right: &[u32]) {
        let start = self.ids.len();
        self.ids.extend_from_slice(left);
        self.ids.extend_from_slice(right);
        self.spans.push(Span { start, left: left.len() as u32, right: right.len() as u32 });
    }

    /// Moves every member of `other` to the end of `self`.
    pub fn append(&mut self, other: BicliquePartition) {
        let offset = self.ids.len();
        self.ids.extend(other.ids);
        self.spans.extend(other.spans.into_iter().map(|s| Span { start: s.start + offset, ..s }));
    }

    pub fn get(&self, i: usize) -> BicliqueRef<'_> {
        let s = self.spans[i];
        let mid = s.start + s.left as usize;
        BicliqueRef { left: &self.ids[s.start..mid], right: &self.ids[mid..mid + s.right as usize] }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = BicliqueRef<'_>> + '_ {
        (0..self.spans.len()).map(move |i| self.get(i))
    }

    /// Total number of stored ids, i.e. `Σ |L_i| + |R_i|`.
    pub fn weight(&self) -> u64 {
        self.ids.len() as u64
    }

    /// Number of members containing each vertex.
    pub fn loads(&self) -> Vec<u32> {
        let mut loads = vec![0u32; self.host_n];
        for &v in &self.ids {
            loads[v as usize] += 1;
        }
        loads
    }

    pub fn max_load(&self) -> u32 {
        self.loads().into_iter().max().unwrap_or(0)
    }

    /// `Σ |L_i|·|R_i|`, the number of pairs covered counting multiplicity.
    pub fn covered_pairs(&self) -> u64 {
        self.iter().map(|b| b.edge_count()).sum()
    }

    /// The raw id buffer, members laid out back to back.
    pub fn ids(&self) -> &[u32] {
        &self.ids
    }
}

impl FromIterator<Biclique> for BicliquePartition {
    /// Host size is inferred as one more than the largest id.
    fn from_iter<I: IntoIterator<Item = Biclique>>(iter: I) -> Self {
        let mut p = BicliquePartition::new(0);
        for b in iter {
            p.push(&b.left, &b.right);
        }
        p.host_n = p.ids.iter().max().map_or(0, |&v| v as usize + 1);
        p
    }
}

/// A d-clique `(V_1, …, V_d)`; covers every d-set with one vertex per part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DClique {
    pub parts: Vec<Vec<u32>>,
}

impl DClique {
    pub fn weight(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn edge_count(&self) -> u64 {
        self.parts.iter().map(|p| p.len() as u64).product()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DCliquePartition {
    pub host_n: usize,
    pub d: usize,
    pub cliques: Vec<DClique>,
}

impl DCliquePartition {
    pub fn new(host_n: usize, d: usize) -> Self {
        Self { host_n, d, cliques: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.cliques.iter().map(|c| c.weight() as u64).sum()
    }

    pub fn loads(&self) -> Vec<u32> {
        let mut loads = vec![0u32; self.host_n];
        for c in &self.cliques {
            for part in &c.parts {
                for &v in part {
                    loads[v as usize] += 1;
                }
            }
        }
        loads
    }

    pub fn max_load(&self) -> u32 {
        self.loads().into_iter().max().unwrap_or(0)
    }
}

/// Why a family of bicliques (or d-cliques) fails to partition a host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    HostMismatch { partition: usize, host: usize },
    /// Member `index` has an empty, unsorted or overlapping side, wrong part
    /// count, or an out-of-range vertex.
    Malformed { index: usize },
    /// Member `index` covers a pair that is not an edge of the host.
    NotAnEdge { index: usize, pair: Vec<u32> },
    /// Member `index` covers a pair already covered by an earlier member.
    CoveredTwice { index: usize, pair: Vec<u32> },
    Uncovered { pair: Vec<u32> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HostMismatch { partition, host } => {
                write!(f, "partition is over {partition} vertices but host has {host}")
            }
            Violation::Malformed { index } => write!(f, "member {index} is malformed"),
            Violation::NotAnEdge { index, pair } => {
                write!(f, "member {index} covers non-edge {pair:?}")
            }
            Violation::CoveredTwice { index, pair } => {
                write!(f, "member {index} covers {pair:?} a second time")
            }
            Violation::Uncovered { pair } => write!(f, "edge {pair:?} is not covered"),
        }
    }
}

impl std::error::Error for Violation {}

/// Set of unordered/ordered vertex pairs: a bit matrix for small hosts, a hash
/// set otherwise.
enum PairSet {
    Bits { n: usize, words: Vec<u64> },
    Hash(FxHashSet<u64>),
}

impl PairSet {
    fn new(n: usize) -> Self {
        if n <= 1 << 16 {
            PairSet::Bits { n, words: vec![0; (n * n).div_ceil(64)] }
        } else {
            PairSet::Hash(FxHashSet::default())
        }
    }

    /// Inserts `(u, v)`; returns false if it was present.
    fn insert(&mut self, u: u32, v: u32) -> bool {
        match self {
            PairSet::Bits { n, words } => {
                let idx = u as usize * *n + v as usize;
                let (w, b) = (idx / 64, idx % 64);
                let fresh = words[w] >> b & 1 == 0;
                words[w] |= 1 << b;
                fresh
            }
            PairSet::Hash(set) => set.insert((u as u64) << 32 | v as u64),
        }
    }
}

/// Checks that `p` partitions the edges of `g` exactly once.
pub fn verify_partition<G: Adjacency + ?Sized>(g: &G, p: &BicliquePartition) -> Result<(), Violation> {
    let n = g.n();
    if p.host_n() != n {
        return Err(Violation::HostMismatch { partition: p.host_n(), host: n });
    }
    let mut covered = PairSet::new(n);
    let mut count = 0u64;
    for (index, b) in p.iter().enumerate() {
        if !b.is_well_formed() || b.left.iter().chain(b.right).any(|&v| v as usize >= n) {
            return Err(Violation::Malformed { index });
        }
        for &u in b.left {
            for &v in b.right {
                if !g.has_edge(u as usize, v as usize) {
                    return Err(Violation::NotAnEdge { index, pair: vec![u, v] });
                }
                if !covered.insert(u.min(v), u.max(v)) {
                    return Err(Violation::CoveredTwice { index, pair: vec![u.min(v), u.max(v)] });
                }
                count += 1;
            }
        }
    }
    if count != g.m() {
        return Err(Violation::Uncovered { pair: first_uncovered(g, &mut covered) });
    }
    Ok(())
}

fn first_uncovered<G: Adjacency + ?Sized>(g: &G, covered: &mut PairSet) -> Vec<u32> {
    let mut buf = Vec::new();
    for u in 0..g.n() {
        buf.clear();
        g.neighbors_in(u, u + 1, g.n(), &mut buf);
        for &v in &buf {
            if covered.insert(u as u32, v) {
                return vec![u as u32, v];
            }
        }
    }
    unreachable!("edge count mismatch without an uncovered edge")
}

/// Checks that `p`, read as directed bicliques `left -> right`, covers every
/// arc of `g` exactly once.
pub fn verify_directed_partition(g: &Digraph, p: &BicliquePartition) -> Result<(), Violation> {
    let n = g.n();
    if p.host_n() != n {
        return Err(Violation::HostMismatch { partition: p.host_n(), host: n });
    }
    let mut covered = PairSet::new(n);
    let mut count = 0u64;
    for (index, b) in p.iter().enumerate() {
        if !b.is_well_formed() || b.left.iter().chain(b.right).any(|&v| v as usize >= n) {
            return Err(Violation::Malformed { index });
        }
        for &u in b.left {
            for &v in b.right {
                if !g.has_arc(u as usize, v as usize) {
                    return Err(Violation::NotAnEdge { index, pair: vec![u, v] });
                }
                if !covered.insert(u, v) {
                    return Err(Violation::CoveredTwice { index, pair: vec![u, v] });
                }
                count += 1;
            }
        }
    }
    if count != g.arc_count() {
        let (u, v) = g.arcs().find(|&(u, v)| covered.insert(u, v)).expect("an uncovered arc");
        return Err(Violation::Uncovered { pair: vec![u, v] });
    }
    Ok(())
}

/// Checks that the product sets of `p` cover every hyperedge of `h` exactly
/// once and nothing else.
pub fn verify_dpartition(h: &Hypergraph, p: &DCliquePartition) -> Result<(), Violation> {
    if p.host_n != h.n() || p.d != h.d() {
        return Err(Violation::HostMismatch { partition: p.host_n, host: h.n() });
    }
    let d = h.d();
    let edges: Vec<&[u32]> = h.edges().collect();
    let mut covered = vec![false; edges.len()];
    let mut count = 0usize;
    let mut tuple = vec![0u32; d];
    let mut sorted = vec![0u32; d];
    for (index, clique) in p.cliques.iter().enumerate() {
        if !well_formed_clique(clique, d, h.n()) {
            return Err(Violation::Malformed { index });
        }
        let mut cursor = vec![0usize; d];
        'product: loop {
            for k in 0..d {
                tuple[k] = clique.parts[k][cursor[k]];
            }
            sorted.copy_from_slice(&tuple);
            sorted.sort_unstable();
            match edges.binary_search_by(|e| (*e).cmp(&sorted[..])) {
                Err(_) => return Err(Violation::NotAnEdge { index, pair: sorted.clone() }),
                Ok(pos) if covered[pos] => {
                    return Err(Violation::CoveredTwice { index, pair: sorted.clone() })
                }
                Ok(pos) => {
                    covered[pos] = true;
                    count += 1;
                }
            }
            // odometer over the product
            for k in (0..d).rev() {
                cursor[k] += 1;
                if cursor[k] < clique.parts[k].len() {
                    continue 'product;
                }
                cursor[k] = 0;
            }
            break;
        }
    }
    if count != edges.len() {
        let pos = covered.iter().position(|&c| !c).expect("an uncovered hyperedge");
        return Err(Violation::Uncovered { pair: edges[pos].to_vec() });
    }
    Ok(())
}

fn well_formed_clique(c: &DClique, d: usize, n: usize) -> bool {
    if c.parts.len() != d || c.parts.iter().any(|p| p.is_empty()) {
        return false;
    }
    let mut seen = FxHashSet::default();
    c.parts.iter().flatten().all(|&v| (v as usize) < n && seen.insert(v))
}
