//! Graph, digraph and hypergraph containers.
//!
//! Vertices are dense 0-based ids. [`Graph`] stores sorted adjacency lists in
//! CSR form; [`AdjacencyMatrix`] is a symmetric bit matrix used when the
//! lists would not fit in memory (dense graphs beyond ~2^15 vertices). Both
//! implement [`Adjacency`], which is all the partitioners need.

mod generate;
mod io;

pub use generate::{gen_digraph, gen_gnm, gen_gnp, gen_gnp_matrix, gen_hypergraph, gen_interval};
pub use io::{
    read_digraph, read_graph, read_hypergraph, write_digraph, write_graph, write_hypergraph,
};

use crate::error::{GraphError, Result};
use num_rational::Ratio;

/// Read access to an undirected simple graph.
pub trait Adjacency: Sync {
    fn n(&self) -> usize;
    fn m(&self) -> u64;
    fn degree(&self, v: usize) -> usize;
    fn has_edge(&self, u: usize, v: usize) -> bool;

    /// Appends the neighbors of `v` with ids in `lo..hi`, ascending.
    fn neighbors_in(&self, v: usize, lo: usize, hi: usize, out: &mut Vec<u32>);

    /// Bit `j` is set iff `v` is adjacent to `lo + j`. Requires `hi - lo <= 64`.
    fn trace_mask(&self, v: usize, lo: usize, hi: usize) -> u64 {
        debug_assert!(hi - lo <= 64);
        let mut buf = Vec::new();
        self.neighbors_in(v, lo, hi, &mut buf);
        buf.iter().fold(0u64, |acc, &u| acc | 1 << (u as usize - lo))
    }

    /// Number of edges inside `lo..hi`.
    fn edges_within(&self, lo: usize, hi: usize) -> u64 {
        let mut buf = Vec::new();
        let mut total = 0;
        for v in lo..hi {
            buf.clear();
            self.neighbors_in(v, v + 1, hi, &mut buf);
            total += buf.len() as u64;
        }
        total
    }
}

/// Edge density `m / C(n, 2)` as an exact ratio.
pub fn edge_density<G: Adjacency + ?Sized>(g: &G) -> Result<Ratio<u64>> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::Degenerate(n));
    }
    let pairs = (n as u64) * (n as u64 - 1) / 2;
    Ok(Ratio::new(g.m(), pairs))
}

/// Undirected simple graph with sorted adjacency lists (CSR).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { n, offsets: vec![0; n + 1], neighbors: Vec::new() }
    }

    /// Builds a graph from unordered pairs. Self-loops, duplicates (in either
    /// orientation) and out-of-range ids are errors.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x as u64, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, &normalized))
    }

    /// `edges` must be sorted, deduplicated pairs with `u < v < n`.
    pub(crate) fn from_sorted_unique(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; 2 * edges.len()];
        // Lexicographic order of (u, v) makes both fills ascending per row.
        for &(u, v) in edges {
            neighbors[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for &(u, v) in edges {
            neighbors[fill[u as usize]] = v;
            fill[u as usize] += 1;
        }
        Self { n, offsets, neighbors }
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u).iter().filter(move |&&v| v as usize > u).map(move |&v| (u as u32, v))
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn to_matrix(&self) -> AdjacencyMatrix {
        let mut mat = AdjacencyMatrix::empty(self.n);
        for (u, v) in self.edges() {
            mat.set(u as usize, v as usize);
            mat.set(v as usize, u as usize);
        }
        mat.finish();
        mat
    }

    /// Subgraph induced by `vertices` (ascending ids), relabeled to `0..len`.
    pub fn induced(&self, vertices: &[u32]) -> Graph {
        let mut local = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &u in self.neighbors(v as usize) {
                let j = local[u as usize];
                if j != u32::MAX && (i as u32) < j {
                    edges.push((i as u32, j));
                }
            }
        }
        edges.sort_unstable();
        Graph::from_sorted_unique(vertices.len(), &edges)
    }
}

impl Adjacency for Graph {
    fn n(&self) -> usize {
        self.n
    }

    fn m(&self) -> u64 {
        self.neighbors.len() as u64 / 2
    }

    fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    fn neighbors_in(&self, v: usize, lo: usize, hi: usize, out: &mut Vec<u32>) {
        let adj = self.neighbors(v);
        let start = adj.partition_point(|&u| (u as usize) < lo);
        out.extend(adj[start..].iter().take_while(|&&u| (u as usize) < hi));
    }

    fn trace_mask(&self, v: usize, lo: usize, hi: usize) -> u64 {
        debug_assert!(hi - lo <= 64);
        let adj = self.neighbors(v);
        let start = adj.partition_point(|&u| (u as usize) < lo);
        adj[start..].iter().take_while(|&&u| (u as usize) < hi).fold(0u64, |acc, &u| acc | 1 << (u as usize - lo))
    }
}

/// Symmetric bit matrix; row `v` holds the neighborhood of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
    degrees: Vec<u32>,
    m: u64,
}

impl AdjacencyMatrix {
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64);
        Self { n, stride, bits: vec![0; stride * n], degrees: vec![0; n], m: 0 }
    }

    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.stride + v / 64] |= 1 << (v % 64);
    }

    pub(crate) fn row_mut(&mut self, u: usize) -> &mut [u64] {
        &mut self.bits[u * self.stride..(u + 1) * self.stride]
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.stride..(u + 1) * self.stride]
    }

    /// Recomputes degree and edge counters after raw bit writes.
    pub(crate) fn finish(&mut self) {
        let mut total = 0u64;
        for v in 0..self.n {
            let d: u32 = self.row(v).iter().map(|w| w.count_ones()).sum();
            self.degrees[v] = d;
            total += d as u64;
        }
        self.m = total / 2;
    }

    /// Mirrors the strict upper triangle into the lower one, 64x64 tiles at a time.
    pub(crate) fn symmetrize_from_upper(&mut self) {
        let blocks = self.stride;
        let mut tile = [0u64; 64];
        for bi in 0..blocks {
            for bj in bi..blocks {
                // Tile rows bi*64.., columns bj*64..; its transpose lands at (bj, bi).
                for (r, slot) in tile.iter_mut().enumerate() {
                    let u = bi * 64 + r;
                    *slot = if u < self.n { self.bits[u * self.stride + bj] } else { 0 };
                }
                if bi == bj {
                    for (r, slot) in tile.iter_mut().enumerate() {
                        // keep only columns strictly above the diagonal
                        *slot &= if r == 63 { 0 } else { u64::MAX << (r + 1) };
                    }
                }
                transpose64(&mut tile);
                for (r, &word) in tile.iter().enumerate() {
                    let u = bj * 64 + r;
                    if u < self.n {
                        self.bits[u * self.stride + bi] |= word;
                    }
                }
            }
        }
    }
}

/// In-place transpose of a 64x64 bit matrix (row r, bit c) -> (row c, bit r).
fn transpose64(a: &mut [u64; 64]) {
    let mut j = 32;
    let mut mask: u64 = 0x0000_0000_FFFF_FFFF;
    while j != 0 {
        let mut k = 0;
        while k < 64 {
            let t = ((a[k] >> j) ^ a[k + j]) & mask;
            a[k] ^= t << j;
            a[k + j] ^= t;
            k = (k + j + 1) & !j;
        }
        j >>= 1;
        mask ^= mask << j;
    }
}

impl Adjacency for AdjacencyMatrix {
    fn n(&self) -> usize {
        self.n
    }

    fn m(&self) -> u64 {
        self.m
    }

    fn degree(&self, v: usize) -> usize {
        self.degrees[v] as usize
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    fn neighbors_in(&self, v: usize, lo: usize, hi: usize, out: &mut Vec<u32>) {
        let row = self.row(v);
        let mut pos = lo;
        while pos < hi {
            let word_idx = pos / 64;
            let mut word = row[word_idx] >> (pos % 64);
            let span = (64 - pos % 64).min(hi - pos);
            if span < 64 {
                word &= (1u64 << span) - 1;
            }
            while word != 0 {
                out.push((pos + word.trailing_zeros() as usize) as u32);
                word &= word - 1;
            }
            pos += span;
        }
    }

    fn trace_mask(&self, v: usize, lo: usize, hi: usize) -> u64 {
        debug_assert!(hi - lo <= 64);
        let len = hi - lo;
        if len == 0 {
            return 0;
        }
        let row = self.row(v);
        let (w, off) = (lo / 64, lo % 64);
        let mut word = row[w] >> off;
        if off != 0 && off + len > 64 {
            word |= row[w + 1] << (64 - off);
        }
        if len < 64 {
            word &= (1u64 << len) - 1;
        }
        word
    }
}

impl From<&AdjacencyMatrix> for Graph {
    fn from(mat: &AdjacencyMatrix) -> Graph {
        let mut offsets = Vec::with_capacity(mat.n + 1);
        offsets.push(0);
        let mut neighbors = Vec::with_capacity(2 * mat.m as usize);
        for v in 0..mat.n {
            mat.neighbors_in(v, 0, mat.n, &mut neighbors);
            offsets.push(neighbors.len());
        }
        Graph { n: mat.n, offsets, neighbors }
    }
}

/// Directed graph without self-loops, stored as sorted out-adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    offsets: Vec<usize>,
    successors: Vec<u32>,
}

impl Digraph {
    pub fn from_arcs(n: usize, arcs: &[(u32, u32)]) -> Result<Self> {
        let mut sorted = arcs.to_vec();
        for &(u, v) in &sorted {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x as u64, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &sorted {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let successors = sorted.iter().map(|&(_, v)| v).collect();
        Ok(Self { n, offsets, successors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> u64 {
        self.successors.len() as u64
    }

    pub fn successors(&self, v: usize) -> &[u32] {
        &self.successors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.successors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n).flat_map(move |u| self.successors(u).iter().map(move |&v| (u as u32, v)))
    }

    pub(crate) fn successors_in(&self, v: usize, lo: usize, hi: usize) -> &[u32] {
        let adj = self.successors(v);
        let start = adj.partition_point(|&u| (u as usize) < lo);
        let end = adj.partition_point(|&u| (u as usize) < hi);
        &adj[start..end]
    }
}

/// d-uniform hypergraph; edges are sorted d-sets kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    d: usize,
    flat: Vec<u32>,
}

impl Hypergraph {
    pub fn empty(n: usize, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(GraphError::BadUniformity(d));
        }
        Ok(Self { n, d, flat: Vec::new() })
    }

    /// Validates and canonicalizes: each edge is sorted, edges are ordered.
    pub fn from_edges(n: usize, d: usize, edges: &[Vec<u32>]) -> Result<Self> {
        if d < 2 {
            return Err(GraphError::BadUniformity(d));
        }
        let mut sorted: Vec<Vec<u32>> = Vec::with_capacity(edges.len());
        for (index, e) in edges.iter().enumerate() {
            let mut e = e.clone();
            e.sort_unstable();
            e.dedup();
            if e.len() != d || edges[index].len() != d {
                return Err(GraphError::BadHyperedge { index, found: e.len(), expected: d });
            }
            if let Some(&x) = e.iter().find(|&&x| x as usize >= n) {
                return Err(GraphError::VertexOutOfRange { vertex: x as u64, n });
            }
            sorted.push(e);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateHyperedge(w[0].clone()));
        }
        Ok(Self { n, d, flat: sorted.concat() })
    }

    /// `flat` must hold sorted, distinct, lexicographically ordered d-sets.
    pub(crate) fn from_sorted_flat(n: usize, d: usize, flat: Vec<u32>) -> Self {
        debug_assert_eq!(flat.len() % d, 0);
        Self { n, d, flat }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edge_count(&self) -> usize {
        self.flat.len() / self.d
    }

    pub fn edges(&self) -> std::slice::ChunksExact<'_, u32> {
        self.flat.chunks_exact(self.d)
    }

    pub fn contains(&self, edge: &[u32]) -> bool {
        let d = self.d;
        let (mut lo, mut hi) = (0, self.edge_count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.flat[mid * d..(mid + 1) * d].cmp(edge) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// A 2-uniform hypergraph as a graph.
    pub fn to_graph(&self) -> Option<Graph> {
        (self.d == 2).then(|| {
            let edges: Vec<(u32, u32)> = self.edges().map(|e| (e[0], e[1])).collect();
            Graph::from_sorted_unique(self.n, &edges)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (2, 1)]).unwrap()
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(5, &[(3, 1), (0, 4), (1, 0), (4, 3)]).unwrap();
        assert_eq!(g.m(), 4);
        for v in 0..5 {
            let adj = g.neighbors(v);
            assert!(adj.windows(2).all(|w| w[0] < w[1]));
            for &u in adj {
                assert!(g.has_edge(u as usize, v));
            }
        }
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 4), (1, 3), (3, 4)]);
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn density_examples() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(edge_density(&k4).unwrap(), Ratio::from_integer(1));
        assert_eq!(edge_density(&Graph::empty(10)).unwrap(), Ratio::from_integer(0));
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(edge_density(&c5).unwrap(), Ratio::new(1, 2));
        assert_eq!(edge_density(&Graph::empty(1)), Err(GraphError::Degenerate(1)));
    }

    #[test]
    fn matrix_and_lists_agree() {
        let g = path3();
        let mat = g.to_matrix();
        assert_eq!(mat.m(), 2);
        for u in 0..3 {
            assert_eq!(mat.degree(u), g.degree(u));
            for v in 0..3 {
                assert_eq!(mat.has_edge(u, v), g.has_edge(u, v));
            }
        }
        assert_eq!(Graph::from(&mat), g);
        assert_eq!(mat.trace_mask(1, 0, 3), 0b101);
        assert_eq!(g.trace_mask(1, 0, 3), 0b101);
    }

    #[test]
    fn trace_mask_crosses_word_boundary() {
        let n = 200;
        let edges: Vec<(u32, u32)> = (1..n as u32).filter(|v| v % 3 == 0).map(|v| (0, v)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let mat = g.to_matrix();
        for (lo, hi) in [(0, 64), (30, 94), (60, 124), (136, 200), (63, 64)] {
            assert_eq!(mat.trace_mask(0, lo, hi), g.trace_mask(0, lo, hi), "{lo}..{hi}");
            let (mut a, mut b) = (Vec::new(), Vec::new());
            mat.neighbors_in(0, lo, hi, &mut a);
            g.neighbors_in(0, lo, hi, &mut b);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn symmetrize_mirrors_upper_triangle() {
        let n = 150;
        let mut mat = AdjacencyMatrix::empty(n);
        let mut expected = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if (u * 7 + v * 13) % 5 == 0 {
                    mat.set(u, v);
                    expected.push((u as u32, v as u32));
                }
            }
        }
        mat.symmetrize_from_upper();
        mat.finish();
        let g = Graph::from(&mat);
        assert_eq!(g.edges().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn hypergraph_validation() {
        let h = Hypergraph::from_edges(4, 3, &[vec![2, 1, 0], vec![0, 1, 3]]).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![&[0, 1, 2][..], &[0, 1, 3][..]]);
        assert!(h.contains(&[0, 1, 3]) && !h.contains(&[1, 2, 3]));
        assert!(matches!(
            Hypergraph::from_edges(4, 3, &[vec![0, 0, 1]]),
            Err(GraphError::BadHyperedge { .. })
        ));
        assert!(matches!(
            Hypergraph::from_edges(4, 3, &[vec![0, 1, 2], vec![2, 0, 1]]),
            Err(GraphError::DuplicateHyperedge(_))
        ));
        assert_eq!(Hypergraph::empty(3, 1), Err(GraphError::BadUniformity(1)));
    }

    #[test]
    fn digraph_rejects_loops() {
        assert_eq!(Digraph::from_arcs(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        let g = Digraph::from_arcs(3, &[(0, 1), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.arc_count(), 3);
        assert!(g.has_arc(1, 0) && !g.has_arc(0, 2));
    }
}
