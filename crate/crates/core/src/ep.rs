//! Part-trace biclique partitioning.
//!
//! Vertices are split into consecutive parts of size `r`. For each part `P`,
//! every vertex `v` in a part that beats `P` in an almost-regular tournament
//! is bucketed by its trace `N(v) ∩ P`; each bucket `A(S)` yields the
//! biclique `(S, A(S))`. Edges inside a part are emitted one by one.

use std::ops::Range;

use rustc_hash::FxHashMap;

use crate::combinatorics::integer_root;
use crate::graph::{Adjacency, Digraph};
use crate::par::{map_chunks, Execution};
use crate::partition::BicliquePartition;
use crate::tournament::Tournament;

/// Largest part size with an array of `2^r` mask buckets.
pub const MAX_PART_SIZE: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartitionParams {
    /// Overrides the default `⌊lg n - 2 lg lg n⌋`; clamped to `1..=MAX_PART_SIZE`.
    pub part_size: Option<usize>,
    /// Bounded-shattering exponent `d`: uses `r = ⌊n^(1/(d+1))⌋` and hashed traces.
    pub shattering: Option<u32>,
    pub execution: Execution,
}

/// `⌊lg n - 2 lg lg n⌋` floored at 1 and clamped to `MAX_PART_SIZE`, or
/// `None` for `n ≤ 16`, where one part holds everything and every edge is its
/// own biclique.
pub fn default_part_size(n: usize) -> Option<usize> {
    if n <= 16 {
        return None;
    }
    let lg = (n as f64).log2();
    let r = (lg - 2.0 * lg.log2()).floor().max(1.0);
    Some((r as usize).min(MAX_PART_SIZE))
}

pub fn shattering_part_size(n: usize, d: u32) -> usize {
    (integer_root(n as u64, d.saturating_add(1)) as usize).clamp(1, n.max(1))
}

/// How `0..n` is cut into consecutive parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    pub r: usize,
    pub parts: usize,
}

impl Layout {
    pub fn new(n: usize, r: usize) -> Self {
        let r = r.clamp(1, n.max(1));
        Self { n, r, parts: n.div_ceil(r) }
    }

    /// One part holding every vertex.
    pub fn single(n: usize) -> Self {
        Self::new(n, n)
    }

    pub fn for_params(n: usize, params: &PartitionParams) -> Self {
        if let Some(d) = params.shattering {
            return Self::new(n, shattering_part_size(n, d));
        }
        match params.part_size {
            Some(r) => Self::new(n, r.clamp(1, MAX_PART_SIZE)),
            None => default_part_size(n).map_or(Self::single(n), |r| Self::new(n, r)),
        }
    }

    pub fn part(&self, i: usize) -> Range<usize> {
        i * self.r..((i + 1) * self.r).min(self.n)
    }

    #[inline]
    pub fn part_of(&self, v: usize) -> usize {
        v / self.r
    }

    /// `(r - 1) + 2^r + ⌈parts/2⌉ + 1`, saturating.
    pub fn load_bound(&self) -> u64 {
        let buckets = if self.r >= 64 { u64::MAX } else { 1u64 << self.r };
        (self.r as u64 - 1)
            .saturating_add(buckets)
            .saturating_add(self.parts.div_ceil(2) as u64)
            .saturating_add(1)
    }

    /// `parts + 2^r`, saturating: the per-vertex bound for directed partitions.
    pub fn directed_load_bound(&self) -> u64 {
        let buckets = if self.r >= 64 { u64::MAX } else { 1u64 << self.r };
        (self.parts as u64).saturating_add(buckets)
    }

    /// Upper bound on the number of bicliques: `parts · (2^r + r²)`, saturating.
    pub fn count_bound(&self) -> u64 {
        let buckets = if self.r >= 64 { u64::MAX } else { 1u64 << self.r };
        buckets.saturating_add((self.r * self.r) as u64).saturating_mul(self.parts as u64)
    }
}

pub fn partition_ep<G: Adjacency + ?Sized>(g: &G, params: &PartitionParams) -> BicliquePartition {
    if params.shattering.is_some() {
        return shatter(g, Layout::for_params(g.n(), params), params.execution).partition;
    }
    let layout = Layout::for_params(g.n(), params);
    if g.m() == 0 {
        return BicliquePartition::new(g.n());
    }
    if layout.parts == 1 {
        let mut out = BicliquePartition::new(g.n());
        emit_within(g, 0..g.n(), &mut out);
        return out;
    }
    let tour = Tournament::almost_regular(layout.parts).expect("at least one part");
    merge(
        g.n(),
        map_chunks(params.execution, layout.parts, |range| {
            let mut out = BicliquePartition::new(g.n());
            let mut scratch = MaskBuckets::new(layout.r);
            let mut pending: Vec<Vec<(u32, u32)>> = Vec::new();
            let mut masks = [0u64; BLOCK_PARTS];
            let mut buf = Vec::new();
            // Traces for a block of consecutive parts come from one scan of
            // each neighborhood rather than one lookup per (part, vertex).
            for first in range.clone().step_by(BLOCK_PARTS) {
                let block = first..(first + BLOCK_PARTS).min(range.end);
                pending.resize_with(block.len(), Vec::new);
                pending.iter_mut().for_each(Vec::clear);
                let (lo, hi) = (layout.part(block.start).start, layout.part(block.end - 1).end);
                for v in 0..g.n() {
                    buf.clear();
                    g.neighbors_in(v, lo, hi, &mut buf);
                    if buf.is_empty() {
                        continue;
                    }
                    for &u in &buf {
                        let i = layout.part_of(u as usize);
                        masks[i - first] |= 1 << (u as usize - i * layout.r);
                    }
                    let pv = layout.part_of(v);
                    for i in block.clone() {
                        let mask = std::mem::take(&mut masks[i - first]);
                        if mask != 0 && tour.beats(pv, i) {
                            pending[i - first].push((mask as u32, v as u32));
                        }
                    }
                }
                for i in block {
                    std::mem::swap(&mut scratch.items, &mut pending[i - first]);
                    scratch.emit(layout.part(i).start, |s, a| out.push(s, a));
                    std::mem::swap(&mut scratch.items, &mut pending[i - first]);
                    emit_within(g, layout.part(i), &mut out);
                }
            }
            out
        }),
    )
}

/// Parts whose traces are gathered in one sweep over the vertices.
const BLOCK_PARTS: usize = 64;

fn merge(n: usize, chunks: Vec<BicliquePartition>) -> BicliquePartition {
    let mut out = BicliquePartition::new(n);
    for chunk in chunks {
        out.append(chunk);
    }
    out
}

fn emit_within<G: Adjacency + ?Sized>(g: &G, part: Range<usize>, out: &mut BicliquePartition) {
    let mut buf = Vec::new();
    for u in part.clone() {
        buf.clear();
        g.neighbors_in(u, u + 1, part.end, &mut buf);
        for &v in &buf {
            out.push(&[u as u32], &[v]);
        }
    }
}

/// Counting-sort buckets of vertices keyed by a trace mask, reused across parts.
struct MaskBuckets {
    counts: Vec<u32>,
    items: Vec<(u32, u32)>,
    sorted: Vec<u32>,
    set: Vec<u32>,
}

impl MaskBuckets {
    fn new(r: usize) -> Self {
        Self { counts: vec![0; (1 << r) + 1], items: Vec::new(), sorted: Vec::new(), set: Vec::new() }
    }

    fn clear(&mut self) {
        self.items.clear();
    }

    fn push(&mut self, mask: u64, v: u32) {
        self.items.push((mask as u32, v));
    }

    /// Calls `f(S, A(S))` for every nonempty bucket in ascending mask order;
    /// `A(S)` is ascending because vertices were pushed in ascending order.
    fn emit(&mut self, base: usize, mut f: impl FnMut(&[u32], &[u32])) {
        if self.items.is_empty() {
            return;
        }
        let max = self.items.iter().map(|&(m, _)| m).max().unwrap() as usize;
        let counts = &mut self.counts[..max + 2];
        counts.fill(0);
        for &(m, _) in &self.items {
            counts[m as usize + 1] += 1;
        }
        for k in 1..counts.len() {
            counts[k] += counts[k - 1];
        }
        self.sorted.resize(self.items.len(), 0);
        let mut fill = counts.to_vec();
        for &(m, v) in &self.items {
            self.sorted[fill[m as usize] as usize] = v;
            fill[m as usize] += 1;
        }
        for mask in 1..=max {
            let (lo, hi) = (counts[mask] as usize, counts[mask + 1] as usize);
            if lo == hi {
                continue;
            }
            self.set.clear();
            let mut bits = mask;
            while bits != 0 {
                self.set.push((base + bits.trailing_zeros() as usize) as u32);
                bits &= bits - 1;
            }
            f(&self.set, &self.sorted[lo..hi]);
        }
    }
}

/// A bounded-shattering partition together with what its load bound needs.
#[derive(Clone, Debug)]
pub struct Shattered {
    pub partition: BicliquePartition,
    pub layout: Layout,
    /// Most distinct nonempty traces bucketed in any single part.
    pub max_distinct_traces: usize,
}

impl Shattered {
    /// `r + (distinct traces in the worst part) + ⌈n/r⌉`.
    pub fn load_bound(&self) -> u64 {
        (self.layout.r + self.max_distinct_traces + self.layout.parts) as u64
    }
}

/// Same construction with `r = ⌊n^(1/(d+1))⌋` and traces keyed by hashing.
pub fn partition_shattering<G: Adjacency + ?Sized>(g: &G, d: u32, execution: Execution) -> Shattered {
    shatter(g, Layout::new(g.n(), shattering_part_size(g.n(), d)), execution)
}

fn shatter<G: Adjacency + ?Sized>(g: &G, layout: Layout, execution: Execution) -> Shattered {
    let n = g.n();
    if g.m() == 0 {
        return Shattered { partition: BicliquePartition::new(n), layout, max_distinct_traces: 0 };
    }
    let tour = Tournament::almost_regular(layout.parts).expect("at least one part");
    let chunks = map_chunks(execution, layout.parts, |range| {
        let mut out = BicliquePartition::new(n);
        let mut worst = 0;
        let mut flat: Vec<u32> = Vec::new();
        let mut spans: Vec<(u32, usize, usize)> = Vec::new();
        for i in range {
            let part = layout.part(i);
            flat.clear();
            spans.clear();
            for j in (0..layout.parts).filter(|&j| tour.beats(j, i)) {
                for v in layout.part(j) {
                    let start = flat.len();
                    g.neighbors_in(v, part.start, part.end, &mut flat);
                    if flat.len() > start {
                        spans.push((v as u32, start, flat.len()));
                    }
                }
            }
            let mut buckets: FxHashMap<&[u32], Vec<u32>> = FxHashMap::default();
            for &(v, a, b) in &spans {
                buckets.entry(&flat[a..b]).or_default().push(v);
            }
            worst = worst.max(buckets.len());
            let mut keys: Vec<&[u32]> = buckets.keys().copied().collect();
            keys.sort_unstable();
            for key in keys {
                out.push(key, &buckets[key]);
            }
            emit_within(g, part, &mut out);
        }
        (out, worst)
    });
    let max_distinct_traces = chunks.iter().map(|c| c.1).max().unwrap_or(0);
    let partition = merge(n, chunks.into_iter().map(|c| c.0).collect());
    Shattered { partition, layout, max_distinct_traces }
}

/// Directed variant: every part is bucketed against all vertices by
/// out-trace, giving directed bicliques `A(S) -> S` (left side = tails).
pub fn partition_ep_directed(g: &Digraph, params: &PartitionParams) -> BicliquePartition {
    let n = g.n();
    let layout = Layout::for_params(n, &PartitionParams { shattering: None, ..*params });
    if g.arc_count() == 0 {
        return BicliquePartition::new(n);
    }
    if layout.parts == 1 {
        let mut out = BicliquePartition::new(n);
        for (u, v) in g.arcs() {
            out.push(&[u], &[v]);
        }
        return out;
    }
    merge(
        n,
        map_chunks(params.execution, layout.parts, |range| {
            let mut out = BicliquePartition::new(n);
            let mut scratch = MaskBuckets::new(layout.r);
            for i in range {
                let part = layout.part(i);
                scratch.clear();
                for v in 0..n {
                    let mask = g
                        .successors_in(v, part.start, part.end)
                        .iter()
                        .fold(0u64, |acc, &u| acc | 1 << (u as usize - part.start));
                    if mask != 0 {
                        scratch.push(mask, v as u32);
                    }
                }
                scratch.emit(part.start, |s, a| out.push(a, s));
            }
            out
        }),
    )
}
