//! Density-aware partitioning by entropy slicing.
//!
//! Each vertex's trace on a part is cut into consecutive windows whose
//! `C(length, neighbors)` stays below a threshold `T`, so every window carries
//! roughly `lg T` bits. Vertices are then grouped by `(window, trace in the
//! window)`, giving one biclique per group. Sparse and very dense graphs get
//! long windows, which is where the savings over fixed-size parts come from.

use std::ops::Range;

use rustc_hash::FxHashMap;

use crate::combinatorics::binary_entropy;
use crate::ep::{partition_ep, Layout, PartitionParams};
use crate::graph::{edge_density, Adjacency};
use crate::par::{map_chunks, Execution};
use crate::partition::BicliquePartition;
use crate::tournament::Tournament;

/// Slicing threshold `T = n / divisor`, compared exactly as `C·divisor < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub n: u128,
    pub divisor: u128,
}

impl Threshold {
    #[inline]
    fn exceeded_by(&self, binomial: u128) -> bool {
        binomial.saturating_mul(self.divisor) >= self.n
    }

    pub fn value(&self) -> f64 {
        self.n as f64 / self.divisor as f64
    }
}

/// `max_len[y]`: the largest window length `x ≤ cap` with `C(x, y) < T`, or
/// `-1` when there is none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceTable {
    pub threshold: Threshold,
    pub cap: usize,
    pub max_len: Vec<i64>,
    suffix_max: Vec<i64>,
}

impl SliceTable {
    /// Table for weights `0..=cap`, threshold `n / divisor`.
    pub fn new(cap: usize, threshold: Threshold) -> Self {
        let mut max_len = Vec::with_capacity(cap + 1);
        for y in 0..=cap as u64 {
            // C(x, y) = 0 < T for x < y; walk x upward from y.
            let mut x = y;
            let mut c: u128 = 1;
            if threshold.exceeded_by(c) {
                max_len.push(y as i64 - 1);
                continue;
            }
            while x < cap as u64 {
                // C(x+1, y) = C(x, y)·(x+1)/(x+1-y)
                let next = c.checked_mul((x + 1) as u128).map_or(u128::MAX, |p| p / (x + 1 - y) as u128);
                if threshold.exceeded_by(next) {
                    break;
                }
                c = next;
                x += 1;
            }
            max_len.push(x as i64);
        }
        let mut suffix_max = max_len.clone();
        for y in (0..cap).rev() {
            suffix_max[y] = suffix_max[y].max(suffix_max[y + 1]);
        }
        Self { threshold, cap, max_len, suffix_max }
    }

    /// Paper-scale table: `T = n / r⁴`, weights up to `r`.
    pub fn for_part_size(n: usize, r: usize) -> Self {
        let r4 = (r as u128).saturating_pow(4);
        Self::new(r, Threshold { n: n as u128, divisor: r4.max(1) })
    }
}

/// Cut indices `0 = c_0 < c_1 < … < c_l = len` of the trace `positions`
/// (sorted 0-based offsets of neighbors inside the part). Window `j` covers
/// offsets `c_{j-1}..c_j`; each `c_j` is the largest end whose window stays
/// below the threshold, or `c_{j-1} + 1` when no end does.
pub fn slice_cuts(positions: &[u32], len: usize, table: &SliceTable) -> Vec<usize> {
    let mut cuts = vec![0];
    let mut first = 0;
    let mut c = 0;
    while c < len {
        let rest = &positions[first..];
        let mut best = None;
        for k in 0..=rest.len() {
            // ends x (window = c..x) containing exactly k neighbors
            let lo = if k == 0 { c + 1 } else { rest[k - 1] as usize + 1 };
            let hi = if k < rest.len() { rest[k] as usize } else { len };
            if k >= table.suffix_max.len() || (c as i64 + table.suffix_max[k]) < lo as i64 {
                break;
            }
            if lo > hi {
                continue;
            }
            let reach = c as i64 + table.max_len[k];
            let end = (hi as i64).min(reach);
            if end >= lo as i64 {
                best = Some(end as usize);
            }
        }
        c = best.unwrap_or(c + 1);
        first += positions[first..].partition_point(|&p| (p as usize) < c);
        cuts.push(c);
    }
    cuts
}

/// How the part size and slicing threshold are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum DensityPolicy {
    /// `r = ⌊lg²n / h₂(γ)⌋`, `T = n / r⁴`. Below astronomically large `n`
    /// this makes `T < 1`, so every window has length one.
    Asymptotic,
    /// Parameters tuned for sizes that fit in memory: `r = ⌊lg n - lg lg n⌋`
    /// and `T = 2√n`, so windows carry about `lg n / 2` bits and traces
    /// still repeat across the `n/2` vertices bucketed per part.
    #[default]
    DeskScale,
    Explicit { part_size: usize, divisor: u64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DensityParams {
    pub policy: DensityPolicy,
    pub execution: Execution,
}

/// Resolved parameters for one graph.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityPlan {
    pub gamma: f64,
    pub entropy: f64,
    pub layout: Layout,
    pub threshold: Threshold,
    /// The part size came out below 2; the plain partitioner is used instead.
    pub fallback: bool,
}

impl DensityParams {
    pub fn plan<G: Adjacency + ?Sized>(&self, g: &G) -> DensityPlan {
        let n = g.n();
        let gamma = edge_density(g).map_or(0.0, |d| *d.numer() as f64 / *d.denom() as f64);
        let entropy = binary_entropy(gamma.clamp(0.0, 1.0)).unwrap_or(0.0);
        let lg = (n.max(1) as f64).log2();
        let natural = || {
            if entropy == 0.0 {
                n
            } else {
                (lg * lg / entropy).floor().min(n as f64) as usize
            }
        };
        let (r, divisor) = match self.policy {
            // complete graph: one part, every edge on its own
            _ if entropy == 0.0 => (n, 1),
            DensityPolicy::Asymptotic => {
                let r = natural();
                (r, (r as u128).saturating_pow(4))
            }
            DensityPolicy::DeskScale => {
                let r = if n < 4 { 1 } else { (lg - lg.log2()).floor() as usize };
                (r.min(n), ((n as f64).sqrt() / 2.0).ceil() as u128)
            }
            DensityPolicy::Explicit { part_size, divisor } => (part_size.min(n), divisor as u128),
        };
        DensityPlan {
            gamma,
            entropy,
            layout: Layout::new(n, r.max(1)),
            threshold: Threshold { n: n as u128, divisor: divisor.max(1) },
            fallback: r < 2,
        }
    }
}

pub fn partition_density<G: Adjacency + ?Sized>(g: &G, params: &DensityParams) -> BicliquePartition {
    let n = g.n();
    if g.m() == 0 {
        return BicliquePartition::new(n);
    }
    let plan = params.plan(g);
    if plan.fallback {
        return partition_ep(g, &PartitionParams { execution: params.execution, ..Default::default() });
    }
    let layout = plan.layout;
    let table = SliceTable::new(layout.r, plan.threshold);
    let tour = Tournament::almost_regular(layout.parts).expect("at least one part");
    let chunks = map_chunks(params.execution, layout.parts, |range| {
        let mut out = BicliquePartition::new(n);
        let mut scratch = Scratch::default();
        for i in range {
            scratch.part(g, &layout, &tour, &table, i, &mut out);
        }
        out
    });
    let mut out = BicliquePartition::new(n);
    for chunk in chunks {
        out.append(chunk);
    }
    out
}

#[derive(Default)]
struct Scratch {
    flat: Vec<u32>,
    spans: Vec<(u32, usize, usize)>,
    offsets: Vec<u32>,
}

impl Scratch {
    fn part<G: Adjacency + ?Sized>(
        &mut self,
        g: &G,
        layout: &Layout,
        tour: &Tournament,
        table: &SliceTable,
        i: usize,
        out: &mut BicliquePartition,
    ) {
        let part: Range<usize> = layout.part(i);
        let len = part.len();
        self.flat.clear();
        self.spans.clear();
        for j in (0..layout.parts).filter(|&j| tour.beats(j, i)) {
            for v in layout.part(j) {
                let start = self.flat.len();
                g.neighbors_in(v, part.start, part.end, &mut self.flat);
                if self.flat.len() > start {
                    self.spans.push((v as u32, start, self.flat.len()));
                }
            }
        }
        let flat = &self.flat;
        let mut buckets: FxHashMap<(u32, u32, &[u32]), Vec<u32>> = FxHashMap::default();
        for &(v, start, end) in &self.spans {
            let trace = &flat[start..end];
            self.offsets.clear();
            self.offsets.extend(trace.iter().map(|&u| u - part.start as u32));
            let cuts = slice_cuts(&self.offsets, len, table);
            let mut k = 0;
            for w in cuts.windows(2) {
                let first = k;
                while k < trace.len() && ((trace[k] as usize) - part.start) < w[1] {
                    k += 1;
                }
                if k > first {
                    buckets.entry((w[0] as u32, w[1] as u32, &trace[first..k])).or_default().push(v);
                }
            }
        }
        let mut keys: Vec<(u32, u32, &[u32])> = buckets.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            out.push(key.2, &buckets[&key]);
        }
        let mut buf = Vec::new();
        for u in part.clone() {
            buf.clear();
            g.neighbors_in(u, u + 1, part.end, &mut buf);
            for &v in &buf {
                out.push(&[u as u32], &[v]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial_saturating;
    use crate::graph::{gen_gnp, Graph};
    use crate::partition::verify_partition;
    use crate::rng::SeedStream;
    use rand::Rng;

    fn reference_cuts(positions: &[u32], len: usize, table: &SliceTable) -> Vec<usize> {
        let mut cuts = vec![0];
        let mut c = 0;
        while c < len {
            let mut best = None;
            for x in c + 1..=len {
                let k = positions.iter().filter(|&&p| (p as usize) >= c && (p as usize) < x).count();
                if !table.threshold.exceeded_by(binomial_saturating((x - c) as u64, k as u64)) {
                    best = Some(x);
                }
            }
            c = best.unwrap_or(c + 1);
            cuts.push(c);
        }
        cuts
    }

    #[test]
    fn table_r1_is_identity_minus_one() {
        let t = SliceTable::new(1 << 20, Threshold { n: 1 << 20, divisor: 1 });
        assert_eq!(t.max_len[1], (1 << 20) - 1);
        assert_eq!(t.max_len[0], 1 << 20);
    }

    #[test]
    fn table_threshold_property() {
        for (n, r, divisor) in [(1u128 << 20, 40usize, 1u128), (5000, 60, 3), (100, 30, 1), (1 << 14, 200, 8)] {
            let threshold = Threshold { n, divisor };
            let t = SliceTable::new(r, threshold);
            for y in 0..=r {
                let x = t.max_len[y];
                if x >= 0 {
                    assert!(!threshold.exceeded_by(binomial_saturating(x as u64, y as u64)));
                }
                if (x as usize) < r {
                    assert!(threshold.exceeded_by(binomial_saturating((x + 1) as u64, y as u64)));
                }
            }
        }
    }

    #[test]
    fn max_len_is_not_monotone_in_weight() {
        // T = 100: C(8,5) = 56 < 100 ≤ C(9,5) = 126, C(9,6) = 84 < 100 ≤ C(10,6) = 210
        let t = SliceTable::new(40, Threshold { n: 100, divisor: 1 });
        assert_eq!((t.max_len[5], t.max_len[6]), (8, 9));
    }

    #[test]
    fn slicing_edge_cases() {
        let table = SliceTable::new(16, Threshold { n: 1000, divisor: 1 });
        assert_eq!(slice_cuts(&[], 16, &table), vec![0, 16]);
        let all: Vec<u32> = (0..16).collect();
        assert_eq!(slice_cuts(&all, 16, &table), vec![0, 16]);
        let tiny = SliceTable::new(8, Threshold { n: 1, divisor: 4 });
        assert_eq!(slice_cuts(&[0, 3], 4, &tiny), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn slicer_matches_quadratic_reference() {
        let mut rng = SeedStream::new(99).rng();
        for _ in 0..10_000 {
            let len = rng.random_range(1..=48usize);
            let p: f64 = rng.random();
            let positions: Vec<u32> = (0..len as u32).filter(|_| rng.random::<f64>() < p).collect();
            let threshold = Threshold { n: rng.random_range(1..5000u128), divisor: rng.random_range(1..4u128) };
            let table = SliceTable::new(len, threshold);
            let cuts = slice_cuts(&positions, len, &table);
            assert_eq!(cuts, reference_cuts(&positions, len, &table), "{positions:?} {len} {threshold:?}");
            assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn degenerate_graphs() {
        let params = DensityParams::default();
        assert!(partition_density(&Graph::empty(30), &params).is_empty());
        let edges: Vec<(u32, u32)> = (0..12).flat_map(|u| (u + 1..12).map(move |v| (u, v))).collect();
        let k12 = Graph::from_edges(12, &edges).unwrap();
        let p = partition_density(&k12, &params);
        assert_eq!(params.plan(&k12).layout.parts, 1);
        assert_eq!(p.len(), 66);
        assert_eq!(verify_partition(&k12, &p), Ok(()));
    }

    #[test]
    fn random_graphs_all_policies() {
        for (n, p) in [(200, 0.01), (300, 0.1), (256, 0.5), (300, 0.9), (200, 0.99)] {
            let g = gen_gnp(n, p, 17).unwrap();
            for policy in [
                DensityPolicy::Asymptotic,
                DensityPolicy::DeskScale,
                DensityPolicy::Explicit { part_size: 37, divisor: 2 },
            ] {
                let params = DensityParams { policy, ..Default::default() };
                let part = partition_density(&g, &params);
                assert_eq!(verify_partition(&g, &part), Ok(()), "n={n} p={p} {policy:?}");
                let seq = DensityParams { execution: Execution::Sequential, ..params };
                assert_eq!(part, partition_density(&g, &seq));
            }
        }
    }
}
