//! Large balanced bicliques: the best member of a partition, or the
//! top-degree pigeonhole search over truncated neighbour traces.
//!
//! The search picks a small set `D` of high-degree vertices, gives every
//! other vertex with enough neighbours in `D` the trace of its first `s`
//! such neighbours, and returns the most common trace `A` together with all
//! vertices `B` sharing it. Every result is checked edge by edge against the
//! input graph before it is returned.

use rand::seq::index::sample;
use rand::Rng;

use crate::combinatorics::binary_entropy;
use crate::ep::{partition_ep, PartitionParams};
use crate::error::{GraphError, Result};
use crate::graph::Adjacency;
use crate::partition::BicliquePartition;
use crate::rng::SeedStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Partition,
    TopDegree,
    Sampled,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Partition => "partition",
            Method::TopDegree => "topdeg",
            Method::Sampled => "sampled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundBiclique {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    /// The method that actually produced `(a, b)`.
    pub method: Method,
    /// Set when the requested method gave up and a simpler one answered.
    pub fallback: bool,
}

impl FoundBiclique {
    pub fn t(&self) -> usize {
        self.a.len().min(self.b.len())
    }
}

/// How `ε`, `|D|` and the trace length are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum TopDegPolicy {
    /// `ε = 1/∛lg n` and the full size formula
    /// `r = ⌊(lg n − 2 lg lg n + lg h₂(γ) + lg γ) / h₂((1−ε)²γ)⌋`.
    /// The lower-order terms leave `r` tiny below astronomically large `n`.
    Asymptotic,
    /// Given `ε`, with only the leading term `r = ⌊lg n / h₂((1−ε)²γ)⌋`.
    Fixed(f64),
    /// Leading-term `r` for each `ε` in [`SWEEP_EPSILONS`] plus `1/∛lg n`;
    /// the largest verified `t` wins.
    #[default]
    Sweep,
}

pub const SWEEP_EPSILONS: [f64; 5] = [0.3, 0.2, 0.1, 0.05, 0.02];

/// Largest `|D|` considered; beyond this the traces are too long to repeat.
pub const MAX_TOP_SET: usize = 4096;

/// Concrete parameters for one pigeonhole pass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracePlan {
    pub epsilon: f64,
    /// `(1−ε)²γ`, the required fraction of `D` in a neighbourhood.
    pub fraction: f64,
    pub part_size: usize,
    pub trace_len: usize,
    /// At most this many traced vertices are collected, `⌈nγ/lg n⌉`.
    pub cap: usize,
}

fn gamma_of<G: Adjacency + ?Sized>(g: &G) -> f64 {
    let n = g.n() as f64;
    g.m() as f64 / (n * (n - 1.0) / 2.0)
}

pub fn asymptotic_epsilon(n: usize) -> f64 {
    1.0 / (n as f64).log2().cbrt()
}

impl TopDegPolicy {
    /// The passes this policy runs on an `n`-vertex graph of density
    /// `gamma`. Passes with `r < 2` or an empty trace are dropped.
    pub fn plans(&self, n: usize, gamma: f64) -> Vec<TracePlan> {
        let lg = (n as f64).log2();
        let cap = ((n as f64 * gamma) / lg).ceil().max(1.0) as usize;
        let plan = |epsilon: f64, full: bool| -> Option<TracePlan> {
            let epsilon = epsilon.clamp(1e-3, 0.999);
            let fraction = (1.0 - epsilon).powi(2) * gamma;
            if !(fraction > 0.0 && fraction < 1.0) {
                return None;
            }
            let h = binary_entropy(fraction).ok()?;
            let numerator = if full {
                let hg = binary_entropy(gamma).ok()?;
                lg - 2.0 * lg.log2() + hg.log2() + gamma.log2()
            } else {
                lg
            };
            let r = (numerator / h).floor();
            if !(r >= 2.0) {
                return None;
            }
            let part_size = (r as usize).min(MAX_TOP_SET).min(n - 1);
            let trace_len = (fraction * part_size as f64).floor() as usize;
            (part_size >= 2 && trace_len >= 1).then_some(TracePlan { epsilon, fraction, part_size, trace_len, cap })
        };
        match *self {
            TopDegPolicy::Asymptotic => plan(asymptotic_epsilon(n), true).into_iter().collect(),
            TopDegPolicy::Fixed(e) => plan(e, false).into_iter().collect(),
            TopDegPolicy::Sweep => std::iter::once(asymptotic_epsilon(n))
                .chain(SWEEP_EPSILONS)
                .filter_map(|e| plan(e, false))
                .collect(),
        }
    }
}

/// Checks that `a` and `b` are disjoint, nonempty and completely joined in `g`.
pub fn verify_biclique<G: Adjacency + ?Sized>(g: &G, a: &[u32], b: &[u32]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(GraphError::Internal("biclique side is empty".into()));
    }
    for &u in a {
        for &v in b {
            if !g.has_edge(u as usize, v as usize) {
                return Err(GraphError::Internal(format!("({u}, {v}) is not an edge")));
            }
        }
    }
    Ok(())
}

fn checked<G: Adjacency + ?Sized>(g: &G, found: FoundBiclique) -> Result<FoundBiclique> {
    verify_biclique(g, &found.a, &found.b)?;
    Ok(found)
}

/// The member of `p` with the largest smaller side. Since `Σ|L||R| = m` and
/// `Σ|L|+|R| = w`, that side has at least `m/w` vertices.
pub fn find_from_partition<G: Adjacency + ?Sized>(g: &G, p: &BicliquePartition) -> Result<FoundBiclique> {
    if g.m() == 0 {
        return Err(GraphError::NoEdges);
    }
    let best = p
        .iter()
        .enumerate()
        .max_by_key(|(i, b)| (b.left.len().min(b.right.len()), std::cmp::Reverse(*i)))
        .map(|(_, b)| b)
        .ok_or(GraphError::NoEdges)?;
    let found = FoundBiclique { a: best.left.to_vec(), b: best.right.to_vec(), method: Method::Partition, fallback: false };
    if (found.t() as u64) * p.weight() < g.m() {
        return Err(GraphError::Internal("partition member below m/w".into()));
    }
    checked(g, found)
}

/// The `r` highest-degree vertices, ties broken by smaller id, sorted by id.
pub fn top_degree_set<G: Adjacency + ?Sized>(g: &G, r: usize) -> Vec<u32> {
    let mut order: Vec<u32> = (0..g.n() as u32).collect();
    let key = |v: &u32| (std::cmp::Reverse(g.degree(*v as usize)), *v);
    if r < order.len() {
        order.select_nth_unstable_by_key(r, key);
        order.truncate(r);
    }
    order.sort_unstable();
    order
}

/// The pigeonhole pass for a fixed `D` (sorted by id). `None` when no vertex
/// qualifies.
pub fn trace_pigeonhole<G: Adjacency + ?Sized>(g: &G, top: &[u32], plan: &TracePlan) -> Option<(Vec<u32>, Vec<u32>)> {
    let s = plan.trace_len;
    let need = plan.fraction * top.len() as f64;
    let mut in_top = vec![false; g.n()];
    for &u in top {
        in_top[u as usize] = true;
    }
    let mut traces: Vec<u32> = Vec::new();
    let mut owners: Vec<u32> = Vec::new();
    let mut hits: Vec<u32> = Vec::with_capacity(top.len());
    for v in 0..g.n() {
        if owners.len() >= plan.cap {
            break;
        }
        if in_top[v] {
            continue;
        }
        hits.clear();
        hits.extend(top.iter().copied().filter(|&u| g.has_edge(v, u as usize)));
        if (hits.len() as f64) < need || hits.len() < s {
            continue;
        }
        traces.extend_from_slice(&hits[..s]);
        owners.push(v as u32);
    }
    if owners.is_empty() {
        return None;
    }
    let trace = |i: u32| &traces[i as usize * s..(i as usize + 1) * s];
    let mut idx: Vec<u32> = (0..owners.len() as u32).collect();
    idx.sort_unstable_by(|&x, &y| trace(x).cmp(trace(y)).then(owners[x as usize].cmp(&owners[y as usize])));
    let (mut best_start, mut best_len) = (0, 0);
    let mut start = 0;
    for i in 1..=idx.len() {
        if i == idx.len() || trace(idx[i]) != trace(idx[start]) {
            if i - start > best_len {
                (best_start, best_len) = (start, i - start);
            }
            start = i;
        }
    }
    let a = trace(idx[best_start]).to_vec();
    let b = idx[best_start..best_start + best_len].iter().map(|&i| owners[i as usize]).collect();
    Some((a, b))
}

fn best_of(candidates: impl IntoIterator<Item = FoundBiclique>) -> Option<FoundBiclique> {
    candidates.into_iter().fold(None, |best: Option<FoundBiclique>, c| match best {
        Some(b) if b.t() >= c.t() => Some(b),
        _ => Some(c),
    })
}

fn fallback_partition<G: Adjacency + ?Sized>(g: &G) -> Result<FoundBiclique> {
    let p = partition_ep(g, &PartitionParams::default());
    let mut found = find_from_partition(g, &p)?;
    found.fallback = true;
    Ok(found)
}

fn preflight<G: Adjacency + ?Sized>(g: &G) -> Result<()> {
    if g.m() == 0 { Err(GraphError::NoEdges) } else { Ok(()) }
}

/// Top-degree `D`, then the trace pigeonhole. Falls back to the best member
/// of an ep partition when no pass of the policy applies.
pub fn find_topdeg<G: Adjacency + ?Sized>(g: &G, policy: TopDegPolicy) -> Result<FoundBiclique> {
    preflight(g)?;
    let plans = policy.plans(g.n(), gamma_of(g));
    let found = best_of(plans.iter().filter_map(|plan| {
        let top = top_degree_set(g, plan.part_size);
        let (a, b) = trace_pigeonhole(g, &top, plan)?;
        Some(FoundBiclique { a, b, method: Method::TopDegree, fallback: false })
    }));
    match found {
        Some(f) => checked(g, f),
        None => fallback_partition(g),
    }
}

/// Builds `D` by rejection sampling on estimated degrees, spending at most
/// `⌈n^0.4⌉` draws. `None` when the budget runs out first.
pub fn sample_top_set<G: Adjacency + ?Sized, R: Rng>(g: &G, plan: &TracePlan, rng: &mut R) -> Option<Vec<u32>> {
    let n = g.n();
    let gamma = gamma_of(g);
    let budget = (n as f64).powf(0.4).ceil() as usize;
    let probe = ((n as f64).sqrt().ceil() as usize).min(n - 1);
    let bar = (1.0 - plan.epsilon) * gamma * (n - 1) as f64;
    let mut top: Vec<u32> = Vec::with_capacity(plan.part_size);
    for _ in 0..budget {
        let v = rng.random_range(0..n);
        if top.contains(&(v as u32)) {
            continue;
        }
        let hits = sample(rng, n - 1, probe)
            .into_iter()
            .filter(|&i| g.has_edge(v, if i >= v { i + 1 } else { i }))
            .count();
        let estimate = (n - 1) as f64 / probe as f64 * hits as f64;
        if estimate >= bar {
            top.push(v as u32);
            if top.len() == plan.part_size {
                top.sort_unstable();
                return Some(top);
            }
        }
    }
    None
}

/// Like [`find_topdeg`] but `D` comes from degree sampling. A pass whose
/// sampling budget runs out uses the top-degree `D` instead.
pub fn find_sampled<G: Adjacency + ?Sized>(g: &G, policy: TopDegPolicy, seed: u64) -> Result<FoundBiclique> {
    preflight(g)?;
    let seeds = SeedStream::new(seed);
    let plans = policy.plans(g.n(), gamma_of(g));
    let found = best_of(plans.iter().enumerate().filter_map(|(i, plan)| {
        let mut rng = seeds.stream(i as u64);
        let (top, method, fallback) = match sample_top_set(g, plan, &mut rng) {
            Some(top) => (top, Method::Sampled, false),
            None => (top_degree_set(g, plan.part_size), Method::TopDegree, true),
        };
        let (a, b) = trace_pigeonhole(g, &top, plan)?;
        Some(FoundBiclique { a, b, method, fallback })
    }));
    match found {
        Some(f) => checked(g, f),
        None => fallback_partition(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_gnp, Graph};

    fn complete(n: u32) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    #[test]
    fn partition_member_k23() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let mut p = BicliquePartition::new(5);
        p.push(&[0, 1], &[2, 3, 4]);
        let f = find_from_partition(&g, &p).unwrap();
        assert_eq!(f.t(), 2);
        assert!(f.t() as u64 * p.weight() >= g.m());
    }

    #[test]
    fn single_edge_and_empty() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut p = BicliquePartition::new(2);
        p.push(&[0], &[1]);
        assert_eq!(find_from_partition(&g, &p).unwrap().t(), 1);
        let f = find_topdeg(&g, TopDegPolicy::Sweep).unwrap();
        assert_eq!(f.t(), 1);
        let e = Graph::empty(4);
        assert_eq!(find_from_partition(&e, &BicliquePartition::new(4)), Err(GraphError::NoEdges));
        assert_eq!(find_topdeg(&e, TopDegPolicy::Sweep), Err(GraphError::NoEdges));
        assert_eq!(find_sampled(&e, TopDegPolicy::Sweep, 1), Err(GraphError::NoEdges));
    }

    #[test]
    fn complete_graph_traces_coincide() {
        let g = complete(64);
        let eps = 0.1;
        let plan = TopDegPolicy::Fixed(eps).plans(64, 1.0)[0];
        let f = find_topdeg(&g, TopDegPolicy::Fixed(eps)).unwrap();
        assert!(!f.fallback);
        let want = ((1.0 - eps) * (1.0 - eps) * plan.part_size as f64).floor() as usize;
        assert_eq!(f.a.len(), want);
        assert_eq!(f.a, (0..want as u32).collect::<Vec<_>>());
        // D is the lowest ids, V* the next `cap` ids.
        let first = plan.part_size as u32;
        assert_eq!(f.b, (first..first + plan.cap as u32).collect::<Vec<_>>());
    }

    #[test]
    fn asymptotic_sizes_are_tiny_at_desk_scale() {
        let plans = TopDegPolicy::Asymptotic.plans(1 << 13, 0.5);
        assert_eq!(plans.len(), 1);
        assert_eq!(plans[0].part_size, 7);
        assert_eq!(plans[0].trace_len, 1);
        assert!(TopDegPolicy::Asymptotic.plans(64, 1.0).is_empty());
    }

    #[test]
    fn results_are_verified_and_deterministic() {
        for seed in 0..40 {
            let n = 200 + 13 * seed as usize;
            let g = gen_gnp(n, 0.1 + 0.02 * seed as f64, seed).unwrap();
            for policy in [TopDegPolicy::Asymptotic, TopDegPolicy::Sweep, TopDegPolicy::Fixed(0.2)] {
                let f = find_topdeg(&g, policy).unwrap();
                verify_biclique(&g, &f.a, &f.b).unwrap();
                let s = find_sampled(&g, policy, seed).unwrap();
                verify_biclique(&g, &s.a, &s.b).unwrap();
                assert_eq!(s, find_sampled(&g, policy, seed).unwrap());
            }
        }
    }

    #[test]
    fn top_set_ties_by_id() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5), (1, 5)]).unwrap();
        assert_eq!(top_degree_set(&g, 2), vec![1, 5]);
        assert_eq!(top_degree_set(&g, 3), vec![0, 1, 5]);
        assert_eq!(top_degree_set(&g, 9), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn pigeonhole_picks_most_common_trace() {
        // D = {0, 1, 2}; 3 and 4 see {0, 1}, 5 sees {1, 2}.
        let g = Graph::from_edges(6, &[(3, 0), (3, 1), (4, 0), (4, 1), (4, 2), (5, 1), (5, 2)]).unwrap();
        let plan = TracePlan { epsilon: 0.0, fraction: 0.5, part_size: 3, trace_len: 2, cap: 10 };
        let (a, b) = trace_pigeonhole(&g, &[0, 1, 2], &plan).unwrap();
        assert_eq!((a, b), (vec![0, 1], vec![3, 4]));
    }
}
