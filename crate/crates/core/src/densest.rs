//! Threshold peeling for an approximate densest subgraph on a CB
//! representation. Each round reads all live degrees in `O(w)`, keeps the
//! densest live set seen so far, drops every vertex below the threshold and
//! multiplies the threshold by `alpha`.

use num_rational::Ratio;

use crate::error::{GraphError, Result};
use crate::repr::CbRepr;

#[derive(Clone, Debug, PartialEq)]
pub struct Round {
    pub threshold: f64,
    pub live: usize,
    pub edges: u64,
    /// Density of the live set before this round's removals.
    pub density: Ratio<u64>,
    pub removed: usize,
    /// Density of what survives this round's removals.
    pub density_after: Ratio<u64>,
    /// Best density recorded up to and including this round.
    pub best: Ratio<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensestResult {
    pub vertices: Vec<u32>,
    pub density: Ratio<u64>,
    pub rounds: usize,
    pub trace: Vec<Round>,
}

fn ratio(edges: u64, live: usize) -> Ratio<u64> {
    if live == 0 { Ratio::from_integer(0) } else { Ratio::new(edges, live as u64) }
}

/// Runs the peeling on a private copy of `cb`, which must have no removals.
/// The returned density is at least `δ*/(2α)`.
pub fn densest_approx(cb: &CbRepr, alpha: f64) -> Result<DensestResult> {
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(GraphError::Parameter(format!("alpha must be a finite real > 1, got {alpha}")));
    }
    if cb.has_removals() {
        return Err(GraphError::Parameter("densest needs a freshly built representation".into()));
    }
    let mut h = cb.copy();
    let n = h.n();
    let mut best = Ratio::from_integer(0);
    let mut best_set: Vec<u32> = Vec::new();
    let mut trace: Vec<Round> = Vec::new();
    let mut t = 1.0f64;
    while h.live_count() > 0 {
        let deg = h.degrees_all();
        let live = h.live_vertices();
        let edges = live.iter().map(|&v| deg[v as usize]).sum::<u64>() / 2;
        let density = ratio(edges, live.len());
        if density > best {
            best = density;
            best_set.clone_from(&live);
        }
        // What survives this round is exactly the next round's live set.
        if let Some(prev) = trace.last_mut() {
            prev.density_after = density;
        }
        let doomed: Vec<u32> = live.iter().copied().filter(|&v| (deg[v as usize] as f64) < t).collect();
        for &v in &doomed {
            h.lazy_remove(v).expect("live vertex");
        }
        trace.push(Round {
            threshold: t,
            live: live.len(),
            edges,
            density,
            removed: doomed.len(),
            density_after: Ratio::from_integer(0),
            best,
        });
        assert!(trace.len() <= n + 1, "threshold must pass n - 1");
        t *= alpha;
    }
    // Recount on the untouched representation.
    let mut member = vec![false; n];
    for &v in &best_set {
        member[v as usize] = true;
    }
    let recount = ratio(cb.sb().edges_within(&member), best_set.len());
    debug_assert_eq!(recount, best);
    Ok(DensestResult { vertices: best_set, density: recount, rounds: trace.len(), trace })
}

/// Exact maximum of `|E(G[S])|/|S|` over all nonempty `S`, by enumeration.
/// Only for small graphs; `adj[v]` is the neighbour bitmask of `v`.
pub fn densest_exact_small(adj: &[u32]) -> Ratio<u64> {
    let n = adj.len();
    assert!(n <= 20, "exhaustive search is for n <= 20");
    let mut best = Ratio::from_integer(0);
    // edges[S] = edges[S - v] + |adj[v] ∩ S|, with v the lowest bit.
    let mut edges = vec![0u32; 1 << n];
    for s in 1usize..1 << n {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        edges[s] = edges[rest] + (adj[v] & rest as u32).count_ones();
        let d = Ratio::new(u64::from(edges[s]), u64::from(s.count_ones()));
        if d > best {
            best = d;
        }
    }
    best
}
