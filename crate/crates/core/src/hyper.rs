//! d-clique partitions of d-uniform hypergraphs.
//!
//! [`partition_stepup`] routes every edge to the link (d-1)-graph of its least
//! vertex. [`partition_equitable`] splits the vertices into `d - 1` parts and
//! routes each edge by how it meets the parts, using a selection strategy that
//! spreads the routing evenly; it recurses on lower uniformity or on a
//! smaller part, bottoming out in the graph partitioner.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::ep::{partition_ep, PartitionParams};
use crate::error::{GraphError, Result};
use crate::graph::{Graph, Hypergraph};
use crate::par::{map_chunks, Execution};
use crate::partition::{BicliquePartition, DClique, DCliquePartition};

/// Largest supported uniformity: distributions are packed 4 bits per entry.
pub const MAX_UNIFORMITY: usize = 15;

/// All `(x_1, …, x_{d-1})` with `Σ x_i = d`, in lexicographic order.
pub fn distributions(d: usize) -> Result<Vec<Vec<u32>>> {
    if !(2..=MAX_UNIFORMITY).contains(&d) {
        return Err(GraphError::BadUniformity(d));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d - 1);
    compositions(d as u32, d - 1, &mut current, &mut out);
    Ok(out)
}

fn compositions(remaining: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if slots == 1 {
        current.push(remaining);
        out.push(current.clone());
        current.pop();
        return;
    }
    for x in 0..=remaining {
        current.push(x);
        compositions(remaining - x, slots - 1, current, out);
        current.pop();
    }
}

/// `d! / (x_1! ⋯ x_k!)` with `d = Σ x_i`.
pub fn multinomial(x: &[u32]) -> u64 {
    let mut acc = 1u64;
    let mut total = 0u64;
    for &xi in x {
        for j in 1..=xi as u64 {
            total += 1;
            // acc·total/j stays integral: it is a running product of binomials
            acc = acc * total / j;
        }
    }
    acc
}

/// `(Σ_x multinomial(x), (d-1)^d)`; the two agree for every `d ≥ 2`.
pub fn multinomial_identity(d: usize) -> Result<(u64, u64)> {
    let sum = distributions(d)?.iter().map(|x| multinomial(x)).sum();
    Ok((sum, ((d - 1) as u64).pow(d as u32)))
}

fn pack(x: &[u32]) -> u64 {
    x.iter().fold(0u64, |acc, &xi| acc << 4 | xi as u64)
}

/// Chooses, for each distribution, the part that bears the edge.
#[derive(Clone, Debug)]
pub struct SelectionStrategy {
    d: usize,
    dists: Vec<Vec<u32>>,
    choice: Vec<usize>,
    index: FxHashMap<u64, usize>,
    class_sizes: Vec<usize>,
}

impl SelectionStrategy {
    /// Groups distributions into cyclic-rotation classes. In each class the
    /// lexicographically least rotation starting with an entry `≥ 2` is the
    /// representative `x`, and the rotation starting at offset `k` is sent to
    /// `(d-1-k) mod (d-1)`, the position where `x_1` lands. Every class then
    /// has exactly one member per part index.
    pub fn equitable(d: usize) -> Result<Self> {
        let dists = distributions(d)?;
        let parts = d - 1;
        let index: FxHashMap<u64, usize> = dists.iter().enumerate().map(|(i, x)| (pack(x), i)).collect();
        let mut choice = vec![usize::MAX; dists.len()];
        let mut class_sizes = Vec::new();
        for start in 0..dists.len() {
            if choice[start] != usize::MAX {
                continue;
            }
            let rotate = |x: &[u32], k: usize| -> Vec<u32> { (0..parts).map(|j| x[(j + k) % parts]).collect() };
            let rep = (0..parts)
                .map(|k| rotate(&dists[start], k))
                .filter(|y| y[0] >= 2)
                .min()
                .expect("some entry of a d-distribution is at least 2");
            let mut members = 0;
            for k in 0..parts {
                let y = rotate(&rep, k);
                let slot = index[&pack(&y)];
                if choice[slot] == usize::MAX {
                    choice[slot] = (parts - k) % parts;
                    members += 1;
                }
            }
            class_sizes.push(members);
        }
        Ok(Self { d, dists, choice, index, class_sizes })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn distributions(&self) -> &[Vec<u32>] {
        &self.dists
    }

    /// Part index (0-based) bearing edges with distribution `x`.
    pub fn select(&self, x: &[u32]) -> usize {
        self.choice[self.index[&pack(x)]]
    }

    /// Size of each rotation class, in order of first appearance.
    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// `Σ_{x ∈ f⁻¹(i)} multinomial(x)` for each part index `i`.
    pub fn masses(&self) -> Vec<u64> {
        let mut masses = vec![0u64; self.d - 1];
        for (x, &i) in self.dists.iter().zip(&self.choice) {
            masses[i] += multinomial(x);
        }
        masses
    }
}

/// Graph partitioner used at uniformity 2.
pub type BasePartitioner<'a> = &'a (dyn Fn(&Graph) -> BicliquePartition + Sync);

fn ep_base(g: &Graph) -> BicliquePartition {
    partition_ep(g, &PartitionParams { execution: Execution::Sequential, ..Default::default() })
}

fn base_cliques(
    base: BasePartitioner<'_>,
    g: &Graph,
    prefix: &[u32],
    relabel: impl Fn(u32) -> u32,
    out: &mut Vec<DClique>,
) {
    for b in base(g).iter() {
        let mut parts: Vec<Vec<u32>> = prefix.iter().map(|&v| vec![v]).collect();
        parts.push(b.left.iter().map(|&v| relabel(v)).collect());
        parts.push(b.right.iter().map(|&v| relabel(v)).collect());
        out.push(DClique { parts });
    }
}

fn ep_cliques(g: &Graph, prefix: &[u32], relabel: impl Fn(u32) -> u32, out: &mut Vec<DClique>) {
    base_cliques(&ep_base, g, prefix, relabel, out)
}

fn graph_from_pairs(n: usize, flat: &[u32]) -> Graph {
    let pairs: Vec<(u32, u32)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    Graph::from_edges(n, &pairs).expect("link graph edges are valid")
}

/// Step-up partition: the edges whose least vertex is `v` form a link
/// (d-1)-graph on the vertices after `v`; partition it recursively (with the
/// graph partitioner at uniformity 2) and prepend `{v}`.
pub fn partition_stepup(h: &Hypergraph, execution: Execution) -> DCliquePartition {
    partition_stepup_with(h, &ep_base, execution)
}

/// [`partition_stepup`] with a caller-chosen graph partitioner at the base.
pub fn partition_stepup_with(h: &Hypergraph, base: BasePartitioner<'_>, execution: Execution) -> DCliquePartition {
    let (n, d) = (h.n(), h.d());
    if d == 2 {
        let mut cliques = Vec::new();
        base_cliques(base, &h.to_graph().expect("2-uniform"), &[], |u| u, &mut cliques);
        return DCliquePartition { host_n: n, d, cliques };
    }
    let mut links: Vec<(u32, Vec<u32>)> = Vec::new();
    for e in h.edges() {
        if links.last().is_none_or(|(v, _)| *v != e[0]) {
            links.push((e[0], Vec::new()));
        }
        let head = e[0] + 1;
        links.last_mut().unwrap().1.extend(e[1..].iter().map(|&u| u - head));
    }
    let chunks = map_chunks(execution, links.len(), |range| {
        let mut out = Vec::new();
        for (v, flat) in &links[range] {
            let size = n - *v as usize - 1;
            let head = v + 1;
            let mut local = Vec::new();
            if d == 3 {
                base_cliques(base, &graph_from_pairs(size, flat), &[], |u| u + head, &mut local);
            } else {
                let link = Hypergraph::from_sorted_flat(size, d - 1, flat.clone());
                local = partition_stepup_with(&link, base, Execution::Sequential).cliques;
                for c in &mut local {
                    for part in &mut c.parts {
                        part.iter_mut().for_each(|u| *u += head);
                    }
                }
            }
            for mut c in local {
                c.parts.insert(0, vec![*v]);
                out.push(c);
            }
        }
        out
    });
    DCliquePartition { host_n: n, d, cliques: chunks.into_iter().flatten().collect() }
}

/// Equitable partition: parts `P_j = {v : v mod (d-1) = j}`. An edge with
/// distribution `x` goes to part `i = f(x)`: its vertices outside `P_i` form
/// `S`, and the rest is an edge of the `x_i`-uniform link hypergraph
/// `H_{x,S}` on `P_i`. Each link is partitioned recursively and every clique
/// is extended by the singletons of `S`.
pub fn partition_equitable(h: &Hypergraph, execution: Execution) -> DCliquePartition {
    let (n, d) = (h.n(), h.d());
    let cliques = if d == 2 {
        let mut out = Vec::new();
        ep_cliques(&h.to_graph().expect("2-uniform"), &[], |u| u, &mut out);
        out
    } else if n < d - 1 {
        singletons(h)
    } else {
        let strategy = SelectionStrategy::equitable(d).expect("uniformity checked at construction");
        equitable_rec(h, &strategy, execution)
    };
    DCliquePartition { host_n: n, d, cliques }
}

fn singletons(h: &Hypergraph) -> Vec<DClique> {
    h.edges().map(|e| DClique { parts: e.iter().map(|&v| vec![v]).collect() }).collect()
}

fn equitable_rec(h: &Hypergraph, strategy: &SelectionStrategy, execution: Execution) -> Vec<DClique> {
    let (n, d) = (h.n(), h.d());
    let parts = d - 1;
    // (distribution index, S) -> flattened local edges of the link on P_i
    let mut links: BTreeMap<(usize, Vec<u32>), Vec<u32>> = BTreeMap::new();
    let mut x = vec![0u32; parts];
    for e in h.edges() {
        x.fill(0);
        for &v in e {
            x[v as usize % parts] += 1;
        }
        let slot = strategy.index[&pack(&x)];
        let i = strategy.choice[slot];
        let s: Vec<u32> = e.iter().copied().filter(|&v| v as usize % parts != i).collect();
        let t = e.iter().filter(|&&v| v as usize % parts == i).map(|&v| v / parts as u32);
        links.entry((slot, s)).or_default().extend(t);
    }
    let links: Vec<((usize, Vec<u32>), Vec<u32>)> = links.into_iter().collect();
    let chunks = map_chunks(execution, links.len(), |range| {
        let mut out = Vec::new();
        for ((slot, s), flat) in &links[range] {
            let i = strategy.choice[*slot];
            let xi = strategy.dists[*slot][i] as usize;
            let size = (n + parts - 1 - i) / parts;
            let global = |u: u32| u * parts as u32 + i as u32;
            if xi == 2 {
                ep_cliques(&graph_from_pairs(size, flat), s, global, &mut out);
                continue;
            }
            let link = Hypergraph::from_sorted_flat(size, xi, flat.clone());
            let inner = if xi == d {
                // same uniformity on a strictly smaller vertex set
                if size < d - 1 {
                    singletons(&link)
                } else {
                    equitable_rec(&link, strategy, Execution::Sequential)
                }
            } else {
                partition_equitable(&link, Execution::Sequential).cliques
            };
            for c in inner {
                let mut parts_out: Vec<Vec<u32>> = s.iter().map(|&v| vec![v]).collect();
                parts_out.extend(c.parts.into_iter().map(|p| p.into_iter().map(global).collect()));
                out.push(DClique { parts: parts_out });
            }
        }
        out
    });
    chunks.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial_saturating;
    use crate::graph::gen_hypergraph;
    use crate::partition::verify_dpartition;

    #[test]
    fn distribution_examples() {
        assert_eq!(distributions(2).unwrap(), vec![vec![2]]);
        assert_eq!(distributions(3).unwrap(), vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
        assert!(distributions(1).is_err());
        for d in 2..=10 {
            let count = distributions(d).unwrap().len() as u128;
            assert_eq!(count, binomial_saturating(2 * d as u64 - 2, d as u64 - 2), "d = {d}");
        }
        // d = 4 has C(6, 2) = 15 distributions, five rotation classes of three
        assert_eq!(distributions(4).unwrap().len(), 15);
    }

    #[test]
    fn identity_holds() {
        assert_eq!(multinomial_identity(2).unwrap(), (1, 1));
        assert_eq!(multinomial_identity(3).unwrap(), (8, 8));
        assert_eq!(multinomial_identity(4).unwrap(), (81, 81));
        for d in 2..=10 {
            let (sum, expected) = multinomial_identity(d).unwrap();
            assert_eq!(sum, expected);
        }
        assert_eq!(multinomial(&[1, 2, 0]), 3);
    }

    #[test]
    fn strategy_is_valid_and_equitable() {
        for d in 2..=8 {
            let f = SelectionStrategy::equitable(d).unwrap();
            for x in f.distributions() {
                assert!(x[f.select(x)] >= 2, "d={d} x={x:?}");
            }
            assert!(f.class_sizes().iter().all(|&c| c == d - 1), "d={d}");
            let masses = f.masses();
            let expected = ((d - 1) as u64).pow(d as u32 - 1);
            assert!(masses.iter().all(|&m| m == expected), "d={d} {masses:?}");
        }
        assert_eq!(SelectionStrategy::equitable(2).unwrap().select(&[2]), 0);
        assert_eq!(SelectionStrategy::equitable(4).unwrap().class_sizes().len(), 5);
    }

    #[test]
    fn small_examples() {
        let single = Hypergraph::from_edges(3, 3, &[vec![0, 1, 2]]).unwrap();
        let stepup = partition_stepup(&single, Execution::default());
        assert_eq!(stepup.cliques, vec![DClique { parts: vec![vec![0], vec![1], vec![2]] }]);
        let equitable = partition_equitable(&single, Execution::default());
        assert_eq!(equitable.len(), 1);
        let mut parts = equitable.cliques[0].parts.clone();
        parts.sort();
        assert_eq!(parts, vec![vec![0], vec![1], vec![2]]);
        let complete = gen_hypergraph(4, 3, 1.0, 0).unwrap();
        assert_eq!(verify_dpartition(&complete, &partition_stepup(&complete, Execution::default())), Ok(()));
        assert_eq!(verify_dpartition(&complete, &partition_equitable(&complete, Execution::default())), Ok(()));
    }

    #[test]
    fn random_hypergraphs() {
        for (n, d, p) in [(64, 3, 0.5), (40, 4, 0.3), (24, 5, 0.4), (30, 2, 0.5), (9, 6, 0.8)] {
            let h = gen_hypergraph(n, d, p, 5).unwrap();
            for part in [partition_stepup(&h, Execution::default()), partition_equitable(&h, Execution::default())] {
                assert_eq!(verify_dpartition(&h, &part), Ok(()), "n={n} d={d}");
                assert_eq!(part.loads().iter().map(|&l| l as u64).sum::<u64>(), part.weight());
                assert!(part.weight() <= (d * h.edge_count()) as u64);
            }
            let seq = partition_equitable(&h, Execution::Sequential);
            assert_eq!(seq, partition_equitable(&h, Execution::Parallel));
        }
    }
}
