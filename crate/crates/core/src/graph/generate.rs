//! Seeded random graph generators.

use rand::{Rng, RngCore};

use super::{AdjacencyMatrix, Graph, Hypergraph};
use crate::error::{GraphError, Result};
use crate::rng::{bernoulli_word, quantize_probability, SeedStream};

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::Parameter(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Walks the strict upper triangle row by row, one 64-bit Bernoulli word per
/// aligned column block. Both G(n, p) generators share this stream, so a
/// seed produces the same graph in either container.
fn gnp_rows(n: usize, p: f64, seed: u64, mut sink: impl FnMut(usize, usize, u64)) {
    let q = quantize_probability(p);
    let mut rng = SeedStream::new(seed).stream(0x676e70);
    let stride = n.div_ceil(64);
    for u in 0..n {
        for w in (u + 1) / 64..stride {
            let mut word = bernoulli_word(&mut rng, q);
            let base = w * 64;
            if base <= u {
                let keep = u + 1 - base;
                word &= if keep >= 64 { 0 } else { u64::MAX << keep };
            }
            if base + 64 > n {
                word &= (1u64 << (n - base)) - 1;
            }
            if word != 0 {
                sink(u, w, word);
            }
        }
    }
}

/// G(n, p): each pair independently with probability `p` (quantized to 2^-32).
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut edges = Vec::new();
    gnp_rows(n, p, seed, |u, w, mut word| {
        while word != 0 {
            let v = w * 64 + word.trailing_zeros() as usize;
            edges.push((u as u32, v as u32));
            word &= word - 1;
        }
    });
    Ok(Graph::from_sorted_unique(n, &edges))
}

/// G(n, p) straight into a bit matrix; same graph as [`gen_gnp`] for the same seed.
pub fn gen_gnp_matrix(n: usize, p: f64, seed: u64) -> Result<AdjacencyMatrix> {
    check_probability(p)?;
    let mut mat = AdjacencyMatrix::empty(n);
    gnp_rows(n, p, seed, |u, w, word| mat.row_mut(u)[w] |= word);
    mat.symmetrize_from_upper();
    mat.finish();
    Ok(mat)
}

/// G(n, m): a uniform m-subset of the pairs. Pair indices are drawn by
/// rejection into a bitset; above half density the complement is drawn.
pub fn gen_gnm(n: usize, m: u64, seed: u64) -> Result<Graph> {
    let pairs = (n as u64) * (n as u64).saturating_sub(1) / 2;
    if m > pairs {
        return Err(GraphError::Parameter(format!("m = {m} exceeds C({n}, 2) = {pairs}")));
    }
    let mut rng = SeedStream::new(seed).stream(0x676e6d);
    let invert = m > pairs / 2;
    let draws = if invert { pairs - m } else { m };
    let mut bits = vec![0u64; pairs.div_ceil(64) as usize];
    let mut set = 0;
    while set < draws {
        let i = rng.random_range(0..pairs);
        let (w, b) = ((i / 64) as usize, i % 64);
        if bits[w] >> b & 1 == 0 {
            bits[w] |= 1 << b;
            set += 1;
        }
    }
    let mut edges = Vec::with_capacity(m as usize);
    let mut i = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if (bits[(i / 64) as usize] >> (i % 64) & 1 == 1) != invert {
                edges.push((u as u32, v as u32));
            }
            i += 1;
        }
    }
    Ok(Graph::from_sorted_unique(n, &edges))
}

fn binomial_table(n: usize, d: usize) -> Result<Vec<Vec<u64>>> {
    let mut table = vec![vec![0u64; d + 1]; n + 1];
    for i in 0..=n {
        table[i][0] = 1;
        for j in 1..=d.min(i) {
            table[i][j] = table[i - 1][j - 1]
                .checked_add(if j <= i - 1 { table[i - 1][j] } else { 0 })
                .ok_or_else(|| GraphError::Parameter(format!("C({n}, {d}) overflows u64")))?;
        }
    }
    Ok(table)
}

/// Random d-uniform hypergraph: each d-set independently with probability `p`.
/// Uses geometric skips over the lexicographic ranks, so cost is O(m·n).
pub fn gen_hypergraph(n: usize, d: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    check_probability(p)?;
    if d < 2 {
        return Err(GraphError::BadUniformity(d));
    }
    if p == 0.0 || n < d {
        return Hypergraph::empty(n, d);
    }
    let table = binomial_table(n, d)?;
    let total = table[n][d];
    let mut rng = SeedStream::new(seed).stream(0x687967);
    let log_q = (1.0 - p).ln();
    let mut flat = Vec::new();
    let mut rank: u64 = 0;
    loop {
        if p < 1.0 {
            let u: f64 = rng.random::<f64>();
            let gap = ((1.0 - u).ln() / log_q).floor();
            if !gap.is_finite() || gap >= (total - rank) as f64 {
                break;
            }
            rank += gap as u64;
        }
        if rank >= total {
            break;
        }
        unrank(rank, n, d, &table, &mut flat);
        rank += 1;
    }
    Ok(Hypergraph::from_sorted_flat(n, d, flat))
}

/// Appends the `rank`-th d-subset of `0..n` in lexicographic order.
fn unrank(mut rank: u64, n: usize, d: usize, table: &[Vec<u64>], out: &mut Vec<u32>) {
    let mut c = 0usize;
    for slot in 0..d {
        loop {
            // subsets whose `slot`-th element is c
            let count = table[n - c - 1][d - slot - 1];
            if rank < count {
                break;
            }
            rank -= count;
            c += 1;
        }
        out.push(c as u32);
        c += 1;
    }
}

/// Random interval graph: vertex `v` is `[a, a + len]` with `a` uniform in
/// `0..n` and `len` uniform in `1..=max(1, n / 8)`; edges join intersecting
/// intervals. Neighborhood families of interval graphs have a quadratic
/// shatter function.
pub fn gen_interval(n: usize, seed: u64) -> Result<Graph> {
    let mut rng = SeedStream::new(seed).stream(0x696e74);
    let max_len = (n / 8).max(1) as u64;
    let intervals: Vec<(u64, u64)> = (0..n)
        .map(|_| {
            let a = rng.random_range(0..n.max(1) as u64);
            let len = rng.random_range(1..=max_len);
            (a, a + len)
        })
        .collect();
    let mut edges = Vec::new();
    for u in 0..n {
        let (a, b) = intervals[u];
        for (v, &(c, e)) in intervals.iter().enumerate().skip(u + 1) {
            if a <= e && c <= b {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Ok(Graph::from_sorted_unique(n, &edges))
}

/// Random digraph: each ordered pair `u != v` independently with probability `p`.
pub fn gen_digraph(n: usize, p: f64, seed: u64) -> Result<super::Digraph> {
    check_probability(p)?;
    let mut rng = SeedStream::new(seed).stream(0x646967);
    let threshold = quantize_probability(p);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && (rng.next_u32() as u64) < threshold {
                arcs.push((u as u32, v as u32));
            }
        }
    }
    super::Digraph::from_arcs(n, &arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Adjacency;

    #[test]
    fn gnp_extremes() {
        assert_eq!(gen_gnp(10, 0.0, 3).unwrap().m(), 0);
        assert_eq!(gen_gnp(10, 1.0, 3).unwrap().m(), 45);
        assert!(gen_gnp(10, 1.5, 3).is_err());
    }

    #[test]
    fn gnp_reproducible_and_matches_matrix() {
        let a = gen_gnp(300, 0.3, 11).unwrap();
        assert_eq!(a, gen_gnp(300, 0.3, 11).unwrap());
        assert_ne!(a, gen_gnp(300, 0.3, 12).unwrap());
        let mat = gen_gnp_matrix(300, 0.3, 11).unwrap();
        assert_eq!(Graph::from(&mat), a);
        let expected = 0.3 * 300.0 * 299.0 / 2.0;
        assert!((a.m() as f64 - expected).abs() < 0.05 * expected);
    }

    #[test]
    fn gnm_exact_count() {
        let g = gen_gnm(100, 1000, 5).unwrap();
        assert_eq!(g.m(), 1000);
        assert_eq!(gen_gnm(10, 45, 1).unwrap().m(), 45);
        assert!(gen_gnm(10, 46, 1).is_err());
    }

    #[test]
    fn hypergraph_generation() {
        let h = gen_hypergraph(8, 3, 1.0, 2).unwrap();
        assert_eq!(h.edge_count(), 56);
        let edges: Vec<&[u32]> = h.edges().collect();
        assert_eq!(edges[0], &[0, 1, 2]);
        assert_eq!(edges[55], &[5, 6, 7]);
        let sparse = gen_hypergraph(40, 4, 0.05, 9).unwrap();
        let expected = 0.05 * 91_390.0;
        assert!((sparse.edge_count() as f64 - expected).abs() < 0.1 * expected);
        assert_eq!(sparse, gen_hypergraph(40, 4, 0.05, 9).unwrap());
        assert_eq!(gen_hypergraph(10, 3, 0.0, 1).unwrap().edge_count(), 0);
    }

    #[test]
    fn interval_graph_is_symmetric_and_deterministic() {
        let g = gen_interval(200, 4).unwrap();
        assert_eq!(g, gen_interval(200, 4).unwrap());
        assert!(g.m() > 0);
    }
}
