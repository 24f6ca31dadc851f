//! The ratios whose limits the weight and load theorems predict.

use biclique_core::combinatorics::binary_entropy;
use biclique_core::{Adjacency, BicliquePartition};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoryRecord {
    pub n: usize,
    pub m: u64,
    pub bicliques: usize,
    pub weight: u64,
    pub max_load: u32,
    pub gamma: f64,
    pub h2: f64,
    /// `w·lg n/n²`; tends to 1/2 for G(n, 1/2) and to `h₂(γ)/2` in general.
    pub weight_ratio: f64,
    pub weight_target: f64,
    /// `weight_ratio / h₂(γ)`, i.e. `w·lg n/(h₂(γ)n²)`; `None` when `h₂(γ) = 0`.
    pub entropy_normalized: Option<f64>,
    /// `max-load·lg n/n`, which tends to 1/2.
    pub load_ratio: f64,
    pub load_target: f64,
    /// `h₂(γ)n²/(2 lg n)` and `n/(2 lg n)`, the predicted weight and max load.
    pub weight_reference: f64,
    pub load_reference: f64,
    /// `γ ∈ {0, 1}` or `n < 2`: the entropy target is zero and ratios against it are meaningless.
    pub degenerate: bool,
}

impl TheoryRecord {
    /// From counts alone, with `m` the number of covered pairs.
    pub fn from_counts(n: usize, m: u64, bicliques: usize, weight: u64, max_load: u32) -> Self {
        let pairs = if n < 2 { 0.0 } else { n as f64 * (n as f64 - 1.0) / 2.0 };
        let gamma = if pairs == 0.0 { 0.0 } else { m as f64 / pairs };
        let h2 = binary_entropy(gamma.clamp(0.0, 1.0)).unwrap_or(0.0);
        let lg = if n < 2 { 1.0 } else { (n as f64).log2() };
        let nf = n.max(1) as f64;
        let weight_ratio = weight as f64 * lg / (nf * nf);
        TheoryRecord {
            n,
            m,
            bicliques,
            weight,
            max_load,
            gamma,
            h2,
            weight_ratio,
            weight_target: h2 / 2.0,
            entropy_normalized: (h2 > 0.0).then(|| weight_ratio / h2),
            load_ratio: f64::from(max_load) * lg / nf,
            load_target: 0.5,
            weight_reference: h2 * nf * nf / (2.0 * lg),
            load_reference: nf / (2.0 * lg),
            degenerate: h2 == 0.0 || n < 2,
        }
    }
}

pub fn report_theory<G: Adjacency + ?Sized>(g: &G, p: &BicliquePartition) -> TheoryRecord {
    TheoryRecord::from_counts(g.n(), g.m(), p.len(), p.weight(), p.max_load())
}
