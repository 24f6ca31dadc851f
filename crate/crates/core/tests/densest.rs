use biclique_core::densest::{densest_approx, densest_exact_small};
use biclique_core::ep::{partition_ep, PartitionParams};
use biclique_core::graph::gen_gnp;
use biclique_core::rng::SeedStream;
use biclique_core::{Adjacency, CbRepr, Graph};
use num_rational::Ratio;
use rand::Rng;

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect()
}

fn recount(g: &Graph, s: &[u32]) -> Ratio<u64> {
    if s.is_empty() {
        return Ratio::from_integer(0);
    }
    let edges = s.iter().flat_map(|&u| s.iter().map(move |&v| (u, v))).filter(|&(u, v)| u < v && g.has_edge(u as usize, v as usize)).count();
    Ratio::new(edges as u64, s.len() as u64)
}

#[test]
fn guarantee_against_exhaustive_oracle() {
    let seeds = SeedStream::new(0xd5);
    let mut rng = seeds.rng();
    let mut checked = 0;
    for n in 1..=14usize {
        for i in 0..500u64 {
            let p = rng.random_range(0.0..1.0);
            let g = gen_gnp(n, p, seeds.child(n as u64 * 1000 + i).seed()).unwrap();
            let exact = densest_exact_small(&masks(&g));
            let cb = CbRepr::new(partition_ep(&g, &PartitionParams::default()));
            for alpha in [1.5, 2.0, 4.0] {
                let r = densest_approx(&cb, alpha).unwrap();
                // δ ≥ δ*/(2α), compared without rounding α.
                let alpha = Ratio::new((alpha * 2.0) as u64, 2);
                assert!(r.density * alpha * 2 >= exact, "n={n} i={i}");
                assert!(r.density <= exact);
                assert_eq!(recount(&g, &r.vertices), r.density);
                assert!(r.trace.windows(2).all(|w| w[0].best <= w[1].best));
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 14 * 500 * 3);
}

#[test]
fn round_count_at_scale() {
    let g = gen_gnp(2048, 0.3, 5).unwrap();
    let cb = CbRepr::new(partition_ep(&g, &PartitionParams::default()));
    for alpha in [1.1, 1.5, 2.0, 4.0, 16.0] {
        let r = densest_approx(&cb, alpha).unwrap();
        let limit = (2048f64.ln() / f64::ln(alpha)).ceil() as usize + 1;
        assert!(r.rounds <= limit);
        assert_eq!(recount(&g, &r.vertices), r.density);
        // A dense random graph is its own densest subgraph up to noise.
        assert!(r.density >= Ratio::new(g.m(), 2048));
    }
}
