use biclique_core::density::{partition_density, DensityParams};
use biclique_core::ep::{partition_ep, PartitionParams};
use biclique_core::graph::gen_gnp;
use biclique_core::queries::{cut, is_independent, QueryScratch};
use biclique_core::rng::SeedStream;
use biclique_core::{Adjacency, Graph, SbRepr};
use rand::seq::SliceRandom;
use rand::Rng;

fn brute_independent(g: &Graph, s: &[u32]) -> bool {
    s.iter().all(|&u| s.iter().all(|&v| !g.has_edge(u as usize, v as usize)))
}

fn brute_cut(g: &Graph, s: &[u32], t: &[u32]) -> u64 {
    s.iter().map(|&u| t.iter().filter(|&&v| g.has_edge(u as usize, v as usize)).count() as u64).sum()
}

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn exhaustive_up_to_five_vertices() {
    let mut q = QueryScratch::new();
    for n in 1..=5usize {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u32 << pairs {
            let g = graph_from_mask(n, mask);
            let sb = SbRepr::new(partition_ep(&g, &PartitionParams::default()));
            // Each vertex goes to S, T or neither.
            for code in 0..3usize.pow(n as u32) {
                let (mut s, mut t) = (Vec::new(), Vec::new());
                let mut c = code;
                for v in 0..n as u32 {
                    match c % 3 {
                        1 => s.push(v),
                        2 => t.push(v),
                        _ => {}
                    }
                    c /= 3;
                }
                assert_eq!(q.cut(&sb, &s, &t).unwrap(), brute_cut(&g, &s, &t));
                if t.is_empty() {
                    assert_eq!(q.is_independent(&sb, &s).unwrap(), brute_independent(&g, &s));
                }
            }
        }
    }
}

#[test]
fn sampled_triples_up_to_512() {
    let seeds = SeedStream::new(0x9e7);
    let mut rng = seeds.rng();
    let mut q = QueryScratch::new();
    for i in 0..1000u64 {
        let n = rng.random_range(2..=512);
        let g = gen_gnp(n, rng.random_range(0.0..0.6), seeds.child(i).seed()).unwrap();
        let ep = SbRepr::new(partition_ep(&g, &PartitionParams::default()));
        let dens = SbRepr::new(partition_density(&g, &DensityParams::default()));
        let mut ids: Vec<u32> = (0..n as u32).collect();
        ids.shuffle(&mut rng);
        let a = rng.random_range(0..=n.min(40));
        let b = rng.random_range(0..=(n - a).min(40));
        let (s, t) = (&ids[..a], &ids[a..a + b]);
        let want = brute_cut(&g, s, t);
        for sb in [&ep, &dens] {
            assert_eq!(q.cut(sb, s, t).unwrap(), want);
            assert_eq!(q.cut(sb, t, s).unwrap(), want);
        }
        // Small sets so that independent ones actually occur.
        let k = rng.random_range(0..=6.min(n));
        let small = &ids[..k];
        let want = brute_independent(&g, small);
        assert_eq!(q.is_independent(&ep, small).unwrap(), want);
        assert_eq!(q.is_independent(&dens, small).unwrap(), want);
    }
}

#[test]
fn one_shot_helpers_and_errors() {
    let g = gen_gnp(30, 0.5, 1).unwrap();
    let sb = SbRepr::new(partition_ep(&g, &PartitionParams::default()));
    assert!(is_independent(&sb, &[30]).is_err());
    assert!(cut(&sb, &[1, 2], &[2]).is_err());
    assert!(cut(&sb, &[1], &[31]).is_err());
    assert_eq!(cut(&sb, &[0], &(1..30).collect::<Vec<_>>()).unwrap(), g.neighbors(0).len() as u64);
}
