use biclique_core::density::{partition_density, DensityParams};
use biclique_core::ep::{partition_ep, PartitionParams};
use biclique_core::finder::{find_from_partition, find_sampled, find_topdeg, verify_biclique, Method, TopDegPolicy};
use biclique_core::graph::gen_gnp;
use biclique_core::rng::SeedStream;
use biclique_core::{Adjacency, Graph};
use rand::Rng;

fn circulant(n: usize, half_degree: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (0..n)
        .flat_map(|u| (1..=half_degree).map(move |k| (u, (u + k) % n)))
        .map(|(u, v)| (u.min(v) as u32, u.max(v) as u32))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn every_method_is_sound_on_200_runs() {
    let seeds = SeedStream::new(0xf1d);
    let mut rng = seeds.rng();
    for i in 0..200u64 {
        let n = rng.random_range(2..700);
        let g = gen_gnp(n, rng.random_range(0.01..1.0), seeds.child(i).seed()).unwrap();
        if g.m() == 0 {
            continue;
        }
        let p = partition_ep(&g, &PartitionParams::default());
        let f = find_from_partition(&g, &p).unwrap();
        assert!(f.t() as u64 * p.weight() >= g.m());
        for f in [f, find_topdeg(&g, TopDegPolicy::default()).unwrap(), find_sampled(&g, TopDegPolicy::default(), i).unwrap()] {
            verify_biclique(&g, &f.a, &f.b).unwrap();
            assert!(f.a.iter().all(|a| !f.b.contains(a)));
        }
    }
}

#[test]
fn pigeonhole_bound_on_density_partition() {
    let g = gen_gnp(1 << 13, 0.5, 13).unwrap();
    let p = partition_density(&g, &DensityParams::default());
    let f = find_from_partition(&g, &p).unwrap();
    assert!(f.t() as u64 >= g.m().div_ceil(p.weight()));
}

#[test]
fn topdeg_floor_at_8192() {
    let g = gen_gnp(1 << 13, 0.5, 21).unwrap();
    let f = find_topdeg(&g, TopDegPolicy::default()).unwrap();
    assert_eq!(f.method, Method::TopDegree);
    assert!(f.t() >= 4, "t = {}", f.t());
}

#[test]
fn sampling_fills_on_a_regular_graph() {
    let g = circulant(4096, 1024);
    let f = find_sampled(&g, TopDegPolicy::Fixed(0.1), 3).unwrap();
    assert_eq!(f.method, Method::Sampled);
    assert!(!f.fallback);
    verify_biclique(&g, &f.a, &f.b).unwrap();
    assert_eq!(f, find_sampled(&g, TopDegPolicy::Fixed(0.1), 3).unwrap());
}

#[test]
fn median_t_grows_with_n() {
    let mut medians = Vec::new();
    for k in 10..=13u32 {
        let mut ts: Vec<usize> = (0..50u64)
            .map(|seed| {
                let g = gen_gnp(1 << k, 0.5, seed * 31 + u64::from(k)).unwrap();
                find_topdeg(&g, TopDegPolicy::default()).unwrap().t()
            })
            .collect();
        ts.sort_unstable();
        medians.push(ts[25]);
    }
    assert!(medians.windows(2).all(|w| w[0] <= w[1]), "{medians:?}");
}
