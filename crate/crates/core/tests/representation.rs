use biclique_core::density::{partition_density, DensityParams};
use biclique_core::ep::{partition_ep, PartitionParams};
use biclique_core::graph::gen_gnp;
use biclique_core::rng::SeedStream;
use biclique_core::{Adjacency, CbRepr, Graph, ReprError, SbRepr};
use rand::Rng;

/// Live degrees recomputed from scratch on the original graph.
fn reference_degrees(g: &Graph, removed: &[bool]) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().filter(|&&u| !removed[u as usize]).count() as u64)
        .collect()
}

#[test]
fn sb_and_cb_round_trip_500_graphs() {
    let seeds = SeedStream::new(0x5eed);
    let mut rng = seeds.rng();
    for i in 0..500u64 {
        let n = rng.random_range(1..160);
        let g = gen_gnp(n, rng.random_range(0.0..1.0), seeds.child(i).seed()).unwrap();
        let p = if i % 2 == 0 {
            partition_ep(&g, &PartitionParams::default())
        } else {
            partition_density(&g, &DensityParams::default())
        };
        let sb = SbRepr::new(p);
        let back = SbRepr::decode(&sb.to_bytes()[..]).unwrap();
        assert_eq!(back.edges(), g.edges().collect::<Vec<_>>());
        assert_eq!(back, sb);
        let cb = CbRepr::from_sb(back);
        assert_eq!(CbRepr::decode(&cb.to_bytes()[..]).unwrap(), cb);
    }
}

#[test]
fn degrees_track_removals_on_200_graphs() {
    let seeds = SeedStream::new(0xdec);
    let mut rng = seeds.rng();
    for i in 0..200u64 {
        let n = rng.random_range(2..120);
        let g = gen_gnp(n, rng.random_range(0.05..0.9), seeds.child(i).seed()).unwrap();
        let mut cb = CbRepr::new(partition_ep(&g, &PartitionParams::default()));
        let mut removed = vec![false; n];
        for _ in 0..n {
            let reference = reference_degrees(&g, &removed);
            let all = cb.degrees_all();
            for v in 0..n {
                if !removed[v] {
                    assert_eq!(all[v], reference[v]);
                    assert_eq!(cb.degree(v as u32).unwrap(), reference[v]);
                }
            }
            let v = rng.random_range(0..n);
            if removed[v] {
                assert!(matches!(cb.lazy_remove(v as u32), Err(ReprError::AlreadyRemoved(_))));
            } else {
                cb.lazy_remove(v as u32).unwrap();
                removed[v] = true;
            }
        }
    }
}

#[test]
fn random_operation_trace() {
    let mut rng = SeedStream::new(0x7ace).rng();
    let n = 300;
    let g = gen_gnp(n, 0.3, 77).unwrap();
    let fresh = CbRepr::new(partition_density(&g, &DensityParams::default()));
    let mut cb = fresh.copy();
    let mut removed = vec![false; n];
    let mut degree: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    for _ in 0..100_000 {
        let v = rng.random_range(0..n);
        match rng.random_range(0..4) {
            0 => {
                if removed[v] {
                    assert!(cb.lazy_remove(v as u32).is_err());
                } else {
                    cb.lazy_remove(v as u32).unwrap();
                    removed[v] = true;
                    for &u in g.neighbors(v) {
                        degree[u as usize] -= 1;
                    }
                }
            }
            1 if removed.iter().all(|&r| r) => {
                cb = fresh.copy();
                removed.fill(false);
                degree = (0..n).map(|v| g.degree(v) as u64).collect();
            }
            _ => {
                if !removed[v] {
                    assert_eq!(cb.degree(v as u32).unwrap(), degree[v]);
                }
            }
        }
    }
    assert_eq!(fresh, CbRepr::new(partition_density(&g, &DensityParams::default())));
}

#[test]
fn accounting_is_exact() {
    let g = gen_gnp(512, 0.5, 3).unwrap();
    let p = partition_ep(&g, &PartitionParams::default());
    let loads: u64 = p.loads().iter().map(|&l| u64::from(l)).sum();
    let cb = CbRepr::new(p);
    assert_eq!(cb.sb().bits(), cb.sb().id_slots() * 9);
    assert_eq!(cb.extra_bits(), loads * 19);
    // SB + CB extra is three SB sizes plus one bit per incidence.
    assert_eq!(cb.bits(), 3 * cb.sb().bits() + loads);
}
