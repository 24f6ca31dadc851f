//! The acceptance suite: ten criteria, each reporting PASS/FAIL with the
//! measurements behind the verdict.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use biclique_core::densest::{densest_approx, densest_exact_small};
use biclique_core::density::{partition_density, DensityParams};
use biclique_core::ep::{default_part_size, partition_ep, partition_ep_directed, partition_shattering, PartitionParams};
use biclique_core::finder::{find_from_partition, find_sampled, find_topdeg, verify_biclique, TopDegPolicy};
use biclique_core::graph::{gen_digraph, gen_gnm, gen_gnp, gen_gnp_matrix, gen_hypergraph, gen_interval};
use biclique_core::hyper::{multinomial, multinomial_identity, partition_equitable, partition_stepup, SelectionStrategy};
use biclique_core::partition::{verify_directed_partition, verify_dpartition, verify_partition};
use biclique_core::queries::QueryScratch;
use biclique_core::rng::SeedStream;
use biclique_core::{Adjacency, CbRepr, Execution, Graph, SbRepr};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Config;

pub const CRITERIA: [(u32, &str); 10] = [
    (1, "exactness"),
    (2, "load-bound"),
    (3, "weight-trend"),
    (4, "density-trend"),
    (5, "multinomial-identity"),
    (6, "query-oracle"),
    (7, "densest-guarantee"),
    (8, "finder"),
    (9, "representation"),
    (10, "runtime-scaling"),
];

/// Criteria that only warn.
const SOFT: [u32; 1] = [10];

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub criterion: u32,
    pub name: &'static str,
    pub status: &'static str,
    pub passed: bool,
    pub soft: bool,
    pub expected_failure: bool,
    pub seconds: f64,
    pub summary: String,
    pub detail: Value,
}

impl Outcome {
    /// A failure that should fail the suite.
    pub fn blocking(&self) -> bool {
        !self.passed && !self.soft && !self.expected_failure
    }
}

struct Verdict {
    passed: bool,
    summary: String,
    detail: Value,
}

pub struct Suite {
    pub config: Config,
    seeds: SeedStream,
    pool: rayon::ThreadPool,
}

/// `BICLIQUE_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("BICLIQUE_THREADS").ok()?.trim().parse().ok().filter(|&t| t > 0)
}

fn ratio_of(w: u64, n: usize) -> f64 {
    w as f64 * (n as f64).log2() / (n as f64 * n as f64)
}

fn entropy(gamma: f64) -> f64 {
    biclique_core::combinatorics::binary_entropy(gamma).unwrap_or(0.0)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

fn median_time(repeats: usize, mut f: impl FnMut()) -> f64 {
    let mut times: Vec<f64> = (0..repeats.max(1)).map(|_| timed(&mut f).1).collect();
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}

fn pairs(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1) / 2
}

impl Suite {
    pub fn new(config: Config, seed: Option<u64>, threads: Option<usize>) -> Self {
        let seeds = SeedStream::new(seed.unwrap_or(config.seed));
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            builder = builder.num_threads(t);
        }
        let pool = builder.build().expect("thread pool");
        Self { config, seeds, pool }
    }

    /// Runs the selected criteria (all when `only` is empty) in order,
    /// calling `each` as soon as a criterion finishes.
    pub fn run(&self, only: &[u32], mut each: impl FnMut(&Outcome)) -> Vec<Outcome> {
        let mut out = Vec::new();
        for (id, name) in CRITERIA {
            if !only.is_empty() && !only.contains(&id) {
                continue;
            }
            let (verdict, seconds) = timed(|| {
                catch_unwind(AssertUnwindSafe(|| self.criterion(id))).unwrap_or_else(|panic| {
                    let msg = panic
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "panic".into());
                    Verdict { passed: false, summary: format!("panicked: {msg}"), detail: Value::Null }
                })
            });
            let soft = SOFT.contains(&id);
            let outcome = Outcome {
                criterion: id,
                name,
                status: match (verdict.passed, soft) {
                    (true, _) => "PASS",
                    (false, true) => "WARN",
                    (false, false) => "FAIL",
                },
                passed: verdict.passed,
                soft,
                expected_failure: self.config.expected_failures.contains(&id),
                seconds,
                summary: verdict.summary,
                detail: verdict.detail,
            };
            each(&outcome);
            out.push(outcome);
        }
        out
    }

    fn criterion(&self, id: u32) -> Verdict {
        let seeds = self.seeds.child(u64::from(id));
        match id {
            1 => self.exactness(seeds),
            2 => self.load_bound(seeds),
            3 => self.weight_trend(seeds),
            4 => self.density_trend(seeds),
            5 => self.identity(),
            6 => self.queries(seeds),
            7 => self.densest(seeds),
            8 => self.finder(seeds),
            9 => self.representation(seeds),
            10 => self.runtime(seeds),
            _ => unreachable!("unknown criterion {id}"),
        }
    }

    fn exactness(&self, seeds: SeedStream) -> Verdict {
        let c = &self.config.exactness;
        let mut cells = Vec::new();
        for &n in &c.graph_sizes {
            for p in [0.02, 0.1, 0.5, 0.9] {
                for s in 0..3 {
                    cells.push(Cell::Ep { n, p, s });
                    cells.push(Cell::Density { n, gamma: p, s });
                }
            }
            for s in 0..3 {
                for d in 1..=3 {
                    cells.push(Cell::ShatterInterval { n, d, s });
                }
                cells.push(Cell::ShatterGnp { n, s });
            }
        }
        for p in [0.1, 0.5] {
            cells.push(Cell::Ep { n: c.large_n, p, s: 0 });
        }
        for gamma in [0.05, 0.25] {
            cells.push(Cell::Density { n: c.large_n, gamma, s: 0 });
        }
        for &n in &c.digraph_sizes {
            for p in [0.05, 0.3, 0.7] {
                for s in 0..2 {
                    cells.push(Cell::Directed { n, p, s });
                }
            }
        }
        for d in 3..=5usize {
            for n in std::iter::once(d).chain(c.hyper_sizes.iter().copied()) {
                let p = (c.hyper_edges / biclique_core::combinatorics::binomial_saturating(n as u64, d as u64) as f64).min(0.5);
                for s in 0..3 {
                    for equitable in [false, true] {
                        cells.push(Cell::Hyper { n, d, p, s, equitable });
                    }
                }
            }
        }
        let (results, seconds) = timed(|| {
            self.pool.install(|| {
                cells
                    .par_iter()
                    .enumerate()
                    .map(|(i, cell)| cell.run(seeds.child(i as u64).seed()).map_err(|e| format!("{cell:?}: {e}")))
                    .collect::<Vec<_>>()
            })
        });
        let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
        let count = |pred: fn(&Cell) -> bool| cells.iter().filter(|c| pred(c)).count();
        let passed = failures.is_empty() && cells.len() >= c.min_instances && seconds <= c.max_seconds;
        Verdict {
            passed,
            summary: format!("{} instances, {} violations, {:.0}s", cells.len(), failures.len(), seconds),
            detail: json!({
                "instances": cells.len(),
                "ep": count(|c| matches!(c, Cell::Ep { .. })),
                "density": count(|c| matches!(c, Cell::Density { .. })),
                "shattering": count(|c| matches!(c, Cell::ShatterInterval { .. } | Cell::ShatterGnp { .. })),
                "directed": count(|c| matches!(c, Cell::Directed { .. })),
                "hypergraph": count(|c| matches!(c, Cell::Hyper { .. })),
                "violations": failures.iter().take(10).collect::<Vec<_>>(),
                "seconds": seconds,
            }),
        }
    }

    fn load_bound(&self, seeds: SeedStream) -> Verdict {
        let c = &self.config.load_bound;
        let mut cells = Vec::new();
        for &n in &c.sizes {
            for &p in &c.densities {
                cells.push((n, p, None));
                for &r in &c.part_sizes {
                    cells.push((n, p, Some(r)));
                }
            }
        }
        let rows: Vec<(usize, f64, Option<usize>, u32, u64)> = self.pool.install(|| {
            cells
                .par_iter()
                .enumerate()
                .map(|(i, &(n, p, r))| {
                    let g = gen_gnp(n, p, seeds.child(i as u64).seed()).unwrap();
                    let params = PartitionParams { part_size: r, execution: Execution::Sequential, ..Default::default() };
                    let part = partition_ep(&g, &params);
                    // Recomputed here rather than taken from the partitioner.
                    let r_eff = r.map_or_else(|| default_part_size(n).unwrap_or(n), |r| r.min(n)).max(1);
                    let parts = n.div_ceil(r_eff);
                    let bound = (r_eff as u64 - 1)
                        .saturating_add(1u64.checked_shl(r_eff as u32).unwrap_or(u64::MAX))
                        .saturating_add(parts.div_ceil(2) as u64)
                        .saturating_add(1);
                    (n, p, r, part.max_load(), bound)
                })
                .collect()
        });
        let bad: Vec<_> = rows.iter().filter(|row| u64::from(row.3) > row.4).collect();
        let tightest = rows.iter().map(|row| f64::from(row.3) / row.4 as f64).fold(0.0, f64::max);
        Verdict {
            passed: bad.is_empty(),
            summary: format!("{} instances, {} over the bound, tightest load/bound {:.3}", rows.len(), bad.len(), tightest),
            detail: json!({
                "instances": rows.len(),
                "violations": bad.iter().map(|r| json!({"n": r.0, "p": r.1, "part_size": r.2, "max_load": r.3, "bound": r.4})).collect::<Vec<_>>(),
                "tightest_ratio": tightest,
            }),
        }
    }

    fn weight_trend(&self, seeds: SeedStream) -> Verdict {
        let c = &self.config.weight;
        let mut rows = Vec::new();
        for (i, &n) in c.sizes.iter().enumerate() {
            let g = gen_gnp_matrix(n, 0.5, seeds.child(i as u64).seed()).unwrap();
            let (part, seconds) = timed(|| partition_ep(&g, &PartitionParams::default()));
            rows.push(json!({
                "n": n,
                "weight": part.weight(),
                "ratio": ratio_of(part.weight(), n),
                "max_load": part.max_load(),
                "seconds": seconds,
            }));
        }
        let ratios: Vec<f64> = rows.iter().map(|r| r["ratio"].as_f64().unwrap()).collect();
        let last = *ratios.last().unwrap();
        let in_band = last >= c.band[0] && last <= c.band[1];
        let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
        Verdict {
            passed: in_band && decreasing,
            summary: format!(
                "w·lg n/n² = {} (band [{:.2}, {:.2}] at the largest n: {}; decreasing: {})",
                ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>().join(", "),
                c.band[0],
                c.band[1],
                if in_band { "in" } else { "out" },
                decreasing
            ),
            detail: json!({ "rows": rows, "in_band": in_band, "decreasing": decreasing }),
        }
    }

    fn density_trend(&self, seeds: SeedStream) -> Verdict {
        let c = &self.config.density;
        let mut gammas: Vec<f64> = c.gammas.iter().chain(&c.beat_gammas).copied().collect();
        gammas.sort_by(f64::total_cmp);
        gammas.dedup();
        let n = c.n;
        let mut rows = Vec::new();
        let (mut in_band, mut beats) = (true, true);
        for (i, &gamma) in gammas.iter().enumerate() {
            let m = (pairs(n) as f64 * gamma).round() as u64;
            let g = gen_gnm(n, m, seeds.child(i as u64).seed()).unwrap();
            let wd = partition_density(&g, &DensityParams::default()).weight();
            let we = partition_ep(&g, &PartitionParams::default()).weight();
            let h = entropy(gamma);
            let normalized = ratio_of(wd, n) / h;
            let ep_normalized = ratio_of(we, n) / h;
            let banded = c.gammas.contains(&gamma);
            let ok_band = normalized >= c.band[0] && normalized <= c.band[1];
            let must_beat = c.beat_gammas.contains(&gamma);
            if banded && !ok_band {
                in_band = false;
            }
            if must_beat && wd >= we {
                beats = false;
            }
            rows.push(json!({
                "gamma": gamma, "m": m, "density_weight": wd, "ep_weight": we,
                "density_normalized": normalized, "ep_normalized": ep_normalized,
                "banded": banded, "in_band": ok_band, "must_beat": must_beat, "beats": wd < we,
            }));
        }
        let line = rows
            .iter()
            .map(|r| format!("γ={}: {:.3} (ep {:.3})", r["gamma"], r["density_normalized"].as_f64().unwrap(), r["ep_normalized"].as_f64().unwrap()))
            .collect::<Vec<_>>()
            .join("; ");
        Verdict {
            passed: in_band && beats,
            summary: format!(
                "w·lg n/(h₂(γ)n²) {line}; band [{:.2}, {:.2}]: {}; density beats ep: {}",
                c.band[0],
                c.band[1],
                if in_band { "in" } else { "out" },
                beats
            ),
            detail: json!({ "n": n, "rows": rows, "in_band": in_band, "beats": beats }),
        }
    }

    fn identity(&self) -> Verdict {
        let mut rows = Vec::new();
        let mut ok = true;
        for d in 2..=self.config.identity.max_d {
            let (sum, target) = multinomial_identity(d).unwrap();
            // Independent count: tally every string in [d-1]^d by its letter counts.
            let parts = d - 1;
            let mut tally = std::collections::HashMap::<Vec<u32>, u64>::new();
            let total = (parts as u64).pow(d as u32);
            for code in 0..total {
                let mut x = vec![0u32; parts];
                let mut c = code;
                for _ in 0..d {
                    x[(c % parts as u64) as usize] += 1;
                    c /= parts as u64;
                }
                *tally.entry(x).or_default() += 1;
            }
            let counts_match = tally.iter().all(|(x, &cnt)| multinomial(x) == cnt);
            let strategy = SelectionStrategy::equitable(d).unwrap();
            let masses = strategy.masses();
            let equal = masses.iter().all(|&m| m == masses[0]);
            let primitive = strategy.class_sizes().iter().all(|&s| s == parts);
            let good = sum == target && counts_match && equal && primitive && tally.len() == strategy.distributions().len();
            ok &= good;
            rows.push(json!({
                "d": d, "sum": sum, "target": target, "distributions": strategy.distributions().len(),
                "masses": masses, "classes": strategy.class_sizes().len(), "primitive": primitive, "ok": good,
            }));
        }
        Verdict {
            passed: ok,
            summary: format!("d = 2..{}: identity, string counts, equal masses and class sizes {}", self.config.identity.max_d, if ok { "hold" } else { "FAIL" }),
            detail: json!({ "rows": rows }),
        }
    }

    fn queries(&self, seeds: SeedStream) -> Verdict {
        let c = &self.config.queries;
        let mut q = QueryScratch::new();
        let mut mismatches = Vec::new();
        let mut exhaustive = 0u64;
        for n in 1..=c.max_exhaustive_n {
            let np = n * (n - 1) / 2;
            for mask in 0..1u64 << np {
                let g = graph_from_mask(n, mask);
                let sb = SbRepr::new(partition_ep(&g, &PartitionParams::default()));
                for code in 0..3usize.pow(n as u32) {
                    let (s, t) = split_code(n, code);
                    exhaustive += 1;
                    if q.cut(&sb, &s, &t).unwrap() != brute_cut(&g, &s, &t) {
                        mismatches.push(format!("cut n={n} mask={mask} code={code}"));
                    }
                    if t.is_empty() && q.is_independent(&sb, &s).unwrap() != brute_independent(&g, &s) {
                        mismatches.push(format!("independent n={n} mask={mask} code={code}"));
                    }
                }
            }
        }
        let mut rng = seeds.rng();
        for i in 0..c.samples {
            let n = rng.random_range(2..=c.max_n);
            let g = gen_gnp(n, rng.random_range(0.0..0.6), seeds.child(i as u64).seed()).unwrap();
            let encodings = [
                SbRepr::new(partition_ep(&g, &PartitionParams::default())),
                SbRepr::new(partition_density(&g, &DensityParams::default())),
            ];
            let mut ids: Vec<u32> = (0..n as u32).collect();
            ids.shuffle(&mut rng);
            let a = rng.random_range(0..=n.min(64));
            let b = rng.random_range(0..=(n - a).min(64));
            let (s, t) = (&ids[..a], &ids[a..a + b]);
            let small = &ids[..rng.random_range(0..=n.min(6))];
            let (want_cut, want_ind) = (brute_cut(&g, s, t), brute_independent(&g, small));
            for sb in &encodings {
                if q.cut(sb, s, t).unwrap() != want_cut || q.cut(sb, t, s).unwrap() != want_cut {
                    mismatches.push(format!("sampled cut #{i} n={n}"));
                }
                if q.is_independent(sb, small).unwrap() != want_ind {
                    mismatches.push(format!("sampled independent #{i} n={n}"));
                }
            }
        }
        Verdict {
            passed: mismatches.is_empty(),
            summary: format!("{exhaustive} exhaustive (S, T) cases, {} sampled triples, {} mismatches", c.samples, mismatches.len()),
            detail: json!({ "exhaustive": exhaustive, "sampled": c.samples, "mismatches": mismatches.iter().take(10).collect::<Vec<_>>() }),
        }
    }

    fn densest(&self, seeds: SeedStream) -> Verdict {
        let c = &self.config.densest;
        let mut rng = seeds.rng();
        let mut failures = Vec::new();
        let mut checked = 0u64;
        let mut worst = f64::INFINITY;
        for n in 1..=c.max_n {
            for i in 0..c.per_size {
                let g = gen_gnp(n, rng.random_range(0.0..1.0), seeds.child((n * 100_000 + i) as u64).seed()).unwrap();
                let masks: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
                let exact = densest_exact_small(&masks);
                let cb = CbRepr::new(partition_ep(&g, &PartitionParams::default()));
                for &alpha in &c.alphas {
                    let r = densest_approx(&cb, alpha).unwrap();
                    checked += 1;
                    let got = *r.density.numer() as f64 / *r.density.denom() as f64;
                    let star = *exact.numer() as f64 / *exact.denom() as f64;
                    // δ ≥ δ*/(2α) ⇔ 2α·δ.numer·δ*.denom ≥ δ*.numer·δ.denom, exact for α with one binary digit after the point.
                    let lhs = (2.0 * alpha * 2.0) as u128 * u128::from(*r.density.numer()) * u128::from(*exact.denom());
                    let rhs = 2 * u128::from(*exact.numer()) * u128::from(*r.density.denom());
                    if star > 0.0 {
                        worst = worst.min(got * 2.0 * alpha / star);
                    }
                    let recount = recount_density(&g, &r.vertices);
                    if lhs < rhs || recount != (*r.density.numer(), *r.density.denom()) {
                        failures.push(format!("n={n} i={i} alpha={alpha} got={} exact={}", r.density, exact));
                    }
                }
            }
        }
        Verdict {
            passed: failures.is_empty(),
            summary: format!("{checked} runs, {} below δ*/(2α), min δ·2α/δ* = {worst:.3}", failures.len()),
            detail: json!({ "runs": checked, "failures": failures.iter().take(10).collect::<Vec<_>>(), "min_guarantee_ratio": worst }),
        }
    }

    fn finder(&self, seeds: SeedStream) -> Verdict {
        let c = &self.config.finder;
        let mut rng = seeds.rng();
        let mut problems = Vec::new();
        let mut runs = 0;
        for i in 0..c.runs {
            let n = rng.random_range(2..c.max_run_n);
            let g = gen_gnp(n, rng.random_range(0.01..1.0), seeds.child(i as u64).seed()).unwrap();
            if g.m() == 0 {
                continue;
            }
            runs += 1;
            for p in [partition_ep(&g, &PartitionParams::default()), partition_density(&g, &DensityParams::default())] {
                let f = find_from_partition(&g, &p).unwrap();
                if (f.t() as u64) * p.weight() < g.m() {
                    problems.push(format!("run {i}: t = {} below m/w = {}/{}", f.t(), g.m(), p.weight()));
                }
                check_found(&g, &f.a, &f.b, &mut problems, i);
            }
            for f in [find_topdeg(&g, TopDegPolicy::default()).unwrap(), find_sampled(&g, TopDegPolicy::default(), i as u64).unwrap()] {
                check_found(&g, &f.a, &f.b, &mut problems, i);
            }
        }
        let g = gen_gnp(c.n, c.gamma, seeds.child(1 << 40).seed()).unwrap();
        let top = find_topdeg(&g, TopDegPolicy::default()).unwrap();
        check_found(&g, &top.a, &top.b, &mut problems, usize::MAX);
        let sampled = find_sampled(&g, TopDegPolicy::default(), 1).unwrap();
        check_found(&g, &sampled.a, &sampled.b, &mut problems, usize::MAX);
        let floor_ok = top.t() >= c.floor;
        Verdict {
            passed: problems.is_empty() && floor_ok,
            summary: format!(
                "{runs} graphs × 4 finders sound: {}; topdeg on G({}, {}) t = {} (floor {}), sampled t = {}",
                problems.is_empty(),
                c.n,
                c.gamma,
                top.t(),
                c.floor,
                sampled.t()
            ),
            detail: json!({
                "runs": runs, "problems": problems.iter().take(10).collect::<Vec<_>>(),
                "topdeg": {"t": top.t(), "a": top.a.len(), "b": top.b.len(), "method": top.method.name(), "fallback": top.fallback},
                "sampled": {"t": sampled.t(), "method": sampled.method.name(), "fallback": sampled.fallback},
            }),
        }
    }

    fn representation(&self, seeds: SeedStream) -> Verdict {
        let c = &self.config.representation;
        let mut rng = seeds.rng();
        let mut problems = Vec::new();
        for i in 0..c.graphs {
            let n = rng.random_range(1..=c.max_n);
            let g = gen_gnp(n, rng.random_range(0.0..1.0), seeds.child(i as u64).seed()).unwrap();
            let p = if i % 2 == 0 {
                partition_ep(&g, &PartitionParams::default())
            } else {
                partition_density(&g, &DensityParams::default())
            };
            let w = p.weight();
            let load_sum: u64 = p.loads().iter().map(|&l| u64::from(l)).sum();
            let sb = SbRepr::new(p);
            let back = match SbRepr::decode(&sb.to_bytes()[..]) {
                Ok(b) => b,
                Err(e) => {
                    problems.push(format!("graph {i}: decode failed: {e}"));
                    continue;
                }
            };
            if back.edges() != g.edges().collect::<Vec<_>>() {
                problems.push(format!("graph {i}: SB edge set differs"));
            }
            let lg = if n < 2 { 0 } else { u64::from(usize::BITS - (n - 1).leading_zeros()) };
            if n >= 2 && sb.bits() != w * lg {
                problems.push(format!("graph {i}: SB bits {} != {w}·{lg}", sb.bits()));
            }
            let cb = CbRepr::from_sb(back);
            if n >= 2 && cb.extra_bits() != load_sum * (2 * lg + 1) {
                problems.push(format!("graph {i}: CB extra bits {} != Σloads·(2⌈lg n⌉+1)", cb.extra_bits()));
            }
            match CbRepr::decode(&cb.to_bytes()[..]) {
                Ok(again) if again == cb && again.sb().edges() == sb.edges() => {}
                _ => problems.push(format!("graph {i}: CB round trip differs")),
            }
        }
        Verdict {
            passed: problems.is_empty(),
            summary: format!("{} graphs, round trips and bit accounting: {} problems", c.graphs, problems.len()),
            detail: json!({ "graphs": c.graphs, "problems": problems.iter().take(10).collect::<Vec<_>>() }),
        }
    }

    fn runtime(&self, seeds: SeedStream) -> Verdict {
        let c = &self.config.runtime;
        let seq = PartitionParams { execution: Execution::Sequential, ..Default::default() };
        let big = gen_gnp(c.ep_n, 0.5, seeds.child(0).seed()).unwrap();
        let small = gen_gnp(c.ep_n / 2, 0.5, seeds.child(1).seed()).unwrap();
        let t_big = median_time(c.repeats, || drop(partition_ep(&big, &seq)));
        let t_small = median_time(c.repeats, || drop(partition_ep(&small, &seq)));
        drop((big, small));
        let ep_ratio = t_big / t_small;
        let ep_ok = ep_ratio >= c.ep_band[0] && ep_ratio <= c.ep_band[1];

        let dseq = DensityParams { execution: Execution::Sequential, ..Default::default() };
        let m = (pairs(c.density_n) as f64 * c.density_gamma) as u64;
        let g1 = gen_gnm(c.density_n, m, seeds.child(2).seed()).unwrap();
        let t1 = median_time(c.repeats, || drop(partition_density(&g1, &dseq)));
        drop(g1);
        let g2 = gen_gnm(c.density_n, 2 * m, seeds.child(3).seed()).unwrap();
        let t2 = median_time(c.repeats, || drop(partition_density(&g2, &dseq)));
        drop(g2);
        let density_ratio = t2 / t1;
        let density_ok = (density_ratio / 2.0 - 1.0).abs() <= c.density_tolerance;

        let g = gen_gnp(c.densest_n, 0.5, seeds.child(4).seed()).unwrap();
        let cb = CbRepr::new(partition_ep(&g, &PartitionParams::default()));
        drop(g);
        let a = c.densest_alpha;
        let ta = median_time(c.repeats, || drop(densest_approx(&cb, a).unwrap()));
        let ta2 = median_time(c.repeats, || drop(densest_approx(&cb, a * a).unwrap()));
        let densest_ratio = ta / ta2;
        let densest_ok = (densest_ratio / 2.0 - 1.0).abs() <= c.densest_tolerance;

        Verdict {
            passed: ep_ok && density_ok && densest_ok,
            summary: format!(
                "ep t(n)/t(n/2) = {ep_ratio:.2} [{:.1}, {:.1}]; density t(2m)/t(m) = {density_ratio:.2} (2 ± {:.0}%); densest t(α)/t(α²) = {densest_ratio:.2} (2 ± {:.0}%)",
                c.ep_band[0],
                c.ep_band[1],
                c.density_tolerance * 100.0,
                c.densest_tolerance * 100.0
            ),
            detail: json!({
                "ep": {"n": c.ep_n, "ratio": ep_ratio, "ok": ep_ok, "seconds": [t_small, t_big]},
                "density": {"n": c.density_n, "ratio": density_ratio, "ok": density_ok, "seconds": [t1, t2]},
                "densest": {"n": c.densest_n, "alpha": a, "ratio": densest_ratio, "ok": densest_ok, "seconds": [ta, ta2]},
            }),
        }
    }
}

/// `s` is the replica index; it only shows up in failure messages.
#[derive(Clone, Copy, Debug)]
#[allow(dead_code)]
enum Cell {
    Ep { n: usize, p: f64, s: u32 },
    Density { n: usize, gamma: f64, s: u32 },
    ShatterInterval { n: usize, d: u32, s: u32 },
    ShatterGnp { n: usize, s: u32 },
    Directed { n: usize, p: f64, s: u32 },
    Hyper { n: usize, d: usize, p: f64, s: u32, equitable: bool },
}

impl Cell {
    fn run(&self, seed: u64) -> Result<(), String> {
        let seq = PartitionParams { execution: Execution::Sequential, ..Default::default() };
        let err = |v: biclique_core::Violation| v.to_string();
        match *self {
            Cell::Ep { n, p, .. } if n >= 8192 => {
                let g = gen_gnp_matrix(n, p, seed).map_err(|e| e.to_string())?;
                verify_partition(&g, &partition_ep(&g, &seq)).map_err(err)
            }
            Cell::Ep { n, p, .. } => {
                let g = gen_gnp(n, p, seed).map_err(|e| e.to_string())?;
                verify_partition(&g, &partition_ep(&g, &seq)).map_err(err)
            }
            Cell::Density { n, gamma, .. } => {
                let g = gen_gnm(n, (pairs(n) as f64 * gamma) as u64, seed).map_err(|e| e.to_string())?;
                let p = partition_density(&g, &DensityParams { execution: Execution::Sequential, ..Default::default() });
                verify_partition(&g, &p).map_err(err)
            }
            Cell::ShatterInterval { n, d, .. } => {
                let g = gen_interval(n, seed).map_err(|e| e.to_string())?;
                verify_partition(&g, &partition_shattering(&g, d, Execution::Sequential).partition).map_err(err)
            }
            Cell::ShatterGnp { n, .. } => {
                let g = gen_gnp(n, 0.3, seed).map_err(|e| e.to_string())?;
                verify_partition(&g, &partition_shattering(&g, 2, Execution::Sequential).partition).map_err(err)
            }
            Cell::Directed { n, p, .. } => {
                let g = gen_digraph(n, p, seed).map_err(|e| e.to_string())?;
                verify_directed_partition(&g, &partition_ep_directed(&g, &seq)).map_err(err)
            }
            Cell::Hyper { n, d, p, equitable, .. } => {
                let h = gen_hypergraph(n, d, p, seed).map_err(|e| e.to_string())?;
                let part = if equitable {
                    partition_equitable(&h, Execution::Sequential)
                } else {
                    partition_stepup(&h, Execution::Sequential)
                };
                verify_dpartition(&h, &part).map_err(err)
            }
        }
    }
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
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
    Graph::from_edges(n, &edges).expect("simple graph")
}

/// Base-3 digit of each vertex: 1 puts it in S, 2 in T.
fn split_code(n: usize, mut code: usize) -> (Vec<u32>, Vec<u32>) {
    let (mut s, mut t) = (Vec::new(), Vec::new());
    for v in 0..n as u32 {
        match code % 3 {
            1 => s.push(v),
            2 => t.push(v),
            _ => {}
        }
        code /= 3;
    }
    (s, t)
}

fn brute_independent(g: &Graph, s: &[u32]) -> bool {
    s.iter().all(|&u| s.iter().all(|&v| !g.has_edge(u as usize, v as usize)))
}

fn brute_cut(g: &Graph, s: &[u32], t: &[u32]) -> u64 {
    s.iter().map(|&u| t.iter().filter(|&&v| g.has_edge(u as usize, v as usize)).count() as u64).sum()
}

/// `|E(G[S])|/|S|` reduced, straight from the adjacency lists.
fn recount_density(g: &Graph, s: &[u32]) -> (u64, u64) {
    if s.is_empty() {
        return (0, 1);
    }
    let mut edges = 0u64;
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            edges += u64::from(g.has_edge(u as usize, v as usize));
        }
    }
    let k = s.len() as u64;
    let gcd = gcd(edges, k);
    (edges / gcd, k / gcd)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn check_found(g: &Graph, a: &[u32], b: &[u32], problems: &mut Vec<String>, run: usize) {
    if let Err(e) = verify_biclique(g, a, b) {
        problems.push(format!("run {run}: {e}"));
    }
    if a.iter().any(|x| b.contains(x)) {
        problems.push(format!("run {run}: sides overlap"));
    }
}
