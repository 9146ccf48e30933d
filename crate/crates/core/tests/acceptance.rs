//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.
//!
//! `cargo test -p irv-zones --test acceptance` runs everything;
//! `cargo test -p irv-zones --test acceptance -- 3 5` runs a subset.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use irv_zones::distortion::{distortion_scan, generate_family, optimal_candidate, social_cost, Family};
use irv_zones::election::{PolicyPreset, TiePolicy};
use irv_zones::kill::{check_witness, kill_dp, kill_dp_with, KillOptions, KillQuery};
use irv_zones::oracle::{
    all_winners, brute_force_kill, brute_force_min_zone, enumerate_small_trees_with_ids, mask_of, micro_irv,
    random_tree, zone_from_winners, EnumerationBudget, KillTable,
};
use irv_zones::tree::{Tree, Vertex, VertexSet};
use irv_zones::zones::{build_loss_graph, closure, enumerate_zones, min_zone, singleton_closures, verify_zone};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn set(labels: &[u32]) -> VertexSet {
    VertexSet::from_labels(labels.iter().copied())
}

fn a10() -> Tree {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/a10.tree");
    Tree::parse(&std::fs::read_to_string(path).expect("fixture present")).expect("fixture parses")
}

fn labels(s: &VertexSet) -> Vec<u32> {
    s.iter().map(|x| x.label()).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t = a10();
    let g = build_loss_graph(&t);
    let edges: Vec<(u32, u32)> = g.edges().iter().map(|&(a, b)| (a.label(), b.label())).collect();
    ensure!(
        edges == [(1, 2), (1, 3), (2, 3), (2, 4), (4, 1), (4, 3)],
        "loss edges {edges:?}"
    );
    let full = VertexSet::all(4);
    ensure!(closure(&g, &set(&[3])).unwrap() == set(&[3]), "cl(3)");
    for x in [1, 2, 4] {
        ensure!(closure(&g, &set(&[x])).unwrap() == full, "cl({x})");
    }
    let q = KillQuery::new(&t, Vertex::new(3), set(&[1, 2, 4])).unwrap();
    ensure!(!kill_dp(&q).result, "Kill(3,{{1,2,4}}) should be false");
    ensure!(min_zone(&t) == set(&[3]), "min_zone {}", min_zone(&t));
    let zones = enumerate_zones(&t);
    ensure!(zones == vec![set(&[3]), full.clone()], "zones {zones:?}");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "edges, closures, Kill, min zone and zones match in {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let budget = EnumerationBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let mut queries = 0u64;
    let mut trees = 0u64;
    let mut micro_checks = 0u64;
    for n in 1..=7 {
        for t in enumerate_small_trees_with_ids(n).unwrap() {
            trees += 1;
            let table = KillTable::build(&t, &budget).unwrap();
            if rng.gen_bool(0.01) {
                micro_checks += micro_check_all(&t, &budget)?;
            }
            for u in 0..n {
                let others: Vec<Vertex> = (0..n).filter(|&x| x != u).map(Vertex::from_index).collect();
                for bits in 0u32..1 << (n - 1) {
                    let allowed: VertexSet = others
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| bits >> i & 1 == 1)
                        .map(|(_, &x)| x)
                        .collect();
                    let q = KillQuery::new(&t, Vertex::from_index(u), allowed).unwrap();
                    let dp = kill_dp(&q).result;
                    let oracle = table.kill_mask(u, mask_of(&q.allowed));
                    ensure!(
                        dp == oracle,
                        "disagreement on {:?} u={} A={}: dp={dp} oracle={oracle}",
                        t.to_text(),
                        u + 1,
                        q.allowed
                    );
                    queries += 1;
                }
            }
        }
    }
    let exhaustive = start.elapsed();
    ensure!(
        exhaustive < Duration::from_secs(600),
        "exhaustive part took {exhaustive:?}"
    );

    let mut random_queries = 0;
    for _ in 0..500 {
        let n = rng.gen_range(8..=12);
        let t = random_tree(n, &mut rng);
        let u = Vertex::from_index(rng.gen_range(0..n));
        let p = rng.gen_range(0.2..0.9);
        let allowed: VertexSet = t.vertices().filter(|&x| x != u && rng.gen_bool(p)).collect();
        let q = KillQuery::new(&t, u, allowed.clone()).unwrap();
        let dp = kill_dp(&q).result;
        let oracle = brute_force_kill(&t, u, &allowed, &budget).unwrap();
        ensure!(
            dp == oracle,
            "disagreement on {:?} u={u} A={allowed}: dp={dp} oracle={oracle}",
            t.to_text()
        );
        random_queries += 1;
    }
    Ok(format!(
        "{queries} exhaustive queries on {trees} trees (n<=7, 3 ID orders) in {exhaustive:.1?}, \
         {random_queries} random queries (8<=n<=12), {micro_checks} elections re-run by micro-IRV, 0 disagreements"
    ))
}

/// Re-runs every election of `t` through the stand-alone IRV.
fn micro_check_all(t: &Tree, budget: &EnumerationBudget) -> Result<u64, String> {
    let winners = all_winners(t, budget).unwrap();
    let edges: Vec<(u32, u32)> = t.edges().iter().map(|&(a, b)| (a.label(), b.label())).collect();
    for (mask, w) in winners.iter().enumerate().skip(1) {
        let cands = labels(&VertexSet::from_mask(mask as u64));
        let m = micro_irv(t.n(), &edges, t.ids(), &cands);
        ensure!(
            m == w.label(),
            "micro-IRV elects {m}, engine {w} on {:?} K={cands:?}",
            t.to_text()
        );
    }
    Ok(winners.len() as u64 - 1)
}

fn criterion_3() -> Outcome {
    let budget = EnumerationBudget::default();
    let all: Vec<Tree> = (1..=7)
        .flat_map(|n| enumerate_small_trees_with_ids(n).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sample = rand::seq::index::sample(&mut rng, all.len(), 200);
    let mut subsets = 0u64;
    for i in sample.iter() {
        let t = &all[i];
        let n = t.n();
        let winners = all_winners(t, &budget).unwrap();
        let closures: Vec<u64> = singleton_closures(&build_loss_graph(t)).iter().map(mask_of).collect();
        for s in 1u64..1 << n {
            let zone = VertexSet::from_mask(s);
            let brute = zone_from_winners(&winners, s);
            let report = verify_zone(t, &zone).unwrap();
            ensure!(
                report.is_zone == brute,
                "verify_zone={} brute={brute} for {zone} on {:?}",
                report.is_zone,
                t.to_text()
            );
            ensure!(
                !brute || closures.contains(&s),
                "zone {zone} is not a singleton closure on {:?}",
                t.to_text()
            );
            subsets += 1;
        }
        let mz = min_zone(t);
        let bm = brute_force_min_zone(t, &budget).unwrap();
        ensure!(mz == bm, "min_zone {mz} vs brute {bm} on {:?}", t.to_text());
    }
    Ok(format!("200 sampled trees, {subsets} subsets, 0 violations"))
}

fn criterion_4() -> Outcome {
    let mut checked = 0u64;
    for n in 2..=6 {
        for t in enumerate_small_trees_with_ids(n).unwrap() {
            for u in t.vertices() {
                for bits in 0u64..1 << n {
                    if bits >> u.index() & 1 == 1 {
                        continue;
                    }
                    let allowed = VertexSet::from_mask(bits);
                    let verdict = kill_dp(&KillQuery::new(&t, u, allowed.clone()).unwrap());
                    if !verdict.result {
                        ensure!(verdict.witness.is_none(), "false verdict with witness");
                        continue;
                    }
                    let w = verdict.witness.ok_or("true verdict without witness")?;
                    check_witness(&t, u, &allowed, &w).map_err(|e| format!("{e} on {:?}", t.to_text()))?;
                    checked += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let n = rng.gen_range(8..=16);
        let t = random_tree(n, &mut rng);
        let u = Vertex::from_index(rng.gen_range(0..n));
        let allowed: VertexSet = t.vertices().filter(|&x| x != u && rng.gen_bool(0.6)).collect();
        let verdict = kill_dp(&KillQuery::new(&t, u, allowed.clone()).unwrap());
        if let Some(w) = verdict.witness {
            check_witness(&t, u, &allowed, &w).map_err(|e| format!("{e} on {:?}", t.to_text()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} witnesses are antichains eliminating u in round 1"))
}

fn criterion_5() -> Outcome {
    let t = generate_family(Family::Path, 9).unwrap();
    let policy = TiePolicy::preset(PolicyPreset::Prop2, &t);
    let report = distortion_scan(&t, &policy, [set(&[1, 5, 9])]).unwrap();
    let r = report.argmax_record();
    ensure!(
        r.winner == Vertex::new(1) || r.winner == Vertex::new(9),
        "winner {}",
        r.winner
    );
    ensure!(r.winner_cost == 36, "SC(winner)={}", r.winner_cost);
    ensure!(r.optimum_cost == 20, "SC(opt)={}", r.optimum_cost);
    ensure!(r.ratio == Ratio::new(9, 5), "ratio {}", r.ratio);
    Ok(format!("winner {} with SC 36 vs 20, ratio {}", r.winner, r.ratio))
}

fn bistar_scan(n: usize) -> Ratio<u64> {
    let t = generate_family(Family::Bistar, n).unwrap();
    let policy = TiePolicy::preset(PolicyPreset::Prop3, &t);
    let configs = irv_zones::ConfigSource::Size { k: 2 }.configs(n).unwrap();
    distortion_scan(&t, &policy, configs).unwrap().max_ratio
}

fn criterion_6() -> Outcome {
    let at20 = bistar_scan(20);
    ensure!(at20 == Ratio::new(46, 28), "n=20 max ratio {at20}");
    for n in [8u64, 12, 16, 20] {
        let scan = bistar_scan(n as usize);
        let formula = Ratio::new(5 * n - 8, 3 * n - 4);
        ensure!(scan == formula, "n={n}: scan {scan} vs formula {formula}");
    }
    Ok(format!(
        "n=20 max ratio {at20} = 46/28; formula matches for n in 8,12,16,20"
    ))
}

fn criterion_7() -> Outcome {
    let h = 3;
    let t = generate_family(Family::PerfectBinaryTree, h).unwrap();
    let root = Vertex::new(1);
    let leaves: Vec<Vertex> = (1u32 << h..1 << (h + 1)).map(Vertex::new).collect();
    let half = leaves.len() / 2;
    let sc_root = social_cost(&t, root);
    let sc_leaf = social_cost(&t, leaves[0]);

    // root plus one leaf from each side of the root
    let mut best = Ratio::from_integer(0u64);
    let mut best_cfg = String::new();
    for preset in PolicyPreset::ALL {
        let policy = TiePolicy::preset(preset, &t);
        let configs: Vec<VertexSet> = leaves[..half]
            .iter()
            .flat_map(|&l| leaves[half..].iter().map(move |&r| [root, l, r].into_iter().collect()))
            .collect();
        let report = distortion_scan(&t, &policy, configs).unwrap();
        if report.max_ratio > best {
            best = report.max_ratio;
            best_cfg = format!("{} under {preset}", report.argmax_record().candidates);
        }
    }
    // root plus one leaf under each grandchild of the root
    let mut wide = Ratio::from_integer(0u64);
    for preset in PolicyPreset::ALL {
        let policy = TiePolicy::preset(preset, &t);
        let quarter = leaves.len() / 4;
        let mut configs = Vec::new();
        for pick in 0..quarter.pow(4) {
            let mut cfg: VertexSet = [root].into_iter().collect();
            let mut p = pick;
            for q in 0..4 {
                cfg.insert(leaves[q * quarter + p % quarter]);
                p /= quarter;
            }
            configs.push(cfg);
        }
        wide = wide.max(distortion_scan(&t, &policy, configs).unwrap().max_ratio);
    }
    let detail = format!(
        "SC(root)={sc_root} SC(leaf)={sc_leaf}; best root+2 leaves ratio {best} ({best_cfg}); root+4 leaves ratio {wide}"
    );
    ensure!(sc_root == 34, "{detail}");
    ensure!(sc_leaf == 58, "expected SC(leaf)=58; {detail}");
    ensure!(best == Ratio::new(58, 34), "expected ratio 58/34; {detail}");
    ensure!(best >= Ratio::new(17, 10), "expected ratio >= 1.7; {detail}");
    Ok(detail)
}

fn criterion_8() -> Outcome {
    let mut measured = Vec::new();
    let mut mismatches = Vec::new();
    for n in [8u64, 12, 16, 20, 40] {
        let t = generate_family(Family::ModifiedBistar, n as usize).unwrap();
        let marks = Family::ModifiedBistar.landmarks(n as usize);
        let at = |name: &str| marks.iter().find(|(k, _)| *k == name).unwrap().1;
        let (c1, c2) = (social_cost(&t, at("c1")), social_cost(&t, at("c2")));
        if c1 != 2 * n - 2 || c2 != 3 * n - 4 {
            mismatches.push(format!(
                "n={n}: SC(c1)={c1} (want {}), SC(c2)={c2} (want {})",
                2 * n - 2,
                3 * n - 4
            ));
        }
        measured.push(Ratio::new(c2, c1));
    }
    let monotone = measured.windows(2).all(|w| w[0] < w[1]) && measured.iter().all(|&r| r < Ratio::new(3, 2));
    let formula: Vec<Ratio<u64>> = [8u64, 12, 16, 20, 40]
        .iter()
        .map(|&n| Ratio::new(3 * n - 4, 2 * n - 2))
        .collect();
    let formula_monotone = formula.windows(2).all(|w| w[0] < w[1]) && formula.iter().all(|&r| r < Ratio::new(3, 2));
    ensure!(
        formula_monotone,
        "formula ratios {formula:?} not increasing towards 3/2"
    );
    ensure!(monotone, "measured ratios {measured:?} not increasing towards 3/2");
    ensure!(mismatches.is_empty(), "{}", mismatches.join("; "));
    Ok("SC(c1)=2n-2 and SC(c2)=3n-4 for n in 8,12,16,20,40; ratio increases towards 3/2".into())
}

fn criterion_9() -> Outcome {
    for n in 1..=50usize {
        let t = generate_family(Family::Path, n).unwrap();
        let all = VertexSet::all(n);
        let (opt, min_sc) = optimal_candidate(&t, &all).unwrap();
        let middles = [n.div_ceil(2), n / 2 + 1];
        ensure!(middles.contains(&(opt.label() as usize)), "n={n}: argmin {opt}");
        let max_sc = t.vertices().map(|c| social_cost(&t, c)).max().unwrap();
        let argmax: Vec<Vertex> = t.vertices().filter(|&c| social_cost(&t, c) == max_sc).collect();
        ensure!(
            argmax.iter().all(|c| c.label() == 1 || c.label() as usize == n),
            "n={n}: argmax {argmax:?}"
        );
        ensure!(max_sc <= 2 * min_sc, "n={n}: {max_sc} > 2 * {min_sc}");
    }
    Ok("argmin is a middle vertex, argmax an endpoint, max/min <= 2 for n <= 50".into())
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let n = 20usize;
    let cap = (n as u64).pow(9);
    let mut slowest = Duration::ZERO;
    let mut most_tuples = 0;
    for round in 0..6 {
        let t = random_tree(n, &mut rng);
        let u = Vertex::from_index(rng.gen_range(0..n));
        let allowed: VertexSet = if round % 2 == 0 {
            t.vertices().filter(|&x| x != u).collect()
        } else {
            t.vertices().filter(|&x| x != u && rng.gen_bool(0.5)).collect()
        };
        let q = KillQuery::new(&t, u, allowed.clone()).unwrap();
        let start = Instant::now();
        let (verdict, stats) = kill_dp_with(&q, KillOptions::default());
        let took = start.elapsed();
        ensure!(took < Duration::from_secs(60), "n=20 query took {took:?}");
        ensure!(
            (stats.outer_tuples as u64) < cap,
            "{} tuples exceed n^9",
            stats.outer_tuples
        );
        if let Some(w) = &verdict.witness {
            check_witness(&t, u, &allowed, w)?;
        }
        slowest = slowest.max(took);
        most_tuples = most_tuples.max(stats.outer_tuples);
    }
    Ok(format!(
        "6 queries at n=20, slowest {slowest:.2?}, at most {most_tuples} stored tuples (cap n^9 = {cap})"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "example tree end to end", criterion_1),
        (2, "Kill DP equals brute force", criterion_2),
        (3, "zone checks equal brute force", criterion_3),
        (4, "witness validity", criterion_4),
        (5, "9-path distortion 9/5", criterion_5),
        (6, "bistar distortion 46/28", criterion_6),
        (7, "perfect binary tree distortion", criterion_7),
        (8, "modified bistar social costs", criterion_8),
        (9, "path social cost bounds", criterion_9),
        (10, "n=20 performance", criterion_10),
    ];
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2} ({name}) [{secs:.1}s]: {detail}"),
            Err(detail) => {
                println!("FAIL criterion {id:>2} ({name}) [{secs:.1}s]: {detail}");
                failed.push(id);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
