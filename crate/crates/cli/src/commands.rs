use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context as _};
use serde::Serialize;

use irv_zones::distortion::{distortion_scan, ConfigSource, DistortionReport, GeneratorSpec};
use irv_zones::election::{run_irv, PolicyPreset, TiePolicy};
use irv_zones::kill::{kill_dp, KillQuery};
use irv_zones::oracle::{self, EnumerationBudget};
use irv_zones::tree::{Tree, Vertex, VertexSet};
use irv_zones::zones::{self, nesting_violations, require_default_policy, ZoneReport};

use crate::output::{document, RunManifest};
use crate::{Format, TreeSource, ZoneOp};

pub enum CliError {
    /// Bad input; exit code 2.
    Input(anyhow::Error),
    /// DP and oracle disagree; exit code 3.
    Disagreement { output: String, message: String },
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Input(e)
    }
}

pub struct Context {
    pub format: Format,
    pub seed: Option<u64>,
}

const A10: &str = include_str!("../../../fixtures/a10.tree");

fn load(source: &TreeSource) -> anyhow::Result<(Tree, String)> {
    match (&source.tree, &source.generator) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let tree = Tree::parse(&text).with_context(|| format!("invalid tree file {}", path.display()))?;
            Ok((tree, path.display().to_string()))
        }
        (None, Some(spec)) => {
            let spec: GeneratorSpec = spec.parse()?;
            Ok((spec.generate()?, spec.to_string()))
        }
        _ => bail!("give exactly one of --tree or --gen"),
    }
}

fn parse_set(tree: &Tree, text: &str, what: &str) -> anyhow::Result<VertexSet> {
    let set: VertexSet = text
        .parse()
        .map_err(|e: String| anyhow!("bad {what} list {text:?}: {e}"))?;
    if let Some(x) = set.iter().find(|&x| !tree.contains(x)) {
        bail!("{what} {x} is not a vertex of the {}-vertex tree", tree.n());
    }
    Ok(set)
}

fn parse_policy(tree: &Tree, name: &str) -> anyhow::Result<TiePolicy> {
    let preset: PolicyPreset = name.parse()?;
    Ok(TiePolicy::preset(preset, tree))
}

pub fn elect(ctx: &Context, source: &TreeSource, candidates: &str, policy: &str) -> Result<String, CliError> {
    let (tree, input) = load(source)?;
    let k = parse_set(&tree, candidates, "candidate")?;
    let tie = parse_policy(&tree, policy)?;
    let trace = run_irv(&tree, &k, &tie).map_err(anyhow::Error::from)?;
    Ok(match ctx.format {
        Format::Text => trace.to_string(),
        Format::Doc => {
            let m = RunManifest::new("elect", &input, policy, ctx.format, false, ctx.seed).param("candidates", &k);
            document(&m, &trace)
        }
    })
}

#[derive(Serialize)]
struct KillResult {
    u: Vertex,
    allowed: VertexSet,
    result: bool,
    witness: Option<VertexSet>,
    oracle: Option<bool>,
}

pub fn kill(ctx: &Context, source: &TreeSource, u: u32, allowed: &str, check: bool) -> Result<String, CliError> {
    let (tree, input) = load(source)?;
    let a = parse_set(&tree, allowed, "allowed vertex")?;
    if u == 0 {
        return Err(anyhow!("vertex labels start at 1").into());
    }
    let u = Vertex::new(u);
    let q = KillQuery::new(&tree, u, a.clone()).map_err(anyhow::Error::from)?;
    let verdict = kill_dp(&q);
    let oracle = if check {
        Some(oracle::brute_force_kill(&tree, u, &a, &EnumerationBudget::default()).map_err(anyhow::Error::from)?)
    } else {
        None
    };
    let res = KillResult {
        u,
        allowed: a.clone(),
        result: verdict.result,
        witness: verdict.witness,
        oracle,
    };
    let out = match ctx.format {
        Format::Text => {
            let mut s = format!("kill u={u} A={a}: {}\n", res.result);
            if let Some(w) = &res.witness {
                let trace = run_irv(&tree, w, &TiePolicy::default_for(&tree)).expect("witness is nonempty");
                writeln!(s, "witness {w} (winner {})", trace.winner).unwrap();
            }
            if let Some(o) = oracle {
                let word = if o == res.result { "agrees" } else { "DISAGREES" };
                writeln!(s, "oracle: {o} ({word})").unwrap();
            }
            s
        }
        Format::Doc => {
            let m = RunManifest::new("kill", &input, "default", ctx.format, check, ctx.seed)
                .param("u", u)
                .param("allowed", &a);
            document(&m, &res)
        }
    };
    match oracle {
        Some(o) if o != res.result => Err(CliError::Disagreement {
            output: out,
            message: format!("kill_dp={} brute_force_kill={o}", res.result),
        }),
        _ => Ok(out),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum ZoneResult {
    Verify {
        report: ZoneReport,
        oracle: Option<bool>,
    },
    Min {
        zone: VertexSet,
        oracle: Option<VertexSet>,
    },
    Enumerate {
        zones: Vec<VertexSet>,
        nesting_violations: Vec<(VertexSet, VertexSet)>,
        oracle: Option<Vec<VertexSet>>,
    },
}

pub fn zone(ctx: &Context, source: &TreeSource, op: &ZoneOp, policy: &str, check: bool) -> Result<String, CliError> {
    let (tree, input) = load(source)?;
    let tie = parse_policy(&tree, policy)?;
    require_default_policy(&tree, &tie).map_err(|e| anyhow!("{e} (got --policy {policy})"))?;
    let budget = EnumerationBudget::default();
    let oracle_err = |e: oracle::OracleError| CliError::Input(anyhow!("--check: {e}"));
    let mut manifest = RunManifest::new("zone", &input, policy, ctx.format, check, ctx.seed);
    let (result, mismatch) = match op {
        ZoneOp::Verify { zone } => {
            let s = parse_set(&tree, zone, "zone vertex")?;
            manifest = manifest.param("op", "verify").param("zone", &s);
            let report = zones::verify_zone(&tree, &s).map_err(anyhow::Error::from)?;
            let oracle = if check {
                Some(oracle::brute_force_zone(&tree, &s, &budget).map_err(oracle_err)?)
            } else {
                None
            };
            let mismatch = oracle
                .filter(|&o| o != report.is_zone)
                .map(|o| format!("verify_zone={} brute_force_zone={o}", report.is_zone));
            (ZoneResult::Verify { report, oracle }, mismatch)
        }
        ZoneOp::Min => {
            manifest = manifest.param("op", "min");
            let zone = zones::min_zone(&tree);
            let oracle = if check {
                Some(oracle::brute_force_min_zone(&tree, &budget).map_err(oracle_err)?)
            } else {
                None
            };
            let mismatch = oracle
                .as_ref()
                .filter(|o| **o != zone)
                .map(|o| format!("min_zone={zone} brute force={o}"));
            (ZoneResult::Min { zone, oracle }, mismatch)
        }
        ZoneOp::Enumerate => {
            manifest = manifest.param("op", "enumerate");
            let zones = zones::enumerate_zones(&tree);
            let nesting = nesting_violations(&zones)
                .into_iter()
                .map(|(i, j)| (zones[i].clone(), zones[j].clone()))
                .collect();
            let oracle = if check {
                let mut all: Vec<VertexSet> = oracle::brute_force_all_zones(&tree, &budget)
                    .map_err(oracle_err)?
                    .into_iter()
                    .map(VertexSet::from_mask)
                    .collect();
                all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.as_slice().cmp(b.as_slice())));
                Some(all)
            } else {
                None
            };
            let mismatch = oracle.as_ref().filter(|o| **o != zones).map(|o| {
                let fmt = |v: &[VertexSet]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
                format!("enumerate_zones=[{}] brute force=[{}]", fmt(&zones), fmt(o))
            });
            (
                ZoneResult::Enumerate {
                    zones,
                    nesting_violations: nesting,
                    oracle,
                },
                mismatch,
            )
        }
    };
    let out = match ctx.format {
        Format::Doc => document(&manifest, &result),
        Format::Text => zone_text(&result),
    };
    match mismatch {
        Some(message) => Err(CliError::Disagreement { output: out, message }),
        None => Ok(out),
    }
}

fn zone_text(result: &ZoneResult) -> String {
    let mut s = String::new();
    match result {
        ZoneResult::Verify { report, oracle } => {
            writeln!(s, "zone {}: {}", report.zone, report.is_zone).unwrap();
            for (u, v) in &report.per_vertex {
                writeln!(s, "  kill {u}: {}", v.result).unwrap();
            }
            if let Some(r) = &report.refutation {
                writeln!(
                    s,
                    "refutation: candidates {} eliminate {} first and elect {}",
                    r.candidates, r.u, r.winner
                )
                .unwrap();
            }
            if let Some(o) = oracle {
                writeln!(s, "oracle: {o}").unwrap();
            }
        }
        ZoneResult::Min { zone, oracle } => {
            writeln!(s, "min zone {zone}").unwrap();
            if let Some(o) = oracle {
                writeln!(s, "oracle: {o}").unwrap();
            }
        }
        ZoneResult::Enumerate {
            zones,
            nesting_violations,
            oracle,
        } => {
            for z in zones {
                writeln!(s, "{z}").unwrap();
            }
            for (a, b) in nesting_violations {
                writeln!(s, "not nested: {a} {b}").unwrap();
            }
            if let Some(o) = oracle {
                let list: Vec<String> = o.iter().map(|z| z.to_string()).collect();
                writeln!(s, "oracle: {}", list.join(" ")).unwrap();
            }
        }
    }
    s
}

pub fn distortion(
    ctx: &Context,
    source: &TreeSource,
    configs: &str,
    policy: &str,
    table: Option<&Path>,
) -> Result<String, CliError> {
    let (tree, input) = load(source)?;
    let tie = parse_policy(&tree, policy)?;
    let mut src: ConfigSource = configs.parse().map_err(anyhow::Error::from)?;
    // a --seed overrides the seed of a random source
    if let (ConfigSource::Random { seed, .. }, Some(s)) = (&mut src, ctx.seed) {
        *seed = s;
    }
    let sets = src.configs(tree.n()).map_err(anyhow::Error::from)?;
    let report: DistortionReport = distortion_scan(&tree, &tie, sets).map_err(anyhow::Error::from)?;
    if let Some(path) = table {
        std::fs::write(path, report.to_table()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(match ctx.format {
        Format::Text => {
            let best = report.argmax_record();
            format!(
                "configurations {}\nmax ratio {} at {} (winner {} cost {}, optimum {} cost {})\n",
                report.records.len(),
                report.max_ratio,
                best.candidates,
                best.winner,
                best.winner_cost,
                best.optimum,
                best.optimum_cost
            )
        }
        Format::Doc => {
            let m = RunManifest::new("distortion", &input, policy, ctx.format, false, ctx.seed).param("configs", &src);
            document(&m, &report)
        }
    })
}

#[derive(Serialize)]
struct Generated {
    tree: String,
    n: usize,
    landmarks: Vec<(&'static str, Vertex)>,
}

pub fn generate(ctx: &Context, spec: &str) -> Result<String, CliError> {
    let spec: GeneratorSpec = spec.parse().map_err(anyhow::Error::from)?;
    let tree = spec.generate().map_err(anyhow::Error::from)?;
    Ok(match ctx.format {
        Format::Text => tree.to_text(),
        Format::Doc => {
            let m = RunManifest::new("gen", &spec.to_string(), "default", ctx.format, false, ctx.seed);
            let g = Generated {
                tree: tree.to_text(),
                n: tree.n(),
                landmarks: spec.family.landmarks(spec.param),
            };
            document(&m, &g)
        }
    })
}

#[derive(Serialize)]
struct SelftestLine {
    name: &'static str,
    ok: bool,
}

pub fn selftest(ctx: &Context) -> Result<String, CliError> {
    let t = Tree::parse(A10).expect("bundled example parses");
    let set = |l: &[u32]| VertexSet::from_labels(l.iter().copied());
    let mut lines = Vec::new();
    let mut check = |name: &'static str, ok: bool| lines.push(SelftestLine { name, ok });

    let edges: Vec<(u32, u32)> = zones::build_loss_graph(&t)
        .edges()
        .iter()
        .map(|&(a, b)| (a.label(), b.label()))
        .collect();
    check(
        "example loss graph",
        edges == [(1, 2), (1, 3), (2, 3), (2, 4), (4, 1), (4, 3)],
    );
    let q = KillQuery::new(&t, Vertex::new(3), set(&[1, 2, 4])).expect("valid query");
    check("example Kill(3, {1,2,4}) is false", !kill_dp(&q).result);
    check("example min zone is {3}", zones::min_zone(&t) == set(&[3]));
    check(
        "example zones are {3} and V",
        zones::enumerate_zones(&t) == vec![set(&[3]), VertexSet::all(4)],
    );

    let budget = EnumerationBudget::default();
    let mut agree = true;
    for n in 1..=5 {
        for tree in oracle::enumerate_small_trees_with_ids(n).expect("small n") {
            let table = oracle::KillTable::build(&tree, &budget).expect("small tree");
            for u in 0..n {
                for a in 0u64..1 << n {
                    if a >> u & 1 == 1 {
                        continue;
                    }
                    let q = KillQuery::new(&tree, Vertex::from_index(u), VertexSet::from_mask(a)).expect("valid");
                    agree &= kill_dp(&q).result == table.kill_mask(u, a);
                }
            }
        }
    }
    check("Kill DP matches brute force on all trees with n <= 5", agree);

    let path9 = irv_zones::generate_family(irv_zones::Family::Path, 9).expect("valid");
    let prop2 = TiePolicy::preset(PolicyPreset::Prop2, &path9);
    let r = distortion_scan(&path9, &prop2, [set(&[1, 5, 9])]).expect("nonempty");
    check(
        "9-path {1,5,9} under prop2 has ratio 9/5",
        r.max_ratio.to_string() == "9/5",
    );

    let failed: Vec<&str> = lines.iter().filter(|l| !l.ok).map(|l| l.name).collect();
    let out = match ctx.format {
        Format::Text => lines
            .iter()
            .map(|l| format!("{} {}\n", if l.ok { "ok  " } else { "FAIL" }, l.name))
            .collect(),
        Format::Doc => document(
            &RunManifest::new("selftest", "builtin", "default", ctx.format, true, ctx.seed),
            &lines,
        ),
    };
    if failed.is_empty() {
        Ok(out)
    } else {
        Err(CliError::Disagreement {
            output: out,
            message: failed.join(", "),
        })
    }
}
