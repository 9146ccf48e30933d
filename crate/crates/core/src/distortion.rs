//! Social cost, exact distortion scans and the instance families used to
//! probe worst cases.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::election::{run_irv, ElectionError, TiePolicy};
use crate::tree::{Tree, TreeError, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistortionError {
    #[error("no candidate configurations to scan")]
    NoConfigurations,
    #[error(transparent)]
    Election(#[from] ElectionError),
    #[error("invalid size {param} for family {family}: {reason}")]
    InvalidSize {
        family: Family,
        param: usize,
        reason: &'static str,
    },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad generator spec {0:?} (expected family:param)")]
    BadGeneratorSpec(String),
    #[error("bad configuration spec {0:?}: {1}")]
    BadConfigSpec(String, String),
    #[error("configuration source would produce {count} sets, above the cap of {cap}")]
    TooManyConfigurations { count: u128, cap: u128 },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// `Σ_i d(i, c)` over all voters.
pub fn social_cost(tree: &Tree, c: Vertex) -> u64 {
    (0..tree.n()).map(|i| tree.dist_idx(i, c.index()) as u64).sum()
}

/// The candidate of minimum social cost; ties go to the smallest vertex.
pub fn optimal_candidate(tree: &Tree, candidates: &VertexSet) -> Result<(Vertex, u64), ElectionError> {
    candidates
        .iter()
        .map(|c| (c, social_cost(tree, c)))
        .min_by_key(|&(c, sc)| (sc, c))
        .ok_or(ElectionError::NoCandidates)
}

fn ratio_as_string<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigRecord {
    pub candidates: VertexSet,
    pub winner: Vertex,
    pub winner_cost: u64,
    pub optimum: Vertex,
    pub optimum_cost: u64,
    #[serde(serialize_with = "ratio_as_string")]
    pub ratio: Ratio<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistortionReport {
    /// Canonical text of the scanned tree.
    pub tree: String,
    pub policy: TiePolicy,
    pub records: Vec<ConfigRecord>,
    #[serde(serialize_with = "ratio_as_string")]
    pub max_ratio: Ratio<u64>,
    /// Index into `records` of the lexicographically smallest configuration
    /// attaining `max_ratio`.
    pub argmax: usize,
}

impl DistortionReport {
    pub fn argmax_record(&self) -> &ConfigRecord {
        &self.records[self.argmax]
    }

    /// Tab-separated table, one row per configuration.
    pub fn to_table(&self) -> String {
        let mut out = String::from("candidates\twinner\twinner_cost\toptimum\toptimum_cost\tratio\n");
        for r in &self.records {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.candidates, r.winner, r.winner_cost, r.optimum, r.optimum_cost, r.ratio
            ));
        }
        out
    }
}

/// Evaluates one configuration.
pub fn evaluate_config(tree: &Tree, policy: &TiePolicy, candidates: &VertexSet) -> Result<ConfigRecord, ElectionError> {
    let trace = run_irv(tree, candidates, policy)?;
    let winner_cost = social_cost(tree, trace.winner);
    let (optimum, optimum_cost) = optimal_candidate(tree, candidates)?;
    // only the one-vertex tree has zero costs
    let ratio = if optimum_cost == 0 {
        Ratio::from_integer(1)
    } else {
        Ratio::new(winner_cost, optimum_cost)
    };
    Ok(ConfigRecord {
        candidates: candidates.clone(),
        winner: trace.winner,
        winner_cost,
        optimum,
        optimum_cost,
        ratio,
    })
}

/// Runs IRV on every configuration and reports the worst ratio. Elections
/// are spread over the current rayon pool; records keep input order.
pub fn distortion_scan<I>(tree: &Tree, policy: &TiePolicy, configs: I) -> Result<DistortionReport, DistortionError>
where
    I: IntoIterator<Item = VertexSet>,
{
    let configs: Vec<VertexSet> = configs.into_iter().collect();
    if configs.is_empty() {
        return Err(DistortionError::NoConfigurations);
    }
    let records = configs
        .par_iter()
        .map(|k| evaluate_config(tree, policy, k))
        .collect::<Result<Vec<_>, _>>()?;
    let mut argmax = 0;
    for (i, r) in records.iter().enumerate() {
        let best = &records[argmax];
        if r.ratio > best.ratio || (r.ratio == best.ratio && r.candidates.as_slice() < best.candidates.as_slice()) {
            argmax = i;
        }
    }
    Ok(DistortionReport {
        tree: tree.to_text(),
        policy: policy.clone(),
        max_ratio: records[argmax].ratio,
        records,
        argmax,
    })
}

/// Where the candidate configurations of a scan come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConfigSource {
    /// Every nonempty subset.
    All,
    /// Every subset of exactly this size.
    Size {
        k: usize,
    },
    /// Every nonempty subset of at most this size.
    UpTo {
        k: usize,
    },
    Explicit {
        sets: Vec<VertexSet>,
    },
    /// `count` uniformly random nonempty subsets (of size `k` if given).
    Random {
        count: usize,
        k: Option<usize>,
        seed: u64,
    },
}

/// Cap on the number of configurations a source may expand to.
pub const MAX_CONFIGURATIONS: u128 = 5_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let mut idx: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let cur = idx.as_mut()?;
        let out: VertexSet = cur.iter().map(|&i| Vertex::from_index(i)).collect();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                idx = None;
                break;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

impl ConfigSource {
    /// Number of configurations this source yields on `n` vertices.
    pub fn count(&self, n: usize) -> u128 {
        match self {
            ConfigSource::All => (1u128 << n.min(127)) - 1,
            ConfigSource::Size { k } => binomial(n, *k),
            ConfigSource::UpTo { k } => (1..=*k).map(|j| binomial(n, j)).sum(),
            ConfigSource::Explicit { sets } => sets.len() as u128,
            ConfigSource::Random { count, .. } => *count as u128,
        }
    }

    pub fn configs(&self, n: usize) -> Result<Vec<VertexSet>, DistortionError> {
        let count = self.count(n);
        if count > MAX_CONFIGURATIONS {
            return Err(DistortionError::TooManyConfigurations {
                count,
                cap: MAX_CONFIGURATIONS,
            });
        }
        let bad = |msg: String| DistortionError::BadConfigSpec(self.to_string(), msg);
        Ok(match self {
            ConfigSource::All => (1..=n).flat_map(|k| k_subsets(n, k)).collect(),
            ConfigSource::Size { k } => {
                if *k == 0 || *k > n {
                    return Err(bad(format!("size must be in 1..={n}")));
                }
                k_subsets(n, *k).collect()
            }
            ConfigSource::UpTo { k } => (1..=(*k).min(n)).flat_map(|j| k_subsets(n, j)).collect(),
            ConfigSource::Explicit { sets } => {
                for s in sets {
                    if s.is_empty() || s.iter().any(|x| x.index() >= n) {
                        return Err(bad(format!("{s} is not a nonempty subset of 1..={n}")));
                    }
                }
                sets.clone()
            }
            ConfigSource::Random { count, k, seed } => {
                if k.is_some_and(|k| k == 0 || k > n) {
                    return Err(bad(format!("size must be in 1..={n}")));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut verts: Vec<Vertex> = (0..n).map(Vertex::from_index).collect();
                (0..*count)
                    .map(|_| match k {
                        Some(k) => {
                            let (chosen, _) = verts.partial_shuffle(&mut rng, *k);
                            chosen.iter().copied().collect()
                        }
                        None => loop {
                            let s: VertexSet = (0..n).filter(|_| rng.gen_bool(0.5)).map(Vertex::from_index).collect();
                            if !s.is_empty() {
                                break s;
                            }
                        },
                    })
                    .collect()
            }
        })
    }
}

use rand::seq::SliceRandom;

impl fmt::Display for ConfigSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigSource::All => write!(f, "all"),
            ConfigSource::Size { k } => write!(f, "size:{k}"),
            ConfigSource::UpTo { k } => write!(f, "upto:{k}"),
            ConfigSource::Explicit { sets } => {
                let parts: Vec<String> = sets
                    .iter()
                    .map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "explicit:{}", parts.join(";"))
            }
            ConfigSource::Random { count, k, seed } => match k {
                Some(k) => write!(f, "random:{count}:{k}:{seed}"),
                None => write!(f, "random:{count}:any:{seed}"),
            },
        }
    }
}

impl FromStr for ConfigSource {
    type Err = DistortionError;

    /// `all`, `size:K`, `upto:K`, `explicit:1,5,9;2,3`, `random:COUNT[:K|any][:SEED]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| DistortionError::BadConfigSpec(s.to_string(), msg.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad("expected a number"));
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "all" if rest.is_empty() => Ok(ConfigSource::All),
            "size" => Ok(ConfigSource::Size { k: num(rest)? }),
            "upto" => Ok(ConfigSource::UpTo { k: num(rest)? }),
            "explicit" => {
                let sets = rest
                    .split(';')
                    .map(|part| part.parse::<VertexSet>().map_err(|e| bad(&e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ConfigSource::Explicit { sets })
            }
            "random" => {
                let parts: Vec<&str> = rest.split(':').collect();
                let count = num(parts[0])?;
                let k = match parts.get(1) {
                    None | Some(&"any") => None,
                    Some(t) => Some(num(t)?),
                };
                let seed = match parts.get(2) {
                    None => 0,
                    Some(t) => t.parse::<u64>().map_err(|_| bad("expected a seed"))?,
                };
                if parts.len() > 3 {
                    return Err(bad("too many fields"));
                }
                Ok(ConfigSource::Random { count, k, seed })
            }
            _ => Err(bad("unknown kind")),
        }
    }
}

/// Instance families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Bistar,
    ModifiedBistar,
    PerfectBinaryTree,
    SpiderDemo,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Path,
        Family::Bistar,
        Family::ModifiedBistar,
        Family::PerfectBinaryTree,
        Family::SpiderDemo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Bistar => "bistar",
            Family::ModifiedBistar => "modified_bistar",
            Family::PerfectBinaryTree => "perfect_binary_tree",
            Family::SpiderDemo => "spider_demo",
        }
    }

    /// Named vertices of the generated tree.
    ///
    /// * bistar: `hub_left`, `hub_right`, `leaf_left`, `leaf_right`
    /// * modified_bistar: `c1` (left hub), `w`, `hub_right`, `c2` (a right leaf)
    /// * perfect_binary_tree: `root`, `leaf_left`, `leaf_right`
    pub fn landmarks(self, param: usize) -> Vec<(&'static str, Vertex)> {
        let v = |i: usize| Vertex::new(i as u32);
        match self {
            Family::Path => vec![("first", v(1)), ("last", v(param))],
            Family::Bistar => vec![
                ("hub_left", v(1)),
                ("hub_right", v(2)),
                ("leaf_left", v(3)),
                ("leaf_right", v(param)),
            ],
            Family::ModifiedBistar => vec![
                ("c1", v(1)),
                ("w", v(param / 2)),
                ("hub_right", v(param / 2 + 1)),
                ("c2", v(param)),
            ],
            Family::PerfectBinaryTree => vec![
                ("root", v(1)),
                ("leaf_left", v(1 << param)),
                ("leaf_right", v((1 << (param + 1)) - 1)),
            ],
            Family::SpiderDemo => vec![("path_end", v(1)), ("star_center", v(spider_path_len(param)))],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = DistortionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| DistortionError::UnknownFamily(s.to_string()))
    }
}

/// A `family:param` generator spec such as `bistar:20`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub param: usize,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Tree, DistortionError> {
        generate_family(self.family, self.param)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family, self.param)
    }
}

impl FromStr for GeneratorSpec {
    type Err = DistortionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (fam, param) = s
            .split_once(':')
            .ok_or_else(|| DistortionError::BadGeneratorSpec(s.to_string()))?;
        let param = param
            .parse()
            .map_err(|_| DistortionError::BadGeneratorSpec(s.to_string()))?;
        Ok(GeneratorSpec {
            family: fam.parse()?,
            param,
        })
    }
}

fn spider_path_len(n: usize) -> usize {
    (n as f64).sqrt().floor() as usize + 1
}

/// Builds a family member. `param` is the vertex count, except for
/// `perfect_binary_tree` where it is the height.
///
/// * path: `1 - 2 - … - n`
/// * bistar: hubs 1 and 2 adjacent; leaves `3..=n/2+1` on hub 1, the rest on hub 2
/// * modified_bistar: hub 1 with leaves `2..n/2`, then `1 - w - r` with
///   `w = n/2`, `r = n/2+1`, and leaves `n/2+2..=n` on `r`
/// * perfect_binary_tree: heap order, children of `i` are `2i` and `2i+1`
/// * spider_demo: a path `1..=p` with `p = ⌊√n⌋+1` and the remaining
///   vertices hung off `p`
pub fn generate_family(family: Family, param: usize) -> Result<Tree, DistortionError> {
    let invalid = |reason| DistortionError::InvalidSize { family, param, reason };
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let n = match family {
        Family::Path => {
            if param == 0 {
                return Err(invalid("need at least one vertex"));
            }
            edges.extend((1..param as u32).map(|i| (i, i + 1)));
            param
        }
        Family::Bistar => {
            if param < 4 || !param.is_multiple_of(2) {
                return Err(invalid("need an even vertex count of at least 4"));
            }
            let half = param as u32 / 2;
            edges.push((1, 2));
            edges.extend((3..=half + 1).map(|l| (1, l)));
            edges.extend((half + 2..=param as u32).map(|l| (2, l)));
            param
        }
        Family::ModifiedBistar => {
            if param < 8 || !param.is_multiple_of(2) {
                return Err(invalid("need an even vertex count of at least 8"));
            }
            let half = param as u32 / 2;
            edges.extend((2..half).map(|l| (1, l)));
            edges.push((1, half));
            edges.push((half, half + 1));
            edges.extend((half + 2..=param as u32).map(|l| (half + 1, l)));
            param
        }
        Family::PerfectBinaryTree => {
            if param == 0 || param > 20 {
                return Err(invalid("height must be in 1..=20"));
            }
            let n = (1usize << (param + 1)) - 1;
            edges.extend((2..=n as u32).map(|c| (c / 2, c)));
            n
        }
        Family::SpiderDemo => {
            if param < 4 {
                return Err(invalid("need at least 4 vertices"));
            }
            let p = spider_path_len(param) as u32;
            edges.extend((1..p).map(|i| (i, i + 1)));
            edges.extend((p + 1..=param as u32).map(|l| (p, l)));
            param
        }
    };
    Ok(Tree::from_edges(n, &edges, None)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::PolicyPreset;
    use crate::tree::v;

    fn sc_bruteforce(t: &Tree, c: Vertex) -> u64 {
        // Floyd-Warshall distances
        let n = t.n();
        let mut d = vec![vec![u64::MAX / 4; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        for &(a, b) in t.edges() {
            d[a.index()][b.index()] = 1;
            d[b.index()][a.index()] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
                }
            }
        }
        d.iter().map(|row| row[c.index()]).sum()
    }

    #[test]
    fn path_social_costs() {
        let t = generate_family(Family::Path, 9).unwrap();
        assert_eq!(social_cost(&t, v(1)), 36);
        assert_eq!(social_cost(&t, v(5)), 20);
        let one = generate_family(Family::Path, 1).unwrap();
        assert_eq!(social_cost(&one, v(1)), 0);
    }

    #[test]
    fn optimal_candidate_examples() {
        let t = generate_family(Family::Path, 9).unwrap();
        assert_eq!(
            optimal_candidate(&t, &VertexSet::from_labels([1, 5, 9])).unwrap(),
            (v(5), 20)
        );
        assert_eq!(optimal_candidate(&t, &VertexSet::all(9)).unwrap().0, v(5));
        assert_eq!(
            optimal_candidate(&t, &VertexSet::from_labels([7])).unwrap(),
            (v(7), social_cost(&t, v(7)))
        );
        assert!(optimal_candidate(&t, &VertexSet::new()).is_err());
        // even path: two middles with equal cost, smaller index wins
        let t = generate_family(Family::Path, 6).unwrap();
        assert_eq!(optimal_candidate(&t, &VertexSet::all(6)).unwrap().0, v(3));
    }

    #[test]
    fn family_costs() {
        let pbt = generate_family(Family::PerfectBinaryTree, 3).unwrap();
        assert_eq!(pbt.n(), 15);
        assert_eq!(social_cost(&pbt, v(1)), 34);
        assert_eq!(social_cost(&pbt, v(8)), 57);
        let pbt1 = generate_family(Family::PerfectBinaryTree, 1).unwrap();
        assert_eq!(social_cost(&pbt1, v(1)), 2);
        assert_eq!(social_cost(&pbt1, v(2)), 3);
        let bistar = generate_family(Family::Bistar, 20).unwrap();
        assert_eq!(social_cost(&bistar, v(1)), 28);
        assert_eq!(social_cost(&bistar, v(20)), 46);
        let mb = generate_family(Family::ModifiedBistar, 12).unwrap();
        assert_eq!(social_cost(&mb, v(1)), 22);
        for fam in Family::ALL {
            let param = if fam == Family::PerfectBinaryTree { 3 } else { 16 };
            let t = generate_family(fam, param).unwrap();
            for c in t.vertices() {
                assert_eq!(social_cost(&t, c), sc_bruteforce(&t, c), "{fam} {c}");
            }
        }
    }

    #[test]
    fn family_validation() {
        assert!(generate_family(Family::Bistar, 5).is_err());
        assert!(generate_family(Family::Bistar, 2).is_err());
        assert!(generate_family(Family::ModifiedBistar, 6).is_err());
        assert!(generate_family(Family::PerfectBinaryTree, 0).is_err());
        assert!(generate_family(Family::Path, 0).is_err());
        let spec: GeneratorSpec = "bistar:20".parse().unwrap();
        assert_eq!(spec.to_string(), "bistar:20");
        assert!("bistar".parse::<GeneratorSpec>().is_err());
        assert!("moon:3".parse::<GeneratorSpec>().is_err());
    }

    #[test]
    fn spider_demo_shape() {
        let t = generate_family(Family::SpiderDemo, 25).unwrap();
        assert_eq!(t.n(), 25);
        assert_eq!(t.degree(v(6)), 20);
        assert_eq!(t.dist(v(1), v(6)), 5);
    }

    #[test]
    fn prop2_path_config() {
        let t = generate_family(Family::Path, 9).unwrap();
        let policy = TiePolicy::preset(PolicyPreset::Prop2, &t);
        let cfg = VertexSet::from_labels([1, 5, 9]);
        let report = distortion_scan(&t, &policy, [cfg]).unwrap();
        let r = report.argmax_record();
        assert!(r.winner == v(1) || r.winner == v(9));
        assert_eq!(r.ratio, Ratio::new(9, 5));
    }

    #[test]
    fn singleton_configs_have_ratio_one() {
        let t = generate_family(Family::Bistar, 8).unwrap();
        let policy = TiePolicy::default_for(&t);
        let report = distortion_scan(&t, &policy, ConfigSource::Size { k: 1 }.configs(8).unwrap()).unwrap();
        assert!(report.records.iter().all(|r| r.ratio == Ratio::from_integer(1)));
        assert_eq!(report.argmax, 0);
    }

    #[test]
    fn empty_scan_is_an_error() {
        let t = generate_family(Family::Path, 3).unwrap();
        let policy = TiePolicy::default_for(&t);
        assert_eq!(
            distortion_scan(&t, &policy, Vec::new()).unwrap_err(),
            DistortionError::NoConfigurations
        );
    }

    #[test]
    fn config_sources() {
        assert_eq!(ConfigSource::All.configs(4).unwrap().len(), 15);
        assert_eq!(ConfigSource::Size { k: 2 }.configs(5).unwrap().len(), 10);
        assert_eq!(ConfigSource::UpTo { k: 2 }.configs(5).unwrap().len(), 15);
        let first: Vec<String> = k_subsets(4, 2).map(|s| s.to_string()).collect();
        assert_eq!(first, ["{1,2}", "{1,3}", "{1,4}", "{2,3}", "{2,4}", "{3,4}"]);
        assert_eq!(k_subsets(3, 0).count(), 1);
        assert_eq!(k_subsets(3, 4).count(), 0);
        for spec in [
            "all",
            "size:2",
            "upto:3",
            "explicit:1,5,9;2",
            "random:10:3:7",
            "random:4:any:1",
        ] {
            let src: ConfigSource = spec.parse().unwrap();
            assert_eq!(src.to_string(), spec);
        }
        let r: ConfigSource = "random:10:3:7".parse().unwrap();
        let a = r.configs(9).unwrap();
        assert_eq!(a, r.configs(9).unwrap());
        assert!(a.iter().all(|s| s.len() == 3));
        assert!("size:x".parse::<ConfigSource>().is_err());
        assert!("bogus".parse::<ConfigSource>().is_err());
        assert!(ConfigSource::All.configs(40).is_err());
        assert!(ConfigSource::Size { k: 0 }.configs(4).is_err());
    }

    #[test]
    fn table_output() {
        let t = generate_family(Family::Path, 3).unwrap();
        let policy = TiePolicy::default_for(&t);
        let report = distortion_scan(&t, &policy, [VertexSet::from_labels([1, 3])]).unwrap();
        let table = report.to_table();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "{1,3}\t1\t3\t1\t3\t1");
    }
}
