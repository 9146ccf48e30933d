//! Brute-force references. These only depend on the tree and election
//! modules and stay deliberately naive.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::election::{run_irv, TiePolicy};
use crate::tree::{Tree, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("tree has {n} vertices, above the enumeration cap of {max_n}")]
    TooManyVertices { n: usize, max_n: usize },
    #[error("enumeration needs {needed} sets, above the cap of {max_subsets}")]
    TooManySubsets { needed: u128, max_subsets: u128 },
    #[error("exhaustive tree enumeration supports n <= 9, got {0}")]
    TreeEnumerationTooLarge(usize),
    #[error("invalid Prüfer sequence: {0}")]
    BadPrufer(String),
}

/// Caps checked before any enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    pub max_n: usize,
    pub max_subsets: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_n: 24,
            max_subsets: 1 << 22,
        }
    }
}

impl EnumerationBudget {
    fn check(&self, n: usize, subsets_exp: usize) -> Result<(), OracleError> {
        if n > self.max_n {
            return Err(OracleError::TooManyVertices { n, max_n: self.max_n });
        }
        let needed = 1u128 << subsets_exp.min(127);
        if needed > self.max_subsets {
            return Err(OracleError::TooManySubsets {
                needed,
                max_subsets: self.max_subsets,
            });
        }
        Ok(())
    }
}

fn default_winner(tree: &Tree, k: &VertexSet) -> Vertex {
    run_irv(tree, k, &TiePolicy::default_for(tree))
        .expect("nonempty")
        .winner
}

fn set_from_bits(bits: u64, verts: &[Vertex]) -> VertexSet {
    verts
        .iter()
        .enumerate()
        .filter(|&(i, _)| bits >> i & 1 == 1)
        .map(|(_, &x)| x)
        .collect()
}

/// Tries every `K = {u} ∪ B` with `B ⊆ A` and reports whether some `K`
/// elects someone other than `u`.
pub fn brute_force_kill(
    tree: &Tree,
    u: Vertex,
    allowed: &VertexSet,
    budget: &EnumerationBudget,
) -> Result<bool, OracleError> {
    budget.check(tree.n(), allowed.len())?;
    let verts: Vec<Vertex> = allowed.iter().filter(|&x| x != u).collect();
    Ok((0..1u64 << verts.len()).any(|bits| {
        let mut k = set_from_bits(bits, &verts);
        k.insert(u);
        default_winner(tree, &k) != u
    }))
}

/// Like [`brute_force_kill`] but only asks for `u` to be eliminated in the
/// first round.
pub fn brute_force_round1_kill(
    tree: &Tree,
    u: Vertex,
    allowed: &VertexSet,
    budget: &EnumerationBudget,
) -> Result<Option<VertexSet>, OracleError> {
    budget.check(tree.n(), allowed.len())?;
    let verts: Vec<Vertex> = allowed.iter().filter(|&x| x != u).collect();
    let policy = TiePolicy::default_for(tree);
    for bits in 0..1u64 << verts.len() {
        let mut k = set_from_bits(bits, &verts);
        k.insert(u);
        let trace = run_irv(tree, &k, &policy).expect("nonempty");
        if trace.rounds.first().is_some_and(|r| r.eliminated == u) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// IRV winner of every nonempty candidate set, indexed by bitmask over
/// vertex indices (entry 0 is unused).
pub fn all_winners(tree: &Tree, budget: &EnumerationBudget) -> Result<Vec<Vertex>, OracleError> {
    let n = tree.n();
    budget.check(n, n)?;
    let verts: Vec<Vertex> = tree.vertices().collect();
    let mut out = vec![Vertex::from_index(0); 1 << n];
    for (mask, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = default_winner(tree, &set_from_bits(mask as u64, &verts));
    }
    Ok(out)
}

/// Kill answers for every `(u, A)` on one tree, from a single pass over all
/// candidate sets.
#[derive(Clone, Debug)]
pub struct KillTable {
    n: usize,
    /// `reach[u][M]`: some `K ⊆ M` with `u ∈ K` elects someone else.
    reach: Vec<Vec<bool>>,
}

impl KillTable {
    pub fn build(tree: &Tree, budget: &EnumerationBudget) -> Result<KillTable, OracleError> {
        let winners = all_winners(tree, budget)?;
        let n = tree.n();
        let full = 1usize << n;
        let reach = (0..n)
            .map(|u| {
                let mut f: Vec<bool> = (0..full).map(|k| k >> u & 1 == 1 && winners[k].index() != u).collect();
                // OR over subsets
                for bit in 0..n {
                    for m in 0..full {
                        if m >> bit & 1 == 1 && f[m ^ (1 << bit)] {
                            f[m] = true;
                        }
                    }
                }
                f
            })
            .collect();
        Ok(KillTable { n, reach })
    }

    pub fn kill(&self, u: Vertex, allowed: &VertexSet) -> bool {
        self.kill_mask(u.index(), mask_of(allowed))
    }

    /// `allowed` as a bitmask over vertex indices.
    pub fn kill_mask(&self, u: usize, allowed: u64) -> bool {
        debug_assert!(u < self.n);
        self.reach[u][(allowed | 1 << u) as usize]
    }
}

pub fn mask_of(set: &VertexSet) -> u64 {
    set.iter().fold(0, |m, x| m | 1 << x.index())
}

/// Checks every nonempty `K` meeting `zone` and reports whether all winners
/// lie in `zone`.
pub fn brute_force_zone(tree: &Tree, zone: &VertexSet, budget: &EnumerationBudget) -> Result<bool, OracleError> {
    let winners = all_winners(tree, budget)?;
    Ok(zone_from_winners(&winners, mask_of(zone)))
}

/// Zone test against a precomputed [`all_winners`] table.
pub fn zone_from_winners(winners: &[Vertex], zone: u64) -> bool {
    (1..winners.len()).all(|k| k as u64 & zone == 0 || zone >> winners[k].index() & 1 == 1)
}

/// Every nonempty zone, as bitmasks in increasing order.
pub fn brute_force_all_zones(tree: &Tree, budget: &EnumerationBudget) -> Result<Vec<u64>, OracleError> {
    let winners = all_winners(tree, budget)?;
    Ok((1..winners.len() as u64)
        .filter(|&s| zone_from_winners(&winners, s))
        .collect())
}

/// Minimum-cardinality zone, smallest lexicographic among ties.
pub fn brute_force_min_zone(tree: &Tree, budget: &EnumerationBudget) -> Result<VertexSet, OracleError> {
    let zones = brute_force_all_zones(tree, budget)?;
    let verts: Vec<Vertex> = tree.vertices().collect();
    Ok(zones
        .into_iter()
        .map(|m| set_from_bits(m, &verts))
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.as_slice().cmp(b.as_slice())))
        .expect("the full vertex set is a zone"))
}

/// Edges of the labeled tree with this Prüfer sequence on `n` vertices.
pub fn prufer_decode(seq: &[u32], n: usize) -> Result<Vec<(u32, u32)>, OracleError> {
    if n < 2 {
        return if seq.is_empty() {
            Ok(Vec::new())
        } else {
            Err(OracleError::BadPrufer("too long".into()))
        };
    }
    if seq.len() != n - 2 {
        return Err(OracleError::BadPrufer(format!(
            "expected {} entries, got {}",
            n - 2,
            seq.len()
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x == 0 || x as usize > n) {
        return Err(OracleError::BadPrufer(format!("entry {bad} out of range")));
    }
    let mut degree = vec![1u32; n + 1];
    for &x in seq {
        degree[x as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (1..=n).find(|&l| degree[l] == 1).expect("a leaf exists") as u32;
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf as usize] -= 1;
        degree[x as usize] -= 1;
    }
    let rest: Vec<u32> = (1..=n as u32).filter(|&l| degree[l as usize] == 1).collect();
    edges.push((rest[0], rest[1]));
    Ok(edges)
}

/// Prüfer sequence of a tree (by vertex labels).
pub fn prufer_encode(tree: &Tree) -> Vec<u32> {
    let n = tree.n();
    if n <= 2 {
        return Vec::new();
    }
    let mut degree: Vec<usize> = (0..n).map(|i| tree.degree(Vertex::from_index(i))).collect();
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let leaf = (0..n).find(|&l| !removed[l] && degree[l] == 1).expect("a leaf exists");
        removed[leaf] = true;
        let nb = tree
            .neighbors(Vertex::from_index(leaf))
            .find(|x| !removed[x.index()])
            .expect("leaf has a neighbour");
        degree[nb.index()] -= 1;
        seq.push(nb.label());
    }
    seq
}

/// All `n^(n-2)` labeled trees on `n ≤ 9` vertices with identity IDs, in
/// Prüfer order.
pub fn enumerate_small_trees(n: usize) -> Result<impl Iterator<Item = Tree>, OracleError> {
    if n == 0 || n > 9 {
        return Err(OracleError::TreeEnumerationTooLarge(n));
    }
    let len = n.saturating_sub(2);
    let total = (n as u64).pow(len as u32);
    Ok((0..total).map(move |code| {
        let mut seq = vec![0u32; len];
        let mut c = code;
        for slot in seq.iter_mut().rev() {
            *slot = (c % n as u64) as u32 + 1;
            c /= n as u64;
        }
        let edges = prufer_decode(&seq, n).expect("valid sequence");
        Tree::from_edges(n, &edges, None).expect("Prüfer trees are valid")
    }))
}

/// The fixed ID permutations used alongside every enumerated tree:
/// identity, reversed, and one seeded shuffle.
pub fn scrambled_id_perms(n: usize) -> Vec<Vec<u32>> {
    let identity: Vec<u32> = (1..=n as u32).collect();
    let reversed: Vec<u32> = identity.iter().rev().copied().collect();
    let mut shuffled = identity.clone();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed + n as u64));
    vec![identity, reversed, shuffled]
}

/// Every tree from [`enumerate_small_trees`] under each of
/// [`scrambled_id_perms`].
pub fn enumerate_small_trees_with_ids(n: usize) -> Result<impl Iterator<Item = Tree>, OracleError> {
    let perms = scrambled_id_perms(n);
    Ok(enumerate_small_trees(n)?.flat_map(move |t| {
        perms
            .clone()
            .into_iter()
            .map(move |ids| t.with_ids(ids).expect("permutation"))
    }))
}

/// Uniform random labeled tree with a random ID permutation.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Tree {
    let seq: Vec<u32> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(1..=n as u32)).collect();
    let edges = prufer_decode(&seq, n).expect("valid sequence");
    let mut ids: Vec<u32> = (1..=n as u32).collect();
    ids.shuffle(rng);
    Tree::from_edges(n, &edges, Some(ids)).expect("Prüfer trees are valid")
}

/// Stand-alone IRV under the default tie rules, sharing no code with the
/// election engine. Vertices are 1-based labels; returns the winner label.
pub fn micro_irv(n: usize, edges: &[(u32, u32)], ids: &[u32], candidates: &[u32]) -> u32 {
    let mut adj = vec![Vec::new(); n + 1];
    for &(a, b) in edges {
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
    }
    // distances from each candidate
    let dist: Vec<Vec<usize>> = candidates
        .iter()
        .map(|&c| {
            let mut d = vec![usize::MAX; n + 1];
            let mut queue = std::collections::VecDeque::from([c as usize]);
            d[c as usize] = 0;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if d[y] == usize::MAX {
                        d[y] = d[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            d
        })
        .collect();
    let id = |c: u32| ids[c as usize - 1];
    let mut alive: Vec<usize> = (0..candidates.len()).collect();
    while alive.len() > 1 {
        let mut votes = vec![0usize; candidates.len()];
        for voter in 1..=n {
            let best = *alive
                .iter()
                .min_by_key(|&&i| (dist[i].get(voter), id(candidates[i])))
                .unwrap();
            votes[best] += 1;
        }
        let loser = *alive
            .iter()
            .min_by_key(|&&i| (votes[i], std::cmp::Reverse(id(candidates[i]))))
            .unwrap();
        alive.retain(|&i| i != loser);
    }
    candidates[alive[0]]
}
