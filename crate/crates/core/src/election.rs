//! Deterministic instant-runoff voting on a tree.
//!
//! Every vertex hosts one voter. A voter ranks candidates by distance, with
//! distance ties broken by the policy's voter-side priority (by default the
//! smaller ID is preferred). Each round every voter supports their best
//! remaining candidate and the candidate with the fewest votes is eliminated;
//! last-place ties go to the policy's elimination priority (by default the
//! largest ID is eliminated).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distortion::social_cost;
use crate::tree::{Tree, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElectionError {
    #[error("candidate set is empty")]
    NoCandidates,
    #[error("candidate {0} is not a vertex of the tree")]
    UnknownCandidate(Vertex),
    #[error("a pairwise election needs two distinct candidates, got {0} twice")]
    SameCandidate(Vertex),
    #[error("{which} order is not a permutation of the {n} vertices")]
    BadOrder { which: &'static str, n: usize },
    #[error("unknown policy preset {0:?} (expected default, reverse, prop2 or prop3)")]
    UnknownPreset(String),
}

/// Named tie policies. `Default` is the only one the zone algorithms accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyPreset {
    /// Smaller ID preferred by voters; largest ID eliminated.
    Default,
    /// Larger ID preferred by voters; smallest ID eliminated.
    Reverse,
    /// Ties go against the candidate with the smaller social cost, for
    /// voters and for elimination alike. On the 9-vertex path with
    /// candidates {1,5,9} this breaks every tie against the middle.
    Prop2,
    /// Voters favour lower-degree vertices (leaves) on ties; among tied last
    /// places the higher-degree vertex (hub) is eliminated first.
    Prop3,
}

impl PolicyPreset {
    pub const ALL: [PolicyPreset; 4] = [
        PolicyPreset::Default,
        PolicyPreset::Reverse,
        PolicyPreset::Prop2,
        PolicyPreset::Prop3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyPreset::Default => "default",
            PolicyPreset::Reverse => "reverse",
            PolicyPreset::Prop2 => "prop2",
            PolicyPreset::Prop3 => "prop3",
        }
    }
}

impl fmt::Display for PolicyPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyPreset {
    type Err = ElectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolicyPreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| ElectionError::UnknownPreset(s.to_string()))
    }
}

/// The two deterministic tie rules, stored as per-vertex ranks.
///
/// `voter_rank[v]`: smaller is preferred when distances tie.
/// `elimination_rank[v]`: smaller is eliminated first among last places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiePolicy {
    voter_rank: Vec<u32>,
    elimination_rank: Vec<u32>,
}

impl TiePolicy {
    /// Smaller ID preferred; largest ID eliminated.
    pub fn default_for(tree: &Tree) -> TiePolicy {
        let n = tree.n() as u32;
        TiePolicy {
            voter_rank: tree.ids().to_vec(),
            elimination_rank: tree.ids().iter().map(|&id| n + 1 - id).collect(),
        }
    }

    /// Builds a policy from two priority lists over all vertices:
    /// `voter_order` lists the most preferred vertex first, and
    /// `elimination_order` lists the vertex eliminated first first.
    pub fn from_orders(
        n: usize,
        voter_order: &[Vertex],
        elimination_order: &[Vertex],
    ) -> Result<TiePolicy, ElectionError> {
        Ok(TiePolicy {
            voter_rank: ranks_of(n, voter_order, "voter")?,
            elimination_rank: ranks_of(n, elimination_order, "elimination")?,
        })
    }

    pub fn preset(preset: PolicyPreset, tree: &Tree) -> TiePolicy {
        let mut verts: Vec<Vertex> = tree.vertices().collect();
        match preset {
            PolicyPreset::Default => TiePolicy::default_for(tree),
            PolicyPreset::Reverse => {
                verts.sort_by_key(|&x| std::cmp::Reverse(tree.id(x)));
                let voter = verts.clone();
                verts.reverse();
                TiePolicy::from_orders(tree.n(), &voter, &verts).expect("permutation")
            }
            PolicyPreset::Prop2 => {
                let sc: Vec<u64> = tree.vertices().map(|x| social_cost(tree, x)).collect();
                // voters: larger social cost first
                verts.sort_by_key(|&x| (std::cmp::Reverse(sc[x.index()]), tree.id(x)));
                let voter = verts.clone();
                // elimination: smaller social cost first, larger ID first
                verts.sort_by_key(|&x| (sc[x.index()], std::cmp::Reverse(tree.id(x))));
                TiePolicy::from_orders(tree.n(), &voter, &verts).expect("permutation")
            }
            PolicyPreset::Prop3 => {
                verts.sort_by_key(|&x| (tree.degree(x), tree.id(x)));
                let voter = verts.clone();
                verts.sort_by_key(|&x| (std::cmp::Reverse(tree.degree(x)), std::cmp::Reverse(tree.id(x))));
                TiePolicy::from_orders(tree.n(), &voter, &verts).expect("permutation")
            }
        }
    }

    pub fn is_default_for(&self, tree: &Tree) -> bool {
        *self == TiePolicy::default_for(tree)
    }

    pub fn n(&self) -> usize {
        self.voter_rank.len()
    }

    #[inline]
    pub fn voter_rank(&self, c: Vertex) -> u32 {
        self.voter_rank[c.index()]
    }

    #[inline]
    pub fn elimination_rank(&self, c: Vertex) -> u32 {
        self.elimination_rank[c.index()]
    }
}

fn ranks_of(n: usize, order: &[Vertex], which: &'static str) -> Result<Vec<u32>, ElectionError> {
    let mut rank = vec![u32::MAX; n];
    if order.len() != n {
        return Err(ElectionError::BadOrder { which, n });
    }
    for (r, &x) in order.iter().enumerate() {
        if x.index() >= n || rank[x.index()] != u32::MAX {
            return Err(ElectionError::BadOrder { which, n });
        }
        rank[x.index()] = r as u32 + 1;
    }
    Ok(rank)
}

/// `(distance, tie rank)`; smaller keys are preferred.
pub fn preference_key(tree: &Tree, voter: Vertex, candidate: Vertex, policy: &TiePolicy) -> (u32, u32) {
    (tree.dist(voter, candidate), policy.voter_rank(candidate))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    /// Vote counts of the candidates still standing, in vertex order.
    pub tally: Vec<(Vertex, u32)>,
    pub eliminated: Vertex,
}

/// Round-by-round record of one election.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElectionTrace {
    pub candidates: VertexSet,
    pub rounds: Vec<Round>,
    pub winner: Vertex,
}

impl ElectionTrace {
    /// Round (1-based) in which `c` was eliminated, if it was.
    pub fn elimination_round(&self, c: Vertex) -> Option<usize> {
        self.rounds.iter().position(|r| r.eliminated == c).map(|i| i + 1)
    }
}

impl fmt::Display for ElectionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "candidates {}", self.candidates)?;
        for (i, round) in self.rounds.iter().enumerate() {
            write!(f, "round {}:", i + 1)?;
            for (c, votes) in &round.tally {
                write!(f, " {c}={votes}")?;
            }
            writeln!(f, " eliminated {}", round.eliminated)?;
        }
        writeln!(f, "winner {}", self.winner)
    }
}

/// Runs IRV to completion.
pub fn run_irv(tree: &Tree, candidates: &VertexSet, policy: &TiePolicy) -> Result<ElectionTrace, ElectionError> {
    if candidates.is_empty() {
        return Err(ElectionError::NoCandidates);
    }
    if let Some(c) = candidates.iter().find(|&c| !tree.contains(c)) {
        return Err(ElectionError::UnknownCandidate(c));
    }
    let mut remaining: Vec<Vertex> = candidates.iter().collect();
    let mut rounds = Vec::with_capacity(remaining.len() - 1);
    let mut votes = vec![0u32; remaining.len()];
    while remaining.len() > 1 {
        plurality_tally(tree, &remaining, policy, &mut votes);
        let loser = last_place(&remaining, &votes, policy);
        rounds.push(Round {
            tally: remaining.iter().copied().zip(votes.iter().copied()).collect(),
            eliminated: remaining[loser],
        });
        remaining.remove(loser);
        votes.pop();
    }
    Ok(ElectionTrace {
        candidates: candidates.clone(),
        rounds,
        winner: remaining[0],
    })
}

/// First-choice counts of every voter over `remaining`, written into `votes`.
pub(crate) fn plurality_tally(tree: &Tree, remaining: &[Vertex], policy: &TiePolicy, votes: &mut [u32]) {
    votes.iter_mut().for_each(|x| *x = 0);
    for voter in tree.vertices() {
        let best = (0..remaining.len())
            .min_by_key(|&i| preference_key(tree, voter, remaining[i], policy))
            .expect("nonempty");
        votes[best] += 1;
    }
}

/// Index of the candidate eliminated under `votes`.
pub(crate) fn last_place(remaining: &[Vertex], votes: &[u32], policy: &TiePolicy) -> usize {
    (0..remaining.len())
        .min_by_key(|&i| (votes[i], policy.elimination_rank(remaining[i])))
        .expect("nonempty")
}

/// Winner of the two-candidate election `{x, y}`.
pub fn pairwise_winner(tree: &Tree, x: Vertex, y: Vertex, policy: &TiePolicy) -> Result<Vertex, ElectionError> {
    if x == y {
        return Err(ElectionError::SameCandidate(x));
    }
    let set: VertexSet = [x, y].into_iter().collect();
    Ok(run_irv(tree, &set, policy)?.winner)
}
