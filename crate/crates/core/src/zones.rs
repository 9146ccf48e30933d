//! Exclusion zones: sets `S` such that whenever some candidate lies in `S`
//! the winner lies in `S`.
//!
//! `S` is a zone iff no `u ∈ S` can be killed using opponents from `V \ S`.
//! Every zone is closed under pairwise loss, and every nonempty zone is the
//! closure of one of its vertices, so the candidates are the `n` singleton
//! closures of the pairwise-loss tournament. Everything here uses the
//! default tie rules.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::election::{pairwise_winner, run_irv, TiePolicy};
use crate::kill::{kill_dp, KillQuery, KillVerdict};
use crate::tree::{Tree, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZoneError {
    #[error("zone must be nonempty")]
    EmptyZone,
    #[error("closure seed must be nonempty")]
    EmptySeed,
    #[error("vertex {0} is not in the tree")]
    UnknownVertex(Vertex),
    #[error("zone computations require the default tie policy")]
    NonDefaultPolicy,
    #[error("internal error: refutation {0} does not replay to a winner outside the zone")]
    UncertifiedRefutation(VertexSet),
}

/// Rejects policies other than the default one.
pub fn require_default_policy(tree: &Tree, policy: &TiePolicy) -> Result<(), ZoneError> {
    if policy.is_default_for(tree) {
        Ok(())
    } else {
        Err(ZoneError::NonDefaultPolicy)
    }
}

/// The pairwise-loss tournament: `x → y` when `x` loses `{x, y}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tournament {
    n: usize,
    loses_to: Vec<Vec<bool>>,
}

impl Tournament {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether `x → y`.
    pub fn has_edge(&self, x: Vertex, y: Vertex) -> bool {
        self.loses_to[x.index()][y.index()]
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.loses_to[x][y] {
                    out.push((Vertex::from_index(x), Vertex::from_index(y)));
                }
            }
        }
        out
    }

    pub fn out_neighbors(&self, x: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.loses_to[x.index()]
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e)
            .map(|(y, _)| Vertex::from_index(y))
    }

    /// No edge leaves `set`.
    pub fn is_closed(&self, set: &VertexSet) -> bool {
        set.iter().all(|x| self.out_neighbors(x).all(|y| set.contains(y)))
    }
}

pub fn build_loss_graph(tree: &Tree) -> Tournament {
    let n = tree.n();
    let policy = TiePolicy::default_for(tree);
    let mut loses_to = vec![vec![false; n]; n];
    for (vx, vy) in (0..n).flat_map(|x| (x + 1..n).map(move |y| (Vertex::from_index(x), Vertex::from_index(y)))) {
        let (loser, winner) = match pairwise_winner(tree, vx, vy, &policy).expect("distinct") {
            w if w == vy => (vx, vy),
            _ => (vy, vx),
        };
        loses_to[loser.index()][winner.index()] = true;
    }
    Tournament { n, loses_to }
}

/// Vertices reachable from `seed`.
pub fn closure(tournament: &Tournament, seed: &VertexSet) -> Result<VertexSet, ZoneError> {
    if seed.is_empty() {
        return Err(ZoneError::EmptySeed);
    }
    if let Some(x) = seed.iter().find(|x| x.index() >= tournament.n) {
        return Err(ZoneError::UnknownVertex(x));
    }
    let mut seen = vec![false; tournament.n];
    let mut queue: VecDeque<Vertex> = seed.iter().collect();
    for x in seed.iter() {
        seen[x.index()] = true;
    }
    while let Some(x) = queue.pop_front() {
        for y in tournament.out_neighbors(x) {
            if !seen[y.index()] {
                seen[y.index()] = true;
                queue.push_back(y);
            }
        }
    }
    Ok(VertexSet::all(tournament.n)
        .iter()
        .filter(|x| seen[x.index()])
        .collect())
}

/// A candidate set that beats the zone, replayed through the election engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub u: Vertex,
    pub candidates: VertexSet,
    pub winner: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZoneReport {
    pub zone: VertexSet,
    pub is_zone: bool,
    /// Kill verdict of every member against `V \ zone`, in vertex order.
    pub per_vertex: Vec<(Vertex, KillVerdict)>,
    pub refutation: Option<Refutation>,
}

/// Checks a zone with one Kill query per member.
pub fn verify_zone(tree: &Tree, zone: &VertexSet) -> Result<ZoneReport, ZoneError> {
    if zone.is_empty() {
        return Err(ZoneError::EmptyZone);
    }
    if let Some(x) = zone.iter().find(|&x| !tree.contains(x)) {
        return Err(ZoneError::UnknownVertex(x));
    }
    let outside = zone.complement(tree.n());
    let members: Vec<Vertex> = zone.iter().collect();
    let per_vertex: Vec<(Vertex, KillVerdict)> = members
        .par_iter()
        .map(|&u| {
            let q = KillQuery::new(tree, u, outside.clone()).expect("u is not outside the zone");
            (u, kill_dp(&q))
        })
        .collect();

    let refutation = match per_vertex.iter().find(|(_, v)| v.result) {
        None => None,
        Some((u, verdict)) => {
            let candidates = verdict.witness.clone().expect("true verdicts carry a witness");
            let trace = run_irv(tree, &candidates, &TiePolicy::default_for(tree)).expect("nonempty");
            if zone.contains(trace.winner) {
                return Err(ZoneError::UncertifiedRefutation(candidates));
            }
            Some(Refutation {
                u: *u,
                candidates,
                winner: trace.winner,
            })
        }
    };
    Ok(ZoneReport {
        zone: zone.clone(),
        is_zone: refutation.is_none(),
        per_vertex,
        refutation,
    })
}

fn by_size_then_lex(a: &VertexSet, b: &VertexSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.as_slice().cmp(b.as_slice()))
}

/// Distinct singleton closures, smallest first (ties lexicographic).
pub fn singleton_closures(tournament: &Tournament) -> Vec<VertexSet> {
    let distinct: BTreeSet<VertexSet> = (0..tournament.n)
        .map(|x| {
            let seed: VertexSet = [Vertex::from_index(x)].into_iter().collect();
            closure(tournament, &seed).expect("nonempty seed")
        })
        .collect();
    let mut out: Vec<VertexSet> = distinct.into_iter().collect();
    out.sort_by(by_size_then_lex);
    out
}

/// A zone of minimum size; among equal sizes the lexicographically smallest.
pub fn min_zone(tree: &Tree) -> VertexSet {
    let tournament = build_loss_graph(tree);
    for cand in singleton_closures(&tournament) {
        if verify_zone(tree, &cand).expect("valid zone").is_zone {
            return cand;
        }
    }
    unreachable!("the full vertex set is always a zone")
}

/// Every nonempty zone, sorted by size.
pub fn enumerate_zones(tree: &Tree) -> Vec<VertexSet> {
    let tournament = build_loss_graph(tree);
    let zones: Vec<VertexSet> = singleton_closures(&tournament)
        .into_iter()
        .filter(|c| verify_zone(tree, c).expect("valid zone").is_zone)
        .collect();
    for (i, j) in nesting_violations(&zones) {
        log::warn!(
            "zones {} and {} are not nested on tree {:?}",
            zones[i],
            zones[j],
            tree.to_text()
        );
    }
    zones
}

/// Pairs of zones where neither contains the other.
pub fn nesting_violations(zones: &[VertexSet]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..zones.len() {
        for j in i + 1..zones.len() {
            if !zones[i].is_subset(&zones[j]) && !zones[j].is_subset(&zones[i]) {
                out.push((i, j));
            }
        }
    }
    out
}
