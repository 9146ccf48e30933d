//! `Kill(T, u, A)`: can `u` be made to lose when every opponent is drawn
//! from `A`?
//!
//! It suffices to decide whether `u` can be eliminated in round 1 by an
//! antichain of opponents (rooted at `u`). The tree is rooted at `u` and,
//! bottom-up, every subtree `T_x` gets one table per outside representative
//! `e ∉ T_x` (the best candidate outside `T_x` as seen from `x`; every voter
//! in `T_x` ranks outside candidates the same way). A table holds the
//! feasible round-1 summaries [`DpSummary`] of the voters in `T_x`.
//!
//! Children are merged with a knapsack over the vote totals of the two
//! internal candidates that can receive votes across child subtrees (`r1`,
//! the best internal candidate seen from `x`, and `r2`, the best one outside
//! `r1`'s child subtree), the votes leaving to `e`, and the minimum over all
//! other internal candidates. Every emitted tuple keeps one predecessor so a
//! witness candidate set can be read back.

use std::collections::hash_map::Entry;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::election::{run_irv, TiePolicy};
use crate::tree::{RootedView, Tree, Vertex, VertexSet};

const NONE: u16 = u16::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KillError {
    #[error("designated vertex {0} is not in the tree")]
    UnknownVertex(Vertex),
    #[error("designated vertex {0} may not be in the allowed set")]
    DesignatedAllowed(Vertex),
    #[error("tree too large for the Kill DP ({0} vertices)")]
    TooLarge(usize),
    #[error("outside representative {e} lies inside the subtree of {x}")]
    RepresentativeInside { x: Vertex, e: Vertex },
    #[error("internal error: missing table for child {child} with representative {e}")]
    MissingChildEntry { child: Vertex, e: Vertex },
}

/// A `Kill` instance. `allowed` never contains `u`.
#[derive(Clone, Debug)]
pub struct KillQuery<'t> {
    pub tree: &'t Tree,
    pub u: Vertex,
    pub allowed: VertexSet,
}

impl<'t> KillQuery<'t> {
    pub fn new(tree: &'t Tree, u: Vertex, allowed: VertexSet) -> Result<Self, KillError> {
        if !tree.contains(u) {
            return Err(KillError::UnknownVertex(u));
        }
        if let Some(bad) = allowed.iter().find(|&x| !tree.contains(x)) {
            return Err(KillError::UnknownVertex(bad));
        }
        if allowed.contains(u) {
            return Err(KillError::DesignatedAllowed(u));
        }
        if tree.n() >= NONE as usize - 1 {
            return Err(KillError::TooLarge(tree.n()));
        }
        Ok(KillQuery { tree, u, allowed })
    }
}

/// Round-1 summary of the voters of one subtree, relative to an outside
/// representative. `m_rest` uses `n + 1` for "no rest candidate" and
/// `max_rest_id` uses `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DpSummary {
    pub r1: Option<Vertex>,
    pub v1: u32,
    pub r2: Option<Vertex>,
    pub v2: u32,
    pub m_rest: u32,
    pub max_rest_id: u32,
    pub a: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillVerdict {
    pub result: bool,
    /// Present iff `result`: a candidate set containing `u` that eliminates
    /// `u` in round 1.
    pub witness: Option<VertexSet>,
}

/// Work counters of one DP run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillStats {
    pub tables: usize,
    pub outer_tuples: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct KillOptions {
    /// Compute the tables of one vertex in parallel over representatives.
    pub parallel: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Packed {
    r1: u16,
    v1: u16,
    r2: u16,
    v2: u16,
    m: u16,
    mm: u16,
    a: u16,
}

#[derive(Clone, Copy, Debug)]
struct Pick {
    child: u16,
    e: u16,
    entry: u32,
}

#[derive(Clone, Debug)]
enum Origin {
    /// No internal candidates were placed.
    Nothing,
    /// A candidate sits at the subtree root; nothing below it.
    Placed,
    Merge(Box<[Pick]>),
}

/// All feasible summaries for one `(x, e)` pair.
#[derive(Clone, Debug, Default)]
pub struct DpTable {
    entries: Vec<Packed>,
    origins: Vec<Origin>,
    index: FxHashMap<Packed, u32>,
}

impl DpTable {
    fn push(&mut self, t: Packed, origin: impl FnOnce() -> Origin) -> bool {
        if self.index.contains_key(&t) {
            return false;
        }
        self.index.insert(t, self.entries.len() as u32);
        self.entries.push(t);
        self.origins.push(origin());
        true
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn summaries(&self) -> Vec<DpSummary> {
        self.entries.iter().map(|&t| unpack(t)).collect()
    }

    pub fn contains(&self, s: &DpSummary) -> bool {
        self.index.contains_key(&pack(s))
    }
}

fn unpack(t: Packed) -> DpSummary {
    let opt = |r: u16| (r != NONE).then(|| Vertex::from_index(r as usize));
    DpSummary {
        r1: opt(t.r1),
        v1: t.v1 as u32,
        r2: opt(t.r2),
        v2: t.v2 as u32,
        m_rest: t.m as u32,
        max_rest_id: t.mm as u32,
        a: t.a as u32,
    }
}

fn pack(s: &DpSummary) -> Packed {
    let idx = |r: Option<Vertex>| r.map_or(NONE, |x| x.index() as u16);
    Packed {
        r1: idx(s.r1),
        v1: s.v1 as u16,
        r2: idx(s.r2),
        v2: s.v2 as u16,
        m: s.m_rest as u16,
        mm: s.max_rest_id as u16,
        a: s.a as u16,
    }
}

/// Tables computed so far, keyed by `(x, e)`.
#[derive(Clone, Debug)]
pub struct DpTables {
    n: usize,
    slots: Vec<Option<DpTable>>,
}

impl DpTables {
    pub fn new(n: usize) -> Self {
        DpTables {
            n,
            slots: vec![None; n * n],
        }
    }

    pub fn get(&self, x: Vertex, e: Vertex) -> Option<&DpTable> {
        self.get_idx(x.index(), e.index())
    }

    pub fn insert(&mut self, x: Vertex, e: Vertex, table: DpTable) {
        self.slots[x.index() * self.n + e.index()] = Some(table);
    }

    fn get_idx(&self, x: usize, e: usize) -> Option<&DpTable> {
        self.slots[x * self.n + e].as_ref()
    }

    /// `(x, e, table)` for every computed table.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex, &DpTable)> + '_ {
        self.slots.iter().enumerate().filter_map(move |(i, t)| {
            t.as_ref()
                .map(|t| (Vertex::from_index(i / self.n), Vertex::from_index(i % self.n), t))
        })
    }

    pub fn stats(&self) -> KillStats {
        let mut st = KillStats::default();
        for t in self.slots.iter().flatten() {
            st.tables += 1;
            st.outer_tuples += t.len();
        }
        st
    }
}

/// The query rooted at `u`, with the data the recurrences need.
#[derive(Clone, Debug)]
pub struct KillContext<'t> {
    tree: &'t Tree,
    view: RootedView,
    u: usize,
    allowed: Vec<bool>,
    inf: u16,
}

impl<'t> KillContext<'t> {
    pub fn new(query: &KillQuery<'t>) -> Self {
        let tree = query.tree;
        KillContext {
            tree,
            view: tree.root_at(query.u).expect("validated"),
            u: query.u.index(),
            allowed: query.allowed.to_mask_vec(tree.n()),
            inf: tree.n() as u16 + 1,
        }
    }

    pub fn view(&self) -> &RootedView {
        &self.view
    }

    /// `(d(w, c), id(c))` packed so that integer order is key order.
    #[inline]
    fn key(&self, w: usize, c: usize) -> u64 {
        (self.tree.dist_idx(w, c) as u64) << 32 | self.tree.id_idx(c) as u64
    }

    /// The better of `e` and `other` as seen from `w`; `other` may be NONE.
    #[inline]
    fn best_of(&self, w: usize, e: usize, other: u16) -> usize {
        if other == NONE || self.key(w, e) < self.key(w, other as usize) {
            e
        } else {
            other as usize
        }
    }

    #[inline]
    fn id16(&self, c: u16) -> u16 {
        self.tree.id_idx(c as usize) as u16
    }

    fn check_outside(&self, x: usize, e: usize) -> Result<(), KillError> {
        if self.view.in_subtree_idx(x, e) {
            return Err(KillError::RepresentativeInside {
                x: Vertex::from_index(x),
                e: Vertex::from_index(e),
            });
        }
        Ok(())
    }

    fn empty_tuple(&self, x: usize) -> Packed {
        Packed {
            r1: NONE,
            v1: 0,
            r2: NONE,
            v2: 0,
            m: self.inf,
            mm: 0,
            a: self.view.size_idx(x) as u16,
        }
    }

    /// Representatives that the recurrences can request for `x ≠ u`:
    /// `u` plus the allowed vertices of the enclosing root branch outside
    /// `T_x`.
    fn demanded_representatives(&self, x: usize) -> Vec<usize> {
        let mut branch = x;
        while self.view.parent_idx(branch) != self.u {
            branch = self.view.parent_idx(branch);
        }
        let mut out = vec![self.u];
        out.extend(
            (0..self.tree.n())
                .filter(|&c| self.allowed[c] && self.view.in_subtree_idx(branch, c) && !self.view.in_subtree_idx(x, c)),
        );
        out
    }
}

#[inline]
fn min_combine(a: (u16, u16), b: (u16, u16)) -> (u16, u16) {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => (a.0, a.1.max(b.1)),
    }
}

/// Summaries of a leaf `x` against representative `e`.
pub fn dp_leaf_case(ctx: &KillContext<'_>, x: Vertex, e: Vertex) -> Result<DpTable, KillError> {
    ctx.check_outside(x.index(), e.index())?;
    Ok(leaf_table(ctx, x.index()))
}

fn leaf_table(ctx: &KillContext<'_>, x: usize) -> DpTable {
    let mut table = DpTable::default();
    table.push(ctx.empty_tuple(x), || Origin::Nothing);
    if ctx.allowed[x] {
        table.push(
            Packed {
                r1: x as u16,
                v1: 1,
                r2: NONE,
                v2: 0,
                m: ctx.inf,
                mm: 0,
                a: 0,
            },
            || Origin::Placed,
        );
    }
    table
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Agg {
    v1: u16,
    v2: u16,
    a: u16,
    m: u16,
    mm: u16,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Contribution {
    d1: u16,
    d2: u16,
    de: u16,
    m: u16,
    mm: u16,
}

#[derive(Default)]
struct Scratch {
    layers: Vec<Vec<(Agg, u32, u32)>>,
    seen: FxHashMap<Agg, u32>,
    contribs: Vec<(Contribution, u32)>,
    contrib_seen: FxHashMap<Contribution, ()>,
    reps: Vec<usize>,
}

/// Summaries of an internal vertex `x` against representative `e`, from the
/// child tables already in `tables`.
pub fn dp_merge(ctx: &KillContext<'_>, x: Vertex, e: Vertex, tables: &DpTables) -> Result<DpTable, KillError> {
    let (x, e) = (x.index(), e.index());
    ctx.check_outside(x, e)?;
    merge_table(ctx, x, e, tables, &mut Scratch::default())
}

fn merge_table(
    ctx: &KillContext<'_>,
    x: usize,
    e: usize,
    tables: &DpTables,
    scratch: &mut Scratch,
) -> Result<DpTable, KillError> {
    let view = &ctx.view;
    let children = view.children_idx(x);
    if children.is_empty() {
        return Ok(leaf_table(ctx, x));
    }
    let lookup = |y: usize, ey: usize| {
        tables.get_idx(y, ey).ok_or(KillError::MissingChildEntry {
            child: Vertex::from_index(y),
            e: Vertex::from_index(ey),
        })
    };
    let mut out = DpTable::default();

    // A candidate at x: nothing may be placed below it, and every voter of
    // T_x, whose outside representative is then x itself, votes for x.
    if ctx.allowed[x] {
        let mut below = 0u16;
        for &y in children {
            let empty = ctx.empty_tuple(y);
            if !lookup(y, x)?.index.contains_key(&empty) {
                return Err(KillError::MissingChildEntry {
                    child: Vertex::from_index(y),
                    e: Vertex::from_index(x),
                });
            }
            below += empty.a;
        }
        out.push(
            Packed {
                r1: x as u16,
                v1: 1 + below,
                r2: NONE,
                v2: 0,
                m: ctx.inf,
                mm: 0,
                a: 0,
            },
            || Origin::Placed,
        );
    }

    // No candidate at x: choose the global (r1, r2) and merge the children.
    let inner: Vec<(usize, usize)> = children
        .iter()
        .enumerate()
        .flat_map(|(ci, &y)| {
            (0..ctx.tree.n())
                .filter(move |&c| ctx.allowed[c] && view.in_subtree_idx(y, c))
                .map(move |c| (c, ci))
        })
        .collect();

    knapsack(ctx, x, e, NONE, usize::MAX, NONE, tables, scratch, &mut out)?;
    for &(r1, star) in &inner {
        knapsack(ctx, x, e, r1 as u16, star, NONE, tables, scratch, &mut out)?;
        let k1 = ctx.key(x, r1);
        for &(r2, ci) in &inner {
            if ci != star && ctx.key(x, r2) > k1 {
                knapsack(ctx, x, e, r1 as u16, star, r2 as u16, tables, scratch, &mut out)?;
            }
        }
    }
    Ok(out)
}

/// One merge for a fixed global `(r1, r2)`; `star` is the position of the
/// child holding `r1`.
#[allow(clippy::too_many_arguments)]
fn knapsack(
    ctx: &KillContext<'_>,
    x: usize,
    e: usize,
    r1: u16,
    star: usize,
    r2: u16,
    tables: &DpTables,
    scratch: &mut Scratch,
    out: &mut DpTable,
) -> Result<(), KillError> {
    let view = &ctx.view;
    let children = view.children_idx(x);
    let r2_key = (r2 != NONE).then(|| ctx.key(x, r2 as usize));
    let Scratch {
        layers,
        seen,
        contribs,
        contrib_seen,
        reps,
    } = scratch;
    layers.resize_with(children.len() + 1, Vec::new);
    layers[0].clear();
    layers[0].push((
        Agg {
            v1: 0,
            v2: 0,
            a: 0,
            m: ctx.inf,
            mm: 0,
        },
        u32::MAX,
        u32::MAX,
    ));
    reps.clear();

    for (ci, &y) in children.iter().enumerate() {
        let holds_r2 = r2 != NONE && view.in_subtree_idx(y, r2 as usize);
        let ey = if r1 == NONE {
            e
        } else if ci == star {
            ctx.best_of(y, e, r2)
        } else {
            ctx.best_of(y, e, r1)
        };
        reps.push(ey);
        let table = tables.get_idx(y, ey).ok_or(KillError::MissingChildEntry {
            child: Vertex::from_index(y),
            e: Vertex::from_index(ey),
        })?;

        contribs.clear();
        contrib_seen.clear();
        for (idx, t) in table.entries.iter().enumerate() {
            let consistent = if r1 == NONE {
                t.r1 == NONE
            } else if ci == star {
                t.r1 == r1
            } else if holds_r2 {
                t.r1 == r2
            } else {
                t.r1 == NONE || r2_key.is_some_and(|k2| ctx.key(x, t.r1 as usize) > k2)
            };
            if !consistent {
                continue;
            }
            let mut c = Contribution {
                d1: 0,
                d2: 0,
                de: 0,
                m: ctx.inf,
                mm: 0,
            };
            if ey == e {
                c.de = t.a;
            } else if ey == r1 as usize {
                c.d1 = t.a;
            } else {
                c.d2 = t.a;
            }
            let mut rest = (t.m, t.mm);
            for (rc, vc) in [(t.r1, t.v1), (t.r2, t.v2)] {
                if rc == NONE {
                    continue;
                }
                if rc == r1 {
                    c.d1 += vc;
                } else if rc == r2 {
                    c.d2 += vc;
                } else {
                    rest = min_combine(rest, (vc, ctx.id16(rc)));
                }
            }
            (c.m, c.mm) = rest;
            if contrib_seen.insert(c, ()).is_none() {
                contribs.push((c, idx as u32));
            }
        }
        if contribs.is_empty() {
            return Ok(());
        }

        let (done, rest) = layers.split_at_mut(ci + 1);
        let prev = &done[ci];
        let next = &mut rest[0];
        next.clear();
        seen.clear();
        for (pi, &(s, _, _)) in prev.iter().enumerate() {
            for &(c, entry) in contribs.iter() {
                let (m, mm) = min_combine((s.m, s.mm), (c.m, c.mm));
                let ns = Agg {
                    v1: s.v1 + c.d1,
                    v2: s.v2 + c.d2,
                    a: s.a + c.de,
                    m,
                    mm,
                };
                if let Entry::Vacant(slot) = seen.entry(ns) {
                    slot.insert(next.len() as u32);
                    next.push((ns, pi as u32, entry));
                }
            }
        }
    }

    let voter_to_e = r1 == NONE || ctx.best_of(x, e, r1) == e;
    let last = &layers[children.len()];
    for (fi, &(s, _, _)) in last.iter().enumerate() {
        let t = Packed {
            r1,
            v1: s.v1 + u16::from(!voter_to_e),
            r2,
            v2: s.v2,
            m: s.m,
            mm: s.mm,
            a: s.a + u16::from(voter_to_e),
        };
        out.push(t, || {
            let mut picks = vec![
                Pick {
                    child: 0,
                    e: 0,
                    entry: 0
                };
                children.len()
            ];
            let mut at = fi as u32;
            for ci in (0..children.len()).rev() {
                let (_, prev, entry) = layers[ci + 1][at as usize];
                picks[ci] = Pick {
                    child: children[ci] as u16,
                    e: reps[ci] as u16,
                    entry,
                };
                at = prev;
            }
            Origin::Merge(picks.into_boxed_slice())
        });
    }
    Ok(())
}

/// Aggregates the tables of `u`'s children (representative `u`) and decides
/// whether `u` can be the round-1 loser: fewest votes, and on a tie the
/// largest ID among the tied candidates.
pub fn dp_root_decision(ctx: &KillContext<'_>, tables: &DpTables) -> Result<KillVerdict, KillError> {
    let u = ctx.u;
    let children = ctx.view.children_idx(u);
    let uid = ctx.tree.id_idx(u) as u16;
    // (votes to u, min opponent votes, max id among minimizers)
    type RootAgg = (u16, u16, u16);
    let mut layers: Vec<Vec<(RootAgg, u32, u32)>> = vec![vec![((0, ctx.inf, 0), u32::MAX, u32::MAX)]];
    let mut seen: FxHashMap<RootAgg, u32> = FxHashMap::default();
    for &y in children {
        let table = tables.get_idx(y, u).ok_or(KillError::MissingChildEntry {
            child: Vertex::from_index(y),
            e: Vertex::from_index(u),
        })?;
        let mut contribs: Vec<((u16, u16, u16), u32)> = Vec::new();
        let mut cseen = FxHashMap::default();
        for (idx, t) in table.entries.iter().enumerate() {
            let mut opp = (t.m, t.mm);
            for (rc, vc) in [(t.r1, t.v1), (t.r2, t.v2)] {
                if rc != NONE {
                    opp = min_combine(opp, (vc, ctx.id16(rc)));
                }
            }
            let c = (t.a, opp.0, opp.1);
            if cseen.insert(c, ()).is_none() {
                contribs.push((c, idx as u32));
            }
        }
        let prev = layers.last().expect("layer");
        let mut next = Vec::new();
        seen.clear();
        for (pi, &(s, _, _)) in prev.iter().enumerate() {
            for &(c, entry) in &contribs {
                let (m, mm) = min_combine((s.1, s.2), (c.1, c.2));
                let ns = (s.0 + c.0, m, mm);
                if let Entry::Vacant(slot) = seen.entry(ns) {
                    slot.insert(next.len() as u32);
                    next.push((ns, pi as u32, entry));
                }
            }
        }
        layers.push(next);
    }

    let last = layers.last().expect("layer");
    let hit = last.iter().position(|&((a, m, mm), _, _)| {
        let vu = a + 1;
        m != ctx.inf && (vu < m || (vu == m && uid > mm))
    });
    let Some(fi) = hit else {
        return Ok(KillVerdict {
            result: false,
            witness: None,
        });
    };
    let mut witness = VertexSet::new();
    witness.insert(Vertex::from_index(u));
    let mut at = fi as u32;
    for ci in (0..children.len()).rev() {
        let (_, prev, entry) = layers[ci + 1][at as usize];
        collect_witness(tables, children[ci], u, entry, &mut witness);
        at = prev;
    }
    Ok(KillVerdict {
        result: true,
        witness: Some(witness),
    })
}

fn collect_witness(tables: &DpTables, x: usize, e: usize, entry: u32, out: &mut VertexSet) {
    let table = tables.get_idx(x, e).expect("table referenced by a pick");
    match &table.origins[entry as usize] {
        Origin::Nothing => {}
        Origin::Placed => {
            out.insert(Vertex::from_index(x));
        }
        Origin::Merge(picks) => {
            for p in picks.iter() {
                collect_witness(tables, p.child as usize, p.e as usize, p.entry, out);
            }
        }
    }
}

/// Decides `Kill(T, u, A)` and returns a witness when it holds.
pub fn kill_dp(query: &KillQuery<'_>) -> KillVerdict {
    kill_dp_with(query, KillOptions::default()).0
}

pub fn kill_dp_with(query: &KillQuery<'_>, options: KillOptions) -> (KillVerdict, KillStats) {
    let ctx = KillContext::new(query);
    if query.allowed.is_empty() || query.tree.n() == 1 {
        let verdict = KillVerdict {
            result: false,
            witness: None,
        };
        return (verdict, KillStats::default());
    }
    let tables = build_tables(&ctx, options);
    let verdict = dp_root_decision(&ctx, &tables).expect("child tables complete");
    (verdict, tables.stats())
}

/// Builds every table the root decision can reach, bottom-up.
pub fn build_tables(ctx: &KillContext<'_>, options: KillOptions) -> DpTables {
    let n = ctx.tree.n();
    let mut tables = DpTables::new(n);
    let mut scratch = Scratch::default();
    for &x in ctx.view.postorder_idx() {
        if x == ctx.u {
            continue;
        }
        let reps = ctx.demanded_representatives(x);
        let built: Vec<(usize, DpTable)> = if options.parallel && reps.len() > 1 {
            reps.par_iter()
                .map_init(Scratch::default, |scr, &e| {
                    (e, merge_table(ctx, x, e, &tables, scr).expect("child tables complete"))
                })
                .collect()
        } else {
            reps.iter()
                .map(|&e| {
                    (
                        e,
                        merge_table(ctx, x, e, &tables, &mut scratch).expect("child tables complete"),
                    )
                })
                .collect()
        };
        for (e, table) in built {
            tables.slots[x * n + e] = Some(table);
        }
    }
    tables
}

/// Checks the witness contract of a true verdict: `u` is in the set, every
/// other member is allowed, the opponents form an antichain under the
/// `u`-rooted order, and `u` is eliminated in round 1.
pub fn check_witness(tree: &Tree, u: Vertex, allowed: &VertexSet, witness: &VertexSet) -> Result<(), String> {
    if !witness.contains(u) {
        return Err(format!("witness {witness} does not contain {u}"));
    }
    let opponents: Vec<Vertex> = witness.iter().filter(|&c| c != u).collect();
    if let Some(c) = opponents.iter().find(|&&c| !allowed.contains(c)) {
        return Err(format!("witness member {c} is not allowed"));
    }
    let view = tree.root_at(u).map_err(|e| e.to_string())?;
    for &a in &opponents {
        for &b in &opponents {
            if view.is_ancestor(a, b) {
                return Err(format!("{a} is an ancestor of {b}"));
            }
        }
    }
    let trace = run_irv(tree, witness, &TiePolicy::default_for(tree)).map_err(|e| e.to_string())?;
    match trace.rounds.first() {
        Some(r) if r.eliminated == u => Ok(()),
        _ => Err(format!("{u} is not eliminated in round 1 of {witness}")),
    }
}
