//! Unweighted trees with tie-break IDs and a dense distance matrix.
//!
//! Vertices are labelled `1..=n`. Every vertex also carries an ID from
//! `1..=n` used only for tie-breaking; the ID permutation defaults to the
//! identity.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A 1-based vertex label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(u32);

impl Vertex {
    /// Panics on label 0.
    pub fn new(label: u32) -> Self {
        assert!(label >= 1, "vertex labels are 1-based");
        Vertex(label)
    }

    pub fn from_index(index: usize) -> Self {
        Vertex(index as u32 + 1)
    }

    pub fn label(self) -> u32 {
        self.0
    }

    /// Zero-based position, for indexing per-vertex arrays.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shorthand used throughout the tests: `v(3)` is vertex 3.
pub fn v(label: u32) -> Vertex {
    Vertex::new(label)
}

/// A sorted, duplicate-free set of vertices. Ordering is lexicographic on the
/// sorted labels, which gives every set a canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_labels<I: IntoIterator<Item = u32>>(labels: I) -> Self {
        labels.into_iter().map(Vertex::new).collect()
    }

    pub fn from_mask(mask: u64) -> Self {
        (0..64usize)
            .filter(|i| mask >> i & 1 == 1)
            .map(Vertex::from_index)
            .collect()
    }

    pub fn all(n: usize) -> Self {
        (0..n).map(Vertex::from_index).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn insert(&mut self, x: Vertex) -> bool {
        match self.0.binary_search(&x) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, x);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    /// `V \ self` for a tree on `n` vertices.
    pub fn complement(&self, n: usize) -> VertexSet {
        (0..n).map(Vertex::from_index).filter(|&x| !self.contains(x)).collect()
    }

    /// Membership bitmap of length `n`.
    pub fn to_mask_vec(&self, n: usize) -> Vec<bool> {
        let mut out = vec![false; n];
        for x in self.iter() {
            out[x.index()] = true;
        }
        out
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut items: Vec<Vertex> = iter.into_iter().collect();
        items.sort_unstable();
        items.dedup();
        VertexSet(items)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Parses a comma-separated label list such as `1,2,4`. The empty string is
/// the empty set.
impl FromStr for VertexSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return Ok(VertexSet::new());
        }
        s.split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<u32>() {
                    Ok(0) | Err(_) => Err(format!("invalid vertex label {tok:?}")),
                    Ok(l) => Ok(Vertex::new(l)),
                }
            })
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("tree must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(u32, u32),
    #[error("edge {0} {1} closes a cycle")]
    Cycle(u32, u32),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("ids must be a permutation of 1..={n}: {reason}")]
    NotAPermutation { n: usize, reason: String },
}

/// Immutable unweighted tree with per-vertex tie-break IDs and all-pairs
/// hop distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<usize>>,
    ids: Vec<u32>,
    dist: Vec<u32>,
}

impl Tree {
    /// Builds and validates a tree. `ids[i]` is the ID of vertex `i + 1`;
    /// `None` gives the identity.
    pub fn from_edges(n: usize, edges: &[(u32, u32)], ids: Option<Vec<u32>>) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut uf = UnionFind::new(n);
        let mut adj = vec![Vec::new(); n];
        let mut seen = rustc_hash::FxHashSet::default();
        let mut canon = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for x in [a, b] {
                if x == 0 || x as usize > n {
                    return Err(TreeError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(TreeError::SelfLoop(a));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(TreeError::DuplicateEdge(a, b));
            }
            if !uf.union(a as usize - 1, b as usize - 1) {
                return Err(TreeError::Cycle(a, b));
            }
            adj[a as usize - 1].push(b as usize - 1);
            adj[b as usize - 1].push(a as usize - 1);
            canon.push((Vertex::new(key.0), Vertex::new(key.1)));
        }
        let components = uf.components();
        if components != 1 {
            return Err(TreeError::Disconnected { components });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let ids = match ids {
            None => (1..=n as u32).collect(),
            Some(ids) => {
                validate_permutation(&ids, n)?;
                ids
            }
        };
        let dist = bfs_all_pairs(&adj);
        Ok(Tree {
            n,
            edges: canon,
            adj,
            ids,
            dist,
        })
    }

    /// Parses the plain-text tree format: first line `n`, then `a b` edge
    /// lines, optionally one `ids p1 .. pn` line. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Tree, TreeError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut ids: Option<Vec<u32>> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let bad = |message: String| TreeError::Malformed { line, message };
            let mut tokens = content.split_whitespace();
            let first = tokens.next().unwrap_or_default();
            if n.is_none() {
                let count = first
                    .parse::<usize>()
                    .map_err(|_| bad(format!("expected vertex count, found {first:?}")))?;
                if tokens.next().is_some() {
                    return Err(bad("vertex count line has extra tokens".into()));
                }
                n = Some(count);
                continue;
            }
            if first == "ids" {
                if ids.is_some() {
                    return Err(bad("repeated ids line".into()));
                }
                let parsed = tokens
                    .map(|t| t.parse::<u32>().map_err(|_| bad(format!("bad id {t:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                ids = Some(parsed);
                continue;
            }
            let a = first
                .parse::<u32>()
                .map_err(|_| bad(format!("expected edge endpoint, found {first:?}")))?;
            let second = tokens
                .next()
                .ok_or_else(|| bad("edge line needs two endpoints".into()))?;
            let b = second
                .parse::<u32>()
                .map_err(|_| bad(format!("expected edge endpoint, found {second:?}")))?;
            if tokens.next().is_some() {
                return Err(bad("edge line has extra tokens".into()));
            }
            edges.push((a, b));
        }
        let n = n.ok_or(TreeError::Empty)?;
        Tree::from_edges(n, &edges, ids)
    }

    /// Canonical text form: edges sorted, `ids` line only when the IDs are
    /// not the identity.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        for (a, b) in edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        if !self.has_identity_ids() {
            let ids: Vec<String> = self.ids.iter().map(u32::to_string).collect();
            out.push_str(&format!("ids {}\n", ids.join(" ")));
        }
        out
    }

    /// Same topology with a different ID permutation.
    pub fn with_ids(&self, ids: Vec<u32>) -> Result<Tree, TreeError> {
        validate_permutation(&ids, self.n)?;
        Ok(Tree { ids, ..self.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.n).map(Vertex::from_index)
    }

    pub fn contains(&self, x: Vertex) -> bool {
        x.index() < self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn id(&self, x: Vertex) -> u32 {
        self.ids[x.index()]
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn has_identity_ids(&self) -> bool {
        self.ids.iter().enumerate().all(|(i, &id)| id as usize == i + 1)
    }

    pub fn dist(&self, a: Vertex, b: Vertex) -> u32 {
        self.dist[a.index() * self.n + b.index()]
    }

    /// Distance by zero-based indices.
    #[inline]
    pub fn dist_idx(&self, a: usize, b: usize) -> u32 {
        self.dist[a * self.n + b]
    }

    #[inline]
    pub fn id_idx(&self, a: usize) -> u32 {
        self.ids[a]
    }

    pub fn neighbors(&self, x: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[x.index()].iter().map(|&i| Vertex::from_index(i))
    }

    pub(crate) fn adj_idx(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.adj[x.index()].len()
    }

    /// Full distance matrix, row-major.
    pub fn all_pairs_distance(&self) -> Vec<Vec<u32>> {
        self.dist.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    pub fn root_at(&self, root: Vertex) -> Result<RootedView, TreeError> {
        if !self.contains(root) {
            return Err(TreeError::VertexOutOfRange {
                vertex: root.label(),
                n: self.n,
            });
        }
        Ok(RootedView::new(self, root.index()))
    }
}

fn validate_permutation(ids: &[u32], n: usize) -> Result<(), TreeError> {
    let err = |reason: String| TreeError::NotAPermutation { n, reason };
    if ids.len() != n {
        return Err(err(format!("expected {n} ids, found {}", ids.len())));
    }
    let mut seen = vec![false; n];
    for &id in ids {
        if id == 0 || id as usize > n {
            return Err(err(format!("id {id} out of range")));
        }
        if std::mem::replace(&mut seen[id as usize - 1], true) {
            return Err(err(format!("id {id} repeated")));
        }
    }
    Ok(())
}

fn bfs_all_pairs(adj: &[Vec<usize>]) -> Vec<u32> {
    let n = adj.len();
    let mut dist = vec![u32::MAX; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let d = row[x] + 1;
            for &y in &adj[x] {
                if row[y] == u32::MAX {
                    row[y] = d;
                    queue.push_back(y);
                }
            }
        }
    }
    dist
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// A tree rooted at a fixed vertex, with parent pointers, subtree sizes and
/// Euler-tour intervals. Children are visited in ascending vertex order.
#[derive(Clone, Debug)]
pub struct RootedView {
    root: usize,
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    size: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    postorder: Vec<usize>,
}

impl RootedView {
    fn new(tree: &Tree, root: usize) -> Self {
        let n = tree.n();
        let mut parent = vec![root; n];
        let mut children = vec![Vec::new(); n];
        let mut size = vec![1; n];
        let mut tin = vec![0; n];
        let mut tout = vec![0; n];
        let mut postorder = Vec::with_capacity(n);
        let mut timer = 0;
        // (vertex, next neighbour position)
        let mut stack = vec![(root, 0usize)];
        tin[root] = timer;
        timer += 1;
        while let Some(&mut (x, ref mut pos)) = stack.last_mut() {
            let nbrs = tree.adj_idx(x);
            if *pos < nbrs.len() {
                let y = nbrs[*pos];
                *pos += 1;
                if x != root && y == parent[x] {
                    continue;
                }
                parent[y] = x;
                children[x].push(y);
                tin[y] = timer;
                timer += 1;
                stack.push((y, 0));
            } else {
                tout[x] = timer - 1;
                postorder.push(x);
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    size[p] += size[x];
                }
            }
        }
        RootedView {
            root,
            parent,
            children,
            size,
            tin,
            tout,
            postorder,
        }
    }

    pub fn root(&self) -> Vertex {
        Vertex::from_index(self.root)
    }

    /// The root maps to itself.
    pub fn parent(&self, x: Vertex) -> Vertex {
        Vertex::from_index(self.parent[x.index()])
    }

    pub fn children(&self, x: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.children[x.index()].iter().map(|&c| Vertex::from_index(c))
    }

    pub fn subtree_size(&self, x: Vertex) -> usize {
        self.size[x.index()]
    }

    pub fn tin(&self, x: Vertex) -> usize {
        self.tin[x.index()]
    }

    pub fn tout(&self, x: Vertex) -> usize {
        self.tout[x.index()]
    }

    /// `v ∈ T_x`.
    pub fn in_subtree(&self, x: Vertex, v: Vertex) -> bool {
        self.in_subtree_idx(x.index(), v.index())
    }

    /// Strict ancestor test.
    pub fn is_ancestor(&self, a: Vertex, b: Vertex) -> bool {
        a != b && self.in_subtree(a, b)
    }

    pub fn postorder(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.postorder.iter().map(|&x| Vertex::from_index(x))
    }

    #[inline]
    pub(crate) fn in_subtree_idx(&self, x: usize, v: usize) -> bool {
        self.tin[x] <= self.tin[v] && self.tin[v] <= self.tout[x]
    }

    pub(crate) fn children_idx(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    pub(crate) fn size_idx(&self, x: usize) -> usize {
        self.size[x]
    }

    pub(crate) fn parent_idx(&self, x: usize) -> usize {
        self.parent[x]
    }

    pub(crate) fn postorder_idx(&self) -> &[usize] {
        &self.postorder
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> Tree {
        Tree::from_edges(4, &[(1, 2), (2, 3), (3, 4)], None).unwrap()
    }

    #[test]
    fn parses_example_path_with_ids() {
        let t = Tree::parse("4\n1 2\n2 3\n3 4\nids 2 4 1 3\n").unwrap();
        assert_eq!(t.n(), 4);
        assert_eq!(t.ids(), &[2, 4, 1, 3]);
        assert_eq!(t.id(v(3)), 1);
        assert_eq!(t.dist(v(1), v(4)), 3);
    }

    #[test]
    fn single_vertex() {
        let t = Tree::parse("1").unwrap();
        assert_eq!(t.n(), 1);
        assert_eq!(t.all_pairs_distance(), vec![vec![0]]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let t = Tree::parse("# header\n3 # count\n\n1 2\n2 3 # tail\n").unwrap();
        assert_eq!(t.edges().len(), 2);
    }

    #[test]
    fn distinct_diagnostics() {
        assert_eq!(
            Tree::parse("3\n1 2\n2 1\n").unwrap_err(),
            TreeError::DuplicateEdge(2, 1)
        );
        assert_eq!(Tree::parse("3\n1 2\n2 3\n3 1\n").unwrap_err(), TreeError::Cycle(3, 1));
        assert_eq!(
            Tree::parse("4\n1 2\n3 4\n").unwrap_err(),
            TreeError::Disconnected { components: 2 }
        );
        assert!(matches!(
            Tree::parse("3\n1 2\n2 3\nids 1 1 2\n").unwrap_err(),
            TreeError::NotAPermutation { .. }
        ));
        assert!(matches!(
            Tree::parse("3\n1 x\n").unwrap_err(),
            TreeError::Malformed { line: 2, .. }
        ));
        assert!(matches!(
            Tree::parse("3\n1 5\n").unwrap_err(),
            TreeError::VertexOutOfRange { vertex: 5, .. }
        ));
        assert_eq!(Tree::parse("# nothing\n").unwrap_err(), TreeError::Empty);
    }

    #[test]
    fn path_and_star_distances() {
        let t = path4();
        assert_eq!(t.dist(v(1), v(4)), 3);
        assert_eq!(t.dist(v(2), v(3)), 1);
        let star = Tree::from_edges(4, &[(1, 2), (1, 3), (1, 4)], None).unwrap();
        for a in 2..=4 {
            for b in 2..=4 {
                if a != b {
                    assert_eq!(star.dist(v(a), v(b)), 2);
                }
            }
        }
    }

    #[test]
    fn rooting_a_path() {
        let t = path4();
        let r = t.root_at(v(1)).unwrap();
        assert_eq!(r.parent(v(4)), v(3));
        assert_eq!(r.parent(v(1)), v(1));
        assert_eq!(r.subtree_size(v(2)), 3);
        let r4 = t.root_at(v(4)).unwrap();
        assert_eq!(r4.subtree_size(v(3)), 3);
        assert!(t.root_at(v(9)).is_err());
    }

    #[test]
    fn rooting_the_figure_tree() {
        // u = 1 with children x=2, y=3, z=4; x and z each have two leaves.
        let t = Tree::from_edges(8, &[(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (4, 7), (4, 8)], None).unwrap();
        let r = t.root_at(v(1)).unwrap();
        let kids: Vec<_> = r.children(v(1)).collect();
        assert_eq!(kids, vec![v(2), v(3), v(4)]);
        assert_eq!(r.subtree_size(v(4)), 3);
    }

    #[test]
    fn canonical_text_round_trip() {
        let t = Tree::parse("4\n3 4\n2 1\n3 2\nids 2 4 1 3\n").unwrap();
        let text = t.to_text();
        assert_eq!(text, "4\n1 2\n2 3\n3 4\nids 2 4 1 3\n");
        assert_eq!(Tree::parse(&text).unwrap().to_text(), text);
    }

    #[test]
    fn vertex_set_parsing() {
        let s: VertexSet = "3, 1,2,1".parse().unwrap();
        assert_eq!(s, VertexSet::from_labels([1, 2, 3]));
        assert_eq!(s.to_string(), "{1,2,3}");
        assert!("".parse::<VertexSet>().unwrap().is_empty());
        assert!("1,0".parse::<VertexSet>().is_err());
        assert!("1,a".parse::<VertexSet>().is_err());
    }
}
