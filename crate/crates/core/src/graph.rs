//! Simple undirected graphs over dense vertex ids with bit-set adjacency rows.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A set of vertices of a fixed universe `0..n`, stored as a bit set.
///
/// Every set built for a given graph has the same number of words, so binary
/// operations never need to resize.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: SmallVec<[u64; 2]>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            words: SmallVec::from_elem(0, words_for(n)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = VertexSet::new(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut s = VertexSet::new(n);
        s.insert(v);
        s
    }

    /// Number of vertices this set can hold (a multiple of 64).
    pub fn capacity(&self) -> usize {
        self.words.len() * WORD
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / WORD] &= !(1 << (v % WORD));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v / WORD < self.words.len() && self.words[v / WORD] & (1 << (v % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Smallest element.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut r = self.clone();
        r.subtract(other);
        r
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        !self.intersects(other)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Compares the sorted element lists lexicographically.
    pub fn lex_cmp(&self, other: &VertexSet) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Order in which the set holding the smallest element of the symmetric
    /// difference comes first. Unlike [`VertexSet::lex_cmp`] this order is
    /// preserved by disjoint unions, which makes it usable as a tie-break in
    /// dynamic programs that assemble sets piecewise.
    pub fn indicator_cmp(&self, other: &VertexSet) -> Ordering {
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            let d = a ^ b;
            if d != 0 {
                let bit = 1u64 << d.trailing_zeros();
                return if a & bit != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + t);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            adj: vec![VertexSet::new(n); n],
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Self-loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if g.adj[u].contains(v) {
                return Err(Error::InvalidGraph(format!("parallel edge ({u}, {v})")));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
            g.m += 1;
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but silently ignores repeated edges.
    pub fn from_edges_dedup(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut es: Vec<(usize, usize)> =
            edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        es.sort_unstable();
        es.dedup();
        Graph::from_edges(n, &es)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidGraph(
                "label count does not match vertex count".into(),
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => (v + 1).to_string(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, it: I) -> VertexSet {
        VertexSet::from_iter(self.n, it)
    }

    /// `N(S)`: vertices outside `s` with a neighbor in `s`.
    pub fn neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut r = self.empty_set();
        for v in s {
            r.union_with(&self.adj[v]);
        }
        r.subtract(s);
        r
    }

    /// `N[S]`.
    pub fn closed_neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut r = self.neighborhood_of_set(s);
        r.union_with(s);
        r
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut es = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                es.push((u, v));
            }
        }
        es
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn is_stable(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.adj[v].intersects(s))
    }

    pub fn anticomplete(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|v| !self.adj[v].intersects(b))
    }

    /// Whether `s` contains a neighbor of some vertex of `t`.
    pub fn has_neighbor_in(&self, t: &VertexSet, s: &VertexSet) -> bool {
        !self.anticomplete(t, s)
    }

    /// Induced subgraph on `s`; also returns the map from new ids to old ids.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.to_vec();
        let mut inv = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let k = map.len();
        let mut g = Graph::empty(k);
        for (i, &v) in map.iter().enumerate() {
            for u in self.adj[v].intersection(s).iter() {
                g.adj[i].insert(inv[u]);
            }
            g.m += g.adj[i].iter().filter(|&j| j > i).count();
        }
        if let Some(l) = &self.labels {
            g.labels = Some(map.iter().map(|&v| l[v].clone()).collect());
        }
        (g, map)
    }

    /// Returns a new graph with one more vertex adjacent to `nbrs`.
    pub fn with_new_vertex(&self, nbrs: &[usize]) -> Graph {
        let mut es = self.edges();
        let v = self.n;
        es.extend(nbrs.iter().map(|&u| (u, v)));
        Graph::from_edges_dedup(self.n + 1, &es).expect("valid extension")
    }

    pub fn complement(&self) -> Graph {
        let mut es = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    es.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, &es).expect("complement is simple")
    }

    /// Disjoint union of `self` and `other`; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut es = self.edges();
        es.extend(other.edges().into_iter().map(|(u, v)| (u + off, v + off)));
        Graph::from_edges(self.n + other.n, &es).expect("disjoint union is simple")
    }

    /// Connected components of `G[s]` ordered by smallest vertex id.
    pub fn components(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut left = s.clone();
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let comp = self.component_of(start, &left);
            left.subtract(&comp);
            out.push(comp);
        }
        out
    }

    /// The component of `G[within]` containing `v` (which must lie in `within`).
    pub fn component_of(&self, v: usize, within: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(self.n, v);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = self.empty_set();
            for u in &frontier {
                next.union_with(&self.adj[u]);
            }
            next.intersect_with(within);
            next.subtract(&comp);
            comp.union_with(&next);
            frontier = next;
        }
        comp
    }

    pub fn is_connected_set(&self, s: &VertexSet) -> bool {
        match s.first() {
            None => true,
            Some(v) => self.component_of(v, s).len() == s.len(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_set(&self.all())
    }

    /// Whether `G[s]` is a hole (an induced cycle of length at least four).
    pub fn is_hole(&self, s: &VertexSet) -> bool {
        s.len() >= 4
            && self.is_connected_set(s)
            && s.iter().all(|v| self.adj[v].intersection_len(s) == 2)
    }

    /// Whether the whole graph is a hole.
    pub fn is_hole_graph(&self) -> bool {
        self.is_hole(&self.all())
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * self.n.saturating_sub(1) / 2
    }
}

/// Connected components of `G[s]`, ordered by smallest vertex id.
pub fn components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    g.components(s)
}

/// Partition of `N(v)` into pairwise anticomplete cliques. Fails with a
/// diamond witness when such a partition does not exist.
pub fn neighborhood_clique_partition(g: &Graph, v: usize) -> Result<Vec<VertexSet>> {
    let parts = g.components(g.neighbors(v));
    for part in &parts {
        if !g.is_clique(part) {
            // Two nonadjacent vertices x, y in one component of G[N(v)] joined
            // by a shortest path x - z - ... ; its first three vertices with v
            // form a diamond.
            let (x, z, y) =
                induced_p3(g, part).expect("non-clique connected set has an induced P3");
            let w = crate::structures::Witness::diamond(g, [v, z], [x, y]);
            return Err(Error::DiamondPresent(Box::new(w)));
        }
    }
    Ok(parts)
}

/// An induced path `x - z - y` inside a connected set that is not a clique.
pub(crate) fn induced_p3(g: &Graph, s: &VertexSet) -> Option<(usize, usize, usize)> {
    for z in s {
        let nz = g.neighbors(z).intersection(s);
        for x in &nz {
            let miss = nz.difference(g.neighbors(x));
            if let Some(y) = miss.iter().find(|&y| y != x) {
                return Some((x, z, y));
            }
        }
    }
    None
}

/// A maximal clique containing the clique `k`. Singletons are returned
/// unchanged; for larger cliques the extension must be unique, which holds in
/// diamond-free graphs.
pub fn maximal_clique_extension(g: &Graph, k: &VertexSet) -> Result<VertexSet> {
    if !g.is_clique(k) {
        return Err(Error::NotAClique);
    }
    if k.len() <= 1 {
        return Ok(k.clone());
    }
    let mut common = g.all();
    for v in k {
        common.intersect_with(g.neighbors(v));
    }
    if !g.is_clique(&common) {
        return Err(Error::AmbiguousExtension);
    }
    Ok(common.union(k))
}

/// A separation `(A, C, B)` of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub a: VertexSet,
    pub c: VertexSet,
    pub b: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationViolation {
    /// A vertex lies in two of the three parts.
    Overlap(usize),
    /// A vertex lies in none of the parts.
    Uncovered(usize),
    /// An edge joins `A` and `B`.
    Crossing(usize, usize),
}

/// Checks the separation axioms, listing every violated clause.
pub fn is_separation(g: &Graph, s: &Separation) -> (bool, Vec<SeparationViolation>) {
    let mut v = Vec::new();
    for x in 0..g.n() {
        let count = [&s.a, &s.c, &s.b].iter().filter(|p| p.contains(x)).count();
        match count {
            0 => v.push(SeparationViolation::Uncovered(x)),
            1 => {}
            _ => v.push(SeparationViolation::Overlap(x)),
        }
    }
    for x in &s.a {
        for y in g.neighbors(x).intersection(&s.b).iter() {
            v.push(SeparationViolation::Crossing(x, y));
        }
    }
    (v.is_empty(), v)
}
