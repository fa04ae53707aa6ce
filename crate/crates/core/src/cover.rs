//! Stable sets, cliques and clique covers.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::structures::{find_c4, Budget, Meter, Search};

pub const ALPHA_GUARD: usize = 40;
pub const CHI_BAR_GUARD: usize = 20;

/// Size of a maximum stable set of `G[s]`.
pub fn alpha(g: &Graph, s: &VertexSet) -> usize {
    let mut best = 0;
    mis(g, s.clone(), 0, &mut best);
    best
}

// Branch and bound on the vertex of maximum degree, taking vertices of degree
// at most one greedily and bounding by a greedy clique cover.
fn mis(g: &Graph, mut p: VertexSet, mut taken: usize, best: &mut usize) {
    loop {
        let low = p.iter().find(|&v| g.neighbors(v).intersection_len(&p) <= 1);
        match low {
            Some(v) => {
                p.subtract(&g.closed_neighborhood(v));
                taken += 1;
            }
            None => break,
        }
    }
    if p.is_empty() {
        *best = (*best).max(taken);
        return;
    }
    if taken + greedy_cover_size(g, &p) <= *best {
        return;
    }
    let v = p
        .iter()
        .max_by_key(|&v| (g.neighbors(v).intersection_len(&p), std::cmp::Reverse(v)))
        .expect("nonempty");
    let mut with = p.clone();
    with.subtract(&g.closed_neighborhood(v));
    mis(g, with, taken + 1, best);
    p.remove(v);
    mis(g, p, taken, best);
}

/// Number of cliques in a greedy clique cover of `G[s]`, an upper bound on `alpha`.
fn greedy_cover_size(g: &Graph, s: &VertexSet) -> usize {
    let mut rest = s.clone();
    let mut count = 0;
    while let Some(v) = rest.first() {
        let mut cand = g.neighbors(v).intersection(&rest);
        rest.remove(v);
        while let Some(u) = cand.first() {
            rest.remove(u);
            cand.intersect_with(g.neighbors(u));
        }
        count += 1;
    }
    count
}

/// The lexicographically least maximum stable set of `G[s]`.
pub fn max_stable_set(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut need = alpha(g, s);
    let mut out = g.empty_set();
    let mut cand = s.clone();
    while need > 0 {
        let v = cand
            .iter()
            .find(|&v| {
                let mut rest = cand.difference(&g.closed_neighborhood(v));
                rest = VertexSet::from_iter(g.n(), rest.iter().filter(|&u| u > v));
                alpha(g, &rest) + 1 == need
            })
            .expect("some vertex extends a maximum stable set");
        out.insert(v);
        cand = VertexSet::from_iter(
            g.n(),
            cand.difference(&g.closed_neighborhood(v))
                .iter()
                .filter(|&u| u > v),
        );
        need -= 1;
    }
    out
}

/// Size of a maximum clique of `G[s]`.
pub fn omega(g: &Graph, s: &VertexSet) -> usize {
    let (h, _) = g.induced(s);
    let c = h.complement();
    alpha(&c, &c.all())
}

/// A minimum partition of `s` into cliques, and whether it is proved optimal
/// within the budget.
pub fn min_clique_cover_budgeted(
    g: &Graph,
    s: &VertexSet,
    budget: Budget,
) -> (Vec<VertexSet>, bool) {
    if s.is_empty() {
        return (Vec::new(), true);
    }
    let lower = alpha(g, s);
    let verts = s.to_vec();
    let mut best = greedy_cover(g, s);
    if best.len() == lower {
        return (best, true);
    }
    let meter = budget.meter();
    let mut state = Dsatur {
        g,
        verts: &verts,
        lower,
        meter: &meter,
        assign: vec![usize::MAX; g.n()],
        cliques: Vec::new(),
    };
    state.search(0, &mut best);
    (best, !meter.exhausted())
}

pub fn min_clique_cover(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    min_clique_cover_budgeted(g, s, Budget::UNLIMITED).0
}

/// Clique cover number of `G[s]`.
pub fn chi_bar(g: &Graph, s: &VertexSet) -> usize {
    min_clique_cover(g, s).len()
}

fn greedy_cover(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    let mut rest = s.clone();
    let mut out = Vec::new();
    while let Some(v) = rest.first() {
        let mut k = g.set_of([v]);
        let mut cand = g.neighbors(v).intersection(&rest);
        while let Some(u) = cand.first() {
            k.insert(u);
            cand.intersect_with(g.neighbors(u));
        }
        rest.subtract(&k);
        out.push(k);
    }
    out
}

// Exact colouring of the complement: each colour class is a clique of `g`.
struct Dsatur<'a> {
    g: &'a Graph,
    verts: &'a [usize],
    lower: usize,
    meter: &'a Meter,
    assign: Vec<usize>,
    cliques: Vec<VertexSet>,
}

impl Dsatur<'_> {
    // Returns true once the lower bound is met.
    fn search(&mut self, placed: usize, best: &mut Vec<VertexSet>) -> bool {
        if placed == self.verts.len() {
            if self.cliques.len() < best.len() {
                *best = self.cliques.clone();
            }
            return best.len() == self.lower;
        }
        if !self.meter.tick() {
            return true;
        }
        // most constrained vertex: fewest cliques it can join
        let mut pick = None;
        let mut pick_key = (usize::MAX, 0);
        for &v in self.verts.iter().filter(|&&v| self.assign[v] == usize::MAX) {
            let options = self
                .cliques
                .iter()
                .filter(|k| k.is_subset(self.g.neighbors(v)))
                .count();
            let key = (options, v);
            if key < pick_key {
                pick_key = key;
                pick = Some(v);
            }
        }
        let v = pick.expect("an unplaced vertex");
        for i in 0..self.cliques.len() {
            if self.cliques[i].is_subset(self.g.neighbors(v)) {
                self.cliques[i].insert(v);
                self.assign[v] = i;
                let done = self.search(placed + 1, best);
                self.cliques[i].remove(v);
                self.assign[v] = usize::MAX;
                if done {
                    return true;
                }
            }
        }
        if self.cliques.len() + 1 < best.len() {
            self.cliques.push(self.g.set_of([v]));
            self.assign[v] = self.cliques.len() - 1;
            let done = self.search(placed + 1, best);
            self.cliques.pop();
            self.assign[v] = usize::MAX;
            if done {
                return true;
            }
        }
        false
    }
}

/// Exact `(alpha, omega, chi_bar)` of `g`, subject to size guards.
pub fn exact_invariants(
    g: &Graph,
    alpha_guard: usize,
    chi_guard: usize,
) -> Result<(usize, usize, usize)> {
    if g.n() > alpha_guard {
        return Err(Error::TooLarge {
            what: "alpha/omega vertex count",
            size: g.n(),
            guard: alpha_guard,
        });
    }
    if g.n() > chi_guard {
        return Err(Error::TooLarge {
            what: "clique cover vertex count",
            size: g.n(),
            guard: chi_guard,
        });
    }
    let all = g.all();
    Ok((alpha(g, &all), omega(g, &all), chi_bar(g, &all)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCover {
    pub cliques: Vec<VertexSet>,
}

impl CliqueCover {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn covered(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        self.cliques.iter().for_each(|k| s.union_with(k));
        s
    }

    /// Whether the parts are disjoint cliques whose union is `s`.
    pub fn verify(&self, g: &Graph, s: &VertexSet) -> bool {
        let mut seen = g.empty_set();
        for k in &self.cliques {
            if k.is_empty() || !g.is_clique(k) || k.intersects(&seen) {
                return false;
            }
            seen.union_with(k);
        }
        &seen == s
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let cov = self.covered(g.n());
        json!({
            "cliques": self.cliques.iter().map(|k| k.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "size": self.len(),
            "alpha_lower_bound": alpha(g, &cov),
        })
    }
}

/// Clique cover of a C4-free graph with at most `C(alpha + 1, 2)` parts.
///
/// Fix a maximum stable set `q_1, ..., q_a`. Every other vertex has a neighbor
/// in it; those with the single neighbor `q_i` form a clique together with
/// `q_i`, and those whose two smallest neighbors are `q_i, q_j` form a clique
/// because two nonadjacent ones would close a C4 through `q_i` and `q_j`.
pub fn clique_cover_c4free(g: &Graph) -> Result<CliqueCover> {
    if let Search::Found(w) = find_c4(g, &Meter::unlimited()) {
        return Err(Error::NotC4Free(Box::new(w)));
    }
    let q = max_stable_set(g, &g.all()).to_vec();
    let a = q.len();
    let index = |i: usize, j: usize| if i == j { i } else { a + pair_index(a, i, j) };
    let mut classes = vec![g.empty_set(); a + a * a.saturating_sub(1) / 2];
    for (i, &qi) in q.iter().enumerate() {
        classes[i].insert(qi);
    }
    let qs = g.set_of(q.iter().copied());
    for v in g.all().difference(&qs).iter() {
        let hits: Vec<usize> = (0..a).filter(|&i| g.adjacent(v, q[i])).take(2).collect();
        let slot = match hits.as_slice() {
            [i] => index(*i, *i),
            [i, j] => index(*i, *j),
            _ => unreachable!("maximum stable set is dominating"),
        };
        classes[slot].insert(v);
    }
    let cliques: Vec<VertexSet> = classes.into_iter().filter(|k| !k.is_empty()).collect();
    debug_assert!(cliques.iter().all(|k| g.is_clique(k)));
    Ok(CliqueCover { cliques })
}

fn pair_index(a: usize, i: usize, j: usize) -> usize {
    // rank of (i, j), i < j, among pairs in lexicographic order
    i * (2 * a - i - 1) / 2 + (j - i - 1)
}

/// All maximal cliques, each sorted, in lexicographic order.
pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    maximal_cliques_in(g, &g.all())
}

pub fn maximal_cliques_in(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if s.is_empty() {
        return out;
    }
    bron_kerbosch(g, g.empty_set(), s.clone(), g.empty_set(), &mut out);
    out.sort_by(|a, b| a.lex_cmp(b));
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| g.neighbors(u).intersection_len(&p))
        .expect("nonempty");
    for v in p.difference(g.neighbors(pivot)).iter() {
        let mut r2 = r.clone();
        r2.insert(v);
        bron_kerbosch(
            g,
            r2,
            p.intersection(g.neighbors(v)),
            x.intersection(g.neighbors(v)),
            out,
        );
        p.remove(v);
        x.insert(v);
    }
}

pub fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
