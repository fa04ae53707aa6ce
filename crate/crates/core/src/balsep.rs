//! Balanced separators: the wheel-free route, the central-bag separator, the
//! extension back to the whole graph, exhaustive searches and the oracle that
//! dispatches between them.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::cover::{maximal_cliques_in, min_clique_cover_budgeted};
use crate::cutsets::clique_minimal_separators;
use crate::error::{Error, Result};
use crate::graph::{maximal_clique_extension, neighborhood_clique_partition, Graph, VertexSet};
use crate::hubdiv::{hub_division, HubDivision};
use crate::report::Check;
use crate::structures::{for_each_hole, Budget, Meter, Search};
use crate::treedec::{wheel_free_td, TreeDecomposition, BAG_COVER_STEPS};
use crate::weights::{fmt_rational, Rational, Threshold, WeightFunction};

/// Steps granted to each exhaustive separator search.
pub const SEARCH_STEPS: u64 = 2_000_000;
/// Clique cover bound for separators of the central bag.
pub const CENTRAL_BAG_COVER: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Wheelfree,
    CentralBag,
    CliqueCutset,
    Fallback,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Wheelfree => "wheelfree",
            Route::CentralBag => "central_bag",
            Route::CliqueCutset => "clique_cutset",
            Route::Fallback => "fallback",
        }
    }
}

/// A verified `(w, c)`-balanced separator with a clique partition of it.
#[derive(Clone, Debug)]
pub struct BalancedSeparator {
    pub x: VertexSet,
    pub cover: Vec<VertexSet>,
    pub threshold: Threshold,
    pub route: Route,
    pub checks: Vec<Check>,
}

fn ids(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

/// Makes a list of cliques disjoint, keeping the first occurrence of each vertex.
fn disjoint(cliques: impl IntoIterator<Item = VertexSet>, n: usize) -> Vec<VertexSet> {
    let mut seen = VertexSet::new(n);
    let mut out = Vec::new();
    for k in cliques {
        let k = k.difference(&seen);
        if !k.is_empty() {
            seen.union_with(&k);
            out.push(k);
        }
    }
    out
}

fn union_all<'a>(sets: impl IntoIterator<Item = &'a VertexSet>, n: usize) -> VertexSet {
    sets.into_iter()
        .fold(VertexSet::new(n), |acc, s| acc.union(s))
}

impl BalancedSeparator {
    /// Checks that `cover` partitions `x` into cliques and that `x` balances `w`.
    pub fn new(
        g: &Graph,
        w: &WeightFunction,
        threshold: Threshold,
        x: VertexSet,
        cover: Vec<VertexSet>,
        route: Route,
    ) -> Result<Self> {
        let s = BalancedSeparator {
            x,
            cover,
            threshold,
            route,
            checks: Vec::new(),
        };
        if !s.cover_is_partition(g) {
            return Err(Error::VerificationFailed(format!(
                "cover of {:?} is not a clique partition",
                ids(&s.x)
            )));
        }
        if !w.balances(g, &s.x, threshold) {
            return Err(Error::VerificationFailed(format!(
                "{:?} leaves a component heavier than the threshold",
                ids(&s.x)
            )));
        }
        Ok(s)
    }

    /// Separator with a minimum clique cover computed for it.
    pub fn covered(
        g: &Graph,
        w: &WeightFunction,
        threshold: Threshold,
        x: VertexSet,
        route: Route,
    ) -> Result<Self> {
        let cover = min_clique_cover_budgeted(g, &x, Budget::steps(BAG_COVER_STEPS)).0;
        Self::new(g, w, threshold, x, cover, route)
    }

    fn cover_is_partition(&self, g: &Graph) -> bool {
        let mut seen = g.empty_set();
        for k in &self.cover {
            if k.is_empty() || !g.is_clique(k) || k.intersects(&seen) {
                return false;
            }
            seen.union_with(k);
        }
        seen == self.x
    }

    pub fn verify(&self, g: &Graph, w: &WeightFunction) -> bool {
        self.cover_is_partition(g) && w.balances(g, &self.x, self.threshold)
    }

    pub fn cover_len(&self) -> usize {
        self.cover.len()
    }

    pub fn component_weights(&self, g: &Graph, w: &WeightFunction) -> Vec<(VertexSet, Rational)> {
        g.components(&g.all().difference(&self.x))
            .into_iter()
            .map(|d| {
                let m = w.mass(&d);
                (d, m)
            })
            .collect()
    }

    /// Replaces the cover by a smaller one when a budgeted exact search finds it.
    pub fn tighten(&mut self, g: &Graph) {
        let (best, _) = min_clique_cover_budgeted(g, &self.x, Budget::steps(BAG_COVER_STEPS));
        if best.len() < self.cover.len() {
            self.cover = best;
        }
    }

    /// Drops whole cliques, first to last, while the rest still balances.
    pub fn prune(&mut self, g: &Graph, w: &WeightFunction) {
        let mut i = 0;
        while i < self.cover.len() {
            let rest = self.x.difference(&self.cover[i]);
            if w.balances(g, &rest, self.threshold) {
                self.x = rest;
                self.cover.remove(i);
            } else {
                i += 1;
            }
        }
    }

    /// The same separator in the ids of a host graph of size `n`.
    pub fn mapped(&self, map: &[usize], n: usize) -> Self {
        let lift = |s: &VertexSet| VertexSet::from_iter(n, s.iter().map(|v| map[v]));
        BalancedSeparator {
            x: lift(&self.x),
            cover: self.cover.iter().map(lift).collect(),
            threshold: self.threshold,
            route: self.route,
            checks: self.checks.clone(),
        }
    }

    /// Re-checks a separator lifted from a subgraph against the host.
    fn reverified(self, g: &Graph, w: &WeightFunction) -> Result<Self> {
        let checks = self.checks;
        let mut s = Self::new(g, w, self.threshold, self.x, self.cover, self.route)?;
        s.checks = checks;
        Ok(s)
    }

    pub fn to_json(&self, g: &Graph, w: &WeightFunction) -> Value {
        json!({
            "vertices": ids(&self.x),
            "clique_cover": self.cover.iter().map(ids).collect::<Vec<_>>(),
            "threshold": self.threshold.to_string(),
            "component_weights": self.component_weights(g, w).iter()
                .map(|(d, m)| json!({ "component": ids(d), "weight": fmt_rational(m) }))
                .collect::<Vec<_>>(),
            "route": self.route.as_str(),
            "assertions": self.checks,
        })
    }
}

/// Walks the decomposition tree towards the heavy side until a bag balances.
pub fn centroid_bag_separator(
    g: &Graph,
    td: &TreeDecomposition,
    w: &WeightFunction,
    c: Threshold,
    route: Route,
) -> Result<BalancedSeparator> {
    if td.is_empty() {
        return Err(Error::BadParams("empty tree decomposition".into()));
    }
    let adj = td.adjacency();
    let mut cur = 0;
    let mut prev = usize::MAX;
    for _ in 0..td.len() {
        let bag = &td.bags[cur];
        let Some(d) = w.heavy_component(g, &g.all().difference(bag), c) else {
            return BalancedSeparator::covered(g, w, c, bag.clone(), route);
        };
        // `d` misses the bag and is connected, so it sits behind one neighbor
        let next = adj[cur].iter().copied().filter(|&t| t != prev).find(|&t| {
            let mut stack = vec![t];
            let mut seen = vec![false; td.len()];
            seen[cur] = true;
            seen[t] = true;
            while let Some(u) = stack.pop() {
                if td.bags[u].intersects(&d) {
                    return true;
                }
                for &x in &adj[u] {
                    if !seen[x] {
                        seen[x] = true;
                        stack.push(x);
                    }
                }
            }
            false
        });
        match next {
            Some(t) => {
                prev = cur;
                cur = t;
            }
            None => break,
        }
    }
    Err(Error::VerificationFailed(
        "no bag of the decomposition balances the weights".into(),
    ))
}

/// Balanced separator of clique cover at most two for (3PC, wheel)-free graphs,
/// taken as a centroid bag of the decomposition built from complete and hole atoms.
pub fn balanced_separator_wheelfree(g: &Graph, w: &WeightFunction) -> Result<BalancedSeparator> {
    let td = wheel_free_td(g)?;
    let mut s = centroid_bag_separator(g, &td, w, Threshold::HALF, Route::Wheelfree)?;
    s.checks.push(Check::new(
        "wheel-free separator covered by two cliques",
        s.cover.len() <= 2,
        format!("{} cliques", s.cover.len()),
    ));
    Ok(s)
}

/// Minimum-cardinality `(w, c)`-balanced set, lexicographically least among
/// the minimum ones. Any balanced set must meet the current heavy component,
/// so the search branches on its vertices.
fn min_balanced_set(
    g: &Graph,
    w: &WeightFunction,
    c: Threshold,
    limit: usize,
    meter: &Meter,
) -> Search<VertexSet> {
    struct Dfs<'a> {
        g: &'a Graph,
        w: &'a WeightFunction,
        c: Threshold,
        meter: &'a Meter,
        seen: HashSet<VertexSet>,
        best: Option<VertexSet>,
    }
    impl Dfs<'_> {
        fn go(&mut self, x: &VertexSet, left: usize) -> bool {
            if !self.meter.tick() {
                return false;
            }
            let Some(d) = self
                .w
                .heavy_component(self.g, &self.g.all().difference(x), self.c)
            else {
                if self.best.as_ref().is_none_or(|b| x.lex_cmp(b).is_lt()) {
                    self.best = Some(x.clone());
                }
                return true;
            };
            if left == 0 {
                return true;
            }
            for v in &d {
                let mut y = x.clone();
                y.insert(v);
                if self.seen.insert(y.clone()) && !self.go(&y, left - 1) {
                    return false;
                }
            }
            true
        }
    }
    let mut dfs = Dfs {
        g,
        w,
        c,
        meter,
        seen: HashSet::new(),
        best: None,
    };
    for size in 0..=limit.min(g.n()) {
        dfs.seen.clear();
        if !dfs.go(&g.empty_set(), size) {
            return Search::Unknown;
        }
        if let Some(b) = dfs.best.take() {
            return Search::Found(b);
        }
    }
    Search::Absent
}

/// Minimum-cardinality balanced separator with at most `size_limit` vertices.
pub fn exhaustive_balanced_separator(
    g: &Graph,
    w: &WeightFunction,
    c: Threshold,
    size_limit: usize,
) -> Option<BalancedSeparator> {
    let meter = Budget::steps(SEARCH_STEPS).meter();
    match min_balanced_set(g, w, c, size_limit, &meter) {
        Search::Found(x) => BalancedSeparator::covered(g, w, c, x, Route::Fallback).ok(),
        _ => None,
    }
}

/// Balanced separator formed by the fewest maximal cliques (at most `limit`).
/// A balanced union of cliques must meet the heavy component, so the search
/// branches on maximal cliques meeting it.
pub fn clique_union_separator(
    g: &Graph,
    w: &WeightFunction,
    c: Threshold,
    limit: usize,
) -> Search<BalancedSeparator> {
    let cliques = maximal_cliques_in(g, &g.all());
    let meter = Budget::steps(SEARCH_STEPS).meter();
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &Graph,
        w: &WeightFunction,
        c: Threshold,
        cliques: &[VertexSet],
        meter: &Meter,
        chosen: &mut Vec<usize>,
        x: &VertexSet,
        left: usize,
        seen: &mut HashSet<VertexSet>,
    ) -> ControlFlow<bool> {
        if !meter.tick() {
            return ControlFlow::Break(false);
        }
        let Some(d) = w.heavy_component(g, &g.all().difference(x), c) else {
            return ControlFlow::Break(true);
        };
        if left == 0 {
            return ControlFlow::Continue(());
        }
        for (i, k) in cliques.iter().enumerate() {
            if !k.intersects(&d) {
                continue;
            }
            let y = x.union(k);
            if !seen.insert(y.clone()) {
                continue;
            }
            chosen.push(i);
            go(g, w, c, cliques, meter, chosen, &y, left - 1, seen)?;
            chosen.pop();
        }
        ControlFlow::Continue(())
    }
    for count in 0..=limit {
        let mut chosen = Vec::new();
        let mut seen = HashSet::new();
        match go(
            g,
            w,
            c,
            &cliques,
            &meter,
            &mut chosen,
            &g.empty_set(),
            count,
            &mut seen,
        ) {
            ControlFlow::Break(true) => {
                let cover = disjoint(chosen.iter().map(|&i| cliques[i].clone()), g.n());
                let x = union_all(&cover, g.n());
                return match BalancedSeparator::new(g, w, c, x, cover, Route::Fallback) {
                    Ok(s) => Search::Found(s),
                    Err(_) => Search::Absent,
                };
            }
            ControlFlow::Break(false) => return Search::Unknown,
            ControlFlow::Continue(()) => {}
        }
    }
    Search::Absent
}

/// `(w_M, 1/2)`-balanced separator of the central bag with clique cover at
/// most nine, in the ids of `g`. Balance is checked on `G[β]` under the
/// inherited weights.
pub fn balanced_separator_central_bag(g: &Graph, hd: &HubDivision) -> Result<BalancedSeparator> {
    let (h, map, wm) = hd.bag.induced(g);
    let inv = |v: usize| map.iter().position(|&x| x == v).expect("vertex of the bag");
    let mut checks = Vec::new();
    let mut found: Option<BalancedSeparator> = None;
    match hd.v_m() {
        None => match balanced_separator_wheelfree(&h, &wm) {
            Ok(s) => found = Some(s),
            Err(e) => checks.push(Check::new(
                "central bag is wheel-free when no hub is balanced",
                false,
                e.to_string(),
            )),
        },
        Some(vm) => {
            let v = inv(vm);
            let mut parts = neighborhood_clique_partition(&h, v)?;
            match parts.first_mut() {
                Some(p) => p.insert(v),
                None => parts.push(h.set_of([v])),
            }
            let x = union_all(&parts, h.n());
            match BalancedSeparator::new(&h, &wm, Threshold::HALF, x, parts, Route::CentralBag) {
                Ok(mut s) => {
                    s.prune(&h, &wm);
                    s.tighten(&h);
                    checks.push(Check::pass(
                        "closed bag neighborhood of v_m balances",
                        format!("v_m = {}", vm + 1),
                    ));
                    found = Some(s);
                }
                Err(_) => checks.push(Check::pass(
                    "closed bag neighborhood of v_m balances",
                    format!("v_m = {}: unbalanced, searched clique unions", vm + 1),
                )),
            }
        }
    }
    let mut s = match found.filter(|s| s.cover.len() <= CENTRAL_BAG_COVER) {
        Some(s) => s,
        None => match clique_union_separator(&h, &wm, Threshold::HALF, CENTRAL_BAG_COVER) {
            Search::Found(s) => s,
            Search::Absent => {
                return Err(Error::AssertionFailed {
                    claim: "central bag separator covered by nine cliques".into(),
                    witness: "no union of nine cliques balances the bag".into(),
                })
            }
            Search::Unknown => return Err(Error::BudgetExhausted),
        },
    };
    s.route = Route::CentralBag;
    checks.push(
        Check::new(
            "central bag separator covered by nine cliques",
            s.cover.len() <= CENTRAL_BAG_COVER,
            format!("{} cliques", s.cover.len()),
        )
        .into_result()?,
    );
    s.checks.extend(checks);
    Ok(s.mapped(&map, g.n()))
}

/// The bipartite graph of components outside and inside the central bag.
#[derive(Clone, Debug)]
pub struct AuxBipartite {
    /// Nodes `0..r` are the `a_i`, nodes `r..r + s` the `b_j`.
    pub h: Graph,
    pub d: Vec<VertexSet>,
    pub q: Vec<VertexSet>,
    /// Anchor `v(i)` of each `D_i`.
    pub anchor: Vec<usize>,
    pub core: VertexSet,
    /// `w'_H` numerators over the denominator of `w`.
    pub mass: Vec<BigUint>,
}

impl AuxBipartite {
    pub fn r(&self) -> usize {
        self.d.len()
    }

    pub fn a_nodes(&self) -> VertexSet {
        self.h.set_of(0..self.r())
    }

    pub fn b_nodes(&self) -> VertexSet {
        self.h.set_of(self.r()..self.h.n())
    }

    /// `F^G`: the union of components named by the nodes in `f`.
    pub fn lift(&self, f: &VertexSet, n: usize) -> VertexSet {
        let r = self.r();
        union_all(
            f.iter()
                .map(|x| if x < r { &self.d[x] } else { &self.q[x - r] }),
            n,
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "A": self.d.iter().zip(&self.anchor).map(|(d, a)| json!({ "component": ids(d), "anchor": a + 1 })).collect::<Vec<_>>(),
            "B": self.q.iter().map(ids).collect::<Vec<_>>(),
            "edges": self.h.edges().iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>(),
            "core": self.core.to_vec(),
        })
    }
}

/// Result of extending a separator of the central bag to the whole graph.
#[derive(Clone, Debug)]
pub struct Extension {
    pub sep: BalancedSeparator,
    pub x_tilde: VertexSet,
    pub aux: Option<AuxBipartite>,
    pub z: VertexSet,
    pub z_prime: VertexSet,
    /// Prefix hubs whose bag neighborhoods were added.
    pub added: Vec<usize>,
    /// Measured `k`, one less than the size of `Z`.
    pub k: usize,
    /// `t + 75 t (k + 1)`.
    pub bound: usize,
}

fn claim(checks: &mut Vec<Check>, name: &str, ok: bool, detail: String) -> Result<()> {
    checks.push(Check::new(name, ok, detail).into_result()?);
    Ok(())
}

/// Extends a balanced separator `x` of the central bag (ids of `g`) to a
/// `(w, 1/2)`-balanced separator of `g`, checking the intermediate claims.
pub fn extend_separator(
    g: &Graph,
    w: &WeightFunction,
    hd: &HubDivision,
    x: &BalancedSeparator,
) -> Result<Extension> {
    let n = g.n();
    let t = x.cover.len();
    let beta = &hd.bag.bag;
    let mut checks = Vec::new();
    let extended: Vec<VertexSet> = x
        .cover
        .iter()
        .map(|k| maximal_clique_extension(g, k))
        .collect::<Result<_>>()?;
    let x_tilde = union_all(&extended, n);
    let base_cover = disjoint(extended.iter().cloned(), n);
    let finish = |y: VertexSet,
                  cover: Vec<VertexSet>,
                  mut checks: Vec<Check>,
                  bound: usize|
     -> Result<BalancedSeparator> {
        checks.push(Check::new(
            "extended separator within the clique bound",
            cover.len() <= bound,
            format!("{} cliques, bound {bound}", cover.len()),
        ));
        let mut s = BalancedSeparator::new(g, w, Threshold::HALF, y, cover, Route::CentralBag)?;
        s.checks = x.checks.iter().cloned().chain(checks).collect();
        Ok(s)
    };
    let d: Vec<VertexSet> = g.components(&g.all().difference(&beta.union(&x_tilde)));
    let q: Vec<VertexSet> = g.components(&beta.difference(&x_tilde));
    let mass: Vec<BigUint> = d.iter().chain(&q).map(|s| w.mass_numerator(s)).collect();
    if mass.iter().all(|m| m.is_zero()) {
        let sep = finish(x_tilde.clone(), base_cover, checks, t)?;
        return Ok(Extension {
            sep,
            x_tilde,
            aux: None,
            z: VertexSet::new(0),
            z_prime: VertexSet::new(0),
            added: Vec::new(),
            k: 0,
            bound: t,
        });
    }
    let (r, s) = (d.len(), q.len());
    let mut edges = Vec::new();
    for (i, di) in d.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            if g.has_neighbor_in(di, qj) {
                edges.push((i, r + j));
            }
        }
    }
    let h = Graph::from_edges(r + s, &edges)?;
    let anchor: Vec<usize> = d
        .iter()
        .map(|di| {
            hd.bag
                .anchor_of(di.first().expect("nonempty component"))
                .ok_or_else(|| Error::AssertionFailed {
                    claim: "every outside component has an anchor".into(),
                    witness: format!("{:?}", ids(di)),
                })
        })
        .collect::<Result<_>>()?;
    let x_in_beta = x_tilde.intersection(beta);
    let mut core = h.set_of(r..r + s);
    (0..r)
        .filter(|&i| x_in_beta.contains(anchor[i]))
        .for_each(|i| core.insert(i));
    let aux = AuxBipartite {
        h,
        d,
        q,
        anchor,
        core,
        mass,
    };
    let h = &aux.h;

    let gamma = 5 * t + 1;
    let (hc, cmap) = h.induced(&aux.core);
    let mut long: Option<Vec<usize>> = None;
    for_each_hole(&hc, &Meter::unlimited(), &mut |hole| {
        if hole.len() >= gamma {
            long = Some(hole.iter().map(|&v| cmap[v]).collect());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    claim(
        &mut checks,
        "core has no long hole",
        long.is_none(),
        format!("gamma = {gamma}, hole {long:?}"),
    )?;
    for i in 0..r {
        if aux.core.contains(i) {
            let deg = h.neighbors(i).intersection_len(&aux.core);
            claim(
                &mut checks,
                "core degree at most five",
                deg <= 5,
                format!("a_{}: {deg}", i + 1),
            )?;
        } else {
            let deg = h.degree(i);
            claim(
                &mut checks,
                "non-core degree at most one",
                deg <= 1,
                format!("a_{}: {deg}", i + 1),
            )?;
        }
    }
    let candidates: Vec<usize> = hd
        .prefix()
        .iter()
        .copied()
        .filter(|&v| x_in_beta.contains(v))
        .collect();
    for (j, qj) in aux.q.iter().enumerate() {
        let count = candidates
            .iter()
            .filter(|&&v| g.neighbors(v).intersects(qj))
            .count();
        claim(
            &mut checks,
            "attachments per bag component at most 3t",
            count <= 3 * t,
            format!("Q_{}: {count}, t = {t}", j + 1),
        )?;
    }

    let w_h = WeightFunction::from_masses(aux.mass.clone())?;
    let meter = Budget::steps(SEARCH_STEPS).meter();
    let z = match min_balanced_set(h, &w_h, Threshold::HALF, h.n(), &meter) {
        Search::Found(z) => z,
        Search::Absent => {
            return Err(Error::Unsolvable(
                "auxiliary graph has no balanced separator".into(),
            ))
        }
        Search::Unknown => return Err(Error::BudgetExhausted),
    };
    let k = z.len().saturating_sub(1);
    let a_nodes = aux.a_nodes();
    let z_prime = z
        .intersection(&aux.b_nodes())
        .union(&h.neighborhood_of_set(&z.intersection(&a_nodes)));
    claim(
        &mut checks,
        "|Z'| at most 5(k + 1)",
        z_prime.len() <= 5 * (k + 1),
        format!("|Z'| = {}, k = {k}", z_prime.len()),
    )?;
    for f in h.components(&h.all().difference(&z_prime)) {
        let fg = aux.lift(&f, n);
        claim(
            &mut checks,
            "components of H minus Z' weigh at most one half",
            !w.exceeds(&fg, Threshold::HALF),
            format!("w = {}", fmt_rational(&w.mass(&fg))),
        )?;
    }

    let touched = union_all(z_prime.iter().filter(|&b| b >= r).map(|b| &aux.q[b - r]), n);
    let added: Vec<usize> = candidates
        .into_iter()
        .filter(|&v| g.neighbors(v).intersects(&touched))
        .collect();
    let mut y = x_tilde.clone();
    let mut cliques = base_cover;
    for &v in &added {
        y.union_with(&g.neighbors(v).intersection(beta));
        match hd.prefix_cover(v) {
            Some(c) => cliques.extend(c.iter().cloned()),
            None => cliques.extend(crate::hubdiv::neighborhood_cover(
                g,
                v,
                &g.neighbors(v).intersection(beta),
            )?),
        }
    }
    let cover = disjoint(cliques, n);
    let bound = t + 75 * t * (k + 1);
    let sep = match finish(y, cover, checks, bound) {
        Ok(s) => s,
        Err(Error::VerificationFailed(m)) => {
            return Err(Error::VerificationFailed(format!(
                "extended separator: {m}"
            )))
        }
        Err(e) => return Err(e),
    };
    Ok(Extension {
        sep,
        x_tilde,
        aux: Some(aux),
        z,
        z_prime,
        added,
        k,
        bound,
    })
}

/// Separator of the whole graph through the hub division and the central bag.
fn central_route(g: &Graph, w: &WeightFunction) -> Result<BalancedSeparator> {
    let hd = hub_division(g, w)?;
    let x = balanced_separator_central_bag(g, &hd)?;
    let mut s = extend_separator(g, w, &hd, &x)?.sep;
    if hd.hubs.is_empty() {
        s.route = Route::Wheelfree;
    }
    s.checks.splice(0..0, hd.checks);
    Ok(s)
}

/// Separator of `g` under weights lumped or restricted to the heavy side of a
/// clique cutset `k`, checked on `g`.
fn cutset_route(g: &Graph, w: &WeightFunction, k: &VertexSet) -> Result<BalancedSeparator> {
    let heavy = w
        .heavy_component(g, &g.all().difference(k), Threshold::HALF)
        .ok_or_else(|| Error::PreconditionViolated("cutset already balances".into()))?;
    let side = heavy.union(k);
    let (h, map) = g.induced(&side);
    let hw = match k.first() {
        Some(sink) => w.lumped(
            &map,
            map.iter()
                .position(|&v| v == sink)
                .expect("cut vertex in side"),
        ),
        None => w.restricted(&map)?,
    };
    let inner = weighted_separator_oracle(&h, &hw)?;
    let mut s = inner.mapped(&map, g.n()).reverified(g, w)?;
    s.route = Route::CliqueCutset;
    Ok(s)
}

/// Verified `(w, 1/2)`-balanced separator with small clique cover.
/// Routes: a balancing clique cutset; the heavy side of a clique cutset;
/// the central bag of the hub division; exhaustive clique-union search.
pub fn weighted_separator_oracle(g: &Graph, w: &WeightFunction) -> Result<BalancedSeparator> {
    let c = Threshold::HALF;
    if w.len() != g.n() {
        return Err(Error::Weight(
            "weight function and graph differ in size".into(),
        ));
    }
    let mut failed = Vec::new();
    let seps = clique_minimal_separators(g);
    let found = if let Some(k) = seps.iter().find(|k| w.balances(g, k, c)) {
        let cover = if k.is_empty() {
            Vec::new()
        } else {
            vec![k.clone()]
        };
        Some(BalancedSeparator::new(
            g,
            w,
            c,
            k.clone(),
            cover,
            Route::CliqueCutset,
        )?)
    } else if let Some(k) = seps.first() {
        match cutset_route(g, w, k) {
            Ok(s) => Some(s),
            Err(e) => {
                failed.push(Check::new("clique cutset route", false, e.to_string()));
                None
            }
        }
    } else {
        match central_route(g, w) {
            Ok(s) => Some(s),
            Err(e) => {
                failed.push(Check::new("central bag route", false, e.to_string()));
                None
            }
        }
    };
    let mut s = match found {
        Some(s) => s,
        None => fallback(g, w)?,
    };
    s.prune(g, w);
    s.tighten(g);
    s.checks.extend(failed);
    debug_assert!(s.verify(g, w));
    Ok(s)
}

fn fallback(g: &Graph, w: &WeightFunction) -> Result<BalancedSeparator> {
    let c = Threshold::HALF;
    if let Search::Found(s) = clique_union_separator(g, w, c, g.n()) {
        return Ok(s);
    }
    // removing everything leaves no component at all
    BalancedSeparator::covered(g, w, c, g.all(), Route::Fallback)
}
