//! Clique cutsets, atoms, star cutsets and trisimplicial elimination.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{neighborhood_clique_partition, Graph, VertexSet};
use crate::structures::{
    find_3pc_or_wheel, find_wheel, hub_set, Budget, HubSet, Search, WheelFilter,
};

/// Output of MCS-M: picking order, higher-numbered neighbors in the minimal
/// triangulation, and the vertices whose `madj` is a minimal separator.
struct McsM {
    order: Vec<usize>,
    madj: Vec<VertexSet>,
    generator: Vec<bool>,
}

fn mcs_m(g: &Graph) -> McsM {
    let n = g.n();
    let mut label = vec![0usize; n];
    let mut numbered = g.empty_set();
    let mut madj = vec![g.empty_set(); n];
    let mut generator = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut prev: Option<usize> = None;
    for _ in 0..n {
        // highest label, smallest id on ties
        let x = g
            .all()
            .difference(&numbered)
            .iter()
            .max_by(|&a, &b| label[a].cmp(&label[b]).then(b.cmp(&a)))
            .expect("unnumbered vertex");
        if let Some(p) = prev {
            generator[x] = label[x] <= p;
        }
        prev = Some(label[x]);
        numbered.insert(x);
        order.push(x);
        // bottleneck search: reach[y] is the least possible maximum label over
        // interiors of paths from x to y through unnumbered vertices
        let mut reach = vec![usize::MAX; n];
        let mut done = numbered.clone();
        let mut frontier: Vec<(usize, usize)> = Vec::new();
        for y in g.neighbors(x).difference(&numbered).iter() {
            reach[y] = 0;
            frontier.push((0, y));
        }
        while let Some(pos) = frontier
            .iter()
            .enumerate()
            .filter(|(_, &(_, y))| !done.contains(y))
            .min_by_key(|(_, &(r, y))| (r, y))
            .map(|(i, _)| i)
        {
            let (r, y) = frontier.swap_remove(pos);
            if r > reach[y] {
                continue;
            }
            done.insert(y);
            // `y` acts as an interior vertex for paths continuing past it,
            // counted as label + 1 so a fill needs a strictly smaller label
            let through = r.max(label[y] + 1);
            for z in g.neighbors(y).difference(&done).iter() {
                if through < reach[z] {
                    reach[z] = through;
                    frontier.push((through, z));
                }
            }
        }
        let reached: Vec<usize> = g
            .all()
            .difference(&numbered)
            .iter()
            .filter(|&y| reach[y] != usize::MAX && reach[y] <= label[y])
            .collect();
        for y in reached {
            label[y] += 1;
            madj[y].insert(x);
        }
    }
    McsM {
        order,
        madj,
        generator,
    }
}

/// Atoms of the clique minimal separator decomposition arranged as a tree.
/// The last atom is the root; every other atom hangs from the first later
/// atom containing its cut clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomTree {
    pub atoms: Vec<VertexSet>,
    pub cut: Vec<VertexSet>,
    pub parent: Vec<Option<usize>>,
}

impl AtomTree {
    pub fn root(&self) -> usize {
        self.atoms.len() - 1
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.atoms.len())
            .filter(|&j| self.parent[j] == Some(i))
            .collect()
    }

    /// Vertices of atom `i` not in its cut clique.
    pub fn private(&self, i: usize) -> VertexSet {
        self.atoms[i].difference(&self.cut[i])
    }

    pub fn to_json(&self) -> Value {
        if self.atoms.is_empty() {
            return Value::Null;
        }
        self.node_json(self.root())
    }

    fn node_json(&self, i: usize) -> Value {
        let ids = |s: &VertexSet| s.iter().map(|v| v + 1).collect::<Vec<_>>();
        json!({
            "atom": ids(&self.atoms[i]),
            "cut_clique": ids(&self.cut[i]),
            "children": self.children(i).into_iter().map(|c| self.node_json(c)).collect::<Vec<_>>(),
        })
    }
}

/// Decomposes `g` along clique minimal separators. Atoms are extracted leaf
/// first: each extracted atom is `D ∪ K` for a clique cutset `K` and a
/// component `D` of what remains minus `K`.
pub fn atom_decomposition(g: &Graph) -> AtomTree {
    let mut atoms = Vec::new();
    let mut cut = Vec::new();
    if g.n() == 0 {
        return AtomTree {
            atoms,
            cut,
            parent: Vec::new(),
        };
    }
    let mcs = mcs_m(g);
    let mut rest = g.all();
    for &x in mcs.order.iter().rev() {
        let s = &mcs.madj[x];
        if !mcs.generator[x] || !g.is_clique(s) || !rest.contains(x) {
            continue;
        }
        let d = g.component_of(x, &rest.difference(s));
        let atom = d.union(s);
        if atom == rest {
            continue;
        }
        rest.subtract(&d);
        atoms.push(atom);
        cut.push(s.clone());
    }
    atoms.push(rest);
    cut.push(g.empty_set());
    let mut parent = vec![None; atoms.len()];
    for i in 0..atoms.len() - 1 {
        parent[i] = (i + 1..atoms.len()).find(|&j| cut[i].is_subset(&atoms[j]));
    }
    AtomTree { atoms, cut, parent }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCutset {
    pub k: VertexSet,
    pub sides: Vec<VertexSet>,
}

/// The lexicographically least clique minimal separator, with the components
/// it leaves. A disconnected graph yields the empty cutset.
pub fn find_clique_cutset(g: &Graph) -> Option<CliqueCutset> {
    let sides = |k: &VertexSet| g.components(&g.all().difference(k));
    if g.n() == 0 {
        return None;
    }
    if !g.is_connected() {
        let k = g.empty_set();
        return Some(CliqueCutset {
            sides: sides(&k),
            k,
        });
    }
    let mcs = mcs_m(g);
    let k = mcs
        .order
        .iter()
        .filter(|&&x| mcs.generator[x] && g.is_clique(&mcs.madj[x]))
        .map(|&x| mcs.madj[x].clone())
        .min_by(|a, b| a.lex_cmp(b))?;
    Some(CliqueCutset {
        sides: sides(&k),
        k,
    })
}

/// Every clique minimal separator of `g`, in lexicographic order. The empty
/// set is listed when `g` is disconnected.
pub fn clique_minimal_separators(g: &Graph) -> Vec<VertexSet> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mcs = mcs_m(g);
    let mut out: Vec<VertexSet> = mcs
        .order
        .iter()
        .filter(|&&x| mcs.generator[x] && g.is_clique(&mcs.madj[x]))
        .map(|&x| mcs.madj[x].clone())
        .collect();
    out.sort_by(|a, b| a.lex_cmp(b));
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UsOutcome {
    Complete,
    Hole,
    CliqueCutset(VertexSet),
}

/// Classifies a (3PC, wheel)-free graph as complete, a hole, or having a clique cutset.
pub fn us_classify(g: &Graph) -> Result<UsOutcome> {
    match find_3pc_or_wheel(g, Budget::UNLIMITED) {
        Search::Found(w) => return Err(Error::NotInClass(Box::new(w))),
        Search::Unknown => return Err(Error::BudgetExhausted),
        Search::Absent => {}
    }
    if g.is_complete() {
        return Ok(UsOutcome::Complete);
    }
    if g.is_hole_graph() {
        return Ok(UsOutcome::Hole);
    }
    match find_clique_cutset(g) {
        Some(c) => Ok(UsOutcome::CliqueCutset(c.k)),
        None => Err(Error::AssertionFailed {
            claim: "complete, hole or clique cutset".into(),
            witness: format!("{g:?}"),
        }),
    }
}

/// Star cutset `C ⊆ N[center]` with a component `D` of `G ∖ C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCutset {
    pub center: usize,
    pub cutset: VertexSet,
    pub component: VertexSet,
}

// `d` is a component of `G ∖ (N(d) ∪ {u})` with something left on the other side.
fn star_component(g: &Graph, d: &VertexSet, u: usize) -> Option<StarCutset> {
    let mut c = g.neighborhood_of_set(d);
    c.insert(u);
    if d.contains(u) || !c.is_subset(&g.closed_neighborhood(u)) {
        return None;
    }
    let other = g.all().difference(&c.union(d));
    (!other.is_empty()).then(|| StarCutset {
        center: u,
        cutset: c,
        component: d.clone(),
    })
}

// A star-cutset component properly inside `within`, in canonical order.
fn smaller_component(g: &Graph, within: &VertexSet) -> Option<StarCutset> {
    for u in 0..g.n() {
        let far = g.all().difference(&g.closed_neighborhood(u));
        for q in g.components(&far) {
            if q.is_subset(within) && q != *within {
                if let Some(s) = star_component(g, &q, u) {
                    return Some(s);
                }
            }
        }
        if within.len() >= 2 {
            let nu = g.closed_neighborhood(u);
            for y in within
                .iter()
                .filter(|&y| y != u && g.closed_neighborhood(y).is_subset(&nu))
            {
                if let Some(s) = star_component(g, &g.set_of([y]), u) {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// A star cutset whose component `D` properly contains no component left by
/// any star cutset. Found by descent; each step strictly shrinks `D`.
pub fn find_star_cutset_minimal(g: &Graph) -> Option<StarCutset> {
    let mut cur = smaller_component(g, &g.all())?;
    loop {
        let v = cur.center;
        let d = &cur.component;
        let hit = g.neighbors(v).intersection(d);
        let next = if hit.len() == d.len() && d.len() > 1 {
            star_component(g, &g.set_of([d.first().expect("nonempty")]), v)
        } else if !hit.is_empty() && hit.len() < d.len() {
            g.components(&d.difference(&hit))
                .into_iter()
                .find_map(|q| star_component(g, &q, v))
        } else if d.len() > 1 {
            smaller_component(g, d)
        } else {
            None
        };
        match next {
            Some(s) => {
                debug_assert!(s.component.len() < cur.component.len());
                cur = s;
            }
            None => return Some(cur),
        }
    }
}

/// A vertex whose neighborhood is covered by at most three cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trisimplicial {
    pub v: usize,
    pub cliques: Vec<VertexSet>,
}

impl Trisimplicial {
    pub fn verify(&self, g: &Graph) -> bool {
        let mut cov = g.empty_set();
        self.cliques.iter().for_each(|k| cov.union_with(k));
        self.cliques.len() <= 3
            && self.cliques.iter().all(|k| g.is_clique(k))
            && &cov == g.neighbors(self.v)
    }
}

fn not_found(what: &str) -> Error {
    Error::NotFound(format!("trisimplicial vertex: {what}"))
}

// A vertex private to the first extracted atom of a wheel-free graph.
fn bisimplicial_candidate(g: &Graph) -> Option<usize> {
    let tree = atom_decomposition(g);
    tree.private(0).first()
}

/// Finds a trisimplicial vertex following the star-cutset argument. Fails
/// with `NotFound` when the argument breaks down, which only happens outside
/// the class.
pub fn trisimplicial_vertex(g: &Graph) -> Result<Trisimplicial> {
    if g.n() == 0 {
        return Err(not_found("empty graph"));
    }
    let v = match find_wheel(g, WheelFilter::Any, Budget::UNLIMITED) {
        Search::Absent => {
            bisimplicial_candidate(g).ok_or_else(|| not_found("no private vertex"))?
        }
        Search::Unknown => return Err(Error::BudgetExhausted),
        Search::Found(_) => {
            let star = find_star_cutset_minimal(g)
                .ok_or_else(|| not_found("graph with a wheel has no star cutset"))?;
            let d = &star.component;
            let hit = g.neighbors(star.center).intersection_len(d);
            if hit == d.len() {
                d.first().expect("nonempty")
            } else if hit == 0 {
                let (sub, map) = g.induced(d);
                if find_wheel(&sub, WheelFilter::Any, Budget::UNLIMITED).is_found() {
                    return Err(not_found("minimal star cutset component has a wheel"));
                }
                map[bisimplicial_candidate(&sub).ok_or_else(|| not_found("no private vertex"))?]
            } else {
                return Err(not_found("center mixed on a minimal component"));
            }
        }
    };
    let cliques = neighborhood_clique_partition(g, v)
        .map_err(|_| not_found("diamond at the chosen vertex"))?;
    let t = Trisimplicial { v, cliques };
    if !t.verify(g) {
        return Err(not_found("neighborhood needs more than three cliques"));
    }
    Ok(t)
}

/// A full trisimplicial elimination ordering and its restriction to `Hub(G)`.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub order: Vec<usize>,
    /// Certificate of `order[i]` in `G[order[i..]]`, in original ids.
    pub certificates: Vec<Vec<VertexSet>>,
    pub hubs: HubSet,
    /// Positions in `order` of the hubs, i.e. the sequence `v_1, ..., v_l`.
    pub hub_positions: Vec<usize>,
}

impl Elimination {
    pub fn hub_order(&self) -> Vec<usize> {
        self.hub_positions.iter().map(|&i| self.order[i]).collect()
    }

    pub fn hub_certificate(&self, k: usize) -> &[VertexSet] {
        &self.certificates[self.hub_positions[k]]
    }
}

pub fn elimination_order(g: &Graph) -> Result<Elimination> {
    let hubs = hub_set(g, &g.all());
    let mut rest = g.all();
    let mut order = Vec::with_capacity(g.n());
    let mut certificates = Vec::with_capacity(g.n());
    while !rest.is_empty() {
        let (sub, map) = g.induced(&rest);
        let t = trisimplicial_vertex(&sub)?;
        let v = map[t.v];
        order.push(v);
        certificates.push(
            t.cliques
                .iter()
                .map(|k| g.set_of(k.iter().map(|u| map[u])))
                .collect(),
        );
        rest.remove(v);
    }
    let hub_positions = (0..order.len())
        .filter(|&i| hubs.hubs.contains(order[i]))
        .collect();
    Ok(Elimination {
        order,
        certificates,
        hubs,
        hub_positions,
    })
}
