//! Star separations, the `≤_A` order, revised collections and central bags.

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{is_separation, Graph, Separation, VertexSet};
use crate::weights::{fmt_rational, Threshold, WeightFunction};

fn ids(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

pub fn separation_json(s: &Separation) -> Value {
    json!({ "A": ids(&s.a), "C": ids(&s.c), "B": ids(&s.b) })
}

/// Whether every component of `G ∖ N[v]` has weight at most one half.
pub fn is_balanced_vertex(g: &Graph, w: &WeightFunction, v: usize) -> bool {
    let far = g.all().difference(&g.closed_neighborhood(v));
    w.heavy_component(g, &far, Threshold::HALF).is_none()
}

/// `(balanced, unbalanced)` vertices of `g` under `w`.
pub fn balanced_vertices(g: &Graph, w: &WeightFunction) -> (VertexSet, VertexSet) {
    let mut bal = g.empty_set();
    let mut unbal = g.empty_set();
    for v in 0..g.n() {
        if is_balanced_vertex(g, w, v) {
            bal.insert(v);
        } else {
            unbal.insert(v);
        }
    }
    (bal, unbal)
}

/// Star separation with its center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSeparation {
    pub v: usize,
    pub sep: Separation,
}

impl StarSeparation {
    pub fn to_json(&self) -> Value {
        let mut j = separation_json(&self.sep);
        j["v"] = json!(self.v + 1);
        j
    }
}

/// `S_v = (A_v, C_v, B_v)`: `B_v` is the heaviest component of `G ∖ N[v]`
/// (smallest minimum id on ties), `C_v = {v} ∪ (N(v) ∩ N(B_v))`.
pub fn canonical_star_separation(
    g: &Graph,
    w: &WeightFunction,
    v: usize,
) -> Result<StarSeparation> {
    if !is_balanced_vertex(g, w, v) {
        let far = g.all().difference(&g.closed_neighborhood(v));
        let mut best: Option<VertexSet> = None;
        for d in g.components(&far) {
            if best.as_ref().is_none_or(|b| w.heavier(&d, b)) {
                best = Some(d);
            }
        }
        let b = best.expect("unbalanced vertex has a component");
        let mut c = g.neighbors(v).intersection(&g.neighborhood_of_set(&b));
        c.insert(v);
        let a = g.all().difference(&b.union(&c));
        return Ok(StarSeparation {
            v,
            sep: Separation { a, c, b },
        });
    }
    Err(Error::VertexBalanced(v))
}

/// The relation `x ≤_A y` iff `x = y` or `y ∈ A_x` on a set of unbalanced vertices.
#[derive(Clone, Debug)]
pub struct LeqA {
    pub u: VertexSet,
    pub canonical: Vec<StarSeparation>,
    pub minimal: VertexSet,
}

impl LeqA {
    fn a_side(&self, x: usize) -> &VertexSet {
        &self
            .canonical
            .iter()
            .find(|s| s.v == x)
            .expect("x in U")
            .sep
            .a
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.a_side(x).contains(y)
    }

    /// All pairs `(x, y)` with `x ≤_A y`, `x ≠ y`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in &self.u {
            for y in self.a_side(x).intersection(&self.u).iter() {
                out.push((x, y));
            }
        }
        out
    }

    /// Failures of antisymmetry and transitivity (reflexivity holds by definition).
    pub fn poset_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let pairs = self.pairs();
        for &(x, y) in &pairs {
            if self.leq(y, x) {
                out.push(format!("antisymmetry: {} and {}", x + 1, y + 1));
            }
            for z in self.a_side(y).intersection(&self.u).iter() {
                if z != x && !self.leq(x, z) {
                    out.push(format!("transitivity: {} <= {} <= {}", x + 1, y + 1, z + 1));
                }
            }
        }
        out
    }
}

/// The `≤_A` relation on `u` and its minimal elements.
pub fn leq_a_minimal(g: &Graph, w: &WeightFunction, u: &VertexSet) -> Result<LeqA> {
    let canonical = u
        .iter()
        .map(|v| canonical_star_separation(g, w, v))
        .collect::<Result<Vec<_>>>()?;
    let mut minimal = u.clone();
    for s in &canonical {
        for y in s.sep.a.intersection(u).iter() {
            if y != s.v {
                minimal.remove(y);
            }
        }
    }
    Ok(LeqA {
        u: u.clone(),
        canonical,
        minimal,
    })
}

/// `S̃_u` together with the canonical `S_u` it revises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RevisedSeparation {
    pub u: usize,
    pub sep: Separation,
    pub canonical: Separation,
}

/// The `X`-revised collection, in the order of `x`.
pub fn revised_collection(
    g: &Graph,
    w: &WeightFunction,
    x: &[usize],
) -> Result<Vec<RevisedSeparation>> {
    let xs = g.set_of(x.iter().copied());
    let mut out = Vec::with_capacity(x.len());
    for &u in x {
        let s = canonical_star_separation(g, w, u)?.sep;
        let mut c = s.c.clone();
        let mut others = s.c.intersection(&xs);
        others.remove(u);
        for v in &others {
            c.union_with(&g.neighbors(u).intersection(g.neighbors(v)));
        }
        let b = s.b.clone();
        let a = g.all().difference(&c.union(&b));
        let rev = Separation { a, c, b };
        let nu = g.neighbors(u);
        let props = [
            (rev.b == s.b, "B~ = B"),
            (
                s.c.is_subset(&rev.c) && rev.c.is_subset(&g.closed_neighborhood(u)),
                "C ⊆ C~ ⊆ N[u]",
            ),
            (rev.a.is_subset(&s.a), "A~ ⊆ A"),
            (s.a.difference(nu).is_subset(&rev.a), "A ∖ N(u) ⊆ A~"),
            (is_separation(g, &rev).0, "separation"),
        ];
        if let Some((_, what)) = props.iter().find(|(ok, _)| !ok) {
            return Err(Error::PropertyViolation(format!(
                "revised separation of {}: {what}",
                u + 1
            )));
        }
        out.push(RevisedSeparation {
            u,
            sep: rev,
            canonical: s,
        });
    }
    Ok(out)
}

/// A collection of separations with the bijection `f(centers[i]) = seps[i]`;
/// the order of `centers` is the fixed ordering of `v(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothCollection {
    pub centers: Vec<usize>,
    pub seps: Vec<Separation>,
}

impl SmoothCollection {
    pub fn from_revised(r: &[RevisedSeparation]) -> Self {
        SmoothCollection {
            centers: r.iter().map(|s| s.u).collect(),
            seps: r.iter().map(|s| s.sep.clone()).collect(),
        }
    }

    pub fn empty() -> Self {
        SmoothCollection {
            centers: Vec::new(),
            seps: Vec::new(),
        }
    }
}

/// Whether every component of `A_1 ∪ A_2` is a component of `A_1` or of `A_2`.
pub fn nearly_non_crossing(g: &Graph, s1: &Separation, s2: &Separation) -> bool {
    let c1 = g.components(&s1.a);
    let c2 = g.components(&s2.a);
    g.components(&s1.a.union(&s2.a))
        .iter()
        .all(|d| c1.contains(d) || c2.contains(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothViolation {
    NotASeparation(usize),
    Crossing(usize, usize),
    Center(usize),
    Balanced(usize),
    ASide(usize),
    CenterInA(usize, usize),
    Size,
}

impl std::fmt::Display for SmoothViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SmoothViolation::NotASeparation(i) => write!(f, "member {i} is not a separation"),
            SmoothViolation::Crossing(i, j) => write!(f, "(i) members {i} and {j} cross"),
            SmoothViolation::Center(v) => write!(f, "(ii) {} not in C(f(v)) ⊆ N[v]", v + 1),
            SmoothViolation::Balanced(v) => write!(f, "(ii) {} is balanced", v + 1),
            SmoothViolation::ASide(v) => write!(f, "(ii) A(f({})) not inside A_v", v + 1),
            SmoothViolation::CenterInA(v, i) => {
                write!(f, "(iii) {} lies in A of member {i}", v + 1)
            }
            SmoothViolation::Size => write!(f, "centers and separations differ in number"),
        }
    }
}

/// Checks the three smoothness clauses, reporting every violation.
pub fn smooth_check(
    g: &Graph,
    w: &WeightFunction,
    s: &SmoothCollection,
) -> (bool, Vec<SmoothViolation>) {
    let mut out = Vec::new();
    if s.centers.len() != s.seps.len() {
        return (false, vec![SmoothViolation::Size]);
    }
    for (i, sep) in s.seps.iter().enumerate() {
        if !is_separation(g, sep).0 {
            out.push(SmoothViolation::NotASeparation(i));
        }
    }
    for i in 0..s.seps.len() {
        for j in i + 1..s.seps.len() {
            if !nearly_non_crossing(g, &s.seps[i], &s.seps[j]) {
                out.push(SmoothViolation::Crossing(i, j));
            }
        }
    }
    for (&v, sep) in s.centers.iter().zip(&s.seps) {
        if !sep.c.contains(v) || !sep.c.is_subset(&g.closed_neighborhood(v)) {
            out.push(SmoothViolation::Center(v));
        }
        match canonical_star_separation(g, w, v) {
            Ok(c) if sep.a.is_subset(&c.sep.a) => {}
            Ok(_) => out.push(SmoothViolation::ASide(v)),
            Err(_) => out.push(SmoothViolation::Balanced(v)),
        }
    }
    for &v in &s.centers {
        for (i, sep) in s.seps.iter().enumerate() {
            if sep.a.contains(v) {
                out.push(SmoothViolation::CenterInA(v, i));
            }
        }
    }
    (out.is_empty(), out)
}

/// The central bag of a smooth collection with its inherited weights.
#[derive(Clone, Debug)]
pub struct CentralBag {
    pub bag: VertexSet,
    /// Inherited weights, indexed by vertices of `G` and zero outside the bag.
    pub weights: WeightFunction,
    /// Components of `G ∖ bag` with their anchors.
    pub anchors: Vec<(VertexSet, usize)>,
    /// `A*(f(v_i))` in the order of the collection's centers.
    pub a_star: Vec<VertexSet>,
}

impl CentralBag {
    pub fn anchor_of(&self, v: usize) -> Option<usize> {
        self.anchors
            .iter()
            .find(|(d, _)| d.contains(v))
            .map(|(_, a)| *a)
    }

    /// `G[bag]` with its vertex map and the inherited weights on it.
    pub fn induced(&self, g: &Graph) -> (Graph, Vec<usize>, WeightFunction) {
        let (h, map) = g.induced(&self.bag);
        let w = self
            .weights
            .restricted(&map)
            .expect("inherited weights have total one");
        (h, map, w)
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        json!({
            "bag": ids(&self.bag),
            "weights": self.bag.iter().map(|v| json!([v + 1, fmt_rational(&self.weights.get(v))])).collect::<Vec<_>>(),
            "anchors": self.anchors.iter().map(|(d, a)| json!({ "component": ids(d), "anchor": a + 1 })).collect::<Vec<_>>(),
            "n": g.n(),
        })
    }
}

pub fn central_bag(g: &Graph, w: &WeightFunction, s: &SmoothCollection) -> Result<CentralBag> {
    let (ok, violations) = smooth_check(g, w, s);
    if !ok {
        let msg = violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::NotSmooth(msg));
    }
    let mut bag = g.all();
    for sep in &s.seps {
        bag.intersect_with(&sep.b.union(&sep.c));
    }
    let outside = g.all().difference(&bag);
    let mut anchors = Vec::new();
    let mut a_star = vec![g.empty_set(); s.centers.len()];
    for d in g.components(&outside) {
        let i = s
            .seps
            .iter()
            .position(|sep| d.is_subset(&sep.a))
            .ok_or_else(|| {
                Error::NotSmooth(format!("component {:?} lies in no A side", ids(&d)))
            })?;
        a_star[i].union_with(&d);
        anchors.push((d, s.centers[i]));
    }
    let mut masses: Vec<BigUint> = (0..g.n())
        .map(|v| {
            if bag.contains(v) {
                w.numerator(v).clone()
            } else {
                BigUint::default()
            }
        })
        .collect();
    for (i, &v) in s.centers.iter().enumerate() {
        masses[v] += w.mass_numerator(&a_star[i]);
    }
    let weights = WeightFunction::from_masses(masses)?;
    debug_assert_eq!(weights.total(), w.total());
    Ok(CentralBag {
        bag,
        weights,
        anchors,
        a_star,
    })
}

/// Whether `S_1` is a shield for `S_2`, after checking that both are star
/// separations with connected `B_i` and `N(B_i) = C_i ∖ {v_i}`.
pub fn shield_check(g: &Graph, s1: &StarSeparation, s2: &StarSeparation) -> Result<bool> {
    for (i, s) in [s1, s2].iter().enumerate() {
        let fail = |what: &str| {
            Err(Error::PreconditionViolated(format!(
                "separation {}: {what}",
                i + 1
            )))
        };
        if !is_separation(g, &s.sep).0 {
            return fail("not a separation");
        }
        if !s.sep.c.contains(s.v) || !s.sep.c.is_subset(&g.closed_neighborhood(s.v)) {
            return fail("not a star separation at its center");
        }
        if s.sep.b.is_empty() || !g.is_connected_set(&s.sep.b) {
            return fail("B is not connected");
        }
        let mut c = s.sep.c.clone();
        c.remove(s.v);
        if g.neighborhood_of_set(&s.sep.b) != c {
            return fail("N(B) differs from C minus the center");
        }
    }
    Ok(s1
        .sep
        .b
        .union(&s1.sep.c)
        .is_subset(&s2.sep.b.union(&s2.sep.c)))
}
