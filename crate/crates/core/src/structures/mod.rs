//! Forbidden configurations, wheels, hubs and class membership.

mod budget;
mod connector;
mod holes;
mod threepc;
mod witness;

use std::ops::ControlFlow;

use serde_json::{json, Value};

pub use budget::{Budget, Meter, Search};
pub use connector::{classify_minimal_connector, Connector, ConnectorOutcome};
pub use holes::{
    enumerate_holes, enumerate_holes_metered, for_each_chordless_path, for_each_hole, HoleList,
    Walk, DEFAULT_HOLE_CAP,
};
pub use threepc::{find_c4, find_diamond, find_prism, find_pyramid, find_theta, triangles};
pub use witness::{Roles, StructureKind, WheelFlags, Witness};

use crate::graph::{Graph, VertexSet};

/// Searches for a C4, diamond, theta, pyramid or prism.
pub fn find_structure(g: &Graph, kind: StructureKind, budget: Budget) -> Search<Witness> {
    let meter = budget.meter();
    let found = match kind {
        StructureKind::C4 => find_c4(g, &meter),
        StructureKind::Diamond => find_diamond(g, &meter),
        StructureKind::Theta => find_theta(g, &meter),
        StructureKind::Pyramid => find_pyramid(g, &meter),
        StructureKind::Prism => find_prism(g, &meter),
        StructureKind::Wheel => find_wheel(g, WheelFilter::Any, budget),
    };
    checked(g, found)
}

fn checked(g: &Graph, s: Search<Witness>) -> Search<Witness> {
    if let Search::Found(w) = &s {
        assert!(
            w.verify(g),
            "internal error: detector produced an invalid witness {w:?}"
        );
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WheelFilter {
    Any,
    Even,
    NonBug,
    Proper,
}

impl WheelFilter {
    pub fn accepts(self, f: &WheelFlags) -> bool {
        match self {
            WheelFilter::Any => true,
            WheelFilter::Even => f.even,
            WheelFilter::NonBug => !f.bug,
            WheelFilter::Proper => f.proper,
        }
    }
}

impl std::str::FromStr for WheelFilter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "any" => WheelFilter::Any,
            "even" => WheelFilter::Even,
            "non-bug" | "nonbug" => WheelFilter::NonBug,
            "proper" => WheelFilter::Proper,
            _ => return Err(format!("unknown wheel filter {s:?}")),
        })
    }
}

/// First wheel, in hole-enumeration order and then by hub id, passing `filter`.
pub fn find_wheel(g: &Graph, filter: WheelFilter, budget: Budget) -> Search<Witness> {
    find_wheel_metered(g, filter, &budget.meter())
}

pub fn find_wheel_metered(g: &Graph, filter: WheelFilter, meter: &Meter) -> Search<Witness> {
    let mut found = None;
    let walk = for_each_hole(g, meter, &mut |hole| {
        let hs = g.set_of(hole.iter().copied());
        for w in g.all().difference(&hs).iter() {
            if g.neighbors(w).intersection_len(&hs) < 3 {
                continue;
            }
            let flags = WheelFlags::classify(g, hole, w);
            if filter.accepts(&flags) {
                found = Some(Witness::wheel(g, hole.to_vec(), w));
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    let s = match (found, walk) {
        (Some(w), _) => Search::Found(w),
        (None, Walk::OutOfBudget) => Search::Unknown,
        _ => Search::Absent,
    };
    checked(g, s)
}

/// Hub set of `x`: vertices of `x` centering a non-bug wheel whose hole lies in `x`.
#[derive(Clone, Debug)]
pub struct HubSet {
    pub x: VertexSet,
    pub hubs: VertexSet,
    pub witnesses: Vec<(usize, Witness)>,
    /// Vertices left undecided because the budget ran out.
    pub undecided: VertexSet,
}

impl HubSet {
    pub fn is_exact(&self) -> bool {
        self.undecided.is_empty()
    }

    pub fn witness(&self, v: usize) -> Option<&Witness> {
        self.witnesses.iter().find(|(h, _)| *h == v).map(|(_, w)| w)
    }
}

pub fn hub_set(g: &Graph, x: &VertexSet) -> HubSet {
    hub_set_budgeted(g, x, Budget::UNLIMITED)
}

pub fn hub_set_budgeted(g: &Graph, x: &VertexSet, budget: Budget) -> HubSet {
    let (h, map) = g.induced(x);
    let mut hubs = g.empty_set();
    let mut witnesses = Vec::new();
    let meter = budget.meter();
    let walk = for_each_hole(&h, &meter, &mut |hole| {
        let hs = h.set_of(hole.iter().copied());
        for w in h.all().difference(&hs).iter() {
            if hubs.contains(map[w]) || h.neighbors(w).intersection_len(&hs) < 3 {
                continue;
            }
            if !WheelFlags::classify(&h, hole, w).bug {
                hubs.insert(map[w]);
                let orig: Vec<usize> = hole.iter().map(|&v| map[v]).collect();
                witnesses.push((map[w], Witness::wheel(g, orig, map[w])));
            }
        }
        if hubs.len() == x.len() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    witnesses.sort_by_key(|(v, _)| *v);
    let undecided = if walk == Walk::OutOfBudget {
        x.difference(&hubs)
    } else {
        g.empty_set()
    };
    HubSet {
        x: x.clone(),
        hubs,
        witnesses,
        undecided,
    }
}

/// Three-valued membership verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    In,
    Out(Box<Witness>),
    Unknown,
}

impl Verdict {
    pub fn is_in(&self) -> bool {
        matches!(self, Verdict::In)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Out(w) => Some(w),
            _ => None,
        }
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        match self {
            Verdict::In => json!({ "verdict": "in" }),
            Verdict::Out(w) => json!({ "verdict": "out", "witness": w.to_json(g) }),
            Verdict::Unknown => json!({ "verdict": "unknown" }),
        }
    }
}

/// Membership in C and in C* (the same class without the pyramid exclusion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub c: Verdict,
    pub c_star: Verdict,
}

impl ClassReport {
    pub fn to_json(&self, g: &Graph) -> Value {
        json!({ "C": self.c.to_json(g), "C*": self.c_star.to_json(g) })
    }
}

type Detector<'a> = dyn Fn(&Meter) -> Search<Witness> + 'a;

/// Checks thetas, C4s, diamonds, prisms and even wheels, then pyramids. Each
/// detector gets its own copy of `budget`.
pub fn check_class(g: &Graph, budget: Budget) -> ClassReport {
    let mut unknown = false;
    let star_checks: [&Detector; 5] = [
        &|m| find_theta(g, m),
        &|m| find_c4(g, m),
        &|m| find_diamond(g, m),
        &|m| find_prism(g, m),
        &|m| find_wheel_metered(g, WheelFilter::Even, m),
    ];
    for check in star_checks {
        match checked(g, check(&budget.meter())) {
            Search::Found(w) => {
                let v = Verdict::Out(Box::new(w));
                return ClassReport {
                    c: v.clone(),
                    c_star: v,
                };
            }
            Search::Unknown => unknown = true,
            Search::Absent => {}
        }
    }
    let c_star = if unknown {
        Verdict::Unknown
    } else {
        Verdict::In
    };
    let c = match checked(g, find_pyramid(g, &budget.meter())) {
        Search::Found(w) => Verdict::Out(Box::new(w)),
        Search::Unknown => Verdict::Unknown,
        Search::Absent if unknown => Verdict::Unknown,
        Search::Absent => Verdict::In,
    };
    ClassReport { c, c_star }
}

/// Whether `g` is in C, treating an undecided search as failure.
pub fn in_class_c(g: &Graph) -> bool {
    check_class(g, Budget::UNLIMITED).c.is_in()
}

/// First theta, pyramid, prism or wheel, if any.
pub fn find_3pc_or_wheel(g: &Graph, budget: Budget) -> Search<Witness> {
    let mut unknown = false;
    for kind in [
        StructureKind::Theta,
        StructureKind::Pyramid,
        StructureKind::Prism,
        StructureKind::Wheel,
    ] {
        match find_structure(g, kind, budget) {
            Search::Found(w) => return Search::Found(w),
            Search::Unknown => unknown = true,
            Search::Absent => {}
        }
    }
    if unknown {
        Search::Unknown
    } else {
        Search::Absent
    }
}
