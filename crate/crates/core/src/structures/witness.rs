//! Certified embeddings of forbidden configurations.

use serde::Serialize;
use serde_json::{json, Value};

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    C4,
    Diamond,
    Theta,
    Pyramid,
    Prism,
    Wheel,
}

impl std::fmt::Display for StructureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StructureKind::C4 => "c4",
            StructureKind::Diamond => "diamond",
            StructureKind::Theta => "theta",
            StructureKind::Pyramid => "pyramid",
            StructureKind::Prism => "prism",
            StructureKind::Wheel => "wheel",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for StructureKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "c4" => StructureKind::C4,
            "diamond" => StructureKind::Diamond,
            "theta" => StructureKind::Theta,
            "pyramid" => StructureKind::Pyramid,
            "prism" => StructureKind::Prism,
            "wheel" => StructureKind::Wheel,
            other => return Err(format!("unknown structure kind {other:?}")),
        })
    }
}

/// Classification of a wheel `(H, w)` by the shape of `N(w) ∩ H`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WheelFlags {
    pub spokes: usize,
    pub even: bool,
    pub bug: bool,
    pub twin: bool,
    pub universal: bool,
    pub line: bool,
    /// Neither a bug, a twin wheel nor a universal wheel.
    pub proper: bool,
}

impl WheelFlags {
    /// Classifies hub `w` against the hole given in cyclic order.
    pub fn classify(g: &Graph, hole: &[usize], w: usize) -> WheelFlags {
        let k = hole.len();
        let on: Vec<bool> = hole.iter().map(|&h| g.adjacent(w, h)).collect();
        let spokes = on.iter().filter(|&&b| b).count();
        // edges of H with both ends adjacent to w
        let spoke_edges = (0..k).filter(|&i| on[i] && on[(i + 1) % k]).count();
        let bug = spokes == 3 && spoke_edges == 1;
        let twin = spokes == 3 && spoke_edges == 2;
        let universal = spokes == k;
        let line = spokes == 4 && spoke_edges == 2 && {
            // the two spoke edges must be disjoint, i.e. no three consecutive spokes
            (0..k).all(|i| !(on[i] && on[(i + 1) % k] && on[(i + 2) % k]))
        };
        WheelFlags {
            spokes,
            even: spokes % 2 == 0,
            bug,
            twin,
            universal,
            line,
            proper: !bug && !twin && !universal,
        }
    }
}

/// Vertices of a witness by role. Paths include both of their ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Roles {
    C4 {
        cycle: [usize; 4],
    },
    Diamond {
        spine: [usize; 2],
        tips: [usize; 2],
    },
    Theta {
        ends: [usize; 2],
        paths: [Vec<usize>; 3],
    },
    Pyramid {
        apex: usize,
        base: [usize; 3],
        paths: [Vec<usize>; 3],
    },
    Prism {
        top: [usize; 3],
        bottom: [usize; 3],
        paths: [Vec<usize>; 3],
    },
    Wheel {
        hole: Vec<usize>,
        hub: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: StructureKind,
    pub roles: Roles,
    pub flags: Option<WheelFlags>,
}

impl Witness {
    pub fn c4(cycle: [usize; 4]) -> Self {
        Witness {
            kind: StructureKind::C4,
            roles: Roles::C4 { cycle },
            flags: None,
        }
    }

    pub fn diamond(_g: &Graph, spine: [usize; 2], tips: [usize; 2]) -> Self {
        Witness {
            kind: StructureKind::Diamond,
            roles: Roles::Diamond { spine, tips },
            flags: None,
        }
    }

    pub fn wheel(g: &Graph, hole: Vec<usize>, hub: usize) -> Self {
        let flags = WheelFlags::classify(g, &hole, hub);
        Witness {
            kind: StructureKind::Wheel,
            roles: Roles::Wheel { hole, hub },
            flags: Some(flags),
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = match &self.roles {
            Roles::C4 { cycle } => cycle.to_vec(),
            Roles::Diamond { spine, tips } => spine.iter().chain(tips).copied().collect(),
            Roles::Theta { paths, .. }
            | Roles::Pyramid { paths, .. }
            | Roles::Prism { paths, .. } => paths.iter().flatten().copied().collect(),
            Roles::Wheel { hole, hub } => {
                hole.iter().chain(std::iter::once(hub)).copied().collect()
            }
        };
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn expected_edges(&self) -> Vec<(usize, usize)> {
        let mut es = Vec::new();
        let path_edges = |p: &Vec<usize>, es: &mut Vec<(usize, usize)>| {
            es.extend(p.windows(2).map(|w| (w[0], w[1])));
        };
        match &self.roles {
            Roles::C4 { cycle } => {
                for i in 0..4 {
                    es.push((cycle[i], cycle[(i + 1) % 4]));
                }
            }
            Roles::Diamond { spine, tips } => {
                es.push((spine[0], spine[1]));
                for &s in spine {
                    for &t in tips {
                        es.push((s, t));
                    }
                }
            }
            Roles::Theta { paths, .. } => paths.iter().for_each(|p| path_edges(p, &mut es)),
            Roles::Pyramid { base, paths, .. } => {
                paths.iter().for_each(|p| path_edges(p, &mut es));
                es.extend([(base[0], base[1]), (base[1], base[2]), (base[0], base[2])]);
            }
            Roles::Prism { top, bottom, paths } => {
                paths.iter().for_each(|p| path_edges(p, &mut es));
                for t in [top, bottom] {
                    es.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
                }
            }
            // spokes depend on the host graph; wheels are checked in `verify`
            Roles::Wheel { .. } => {}
        }
        es.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect()
    }

    /// Re-checks that the embedded vertices induce exactly the claimed
    /// configuration in `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let vs = self.vertices();
        if vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        match &self.roles {
            Roles::Wheel { hole, hub } => {
                let hs = g.set_of(hole.iter().copied());
                if hs.len() != hole.len() || hs.contains(*hub) || !g.is_hole(&hs) {
                    return false;
                }
                let k = hole.len();
                if !(0..k).all(|i| g.adjacent(hole[i], hole[(i + 1) % k])) {
                    return false;
                }
                let flags = WheelFlags::classify(g, hole, *hub);
                flags.spokes >= 3 && self.flags == Some(flags)
            }
            _ => {
                if !self.shape_ok() {
                    return false;
                }
                let mut expected = self.expected_edges();
                expected.sort_unstable();
                expected.dedup();
                let mut actual = Vec::new();
                for (i, &u) in vs.iter().enumerate() {
                    for &v in &vs[i + 1..] {
                        if g.adjacent(u, v) {
                            actual.push((u, v));
                        }
                    }
                }
                actual == expected
            }
        }
    }

    /// Structural conditions on the role assignment itself.
    fn shape_ok(&self) -> bool {
        let disjoint_interiors = |paths: &[Vec<usize>; 3], strip_start: bool| {
            let mut seen = std::collections::BTreeSet::new();
            for p in paths {
                let from = usize::from(strip_start);
                let to = p.len() - 1;
                for &v in p.get(from..to).unwrap_or(&[]) {
                    if !seen.insert(v) {
                        return false;
                    }
                }
            }
            true
        };
        match &self.roles {
            Roles::C4 { cycle } => distinct(cycle),
            Roles::Diamond { spine, tips } => distinct(&[spine[0], spine[1], tips[0], tips[1]]),
            Roles::Theta { ends, paths } => {
                paths
                    .iter()
                    .all(|p| p.len() >= 3 && p[0] == ends[0] && p[p.len() - 1] == ends[1])
                    && disjoint_interiors(paths, true)
            }
            Roles::Pyramid { apex, base, paths } => {
                distinct(&[*apex, base[0], base[1], base[2]])
                    && paths
                        .iter()
                        .zip(base)
                        .all(|(p, &b)| p.len() >= 2 && p[0] == *apex && p[p.len() - 1] == b)
                    && paths.iter().filter(|p| p.len() == 2).count() <= 1
                    && disjoint_interiors(paths, true)
            }
            Roles::Prism { top, bottom, paths } => {
                distinct(&[top[0], top[1], top[2], bottom[0], bottom[1], bottom[2]])
                    && (0..3).all(|i| {
                        paths[i].len() >= 2
                            && paths[i][0] == top[i]
                            && paths[i][paths[i].len() - 1] == bottom[i]
                    })
                    && {
                        let mut all: Vec<usize> = paths.iter().flatten().copied().collect();
                        let n = all.len();
                        all.sort_unstable();
                        all.dedup();
                        all.len() == n
                    }
            }
            Roles::Wheel { .. } => true,
        }
    }

    /// JSON form with 1-indexed vertex ids.
    pub fn to_json(&self, g: &Graph) -> Value {
        let one = |v: &usize| v + 1;
        let path = |p: &Vec<usize>| p.iter().map(one).collect::<Vec<_>>();
        let roles = match &self.roles {
            Roles::C4 { cycle } => json!({ "cycle": cycle.iter().map(one).collect::<Vec<_>>() }),
            Roles::Diamond { spine, tips } => json!({
                "spine": spine.iter().map(one).collect::<Vec<_>>(),
                "tips": tips.iter().map(one).collect::<Vec<_>>(),
            }),
            Roles::Theta { ends, paths } => json!({
                "ends": ends.iter().map(one).collect::<Vec<_>>(),
                "paths": paths.iter().map(path).collect::<Vec<_>>(),
            }),
            Roles::Pyramid { apex, base, paths } => json!({
                "apex": apex + 1,
                "base": base.iter().map(one).collect::<Vec<_>>(),
                "paths": paths.iter().map(path).collect::<Vec<_>>(),
            }),
            Roles::Prism { top, bottom, paths } => json!({
                "top": top.iter().map(one).collect::<Vec<_>>(),
                "bottom": bottom.iter().map(one).collect::<Vec<_>>(),
                "paths": paths.iter().map(path).collect::<Vec<_>>(),
            }),
            Roles::Wheel { hole, hub } => json!({ "hole": path(hole), "hub": hub + 1 }),
        };
        json!({
            "kind": self.kind,
            "vertices": roles,
            "flags": self.flags,
            "verified": self.verify(g),
        })
    }

    pub fn vertex_set(&self, g: &Graph) -> VertexSet {
        g.set_of(self.vertices())
    }
}

fn distinct(vs: &[usize]) -> bool {
    let mut v = vs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len() == vs.len()
}
