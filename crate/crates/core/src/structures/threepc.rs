//! Detection of C4s, diamonds and the three-path configurations.

use std::ops::ControlFlow;

use super::budget::{Meter, Search};
use super::holes::{for_each_chordless_path, Walk};
use super::witness::{Roles, StructureKind, Witness};
use crate::graph::{Graph, VertexSet};

pub fn find_c4(g: &Graph, meter: &Meter) -> Search<Witness> {
    for u in 0..g.n() {
        for v in (u + 1..g.n()).filter(|&v| !g.adjacent(u, v)) {
            if !meter.tick() {
                return Search::Unknown;
            }
            let common = g.neighbors(u).intersection(g.neighbors(v));
            if let Some((x, y)) = nonadjacent_pair(g, &common) {
                return Search::Found(Witness::c4([u, x, v, y]));
            }
        }
    }
    Search::Absent
}

pub fn find_diamond(g: &Graph, meter: &Meter) -> Search<Witness> {
    for (u, v) in g.edges() {
        if !meter.tick() {
            return Search::Unknown;
        }
        let common = g.neighbors(u).intersection(g.neighbors(v));
        if let Some((x, y)) = nonadjacent_pair(g, &common) {
            return Search::Found(Witness::diamond(g, [u, v], [x, y]));
        }
    }
    Search::Absent
}

fn nonadjacent_pair(g: &Graph, s: &VertexSet) -> Option<(usize, usize)> {
    for x in s {
        if let Some(y) = s.iter().find(|&y| y > x && !g.adjacent(x, y)) {
            return Some((x, y));
        }
    }
    None
}

/// Three chordless paths `ends[i].0 -> ends[i].1` with interiors in
/// `allowed[i]` and pairwise anticomplete. With `ordered`, the first interior
/// vertices must increase from path to path.
fn three_paths(
    g: &Graph,
    ends: [(usize, usize); 3],
    allowed: [VertexSet; 3],
    direct: [bool; 3],
    ordered: bool,
    meter: &Meter,
) -> Search<[Vec<usize>; 3]> {
    let mut out = None;
    let walk = search_from(
        g,
        &ends,
        &allowed,
        &direct,
        ordered,
        0,
        &mut Vec::new(),
        meter,
        &mut out,
    );
    match (out, walk) {
        (Some(p), _) => Search::Found(p),
        (None, Walk::OutOfBudget) => Search::Unknown,
        _ => Search::Absent,
    }
}

#[allow(clippy::too_many_arguments)]
fn search_from(
    g: &Graph,
    ends: &[(usize, usize); 3],
    allowed: &[VertexSet; 3],
    direct: &[bool; 3],
    ordered: bool,
    i: usize,
    chosen: &mut Vec<Vec<usize>>,
    meter: &Meter,
    out: &mut Option<[Vec<usize>; 3]>,
) -> Walk {
    if i == 3 {
        *out = Some([chosen[0].clone(), chosen[1].clone(), chosen[2].clone()]);
        return Walk::Stopped;
    }
    let mut interior = allowed[i].clone();
    for p in chosen.iter() {
        let inner = g.set_of(p[1..p.len() - 1].iter().copied());
        interior.subtract(&g.closed_neighborhood_of_set(&inner));
    }
    let mut first = interior.clone();
    if ordered {
        if let Some(prev) = chosen.last() {
            let lo = prev[1];
            first = VertexSet::from_iter(g.n(), first.iter().filter(|&v| v > lo));
        }
    }
    let (s, t) = ends[i];
    for_each_chordless_path(g, s, t, &interior, &first, direct[i], meter, &mut |p| {
        chosen.push(p.to_vec());
        let w = search_from(g, ends, allowed, direct, ordered, i + 1, chosen, meter, out);
        chosen.pop();
        match w {
            Walk::Done => ControlFlow::Continue(()),
            _ => ControlFlow::Break(()),
        }
    })
    .or_budget(meter)
}

trait OrBudget {
    fn or_budget(self, meter: &Meter) -> Walk;
}

impl OrBudget for Walk {
    // A nested walk that ran out of budget surfaces here as `Stopped`.
    fn or_budget(self, meter: &Meter) -> Walk {
        if self == Walk::Stopped && meter.exhausted() {
            Walk::OutOfBudget
        } else {
            self
        }
    }
}

fn without(g: &Graph, remove: &[usize]) -> VertexSet {
    let mut s = g.all();
    remove.iter().for_each(|&v| s.remove(v));
    s
}

fn interior_set(g: &Graph, ends: &[usize], own: [usize; 2]) -> VertexSet {
    let mut s = without(g, ends);
    for &e in ends.iter().filter(|e| !own.contains(e)) {
        s.subtract(g.neighbors(e));
    }
    s
}

pub fn find_theta(g: &Graph, meter: &Meter) -> Search<Witness> {
    for a in 0..g.n() {
        if g.degree(a) < 3 {
            continue;
        }
        for b in (a + 1..g.n()).filter(|&b| !g.adjacent(a, b) && g.degree(b) >= 3) {
            let allowed = without(g, &[a, b]);
            let ends = [(a, b); 3];
            match three_paths(
                g,
                ends,
                [allowed.clone(), allowed.clone(), allowed],
                [false; 3],
                true,
                meter,
            ) {
                Search::Found(paths) => {
                    let w = Witness {
                        kind: StructureKind::Theta,
                        roles: Roles::Theta {
                            ends: [a, b],
                            paths,
                        },
                        flags: None,
                    };
                    return Search::Found(w);
                }
                Search::Unknown => return Search::Unknown,
                Search::Absent => {}
            }
        }
    }
    Search::Absent
}

/// All triangles `(x, y, z)` with `x < y < z`, in lexicographic order.
pub fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (x, y) in g.edges() {
        for z in g
            .neighbors(x)
            .intersection(g.neighbors(y))
            .iter()
            .filter(|&z| z > y)
        {
            out.push([x, y, z]);
        }
    }
    out.sort_unstable();
    out
}

pub fn find_pyramid(g: &Graph, meter: &Meter) -> Search<Witness> {
    let tris = triangles(g);
    for a in 0..g.n() {
        if g.degree(a) < 3 {
            continue;
        }
        for base in &tris {
            if base.contains(&a) {
                continue;
            }
            let touching = base.iter().filter(|&&b| g.adjacent(a, b)).count();
            if touching > 1 {
                continue;
            }
            if !meter.tick() {
                return Search::Unknown;
            }
            let e = [a, base[0], base[1], base[2]];
            let allowed = [0, 1, 2].map(|i| interior_set(g, &e, [a, base[i]]));
            let direct = [0, 1, 2].map(|i| g.adjacent(a, base[i]));
            let ends = [0, 1, 2].map(|i| (a, base[i]));
            match three_paths(g, ends, allowed, direct, false, meter) {
                Search::Found(paths) => {
                    let w = Witness {
                        kind: StructureKind::Pyramid,
                        roles: Roles::Pyramid {
                            apex: a,
                            base: *base,
                            paths,
                        },
                        flags: None,
                    };
                    return Search::Found(w);
                }
                Search::Unknown => return Search::Unknown,
                Search::Absent => {}
            }
        }
    }
    Search::Absent
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

pub fn find_prism(g: &Graph, meter: &Meter) -> Search<Witness> {
    let tris = triangles(g);
    for (i, top) in tris.iter().enumerate() {
        for bot in &tris[i + 1..] {
            if top.iter().any(|v| bot.contains(v)) {
                continue;
            }
            for perm in PERMS {
                let bottom = perm.map(|j| bot[j]);
                // only matched pairs may be adjacent
                let cross_ok =
                    (0..3).all(|x| (0..3).all(|y| x == y || !g.adjacent(top[x], bottom[y])));
                if !cross_ok {
                    continue;
                }
                if !meter.tick() {
                    return Search::Unknown;
                }
                let e = [top[0], top[1], top[2], bottom[0], bottom[1], bottom[2]];
                let allowed = [0, 1, 2].map(|k| interior_set(g, &e, [top[k], bottom[k]]));
                let direct = [0, 1, 2].map(|k| g.adjacent(top[k], bottom[k]));
                let ends = [0, 1, 2].map(|k| (top[k], bottom[k]));
                match three_paths(g, ends, allowed, direct, false, meter) {
                    Search::Found(paths) => {
                        let w = Witness {
                            kind: StructureKind::Prism,
                            roles: Roles::Prism {
                                top: *top,
                                bottom,
                                paths,
                            },
                            flags: None,
                        };
                        return Search::Found(w);
                    }
                    Search::Unknown => return Search::Unknown,
                    Search::Absent => {}
                }
            }
        }
    }
    Search::Absent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::families;

    fn run(f: fn(&Graph, &Meter) -> Search<Witness>, g: &Graph) -> Option<Witness> {
        match f(g, &Meter::unlimited()) {
            Search::Found(w) => {
                assert!(w.verify(g), "{w:?}");
                Some(w)
            }
            Search::Absent => None,
            Search::Unknown => panic!("unlimited search returned unknown"),
        }
    }

    #[test]
    fn k23_is_a_theta() {
        let k23 = families::complete_bipartite(2, 3);
        let w = run(find_theta, &k23).unwrap();
        match w.roles {
            Roles::Theta { ends, paths } => {
                assert_eq!(ends, [0, 1]);
                assert!(paths.iter().all(|p| p.len() == 3));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn prism_controls() {
        let p = families::prism(1, 1, 1).unwrap();
        assert!(run(find_prism, &p).is_some());
        assert!(run(find_theta, &p).is_none());
        assert!(run(find_pyramid, &p).is_none());
        let long = families::prism(2, 3, 1).unwrap();
        assert!(run(find_prism, &long).is_some());
    }

    #[test]
    fn pyramid_controls() {
        let p = families::pyramid(1, 2, 2).unwrap();
        assert!(run(find_pyramid, &p).is_some());
        assert!(run(find_prism, &p).is_none());
        assert!(run(find_theta, &p).is_none());
    }

    #[test]
    fn c4_and_diamond() {
        assert!(run(find_c4, &families::hole(7)).is_none());
        assert!(run(find_c4, &families::hole(4)).is_some());
        assert!(run(find_diamond, &families::diamond()).is_some());
        assert!(run(find_diamond, &families::clique(3)).is_none());
    }

    #[test]
    fn budget_yields_unknown() {
        let g = families::theta(4, 4, 5).unwrap();
        let m = super::super::Budget::steps(2).meter();
        assert_eq!(find_theta(&g, &m), Search::Unknown);
    }
}
