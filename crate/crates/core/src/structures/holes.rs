//! Hole enumeration and chordless path search.

use std::ops::ControlFlow;

use super::budget::Meter;
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_HOLE_CAP: usize = 1_000_000;

/// How a visitor-driven walk ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Walk {
    /// Every candidate was visited.
    Done,
    /// The visitor asked to stop.
    Stopped,
    /// The meter ran out first.
    OutOfBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleList {
    /// Holes in cyclic order, each starting at its smallest vertex.
    pub holes: Vec<Vec<usize>>,
    pub truncated: bool,
}

/// All holes of `g`, up to `cap` of them.
pub fn enumerate_holes(g: &Graph, cap: usize) -> HoleList {
    enumerate_holes_metered(g, cap, &Meter::unlimited())
}

pub fn enumerate_holes_metered(g: &Graph, cap: usize, meter: &Meter) -> HoleList {
    let mut holes = Vec::new();
    let walk = for_each_hole(g, meter, &mut |h| {
        if holes.len() == cap {
            return ControlFlow::Break(());
        }
        holes.push(h.to_vec());
        ControlFlow::Continue(())
    });
    HoleList {
        holes,
        truncated: walk != Walk::Done,
    }
}

/// Visits every hole once, as `s, u, ..., v` with `s` its smallest vertex and
/// `u < v` the two neighbors of `s` on the hole. The order is canonical.
pub fn for_each_hole(
    g: &Graph,
    meter: &Meter,
    f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> Walk {
    let n = g.n();
    for s in 0..n {
        let mut higher = VertexSet::new(n);
        (s + 1..n).for_each(|x| higher.insert(x));
        let ns = g.neighbors(s).intersection(&higher);
        let interior = higher.difference(&g.closed_neighborhood(s));
        for u in &ns {
            for v in ns.iter().filter(|&v| v > u && !g.adjacent(u, v)) {
                let mut cycle = vec![s, u];
                let mut forbid = g.closed_neighborhood(s);
                forbid.insert(u);
                match extend_to(g, v, &interior, &mut cycle, &forbid, meter, f) {
                    Walk::Done => {}
                    other => return other,
                }
            }
        }
    }
    Walk::Done
}

// Extends the chordless path at the end of `path` until it can close at
// `target`. `forbid` holds the path plus neighbors of all path vertices but the
// last; `target` is never adjacent to a non-last path vertex.
fn extend_to(
    g: &Graph,
    target: usize,
    interior: &VertexSet,
    path: &mut Vec<usize>,
    forbid: &VertexSet,
    meter: &Meter,
    f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> Walk {
    let x = *path.last().expect("nonempty path");
    // y is a neighbor of x, so it is already covered here
    let next_forbid = forbid.union(g.neighbors(x));
    let cands = g.neighbors(x).intersection(interior).difference(forbid);
    for y in &cands {
        if !meter.tick() {
            return Walk::OutOfBudget;
        }
        path.push(y);
        let walk = if g.adjacent(y, target) {
            path.push(target);
            let r = f(path);
            path.pop();
            if r.is_break() {
                Walk::Stopped
            } else {
                Walk::Done
            }
        } else {
            extend_to(g, target, interior, path, &next_forbid, meter, f)
        };
        path.pop();
        if walk != Walk::Done {
            return walk;
        }
    }
    Walk::Done
}

/// Visits every chordless path from `s` to `t` whose interior lies in
/// `interior`, with the first interior vertex drawn from `first`. When `s` and
/// `t` are adjacent the only chordless path is the edge, reported iff `direct`.
#[allow(clippy::too_many_arguments)]
pub fn for_each_chordless_path(
    g: &Graph,
    s: usize,
    t: usize,
    interior: &VertexSet,
    first: &VertexSet,
    direct: bool,
    meter: &Meter,
    f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> Walk {
    if g.adjacent(s, t) {
        if !direct {
            return Walk::Done;
        }
        return if f(&[s, t]).is_break() {
            Walk::Stopped
        } else {
            Walk::Done
        };
    }
    let mut inner = interior.clone();
    inner.remove(s);
    inner.remove(t);
    // cheap reachability prune
    let mut reach = inner.clone();
    reach.insert(s);
    let comp = g.component_of(s, &reach);
    if !comp.intersects(g.neighbors(t)) {
        return Walk::Done;
    }
    let starts = g.neighbors(s).intersection(&inner).intersection(first);
    let forbid = g.closed_neighborhood(s);
    let mut path = vec![s];
    for y in &starts {
        if !meter.tick() {
            return Walk::OutOfBudget;
        }
        path.push(y);
        let walk = if g.adjacent(y, t) {
            path.push(t);
            let r = f(&path);
            path.pop();
            if r.is_break() {
                Walk::Stopped
            } else {
                Walk::Done
            }
        } else {
            extend_to(g, t, &inner, &mut path, &forbid, meter, f)
        };
        path.pop();
        if walk != Walk::Done {
            return walk;
        }
    }
    Walk::Done
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::families;

    #[test]
    fn hole_counts() {
        assert_eq!(enumerate_holes(&families::hole(6), 10).holes.len(), 1);
        assert!(enumerate_holes(&families::clique(4), 10).holes.is_empty());
        let prism = families::prism(1, 1, 1).unwrap();
        let hl = enumerate_holes(&prism, 100);
        assert_eq!(hl.holes.len(), 3);
        assert!(hl.holes.iter().all(|h| h.len() == 4));
        assert!(!hl.truncated);
    }

    #[test]
    fn truncation_is_flagged() {
        let prism = families::prism(1, 1, 1).unwrap();
        let hl = enumerate_holes(&prism, 2);
        assert_eq!(hl.holes.len(), 2);
        assert!(hl.truncated);
    }

    #[test]
    fn chordless_paths_in_a_cycle() {
        let c6 = families::hole(6);
        let mut found = Vec::new();
        let all = c6.all();
        for_each_chordless_path(&c6, 0, 3, &all, &all, true, &Meter::unlimited(), &mut |p| {
            found.push(p.to_vec());
            ControlFlow::Continue(())
        });
        found.sort();
        assert_eq!(found, vec![vec![0, 1, 2, 3], vec![0, 5, 4, 3]]);
    }
}
