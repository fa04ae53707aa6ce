//! Minimal connected subgraphs attaching to three vertices.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectorOutcome {
    /// `H` is a path from the neighbor of `x[i]` to the neighbor of `x[j]`;
    /// `hole` records whether `x[i] x[j]` is an edge.
    PathLike {
        i: usize,
        j: usize,
        k: usize,
        path: Vec<usize>,
        hole: bool,
    },
    /// Three paths from a common vertex `a`, path `i` ending at `x[i]`.
    Center { a: usize, paths: [Vec<usize>; 3] },
    /// Three paths from the corners of a triangle, path `i` ending at `x[i]`.
    Triangle {
        corners: [usize; 3],
        paths: [Vec<usize>; 3],
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connector {
    pub x: [usize; 3],
    pub h: VertexSet,
    pub outcome: ConnectorOutcome,
}

fn attaches(g: &Graph, h: &VertexSet, x: &[usize; 3]) -> bool {
    !h.is_empty() && g.is_connected_set(h) && x.iter().all(|&xi| g.neighbors(xi).intersects(h))
}

/// Finds an inclusion-minimal connected `H ⊆ G ∖ {x1, x2, x3}` meeting all
/// three neighborhoods and classifies it.
pub fn classify_minimal_connector(g: &Graph, x: [usize; 3]) -> Result<Connector> {
    if x[0] == x[1] || x[1] == x[2] || x[0] == x[2] || x.iter().any(|&v| v >= g.n()) {
        return Err(Error::BadParams(
            "connector needs three distinct vertices".into(),
        ));
    }
    let mut rest = g.all();
    x.iter().for_each(|&v| rest.remove(v));
    let mut h = g
        .components(&rest)
        .into_iter()
        .find(|d| attaches(g, d, &x))
        .ok_or(Error::NoConnector)?;
    // Deleting in descending id order until a full pass removes nothing.
    loop {
        let mut changed = false;
        for v in h.to_vec().into_iter().rev() {
            let mut smaller = h.clone();
            smaller.remove(v);
            if attaches(g, &smaller, &x) {
                h = smaller;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let outcome = classify(g, &h, x).ok_or_else(|| Error::AssertionFailed {
        claim: "three-vertex attachment".into(),
        witness: format!("minimal connector {:?} fits no outcome", h.to_vec()),
    })?;
    Ok(Connector { x, h, outcome })
}

fn classify(g: &Graph, h: &VertexSet, x: [usize; 3]) -> Option<ConnectorOutcome> {
    path_like(g, h, x)
        .or_else(|| center(g, h, x))
        .or_else(|| triangle(g, h, x))
}

/// Orders `h` as an induced path, if it is one.
fn as_path(g: &Graph, h: &VertexSet) -> Option<Vec<usize>> {
    if h.len() == 1 {
        return Some(h.to_vec());
    }
    if !g.is_connected_set(h) || h.iter().any(|v| g.neighbors(v).intersection_len(h) > 2) {
        return None;
    }
    let end = h
        .iter()
        .find(|&v| g.neighbors(v).intersection_len(h) == 1)?;
    let mut path = vec![end];
    let mut seen = g.set_of([end]);
    while let Some(next) = g
        .neighbors(*path.last().unwrap())
        .intersection(h)
        .difference(&seen)
        .first()
    {
        seen.insert(next);
        path.push(next);
    }
    (path.len() == h.len()).then_some(path)
}

fn path_like(g: &Graph, h: &VertexSet, x: [usize; 3]) -> Option<ConnectorOutcome> {
    let path = as_path(g, h)?;
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        for p in [path.clone(), path.iter().rev().copied().collect::<Vec<_>>()] {
            let (a, b) = (p[0], *p.last().unwrap());
            let ni = g.neighbors(x[i]).intersection(h);
            let nj = g.neighbors(x[j]).intersection(h);
            if ni != g.set_of([a]) || nj != g.set_of([b]) {
                continue;
            }
            let nk = g.neighbors(x[k]).intersection(h);
            let two_nonadjacent = nk
                .iter()
                .any(|u| nk.iter().any(|v| u < v && !g.adjacent(u, v)));
            let adjacent_pair = nk.len() == 2 && g.is_clique(&nk);
            if two_nonadjacent || adjacent_pair {
                return Some(ConnectorOutcome::PathLike {
                    i,
                    j,
                    k,
                    path: p,
                    hole: g.adjacent(x[i], x[j]),
                });
            }
        }
    }
    None
}

/// Shortest path from `from` to `to` with interior inside `within`.
fn bfs_path(g: &Graph, from: usize, to: usize, within: &VertexSet) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.n()];
    let mut seen = g.set_of([from]);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if g.adjacent(u, to) {
            let mut p = vec![to, u];
            let mut c = u;
            while c != from {
                c = prev[c];
                p.push(c);
            }
            p.reverse();
            return Some(p);
        }
        for v in g.neighbors(u).intersection(within).difference(&seen).iter() {
            seen.insert(v);
            prev[v] = u;
            queue.push_back(v);
        }
    }
    None
}

fn is_induced_path(g: &Graph, p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &u)| {
        p.iter()
            .enumerate()
            .all(|(j, &v)| i == j || (g.adjacent(u, v) == (i.abs_diff(j) == 1)))
    })
}

// Checks the three-path outcomes. `shared` is the vertex common to all paths
// (outcome ii) or none (outcome iii); `allowed` lists the edges permitted
// between different paths besides `x_i x_j`.
fn three_paths_ok(
    g: &Graph,
    h: &VertexSet,
    x: [usize; 3],
    paths: &[Vec<usize>; 3],
    shared: Option<usize>,
    allowed: &[(usize, usize)],
) -> bool {
    if !paths.iter().all(|p| is_induced_path(g, p)) {
        return false;
    }
    let tails: Vec<VertexSet> = paths
        .iter()
        .map(|p| g.set_of(p.iter().copied().filter(|&v| Some(v) != shared)))
        .collect();
    let mut union = g.empty_set();
    for t in &tails {
        if t.intersects(&union) {
            return false;
        }
        union.union_with(t);
    }
    if let Some(a) = shared {
        union.insert(a);
    }
    let mut expected = h.clone();
    x.iter().for_each(|&v| expected.insert(v));
    if union != expected {
        return false;
    }
    for i in 0..3 {
        for j in i + 1..3 {
            for u in &tails[i] {
                for v in g.neighbors(u).intersection(&tails[j]).iter() {
                    let e = (u.min(v), u.max(v));
                    let ok = e == (x[i].min(x[j]), x[i].max(x[j])) || allowed.contains(&e);
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn center(g: &Graph, h: &VertexSet, x: [usize; 3]) -> Option<ConnectorOutcome> {
    for a in h {
        let mut within = h.clone();
        within.remove(a);
        let mut paths: [Vec<usize>; 3] = Default::default();
        let mut ok = true;
        for i in 0..3 {
            match bfs_path(g, a, x[i], &within) {
                Some(p) => paths[i] = p,
                None => ok = false,
            }
        }
        if ok && three_paths_ok(g, h, x, &paths, Some(a), &[]) {
            return Some(ConnectorOutcome::Center { a, paths });
        }
    }
    None
}

fn triangle(g: &Graph, h: &VertexSet, x: [usize; 3]) -> Option<ConnectorOutcome> {
    let (sub, map) = g.induced(h);
    for t in super::triangles(&sub) {
        let t = t.map(|v| map[v]);
        for perm in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            let corners = perm.map(|p| t[p]);
            let mut paths: [Vec<usize>; 3] = Default::default();
            let mut ok = true;
            for i in 0..3 {
                let mut within = h.clone();
                (0..3)
                    .filter(|&j| j != i)
                    .for_each(|j| within.remove(corners[j]));
                match bfs_path(g, corners[i], x[i], &within) {
                    Some(p) => paths[i] = p,
                    None => ok = false,
                }
            }
            let tri_edges: Vec<(usize, usize)> = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .map(|&(p, q)| (corners[p].min(corners[q]), corners[p].max(corners[q])))
                .collect();
            if ok && three_paths_ok(g, h, x, &paths, None, &tri_edges) {
                return Some(ConnectorOutcome::Triangle { corners, paths });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(g: &Graph, c: &Connector) -> bool {
        c.h.iter().all(|v| {
            let mut s = c.h.clone();
            s.remove(v);
            !attaches(g, &s, &c.x)
        })
    }

    #[test]
    fn star_is_a_center() {
        // x1, x2, x3 = 0, 1, 2; center 3
        let g = Graph::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        let c = classify_minimal_connector(&g, [0, 1, 2]).unwrap();
        assert_eq!(c.h, g.set_of([3]));
        assert!(matches!(c.outcome, ConnectorOutcome::Center { a: 3, .. }));
    }

    #[test]
    fn triangle_outcome() {
        let g = Graph::from_edges(6, &[(3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        let c = classify_minimal_connector(&g, [0, 1, 2]).unwrap();
        assert!(matches!(c.outcome, ConnectorOutcome::Triangle { .. }));
        assert!(minimal(&g, &c));
    }

    #[test]
    fn path_outcome() {
        // x1 - p - q - x2 with x3 adjacent to p and q
        let (x1, x2, x3, p, q) = (0, 1, 2, 3, 4);
        let g = Graph::from_edges(5, &[(x1, p), (p, q), (q, x2), (x3, p), (x3, q)]).unwrap();
        let c = classify_minimal_connector(&g, [x1, x2, x3]).unwrap();
        match c.outcome {
            ConnectorOutcome::PathLike { k, .. } => assert_eq!(k, 2),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn missing_connector() {
        let g = Graph::from_edges(4, &[(0, 3), (1, 3)]).unwrap();
        assert!(matches!(
            classify_minimal_connector(&g, [0, 1, 2]),
            Err(Error::NoConnector)
        ));
    }
}
