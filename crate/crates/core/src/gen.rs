//! Instance generation: named families, class-C sampling and clique sums.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structures::{check_class, Budget, Verdict, Witness};

pub mod families {
    use super::*;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path")
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`; a hole when `n >= 4`.
    pub fn hole(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle")
    }

    pub fn clique(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Graph::from_edges(n, &edges).expect("clique")
    }

    /// `K4` minus the edge `2 3`: spine `0 1`, tips `2, 3`.
    pub fn diamond() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).expect("diamond")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<_> = (0..a)
            .flat_map(|i| (a..a + b).map(move |j| (i, j)))
            .collect();
        Graph::from_edges(a + b, &edges).expect("complete bipartite")
    }

    // Appends a path of `len` edges from `s` to `t`, numbering interior vertices from `next`.
    fn add_path(edges: &mut Vec<(usize, usize)>, next: &mut usize, s: usize, t: usize, len: usize) {
        let mut prev = s;
        for _ in 1..len {
            edges.push((prev, *next));
            prev = *next;
            *next += 1;
        }
        edges.push((prev, t));
    }

    /// Theta with ends `0, 1` and paths of the given lengths (in edges, each at least 2).
    pub fn theta(l1: usize, l2: usize, l3: usize) -> Result<Graph> {
        if [l1, l2, l3].iter().any(|&l| l < 2) {
            return Err(Error::BadParams(
                "theta paths need length at least 2".into(),
            ));
        }
        let mut edges = Vec::new();
        let mut next = 2;
        for l in [l1, l2, l3] {
            add_path(&mut edges, &mut next, 0, 1, l);
        }
        Graph::from_edges(next, &edges)
    }

    /// Pyramid with apex `0` and base triangle `1, 2, 3`; at most one path may have length 1.
    pub fn pyramid(l1: usize, l2: usize, l3: usize) -> Result<Graph> {
        let ls = [l1, l2, l3];
        if ls.contains(&0) || ls.iter().filter(|&&l| l == 1).count() > 1 {
            return Err(Error::BadParams(
                "pyramid paths need length >= 1, at most one of length 1".into(),
            ));
        }
        let mut edges = vec![(1, 2), (1, 3), (2, 3)];
        let mut next = 4;
        for (i, l) in ls.into_iter().enumerate() {
            add_path(&mut edges, &mut next, 0, i + 1, l);
        }
        Graph::from_edges(next, &edges)
    }

    /// Prism on triangles `0, 1, 2` and `3, 4, 5` with paths `i -> i + 3`.
    pub fn prism(l1: usize, l2: usize, l3: usize) -> Result<Graph> {
        let ls = [l1, l2, l3];
        if ls.contains(&0) {
            return Err(Error::BadParams(
                "prism paths need length at least 1".into(),
            ));
        }
        let mut edges = vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)];
        let mut next = 6;
        for (i, l) in ls.into_iter().enumerate() {
            add_path(&mut edges, &mut next, i, i + 3, l);
        }
        Graph::from_edges(next, &edges)
    }

    /// Hole `0..k` with hub `k` adjacent to the listed hole vertices.
    pub fn wheel(k: usize, spokes: &[usize]) -> Result<Graph> {
        if k < 4 || spokes.len() < 3 || spokes.iter().any(|&s| s >= k) {
            return Err(Error::BadParams(
                "wheel needs a hole of length >= 4 and >= 3 spokes on it".into(),
            ));
        }
        let mut edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        edges.extend(spokes.iter().map(|&s| (s, k)));
        Graph::from_edges_dedup(k + 1, &edges)
    }

    pub fn petersen() -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, i + 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        Graph::from_edges(10, &edges).expect("petersen")
    }

    /// Mycielski graph with chromatic number `k >= 2`: `K2`, `C5`, the Grötzsch graph, ...
    pub fn mycielski(k: usize) -> Result<Graph> {
        if k < 2 {
            return Err(Error::BadParams("mycielski needs k >= 2".into()));
        }
        let mut g = clique(2);
        for _ in 2..k {
            let n = g.n();
            let mut edges = g.edges();
            for (u, v) in g.edges() {
                edges.push((u, n + v));
                edges.push((v, n + u));
            }
            edges.extend((0..n).map(|i| (n + i, 2 * n)));
            g = Graph::from_edges(2 * n + 1, &edges)?;
        }
        Ok(g)
    }

    /// Two copies of the complement of the Mycielski graph with chromatic
    /// number `c`, completely joined. Each half has stability number 2 and
    /// clique cover number `c`.
    pub fn ta_tc_gap(c: usize) -> Result<Graph> {
        let half = mycielski(c)?.complement();
        let n = half.n();
        let mut edges = half.edges();
        edges.extend(half.edges().into_iter().map(|(u, v)| (u + n, v + n)));
        edges.extend((0..n).flat_map(|i| (n..2 * n).map(move |j| (i, j))));
        Graph::from_edges(2 * n, &edges)
    }

    /// Parses `name(args)` as used on the command line; spokes are 1-indexed there.
    pub fn by_name(spec: &str) -> Result<Graph> {
        let bad = || Error::BadParams(format!("unknown family {spec:?}"));
        let (name, rest) = spec.split_once('(').unwrap_or((spec, ")"));
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split([',', ' ', '{', '}'])
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let arg = |i: usize| nums.get(i).copied().ok_or_else(bad);
        match name.trim() {
            "path" => Ok(path(arg(0)?)),
            "hole" if arg(0)? >= 4 => Ok(hole(arg(0)?)),
            "clique" => Ok(clique(arg(0)?)),
            "diamond" => Ok(diamond()),
            "petersen" => Ok(petersen()),
            "complete_bipartite" => Ok(complete_bipartite(arg(0)?, arg(1)?)),
            "theta" => theta(arg(0)?, arg(1)?, arg(2)?),
            "pyramid" => pyramid(arg(0)?, arg(1)?, arg(2)?),
            "prism" => prism(arg(0)?, arg(1)?, arg(2)?),
            "wheel" => {
                let spokes: Vec<usize> = nums
                    .get(1..)
                    .unwrap_or(&[])
                    .iter()
                    .map(|&s| s.checked_sub(1).ok_or_else(bad))
                    .collect::<Result<_>>()?;
                wheel(arg(0)?, &spokes)
            }
            "mycielski" => mycielski(arg(0)?),
            "ta_tc_gap" => ta_tc_gap(arg(0)?),
            _ => Err(bad()),
        }
    }
}

/// Retries per vertex before falling back to a pendant edge.
pub const VERTEX_RETRIES: usize = 24;

/// Random member of C on `n` vertices. Vertices are added one at a time with
/// each earlier vertex as a neighbor with probability `density`; a candidate
/// that leaves the class is redrawn, and after [`VERTEX_RETRIES`] failures the
/// vertex is attached as a pendant, which cannot create any forbidden
/// configuration. The result is re-checked before it is returned.
pub fn gen_random_class_c(n: usize, density: f64, seed: u64) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(0);
    for v in 0..n {
        let mut next = None;
        for _ in 0..VERTEX_RETRIES {
            let nbrs: Vec<usize> = (0..v)
                .filter(|_| rng.gen_bool(density.clamp(0.0, 1.0)))
                .collect();
            let cand = g.with_new_vertex(&nbrs);
            if check_class(&cand, Budget::UNLIMITED).c.is_in() {
                next = Some(cand);
                break;
            }
        }
        g = next.unwrap_or_else(|| {
            let nbrs: Vec<usize> = if v == 0 {
                vec![]
            } else {
                vec![rng.gen_range(0..v)]
            };
            g.with_new_vertex(&nbrs)
        });
    }
    check_class(&g, Budget::UNLIMITED).c.is_in().then_some(g)
}

/// Result of gluing two graphs along cliques.
#[derive(Clone, Debug)]
pub enum CliqueSum {
    Accepted(Graph),
    Rejected {
        graph: Graph,
        witness: Option<Box<Witness>>,
    },
}

/// Identifies clique `k1` of `g1` with clique `k2` of `g2` (position by
/// position) and keeps the result only if it is in C. Vertices of `g1` keep
/// their ids; the rest of `g2` follows.
pub fn compose_clique_sum(g1: &Graph, g2: &Graph, k1: &[usize], k2: &[usize]) -> Result<CliqueSum> {
    if k1.len() != k2.len() {
        return Err(Error::BadParams("identified cliques differ in size".into()));
    }
    let s1 = g1.set_of(k1.iter().copied());
    let s2 = g2.set_of(k2.iter().copied());
    if s1.len() != k1.len() || s2.len() != k2.len() || !g1.is_clique(&s1) || !g2.is_clique(&s2) {
        return Err(Error::BadParams(
            "identified sets must be cliques without repeats".into(),
        ));
    }
    let mut map = vec![usize::MAX; g2.n()];
    for (a, b) in k1.iter().zip(k2) {
        map[*b] = *a;
    }
    let mut next = g1.n();
    for m in map.iter_mut().filter(|m| **m == usize::MAX) {
        *m = next;
        next += 1;
    }
    let mut edges = g1.edges();
    edges.extend(g2.edges().into_iter().map(|(u, v)| (map[u], map[v])));
    let graph = Graph::from_edges_dedup(next, &edges)?;
    Ok(match check_class(&graph, Budget::UNLIMITED).c {
        Verdict::In => CliqueSum::Accepted(graph),
        Verdict::Out(w) => CliqueSum::Rejected {
            graph,
            witness: Some(w),
        },
        Verdict::Unknown => CliqueSum::Rejected {
            graph,
            witness: None,
        },
    })
}

/// Random member of C assembled from holes, cliques and three-spoke wheels
/// glued along vertices and edges. Stops once the graph has at least `n_min`
/// vertices or the next piece would exceed `n_max`.
pub fn gen_glued_class_c(n_min: usize, n_max: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = random_atom(&mut rng, n_max);
    let mut attempts = 0;
    while g.n() < n_min && attempts < 64 {
        attempts += 1;
        let piece = random_atom(&mut rng, n_max - g.n() + 1);
        if g.n() + piece.n() > n_max + 2 {
            continue;
        }
        // glue along a vertex, or along an edge when both sides have one
        let edge_glue = rng.gen_bool(0.4) && g.m() > 0 && piece.m() > 0;
        let (k1, k2) = if edge_glue {
            let e1 = g.edges()[rng.gen_range(0..g.m())];
            let e2 = piece.edges()[rng.gen_range(0..piece.m())];
            (vec![e1.0, e1.1], vec![e2.0, e2.1])
        } else {
            (
                vec![rng.gen_range(0..g.n())],
                vec![rng.gen_range(0..piece.n())],
            )
        };
        if g.n() + piece.n() - k1.len() > n_max {
            continue;
        }
        if let Ok(CliqueSum::Accepted(h)) = compose_clique_sum(&g, &piece, &k1, &k2) {
            g = h;
        }
    }
    g
}

fn random_atom(rng: &mut ChaCha8Rng, room: usize) -> Graph {
    let room = room.max(2);
    loop {
        match rng.gen_range(0..4) {
            0 if room >= 5 => return families::hole(rng.gen_range(5..=room.min(10))),
            1 => return families::clique(rng.gen_range(2..=room.min(5))),
            2 if room >= 10 => {
                // hub on three pairwise far hole vertices: odd and not a bug
                let k = rng.gen_range(9..=room.min(15) - 1);
                let a = rng.gen_range(3..=k - 6);
                let b = rng.gen_range(a + 3..=k - 3);
                return families::wheel(k, &[0, a, b]).expect("valid wheel");
            }
            3 if room >= 16 => {
                let k = rng.gen_range(15..=room.min(19) - 1);
                return families::wheel(k, &[0, 3, 6, 9, 12]).expect("valid wheel");
            }
            _ => continue,
        }
    }
}

/// One corpus entry with its class certificate.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub seed: u64,
    pub n: usize,
    pub density: f64,
    pub graph: Graph,
    pub verdict: Verdict,
}

impl CorpusEntry {
    pub fn manifest_line(&self, path: &str) -> Value {
        let verdict = match &self.verdict {
            Verdict::In => "in",
            Verdict::Out(_) => "out",
            Verdict::Unknown => "unknown",
        };
        json!({ "seed": self.seed, "n": self.n, "density": self.density, "verdict": verdict, "path": path })
    }
}

/// Deterministic class-C corpus: seeds `0..count`, alternating sampled and
/// glued instances with `n` spread over `n_lo..=n_hi`.
pub fn corpus(count: usize, n_lo: usize, n_hi: usize, base_seed: u64) -> Vec<CorpusEntry> {
    use rayon::prelude::*;
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = base_seed.wrapping_add(i);
            let n = n_lo + (i as usize * 7) % (n_hi - n_lo + 1);
            let density = [0.15, 0.25, 0.35][i as usize % 3];
            let graph = if i % 2 == 0 {
                gen_random_class_c(n, density, seed).expect("pendant fallback keeps the class")
            } else {
                gen_glued_class_c(n.min(n_hi), n_hi, seed)
            };
            let verdict = check_class(&graph, Budget::UNLIMITED).c;
            CorpusEntry {
                seed,
                n: graph.n(),
                density,
                graph,
                verdict,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover;
    use crate::structures::{find_structure, find_wheel, StructureKind, WheelFilter};

    #[test]
    fn families_pass_their_detectors() {
        let u = Budget::UNLIMITED;
        assert_eq!(families::hole(7).m(), 7);
        let t = families::theta(2, 3, 4).unwrap();
        assert!(find_structure(&t, StructureKind::Theta, u).is_found());
        let p = families::pyramid(1, 2, 3).unwrap();
        assert!(find_structure(&p, StructureKind::Pyramid, u).is_found());
        let pr = families::prism(1, 2, 2).unwrap();
        assert!(find_structure(&pr, StructureKind::Prism, u).is_found());
        let w = families::wheel(6, &[0, 1, 3, 4]).unwrap();
        assert!(find_wheel(&w, WheelFilter::Even, u).is_found());
        assert!(families::theta(1, 2, 2).is_err());
    }

    #[test]
    fn mycielski_graphs() {
        let g = families::mycielski(4).unwrap();
        assert_eq!((g.n(), g.m()), (11, 20));
        assert!(crate::structures::triangles(&g).is_empty());
        assert_eq!(cover::chi_bar(&g.complement(), &g.all()), 4);
        let gap = families::ta_tc_gap(4).unwrap();
        assert_eq!(gap.n(), 22);
        assert_eq!(cover::alpha(&gap, &gap.all()), 2);
    }

    #[test]
    fn sampling_is_deterministic_and_in_class() {
        let a = gen_random_class_c(10, 0.3, 7).unwrap();
        let b = gen_random_class_c(10, 0.3, 7).unwrap();
        assert_eq!(a, b);
        assert!(check_class(&a, Budget::UNLIMITED).c.is_in());
        assert_eq!(gen_random_class_c(0, 0.5, 1).unwrap().n(), 0);
    }

    #[test]
    fn clique_sum_examples() {
        let k3 = families::clique(3);
        assert!(matches!(
            compose_clique_sum(&k3, &k3, &[0], &[0]).unwrap(),
            CliqueSum::Accepted(_)
        ));
        match compose_clique_sum(&k3, &k3, &[0, 1], &[0, 1]).unwrap() {
            CliqueSum::Rejected {
                witness: Some(w), ..
            } => assert_eq!(w.kind, StructureKind::Diamond),
            other => panic!("{other:?}"),
        }
        let c5 = families::hole(5);
        assert!(matches!(
            compose_clique_sum(&c5, &c5, &[0], &[2]).unwrap(),
            CliqueSum::Accepted(_)
        ));
    }

    #[test]
    fn glued_instances_are_in_class() {
        for seed in 0..6 {
            let g = gen_glued_class_c(14, 24, seed);
            assert!(g.n() <= 26);
            assert!(check_class(&g, Budget::UNLIMITED).c.is_in());
        }
    }
}
