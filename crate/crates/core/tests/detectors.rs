//! Detectors, clique cutsets, atoms and star cutsets against brute force over
//! all vertex subsets of small random graphs.

use proptest::prelude::*;

use talpha::cutsets::{
    atom_decomposition, find_clique_cutset, find_star_cutset_minimal, trisimplicial_vertex,
};
use talpha::structures::{find_structure, find_wheel, Budget, Search, StructureKind, WheelFilter};
use talpha::Graph;

struct Masks {
    n: usize,
    adj: Vec<u32>,
}

impl Masks {
    fn new(g: &Graph) -> Self {
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
            .collect();
        Masks { n: g.n(), adj }
    }

    fn deg(&self, v: usize, s: u32) -> u32 {
        (self.adj[v] & s).count_ones()
    }

    fn verts(s: u32) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&v| s >> v & 1 == 1)
    }

    fn components(&self, s: u32) -> Vec<u32> {
        let mut left = s;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let grow = Self::verts(comp).fold(comp, |m, v| m | (self.adj[v] & s));
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    fn connected(&self, s: u32) -> bool {
        self.components(s).len() == 1
    }

    fn is_clique(&self, s: u32) -> bool {
        Self::verts(s).all(|v| self.adj[v] & s == s & !(1 << v))
    }

    fn subsets(&self) -> impl Iterator<Item = u32> {
        0..1u32 << self.n
    }

    fn is_hole(&self, s: u32) -> bool {
        s.count_ones() >= 4 && Self::verts(s).all(|v| self.deg(v, s) == 2) && self.connected(s)
    }

    fn touches(&self, comp: u32, v: usize) -> bool {
        self.adj[v] & comp != 0
    }

    fn is_theta(&self, s: u32) -> bool {
        if !self.connected(s) || Self::verts(s).any(|v| !(2..=3).contains(&self.deg(v, s))) {
            return false;
        }
        let ends: Vec<usize> = Self::verts(s).filter(|&v| self.deg(v, s) == 3).collect();
        let [a, b] = ends[..] else { return false };
        if self.adj[a] >> b & 1 == 1 {
            return false;
        }
        let comps = self.components(s & !(1 << a) & !(1 << b));
        comps.len() == 3
            && comps
                .iter()
                .all(|&c| self.touches(c, a) && self.touches(c, b))
    }

    fn triangles(&self, s: u32) -> Vec<u32> {
        let vs: Vec<usize> = Self::verts(s).collect();
        let mut out = Vec::new();
        for (i, &x) in vs.iter().enumerate() {
            for (j, &y) in vs.iter().enumerate().skip(i + 1) {
                for &z in &vs[j + 1..] {
                    let t = 1 << x | 1 << y | 1 << z;
                    if self.is_clique(t) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    /// A triangle and an apex joined to it by three paths, at most one of length one.
    fn is_pyramid(&self, s: u32) -> bool {
        if !self.connected(s) || Self::verts(s).any(|v| !(2..=3).contains(&self.deg(v, s))) {
            return false;
        }
        let big: u32 = Self::verts(s)
            .filter(|&v| self.deg(v, s) == 3)
            .fold(0, |m, v| m | 1 << v);
        if big.count_ones() != 4 {
            return false;
        }
        let tri = self.triangles(big);
        let [t] = tri[..] else { return false };
        let a = (big & !t).trailing_zeros() as usize;
        let direct = (self.adj[a] & t).count_ones();
        if direct > 1 {
            return false;
        }
        let comps = self.components(s & !t & !(1 << a));
        comps.len() as u32 + direct == 3
            && comps.iter().all(|&c| {
                self.touches(c, a) && Self::verts(t).filter(|&b| self.touches(c, b)).count() == 1
            })
    }

    fn is_prism(&self, s: u32) -> bool {
        if !self.connected(s) || Self::verts(s).any(|v| !(2..=3).contains(&self.deg(v, s))) {
            return false;
        }
        let big: u32 = Self::verts(s)
            .filter(|&v| self.deg(v, s) == 3)
            .fold(0, |m, v| m | 1 << v);
        if big.count_ones() != 6 {
            return false;
        }
        let tri = self.triangles(big);
        let Some((t1, t2)) = tri
            .iter()
            .flat_map(|&x| tri.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| x & y == 0 && x | y == big)
        else {
            return false;
        };
        let direct: u32 = Self::verts(t1)
            .map(|v| (self.adj[v] & t2).count_ones())
            .sum();
        let comps = self.components(s & !big);
        let count = |c: u32, t: u32| Self::verts(t).filter(|&b| self.touches(c, b)).count();
        comps.len() as u32 + direct == 3
            && comps
                .iter()
                .all(|&c| count(c, t1) == 1 && count(c, t2) == 1)
    }

    fn has(&self, f: impl Fn(&Self, u32) -> bool) -> bool {
        self.subsets().any(|s| f(self, s))
    }

    /// Some hole with a hub accepted by `spokes_ok`.
    fn has_wheel(&self, spokes_ok: impl Fn(u32) -> bool) -> bool {
        self.subsets().filter(|&s| self.is_hole(s)).any(|h| {
            (0..self.n).any(|w| {
                h >> w & 1 == 0 && {
                    let k = self.deg(w, h);
                    k >= 3 && spokes_ok(k)
                }
            })
        })
    }

    fn has_clique_cutset(&self, s: u32) -> bool {
        let mut sub = s;
        loop {
            if self.is_clique(sub) && self.components(s & !sub).len() >= 2 {
                return true;
            }
            if sub == 0 {
                return false;
            }
            sub = (sub - 1) & s;
        }
    }
}

type Predicate = fn(&Masks, u32) -> bool;

fn random_graph(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (4..=max_n, 1u32..=6).prop_flat_map(|(n, dens)| {
        proptest::collection::vec(
            proptest::bool::weighted(dens as f64 / 10.0),
            n * (n - 1) / 2,
        )
        .prop_map(move |bits| random_graph(n, &bits))
    })
}

fn found(s: Search<talpha::structures::Witness>, g: &Graph) -> bool {
    match s {
        Search::Found(w) => {
            assert!(w.verify(g));
            true
        }
        Search::Absent => false,
        Search::Unknown => panic!("unlimited budget returned unknown"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn detectors_match_brute_force(g in graphs(11)) {
        let m = Masks::new(&g);
        let kinds: [(StructureKind, Predicate); 5] = [
            (StructureKind::C4, |m, s| s.count_ones() == 4 && m.is_hole(s)),
            (StructureKind::Diamond, |m, s| {
                s.count_ones() == 4 && Masks::verts(s).map(|v| m.deg(v, s)).sum::<u32>() == 10
            }),
            (StructureKind::Theta, Masks::is_theta),
            (StructureKind::Pyramid, Masks::is_pyramid),
            (StructureKind::Prism, Masks::is_prism),
        ];
        for (kind, pred) in kinds {
            prop_assert_eq!(found(find_structure(&g, kind, Budget::UNLIMITED), &g), m.has(pred), "{}", kind);
        }
        prop_assert_eq!(found(find_wheel(&g, WheelFilter::Any, Budget::UNLIMITED), &g), m.has_wheel(|_| true));
        prop_assert_eq!(
            found(find_wheel(&g, WheelFilter::Even, Budget::UNLIMITED), &g),
            m.has_wheel(|k| k % 2 == 0)
        );
    }

    #[test]
    fn clique_cutsets_and_atoms(g in graphs(9)) {
        let m = Masks::new(&g);
        let all = (1u32 << g.n()) - 1;
        prop_assert_eq!(find_clique_cutset(&g).is_some(), m.has_clique_cutset(all));
        if m.connected(all) {
            let candidates: Vec<u32> = m
                .subsets()
                .filter(|&s| s != 0 && m.connected(s) && !m.has_clique_cutset(s))
                .collect();
            let mut maximal: Vec<u32> = candidates
                .iter()
                .copied()
                .filter(|&s| !candidates.iter().any(|&t| t != s && t & s == s))
                .collect();
            let mut atoms: Vec<u32> = atom_decomposition(&g)
                .atoms
                .iter()
                .map(|a| a.iter().fold(0u32, |x, v| x | 1 << v))
                .collect();
            maximal.sort_unstable();
            atoms.sort_unstable();
            prop_assert_eq!(atoms, maximal);
        }
    }

    #[test]
    fn star_cutsets_are_minimal(g in graphs(9)) {
        let m = Masks::new(&g);
        let mut comps: Vec<u32> = Vec::new();
        for v in 0..g.n() {
            let open = m.adj[v];
            let mut sub = open;
            loop {
                let rest = m.components(((1u32 << g.n()) - 1) & !(sub | 1 << v));
                if rest.len() >= 2 {
                    comps.extend(rest);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & open;
            }
        }
        match find_star_cutset_minimal(&g) {
            None => prop_assert!(comps.is_empty()),
            Some(s) => {
                let d = s.component.iter().fold(0u32, |x, v| x | 1 << v);
                let c = s.cutset.iter().fold(0u32, |x, v| x | 1 << v);
                let all = (1u32 << g.n()) - 1;
                prop_assert_eq!(c & !(m.adj[s.center] | 1 << s.center), 0);
                prop_assert!(c >> s.center & 1 == 1);
                let rest = m.components(all & !c);
                prop_assert!(rest.len() >= 2 && rest.contains(&d));
                prop_assert!(!comps.iter().any(|&x| x != d && x & d == x));
            }
        }
    }

    #[test]
    fn trisimplicial_certificates(g in graphs(10)) {
        let in_class = [StructureKind::C4, StructureKind::Diamond, StructureKind::Theta, StructureKind::Prism]
            .into_iter()
            .all(|k| matches!(find_structure(&g, k, Budget::UNLIMITED), Search::Absent))
            && matches!(find_wheel(&g, WheelFilter::Even, Budget::UNLIMITED), Search::Absent);
        if in_class {
            let t = trisimplicial_vertex(&g).unwrap();
            prop_assert!(t.cliques.len() <= 3);
            let m = Masks::new(&g);
            let cover = t.cliques.iter().fold(0u32, |x, k| {
                let k = k.iter().fold(0u32, |y, v| y | 1 << v);
                assert!(m.is_clique(k));
                x | k
            });
            prop_assert_eq!(cover, m.adj[t.v]);
        }
    }
}
