//! Tree decompositions: validation, statistics, construction from balanced
//! separators, composition over atoms and the end-to-end pipeline.

use std::cell::{Cell, RefCell};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::balsep::{weighted_separator_oracle, BalancedSeparator};
use crate::cover::{
    alpha, binomial2, clique_cover_c4free, max_stable_set, min_clique_cover_budgeted,
};
use crate::cutsets::{atom_decomposition, AtomTree};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::report::Transcript;
use crate::structures::{find_3pc_or_wheel, Budget, Search};
use crate::weights::WeightFunction;

/// Steps granted to the exact clique cover of a single bag.
pub const BAG_COVER_STEPS: u64 = 200_000;
/// Largest graph accepted by [`ta_exact_small`].
pub const TA_EXACT_GUARD: usize = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn single(bag: VertexSet) -> Self {
        TreeDecomposition {
            bags: vec![bag],
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    fn push(&mut self, bag: VertexSet) -> usize {
        self.bags.push(bag);
        self.bags.len() - 1
    }

    /// Appends `other`, returning the offset of its nodes.
    fn absorb(&mut self, other: TreeDecomposition) -> usize {
        let off = self.bags.len();
        self.bags.extend(other.bags);
        self.edges
            .extend(other.edges.into_iter().map(|(a, b)| (a + off, b + off)));
        off
    }

    /// Relabels bag contents through `map` into a universe of size `n`.
    pub fn mapped(&self, map: &[usize], n: usize) -> Self {
        TreeDecomposition {
            bags: self
                .bags
                .iter()
                .map(|b| VertexSet::from_iter(n, b.iter().map(|v| map[v])))
                .collect(),
            edges: self.edges.clone(),
        }
    }

    /// PACE `.td` text with 1-indexed bags and vertices.
    pub fn to_pace(&self, n: usize) -> String {
        let mut s = format!(
            "s td {} {} {}\n",
            self.bags.len(),
            self.bags.iter().map(|b| b.len()).max().unwrap_or(0),
            n
        );
        for (i, b) in self.bags.iter().enumerate() {
            write!(s, "b {}", i + 1).unwrap();
            for v in b {
                write!(s, " {}", v + 1).unwrap();
            }
            s.push('\n');
        }
        for &(a, b) in &self.edges {
            writeln!(s, "{} {}", a + 1, b + 1).unwrap();
        }
        s
    }

    pub fn from_pace(text: &str, n: usize) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::Format {
            line,
            msg: msg.into(),
        };
        let mut bags: Vec<Option<VertexSet>> = Vec::new();
        let mut edges = Vec::new();
        let mut header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t: Vec<&str> = raw.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| err(line, "expected a positive integer"))
            };
            match t.first().copied() {
                None | Some("c") => {}
                Some("s") => {
                    if header || t.len() != 5 || t[1] != "td" {
                        return Err(err(line, "expected `s td <bags> <max-bag> <n>`"));
                    }
                    if num(t[4])? != n {
                        return Err(err(line, "vertex count differs from the graph"));
                    }
                    bags = vec![None; num(t[2])?];
                    header = true;
                }
                Some("b") => {
                    if !header || t.len() < 2 {
                        return Err(err(line, "bag line before header"));
                    }
                    let id = num(t[1])?;
                    if id == 0 || id > bags.len() || bags[id - 1].is_some() {
                        return Err(err(line, "bad or repeated bag id"));
                    }
                    let mut b = VertexSet::new(n);
                    for x in &t[2..] {
                        let v = num(x)?;
                        if v == 0 || v > n {
                            return Err(err(line, "vertex out of range"));
                        }
                        b.insert(v - 1);
                    }
                    bags[id - 1] = Some(b);
                }
                Some(_) => {
                    if !header || t.len() != 2 {
                        return Err(err(line, "expected a tree edge `<i> <j>`"));
                    }
                    let (a, b) = (num(t[0])?, num(t[1])?);
                    if a == 0 || b == 0 || a > bags.len() || b > bags.len() {
                        return Err(err(line, "tree edge names a missing bag"));
                    }
                    edges.push((a - 1, b - 1));
                }
            }
        }
        if !header {
            return Err(err(0, "missing `s td` header"));
        }
        let bags = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| err(0, &format!("bag {} missing", i + 1))))
            .collect::<Result<_>>()?;
        Ok(TreeDecomposition { bags, edges })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TdViolation {
    NotATree,
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    Disconnected(usize),
}

impl std::fmt::Display for TdViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TdViolation::NotATree => write!(f, "the bag graph is not a tree"),
            TdViolation::VertexUncovered(v) => write!(f, "(i) vertex {} is in no bag", v + 1),
            TdViolation::EdgeUncovered(u, v) => {
                write!(f, "(ii) edge {}-{} is in no bag", u + 1, v + 1)
            }
            TdViolation::Disconnected(v) => {
                write!(f, "(iii) bags containing {} are not connected", v + 1)
            }
        }
    }
}

fn connected_nodes(adj: &[Vec<usize>], nodes: &[bool]) -> bool {
    let Some(start) = nodes.iter().position(|&b| b) else {
        return true;
    };
    let mut seen = vec![false; nodes.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(t) = stack.pop() {
        for &u in &adj[t] {
            if nodes[u] && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    nodes.iter().zip(&seen).all(|(&want, &got)| !want || got)
}

/// Checks the tree shape and the three axioms, listing every violation.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> (bool, Vec<TdViolation>) {
    let mut out = Vec::new();
    let k = td.bags.len();
    let adj = td.adjacency();
    let in_range = td.edges.iter().all(|&(a, b)| a < k && b < k && a != b);
    if !in_range
        || (k > 0 && (td.edges.len() != k - 1 || !connected_nodes(&adj, &vec![true; k])))
        || (k == 0 && !td.edges.is_empty())
    {
        out.push(TdViolation::NotATree);
        return (false, out);
    }
    for v in 0..g.n() {
        let nodes: Vec<bool> = td.bags.iter().map(|b| b.contains(v)).collect();
        if !nodes.iter().any(|&b| b) {
            out.push(TdViolation::VertexUncovered(v));
        } else if !connected_nodes(&adj, &nodes) {
            out.push(TdViolation::Disconnected(v));
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
            out.push(TdViolation::EdgeUncovered(u, v));
        }
    }
    (out.is_empty(), out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BagStats {
    pub size: usize,
    pub alpha: usize,
    pub cover: usize,
    /// Whether `cover` is exact rather than an upper bound.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdStats {
    pub width: usize,
    pub independence: usize,
    pub cover: usize,
    pub cover_exact: bool,
    pub bags: Vec<BagStats>,
}

impl TdStats {
    pub fn to_json(&self) -> Value {
        json!({
            "width": self.width,
            "independence": self.independence,
            "cover": self.cover,
            "cover_exact": self.cover_exact,
            "bags": self.bags.len(),
        })
    }
}

pub fn bag_stats(g: &Graph, bag: &VertexSet) -> BagStats {
    let (cover, exact) = min_clique_cover_budgeted(g, bag, Budget::steps(BAG_COVER_STEPS));
    BagStats {
        size: bag.len(),
        alpha: alpha(g, bag),
        cover: cover.len(),
        exact,
    }
}

pub fn td_stats(g: &Graph, td: &TreeDecomposition) -> TdStats {
    let bags: Vec<BagStats> = td.bags.iter().map(|b| bag_stats(g, b)).collect();
    TdStats {
        width: td.width(),
        independence: bags.iter().map(|b| b.alpha).max().unwrap_or(0),
        cover: bags.iter().map(|b| b.cover).max().unwrap_or(0),
        cover_exact: bags.iter().all(|b| b.exact),
        bags,
    }
}

/// `g(k) = C(4k + 1, 2) + k`.
pub fn g_bound(k: usize) -> usize {
    binomial2(4 * k + 1) + k
}

/// Separator oracle used by [`build_td`]; it is called on induced subgraphs.
pub type Oracle<'a> = dyn Fn(&Graph, &WeightFunction) -> Result<BalancedSeparator> + 'a;

/// Tree decomposition from an oracle returning balanced separators of clique
/// cover at most `k`; every bag has clique cover at most `g(k)`.
pub fn build_td(g: &Graph, oracle: &Oracle, k: usize) -> Result<TreeDecomposition> {
    if k == 0 {
        return Err(Error::BadParams("k must be positive".into()));
    }
    let mut td = TreeDecomposition::default();
    if g.n() == 0 {
        return Ok(td);
    }
    build_rec(
        g,
        &g.all(),
        &g.empty_set(),
        Vec::new(),
        oracle,
        k,
        0,
        &mut td,
    )?;
    Ok(td)
}

#[allow(clippy::too_many_arguments)]
fn build_rec(
    g: &Graph,
    s: &VertexSet,
    w_set: &VertexSet,
    w_cover: Vec<VertexSet>,
    oracle: &Oracle,
    k: usize,
    depth: usize,
    td: &mut TreeDecomposition,
) -> Result<usize> {
    if alpha(g, s) <= 4 * k || depth > g.n() {
        return Ok(td.push(s.clone()));
    }
    let budget = binomial2(4 * k + 1);
    let mut w = w_set.clone();
    let mut cover = w_cover;
    if alpha(g, &w) < 4 * k {
        for v in s.difference(&w).iter() {
            w.insert(v);
            if alpha(g, &w) >= 4 * k {
                break;
            }
        }
        let (h, map) = g.induced(&w);
        let padded = match clique_cover_c4free(&h) {
            Ok(c) => c
                .cliques
                .into_iter()
                .map(|q| g.set_of(q.iter().map(|v| map[v])))
                .collect(),
            Err(_) => min_clique_cover_budgeted(g, &w, Budget::steps(BAG_COVER_STEPS)).0,
        };
        cover = padded;
    }
    if cover.len() > budget {
        return Err(Error::CoverBudgetExceeded {
            found: cover.len(),
            budget,
        });
    }
    let stable: Vec<usize> = max_stable_set(g, &w).iter().take(4 * k).collect();
    let (h, map) = g.induced(s);
    let inv = |v: usize| map.iter().position(|&x| x == v).expect("vertex of s");
    let hw = WeightFunction::uniform_on(h.n(), &h.set_of(stable.iter().map(|&v| inv(v))))?;
    let sep = oracle(&h, &hw)?;
    if sep.cover.len() > k {
        return Err(Error::OracleFailure(format!(
            "separator cover {} exceeds k = {k}",
            sep.cover.len()
        )));
    }
    let x = g.set_of(sep.x.iter().map(|v| map[v]));
    let x_cover: Vec<VertexSet> = sep
        .cover
        .iter()
        .map(|q| g.set_of(q.iter().map(|v| map[v])))
        .collect();
    let mut children = Vec::new();
    for d in g.components(&s.difference(&x)) {
        let sub = d.union(&x);
        if &sub == s {
            return Ok(td.push(s.clone()));
        }
        let y = w.intersection(&d);
        let mut child_cover: Vec<VertexSet> = cover
            .iter()
            .map(|q| q.intersection(&d))
            .filter(|q| !q.is_empty())
            .collect();
        child_cover.extend(x_cover.iter().cloned());
        children.push((sub, y.union(&x), child_cover));
    }
    let t = td.push(w.union(&x));
    for (sub, wy, c) in children {
        let child = build_rec(g, &sub, &wy, c, oracle, k, depth + 1, td)?;
        td.edges.push((t, child));
    }
    Ok(t)
}

/// Bags `{v_0, v_i, v_{i+1}}` along a hole given in cyclic order.
pub fn hole_td(cycle: &[usize], n: usize) -> TreeDecomposition {
    let mut td = TreeDecomposition::default();
    for i in 1..cycle.len() - 1 {
        td.push(VertexSet::from_iter(n, [cycle[0], cycle[i], cycle[i + 1]]));
        if i > 1 {
            td.edges.push((i - 2, i - 1));
        }
    }
    td
}

/// Cyclic order of a hole graph's vertices.
pub fn cycle_order(g: &Graph, s: &VertexSet) -> Vec<usize> {
    let start = s.first().expect("nonempty");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g
            .neighbors(cur)
            .intersection(s)
            .iter()
            .find(|&x| x != prev && x != start);
        match next {
            Some(x) if order.len() < s.len() => {
                order.push(x);
                prev = cur;
                cur = x;
            }
            _ => break,
        }
    }
    order
}

/// Joins per-atom decompositions along the cut cliques of the atom tree.
pub fn compose_td_over_atoms(
    tree: &AtomTree,
    tds: &[TreeDecomposition],
) -> Result<TreeDecomposition> {
    if tree.atoms.len() != tds.len() {
        return Err(Error::BadParams(
            "one decomposition per atom is required".into(),
        ));
    }
    let mut out = TreeDecomposition::default();
    let mut offsets = Vec::with_capacity(tds.len());
    for td in tds {
        if td.is_empty() {
            return Err(Error::BadParams("atom decomposition has no bags".into()));
        }
        offsets.push(out.absorb(td.clone()));
    }
    for (i, p) in tree.parent.iter().enumerate() {
        let Some(p) = *p else { continue };
        let find = |j: usize| {
            tds[j]
                .bags
                .iter()
                .position(|b| tree.cut[i].is_subset(b))
                .map(|x| x + offsets[j])
        };
        match (find(i), find(p)) {
            (Some(a), Some(b)) => out.edges.push((a, b)),
            _ => return Err(Error::MissingCutCliqueBag(i)),
        }
    }
    Ok(out)
}

/// Decomposition of a (3PC, wheel)-free graph from its atoms, which are
/// complete graphs or holes; every bag has clique cover at most two.
pub fn wheel_free_td(g: &Graph) -> Result<TreeDecomposition> {
    match find_3pc_or_wheel(g, Budget::UNLIMITED) {
        Search::Found(w) => return Err(Error::NotInClass(Box::new(w))),
        Search::Unknown => return Err(Error::BudgetExhausted),
        Search::Absent => {}
    }
    if g.n() == 0 {
        return Ok(TreeDecomposition::default());
    }
    let tree = atom_decomposition(g);
    let tds = tree
        .atoms
        .iter()
        .map(|a| {
            simple_atom_td(g, a).ok_or_else(|| Error::AssertionFailed {
                claim: "atom is complete or a hole".into(),
                witness: format!("{:?}", a.iter().map(|v| v + 1).collect::<Vec<_>>()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    compose_td_over_atoms(&tree, &tds)
}

/// Direct decomposition of a complete or hole atom.
fn simple_atom_td(g: &Graph, atom: &VertexSet) -> Option<TreeDecomposition> {
    if g.is_clique(atom) {
        Some(TreeDecomposition::single(atom.clone()))
    } else if g.is_hole(atom) {
        Some(hole_td(&cycle_order(g, atom), g.n()))
    } else {
        None
    }
}

/// Exact tree-independence number by dynamic programming over elimination
/// orderings: the bag of `v` eliminated after `S` is `v` plus the vertices
/// outside `S` reachable from `v` through `S`.
pub fn ta_exact_small(g: &Graph) -> Result<usize> {
    ta_exact_with_guard(g, TA_EXACT_GUARD)
}

pub fn ta_exact_with_guard(g: &Graph, guard: usize) -> Result<usize> {
    let n = g.n();
    if n > guard || n > 20 {
        return Err(Error::TooLarge {
            what: "exact tree-independence vertex count",
            size: n,
            guard,
        });
    }
    let full = (1usize << n) - 1;
    let mut dp = vec![usize::MAX; 1 << n];
    dp[0] = 0;
    for mask in 1..=full {
        let s = VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1));
        for v in s.iter() {
            let prev = dp[mask & !(1 << v)];
            if prev >= dp[mask] {
                continue;
            }
            let mut before = s.clone();
            before.remove(v);
            let mut bag = g.component_of(v, &before.union(&g.set_of([v])));
            bag = g.closed_neighborhood_of_set(&bag).difference(&before);
            let cost = prev.max(alpha(g, &bag));
            dp[mask] = dp[mask].min(cost);
        }
    }
    Ok(dp[full])
}

/// Per-atom record of the pipeline.
#[derive(Clone, Debug)]
pub struct AtomReport {
    pub atom: VertexSet,
    pub route: &'static str,
    pub k: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub td: TreeDecomposition,
    pub stats: TdStats,
    pub atoms: Vec<AtomReport>,
    pub transcript: Transcript,
    pub separators: Vec<Value>,
}

impl PipelineReport {
    pub fn to_json(&self) -> Value {
        json!({
            "stats": self.stats.to_json(),
            "atoms": self.atoms.iter().map(|a| json!({
                "atom": a.atom.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "route": a.route,
                "k": a.k,
            })).collect::<Vec<_>>(),
            "assertions": self.transcript.to_json(),
        })
    }
}

/// Atoms, then per-atom decompositions (direct for complete and hole atoms,
/// recursive with the separator oracle otherwise), then composition.
pub fn ta_pipeline(g: &Graph) -> Result<PipelineReport> {
    ta_pipeline_traced(g, false)
}

pub fn ta_pipeline_traced(g: &Graph, trace: bool) -> Result<PipelineReport> {
    let transcript = RefCell::new(Transcript::default());
    let separators = RefCell::new(Vec::new());
    let tree = atom_decomposition(g);
    let mut tds = Vec::with_capacity(tree.atoms.len());
    let mut atoms = Vec::with_capacity(tree.atoms.len());
    for a in &tree.atoms {
        if let Some(td) = simple_atom_td(g, a) {
            let route = if g.is_clique(a) { "complete" } else { "hole" };
            atoms.push(AtomReport {
                atom: a.clone(),
                route,
                k: None,
            });
            tds.push(td);
            continue;
        }
        let (h, map) = g.induced(a);
        let seen = Cell::new(1usize);
        let oracle = |sub: &Graph, w: &WeightFunction| -> Result<BalancedSeparator> {
            let sep = weighted_separator_oracle(sub, w)?;
            transcript.borrow_mut().extend(&sep.checks);
            seen.set(seen.get().max(sep.cover.len()));
            if trace {
                separators.borrow_mut().push(sep.to_json(sub, w));
            }
            Ok(sep)
        };
        let mut k = 1;
        let td = loop {
            match build_td(&h, &oracle, k) {
                Ok(td) => break td,
                Err(Error::OracleFailure(_)) if seen.get() > k => k = seen.get(),
                Err(e) => return Err(e),
            }
        };
        atoms.push(AtomReport {
            atom: a.clone(),
            route: "recursive",
            k: Some(k),
        });
        tds.push(td.mapped(&map, g.n()));
    }
    let td = if g.n() == 0 {
        TreeDecomposition::default()
    } else {
        compose_td_over_atoms(&tree, &tds)?
    };
    let (ok, violations) = validate_td(g, &td);
    if !ok {
        return Err(Error::AssertionFailed {
            claim: "pipeline decomposition is valid".into(),
            witness: violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        });
    }
    let stats = td_stats(g, &td);
    Ok(PipelineReport {
        td,
        stats,
        atoms,
        transcript: transcript.into_inner(),
        separators: separators.into_inner(),
    })
}
