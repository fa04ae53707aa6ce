//! Maximum weight independent set by dynamic programming over a nice tree
//! decomposition, and a brute-force oracle.
//!
//! Ties between optimal sets go to the set whose characteristic vector comes
//! first ([`VertexSet::indicator_cmp`]); both methods return the same witness.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::cover::alpha;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::treedec::{validate_td, TreeDecomposition};
use crate::weights::{fmt_rational, Rational};

/// Default bound on bag independence for [`mwis_td`].
pub const STATE_GUARD: usize = 16;
/// Largest graph accepted by [`mwis_bruteforce`].
pub const BRUTE_FORCE_GUARD: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    TdDp,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MwisResult {
    pub set: VertexSet,
    pub value: Rational,
    pub method: Method,
}

impl MwisResult {
    pub fn to_json(&self) -> Value {
        json!({
            "set": self.set.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "value": fmt_rational(&self.value),
            "method": match self.method { Method::TdDp => "td-dp", Method::BruteForce => "brute-force" },
        })
    }
}

/// Whether `(a, wa)` beats `(b, wb)`: larger value, then the earlier set.
fn better(a: &Rational, wa: &VertexSet, b: &Rational, wb: &VertexSet) -> bool {
    match a.cmp(b) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => wa.indicator_cmp(wb) == Ordering::Less,
    }
}

fn check_weights(g: &Graph, weights: &[Rational]) -> Result<()> {
    if weights.len() != g.n() {
        return Err(Error::Weight(format!(
            "{} weights for {} vertices",
            weights.len(),
            g.n()
        )));
    }
    if let Some(v) = weights.iter().position(|x| x < &Rational::zero()) {
        return Err(Error::Weight(format!(
            "negative weight on vertex {}",
            v + 1
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
enum Nice {
    Leaf,
    Introduce(usize, usize),
    Forget(usize, usize),
    Join(usize, usize),
}

/// Nice decomposition: node list with bags; the last node is the root with an empty bag.
struct NiceTd {
    nodes: Vec<(Nice, VertexSet)>,
}

impl NiceTd {
    fn from_td(td: &TreeDecomposition, n: usize) -> Self {
        let mut nice = NiceTd { nodes: Vec::new() };
        let adj = td.adjacency();
        let top = nice.build(td, &adj, 0, usize::MAX, n);
        nice.retarget(top, &VertexSet::new(n));
        nice
    }

    fn push(&mut self, kind: Nice, bag: VertexSet) -> usize {
        self.nodes.push((kind, bag));
        self.nodes.len() - 1
    }

    /// Forgets and introduces one vertex at a time until the bag is `target`.
    fn retarget(&mut self, mut cur: usize, target: &VertexSet) -> usize {
        let bag = self.nodes[cur].1.clone();
        let mut b = bag.clone();
        for v in bag.difference(target).iter() {
            b.remove(v);
            cur = self.push(Nice::Forget(v, cur), b.clone());
        }
        for v in target.difference(&bag).iter() {
            b.insert(v);
            cur = self.push(Nice::Introduce(v, cur), b.clone());
        }
        cur
    }

    fn build(
        &mut self,
        td: &TreeDecomposition,
        adj: &[Vec<usize>],
        t: usize,
        parent: usize,
        n: usize,
    ) -> usize {
        let bag = &td.bags[t];
        let mut acc: Option<usize> = None;
        for &c in adj[t].iter().filter(|&&c| c != parent) {
            let sub = self.build(td, adj, c, t, n);
            let sub = self.retarget(sub, bag);
            acc = Some(match acc {
                None => sub,
                Some(a) => self.push(Nice::Join(a, sub), bag.clone()),
            });
        }
        match acc {
            Some(a) => a,
            None => {
                let leaf = self.push(Nice::Leaf, VertexSet::new(n));
                self.retarget(leaf, bag)
            }
        }
    }
}

type Table = HashMap<VertexSet, (Rational, VertexSet)>;

fn offer(t: &mut Table, s: VertexSet, val: Rational, wit: VertexSet) {
    match t.get(&s) {
        Some((v, w)) if !better(&val, &wit, v, w) => {}
        _ => {
            t.insert(s, (val, wit));
        }
    }
}

/// Optimum over a valid decomposition whose bags have independence at most `guard`.
pub fn mwis_td(
    g: &Graph,
    weights: &[Rational],
    td: &TreeDecomposition,
    guard: usize,
) -> Result<MwisResult> {
    check_weights(g, weights)?;
    let (ok, violations) = validate_td(g, td);
    if !ok {
        let msg = violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::BadParams(format!(
            "invalid tree decomposition: {msg}"
        )));
    }
    if g.n() == 0 {
        return Ok(MwisResult {
            set: g.empty_set(),
            value: Rational::zero(),
            method: Method::TdDp,
        });
    }
    for b in &td.bags {
        let a = alpha(g, b);
        if a > guard {
            return Err(Error::StateBlowup { alpha: a, guard });
        }
    }
    let nice = NiceTd::from_td(td, g.n());
    let mut tables: Vec<Option<Table>> = vec![None; nice.nodes.len()];
    for (i, (kind, _)) in nice.nodes.iter().enumerate() {
        let mut out = Table::new();
        match *kind {
            Nice::Leaf => {
                out.insert(g.empty_set(), (Rational::zero(), g.empty_set()));
            }
            Nice::Introduce(v, c) => {
                for (s, (val, wit)) in tables[c].take().expect("child table") {
                    if !g.neighbors(v).intersects(&s) {
                        let (mut s2, mut w2) = (s.clone(), wit.clone());
                        s2.insert(v);
                        w2.insert(v);
                        offer(&mut out, s2, &val + &weights[v], w2);
                    }
                    offer(&mut out, s, val, wit);
                }
            }
            Nice::Forget(v, c) => {
                for (mut s, (val, wit)) in tables[c].take().expect("child table") {
                    s.remove(v);
                    offer(&mut out, s, val, wit);
                }
            }
            Nice::Join(a, b) => {
                let ta = tables[a].take().expect("child table");
                let tb = tables[b].take().expect("child table");
                for (s, (va, wa)) in &ta {
                    if let Some((vb, wb)) = tb.get(s) {
                        let shared: Rational = s.iter().map(|v| &weights[v]).sum();
                        offer(&mut out, s.clone(), va + vb - shared, wa.union(wb));
                    }
                }
            }
        }
        tables[i] = Some(out);
    }
    let root = tables.pop().flatten().expect("root table");
    let (value, set) = root
        .get(&g.empty_set())
        .cloned()
        .expect("empty state at the root");
    debug_assert!(g.is_stable(&set));
    Ok(MwisResult {
        set,
        value,
        method: Method::TdDp,
    })
}

/// Optimum by branching on vertices in id order, taking a vertex before
/// skipping it, with a remaining-weight bound.
pub fn mwis_bruteforce(g: &Graph, weights: &[Rational]) -> Result<MwisResult> {
    mwis_bruteforce_guarded(g, weights, BRUTE_FORCE_GUARD)
}

pub fn mwis_bruteforce_guarded(
    g: &Graph,
    weights: &[Rational],
    guard: usize,
) -> Result<MwisResult> {
    check_weights(g, weights)?;
    if g.n() > guard {
        return Err(Error::TooLarge {
            what: "brute-force MWIS vertex count",
            size: g.n(),
            guard,
        });
    }
    struct Search<'a> {
        g: &'a Graph,
        w: &'a [Rational],
        suffix: Vec<Rational>,
        best: Option<(Rational, VertexSet)>,
    }
    impl Search<'_> {
        fn go(&mut self, v: usize, chosen: &mut VertexSet, val: Rational) {
            if let Some((b, _)) = &self.best {
                if &val + &self.suffix[v] <= *b {
                    return;
                }
            }
            if v == self.g.n() {
                self.best = Some((val, chosen.clone()));
                return;
            }
            if !self.g.neighbors(v).intersects(chosen) {
                chosen.insert(v);
                self.go(v + 1, chosen, &val + &self.w[v]);
                chosen.remove(v);
            }
            self.go(v + 1, chosen, val);
        }
    }
    let mut suffix = vec![Rational::zero(); g.n() + 1];
    for v in (0..g.n()).rev() {
        suffix[v] = &suffix[v + 1] + &weights[v];
    }
    let mut s = Search {
        g,
        w: weights,
        suffix,
        best: None,
    };
    s.go(0, &mut g.empty_set(), Rational::zero());
    let (value, set) = s.best.expect("the empty set is stable");
    Ok(MwisResult {
        set,
        value,
        method: Method::BruteForce,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::families;
    use crate::treedec::{hole_td, ta_pipeline};

    fn unit(n: usize) -> Vec<Rational> {
        vec![Rational::from_integer(1.into()); n]
    }

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn td_examples() {
        let c7 = families::hole(7);
        let td = hole_td(&(0..7).collect::<Vec<_>>(), 7);
        assert_eq!(
            mwis_td(&c7, &unit(7), &td, STATE_GUARD).unwrap().value,
            ints(&[3])[0]
        );
        let c5 = families::hole(5);
        let td = hole_td(&(0..5).collect::<Vec<_>>(), 5);
        let r = mwis_td(&c5, &ints(&[3, 1, 1, 1, 1]), &td, STATE_GUARD).unwrap();
        assert_eq!(r.value, ints(&[4])[0]);
        assert_eq!(r.set, c5.set_of([0, 2]));
        let p = families::petersen();
        let td = ta_pipeline(&p)
            .map(|r| r.td)
            .unwrap_or_else(|_| TreeDecomposition::single(p.all()));
        assert_eq!(
            mwis_td(&p, &unit(10), &td, STATE_GUARD).unwrap().value,
            ints(&[4])[0]
        );
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            mwis_bruteforce(&families::clique(5), &unit(5))
                .unwrap()
                .value,
            ints(&[1])[0]
        );
        assert_eq!(
            mwis_bruteforce(&families::hole(4), &unit(4)).unwrap().value,
            ints(&[2])[0]
        );
        assert_eq!(
            mwis_bruteforce(&Graph::empty(6), &unit(6)).unwrap().value,
            ints(&[6])[0]
        );
        assert!(mwis_bruteforce(&Graph::empty(25), &unit(25)).is_err());
    }

    #[test]
    fn guard_and_validation() {
        let g = Graph::empty(5);
        let td = TreeDecomposition::single(g.all());
        assert!(matches!(
            mwis_td(&g, &unit(5), &td, 4),
            Err(Error::StateBlowup { alpha: 5, guard: 4 })
        ));
        let bad = TreeDecomposition::single(g.set_of([0, 1]));
        assert!(mwis_td(&g, &unit(5), &bad, 4).is_err());
    }

    #[test]
    fn zero_weights_tie_break_agrees() {
        let p = families::path(4);
        let w = ints(&[0, 0, 0, 0]);
        let td = TreeDecomposition {
            bags: (0..3).map(|i| p.set_of([i, i + 1])).collect(),
            edges: vec![(0, 1), (1, 2)],
        };
        let a = mwis_td(&p, &w, &td, STATE_GUARD).unwrap();
        let b = mwis_bruteforce(&p, &w).unwrap();
        assert_eq!(a.set, b.set);
        assert_eq!(a.set, p.set_of([0, 2]));
    }
}
