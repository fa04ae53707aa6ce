//! The hub division and its central bag.

use serde_json::{json, Value};

use crate::cutsets::{elimination_order, Elimination};
use crate::error::Result;
use crate::graph::{neighborhood_clique_partition, Graph, VertexSet};
use crate::report::Check;
use crate::separations::{
    balanced_vertices, central_bag, leq_a_minimal, revised_collection, smooth_check, CentralBag,
    RevisedSeparation, SmoothCollection,
};
use crate::structures::{find_pyramid, hub_set, HubSet, Meter, Search};
use crate::weights::{fmt_rational, WeightFunction};

#[derive(Clone, Debug)]
pub struct HubDivision {
    pub elimination: Elimination,
    /// `v_1, ..., v_l`.
    pub hubs: Vec<usize>,
    /// One-based index `m`, equal to `l + 1` when every hub is unbalanced.
    pub m: usize,
    pub unbalanced: VertexSet,
    /// `M` in elimination order; also the anchor ordering of the central bag.
    pub minimal: Vec<usize>,
    pub revised: Vec<RevisedSeparation>,
    pub bag: CentralBag,
    pub bag_hubs: HubSet,
    /// Clique covers of `N_β(x)` for `x` among `v_1, ..., v_{m-1}`.
    pub prefix_covers: Vec<(usize, Vec<VertexSet>)>,
    pub checks: Vec<Check>,
}

impl HubDivision {
    pub fn prefix(&self) -> &[usize] {
        &self.hubs[..self.m - 1]
    }

    /// `v_m`, when `m <= l`.
    pub fn v_m(&self) -> Option<usize> {
        self.hubs.get(self.m - 1).copied()
    }

    pub fn prefix_cover(&self, x: usize) -> Option<&[VertexSet]> {
        self.prefix_covers
            .iter()
            .find(|(v, _)| *v == x)
            .map(|(_, c)| c.as_slice())
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let ids = |s: &[usize]| s.iter().map(|v| v + 1).collect::<Vec<_>>();
        json!({
            "ordering": ids(&self.hubs),
            "m": self.m,
            "M": ids(&self.minimal),
            "bag": self.bag.bag.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "weights": self.bag.bag.iter().map(|v| json!([v + 1, fmt_rational(&self.bag.weights.get(v))])).collect::<Vec<_>>(),
            "central_bag": self.bag.to_json(g),
            "assertions": self.checks,
        })
    }
}

/// Covers `N(v) ∩ s` by the pieces of the anticomplete clique partition of
/// `N(v)`, which is optimal because the pieces are pairwise anticomplete.
pub(crate) fn neighborhood_cover(g: &Graph, v: usize, s: &VertexSet) -> Result<Vec<VertexSet>> {
    Ok(neighborhood_clique_partition(g, v)?
        .into_iter()
        .map(|k| k.intersection(s))
        .filter(|k| !k.is_empty())
        .collect())
}

fn list(s: &[usize]) -> String {
    format!("{:?}", s.iter().map(|v| v + 1).collect::<Vec<_>>())
}

pub fn hub_division(g: &Graph, w: &WeightFunction) -> Result<HubDivision> {
    let elimination = elimination_order(g)?;
    let hubs = elimination.hub_order();
    let unbalanced = balanced_vertices(g, w).1;
    let m = hubs
        .iter()
        .position(|&v| !unbalanced.contains(v))
        .map_or(hubs.len() + 1, |i| i + 1);
    let prefix = &hubs[..m - 1];
    let mut checks = Vec::new();
    let leq = leq_a_minimal(g, w, &g.set_of(prefix.iter().copied()))?;
    let minimal: Vec<usize> = prefix
        .iter()
        .copied()
        .filter(|&v| leq.minimal.contains(v))
        .collect();
    let revised = revised_collection(g, w, &minimal)?;
    let coll = SmoothCollection::from_revised(&revised);
    let (smooth, violations) = smooth_check(g, w, &coll);
    let detail = violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ");
    checks.push(Check::new("revised collection of M is smooth", smooth, detail).into_result()?);
    let bag = central_bag(g, w, &coll)?;
    let beta = &bag.bag;
    let bag_hubs = hub_set(g, beta);
    let bad: Vec<usize> = prefix
        .iter()
        .copied()
        .filter(|&v| bag_hubs.hubs.contains(v))
        .collect();
    checks.push(
        Check::new(
            "no v_i with i < m is a hub of the central bag",
            bad.is_empty(),
            format!("hubs {}", list(&bad)),
        )
        .into_result()?,
    );
    checks.push(
        Check::new(
            "M inside the central bag",
            minimal.iter().all(|&v| beta.contains(v)),
            list(&minimal),
        )
        .into_result()?,
    );
    if let Some(vm) = hubs.get(m - 1).copied() {
        checks.push(
            Check::new(
                "v_m in the central bag",
                beta.contains(vm),
                format!("v_m = {}", vm + 1),
            )
            .into_result()?,
        );
        let cert = elimination.hub_certificate(m - 1);
        let target = g.neighbors(vm).intersection(&bag_hubs.hubs);
        let parts: Vec<VertexSet> = cert
            .iter()
            .map(|k| k.intersection(&target))
            .filter(|k| !k.is_empty())
            .collect();
        let covered = parts.iter().fold(g.empty_set(), |acc, k| acc.union(k)) == target;
        checks.push(
            Check::new(
                "hub neighbors of v_m covered by three cliques",
                covered && parts.len() <= 3,
                format!("v_m = {}, {} cliques", vm + 1, parts.len()),
            )
            .into_result()?,
        );
    }
    let non_hub = beta.difference(&bag_hubs.hubs);
    let mut pyramid_in_bag: Option<bool> = None;
    for &v in &minimal {
        let cover = neighborhood_cover(g, v, &non_hub.intersection(g.neighbors(v)))?;
        if cover.len() > 2 {
            // the bound needs v not to be a pyramid apex in the bag
            let has_pyramid = *pyramid_in_bag.get_or_insert_with(|| {
                let (h, _) = g.induced(beta);
                matches!(find_pyramid(&h, &Meter::unlimited()), Search::Found(_))
            });
            let detail = format!("v = {}, {} cliques", v + 1, cover.len());
            if has_pyramid {
                checks.push(Check::pass(
                    "non-hub bag neighbors of M covered by two cliques",
                    format!("{detail}; skipped, bag has a pyramid"),
                ));
                continue;
            }
            checks.push(
                Check::new(
                    "non-hub bag neighbors of M covered by two cliques",
                    false,
                    detail,
                )
                .into_result()?,
            );
        }
        checks.push(Check::pass(
            "non-hub bag neighbors of M covered by two cliques",
            format!("v = {}", v + 1),
        ));
    }
    let mut prefix_covers = Vec::new();
    for &x in prefix {
        let cover = neighborhood_cover(g, x, &beta.intersection(g.neighbors(x)))?;
        let detail = format!("x = {}, {} cliques", x + 1, cover.len());
        checks.push(
            Check::new(
                "bag neighborhood of v_i (i < m) covered by five cliques",
                cover.len() <= 5,
                detail,
            )
            .into_result()?,
        );
        prefix_covers.push((x, cover));
    }
    Ok(HubDivision {
        elimination,
        hubs,
        m,
        unbalanced,
        minimal,
        revised,
        bag,
        bag_hubs,
        prefix_covers,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::families;

    #[test]
    fn wheel_free_divisions() {
        for g in [families::hole(7), families::path(7)] {
            let w = WeightFunction::uniform(7);
            let hd = hub_division(&g, &w).unwrap();
            assert!(hd.hubs.is_empty());
            assert_eq!(hd.m, 1);
            assert!(hd.minimal.is_empty());
            assert_eq!(hd.bag.bag, g.all());
            assert_eq!(hd.bag.weights, w);
        }
    }
}
