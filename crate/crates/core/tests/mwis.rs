//! Maximum weight independent set: decomposition DP against brute force.

use proptest::prelude::*;

use talpha::gen::gen_random_class_c;
use talpha::mwis::{mwis_bruteforce, mwis_td, STATE_GUARD};
use talpha::treedec::{ta_pipeline, validate_td, TreeDecomposition};
use talpha::weights::Rational;
use talpha::{Graph, VertexSet};

/// Decomposition from eliminating vertices in `order`: each vertex's bag is
/// itself plus its later neighbors in the fill-in graph, attached to the bag
/// of the earliest of those neighbors.
fn elimination_td(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut nb: Vec<VertexSet> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = nb[v].iter().filter(|&u| pos[u] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    nb[a].insert(b);
                }
            }
        }
        let mut bag = g.set_of(later.iter().copied());
        bag.insert(v);
        bags.push(bag);
        if let Some(&p) = later.iter().min_by_key(|&&u| pos[u]) {
            edges.push((i, pos[p]));
        } else if i + 1 < n {
            edges.push((i, i + 1));
        }
    }
    TreeDecomposition { bags, edges }
}

fn graph_and_weights() -> impl Strategy<Value = (Graph, Vec<Rational>, Vec<usize>)> {
    (1usize..=12).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            proptest::collection::vec((0i64..12, 1i64..5), n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(move |(bits, ws, order)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                let g = Graph::from_edges(n, &edges).unwrap();
                let w = ws
                    .into_iter()
                    .map(|(p, q)| Rational::new(p.into(), q.into()))
                    .collect();
                (g, w, order)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dp_matches_brute_force((g, w, order) in graph_and_weights()) {
        let td = elimination_td(&g, &order);
        prop_assert!(validate_td(&g, &td).0);
        let a = mwis_td(&g, &w, &td, STATE_GUARD).unwrap();
        let b = mwis_bruteforce(&g, &w).unwrap();
        prop_assert_eq!(&a.value, &b.value);
        prop_assert_eq!(&a.set, &b.set);
        prop_assert!(g.is_stable(&a.set));
        let total: Rational = a.set.iter().map(|v| w[v].clone()).sum();
        prop_assert_eq!(total, a.value);
    }

    #[test]
    fn raising_a_weight_never_lowers_the_optimum((g, w, order) in graph_and_weights(), pick in any::<prop::sample::Index>()) {
        let td = elimination_td(&g, &order);
        let before = mwis_td(&g, &w, &td, STATE_GUARD).unwrap().value;
        let mut w2 = w.clone();
        let v = pick.index(g.n());
        w2[v] += Rational::from_integer(3.into());
        let after = mwis_td(&g, &w2, &td, STATE_GUARD).unwrap().value;
        prop_assert!(after >= before);
        let scaled: Vec<Rational> = w.iter().map(|x| x * Rational::from_integer(5.into())).collect();
        prop_assert_eq!(mwis_td(&g, &scaled, &td, STATE_GUARD).unwrap().value, before * Rational::from_integer(5.into()));
    }

    #[test]
    fn pipeline_decompositions_support_the_dp(n in 6usize..=18, seed in 0u64..10_000) {
        let Some(g) = gen_random_class_c(n, 0.3, seed) else { return Ok(()) };
        let td = ta_pipeline(&g).unwrap().td;
        let w: Vec<Rational> = (0..g.n()).map(|v| Rational::from_integer(((v * 7 + seed as usize) % 5).into())).collect();
        prop_assert_eq!(mwis_td(&g, &w, &td, STATE_GUARD).unwrap().value, mwis_bruteforce(&g, &w).unwrap().value);
    }
}
