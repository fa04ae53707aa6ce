//! Small worked examples through the public API. Vertex `v_i` is id `i - 1`.

use talpha::balsep::{
    balanced_separator_wheelfree, centroid_bag_separator, exhaustive_balanced_separator,
    weighted_separator_oracle, Route,
};
use talpha::cover::{clique_cover_c4free, exact_invariants};
use talpha::cutsets::{atom_decomposition, find_star_cutset_minimal};
use talpha::gen::{compose_clique_sum, families, CliqueSum};
use talpha::mwis::{mwis_bruteforce, mwis_td, STATE_GUARD};
use talpha::separations::{
    balanced_vertices, canonical_star_separation, central_bag, leq_a_minimal, revised_collection,
    shield_check, SmoothCollection,
};
use talpha::structures::{check_class, enumerate_holes, Budget, StructureKind, Verdict};
use talpha::treedec::{
    build_td, g_bound, hole_td, ta_exact_small, ta_pipeline, td_stats, validate_td,
    TreeDecomposition,
};
use talpha::weights::Rational;
use talpha::{Error, Graph, Threshold, VertexSet, WeightFunction};

fn set(g: &Graph, vs: &[usize]) -> VertexSet {
    g.set_of(vs.iter().map(|v| v - 1))
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

#[test]
fn prism_with_unit_paths_has_three_c4_holes() {
    let g = families::prism(1, 1, 1).unwrap();
    let holes = enumerate_holes(&g, 100);
    assert_eq!(holes.holes.len(), 3);
    assert!(holes.holes.iter().all(|h| h.len() == 4));
}

#[test]
fn petersen_is_outside_the_class() {
    let r = check_class(&families::petersen(), Budget::UNLIMITED);
    assert!(matches!(&r.c, Verdict::Out(w) if w.kind == StructureKind::Theta));
}

#[test]
fn hole_invariants() {
    assert_eq!(
        exact_invariants(&families::hole(5), 20, 20).unwrap(),
        (2, 2, 3)
    );
    assert_eq!(
        exact_invariants(&families::hole(7), 20, 20).unwrap(),
        (3, 2, 4)
    );
    let c = clique_cover_c4free(&families::hole(5)).unwrap();
    assert_eq!(c.len(), 3);
    assert!(matches!(
        clique_cover_c4free(&families::hole(4)),
        Err(Error::NotC4Free(_))
    ));
}

#[test]
fn atoms_of_small_graphs() {
    let p5 = families::path(5);
    let t = atom_decomposition(&p5);
    assert_eq!(t.atoms.len(), 4);
    assert!(t.atoms.iter().all(|a| a.len() == 2 && p5.is_clique(a)));
    let c7 = families::hole(7);
    assert_eq!(atom_decomposition(&c7).atoms, vec![c7.all()]);
    let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
    let t = atom_decomposition(&bowtie);
    assert_eq!(t.atoms.len(), 2);
    assert!(t.cut.iter().any(|k| k == &bowtie.set_of([2])));
}

#[test]
fn star_cutsets() {
    assert!(find_star_cutset_minimal(&families::hole(5)).is_none());
    let p5 = families::path(5);
    let s = find_star_cutset_minimal(&p5).unwrap();
    assert_eq!(s.component.len(), 1);
    let w = families::wheel(6, &[0, 1, 3, 4]).unwrap();
    let s = find_star_cutset_minimal(&w).unwrap();
    assert!(s.component.len() <= 2);
}

#[test]
fn balanced_vertices_and_canonical_separations_on_paths() {
    let p5 = families::path(5);
    let w = WeightFunction::uniform(5);
    let (bal, unbal) = balanced_vertices(&p5, &w);
    assert_eq!(unbal, set(&p5, &[1, 5]));
    assert_eq!(bal, set(&p5, &[2, 3, 4]));
    let s = canonical_star_separation(&p5, &w, 0).unwrap().sep;
    assert_eq!(
        (s.a, s.c, s.b),
        (p5.empty_set(), set(&p5, &[1, 2]), set(&p5, &[3, 4, 5]))
    );
    assert!(matches!(
        canonical_star_separation(&p5, &w, 2),
        Err(Error::VertexBalanced(_))
    ));

    let p7 = families::path(7);
    let w7 = WeightFunction::uniform(7);
    let s = canonical_star_separation(&p7, &w7, 1).unwrap().sep;
    assert_eq!(
        (s.a, s.c, s.b),
        (set(&p7, &[1]), set(&p7, &[2, 3]), set(&p7, &[4, 5, 6, 7]))
    );
}

#[test]
fn order_and_central_bag_on_p7() {
    let p7 = families::path(7);
    let w = WeightFunction::uniform(7);
    let u = balanced_vertices(&p7, &w).1;
    assert_eq!(u, set(&p7, &[1, 2, 6, 7]));
    let lq = leq_a_minimal(&p7, &w, &u).unwrap();
    assert!(lq.leq(1, 0) && lq.leq(5, 6));
    assert_eq!(lq.minimal, set(&p7, &[2, 6]));

    let rev = revised_collection(&p7, &w, &[1, 5]).unwrap();
    assert_eq!(rev[0].sep.c, set(&p7, &[2, 3]));
    assert_eq!(rev[0].sep.a, set(&p7, &[1]));
    let bag = central_bag(&p7, &w, &SmoothCollection::from_revised(&rev)).unwrap();
    assert_eq!(bag.bag, set(&p7, &[2, 3, 4, 5, 6]));
    let q = Rational::new(1.into(), 7.into());
    assert_eq!(bag.weights.get(1), &q * int(2));
    assert_eq!(bag.weights.get(3), q);

    let s2 = canonical_star_separation(&p7, &w, 1).unwrap();
    let s6 = canonical_star_separation(&p7, &w, 5).unwrap();
    assert!(!shield_check(&p7, &s2, &s6).unwrap());
}

#[test]
fn separators_on_small_graphs() {
    let c9 = families::hole(9);
    let w9 = WeightFunction::uniform(9);
    let td = hole_td(&(0..9).collect::<Vec<_>>(), 9);
    let s = centroid_bag_separator(&c9, &td, &w9, Threshold::HALF, Route::Fallback).unwrap();
    assert_eq!(s.x.len(), 3);
    assert!(s.cover.len() <= 2 && s.verify(&c9, &w9));
    let s = balanced_separator_wheelfree(&c9, &w9).unwrap();
    assert!(s.x.len() == 3 && s.cover.len() <= 2);
    let s = weighted_separator_oracle(&c9, &w9).unwrap();
    assert!(s.cover.len() <= 2 && s.verify(&c9, &w9));

    let p5 = families::path(5);
    let w5 = WeightFunction::uniform(5);
    let s = exhaustive_balanced_separator(&p5, &w5, Threshold::HALF, 5).unwrap();
    assert_eq!(s.x, set(&p5, &[3]));
    let c4 = families::hole(4);
    let s = exhaustive_balanced_separator(&c4, &WeightFunction::uniform(4), Threshold::HALF, 4)
        .unwrap();
    assert_eq!(s.x, set(&c4, &[1, 2]));

    let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
    let s = weighted_separator_oracle(&bowtie, &WeightFunction::uniform(5)).unwrap();
    assert_eq!(s.x, bowtie.set_of([2]));
}

#[test]
fn decompositions_of_c9() {
    let c9 = families::hole(9);
    let td = TreeDecomposition {
        bags: (1..8).map(|i| c9.set_of([0, i, i + 1])).collect(),
        edges: (0..6).map(|i| (i, i + 1)).collect(),
    };
    assert!(validate_td(&c9, &td).0);
    let st = td_stats(&c9, &td);
    assert_eq!((st.width, st.independence, st.cover), (2, 2, 2));

    let r = ta_pipeline(&c9).unwrap();
    assert!(validate_td(&c9, &r.td).0);
    assert_eq!(
        (r.stats.width, r.stats.independence, r.stats.cover),
        (2, 2, 2)
    );

    let oracle = |g: &Graph, w: &WeightFunction| {
        exhaustive_balanced_separator(g, w, Threshold::HALF, g.n())
            .ok_or_else(|| Error::Unsolvable("none".into()))
    };
    let td = build_td(&c9, &oracle, 2).unwrap();
    assert!(validate_td(&c9, &td).0);
    assert_eq!(g_bound(2), 38);
    assert!(td_stats(&c9, &td).cover <= 38);
}

#[test]
fn exact_tree_independence() {
    assert_eq!(ta_exact_small(&families::hole(5)).unwrap(), 2);
    assert_eq!(
        ta_exact_small(&families::complete_bipartite(2, 3)).unwrap(),
        2
    );
}

#[test]
fn mwis_examples() {
    let c5 = families::hole(5);
    let w: Vec<Rational> = [3, 1, 1, 1, 1].into_iter().map(int).collect();
    let td = hole_td(&(0..5).collect::<Vec<_>>(), 5);
    let r = mwis_td(&c5, &w, &td, STATE_GUARD).unwrap();
    assert_eq!(r.value, int(4));
    assert_eq!(r.set, set(&c5, &[1, 3]));
    let p = families::petersen();
    let unit = vec![int(1); 10];
    assert_eq!(mwis_bruteforce(&p, &unit).unwrap().value, int(4));
    let td = TreeDecomposition::single(p.all());
    assert_eq!(mwis_td(&p, &unit, &td, STATE_GUARD).unwrap().value, int(4));
}

#[test]
fn clique_sums() {
    let t = families::clique(3);
    assert!(
        matches!(compose_clique_sum(&t, &t, &[0], &[0]).unwrap(), CliqueSum::Accepted(g) if g.n() == 5)
    );
    assert!(matches!(
        compose_clique_sum(&t, &t, &[0, 1], &[0, 1]).unwrap(),
        CliqueSum::Rejected { witness: Some(w), .. } if w.kind == StructureKind::Diamond
    ));
    let c5 = families::hole(5);
    assert!(matches!(
        compose_clique_sum(&c5, &c5, &[0], &[0]).unwrap(),
        CliqueSum::Accepted(_)
    ));
}
