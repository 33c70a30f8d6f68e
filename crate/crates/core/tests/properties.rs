//! Randomized invariants: relabelling, surgery round trips, chain algebra.

use graphcomplex::basis::{enumerate_basis, vertex_range};
use graphcomplex::chain::{rational, ratio, Chain, SymChain};
use graphcomplex::format::{parse_graph, write_graph};
use graphcomplex::graph::{permutation_sign, OrientedGraph};
use graphcomplex::operators::{boundary_e, boundary_h, product};
use graphcomplex::{canonical_form, GraphClass};
use proptest::prelude::*;
use std::sync::OnceLock;

fn pool() -> &'static Vec<GraphClass> {
    static POOL: OnceLock<Vec<GraphClass>> = OnceLock::new();
    POOL.get_or_init(|| {
        (2..=4).flat_map(|b| vertex_range(b).flat_map(move |v| enumerate_basis(v, b, false, false).unwrap().classes)).collect()
    })
}

fn class_strategy() -> impl Strategy<Value = GraphClass> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

/// A class with a random vertex permutation and arrow flips applied.
fn labelled() -> impl Strategy<Value = (GraphClass, Vec<usize>, Vec<bool>)> {
    class_strategy().prop_flat_map(|c| {
        let n = c.vertex_count();
        let e = c.edge_count();
        (Just(c), Just((0..n).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), e))
    })
}

fn apply(c: &GraphClass, perm: &[usize], flips: &[bool]) -> OrientedGraph {
    let rep = c.representative();
    let mut g = rep.relabel(perm);
    for ((h, _), &f) in rep.edges().collect::<Vec<_>>().into_iter().zip(flips) {
        if f {
            g.flip_arrow(h);
        }
    }
    g
}

fn small_chain() -> impl Strategy<Value = Chain> {
    proptest::collection::vec((class_strategy(), -4i64..=4), 0..4)
        .prop_map(|terms| terms.into_iter().map(|(c, q)| (c, rational(q))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelling_multiplies_by_the_expected_sign((c, perm, flips) in labelled()) {
        let got = canonical_form(&apply(&c, &perm, &flips)).unwrap();
        let flipped = flips.iter().filter(|&&f| f).count();
        let expected = permutation_sign(&perm) * if flipped % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(&got.class, &c);
        prop_assert_eq!(got.sign, expected);
    }

    #[test]
    fn canonical_representative_is_a_fixed_point(c in class_strategy()) {
        let again = canonical_form(&c.representative()).unwrap();
        prop_assert_eq!(again.sign, 1);
        prop_assert_eq!(again.class.code(), c.code());
    }

    #[test]
    fn loop_degree_is_consistent(c in class_strategy()) {
        prop_assert_eq!(c.loop_degree() + c.vertex_count(), c.edge_count() + c.component_count());
        prop_assert!(c.aut_order() >= 1);
        prop_assert!(!c.orientation_reversing());
    }

    #[test]
    fn text_round_trip((c, perm, flips) in labelled()) {
        let g = apply(&c, &perm, &flips);
        let back = parse_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(back.directed_edges(), g.directed_edges());
    }

    #[test]
    fn cut_paste_twice_restores_up_to_sign((c, perm, flips) in labelled(), i in 0usize..64, j in 0usize..64) {
        let g = apply(&c, &perm, &flips);
        let slots: Vec<usize> = g.live_half_edges().collect();
        let (h, k) = (slots[i % slots.len()], slots[j % slots.len()]);
        prop_assume!(h != k && g.partner(h) != k);
        let (once, s1) = g.cut_paste(h, k).unwrap();
        let (twice, s2) = once.cut_paste(h, g.partner(h)).unwrap();
        let a = Chain::normalize(&g, rational(1)).unwrap();
        let b = Chain::normalize(&twice, rational((s1 * s2) as i64)).unwrap();
        prop_assert!(a == b || a == -b);
    }

    #[test]
    fn half_pair_contraction_is_symmetric((c, perm, flips) in labelled(), i in 0usize..64, j in 0usize..64) {
        let g = apply(&c, &perm, &flips);
        let slots: Vec<usize> = g.live_half_edges().collect();
        let (h, k) = (slots[i % slots.len()], slots[j % slots.len()]);
        prop_assume!(h != k && g.partner(h) != k);
        let term = |a, b| match g.contract_half_pair(a, b).unwrap() {
            None => Chain::zero(),
            Some((w, s)) => Chain::normalize(&w, rational(s as i64)).unwrap(),
        };
        prop_assert_eq!(term(h, k), term(k, h));
    }

    #[test]
    fn expansion_collapses_back(c in class_strategy(), v in 0usize..8, mask in 0u64..256) {
        let g = c.representative();
        let v = v % g.vertex_count();
        let at = g.half_edges_at(v);
        let part: Vec<usize> = at.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &h)| h).collect();
        prop_assume!(part.len() >= 2 && at.len() - part.len() >= 2);
        let (x, p, _) = g.expand_vertex(v, &part).unwrap();
        let (back, s) = x.contract_edge(p).unwrap();
        prop_assert_eq!(Chain::normalize(&back, rational(s as i64)).unwrap(), Chain::from_class(c.clone()));
    }

    #[test]
    fn expansion_classes_agree_for_complementary_blocks(c in class_strategy(), v in 0usize..8, mask in 0u64..256, hi in 0usize..64) {
        let g = c.representative();
        prop_assume!(g.vertex_count() <= 4);
        let v = v % g.vertex_count();
        let at = g.half_edges_at(v);
        let part: Vec<usize> = at.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &h)| h).collect();
        let rest: Vec<usize> = at.iter().copied().filter(|h| !part.contains(h)).collect();
        prop_assume!(part.len() >= 2 && rest.len() >= 2);
        let slots: Vec<usize> = g.live_half_edges().collect();
        let h = slots[hi % slots.len()];
        let term = |p: &[usize], h| match g.expand_and_glue(v, p, h).unwrap() {
            None => Chain::zero(),
            Some((w, s)) => Chain::normalize(&w, rational(s as i64)).unwrap(),
        };
        prop_assert_eq!(term(&part, h), term(&rest, g.partner(h)));
    }

    #[test]
    fn chain_arithmetic(a in small_chain(), b in small_chain(), c in small_chain()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a + &b).scale(&ratio(3, 2)), &a.scale(&ratio(3, 2)) + &b.scale(&ratio(3, 2)));
        prop_assert!(a.iter().all(|(_, q)| *q != rational(0)));
    }

    #[test]
    fn differentials_are_linear(a in small_chain(), b in small_chain()) {
        let s = &a + &b.scale(&rational(-3));
        prop_assert_eq!(boundary_e(&s), &boundary_e(&a) + &boundary_e(&b).scale(&rational(-3)));
        prop_assert_eq!(boundary_h(&s), &boundary_h(&a) + &boundary_h(&b).scale(&rational(-3)));
        prop_assert!(boundary_e(&a).coefficient(&GraphClass::empty()) == rational(0));
    }

    #[test]
    fn sym_chain_round_trip(x in class_strategy(), y in class_strategy(), q in -3i64..=3) {
        let mut s = SymChain::zero();
        s.add_term(x.clone(), y.clone(), rational(q));
        let back = SymChain::from_tensor(&s.to_tensor()).unwrap();
        prop_assert_eq!(&back, &s);
        let sign = if x.vertex_count() * y.vertex_count() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(s.coefficient(&y, &x), s.coefficient(&x, &y) * rational(sign));
    }

    #[test]
    fn product_is_graded_commutative(x in class_strategy(), y in class_strategy()) {
        let (cx, cy) = (Chain::from_class(x.clone()), Chain::from_class(y.clone()));
        let sign = if x.vertex_count() * y.vertex_count() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(product(&cx, &cy), product(&cy, &cx).scale(&rational(sign)));
    }
}

#[test]
fn parallel_edges_and_loops() {
    let four = OrientedGraph::from_edges(2, &[(0, 1); 4]).unwrap();
    let c = canonical_form(&four).unwrap();
    assert_eq!(c.sign, 0);
    assert!(c.class.orientation_reversing());
    let looped = OrientedGraph::from_edges(1, &[(0, 0)]).unwrap();
    assert_eq!(canonical_form(&looped).unwrap().sign, 0);
    assert!(Chain::of(&looped).unwrap().is_zero());
}

#[test]
fn bridges_and_components() {
    let theta = parse_graph("v=2 e=3; 1>2; 1>2; 1>2").unwrap();
    assert!(theta.is_connected() && !theta.has_bridge() && theta.is_1pi());
    let joined = parse_graph("v=4 e=7; 1>2; 1>2; 1>2; 3>4; 3>4; 3>4; 2>3").unwrap();
    assert!(joined.has_bridge() && !joined.is_1pi());
    let two = theta.disjoint_union(&theta);
    assert!(!two.is_connected() && !two.is_1pi());
    assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
}

#[test]
fn normalize_examples() {
    let theta = parse_graph("v=2 e=3; 1>2; 1>2; 1>2").unwrap();
    let t = Chain::of(&theta).unwrap();
    let swapped = theta.relabel(&[1, 0]);
    assert_eq!(Chain::of(&swapped).unwrap(), -t.clone());
    let c = t.classes().next().unwrap().clone();
    let six_minus_two = &t.scale(&rational(6)) - &t.scale(&rational(2));
    assert_eq!(six_minus_two.coefficient(&c), rational(4));
    assert_eq!(t.scale(&rational(2)).scale(&ratio(1, 2)), t);
}
