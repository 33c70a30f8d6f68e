use super::*;
use crate::basis::enumerate_basis;
use crate::canon::GraphClass;
use crate::chain::{rational, Chain, TensorChain};
use crate::format::parse_graph;

fn class(text: &str) -> GraphClass {
    let c = Chain::of(&parse_graph(text).unwrap()).unwrap();
    let first = c.classes().next().unwrap().clone();
    first
}

fn one(c: &GraphClass) -> Chain {
    Chain::from_class(c.clone())
}

fn theta() -> GraphClass {
    class("v=2 e=3; 1>2; 1>2; 1>2")
}

/// The loop-degree-3 classes: `C` on three vertices, `A` and `B` on four.
fn abc() -> (GraphClass, GraphClass, GraphClass) {
    let c = enumerate_basis(3, 3, true, false).unwrap().classes[0].clone();
    let four = enumerate_basis(4, 3, true, false).unwrap().classes;
    let k4 = class("v=4 e=6; 1>2; 1>3; 1>4; 2>3; 2>4; 3>4");
    let other = four.iter().find(|x| **x != k4).unwrap().clone();
    (k4, other, c)
}

#[test]
fn theta_is_closed_for_both_differentials() {
    assert!(boundary_e(&one(&theta())).is_zero());
    assert!(boundary_h(&one(&theta())).is_zero());
}

#[test]
fn boundary_of_the_four_vertex_classes() {
    let (a, b, c) = abc();
    let da = boundary_e(&one(&a));
    let db = boundary_e(&one(&b));
    assert_eq!(da.len(), 1);
    assert_eq!(db.len(), 1);
    let (qa, qb) = (da.coefficient(&c), db.coefficient(&c));
    assert_eq!(qa.clone() * qa.clone(), rational(36));
    assert_eq!(qb.clone() * qb.clone(), rational(4));
    assert!(boundary_e(&one(&c)).is_zero());
}

#[test]
fn report_counts_raw_terms() {
    let (a, _, _) = abc();
    let (out, rep) = report(Operator::E, &one(&a));
    assert_eq!(rep.raw_terms, 6);
    assert_eq!(rep.output_terms, out.len());
    let (_, rep) = report(Operator::H, &one(&a));
    // Admissible pairs minus the pairs meeting at one vertex.
    assert_eq!(rep.raw_terms, 12 * 11 / 2 - 6 - 4 * 3);
}

#[test]
fn product_unit_and_zero_square() {
    let t = one(&theta());
    assert_eq!(product(&t, &Chain::unit()), t);
    let (_, _, c) = abc();
    assert!(product(&one(&c), &one(&c)).is_zero());
    assert!(!product(&t, &t).is_zero());
}

#[test]
fn coproduct_of_connected_and_products() {
    let t = theta();
    let expect = &TensorChain::tensor(&one(&t), &Chain::unit()) + &TensorChain::tensor(&Chain::unit(), &one(&t));
    assert_eq!(coproduct(&one(&t)), expect);
    let (a, _, c) = abc();
    for (x, y) in [(&t, &c), (&c, &a), (&a, &t)] {
        let (cx, cy) = (one(x), one(y));
        let xy = product(&cx, &cy);
        let s = rational(parity(x.vertex_count() * y.vertex_count()));
        let mut e = &TensorChain::tensor(&xy, &Chain::unit()) + &TensorChain::tensor(&Chain::unit(), &xy);
        e = &e + &TensorChain::tensor(&cx, &cy);
        e.add_scaled(&s, &TensorChain::tensor(&cy, &cx));
        assert_eq!(coproduct(&xy), e);
        assert_eq!(coproduct(&xy), tensor_product(&coproduct(&cx), &coproduct(&cy)));
    }
}

#[test]
fn bracket_with_the_unit_vanishes() {
    assert!(bracket(&one(&theta()), &Chain::unit()).is_zero());
    assert!(bracket(&Chain::unit(), &one(&theta())).is_zero());
}

#[test]
fn cobracket_of_small_graphs() {
    assert!(cobracket(&Chain::unit()).is_zero());
    assert!(cobracket(&one(&theta())).is_zero());
    assert!(mu_theta(&one(&theta())).unwrap().is_zero());
    let tt = product(&one(&theta()), &one(&theta()));
    assert!(mu_theta(&tt).is_err());
    assert!(cobracket_separating(&tt).is_err());
}

#[test]
fn a_separated_graph_has_nonzero_cobracket() {
    // Two thetas joined through a pair of edges: the pair separates.
    let g = class("v=4 e=8; 1>2; 1>2; 1>3; 2>4; 3>4; 3>4; 1>2; 3>4");
    let t = cobracket(&one(&g));
    assert_eq!(t, cobracket_separating(&one(&g)).unwrap());
    assert_eq!(product_sym(&t), mu_theta(&one(&g)).unwrap());
}

#[test]
fn pairing_values() {
    let (a, b, _) = abc();
    assert_eq!(pairing_classes(&theta(), &theta()), 12);
    assert_eq!(pairing_classes(&a, &b), 0);
    assert_eq!(pairing(&one(&a).scale(&rational(2)), &one(&a).scale(&rational(3))), rational(6 * 24));
}

#[test]
fn delta_h_needs_two_half_edges_on_each_side() {
    // Trivalent vertices cannot be split.
    let (a, _, _) = abc();
    assert!(delta_h(&one(&a)).is_zero());
    let (_, _, c) = abc();
    assert_eq!(delta_h(&one(&c)), delta_h_halved(&one(&c)));
}

#[test]
fn compatibility_on_theta_and_disconnected_input() {
    let t = one(&theta());
    assert!(check_compatibility(&t, &t).unwrap().is_zero());
    assert!(check_compatibility(&product(&t, &t), &t).is_err());
}

#[test]
fn literal_regluing_sum_doubles_mu1() {
    let (a, b, c) = abc();
    for (x, y) in [(&theta(), &c), (&a, &b), (&c, &a)] {
        let lit = homotopy::mu1_all_pairs(x, y);
        assert_eq!(lit, mu1(&one(x), &one(y)).scale(&rational(2)));
    }
}

#[test]
fn identities_trivial_with_the_unit() {
    let (a, _, c) = abc();
    let u = Chain::unit();
    assert!(check_gerstenhaber(&u, &one(&a), &one(&c)).is_zero());
    assert!(check_bv(&one(&a), &u, &one(&c)).is_zero());
    // Minimal case: three copies of theta.
    let t = one(&theta());
    assert!(check_bv(&t, &t, &t).is_zero());
}
