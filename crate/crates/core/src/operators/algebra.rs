use crate::canon::GraphClass;
use crate::chain::{classify, rational, Accumulator, Chain, SymChain, TensorAccumulator, TensorChain};
use crate::graph::OrientedGraph;

use super::differential::boundary_h_graph;
use super::{parity, split_components};

/// Representatives of `x` and `y` side by side, `y` renumbered after `x`.
pub(crate) fn juxtapose(x: &GraphClass, y: &GraphClass) -> OrientedGraph {
    x.representative().disjoint_union(&y.representative())
}

pub(crate) fn product_classes(x: &GraphClass, y: &GraphClass) -> Chain {
    match classify(&juxtapose(x, y)) {
        Some((class, sign)) => Chain::from_class(class).scale(&rational(sign as i64)),
        None => Chain::zero(),
    }
}

/// Bilinear extension over the terms of two chains.
pub(crate) fn bilinear(x: &Chain, y: &Chain, f: impl Fn(&GraphClass, &GraphClass) -> Chain) -> Chain {
    let mut out = Chain::zero();
    for (a, p) in x.iter() {
        for (b, q) in y.iter() {
            out.add_scaled(&(p * q), &f(a, b));
        }
    }
    out
}

/// Disjoint union, graded commutative: `X·Y = (-1)^{xy} Y·X`.
pub fn product(x: &Chain, y: &Chain) -> Chain {
    bilinear(x, y, product_classes)
}

/// Multiplication out of the symmetric square, `A ⊙ B -> A·B`.
pub fn product_sym(s: &SymChain) -> Chain {
    let mut out = Chain::zero();
    for ((a, b), q) in s.iter() {
        out.add_scaled(q, &product_classes(a, b));
    }
    out
}

pub(crate) fn coproduct_class(x: &GraphClass) -> TensorChain {
    let mut acc = TensorAccumulator::default();
    split_components(&x.representative(), 1, |_| true, &mut acc);
    acc.into_tensor()
}

/// `Δ`: primitive on connected graphs, multiplicative for the Koszul
/// product on the tensor square.
pub fn coproduct(c: &Chain) -> TensorChain {
    let mut out = TensorChain::zero();
    for (x, q) in c.iter() {
        out.add_scaled(q, &coproduct_class(x));
    }
    out
}

/// `1 ⊗ 1`.
pub fn unit_tensor() -> TensorChain {
    TensorChain::tensor(&Chain::unit(), &Chain::unit())
}

/// `(a ⊗ b)(c ⊗ d) = (-1)^{bc} ac ⊗ bd`.
pub fn tensor_product(s: &TensorChain, t: &TensorChain) -> TensorChain {
    let mut out = TensorChain::zero();
    for ((a, b), p) in s.iter() {
        for ((c, d), q) in t.iter() {
            let sign = parity(b.vertex_count() * c.vertex_count());
            let left = product_classes(a, c);
            let right = product_classes(b, d);
            let coeff = p * q * rational(sign);
            out.add_scaled(&coeff, &TensorChain::tensor(&left, &right));
        }
    }
    out
}

pub(crate) fn bracket_classes(x: &GraphClass, y: &GraphClass) -> Chain {
    let g = juxtapose(x, y);
    let split = 2 * x.edge_count();
    let mut acc = Accumulator::default();
    for h in 0..split {
        for k in split..g.slot_count() {
            if let Some((w, sign)) = g.contract_half_pair(h, k).expect("cross pair is admissible") {
                acc.push(&w, sign as i64);
            }
        }
    }
    acc.into_chain()
}

/// `[X, Y]`: sum of `(X·Y)_{hk}` over `h` in `X` and `k` in `Y`.
pub fn bracket(x: &Chain, y: &Chain) -> Chain {
    bilinear(x, y, bracket_classes)
}

/// `∂_H(X·Y) - ∂_H(X)·Y - (-1)^x X·∂_H(Y)`, computed independently of
/// [`bracket`].
pub fn bracket_defect(x: &Chain, y: &Chain) -> Chain {
    bilinear(x, y, |a, b| {
        let xy = product_classes(a, b);
        let da = boundary_h_graph(&a.representative());
        let db = boundary_h_graph(&b.representative());
        let whole = super::boundary_h(&xy);
        let left = product(&da, &Chain::from_class(b.clone()));
        let right = product(&Chain::from_class(a.clone()), &db).scale(&rational(parity(a.vertex_count())));
        &(&whole - &left) - &right
    })
}
