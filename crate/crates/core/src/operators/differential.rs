use crate::chain::{Accumulator, Chain, SymChain, TensorChain};
use crate::canon::GraphClass;
use crate::graph::OrientedGraph;

use super::parity;
use crate::chain::rational;

pub(crate) fn boundary_e_counted(g: &OrientedGraph) -> (Chain, usize) {
    let mut acc = Accumulator::default();
    for (h, _) in g.edges() {
        if !g.is_loop(h) {
            let (collapsed, sign) = g.contract_edge(h).expect("non-loop edge");
            acc.push(&collapsed, sign as i64);
        }
    }
    let raw = acc.raw;
    (acc.into_chain(), raw)
}

pub(crate) fn boundary_h_counted(g: &OrientedGraph) -> (Chain, usize) {
    let mut acc = Accumulator::default();
    let slots: Vec<usize> = g.live_half_edges().collect();
    for (i, &h) in slots.iter().enumerate() {
        for &k in &slots[i + 1..] {
            if g.partner(h) == k {
                continue;
            }
            if let Some((w, sign)) = g.contract_half_pair(h, k).expect("admissible pair") {
                acc.push(&w, sign as i64);
            }
        }
    }
    let raw = acc.raw;
    (acc.into_chain(), raw)
}

pub(crate) fn boundary_e_graph(g: &OrientedGraph) -> Chain {
    boundary_e_counted(g).0
}

pub(crate) fn boundary_h_graph(g: &OrientedGraph) -> Chain {
    boundary_h_counted(g).0
}

/// `∂_E`: sum of single-edge collapses.
pub fn boundary_e(c: &Chain) -> Chain {
    c.map_linear(|x| boundary_e_graph(&x.representative()))
}

/// `∂_H`: sum of `X_{hk}` over unordered half-edge pairs with `k ≠ h̄`.
pub fn boundary_h(c: &Chain) -> Chain {
    c.map_linear(|x| boundary_h_graph(&x.representative()))
}

fn leibniz(t: &TensorChain, d: impl Fn(&Chain) -> Chain) -> TensorChain {
    t.map_linear(|a: &GraphClass, b: &GraphClass| {
        let a_chain = Chain::from_class(a.clone());
        let b_chain = Chain::from_class(b.clone());
        let mut out = TensorChain::tensor(&d(&a_chain), &b_chain);
        out.add_scaled(&rational(parity(a.vertex_count())), &TensorChain::tensor(&a_chain, &d(&b_chain)));
        out
    })
}

/// `d(A ⊗ B) = dA ⊗ B + (-1)^a A ⊗ dB` with `d = ∂_E`.
pub fn tensor_boundary_e(t: &TensorChain) -> TensorChain {
    leibniz(t, boundary_e)
}

/// `d(A ⊗ B) = dA ⊗ B + (-1)^a A ⊗ dB` with `d = ∂_H`.
pub fn tensor_boundary_h(t: &TensorChain) -> TensorChain {
    leibniz(t, boundary_h)
}

/// `∂_E` on the symmetric square, through the tensor square.
pub fn sym_boundary_e(s: &SymChain) -> SymChain {
    SymChain::from_tensor(&tensor_boundary_e(&s.to_tensor())).expect("differential preserves swap symmetry")
}

pub fn sym_boundary_h(s: &SymChain) -> SymChain {
    SymChain::from_tensor(&tensor_boundary_h(&s.to_tensor())).expect("differential preserves swap symmetry")
}
