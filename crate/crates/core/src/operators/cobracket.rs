use crate::canon::GraphClass;
use crate::chain::{classify, Accumulator, Chain, SymChain, TensorAccumulator, TensorChain};
use crate::error::{precondition, Result};
use crate::graph::OrientedGraph;

use super::algebra::{coproduct, product_sym};
use super::differential::{boundary_h, tensor_boundary_h};
use super::{component_mask, split_components, splits};

/// Unordered admissible pairs `{h, k}` (`h < k`, `k ≠ h̄`) with `X_{hk}`
/// nonzero as a labelled graph.
fn contracted_pairs(g: &OrientedGraph) -> Vec<(usize, usize, OrientedGraph, i32)> {
    let slots: Vec<usize> = g.live_half_edges().collect();
    let mut out = Vec::new();
    for (i, &h) in slots.iter().enumerate() {
        for &k in &slots[i + 1..] {
            if g.partner(h) == k {
                continue;
            }
            if let Some((w, sign)) = g.contract_half_pair(h, k).expect("admissible pair") {
                out.push((h, k, w, sign));
            }
        }
    }
    out
}

/// `θ = Δ∂_H - ∂_H Δ`, straight from the definition.
pub fn cobracket(c: &Chain) -> SymChain {
    let t: TensorChain = &coproduct(&boundary_h(c)) - &tensor_boundary_h(&coproduct(c));
    SymChain::from_tensor(&t).expect("cobracket is swap symmetric")
}

/// `θ(X) = Σ A_{hk} ⊙ B_{hk}` over pairs separating a connected `X`.
pub fn cobracket_separating(c: &Chain) -> Result<SymChain> {
    let mut out = SymChain::zero();
    for (x, q) in c.iter() {
        if !x.is_connected() {
            return Err(precondition("separating-pair form needs connected graphs"));
        }
        let mut acc = TensorAccumulator::default();
        for (_, _, w, sign) in contracted_pairs(&x.representative()) {
            match w.component_count() {
                1 => {}
                2 => split_components(&w, sign as i64, |m| m == 1, &mut acc),
                n => return Err(precondition(format!("contraction produced {n} components"))),
            }
        }
        // Only the A ⊗ B half was recorded; A ⊙ B carries both.
        let mut half = SymChain::zero();
        for ((a, b), p) in acc.into_tensor().iter() {
            half.add_term(a.clone(), b.clone(), p.clone());
        }
        out.add_scaled(q, &half);
    }
    Ok(out)
}

/// Ordered-partition form for arbitrary monomials: for every pair `{r, s}`,
/// the splittings of `X_{rs}` that separate the pieces of the components
/// met by `r` and `s`.
pub fn cobracket_partition(c: &Chain) -> SymChain {
    let mut out = SymChain::zero();
    for (x, q) in c.iter() {
        out.add_scaled(q, &partition_class(x));
    }
    out
}

fn partition_class(x: &GraphClass) -> SymChain {
    let g = x.representative();
    let mut acc = TensorAccumulator::default();
    for (r, s, w, sign) in contracted_pairs(&g) {
        // Pieces of the touched components: the merged vertex and the ends of r̄ ∪ s̄.
        let touched = component_mask(&w, &[0, w.vertex_of(g.partner(r)), w.vertex_of(g.partner(s))]);
        split_components(&w, sign as i64, splits(touched), &mut acc);
    }
    SymChain::from_tensor(&acc.into_tensor()).expect("partition sum is swap symmetric")
}

/// `μθ(X) = Σ X_{hk}` over separating pairs, for connected support.
pub fn mu_theta(c: &Chain) -> Result<Chain> {
    let mut out = Chain::zero();
    for (x, q) in c.iter() {
        if !x.is_connected() {
            return Err(precondition(format!("mu_theta needs connected graphs, got {}", x.to_line())));
        }
        let mut acc = Accumulator::default();
        for (_, _, w, sign) in contracted_pairs(&x.representative()) {
            if !w.is_connected() {
                acc.push(&w, sign as i64);
            }
        }
        out.add_scaled(q, &acc.into_chain());
    }
    Ok(out)
}

/// `μ ∘ θ` on arbitrary chains.
pub fn product_cobracket(c: &Chain) -> Chain {
    product_sym(&cobracket(c))
}

/// Components of a separated contraction, for closure checks.
pub(crate) fn separated_factors(x: &GraphClass) -> Vec<GraphClass> {
    let mut out = Vec::new();
    for (_, _, w, _) in contracted_pairs(&x.representative()) {
        if w.component_count() > 1 {
            for comp in w.components() {
                if let Some((class, _)) = classify(&w.restrict(&comp).0) {
                    out.push(class);
                }
            }
        }
    }
    out
}
