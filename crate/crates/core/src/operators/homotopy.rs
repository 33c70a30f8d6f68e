//! Chain homotopies exhibiting bracket, cobracket and `∂_H` as
//! `∂_E`-commutators.
//!
//! `X<xy> = X<x̄ȳ>` as oriented graphs, so each regluing is listed once per
//! class `{(x, y), (x̄, ȳ)}`. Collapsing either new edge of that one graph
//! then produces both `X_{xy}` and `X_{x̄ȳ}`.

use crate::canon::GraphClass;
use crate::chain::{Accumulator, Chain, SymChain, TensorAccumulator};
use crate::graph::OrientedGraph;

use super::algebra::{bilinear, juxtapose};
use super::{component_mask, split_components, splits};

/// `{x, y}` is the listed member of `{{x, y}, {x̄, ȳ}}`.
fn listed(g: &OrientedGraph, x: usize, y: usize) -> bool {
    x.min(y) < g.partner(x).min(g.partner(y))
}

/// `μ₁(X ⊗ Y)`: regluings `(X·Y)<xy>` with `x` in `X` and `y` in `Y`, one
/// per class.
pub fn mu1(x: &Chain, y: &Chain) -> Chain {
    bilinear(x, y, mu1_classes)
}

fn mu1_classes(a: &GraphClass, b: &GraphClass) -> Chain {
    let g = juxtapose(a, b);
    let split = 2 * a.edge_count();
    let mut acc = Accumulator::default();
    for x in 0..split {
        if !g.is_initial(x) {
            continue;
        }
        for y in split..g.slot_count() {
            let (w, sign) = g.cut_paste(x, y).expect("distinct half-edges");
            acc.push(&w, sign as i64);
        }
    }
    acc.into_chain()
}

/// `α(X)`: every regluing `X<xy>`, `x ≠ ȳ`, once per class.
pub fn alpha(c: &Chain) -> Chain {
    c.map_linear(|x| {
        let g = x.representative();
        let slots: Vec<usize> = g.live_half_edges().collect();
        let mut acc = Accumulator::default();
        for (i, &h) in slots.iter().enumerate() {
            for &k in &slots[i + 1..] {
                if g.partner(h) != k && listed(&g, h, k) {
                    let (w, sign) = g.cut_paste(h, k).expect("distinct half-edges");
                    acc.push(&w, sign as i64);
                }
            }
        }
        acc.into_chain()
    })
}

/// `Δ₁`: the cobracket with the regluing left uncollapsed. For each class
/// of pairs, the splittings of `X<rs>` that separate the pieces of the
/// components met by `r` and `s`.
pub fn delta1(c: &Chain) -> SymChain {
    let mut out = SymChain::zero();
    for (x, q) in c.iter() {
        let g = x.representative();
        let slots: Vec<usize> = g.live_half_edges().collect();
        let mut acc = TensorAccumulator::default();
        for (i, &r) in slots.iter().enumerate() {
            for &s in &slots[i + 1..] {
                if g.partner(r) == s || !listed(&g, r, s) || g.vertex_of(r) == g.vertex_of(s) {
                    continue;
                }
                let (w, sign) = g.cut_paste(r, s).expect("distinct half-edges");
                let touched = component_mask(&w, &[w.vertex_of(r), w.vertex_of(g.partner(r))]);
                split_components(&w, sign as i64, splits(touched), &mut acc);
            }
        }
        out.add_scaled(q, &SymChain::from_tensor(&acc.into_tensor()).expect("split sum is swap symmetric"));
    }
    out
}

/// The regluing sums over every ordered pair, as literally written; twice
/// [`mu1`]. Kept for the factor checks.
#[cfg(test)]
pub(crate) fn mu1_all_pairs(x: &GraphClass, y: &GraphClass) -> Chain {
    let g = juxtapose(x, y);
    let split = 2 * x.edge_count();
    let mut acc = Accumulator::default();
    for a in 0..split {
        for b in split..g.slot_count() {
            let (w, sign) = g.cut_paste(a, b).expect("distinct half-edges");
            acc.push(&w, sign as i64);
        }
    }
    acc.into_chain()
}
