use num_bigint::BigInt;
use num_traits::Zero;

use crate::canon::GraphClass;
use crate::chain::{ratio, Accumulator, Chain, Coeff};
use crate::graph::OrientedGraph;

/// Blocks `P` of the half-edges at `v` with `|P|, |P̄| >= 2`, either all
/// of them or only those containing the least half-edge.
fn blocks(g: &OrientedGraph, v: usize, representatives_only: bool) -> Vec<Vec<usize>> {
    let at = g.half_edges_at(v);
    let n = at.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) - 1 {
        if representatives_only && mask & 1 == 0 {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size < 2 || n - size < 2 {
            continue;
        }
        out.push((0..n).filter(|i| mask >> i & 1 == 1).map(|i| at[i]).collect());
    }
    out
}

fn expansions(g: &OrientedGraph, representatives_only: bool) -> Accumulator {
    let mut acc = Accumulator::default();
    let slots: Vec<usize> = g.live_half_edges().collect();
    for v in 0..g.vertex_count() {
        for part in blocks(g, v, representatives_only) {
            for &h in &slots {
                if let Some((w, sign)) = g.expand_and_glue(v, &part, h).expect("valid block") {
                    acc.push(&w, sign as i64);
                }
            }
        }
    }
    acc
}

/// `δ_H`: one `X^{Ph}` per pair `{(P, h), (P̄, h̄)}`, taking `P` to be the
/// block containing the least half-edge at its vertex.
pub fn delta_h(c: &Chain) -> Chain {
    c.map_linear(|x| expansions(&x.representative(), true).into_chain())
}

/// `δ_H` as half the sum over all `(P, h)`.
pub fn delta_h_halved(c: &Chain) -> Chain {
    c.map_linear(|x| expansions(&x.representative(), false).into_chain().scale(&ratio(1, 2)))
}

/// `|Aut(X)|` when the classes coincide, otherwise 0.
pub fn pairing_classes(x: &GraphClass, y: &GraphClass) -> u64 {
    if x == y {
        x.aut_order()
    } else {
        0
    }
}

/// The pairing extended bilinearly.
pub fn pairing(x: &Chain, y: &Chain) -> Coeff {
    let mut total = Coeff::zero();
    for (class, p) in x.iter() {
        let q = y.coefficient(class);
        if !q.is_zero() {
            total += p * q * Coeff::from_integer(BigInt::from(class.aut_order()));
        }
    }
    total
}
