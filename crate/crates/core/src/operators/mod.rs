//! Operators on chains: both differentials, product and coproduct, bracket
//! and cobracket, the dual coboundary and pairing, and the chain homotopies.
//!
//! Everything is computed on canonical representatives and extended
//! linearly. Degrees in Koszul signs are vertex counts.

pub(crate) mod algebra;
pub(crate) mod cobracket;
mod differential;
mod dual;
mod homotopy;
pub mod identities;

pub use algebra::{bracket, bracket_defect, coproduct, product, product_sym, tensor_product, unit_tensor};
pub use cobracket::{cobracket, cobracket_partition, cobracket_separating, mu_theta, product_cobracket};
pub use differential::{boundary_e, boundary_h, sym_boundary_e, sym_boundary_h, tensor_boundary_e, tensor_boundary_h};
pub use dual::{delta_h, delta_h_halved, pairing, pairing_classes};
pub use homotopy::{alpha, delta1, mu1};
pub use identities::{check_bv, check_compatibility, check_gerstenhaber};

use crate::chain::{classify, Chain, TensorAccumulator};
use crate::graph::{permutation_sign, OrientedGraph};

/// Summary of one operator application.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OperatorReport {
    pub operator: String,
    pub input_terms: usize,
    /// Surgery outputs before normalization.
    pub raw_terms: usize,
    pub output_terms: usize,
}

/// `∂_E` or `∂_H` with term statistics. `raw_terms` is at most the number
/// of edges (resp. admissible half-edge pairs) summed over the input.
pub fn report(operator: Operator, c: &Chain) -> (Chain, OperatorReport) {
    let mut raw = 0;
    let mut out = Chain::zero();
    for (class, q) in c.iter() {
        let (image, n) = match operator {
            Operator::E => differential::boundary_e_counted(&class.representative()),
            Operator::H => differential::boundary_h_counted(&class.representative()),
        };
        raw += n;
        out.add_scaled(q, &image);
    }
    let rep = OperatorReport {
        operator: operator.name().to_string(),
        input_terms: c.len(),
        raw_terms: raw,
        output_terms: out.len(),
    };
    (out, rep)
}

/// The two differentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Operator {
    E,
    H,
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::E => "boundary_E",
            Operator::H => "boundary_H",
        }
    }

    pub fn apply(self, c: &Chain) -> Chain {
        match self {
            Operator::E => boundary_e(c),
            Operator::H => boundary_h(c),
        }
    }
}

pub(crate) fn parity(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Adds the coproduct terms of the labelled graph `g` whose left side,
/// as a component mask, passes `keep`.
///
/// Components are first moved into consecutive blocks, so `g` becomes a
/// product `X_1 ... X_k`; the term for a subset `S` then carries the Koszul
/// sign of pulling the factors in `S` to the left.
pub(crate) fn split_components(g: &OrientedGraph, coeff: i64, keep: impl Fn(u64) -> bool, acc: &mut TensorAccumulator) {
    let comps = g.components();
    let k = comps.len();
    assert!(k < 64, "too many components to split");
    let order: Vec<usize> = comps.iter().flatten().copied().collect();
    let block_sign = permutation_sign(&order) as i64;
    for mask in 0..(1u64 << k) {
        if !keep(mask) {
            continue;
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut exponent = 0usize;
        let mut right_size = 0usize;
        for (i, comp) in comps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                exponent += comp.len() * right_size;
                left.extend_from_slice(comp);
            } else {
                right_size += comp.len();
                right.extend_from_slice(comp);
            }
        }
        let Some((a, sa)) = classify(&g.restrict(&left).0) else { continue };
        let Some((b, sb)) = classify(&g.restrict(&right).0) else { continue };
        acc.push_classes(a, b, coeff * block_sign * parity(exponent) * (sa * sb) as i64);
    }
}

/// Component indices of `g` containing any of `vertices`, as a mask.
pub(crate) fn component_mask(g: &OrientedGraph, vertices: &[usize]) -> u64 {
    let mut mask = 0;
    for (i, comp) in g.components().iter().enumerate() {
        if vertices.iter().any(|v| comp.contains(v)) {
            mask |= 1 << i;
        }
    }
    mask
}

/// The touched pieces are not all on the same side.
pub(crate) fn splits(touched: u64) -> impl Fn(u64) -> bool {
    move |left| left & touched != 0 && !left & touched != 0
}

#[cfg(test)]
mod tests;
