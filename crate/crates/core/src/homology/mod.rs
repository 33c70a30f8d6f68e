//! Boundary matrices between enumerated bases and their homology.
//!
//! `∂_E` keeps the loop degree and the number of components, so its
//! matrices live between loop-degree slices (connected, 1PI or full).
//! `∂_H` only keeps `e - v`: a contraction can disconnect a graph and raise
//! its loop degree. Its matrices are therefore taken between edge-graded
//! slices that contain every graph with the right vertex and edge counts.

pub mod rank;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::basis::{enumerate_basis_with, enumerate_edge_slice, vertex_range, BasisSlice, Caps};
use crate::chain::Chain;
use crate::error::{precondition, Error, Result};
use crate::operators::Operator;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub op: Operator,
    pub domain: BasisSlice,
    pub codomain: BasisSlice,
    /// `(row, col, value)`, sorted, no zeros.
    pub entries: Vec<(usize, usize, BigInt)>,
}

impl BoundaryMatrix {
    pub fn rows(&self) -> usize {
        self.codomain.len()
    }

    pub fn cols(&self) -> usize {
        self.domain.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn dense(&self) -> Vec<Vec<BigInt>> {
        let mut m = vec![vec![BigInt::zero(); self.cols()]; self.rows()];
        for (r, c, v) in &self.entries {
            m[*r][*c] = v.clone();
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        self.entries
            .binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col)))
            .map(|i| self.entries[i].2.clone())
            .unwrap_or_default()
    }

    /// Rank by fraction-free elimination, confirmed at each prime.
    pub fn rank_checked(&self, primes: &[u64]) -> Result<usize> {
        let m = self.dense();
        let r = rank::bareiss_rank(&m);
        for &p in primes {
            let rp = rank::modular_rank(&m, p);
            if rp != r {
                return Err(Error::Identity(format!("rank {r} over Q but {rp} mod {p}")));
            }
        }
        Ok(r)
    }

    pub fn rank(&self) -> Result<usize> {
        self.rank_checked(&rank::DEFAULT_PRIMES)
    }

    /// Header `rows cols nnz`, then `row col value` per entry (1-based).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows(), self.cols(), self.nnz());
        for (r, c, v) in &self.entries {
            out.push_str(&format!("{} {} {}\n", r + 1, c + 1, v));
        }
        out
    }

    /// The image of a domain column as a chain.
    pub fn column_chain(&self, col: usize) -> Chain {
        self.entries
            .iter()
            .filter(|(_, c, _)| *c == col)
            .map(|(r, _, v)| (self.codomain.classes[*r].clone(), BigRational::from_integer(v.clone())))
            .collect()
    }
}

fn empty_slice(like: &BasisSlice) -> BasisSlice {
    BasisSlice { vertex_count: 0, classes: Vec::new(), ..like.clone() }
}

/// Slice at `v` vertices in the grading used by `op`.
pub fn slice_for(op: Operator, b: usize, v: usize, connected: bool, one_pi: bool, caps: &Caps) -> Result<BasisSlice> {
    match op {
        Operator::E => enumerate_basis_with(v, b, connected, one_pi, caps),
        Operator::H => {
            if connected || one_pi {
                return Err(precondition("∂_H does not preserve connected or 1PI slices"));
            }
            enumerate_edge_slice(v, b, caps)
        }
    }
}

pub fn boundary_matrix(op: Operator, b: usize, v: usize, connected: bool) -> Result<BoundaryMatrix> {
    boundary_matrix_with(op, b, v, connected, false, &Caps::default())
}

pub fn boundary_matrix_with(op: Operator, b: usize, v: usize, connected: bool, one_pi: bool, caps: &Caps) -> Result<BoundaryMatrix> {
    let domain = slice_for(op, b, v, connected, one_pi, caps)?;
    let codomain = if v <= 1 { empty_slice(&domain) } else { slice_for(op, b, v - 1, connected, one_pi, caps)? };
    matrix_between(op, domain, codomain)
}

/// Matrix of `op` with respect to the given bases. Fails if an image leaves
/// the codomain or has a non-integral coefficient.
pub fn matrix_between(op: Operator, domain: BasisSlice, codomain: BasisSlice) -> Result<BoundaryMatrix> {
    let columns: Vec<Result<Vec<(usize, usize, BigInt)>>> = domain
        .classes
        .par_iter()
        .enumerate()
        .map(|(col, class)| {
            let image = op.apply(&Chain::from_class(class.clone()));
            let mut out = Vec::with_capacity(image.len());
            for (c, q) in image.iter() {
                let row = codomain
                    .index_of(c)
                    .ok_or_else(|| Error::Identity(format!("image term {} is outside the codomain", c.to_line())))?;
                if !q.is_integer() {
                    return Err(Error::Identity(format!("non-integral coefficient {q}")));
                }
                out.push((row, col, q.to_integer()));
            }
            Ok(out)
        })
        .collect();
    let mut entries = Vec::new();
    for c in columns {
        entries.extend(c?);
    }
    entries.sort();
    Ok(BoundaryMatrix { op, domain, codomain, entries })
}

/// One row of a Betti table.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BettiRow {
    pub loop_degree: usize,
    pub vertices: usize,
    pub dim_basis: usize,
    pub betti: usize,
}

/// `dim ker ∂_E|_v - rank ∂_E|_{v+1}` on the loop-degree-`b` slice.
pub fn betti(b: usize, v: usize, connected: bool) -> Result<usize> {
    betti_with(b, v, connected, false, &Caps::default())
}

pub fn betti_with(b: usize, v: usize, connected: bool, one_pi: bool, caps: &Caps) -> Result<usize> {
    Ok(betti_row(b, v, connected, one_pi, caps)?.betti)
}

fn rank_of(op: Operator, b: usize, v: usize, connected: bool, one_pi: bool, caps: &Caps) -> Result<usize> {
    boundary_matrix_with(op, b, v, connected, one_pi, caps)?.rank()
}

fn betti_row(b: usize, v: usize, connected: bool, one_pi: bool, caps: &Caps) -> Result<BettiRow> {
    let here = boundary_matrix_with(Operator::E, b, v, connected, one_pi, caps)?;
    let dim = here.cols();
    let out_rank = here.rank()?;
    let upper = vertex_range(b);
    let in_rank = if upper.contains(&(v + 1)) { rank_of(Operator::E, b, v + 1, connected, one_pi, caps)? } else { 0 };
    Ok(BettiRow { loop_degree: b, vertices: v, dim_basis: dim, betti: dim - out_rank - in_rank })
}

/// Rows for every vertex count that carries loop degree `b`. Blocks are
/// computed concurrently and returned in vertex order.
pub fn betti_table(b: usize, connected: bool, one_pi: bool, caps: &Caps) -> Result<Vec<BettiRow>> {
    let vs: Vec<usize> = vertex_range(b).filter(|&v| v <= caps.max_vertices).collect();
    if let Some(&top) = vertex_range(b).last().as_ref() {
        if top > caps.max_vertices {
            caps.check(b, top)?;
        }
    }
    vs.par_iter().map(|&v| betti_row(b, v, connected, one_pi, caps)).collect()
}

/// Exact kernel of `op` at `(b, v)` as chains with coprime integer
/// coefficients.
pub fn kernel_basis(op: Operator, b: usize, v: usize, connected: bool) -> Result<Vec<Chain>> {
    let m = boundary_matrix(op, b, v, connected)?;
    let basis = rank::kernel(&m.dense(), m.cols());
    Ok(basis
        .into_iter()
        .map(|x| {
            x.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (m.domain.classes[i].clone(), BigRational::from_integer(c)))
                .collect()
        })
        .collect())
}

/// A chain `p` with `∂_E p = c`, or `None` if there is none. Each loop
/// degree of `c` is solved on its own slice.
pub fn is_boundary(c: &Chain) -> Result<Option<Chain>> {
    is_boundary_with(c, &Caps::default())
}

pub fn is_boundary_with(c: &Chain, caps: &Caps) -> Result<Option<Chain>> {
    let mut blocks: std::collections::BTreeMap<(usize, usize), Chain> = Default::default();
    for (class, q) in c.iter() {
        blocks
            .entry((class.loop_degree(), class.vertex_count()))
            .or_default()
            .add_term(class.clone(), q.clone());
    }
    let mut preimage = Chain::zero();
    for ((b, v), part) in blocks {
        let m = if vertex_range(b).contains(&(v + 1)) {
            boundary_matrix_with(Operator::E, b, v + 1, false, false, caps)?
        } else {
            let codomain = enumerate_basis_with(v, b, false, false, caps)?;
            let domain = BasisSlice { vertex_count: v + 1, classes: Vec::new(), ..codomain.clone() };
            BoundaryMatrix { op: Operator::E, domain, codomain, entries: Vec::new() }
        };
        let mut rhs = vec![BigRational::zero(); m.rows()];
        for (class, q) in part.iter() {
            let i = m.codomain.index_of(class).ok_or_else(|| precondition(format!("{} is not a basis class", class.to_line())))?;
            rhs[i] = q.clone();
        }
        match rank::solve(&m.dense(), m.cols(), &rhs) {
            None => return Ok(None),
            Some(x) => {
                for (i, q) in x.into_iter().enumerate() {
                    preimage.add_term(m.domain.classes[i].clone(), q);
                }
            }
        }
    }
    Ok(Some(preimage))
}

/// `Σ (-1)^v dim C_v` and `Σ (-1)^v b_v` over a table.
pub fn euler_characteristics(rows: &[BettiRow]) -> (i64, i64) {
    let sign = |v: usize| if v % 2 == 0 { 1 } else { -1 };
    let chain = rows.iter().map(|r| sign(r.vertices) * r.dim_basis as i64).sum();
    let homology = rows.iter().map(|r| sign(r.vertices) * r.betti as i64).sum();
    (chain, homology)
}

/// Betti table as CSV with header `loop_degree,vertices,dim_basis,betti`.
pub fn betti_csv(rows: &[BettiRow]) -> String {
    let mut out = String::from("loop_degree,vertices,dim_basis,betti\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.loop_degree, r.vertices, r.dim_basis, r.betti));
    }
    out
}
