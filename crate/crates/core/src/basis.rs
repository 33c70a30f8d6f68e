//! Enumeration of chain bases.
//!
//! Connected classes with `v` vertices and `e` edges come from filling
//! upper-triangular multiplicity matrices against every non-increasing
//! degree sequence with all degrees at least 3, then deduplicating through
//! [`canonical_form`]. Disconnected slices are monomials of connected
//! classes.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::canon::{canonical_form, GraphClass};
use crate::error::{precondition, Error, Result};
use crate::graph::OrientedGraph;

/// Enumeration limits. A request beyond them fails with a capacity error
/// instead of running away.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_loop: usize,
    pub max_vertices: usize,
    /// Upper bound on the size of one slice.
    pub max_classes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_loop: 4, max_vertices: 6, max_classes: 200_000 }
    }
}

impl Caps {
    pub fn check(&self, loop_degree: usize, vertices: usize) -> Result<()> {
        if loop_degree > self.max_loop {
            return Err(Error::Capacity(format!("loop degree {loop_degree} exceeds the cap {}", self.max_loop)));
        }
        if vertices > self.max_vertices {
            return Err(Error::Capacity(format!("vertex count {vertices} exceeds the cap {}", self.max_vertices)));
        }
        Ok(())
    }
}

/// Which quantity a slice holds fixed besides the vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Grading {
    /// First Betti number `e - v + #components`. Preserved by `∂_E`.
    Loop,
    /// Edge count `e = degree + v - 1`, any number of components. This is
    /// the grading preserved by `∂_H` and `δ_H`.
    Edges,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSlice {
    pub vertex_count: usize,
    /// Loop degree; for [`Grading::Edges`] the value `e - v + 1`.
    pub loop_degree: usize,
    pub grading: Grading,
    pub connected: bool,
    pub one_pi: bool,
    /// Sorted by canonical code.
    pub classes: Vec<GraphClass>,
}

impl BasisSlice {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, class: &GraphClass) -> Option<usize> {
        self.classes.binary_search(class).ok()
    }

    pub fn edge_count(&self) -> usize {
        self.loop_degree + self.vertex_count - 1
    }
}

/// Vertex counts that can carry graphs of loop degree `b`, connected or
/// not (trivalent graphs reach `2b - 2`).
pub fn vertex_range(b: usize) -> std::ops::RangeInclusive<usize> {
    if b < 2 {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    2..=2 * b - 2
}

pub fn enumerate_basis(v: usize, b: usize, connected: bool, one_pi: bool) -> Result<BasisSlice> {
    enumerate_basis_with(v, b, connected, one_pi, &Caps::default())
}

pub fn enumerate_basis_with(v: usize, b: usize, connected: bool, one_pi: bool, caps: &Caps) -> Result<BasisSlice> {
    if v == 0 {
        return Err(precondition("slices start at one vertex"));
    }
    caps.check(b, v)?;
    let mut classes = if connected {
        connected_classes(v, (b + v).saturating_sub(1), caps)?
    } else {
        monomials(v, caps, &|bi, vi| bi + vi - 1, b, &|bi| bi)?
    };
    if one_pi {
        classes.retain(|c| !c.has_bridge());
    }
    Ok(BasisSlice { vertex_count: v, loop_degree: b, grading: Grading::Loop, connected, one_pi, classes })
}

/// All nonzero classes with `v` vertices and `b + v - 1` edges, any number
/// of components.
pub fn enumerate_edge_slice(v: usize, b: usize, caps: &Caps) -> Result<BasisSlice> {
    if v == 0 {
        return Err(precondition("slices start at one vertex"));
    }
    caps.check(b, v)?;
    let e = (b + v).saturating_sub(1);
    let classes = edge_monomials(v, e, caps)?;
    Ok(BasisSlice { vertex_count: v, loop_degree: b, grading: Grading::Edges, connected: false, one_pi: false, classes })
}

fn cache() -> &'static Mutex<HashMap<(usize, usize), Vec<GraphClass>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Vec<GraphClass>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Nonzero connected classes with `v` vertices and `e` edges, all valences
/// at least 3, no loops.
pub fn connected_classes(v: usize, e: usize, caps: &Caps) -> Result<Vec<GraphClass>> {
    if let Some(hit) = cache().lock().unwrap().get(&(v, e)) {
        return Ok(hit.clone());
    }
    let mut found = BTreeSet::new();
    if v >= 2 && 2 * e >= 3 * v && e + 1 >= v {
        for degrees in degree_sequences(v, 2 * e) {
            let mut rest = degrees.clone();
            let mut mult = vec![vec![0u32; v]; v];
            fill(0, 1, &mut rest, &mut mult, &mut |m| {
                let mut edges = Vec::with_capacity(e);
                for i in 0..v {
                    for j in i + 1..v {
                        for _ in 0..m[i][j] {
                            edges.push((i, j));
                        }
                    }
                }
                let g = OrientedGraph::from_edges(v, &edges).expect("filled matrix is a graph");
                if g.is_connected() {
                    let c = canonical_form(&g).expect("graph fits the canonical code");
                    if c.sign != 0 {
                        found.insert(c.class);
                    }
                }
            });
            if found.len() > caps.max_classes {
                return Err(Error::Capacity(format!("more than {} classes at v={v} e={e}", caps.max_classes)));
            }
        }
    }
    let out: Vec<_> = found.into_iter().collect();
    cache().lock().unwrap().insert((v, e), out.clone());
    Ok(out)
}

fn degree_sequences(v: usize, total: usize) -> Vec<Vec<u32>> {
    fn go(left: usize, total: usize, max: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if total < 3 * left || total > max * left {
            return;
        }
        for d in (3..=max.min(total - 3 * (left - 1))).rev() {
            cur.push(d as u32);
            go(left - 1, total - d, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(v, total, total, &mut Vec::new(), &mut out);
    out
}

/// Fills row `i` from column `j` on, keeping `rest[k]` the unmet degree.
fn fill(i: usize, j: usize, rest: &mut [u32], m: &mut [Vec<u32>], emit: &mut impl FnMut(&[Vec<u32>])) {
    let v = rest.len();
    if i + 1 >= v {
        if rest.iter().all(|&r| r == 0) {
            emit(m);
        }
        return;
    }
    if j == v {
        if rest[i] == 0 {
            fill(i + 1, i + 2, rest, m, emit);
        }
        return;
    }
    let later: u32 = rest[j + 1..].iter().sum();
    let hi = rest[i].min(rest[j]);
    // What row i cannot place in later columns must go here.
    let lo = rest[i].saturating_sub(later);
    for k in lo..=hi {
        rest[i] -= k;
        rest[j] -= k;
        m[i][j] = k;
        fill(i, j + 1, rest, m, emit);
        rest[i] += k;
        rest[j] += k;
    }
    m[i][j] = 0;
}

/// Products of connected classes. `edges(b_i, v_i)` gives the edge count of
/// a component and `budget(b_i)` what it consumes of `total`.
fn monomials(
    v: usize,
    caps: &Caps,
    edges: &dyn Fn(usize, usize) -> usize,
    total: usize,
    budget: &dyn Fn(usize) -> usize,
) -> Result<Vec<GraphClass>> {
    let mut pool = Vec::new();
    for bi in 2..=total {
        for vi in vertex_range(bi) {
            if vi <= v && budget(bi) <= total {
                for c in connected_classes(vi, edges(bi, vi), caps)? {
                    pool.push((budget(bi), vi, c));
                }
            }
        }
    }
    combine(&pool, v, total, caps)
}

fn edge_monomials(v: usize, e: usize, caps: &Caps) -> Result<Vec<GraphClass>> {
    let mut pool = Vec::new();
    for vi in 2..=v {
        for ei in (3 * vi).div_ceil(2)..=e {
            for c in connected_classes(vi, ei, caps)? {
                pool.push((ei, vi, c));
            }
        }
    }
    combine(&pool, v, e, caps)
}

/// Multisets from `pool` whose vertex counts sum to `v` and budgets to
/// `total`, as canonical products.
fn combine(pool: &[(usize, usize, GraphClass)], v: usize, total: usize, caps: &Caps) -> Result<Vec<GraphClass>> {
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    fn go(
        pool: &[(usize, usize, GraphClass)],
        start: usize,
        v: usize,
        total: usize,
        chosen: &mut Vec<usize>,
        found: &mut BTreeSet<GraphClass>,
    ) {
        if v == 0 && total == 0 {
            if chosen.is_empty() {
                return;
            }
            let g = chosen
                .iter()
                .fold(OrientedGraph::empty(), |acc, &i| acc.disjoint_union(&pool[i].2.representative()));
            let c = canonical_form(&g).expect("graph fits the canonical code");
            if c.sign != 0 {
                found.insert(c.class);
            }
            return;
        }
        for i in start..pool.len() {
            let (t, vi, _) = &pool[i];
            if *vi <= v && *t <= total {
                chosen.push(i);
                go(pool, i, v - vi, total - t, chosen, found);
                chosen.pop();
            }
        }
    }
    go(pool, 0, v, total, &mut chosen, &mut found);
    if found.len() > caps.max_classes {
        return Err(Error::Capacity(format!("more than {} classes in one slice", caps.max_classes)));
    }
    Ok(found.into_iter().collect())
}
