//! Canonical representatives of oriented graphs.
//!
//! Each connected component is canonized by individualization/refinement:
//! an ordered, isomorphism-invariant partition of the vertices is refined
//! to equitability, and every vertex of the first non-singleton cell is
//! individualized in turn. Among the discrete leaves the numbering with the
//! lexicographically least sorted edge list wins. The leaves achieving that
//! minimum are exactly the canonical numbering composed with the vertex
//! automorphisms, so the automorphism group and the orientation character
//! on it come for free.
//!
//! Components are then sorted by their codes and numbered consecutively.
//!
//! The reference orientation of a class numbers vertices canonically and
//! directs every edge from its lower to its higher endpoint.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{structure, Result};
use crate::graph::{permutation_sign, OrientedGraph};

/// Isomorphism class of an oriented graph, identified by its canonical code
/// `[n, e, a1, b1, a2, b2, ...]` (sorted edges `a <= b`, canonical numbering).
#[derive(Clone)]
pub struct GraphClass {
    code: Arc<[u8]>,
    components: usize,
    aut_order: u64,
    orientation_reversing: bool,
}

impl PartialEq for GraphClass {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for GraphClass {}

impl Hash for GraphClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for GraphClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GraphClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

impl fmt::Debug for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphClass({})", self.to_line())
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl GraphClass {
    pub fn empty() -> Self {
        Self { code: Arc::from(vec![0u8, 0u8]), components: 0, aut_order: 1, orientation_reversing: false }
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    pub fn vertex_count(&self) -> usize {
        self.code[0] as usize
    }

    pub fn edge_count(&self) -> usize {
        self.code[1] as usize
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// First Betti number `e - v + #components`.
    pub fn loop_degree(&self) -> usize {
        self.edge_count() + self.components - self.vertex_count()
    }

    pub fn aut_order(&self) -> u64 {
        self.aut_order
    }

    /// Some automorphism negates the orientation (always the case with a loop).
    pub fn orientation_reversing(&self) -> bool {
        self.orientation_reversing
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count() == 0
    }

    /// Canonical edges `(a, b)` with `a <= b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.code[2..].chunks_exact(2).map(|p| (p[0] as usize, p[1] as usize))
    }

    pub fn has_loop(&self) -> bool {
        self.edges().any(|(a, b)| a == b)
    }

    /// The reference labelling: canonical numbering, arrows low to high.
    pub fn representative(&self) -> OrientedGraph {
        let edges: Vec<_> = self.edges().collect();
        OrientedGraph::from_edges(self.vertex_count(), &edges).expect("canonical code is well formed")
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    pub fn has_bridge(&self) -> bool {
        self.representative().has_bridge()
    }

    pub fn is_1pi(&self) -> bool {
        self.is_connected() && !self.has_bridge()
    }
}

/// A labelled graph expressed in terms of its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub class: GraphClass,
    /// `+1`/`-1` relative to the reference orientation; `0` for a zero class.
    pub sign: i32,
}

struct ComponentForm {
    /// Local vertices (in increasing global order) mapped to global ones.
    vertices: Vec<usize>,
    code: Vec<u8>,
    /// Local vertex -> canonical local position, one per automorphism.
    leaves: Vec<Vec<usize>>,
    aut_order: u64,
    reversing: bool,
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

pub fn canonical_form(g: &OrientedGraph) -> Result<Canonical> {
    if g.vertex_count() > u8::MAX as usize || g.edge_count() > u8::MAX as usize {
        return Err(structure("graph too large for the canonical code"));
    }
    let directed = g.directed_edges();
    let mut forms: Vec<ComponentForm> = g.components().into_iter().map(|c| component_form(c, &directed)).collect();
    forms.sort_by(|a, b| a.code.cmp(&b.code).then(a.vertices[0].cmp(&b.vertices[0])));

    let n = g.vertex_count();
    let mut position = vec![0usize; n];
    let mut code = vec![n as u8, directed.len() as u8];
    let mut offset = 0usize;
    let mut aut_order = 1u64;
    let mut reversing = false;
    let mut run = 0u32;
    for (i, form) in forms.iter().enumerate() {
        for (local, &v) in form.vertices.iter().enumerate() {
            position[v] = offset + form.leaves[0][local];
        }
        for pair in form.code[2..].chunks_exact(2) {
            code.push(pair[0] + offset as u8);
            code.push(pair[1] + offset as u8);
        }
        offset += form.vertices.len();
        aut_order *= form.aut_order;
        reversing |= form.reversing;
        run = if i > 0 && forms[i - 1].code == form.code { run + 1 } else { 1 };
        aut_order *= run as u64;
        // Swapping two equal components of odd order is an odd permutation.
        if run > 1 && form.vertices.len() % 2 == 1 {
            reversing = true;
        }
    }

    let sign = if reversing {
        0
    } else {
        let flips = directed.iter().filter(|(a, b)| position[*a] > position[*b]).count();
        permutation_sign(&position) * if flips % 2 == 0 { 1 } else { -1 }
    };
    let class = GraphClass {
        code: Arc::from(code),
        components: forms.len(),
        aut_order,
        orientation_reversing: reversing,
    };
    Ok(Canonical { class, sign })
}

fn component_form(vertices: Vec<usize>, directed: &[(usize, usize)]) -> ComponentForm {
    let m = vertices.len();
    let mut local = std::collections::HashMap::with_capacity(m);
    for (i, &v) in vertices.iter().enumerate() {
        local.insert(v, i);
    }
    let edges: Vec<(usize, usize)> = directed
        .iter()
        .filter_map(|(a, b)| Some((*local.get(a)?, *local.get(b)?)))
        .collect();
    let mut mult = vec![vec![0u32; m]; m];
    let mut loops = vec![0u32; m];
    for &(a, b) in &edges {
        if a == b {
            loops[a] += 1;
        } else {
            mult[a][b] += 1;
            mult[b][a] += 1;
        }
    }

    let mut search = Search { mult: &mult, edges: &edges, best: None, leaves: Vec::new() };
    let degree: Vec<u32> = (0..m).map(|v| mult[v].iter().sum::<u32>() + 2 * loops[v]).collect();
    let mut keyed: Vec<((u32, u32), usize)> = (0..m).map(|v| ((degree[v], loops[v]), v)).collect();
    keyed.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, (key, v)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == *key {
            cells.last_mut().unwrap().push(*v);
        } else {
            cells.push(vec![*v]);
        }
    }
    search.descend(cells);
    let best = search.best.take().unwrap_or_default();
    let leaves = search.leaves;

    let mut code = vec![m as u8, edges.len() as u8];
    for (a, b) in &best {
        code.push(*a);
        code.push(*b);
    }
    let mut aut_order = leaves.len() as u64;
    for i in 0..m {
        for j in i + 1..m {
            aut_order *= factorial(mult[i][j]);
        }
        aut_order *= factorial(loops[i]) << loops[i];
    }
    let leaf_sign = |pos: &Vec<usize>| {
        let flips = edges.iter().filter(|(a, b)| pos[*a] > pos[*b]).count();
        permutation_sign(pos) * if flips % 2 == 0 { 1 } else { -1 }
    };
    let first = leaf_sign(&leaves[0]);
    let reversing = loops.iter().any(|&l| l > 0) || leaves.iter().any(|l| leaf_sign(l) != first);
    ComponentForm { vertices, code, leaves, aut_order, reversing }
}

struct Search<'a> {
    mult: &'a [Vec<u32>],
    edges: &'a [(usize, usize)],
    best: Option<Vec<(u8, u8)>>,
    leaves: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let n = self.mult.len();
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let mut next = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, u32)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig: Vec<(usize, u32)> =
                            (0..n).filter(|&w| self.mult[v][w] > 0).map(|w| (cell_of[w], self.mult[v][w])).collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let start = next.len();
                for (i, (sig, v)) in keyed.iter().enumerate() {
                    if i > 0 && keyed[i - 1].0 == *sig {
                        next.last_mut().unwrap().push(*v);
                    } else {
                        next.push(vec![*v]);
                    }
                }
                debug_assert!(next.len() > start);
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let cells = self.refine(cells);
        match cells.iter().position(|c| c.len() > 1) {
            None => self.leaf(&cells),
            Some(target) => {
                for &u in &cells[target] {
                    let mut split = Vec::with_capacity(cells.len() + 1);
                    split.extend_from_slice(&cells[..target]);
                    split.push(vec![u]);
                    split.push(cells[target].iter().copied().filter(|&w| w != u).collect());
                    split.extend_from_slice(&cells[target + 1..]);
                    self.descend(split);
                }
            }
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let mut pos = vec![0usize; cells.len()];
        for (i, cell) in cells.iter().enumerate() {
            pos[cell[0]] = i;
        }
        let mut code: Vec<(u8, u8)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (pos[a] as u8, pos[b] as u8);
                (x.min(y), x.max(y))
            })
            .collect();
        code.sort_unstable();
        match self.best.as_ref().map(|b| code.cmp(b)) {
            None | Some(Ordering::Less) => {
                self.best = Some(code);
                self.leaves = vec![pos];
            }
            Some(Ordering::Equal) => self.leaves.push(pos),
            Some(Ordering::Greater) => {}
        }
    }
}
