//! Half-edge multigraphs carrying a labelled orientation, plus the raw
//! surgeries every operator is assembled from.
//!
//! A graph is a set of half-edge *slots*. Each live slot is attached to a
//! vertex and paired with a partner slot; the two together form an edge.
//! Slots are never renumbered by a surgery: contracting an edge retires its
//! two slots and expanding a vertex appends two new ones, so a half-edge
//! named before a sequence of surgeries can still be named after it.
//!
//! An orientation is represented by a labelling: the vertex numbering
//! (vertices of an [`OrientedGraph`] are numbered by their index) together
//! with an arrow on every edge, recorded by marking the initial half-edge.
//! Transposing two vertex numbers or reversing one arrow negates the
//! orientation. Surgeries that have to relabel report the sign they incur
//! alongside the new graph.

use std::collections::VecDeque;

use crate::error::{precondition, structure, Result};

pub type Vertex = usize;
pub type HalfEdge = usize;

/// Sign of a sequence read as a permutation of its sorted values.
pub fn permutation_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A multigraph as half-edges with a partner involution and a vertex
/// attachment map. Slots with no attachment are retired and ignored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfEdgeStructure {
    vertex_count: usize,
    attach: Vec<Option<Vertex>>,
    partner: Vec<HalfEdge>,
}

impl HalfEdgeStructure {
    pub fn new(vertex_count: usize, attach: Vec<Option<Vertex>>, partner: Vec<HalfEdge>) -> Result<Self> {
        if attach.len() != partner.len() {
            return Err(structure("attach and partner maps have different lengths"));
        }
        let mut touched = vec![false; vertex_count];
        for (h, a) in attach.iter().enumerate() {
            let Some(v) = *a else { continue };
            if v >= vertex_count {
                return Err(structure(format!("half-edge {h} attached to missing vertex {v}")));
            }
            touched[v] = true;
            let p = partner[h];
            if p >= attach.len() || attach[p].is_none() {
                return Err(structure(format!("half-edge {h} has no live partner")));
            }
            if p == h {
                return Err(structure(format!("half-edge {h} is its own partner")));
            }
            if partner[p] != h {
                return Err(structure(format!("partner map is not an involution at {h}")));
            }
        }
        if let Some(v) = touched.iter().position(|t| !t) {
            return Err(structure(format!("vertex {v} has no half-edges")));
        }
        Ok(Self { vertex_count, attach, partner })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn slot_count(&self) -> usize {
        self.attach.len()
    }

    pub fn attach(&self, h: HalfEdge) -> Option<Vertex> {
        self.attach.get(h).copied().flatten()
    }

    pub fn partner(&self, h: HalfEdge) -> HalfEdge {
        self.partner[h]
    }

    pub fn edge_count(&self) -> usize {
        self.attach.iter().filter(|a| a.is_some()).count() / 2
    }
}

/// A vertex numbering plus an arrow on every edge.
///
/// `vertex_order[v]` is the number given to vertex `v`; `initial[h]` marks
/// `h` as the tail half-edge of its edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelledOrientation {
    pub vertex_order: Vec<usize>,
    pub initial: Vec<bool>,
}

/// A labelled graph: half-edge structure whose vertices are numbered by
/// index, with arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    attach: Vec<Option<Vertex>>,
    partner: Vec<HalfEdge>,
    initial: Vec<bool>,
}

impl OrientedGraph {
    pub fn empty() -> Self {
        Self { n: 0, attach: Vec::new(), partner: Vec::new(), initial: Vec::new() }
    }

    /// Builds a graph from directed edges `(tail, head)`. Edge `i` owns
    /// half-edges `2i` (at the tail, initial) and `2i + 1` (at the head).
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut attach = Vec::with_capacity(2 * edges.len());
        let mut partner = Vec::with_capacity(2 * edges.len());
        let mut initial = Vec::with_capacity(2 * edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(structure(format!("edge {i} uses a vertex outside 0..{n}")));
            }
            attach.extend([Some(a), Some(b)]);
            partner.extend([2 * i + 1, 2 * i]);
            initial.extend([true, false]);
        }
        let g = Self { n, attach, partner, initial };
        g.check_vertices_touched()?;
        Ok(g)
    }

    pub fn from_parts(g: &HalfEdgeStructure, o: &LabelledOrientation) -> Result<Self> {
        let n = g.vertex_count;
        if o.vertex_order.len() != n {
            return Err(structure("vertex order has the wrong length"));
        }
        let mut seen = vec![false; n];
        for &p in &o.vertex_order {
            if p >= n || seen[p] {
                return Err(structure("vertex order is not a bijection"));
            }
            seen[p] = true;
        }
        if o.initial.len() != g.attach.len() {
            return Err(structure("arrow map has the wrong length"));
        }
        for (h, a) in g.attach.iter().enumerate() {
            if a.is_some() && o.initial[h] == o.initial[g.partner[h]] {
                return Err(structure(format!("edge of half-edge {h} needs exactly one initial half-edge")));
            }
        }
        let attach = g.attach.iter().map(|a| a.map(|v| o.vertex_order[v])).collect();
        Ok(Self { n, attach, partner: g.partner.clone(), initial: o.initial.clone() })
    }

    pub fn structure(&self) -> HalfEdgeStructure {
        HalfEdgeStructure { vertex_count: self.n, attach: self.attach.clone(), partner: self.partner.clone() }
    }

    pub fn orientation(&self) -> LabelledOrientation {
        LabelledOrientation { vertex_order: (0..self.n).collect(), initial: self.initial.clone() }
    }

    fn check_vertices_touched(&self) -> Result<()> {
        let mut touched = vec![false; self.n];
        for v in self.attach.iter().flatten() {
            touched[*v] = true;
        }
        match touched.iter().position(|t| !t) {
            Some(v) => Err(structure(format!("vertex {v} has no half-edges"))),
            None => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.live_half_edges().count() / 2
    }

    pub fn slot_count(&self) -> usize {
        self.attach.len()
    }

    pub fn is_live(&self, h: HalfEdge) -> bool {
        matches!(self.attach.get(h), Some(Some(_)))
    }

    pub fn vertex_of(&self, h: HalfEdge) -> Vertex {
        self.attach[h].expect("retired half-edge has no vertex")
    }

    pub fn partner(&self, h: HalfEdge) -> HalfEdge {
        self.partner[h]
    }

    pub fn is_initial(&self, h: HalfEdge) -> bool {
        self.initial[h]
    }

    pub fn live_half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        (0..self.attach.len()).filter(|&h| self.attach[h].is_some())
    }

    /// Live edges as `(initial, terminal)` half-edge pairs, by initial slot.
    pub fn edges(&self) -> impl Iterator<Item = (HalfEdge, HalfEdge)> + '_ {
        self.live_half_edges().filter(|&h| self.initial[h]).map(|h| (h, self.partner[h]))
    }

    /// Live edges as `(tail, head)` vertex pairs.
    pub fn directed_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.edges().map(|(a, b)| (self.vertex_of(a), self.vertex_of(b))).collect()
    }

    pub fn half_edges_at(&self, v: Vertex) -> Vec<HalfEdge> {
        self.live_half_edges().filter(|&h| self.attach[h] == Some(v)).collect()
    }

    pub fn valence(&self, v: Vertex) -> usize {
        self.attach.iter().filter(|a| **a == Some(v)).count()
    }

    pub fn is_loop(&self, h: HalfEdge) -> bool {
        self.attach[h] == self.attach[self.partner[h]]
    }

    pub fn has_loop(&self) -> bool {
        self.live_half_edges().any(|h| self.is_loop(h))
    }

    /// Half-edges never retired and edges between distinct vertices only:
    /// the same labelled graph can be recovered from `directed_edges`.
    pub fn compacted(&self) -> Self {
        Self::from_edges(self.n, &self.directed_edges()).expect("live graph is well formed")
    }

    /// Reverses the arrow on the edge containing `h`.
    pub fn flip_arrow(&mut self, h: HalfEdge) {
        let p = self.partner[h];
        self.initial[h] = !self.initial[h];
        self.initial[p] = !self.initial[p];
    }

    /// Renumbers vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let attach = self.attach.iter().map(|a| a.map(|v| perm[v])).collect();
        Self { n: self.n, attach, partner: self.partner.clone(), initial: self.initial.clone() }
    }

    /// Disjoint union with `other`, whose vertices and slots are shifted past
    /// those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off_v = self.n;
        let off_h = self.attach.len();
        let mut g = self.clone();
        g.n += other.n;
        g.attach.extend(other.attach.iter().map(|a| a.map(|v| v + off_v)));
        g.partner.extend(other.partner.iter().map(|p| p + off_h));
        g.initial.extend(other.initial.iter().copied());
        g
    }

    /// The subgraph on `vertices` (a union of components, in the order the
    /// new numbering should follow) with compact slots, and the map from new
    /// slots back to old ones.
    pub fn restrict(&self, vertices: &[Vertex]) -> (Self, Vec<HalfEdge>) {
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            new_index[v] = i;
        }
        let slots: Vec<HalfEdge> =
            self.live_half_edges().filter(|&h| new_index[self.vertex_of(h)] != usize::MAX).collect();
        let mut slot_index = vec![usize::MAX; self.attach.len()];
        for (i, &h) in slots.iter().enumerate() {
            slot_index[h] = i;
        }
        let g = Self {
            n: vertices.len(),
            attach: slots.iter().map(|&h| Some(new_index[self.vertex_of(h)])).collect(),
            partner: slots.iter().map(|&h| slot_index[self.partner[h]]).collect(),
            initial: slots.iter().map(|&h| self.initial[h]).collect(),
        };
        (g, slots)
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let adj = self.adjacency(None);
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    fn adjacency(&self, skip_edge: Option<HalfEdge>) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for (a, b) in self.edges() {
            if Some(a) == skip_edge {
                continue;
            }
            let (u, v) = (self.vertex_of(a), self.vertex_of(b));
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// An edge whose removal disconnects its endpoints. Loops never are.
    pub fn is_bridge(&self, h: HalfEdge) -> bool {
        let (a, b) = if self.initial[h] { (h, self.partner[h]) } else { (self.partner[h], h) };
        let (u, target) = (self.vertex_of(a), self.vertex_of(b));
        if u == target {
            return false;
        }
        let adj = self.adjacency(Some(a));
        let mut seen = vec![false; self.n];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == target {
                return false;
            }
            for &w in &adj[x] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        true
    }

    pub fn has_bridge(&self) -> bool {
        self.edges().any(|(a, _)| self.is_bridge(a))
    }

    /// Connected with no separating edge.
    pub fn is_1pi(&self) -> bool {
        self.is_connected() && !self.has_bridge()
    }

    fn require_live(&self, h: HalfEdge) -> Result<()> {
        if self.is_live(h) {
            Ok(())
        } else {
            Err(precondition(format!("half-edge {h} is not part of the graph")))
        }
    }

    /// Collapses the edge containing `h`.
    ///
    /// The tail is renumbered first and the head second, the merged vertex
    /// keeps number 0 and the remaining vertices follow in their old order;
    /// the returned sign is the sign of that relabelling. For an edge from
    /// `i` to `j` with `i < j` (1-based) this is the `(-1)^j` rule with the
    /// merged vertex numbered `i`.
    pub fn contract_edge(&self, h: HalfEdge) -> Result<(Self, i32)> {
        self.require_live(h)?;
        let (a, b) = if self.initial[h] { (h, self.partner[h]) } else { (self.partner[h], h) };
        let (tail, head) = (self.vertex_of(a), self.vertex_of(b));
        if tail == head {
            return Err(precondition("cannot contract a loop"));
        }
        let mut order = vec![tail, head];
        order.extend((0..self.n).filter(|&v| v != tail && v != head));
        let sign = permutation_sign(&order);
        let mut new_number = vec![0usize; self.n];
        for (pos, &v) in order.iter().enumerate().skip(2) {
            new_number[v] = pos - 1;
        }
        let mut g = self.clone();
        g.n -= 1;
        g.attach[a] = None;
        g.attach[b] = None;
        for slot in g.attach.iter_mut().flatten() {
            *slot = new_number[*slot];
        }
        Ok((g, sign))
    }

    /// `X<hk>`: cut `h` from its partner and `k` from its partner, then glue
    /// `h` to `k` and the two former partners to each other.
    ///
    /// The labelling is first adjusted so `h` is initial and `k` terminal
    /// (the returned sign records those arrow reversals); the edge `h ∪ k`
    /// then runs from `h` to `k` and the other new edge from `k̄` to `h̄`.
    pub fn cut_paste(&self, h: HalfEdge, k: HalfEdge) -> Result<(Self, i32)> {
        self.require_live(h)?;
        self.require_live(k)?;
        if h == k {
            return Err(precondition("cut-and-paste needs two distinct half-edges"));
        }
        if self.partner[h] == k {
            return Ok((self.clone(), 1));
        }
        let (hb, kb) = (self.partner[h], self.partner[k]);
        let mut sign = 1;
        if !self.initial[h] {
            sign = -sign;
        }
        if self.initial[k] {
            sign = -sign;
        }
        let mut g = self.clone();
        g.partner[h] = k;
        g.partner[k] = h;
        g.partner[hb] = kb;
        g.partner[kb] = hb;
        g.initial[h] = true;
        g.initial[k] = false;
        g.initial[kb] = true;
        g.initial[hb] = false;
        Ok((g, sign))
    }

    /// `X_{hk}`: cut-and-paste followed by collapsing the edge `h ∪ k`.
    /// `None` when both half-edges sit at the same vertex.
    pub fn contract_half_pair(&self, h: HalfEdge, k: HalfEdge) -> Result<Option<(Self, i32)>> {
        self.require_live(h)?;
        self.require_live(k)?;
        if h == k || self.partner[h] == k {
            return Err(precondition("half-edge pair must be distinct and not form an edge"));
        }
        if self.vertex_of(h) == self.vertex_of(k) {
            return Ok(None);
        }
        let (glued, s1) = self.cut_paste(h, k)?;
        let (collapsed, s2) = glued.contract_edge(h)?;
        Ok(Some((collapsed, s1 * s2)))
    }

    /// `X^{(P, P̄)}`: splits vertex `v` so that the half-edges in `part` stay
    /// at `v` and the rest move to a new last vertex, joined by a new edge.
    ///
    /// Returns the graph plus the new half-edges `(p, p̄)`, with `p` at `v`.
    /// The new arrow is chosen so collapsing the new edge gives back `self`
    /// with sign `+1`.
    pub fn expand_vertex(&self, v: Vertex, part: &[HalfEdge]) -> Result<(Self, HalfEdge, HalfEdge)> {
        if v >= self.n {
            return Err(precondition(format!("vertex {v} is not in the graph")));
        }
        let at_v = self.half_edges_at(v);
        if part.iter().any(|h| !at_v.contains(h)) {
            return Err(precondition("partition block contains a half-edge not at the vertex"));
        }
        let mut sorted = part.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() || sorted.len() == at_v.len() {
            return Err(precondition("partition block must be a proper nonempty subset"));
        }
        let w = self.n;
        let mut g = self.clone();
        g.n += 1;
        for &h in &at_v {
            if !sorted.contains(&h) {
                g.attach[h] = Some(w);
            }
        }
        let p = g.attach.len();
        let pb = p + 1;
        g.attach.extend([Some(v), Some(w)]);
        g.partner.extend([pb, p]);
        g.initial.extend([true, false]);
        // Collapse renumbers v to the front: the round trip has sign
        // sign(v, w, rest) * (-1)^v.
        let mut order = vec![v, w];
        order.extend((0..self.n).filter(|&u| u != v));
        let round_trip = permutation_sign(&order) * if v % 2 == 0 { 1 } else { -1 };
        if round_trip < 0 {
            g.flip_arrow(p);
        }
        Ok((g, p, pb))
    }

    /// `X^{Ph}`: expand `v` along `part`, then cut-and-paste the new half-edge
    /// `p` with `h`. `None` unless both sides of the partition have at least
    /// two half-edges.
    pub fn expand_and_glue(&self, v: Vertex, part: &[HalfEdge], h: HalfEdge) -> Result<Option<(Self, i32)>> {
        self.require_live(h)?;
        let (expanded, p, _) = self.expand_vertex(v, part)?;
        let block = part.len();
        let rest = self.valence(v) - block;
        if block < 2 || rest < 2 {
            return Ok(None);
        }
        let (glued, sign) = expanded.cut_paste(p, h)?;
        Ok(Some((glued, sign)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> OrientedGraph {
        OrientedGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn malformed_involution_is_rejected() {
        let err = HalfEdgeStructure::new(2, vec![Some(0), Some(1)], vec![0, 1]).unwrap_err();
        assert!(matches!(err, crate::Error::Structure(_)));
        let err = HalfEdgeStructure::new(2, vec![Some(0), Some(1), Some(1)], vec![1, 2, 0]).unwrap_err();
        assert!(matches!(err, crate::Error::Structure(_)));
        assert!(HalfEdgeStructure::new(3, vec![Some(0), Some(1)], vec![1, 0]).is_err());
    }

    #[test]
    fn contraction_sign_follows_vertex_numbers() {
        // 1 -> 2 contributes (-1)^2.
        let g = OrientedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0), (0, 1)]).unwrap();
        assert_eq!(g.contract_edge(0).unwrap().1, 1);
        // 2 -> 3 is the relabelling (2,3,1) of 1..3: even.
        assert_eq!(g.contract_edge(2).unwrap().1, 1);
        // 3 -> 1 is (3,1,2): even; reversing the arrow gives (1,3,2): odd.
        assert_eq!(g.contract_edge(4).unwrap().1, 1);
        let mut flipped = g.clone();
        flipped.flip_arrow(4);
        assert_eq!(flipped.contract_edge(4).unwrap().1, -1);
    }

    #[test]
    fn contracting_a_loop_is_an_error() {
        let g = OrientedGraph::from_edges(1, &[(0, 0)]).unwrap();
        assert!(matches!(g.contract_edge(0), Err(crate::Error::Precondition(_))));
    }

    #[test]
    fn cut_paste_with_partner_is_identity() {
        let g = theta();
        let (same, s) = g.cut_paste(0, 1).unwrap();
        assert_eq!(same, g);
        assert_eq!(s, 1);
        assert!(g.cut_paste(2, 2).is_err());
    }

    #[test]
    fn cut_paste_regroups_half_edges() {
        // Two disjoint edges 0->1 and 2->3 become 0->3 and 2->1.
        let g = OrientedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let (x, s) = g.cut_paste(0, 3).unwrap();
        assert_eq!(s, 1);
        let mut e = x.directed_edges();
        e.sort();
        assert_eq!(e, vec![(0, 3), (2, 1)]);
    }

    #[test]
    fn same_vertex_pair_contracts_to_zero() {
        let g = theta();
        assert!(g.contract_half_pair(0, 2).unwrap().is_none());
        assert!(g.contract_half_pair(0, 1).is_err());
    }

    #[test]
    fn expansion_guard_and_errors() {
        let g = OrientedGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(g.expand_and_glue(0, &[0], 1).unwrap().is_none());
        assert!(g.expand_and_glue(0, &[0, 2], 1).unwrap().is_some());
        assert!(g.expand_vertex(0, &[]).is_err());
        assert!(g.expand_vertex(0, &[0, 2, 4, 6]).is_err());
        assert!(g.expand_vertex(0, &[1]).is_err());
    }

    #[test]
    fn connectivity_and_bridges() {
        let t = theta();
        assert!(t.is_connected() && !t.has_bridge() && t.is_1pi());
        let two = t.disjoint_union(&t);
        assert!(!two.is_connected() && !two.is_1pi());
        let joined = OrientedGraph::from_edges(4, &[(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3), (1, 2)]).unwrap();
        assert!(joined.is_connected() && joined.has_bridge() && !joined.is_1pi());
        assert!(joined.is_bridge(12) && !joined.is_bridge(0));
    }

    #[test]
    fn permutation_sign_counts_inversions() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
        assert_eq!(permutation_sign(&[5, 2, 9]), -1);
    }
}
