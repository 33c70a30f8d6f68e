//! Brute-force oracles for enumeration, automorphisms and signs. Nothing
//! here goes through the refinement-based canonical form.

use std::collections::BTreeMap;

use graphcomplex::basis::{enumerate_basis, vertex_range};
use graphcomplex::graph::OrientedGraph;
use graphcomplex::{canonical_form, GraphClass};

type Edges = Vec<(usize, usize)>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn parity(p: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn undirected(edges: &[(usize, usize)], p: &[usize]) -> Edges {
    let mut e: Edges = edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
    e.sort();
    e
}

struct Brute {
    key: Edges,
    aut: u64,
    reversing: bool,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Minimal sorted edge list over all numberings, and the automorphisms.
fn brute(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Brute {
    let own = undirected(edges, &(0..n).collect::<Vec<_>>());
    let mut key: Option<Edges> = None;
    let mut vertex_auts = 0u64;
    let mut reversing = false;
    for p in perms {
        let e = undirected(edges, p);
        if key.as_ref().is_none_or(|k| e < *k) {
            key = Some(e.clone());
        }
        if e == own {
            vertex_auts += 1;
            // Reference orientation: every edge from its lower end.
            let flips = own.iter().filter(|&&(a, b)| p[a] > p[b]).count();
            if parity(p) * if flips % 2 == 0 { 1 } else { -1 } == -1 {
                reversing = true;
            }
        }
    }
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &e in &own {
        *mult.entry(e).or_default() += 1;
    }
    let aut = vertex_auts * mult.values().map(|&m| factorial(m)).product::<u64>();
    Brute { key: key.unwrap(), aut, reversing }
}

fn components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

/// Every loop-free multigraph on `n` labelled vertices with `e` edges and
/// all valences at least three, as edge multisets.
fn multigraphs(n: usize, e: usize) -> Vec<Edges> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(pairs: &[(usize, usize)], start: usize, left: usize, n: usize, cur: &mut Edges, out: &mut Vec<Edges>) {
        if left == 0 {
            let mut deg = vec![0; n];
            for &(a, b) in cur.iter() {
                deg[a] += 1;
                deg[b] += 1;
            }
            if deg.iter().all(|&d| d >= 3) {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..pairs.len() {
            cur.push(pairs[i]);
            rec(pairs, i, left - 1, n, cur, out);
            cur.pop();
        }
    }
    rec(&pairs, 0, e, n, &mut current, &mut out);
    out
}

/// Nonzero isomorphism classes with `n` vertices and loop degree `b`.
fn oracle_slice(n: usize, b: usize) -> BTreeMap<Edges, Brute> {
    let perms = permutations(n);
    let mut out = BTreeMap::new();
    for c in 1..=n {
        let Some(e) = (b + n).checked_sub(c) else { continue };
        for g in multigraphs(n, e) {
            if components(n, &g) != c {
                continue;
            }
            let r = brute(n, &g, &perms);
            if !r.reversing {
                out.entry(r.key.clone()).or_insert(r);
            }
        }
    }
    out
}

fn key_of(class: &GraphClass, perms: &[Vec<usize>]) -> Brute {
    let edges: Edges = class.edges().collect();
    brute(class.vertex_count(), &edges, perms)
}

#[test]
fn enumeration_matches_brute_force() {
    for b in 2..=4 {
        for n in vertex_range(b).filter(|&n| n <= 5) {
            let oracle = oracle_slice(n, b);
            let slice = enumerate_basis(n, b, false, false).unwrap();
            assert_eq!(slice.len(), oracle.len(), "b={b} v={n}");
            let perms = permutations(n);
            for class in &slice.classes {
                let k = key_of(class, &perms);
                let o = oracle.get(&k.key).unwrap_or_else(|| panic!("{class} not in oracle"));
                assert_eq!(class.aut_order(), o.aut, "{class}");
            }
        }
    }
}

#[test]
fn connected_counts_match_brute_force() {
    for b in 2..=4 {
        for n in vertex_range(b).filter(|&n| n <= 5) {
            let expected = oracle_slice(n, b).keys().filter(|k| components(n, k) == 1).count();
            assert_eq!(enumerate_basis(n, b, true, false).unwrap().len(), expected, "b={b} v={n}");
        }
    }
}

#[test]
fn reversing_flag_matches_brute_force() {
    // Includes zero classes, which the enumeration drops.
    let perms = permutations(4);
    for e in 6..=8 {
        for g in multigraphs(4, e) {
            let r = brute(4, &g, &perms);
            let c = canonical_form(&OrientedGraph::from_edges(4, &g).unwrap()).unwrap();
            assert_eq!(c.class.orientation_reversing(), r.reversing, "{g:?}");
            assert_eq!(c.class.aut_order(), r.aut, "{g:?}");
            assert_eq!(c.sign == 0, r.reversing);
        }
    }
}

/// Sign of a labelled graph relative to its class: any numbering carrying
/// it onto the representative, times the arrows it disagrees on.
fn brute_sign(g: &OrientedGraph, class: &GraphClass) -> i32 {
    let rep: Edges = class.edges().collect();
    let mut rep_sorted = rep.clone();
    rep_sorted.sort();
    let directed = g.directed_edges();
    for p in permutations(g.vertex_count()) {
        if undirected(&directed, &p) == rep_sorted {
            let flips = directed.iter().filter(|&&(a, b)| p[a] > p[b]).count();
            return parity(&p) * if flips % 2 == 0 { 1 } else { -1 };
        }
    }
    panic!("no isomorphism");
}

#[test]
fn signs_match_brute_force() {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for b in 2..=4 {
        for n in vertex_range(b) {
            for class in enumerate_basis(n, b, false, false).unwrap().classes {
                for _ in 0..5 {
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.shuffle(&mut rng);
                    let mut g = class.representative().relabel(&perm);
                    for (h, _) in class.representative().edges().collect::<Vec<_>>() {
                        if rng.gen_bool(0.5) {
                            g.flip_arrow(h);
                        }
                    }
                    let c = canonical_form(&g).unwrap();
                    assert_eq!(c.class, class);
                    assert_eq!(c.sign, brute_sign(&g, &class), "{class}");
                }
            }
        }
    }
}

#[test]
fn theta_group_by_exhaustive_labellings() {
    // All 2! numberings and 2^3 arrow choices of the theta graph.
    let mut signs = BTreeMap::new();
    for swap in [false, true] {
        for mask in 0..8u32 {
            let edges: Edges = (0..3)
                .map(|i| {
                    let (a, b) = if mask >> i & 1 == 1 { (1, 0) } else { (0, 1) };
                    if swap { (1 - a, 1 - b) } else { (a, b) }
                })
                .collect();
            let c = canonical_form(&OrientedGraph::from_edges(2, &edges).unwrap()).unwrap();
            assert_eq!(c.class.aut_order(), 12);
            *signs.entry(c.sign).or_insert(0) += 1;
        }
    }
    assert_eq!(signs, BTreeMap::from([(-1, 8), (1, 8)]));
}
