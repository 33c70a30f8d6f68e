//! Finite formal sums of graph classes with exact rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::canon::{canonical_form, GraphClass};
use crate::error::{precondition, Result};
use crate::graph::OrientedGraph;

pub type Coeff = BigRational;

pub fn rational(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical class and sign of a surgery output. Panics only if the graph
/// outgrows the one-byte canonical code.
pub(crate) fn classify(g: &OrientedGraph) -> Option<(GraphClass, i32)> {
    let c = canonical_form(g).expect("graph fits the canonical code");
    (c.sign != 0).then_some((c.class, c.sign))
}

fn fmt_coeff(q: &Coeff) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Element of the graph complex: no zero coefficients, no zero classes.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Chain {
    terms: BTreeMap<GraphClass, Coeff>,
}

impl Chain {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty graph, unit of the product.
    pub fn unit() -> Self {
        Self::from_class(GraphClass::empty())
    }

    /// `1 * class`, or zero for a zero class.
    pub fn from_class(class: GraphClass) -> Self {
        let mut c = Self::zero();
        c.add_term(class, rational(1));
        c
    }

    /// `coeff * (g, o)` in terms of canonical classes.
    pub fn normalize(g: &OrientedGraph, coeff: Coeff) -> Result<Self> {
        let canon = canonical_form(g)?;
        let mut c = Self::zero();
        if canon.sign != 0 {
            c.add_term(canon.class, coeff * rational(canon.sign as i64));
        }
        Ok(c)
    }

    pub fn of(g: &OrientedGraph) -> Result<Self> {
        Self::normalize(g, rational(1))
    }

    pub fn add_term(&mut self, class: GraphClass, coeff: Coeff) {
        if coeff.is_zero() || class.orientation_reversing() {
            return;
        }
        match self.terms.entry(class) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += q * other`.
    pub fn add_scaled(&mut self, q: &Coeff, other: &Chain) {
        for (class, c) in &other.terms {
            self.add_term(class.clone(), q * c);
        }
    }

    pub fn scale(&self, q: &Coeff) -> Chain {
        if q.is_zero() {
            return Chain::zero();
        }
        Chain { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * q)).collect() }
    }

    pub fn coefficient(&self, class: &GraphClass) -> Coeff {
        self.terms.get(class).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GraphClass, &Coeff)> {
        self.terms.iter()
    }

    pub fn classes(&self) -> impl Iterator<Item = &GraphClass> {
        self.terms.keys()
    }

    /// Every term has the given vertex count (vacuous for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(GraphClass::vertex_count);
        match it.next() {
            None => true,
            Some(v) => it.all(|w| w == v),
        }
    }

    /// Vertex count of a nonzero homogeneous chain.
    pub fn degree(&self) -> Result<usize> {
        let v = self.terms.keys().next().map(GraphClass::vertex_count).ok_or_else(|| precondition("zero chain has no degree"))?;
        if !self.is_homogeneous() {
            return Err(precondition("chain mixes vertex counts"));
        }
        Ok(v)
    }

    /// Applies a linear map given on classes by integer-coefficient outputs.
    pub(crate) fn map_linear(&self, f: impl Fn(&GraphClass) -> Chain) -> Chain {
        let mut out = Chain::zero();
        for (class, q) in &self.terms {
            out.add_scaled(q, &f(class));
        }
        out
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (class, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*[{}]", fmt_coeff(q), class.to_line())?;
        }
        Ok(())
    }
}

impl Add for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_scaled(&Coeff::one(), rhs);
        out
    }
}

impl Add for Chain {
    type Output = Chain;
    fn add(self, rhs: Chain) -> Chain {
        &self + &rhs
    }
}

impl Sub for &Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_scaled(&-Coeff::one(), rhs);
        out
    }
}

impl Sub for Chain {
    type Output = Chain;
    fn sub(self, rhs: Chain) -> Chain {
        &self - &rhs
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        self.scale(&-Coeff::one())
    }
}

impl Neg for Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        -&self
    }
}

impl FromIterator<(GraphClass, Coeff)> for Chain {
    fn from_iter<I: IntoIterator<Item = (GraphClass, Coeff)>>(iter: I) -> Self {
        let mut c = Chain::zero();
        for (class, q) in iter {
            c.add_term(class, q);
        }
        c
    }
}

/// Integer accumulator used inside operators; canonicalizes as it goes.
#[derive(Default)]
pub(crate) struct Accumulator {
    terms: HashMap<GraphClass, i64>,
    /// Surgery outputs seen, before cancellation and zero classes.
    pub raw: usize,
}

impl Accumulator {
    pub fn push(&mut self, g: &OrientedGraph, coeff: i64) {
        self.raw += 1;
        if let Some((class, sign)) = classify(g) {
            *self.terms.entry(class).or_insert(0) += sign as i64 * coeff;
        }
    }

    pub fn into_chain(self) -> Chain {
        self.terms.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k, rational(c))).collect()
    }
}

/// Element of the tensor square; keys are ordered pairs.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorChain {
    terms: BTreeMap<(GraphClass, GraphClass), Coeff>,
}

impl TensorChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: GraphClass, b: GraphClass, coeff: Coeff) {
        if coeff.is_zero() || a.orientation_reversing() || b.orientation_reversing() {
            return;
        }
        let key = (a, b);
        let entry = self.terms.entry(key.clone()).or_insert_with(Coeff::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, q: &Coeff, other: &TensorChain) {
        for ((a, b), c) in &other.terms {
            self.add_term(a.clone(), b.clone(), q * c);
        }
    }

    pub fn scale(&self, q: &Coeff) -> Self {
        let mut out = Self::zero();
        out.add_scaled(q, self);
        out
    }

    /// `a ⊗ b` for chains.
    pub fn tensor(a: &Chain, b: &Chain) -> Self {
        let mut out = Self::zero();
        for (x, p) in a.iter() {
            for (y, q) in b.iter() {
                out.add_term(x.clone(), y.clone(), p * q);
            }
        }
        out
    }

    pub fn coefficient(&self, a: &GraphClass, b: &GraphClass) -> Coeff {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(GraphClass, GraphClass), &Coeff)> {
        self.terms.iter()
    }

    /// The graded swap `a ⊗ b -> (-1)^{ab} b ⊗ a`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            let s = if a.vertex_count() * b.vertex_count() % 2 == 0 { 1 } else { -1 };
            out.add_term(b.clone(), a.clone(), c * rational(s));
        }
        out
    }

    pub fn map_linear(&self, f: impl Fn(&GraphClass, &GraphClass) -> TensorChain) -> TensorChain {
        let mut out = TensorChain::zero();
        for ((a, b), q) in &self.terms {
            out.add_scaled(q, &f(a, b));
        }
        out
    }
}

impl fmt::Debug for TensorChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TensorChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((a, b), q)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*[{}](x)[{}]", fmt_coeff(q), a.to_line(), b.to_line())?;
        }
        Ok(())
    }
}

impl Add for &TensorChain {
    type Output = TensorChain;
    fn add(self, rhs: &TensorChain) -> TensorChain {
        let mut out = self.clone();
        out.add_scaled(&Coeff::one(), rhs);
        out
    }
}

impl Sub for &TensorChain {
    type Output = TensorChain;
    fn sub(self, rhs: &TensorChain) -> TensorChain {
        let mut out = self.clone();
        out.add_scaled(&-Coeff::one(), rhs);
        out
    }
}

#[derive(Default)]
pub(crate) struct TensorAccumulator {
    terms: HashMap<(GraphClass, GraphClass), i64>,
}

impl TensorAccumulator {
    pub fn push_classes(&mut self, a: GraphClass, b: GraphClass, coeff: i64) {
        if !a.orientation_reversing() && !b.orientation_reversing() {
            *self.terms.entry((a, b)).or_insert(0) += coeff;
        }
    }

    pub fn into_tensor(self) -> TensorChain {
        let mut out = TensorChain::zero();
        for ((a, b), c) in self.terms {
            out.add_term(a, b, rational(c));
        }
        out
    }
}

/// Element of the graded symmetric square. `A ⊙ B = (-1)^{ab} B ⊙ A`,
/// stored under the ordered key `(min, max)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SymChain {
    terms: BTreeMap<(GraphClass, GraphClass), Coeff>,
}

impl SymChain {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Adds `coeff * (a ⊙ b)`.
    pub fn add_term(&mut self, a: GraphClass, b: GraphClass, coeff: Coeff) {
        if coeff.is_zero() || a.orientation_reversing() || b.orientation_reversing() {
            return;
        }
        let odd = a.vertex_count() * b.vertex_count() % 2 == 1;
        if a == b && odd {
            return;
        }
        let (key, coeff) = if a <= b { ((a, b), coeff) } else { ((b, a), if odd { -coeff } else { coeff }) };
        let entry = self.terms.entry(key.clone()).or_insert_with(Coeff::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, q: &Coeff, other: &SymChain) {
        for ((a, b), c) in &other.terms {
            self.add_term(a.clone(), b.clone(), q * c);
        }
    }

    pub fn coefficient(&self, a: &GraphClass, b: &GraphClass) -> Coeff {
        let mut probe = SymChain::zero();
        probe.add_term(a.clone(), b.clone(), rational(1));
        match probe.terms.into_iter().next() {
            None => Coeff::zero(),
            Some((key, s)) => self.terms.get(&key).map(|c| c * s).unwrap_or_else(Coeff::zero),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(GraphClass, GraphClass), &Coeff)> {
        self.terms.iter()
    }

    /// `A ⊙ B -> A ⊗ B + (-1)^{ab} B ⊗ A`.
    pub fn to_tensor(&self) -> TensorChain {
        let mut out = TensorChain::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
            let s = if a.vertex_count() * b.vertex_count() % 2 == 0 { 1 } else { -1 };
            out.add_term(b.clone(), a.clone(), c * rational(s));
        }
        out
    }

    /// Inverse of [`SymChain::to_tensor`] on swap-invariant tensors.
    pub fn from_tensor(t: &TensorChain) -> Result<SymChain> {
        if &t.swap() != t {
            return Err(precondition("tensor is not symmetric under the graded swap"));
        }
        let mut out = SymChain::zero();
        for ((a, b), c) in t.iter() {
            match a.cmp(b) {
                std::cmp::Ordering::Less => out.add_term(a.clone(), b.clone(), c.clone()),
                std::cmp::Ordering::Equal => out.add_term(a.clone(), b.clone(), c / rational(2)),
                std::cmp::Ordering::Greater => {}
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for SymChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SymChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((a, b), q)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*[{}](.)[{}]", fmt_coeff(q), a.to_line(), b.to_line())?;
        }
        Ok(())
    }
}

impl Add for &SymChain {
    type Output = SymChain;
    fn add(self, rhs: &SymChain) -> SymChain {
        let mut out = self.clone();
        out.add_scaled(&Coeff::one(), rhs);
        out
    }
}

impl Sub for &SymChain {
    type Output = SymChain;
    fn sub(self, rhs: &SymChain) -> SymChain {
        let mut out = self.clone();
        out.add_scaled(&-Coeff::one(), rhs);
        out
    }
}

/// Largest absolute numerator, for reports.
pub fn max_abs_coefficient<'a>(coeffs: impl Iterator<Item = &'a Coeff>) -> Coeff {
    coeffs.map(|c| c.abs()).max().unwrap_or_else(Coeff::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(n: usize, e: &[(usize, usize)]) -> GraphClass {
        canonical_form(&OrientedGraph::from_edges(n, e).unwrap()).unwrap().class
    }

    fn theta() -> GraphClass {
        class(2, &[(0, 1), (0, 1), (0, 1)])
    }

    fn graph_c() -> GraphClass {
        class(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2)])
    }

    #[test]
    fn normalize_tracks_signs_and_zeros() {
        let t = OrientedGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(Chain::of(&t).unwrap(), Chain::from_class(theta()));
        assert_eq!(Chain::of(&t.relabel(&[1, 0])).unwrap(), -Chain::from_class(theta()));
        let looped = OrientedGraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        assert!(Chain::of(&looped).unwrap().is_zero());
    }

    #[test]
    fn linear_arithmetic() {
        let c = Chain::from_class(graph_c());
        assert!((&c + &c.scale(&rational(-1))).is_zero());
        let d = &c.scale(&rational(6)) - &c.scale(&rational(2));
        assert_eq!(d.coefficient(&graph_c()), rational(4));
        let t = Chain::from_class(theta()).scale(&rational(2));
        assert_eq!(t.scale(&ratio(1, 2)), Chain::from_class(theta()));
        assert_eq!(d.coefficient(&theta()), rational(0));
    }

    #[test]
    fn symmetric_square_signs() {
        let (t, c) = (theta(), graph_c());
        let mut s = SymChain::zero();
        s.add_term(c.clone(), c.clone(), rational(1));
        assert!(s.is_zero());
        s.add_term(t.clone(), t.clone(), rational(1));
        assert_eq!(s.to_tensor().coefficient(&t, &t), rational(2));
        let mut u = SymChain::zero();
        u.add_term(t.clone(), c.clone(), rational(3));
        assert_eq!(u.coefficient(&c, &t), rational(3));
        let round = SymChain::from_tensor(&(&s.to_tensor() + &u.to_tensor())).unwrap();
        assert_eq!(round, &s + &u);
        let mut lopsided = TensorChain::zero();
        lopsided.add_term(t, c, rational(1));
        assert!(SymChain::from_tensor(&lopsided).is_err());
    }
}
