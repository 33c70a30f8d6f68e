//! The identity suite: every chain-level identity of the complex, checked
//! exhaustively on small slices and on seeded random samples above them.
//!
//! Cases are listed per identity in a fixed order, checked concurrently and
//! reported in list order, so a configuration always yields the same report.
//! Each case records its inputs as graph lines with canonical codes, which
//! is enough to replay it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{enumerate_basis_with, enumerate_edge_slice, vertex_range, Caps};
use crate::canon::{canonical_form, GraphClass};
use crate::chain::{rational, Chain, Coeff};
use crate::error::{Error, Result};
use crate::format::parse_graph;
use crate::homology::{is_boundary_with, kernel_basis};
use crate::operators::algebra::{bilinear, bracket_classes, product_classes};
use crate::operators::cobracket::separated_factors;
use crate::operators::{self as ops, parity, Operator};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Loop degrees `2..=exhaustive_loop` are checked on every basis tuple.
    pub exhaustive_loop: usize,
    /// Samples are drawn from loop degrees up to this.
    pub sample_loop: usize,
    pub samples: usize,
    pub seed: u64,
    /// Restrict every pool to 1PI graphs.
    pub one_pi: bool,
    pub only: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { exhaustive_loop: 3, sample_loop: 4, samples: 200, seed: 0, one_pi: false, only: None }
    }
}

/// One term of a recorded input chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: String,
    /// Hex of the canonical code.
    pub code: String,
    pub graph: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub identity: String,
    pub inputs: Vec<Vec<Term>>,
    #[serde(default)]
    pub residual_terms: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// Passes iff every case has zero residual.
    Identity,
    /// Passes iff some case has nonzero residual.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub identity: String,
    pub statement: String,
    pub kind: Kind,
    pub exhaustive_cases: usize,
    pub sampled_cases: usize,
    pub failures: usize,
    pub passed: bool,
    /// Failing cases for identities, witnesses for searches (at most five).
    pub cases: Vec<Case>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub config: SuiteConfig,
    pub passed: bool,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn result(&self, identity: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.identity == identity)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!(
                "{} {:<24} exhaustive={} sampled={} failures={}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.identity,
                r.exhaustive_cases,
                r.sampled_cases,
                r.failures
            ));
            for c in &r.cases {
                let label = if r.kind == Kind::Search { "witness" } else { "counterexample" };
                out.push_str(&format!("    {label} residual_terms={}", c.residual_terms));
                if let Some(d) = &c.detail {
                    out.push_str(&format!(" ({d})"));
                }
                out.push('\n');
                for (i, input) in c.inputs.iter().enumerate() {
                    let terms: Vec<String> = input.iter().map(|t| format!("{}*[{}]", t.coeff, t.graph)).collect();
                    out.push_str(&format!("      input {}: {}\n", i + 1, terms.join(" + ")));
                }
            }
        }
        out.push_str(if self.passed { "all identities passed\n" } else { "some identities FAILED\n" });
        out
    }
}

pub fn record(c: &Chain) -> Vec<Term> {
    c.iter()
        .map(|(class, q)| Term {
            coeff: q.to_string(),
            code: class.code().iter().map(|b| format!("{b:02x}")).collect(),
            graph: class.to_line(),
        })
        .collect()
}

/// Rebuilds a recorded chain. The graph line is authoritative; the code is
/// checked against it.
pub fn restore(terms: &[Term]) -> Result<Chain> {
    let mut out = Chain::zero();
    for t in terms {
        let q: Coeff = t.coeff.parse().map_err(|_| Error::Parse { line: 0, message: format!("bad coefficient {}", t.coeff) })?;
        let g = parse_graph(&t.graph)?;
        let c = Chain::normalize(&g, q)?;
        if let Some((class, _)) = c.iter().next() {
            let hex: String = class.code().iter().map(|b| format!("{b:02x}")).collect();
            if !t.code.is_empty() && hex != t.code {
                return Err(Error::Parse { line: 0, message: format!("code {} does not match graph {}", t.code, t.graph) });
            }
        }
        out = &out + &c;
    }
    Ok(out)
}

/// Basis classes the case generators draw from.
pub struct Pools {
    /// Loop degrees `2..=exhaustive_loop`, full complex.
    pub small: Vec<GraphClass>,
    /// Loop degrees `2..=sample_loop`, full complex.
    pub large: Vec<GraphClass>,
}

impl Pools {
    pub fn new(cfg: &SuiteConfig) -> Result<Self> {
        let caps = Caps { max_loop: cfg.sample_loop.max(cfg.exhaustive_loop), ..Caps::default() };
        let mut small = Vec::new();
        let mut large = Vec::new();
        for b in 2..=cfg.sample_loop.max(cfg.exhaustive_loop) {
            for v in vertex_range(b) {
                for c in enumerate_basis_with(v, b, false, cfg.one_pi, &caps)?.classes {
                    if b <= cfg.exhaustive_loop {
                        small.push(c.clone());
                    }
                    if b <= cfg.sample_loop {
                        large.push(c);
                    }
                }
            }
        }
        Ok(Self { small, large })
    }
}

type Check = fn(&[Chain]) -> Result<(usize, Option<String>)>;
type Generator = fn(&Pools, &SuiteConfig, &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)>;

pub struct Identity {
    pub name: &'static str,
    pub statement: &'static str,
    pub kind: Kind,
    check: Check,
    cases: Generator,
}

impl Identity {
    /// Residual term count for one case, and a note.
    pub fn check(&self, inputs: &[Chain]) -> Result<(usize, Option<String>)> {
        (self.check)(inputs)
    }
}

fn chain(c: &GraphClass) -> Chain {
    Chain::from_class(c.clone())
}

fn nonzero(c: &Chain) -> Result<(usize, Option<String>)> {
    Ok((c.len(), None))
}

fn sign(n: usize) -> Coeff {
    rational(parity(n))
}

/// Pair identities are checked per pair of terms, so the parity of each
/// degree is well defined.
fn per_pair(x: &Chain, y: &Chain, f: impl Fn(&GraphClass, &GraphClass) -> Chain) -> Chain {
    bilinear(x, y, f)
}

fn per_triple(x: &Chain, y: &Chain, z: &Chain, f: impl Fn(&GraphClass, &GraphClass, &GraphClass) -> Chain) -> Chain {
    let mut out = Chain::zero();
    for (a, p) in x.iter() {
        for (b, q) in y.iter() {
            for (c, r) in z.iter() {
                out.add_scaled(&(p * q * r), &f(a, b, c));
            }
        }
    }
    out
}

// ----- case generators -----

/// A random labelled copy of `c`: shuffled vertices, random arrows and a
/// small nonzero coefficient.
fn random_copy(c: &GraphClass, rng: &mut ChaCha8Rng) -> Chain {
    let g = c.representative();
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(rng);
    let mut h = g.relabel(&perm);
    for (a, _) in g.edges().collect::<Vec<_>>() {
        if rng.gen_bool(0.5) {
            h.flip_arrow(a);
        }
    }
    let mut q: i64 = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        q = -q;
    }
    Chain::normalize(&h, rational(q)).expect("relabelled basis graph")
}

/// Random chain: up to three random copies of classes from one slice.
fn random_chain(pool: &[GraphClass], rng: &mut ChaCha8Rng) -> Chain {
    loop {
        let first = pool.choose(rng).expect("nonempty pool");
        let same: Vec<&GraphClass> = pool
            .iter()
            .filter(|c| c.vertex_count() == first.vertex_count() && c.loop_degree() == first.loop_degree())
            .collect();
        let mut out = random_copy(first, rng);
        for _ in 0..rng.gen_range(0..=2) {
            out = &out + &random_copy(same.choose(rng).expect("nonempty"), rng);
        }
        if !out.is_zero() {
            return out;
        }
    }
}

fn exhaustive(pool: &[GraphClass], arity: usize) -> Vec<Vec<Chain>> {
    let mut out: Vec<Vec<Chain>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out.into_iter().flat_map(|t| pool.iter().map(move |c| [t.clone(), vec![chain(c)]].concat())).collect();
    }
    out
}

/// Random tuples of monomials (arity above one) or chains (arity one) whose
/// total edge count stays within `budget`.
fn sampled(pool: &[GraphClass], arity: usize, n: usize, budget: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Chain>> {
    let pool: Vec<GraphClass> = pool.iter().filter(|c| c.edge_count() <= budget).cloned().collect();
    if pool.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        if arity == 1 {
            out.push(vec![random_chain(&pool, rng)]);
            continue;
        }
        let picks: Vec<&GraphClass> = (0..arity).map(|_| pool.choose(rng).expect("nonempty")).collect();
        if picks.iter().map(|c| c.edge_count()).sum::<usize>() <= budget {
            out.push(picks.into_iter().map(|c| random_copy(c, rng)).collect());
        }
    }
    out
}

fn filtered(pool: &[GraphClass], keep: fn(&GraphClass) -> bool) -> Vec<GraphClass> {
    pool.iter().filter(|c| keep(c)).cloned().collect()
}

fn any_class(_: &GraphClass) -> bool {
    true
}

fn connected(c: &GraphClass) -> bool {
    c.is_connected()
}

fn one_pi(c: &GraphClass) -> bool {
    c.is_1pi()
}

/// Exhaustive on the small pool, `samples` draws from the large one.
fn standard(p: &Pools, cfg: &SuiteConfig, rng: &mut ChaCha8Rng, arity: usize, keep: fn(&GraphClass) -> bool, budget: usize) -> (Vec<Vec<Chain>>, Vec<Vec<Chain>>) {
    let small = filtered(&p.small, keep);
    let mut large = filtered(&p.large, keep);
    if arity == 1 {
        // Single chains are sampled from the top loop degree only.
        large.retain(|c| c.loop_degree() == cfg.sample_loop);
    }
    (exhaustive(&small, arity), sampled(&large, arity, cfg.samples, budget, rng))
}

fn gen_single(p: &Pools, c: &SuiteConfig, r: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    Ok(standard(p, c, r, 1, any_class, usize::MAX))
}

fn gen_single_connected(p: &Pools, c: &SuiteConfig, r: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    Ok(standard(p, c, r, 1, connected, usize::MAX))
}

/// Every connected class of the large pool, no samples.
fn gen_connected_all(p: &Pools, _: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    Ok((exhaustive(&filtered(&p.large, connected), 1), Vec::new()))
}

fn gen_single_one_pi(p: &Pools, _: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    Ok((exhaustive(&filtered(&p.large, one_pi), 1), Vec::new()))
}

fn gen_small_only(p: &Pools, _: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    Ok((exhaustive(&p.small, 1), Vec::new()))
}

fn gen_pair(p: &Pools, c: &SuiteConfig, r: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    Ok(standard(p, c, r, 2, any_class, 15))
}

fn gen_pair_one_pi(p: &Pools, c: &SuiteConfig, r: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    Ok(standard(p, c, r, 2, one_pi, 15))
}

fn gen_triple(p: &Pools, c: &SuiteConfig, r: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    Ok(standard(p, c, r, 3, any_class, 12))
}

/// Pairs `(X, Y)` from edge-graded slices with `Y` one vertex larger.
fn gen_adjoint(_: &Pools, cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    let top = cfg.sample_loop.max(cfg.exhaustive_loop);
    let caps = Caps { max_loop: top, ..Caps::default() };
    let mut out = Vec::new();
    for b in 2..=top {
        for v in vertex_range(b) {
            if !vertex_range(b).contains(&(v + 1)) {
                continue;
            }
            let lower = enumerate_edge_slice(v, b, &caps)?;
            let upper = enumerate_edge_slice(v + 1, b, &caps)?;
            for x in &lower.classes {
                for y in &upper.classes {
                    out.push(vec![chain(x), chain(y)]);
                }
            }
        }
    }
    Ok((out, Vec::new()))
}

/// `∂_E`-cycles: kernel bases of every full slice in the small pool (and,
/// for single cycles, the large one).
fn cycles(cfg: &SuiteConfig, max_loop: usize) -> Result<Vec<Chain>> {
    let mut out = Vec::new();
    for b in 2..=max_loop {
        for v in vertex_range(b) {
            let k = kernel_basis(Operator::E, b, v, false)?;
            out.extend(k.into_iter().filter(|z| !cfg.one_pi || z.classes().all(|c| c.is_1pi())));
        }
    }
    Ok(out)
}

fn gen_cycles(_: &Pools, cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    Ok((cycles(cfg, cfg.sample_loop.max(cfg.exhaustive_loop))?.into_iter().map(|z| vec![z]).collect(), Vec::new()))
}

fn gen_cycle_pairs(_: &Pools, cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    let zs = cycles(cfg, cfg.exhaustive_loop)?;
    let mut out = Vec::new();
    for a in &zs {
        for b in &zs {
            out.push(vec![a.clone(), b.clone()]);
        }
    }
    Ok((out, Vec::new()))
}

/// Connected graphs with a bridge and at most five vertices, up to loop
/// degree five.
pub fn bridged_classes() -> Result<Vec<GraphClass>> {
    let caps = Caps { max_loop: 5, ..Caps::default() };
    let mut out = Vec::new();
    for b in 2..=5 {
        for v in vertex_range(b).filter(|&v| v <= 5) {
            out.extend(enumerate_basis_with(v, b, true, false, &caps)?.classes.into_iter().filter(|c| c.has_bridge()));
        }
    }
    Ok(out)
}

fn gen_bridged(_: &Pools, _: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    let bridged = bridged_classes()?;
    Ok((exhaustive(&bridged, 2), Vec::new()))
}

// ----- checks -----

fn c_e_squared(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&ops::boundary_e(&ops::boundary_e(&i[0])))
}

fn c_h_squared(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&ops::boundary_h(&ops::boundary_h(&i[0])))
}

fn c_total_squared(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let d = |c: &Chain| &ops::boundary_e(c) + &ops::boundary_h(c);
    nonzero(&d(&d(&i[0])))
}

fn c_anticommute(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let x = &i[0];
    nonzero(&(&ops::boundary_e(&ops::boundary_h(x)) + &ops::boundary_h(&ops::boundary_e(x))))
}

/// Number of quadruples `h, k, r, s` with `(X_hk)_rs ≠ -(X_rs)_hk`.
fn c_orientation(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let mut bad = 0;
    for x in i[0].classes() {
        let g = x.representative();
        let slots: Vec<usize> = g.live_half_edges().collect();
        let twice = |a: usize, b: usize, c: usize, d: usize| -> Result<Option<Chain>> {
            let Some((w, s1)) = g.contract_half_pair(a, b)? else { return Ok(Some(Chain::zero())) };
            if w.partner(c) == d {
                return Ok(None);
            }
            Ok(Some(match w.contract_half_pair(c, d)? {
                None => Chain::zero(),
                Some((w2, s2)) => Chain::normalize(&w2, rational((s1 * s2) as i64))?,
            }))
        };
        for &h in &slots {
            for &k in &slots {
                if h == k || g.partner(h) == k {
                    continue;
                }
                for &r in &slots {
                    for &s in &slots {
                        if r == s || g.partner(r) == s || [h, k].contains(&r) || [h, k].contains(&s) {
                            continue;
                        }
                        if let (Some(a), Some(b)) = (twice(h, k, r, s)?, twice(r, s, h, k)?) {
                            if !(&a + &b).is_zero() {
                                bad += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((bad, None))
}

fn c_derivation(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&per_pair(&i[0], &i[1], |a, b| {
        let (x, y) = (chain(a), chain(b));
        let lhs = ops::boundary_e(&product_classes(a, b));
        let mut rhs = ops::product(&ops::boundary_e(&x), &y);
        rhs.add_scaled(&sign(a.vertex_count()), &ops::product(&x, &ops::boundary_e(&y)));
        &lhs - &rhs
    }))
}

fn c_commutativity(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&per_pair(&i[0], &i[1], |a, b| {
        &product_classes(a, b) - &product_classes(b, a).scale(&sign(a.vertex_count() * b.vertex_count()))
    }))
}

fn c_bracket_defect(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&(&ops::bracket(&i[0], &i[1]) - &ops::bracket_defect(&i[0], &i[1])))
}

fn c_bracket_symmetry(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&per_pair(&i[0], &i[1], |a, b| {
        &bracket_classes(a, b) - &bracket_classes(b, a).scale(&sign(a.vertex_count() * b.vertex_count()))
    }))
}

/// `[[X,Y],Z] + (-1)^{z(x+y)}[[Z,X],Y] + (-1)^{x(y+z)}[[Y,Z],X]`.
fn c_jacobi(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&per_triple(&i[0], &i[1], &i[2], |a, b, c| {
        let (x, y, z) = (a.vertex_count(), b.vertex_count(), c.vertex_count());
        let (ca, cb, cc) = (chain(a), chain(b), chain(c));
        let mut r = ops::bracket(&bracket_classes(a, b), &cc);
        r.add_scaled(&sign(z * (x + y)), &ops::bracket(&bracket_classes(c, a), &cb));
        r.add_scaled(&sign(x * (y + z)), &ops::bracket(&bracket_classes(b, c), &ca));
        r
    }))
}

fn c_gerstenhaber(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&ops::check_gerstenhaber(&i[0], &i[1], &i[2]))
}

fn c_bv(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&ops::check_bv(&i[0], &i[1], &i[2]))
}

/// `∂_E[X,Y] + [∂_E X,Y] + (-1)^x [X,∂_E Y]`.
fn c_descent(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&per_pair(&i[0], &i[1], |a, b| {
        let (x, y) = (chain(a), chain(b));
        let mut r = ops::boundary_e(&bracket_classes(a, b));
        r = &r + &ops::bracket(&ops::boundary_e(&x), &y);
        r.add_scaled(&sign(a.vertex_count()), &ops::bracket(&x, &ops::boundary_e(&y)));
        r
    }))
}

fn c_coderivation(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let x = &i[0];
    let r = &ops::coproduct(&ops::boundary_e(x)) - &ops::tensor_boundary_e(&ops::coproduct(x));
    Ok((r.len(), None))
}

fn c_theta_separating(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let r = &ops::cobracket(&i[0]) - &ops::cobracket_separating(&i[0])?;
    Ok((r.len(), None))
}

fn c_theta_partition(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let r = &ops::cobracket(&i[0]) - &ops::cobracket_partition(&i[0]);
    Ok((r.len(), None))
}

/// `θ(XY) = θ(X)Δ(Y) + (-1)^{xy} θ(Y)Δ(X)` in the tensor algebra.
fn c_theta_product(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let mut bad = 0;
    for (a, p) in i[0].iter() {
        for (b, q) in i[1].iter() {
            let (x, y) = (chain(a), chain(b));
            let lhs = ops::cobracket(&product_classes(a, b)).to_tensor();
            let mut rhs = ops::tensor_product(&ops::cobracket(&x).to_tensor(), &ops::coproduct(&y));
            rhs.add_scaled(
                &sign(a.vertex_count() * b.vertex_count()),
                &ops::tensor_product(&ops::cobracket(&y).to_tensor(), &ops::coproduct(&x)),
            );
            let r = (&lhs - &rhs).scale(&(p * q));
            bad += r.len();
        }
    }
    Ok((bad, None))
}

fn c_mu_theta(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&(&ops::mu_theta(&i[0])? - &ops::product_cobracket(&i[0])))
}

fn c_delta_forms(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&(&ops::delta_h(&i[0]) - &ops::delta_h_halved(&i[0])))
}

fn c_delta_squared(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&ops::delta_h(&ops::delta_h(&i[0])))
}

fn c_adjoint(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let lhs = ops::pairing(&ops::delta_h(&i[0]), &i[1]);
    let rhs = ops::pairing(&i[0], &ops::boundary_h(&i[1]));
    Ok((usize::from(lhs != rhs), Some(format!("<dX,Y> = {lhs}, <X,dY> = {rhs}"))))
}

fn c_compatibility(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&ops::check_compatibility(&i[0], &i[1])?)
}

/// Terms of `[X,Y]` that are not 1PI.
fn c_closure_bracket(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let b = ops::bracket(&i[0], &i[1]);
    Ok((b.classes().filter(|c| !c.is_1pi()).count(), None))
}

/// Bridged factors of `θ(X)` and bridged components of `μθ(X)`.
fn c_closure_cobracket(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let mut bad = 0;
    for x in i[0].classes() {
        bad += separated_factors(x).iter().filter(|c| c.has_bridge()).count();
    }
    for ((a, b), _) in ops::cobracket(&i[0]).iter() {
        bad += usize::from(a.has_bridge()) + usize::from(b.has_bridge());
    }
    for c in ops::mu_theta(&i[0])?.classes() {
        let g = c.representative();
        bad += g.components().iter().filter(|comp| g.restrict(comp).0.has_bridge()).count();
    }
    Ok((bad, None))
}

fn c_mu1(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&per_pair(&i[0], &i[1], |a, b| {
        let (x, y) = (chain(a), chain(b));
        let m = ops::mu1(&x, &y);
        let mut r = ops::boundary_e(&m);
        r.add_scaled(&rational(-1), &ops::mu1(&ops::boundary_e(&x), &y));
        r.add_scaled(&-sign(a.vertex_count()), &ops::mu1(&x, &ops::boundary_e(&y)));
        &r - &bracket_classes(a, b)
    }))
}

fn c_delta1(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let x = &i[0];
    let lhs = &ops::sym_boundary_e(&ops::delta1(x)) - &ops::delta1(&ops::boundary_e(x));
    Ok(((&lhs - &ops::cobracket(x)).len(), None))
}

fn c_alpha(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let x = &i[0];
    let lhs = &ops::boundary_e(&ops::alpha(x)) - &ops::alpha(&ops::boundary_e(x));
    nonzero(&(&lhs - &ops::boundary_h(x)))
}

/// Solves `∂_E p = c`. `Some(true)` when a preimage exists, `None` when the
/// slice is beyond the default caps.
fn solvable(c: &Chain) -> Result<Option<bool>> {
    match is_boundary_with(c, &Caps::default()) {
        Ok(p) => Ok(Some(p.is_some())),
        Err(Error::Capacity(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// A cycle `z`: `∂_H z = ∂_E α(z)` and `θ(z) = ∂_E Δ₁(z)`, and `∂_H z`
/// solves as a boundary where the slice is enumerable.
fn c_trivial_cycle(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let z = &i[0];
    if !ops::boundary_e(z).is_zero() {
        return Ok((1, Some("input is not a cycle".into())));
    }
    let dh = ops::boundary_h(z);
    let mut bad = (&dh - &ops::boundary_e(&ops::alpha(z))).len();
    bad += (&ops::cobracket(z) - &ops::sym_boundary_e(&ops::delta1(z))).len();
    let solved = solvable(&dh)?;
    if solved == Some(false) {
        bad += 1;
    }
    Ok((bad, Some(format!("is_boundary(d_H z): {}", describe(solved)))))
}

/// Cycles `z, z'`: `[z, z'] = ∂_E μ₁(z ⊗ z')`, and is_boundary agrees.
fn c_trivial_bracket(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let (z, w) = (&i[0], &i[1]);
    if !ops::boundary_e(z).is_zero() || !ops::boundary_e(w).is_zero() {
        return Ok((1, Some("inputs are not cycles".into())));
    }
    let br = ops::bracket(z, w);
    let mut bad = (&br - &ops::boundary_e(&ops::mu1(z, w))).len();
    let solved = solvable(&br)?;
    if solved == Some(false) {
        bad += 1;
    }
    Ok((bad, Some(format!("is_boundary([z,w]): {}", describe(solved)))))
}

fn describe(s: Option<bool>) -> &'static str {
    match s {
        Some(true) => "solved",
        Some(false) => "no preimage",
        None => "slice beyond caps, certified by witness",
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

fn binomial(n: u64, k: u64) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `|Aut(X^n)| = n!|Aut X|^n`, `|Aut X^{p+q}| = C(p+q,p)|Aut X^p||Aut X^q|`
/// and `Δ(X^n) = Σ C(n,p) X^p ⊗ X^{n-p}` for even `X`, all for `n <= 3`.
fn c_aut(i: &[Chain]) -> Result<(usize, Option<String>)> {
    let mut bad = 0;
    for x in i[0].classes() {
        let g = x.representative();
        let mut powers = vec![crate::graph::OrientedGraph::empty()];
        for n in 1..=3 {
            powers.push(powers[n - 1].disjoint_union(&g));
        }
        let aut: Vec<BigInt> = powers.iter().map(|p| canonical_form(p).map(|c| BigInt::from(c.class.aut_order()))).collect::<Result<_>>()?;
        let base = BigInt::from(x.aut_order());
        for n in 1..=3u64 {
            if aut[n as usize] != factorial(n) * num_traits::pow(base.clone(), n as usize) {
                bad += 1;
            }
            for p in 0..=n {
                if aut[n as usize] != binomial(n, p) * &aut[p as usize] * &aut[(n - p) as usize] {
                    bad += 1;
                }
            }
        }
        if x.vertex_count() % 2 == 0 {
            let mut chains = vec![Chain::unit()];
            for n in 1..=3 {
                chains.push(ops::product(&chains[n - 1], &chain(x)));
            }
            for n in 1..=3usize {
                let mut expected = crate::chain::TensorChain::zero();
                for p in 0..=n {
                    let t = crate::chain::TensorChain::tensor(&chains[p], &chains[n - p]);
                    expected.add_scaled(&Coeff::from_integer(binomial(n as u64, p as u64)), &t);
                }
                bad += (&ops::coproduct(&chains[n]) - &expected).len();
            }
        }
    }
    Ok((bad, None))
}

/// Nonzero compatibility residual on a bridged pair.
fn c_bridged(i: &[Chain]) -> Result<(usize, Option<String>)> {
    nonzero(&ops::check_compatibility(&i[0], &i[1])?)
}

pub fn registry() -> Vec<Identity> {
    const L: Kind = Kind::Identity;
    const S: Kind = Kind::Search;
    let id = |name, statement, kind, check: Check, cases: Generator| Identity { name, statement, kind, check, cases };
    vec![
        id("boundary_e_squared", "d_E d_E = 0", L, c_e_squared, gen_single),
        id("boundary_h_squared", "d_H d_H = 0", L, c_h_squared, gen_single),
        id("total_squared", "(d_E + d_H)^2 = 0", L, c_total_squared, gen_single),
        id("anticommutation", "d_E d_H + d_H d_E = 0", L, c_anticommute, gen_single),
        id("surgery_order", "(X_hk)_rs = -(X_rs)_hk", L, c_orientation, gen_small_only),
        id("derivation", "d_E(XY) = d_E(X)Y + (-1)^x X d_E(Y)", L, c_derivation, gen_pair),
        id("product_commutativity", "XY = (-1)^{xy} YX", L, c_commutativity, gen_pair),
        id("bracket_defect", "[X,Y] = d_H(XY) - d_H(X)Y - (-1)^x X d_H(Y)", L, c_bracket_defect, gen_pair),
        id("bracket_symmetry", "[X,Y] = (-1)^{xy} [Y,X]", L, c_bracket_symmetry, gen_pair),
        id("jacobi", "[[X,Y],Z] + (-1)^{z(x+y)}[[Z,X],Y] + (-1)^{x(y+z)}[[Y,Z],X] = 0", L, c_jacobi, gen_triple),
        id("gerstenhaber", "[X,YZ] = [X,Y]Z + (-1)^{zy}[X,Z]Y", L, c_gerstenhaber, gen_triple),
        id("bv", "seven-term identity for d_H", L, c_bv, gen_triple),
        id("descent", "d_E[X,Y] = -[d_E X,Y] - (-1)^x [X,d_E Y]", L, c_descent, gen_pair),
        id("coderivation", "Delta d_E = (d_E (x) 1 + 1 (x) d_E) Delta", L, c_coderivation, gen_single),
        id("theta_separating", "theta = separating-pair sum on connected graphs", L, c_theta_separating, gen_connected_all),
        id("theta_partition", "theta = ordered-partition sum", L, c_theta_partition, gen_single),
        id("theta_product", "theta(XY) = theta(X)Delta(Y) + (-1)^{xy} theta(Y)Delta(X), bridgeless X, Y", L, c_theta_product, gen_pair_one_pi),
        id("mu_theta", "mu theta = separated contractions on connected graphs", L, c_mu_theta, gen_single_connected),
        id("delta_h_forms", "delta_H integral form = halved sum", L, c_delta_forms, gen_single),
        id("delta_h_squared", "delta_H delta_H = 0", L, c_delta_squared, gen_single),
        id("pairing_adjoint", "<delta_H X, Y> = <X, d_H Y>", L, c_adjoint, gen_adjoint),
        id("compatibility", "mu theta [X,Y] + [mu theta X,Y] + (-1)^x [X,mu theta Y] = 0, 1PI", L, c_compatibility, gen_pair_one_pi),
        id("closure_bracket", "[X,Y] is 1PI for 1PI X, Y", L, c_closure_bracket, gen_pair_one_pi),
        id("closure_cobracket", "theta and mu theta of 1PI graphs have bridgeless factors", L, c_closure_cobracket, gen_single_one_pi),
        id("bridged_counterexample", "compatibility fails for some bridged pair", S, c_bridged, gen_bridged),
        id("homotopy_mu1", "[X,Y] = d_E mu1 - mu1 d_E", L, c_mu1, gen_pair),
        id("homotopy_delta1", "theta = d_E Delta1 - Delta1 d_E", L, c_delta1, gen_single),
        id("homotopy_alpha", "d_H = d_E alpha - alpha d_E", L, c_alpha, gen_single),
        id("trivial_cycle", "d_H z and theta(z) are boundaries for cycles z", L, c_trivial_cycle, gen_cycles),
        id("trivial_bracket", "[z,w] is a boundary for cycles z, w", L, c_trivial_bracket, gen_cycle_pairs),
        id("aut_powers", "|Aut X^n| = n!|Aut X|^n and the binomial rule", L, c_aut, gen_connected_small),
    ]
}

fn gen_connected_small(p: &Pools, _: &SuiteConfig, _: &mut ChaCha8Rng) -> Result<(Vec<Vec<Chain>>, Vec<Vec<Chain>>)> {
    Ok((exhaustive(&filtered(&p.small, connected), 1), Vec::new()))
}

pub fn identity_names() -> Vec<&'static str> {
    registry().iter().map(|i| i.name).collect()
}

fn stream_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a, so streams do not depend on which identities are selected.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

const MAX_REPORTED: usize = 5;

fn evaluate(identity: &Identity, inputs: &[Vec<Chain>]) -> Result<Vec<(usize, Option<String>)>> {
    inputs.par_iter().map(|i| identity.check(i)).collect()
}

fn evaluate_search(identity: &Identity, inputs: &[Vec<Chain>]) -> Result<(usize, Vec<(usize, usize, Option<String>)>)> {
    let mut found = Vec::new();
    let mut tried = 0;
    for (n, i) in inputs.iter().enumerate() {
        tried += 1;
        let (r, d) = identity.check(i)?;
        if r > 0 {
            found.push((n, r, d));
            if found.len() == MAX_REPORTED {
                break;
            }
        }
    }
    Ok((tried, found))
}

fn summarize(identity: &Identity, exhaustive: Vec<Vec<Chain>>, sampled: Vec<Vec<Chain>>) -> Result<CheckResult> {
    let all: Vec<Vec<Chain>> = exhaustive.iter().chain(sampled.iter()).cloned().collect();
    let case = |i: &[Chain], r: usize, d: Option<String>| Case {
        identity: identity.name.to_string(),
        inputs: i.iter().map(record).collect(),
        residual_terms: r,
        detail: d,
    };
    match identity.kind {
        Kind::Identity => {
            let outcomes = evaluate(identity, &all)?;
            let failing: Vec<Case> = all
                .iter()
                .zip(outcomes)
                .filter(|(_, (r, _))| *r > 0)
                .map(|(i, (r, d))| case(i, r, d))
                .collect();
            Ok(CheckResult {
                identity: identity.name.to_string(),
                statement: identity.statement.to_string(),
                kind: identity.kind,
                exhaustive_cases: exhaustive.len(),
                sampled_cases: sampled.len(),
                failures: failing.len(),
                passed: failing.is_empty(),
                cases: failing.into_iter().take(MAX_REPORTED).collect(),
            })
        }
        Kind::Search => {
            let (tried, found) = evaluate_search(identity, &all)?;
            Ok(CheckResult {
                identity: identity.name.to_string(),
                statement: identity.statement.to_string(),
                kind: identity.kind,
                exhaustive_cases: tried,
                sampled_cases: 0,
                failures: 0,
                passed: !found.is_empty(),
                cases: found.into_iter().map(|(n, r, d)| case(&all[n], r, d)).collect(),
            })
        }
    }
}

/// Runs the selected identities.
pub fn run(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let reg = registry();
    let selected: Vec<&Identity> = match &cfg.only {
        None => reg.iter().collect(),
        Some(names) => {
            let wanted: BTreeSet<&str> = names.split(',').map(str::trim).collect();
            for w in &wanted {
                if !reg.iter().any(|i| i.name == *w) {
                    return Err(crate::error::precondition(format!("unknown identity {w}")));
                }
            }
            reg.iter().filter(|i| wanted.contains(i.name)).collect()
        }
    };
    let pools = Pools::new(cfg)?;
    let mut results = Vec::new();
    for identity in selected {
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(cfg.seed, identity.name));
        let (ex, sa) = (identity.cases)(&pools, cfg, &mut rng)?;
        results.push(summarize(identity, ex, sa)?);
    }
    let passed = results.iter().all(|r| r.passed);
    Ok(SuiteReport { schema: SCHEMA, config: cfg.clone(), passed, results })
}

/// Cases from a report (its reported cases) or a bare `{"cases": [...]}`.
pub fn load_cases(json: &str) -> Result<Vec<Case>> {
    #[derive(Deserialize)]
    struct Bare {
        cases: Vec<Case>,
    }
    let parse_err = |e: serde_json::Error| Error::Parse { line: e.line(), message: e.to_string() };
    let value: serde_json::Value = serde_json::from_str(json).map_err(parse_err)?;
    if value.get("results").is_some() {
        let report: SuiteReport = serde_json::from_value(value).map_err(parse_err)?;
        Ok(report.results.into_iter().flat_map(|r| r.cases).collect())
    } else {
        Ok(serde_json::from_value::<Bare>(value).map_err(parse_err)?.cases)
    }
}

/// Re-checks recorded cases, grouped by identity in registry order.
pub fn replay(cases: &[Case]) -> Result<SuiteReport> {
    let reg = registry();
    let mut results = Vec::new();
    for identity in &reg {
        let mine: Vec<&Case> = cases.iter().filter(|c| c.identity == identity.name).collect();
        if mine.is_empty() {
            continue;
        }
        let inputs: Vec<Vec<Chain>> =
            mine.iter().map(|c| c.inputs.iter().map(|t| restore(t)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        results.push(summarize(identity, inputs, Vec::new())?);
    }
    for c in cases {
        if !reg.iter().any(|i| i.name == c.identity) {
            return Err(crate::error::precondition(format!("unknown identity {}", c.identity)));
        }
    }
    let passed = results.iter().all(|r| r.passed);
    Ok(SuiteReport { schema: SCHEMA, config: SuiteConfig { samples: 0, ..SuiteConfig::default() }, passed, results })
}

/// Residual of a recorded case, for tests.
pub fn recheck(case: &Case) -> Result<usize> {
    let identity = registry().into_iter().find(|i| i.name == case.identity).ok_or_else(|| crate::error::precondition("unknown identity"))?;
    let inputs = case.inputs.iter().map(|t| restore(t)).collect::<Result<Vec<_>>>()?;
    Ok(identity.check(&inputs)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(only: &str) -> SuiteReport {
        run(&SuiteConfig { samples: 5, only: Some(only.into()), ..SuiteConfig::default() }).unwrap()
    }

    #[test]
    fn recorded_chains_round_trip() {
        let pools = Pools::new(&SuiteConfig::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let c = random_chain(&pools.large, &mut rng);
            assert_eq!(restore(&record(&c)).unwrap(), c);
        }
    }

    #[test]
    fn samples_depend_only_on_seed() {
        let a = quick("jacobi");
        let b = quick("jacobi");
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed);
    }

    #[test]
    fn unknown_identity_is_rejected() {
        assert!(run(&SuiteConfig { only: Some("nope".into()), ..SuiteConfig::default() }).is_err());
    }

    #[test]
    fn cyclic_jacobi_sign_fails_somewhere() {
        // The sign (-1)^{y(z+x)} on the last term, checked on basis triples.
        let pools = Pools::new(&SuiteConfig::default()).unwrap();
        let mut failures = 0;
        for t in exhaustive(&pools.small, 3) {
            let r = per_triple(&t[0], &t[1], &t[2], |a, b, c| {
                let (x, y, z) = (a.vertex_count(), b.vertex_count(), c.vertex_count());
                let mut r = ops::bracket(&bracket_classes(a, b), &chain(c));
                r.add_scaled(&sign(z * (x + y)), &ops::bracket(&bracket_classes(c, a), &chain(b)));
                r.add_scaled(&sign(y * (z + x)), &ops::bracket(&bracket_classes(b, c), &chain(a)));
                r
            });
            failures += usize::from(!r.is_zero());
        }
        assert!(failures > 0);
    }

    #[test]
    fn replay_of_a_witness_reproduces_it() {
        let r = quick("bridged_counterexample");
        let res = r.result("bridged_counterexample").unwrap();
        assert!(res.passed);
        let json = r.to_json();
        let cases = load_cases(&json).unwrap();
        assert!(!cases.is_empty());
        for c in &cases {
            assert_eq!(recheck(c).unwrap(), c.residual_terms);
        }
        let again = replay(&cases).unwrap();
        assert!(again.passed);
    }
}
