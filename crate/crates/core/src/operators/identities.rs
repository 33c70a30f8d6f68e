//! Residuals of the multilinear identities. Each returns the chain that
//! must vanish; inputs are expanded multilinearly over their terms.

use crate::canon::GraphClass;
use crate::chain::{rational, Chain};
use crate::error::{precondition, Result};

use super::algebra::{bracket_classes, product_classes};
use super::cobracket::product_cobracket;
use super::differential::boundary_h;
use super::{bracket, parity, product};

fn one(x: &GraphClass) -> Chain {
    Chain::from_class(x.clone())
}

fn trilinear(x: &Chain, y: &Chain, z: &Chain, f: impl Fn(&GraphClass, &GraphClass, &GraphClass) -> Chain) -> Chain {
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

/// `[X, YZ] - [X, Y]Z - (-1)^{zy} [X, Z]Y`.
pub fn check_gerstenhaber(x: &Chain, y: &Chain, z: &Chain) -> Chain {
    trilinear(x, y, z, |a, b, c| {
        let lhs = bracket(&one(a), &product_classes(b, c));
        let first = product(&bracket_classes(a, b), &one(c));
        let second = product(&bracket_classes(a, c), &one(b)).scale(&rational(parity(b.vertex_count() * c.vertex_count())));
        &(&lhs - &first) - &second
    })
}

/// The seven-term identity for `Δ = ∂_H`:
///
/// `Δ(uvw) = Δ(uv)w + (-1)^u uΔ(vw) + (-1)^{(u+1)v} vΔ(uw)
///           - (Δu)vw - (-1)^u u(Δv)w - (-1)^{u+v} uv(Δw)`.
pub fn check_bv(x: &Chain, y: &Chain, z: &Chain) -> Chain {
    trilinear(x, y, z, |u, v, w| {
        let (pu, pv) = (u.vertex_count(), v.vertex_count());
        let (cu, cv, cw) = (one(u), one(v), one(w));
        let d = boundary_h;
        let uv = product_classes(u, v);
        let vw = product_classes(v, w);
        let uw = product_classes(u, w);
        let lhs = d(&product(&uv, &cw));
        let mut rhs = product(&d(&uv), &cw);
        rhs.add_scaled(&rational(parity(pu)), &product(&cu, &d(&vw)));
        rhs.add_scaled(&rational(parity((pu + 1) * pv)), &product(&cv, &d(&uw)));
        rhs.add_scaled(&rational(-1), &product(&product(&d(&cu), &cv), &cw));
        rhs.add_scaled(&rational(-parity(pu)), &product(&product(&cu, &d(&cv)), &cw));
        rhs.add_scaled(&rational(-parity(pu + pv)), &product(&uv, &d(&cw)));
        &lhs - &rhs
    })
}

/// `μθ[X, Y] + [μθX, Y] + (-1)^x [X, μθY]` for connected inputs, with
/// `μθ = μ ∘ θ`.
pub fn check_compatibility(x: &Chain, y: &Chain) -> Result<Chain> {
    if x.classes().chain(y.classes()).any(|c| !c.is_connected()) {
        return Err(precondition("compatibility is stated for connected graphs"));
    }
    let mut out = Chain::zero();
    for (a, p) in x.iter() {
        for (b, q) in y.iter() {
            let (ca, cb) = (one(a), one(b));
            let mut r = product_cobracket(&bracket_classes(a, b));
            r = &r + &bracket(&product_cobracket(&ca), &cb);
            r.add_scaled(&rational(parity(a.vertex_count())), &bracket(&ca, &product_cobracket(&cb)));
            out.add_scaled(&(p * q), &r);
        }
    }
    Ok(out)
}
