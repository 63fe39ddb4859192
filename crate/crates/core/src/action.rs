//! The partial action of the group on its coordinate space and algebra:
//! point translation `ξ ↦ tξ = {(tr)^i : r^i ∈ ξ}` and the induced map
//! `alpha` on coordinate functions.

use crate::coords::{BoolFn, Coordinate, FinitePoint, IndexTag, Monomial};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Translates a point by `t`.  Requires `t⁻¹ ∈ ξ`; the image then contains
/// `t`, is a valid point, and translating back by `t⁻¹` recovers `ξ`.
pub fn translate_point(t: &GroupElement, point: &FinitePoint) -> Result<FinitePoint> {
    let tinv = Coordinate::new(t.inv(), IndexTag::Zero);
    if !point.contains(&tinv) {
        return Err(Error::TranslationDomain { t: t.to_string() });
    }
    let coords = point
        .coords()
        .iter()
        .map(|c| Coordinate::new(t.mul(&c.g), c.tag))
        .collect();
    // Translation is a tag-preserving bijection on coordinates, so the
    // invariants transfer: t·t⁻¹ = e gives the identity, and closure is
    // preserved coordinate-wise.
    FinitePoint::new(point.ctx(), coords)
}

/// The partial *-isomorphism by `t`, made total by pre-restriction: the
/// argument is first multiplied by `1[t⁻¹]`, each restricted monomial's
/// coordinates are translated `r^i ↦ (tr)^i`, and the result is multiplied
/// by `1[t]`.  On functions supported in the domain this is exactly the
/// pullback along translation by `t⁻¹`.
pub fn alpha(t: &GroupElement, f: &BoolFn) -> BoolFn {
    let ctx = f.ctx();
    let restricted = BoolFn::char_fn(&t.inv(), IndexTag::Zero).mul(f);
    let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    for (m, s) in restricted.terms() {
        let moved = Monomial::normalize(
            m.coords()
                .iter()
                .map(|c| Coordinate::new(t.mul(&c.g), c.tag)),
        );
        match terms.get_mut(&moved) {
            Some(acc) => {
                let sum = &*acc + s;
                if sum.is_zero() {
                    terms.remove(&moved);
                } else {
                    *acc = sum;
                }
            }
            None => {
                terms.insert(moved, s.clone());
            }
        }
    }
    BoolFn::char_fn(t, IndexTag::Zero).mul(&BoolFn::from_terms(ctx, terms))
}
