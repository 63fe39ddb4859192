//! Finite formal sums `Σ a_g δ_g` with coefficients in the coordinate
//! algebra, the twisted product `(a δ_g)(b δ_h) = α_g(α_{g⁻¹}(a)·b) δ_{gh}`,
//! the involution `(a δ_g)* = α_{g⁻¹}(a*) δ_{g⁻¹}`, and the ℓ¹-norm
//! `Σ_g ‖a_g‖`.
//!
//! Invariant: every stored coefficient `a_g` satisfies `a_g = 1[g]·a_g`
//! (it lives in the ideal attached to `g`) and is nonzero.  The ℓ¹-norm is
//! an upper bound for any C*-completion norm; only the normed *-algebra is
//! represented here.

use std::collections::BTreeMap;
use std::fmt;

use crate::action::alpha;
use crate::coords::{BoolFn, IndexTag};
use crate::error::{Limits, Result};
use crate::group::{Ctx, GroupElement};
use crate::scalar::{NormReal, Scalar};

/// A finite formal sum `Σ a_g δ_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPElement {
    ctx: Ctx,
    coeffs: BTreeMap<GroupElement, BoolFn>,
}

fn assert_same_ctx(a: &Ctx, b: &Ctx) {
    assert!(
        std::sync::Arc::ptr_eq(a, b) || a == b,
        "values from different contexts cannot be combined"
    );
}

impl CPElement {
    pub fn zero(ctx: &Ctx) -> Self {
        CPElement {
            ctx: ctx.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The multiplicative identity `1 δ_e`.
    pub fn one(ctx: &Ctx) -> Self {
        CPElement::mono(&BoolFn::unit(ctx), &GroupElement::identity(ctx))
    }

    /// The element `(f·1[g]) δ_g`; dropped if zero after restriction.
    pub fn mono(f: &BoolFn, g: &GroupElement) -> Self {
        assert_same_ctx(f.ctx(), g.ctx());
        let restricted = BoolFn::char_fn(g, IndexTag::Zero).mul(f);
        let mut coeffs = BTreeMap::new();
        if !restricted.is_zero() {
            coeffs.insert(g.clone(), restricted);
        }
        CPElement {
            ctx: f.ctx().clone(),
            coeffs,
        }
    }

    /// Canonical generator image `1[g] δ_g`.
    pub fn pi(g: &GroupElement) -> Self {
        CPElement::mono(&BoolFn::unit(g.ctx()), g)
    }

    /// Canonical projection image `1[e;j] δ_e`.
    pub fn proj(ctx: &Ctx, j: usize) -> Self {
        assert!(j < ctx.proj_labels().len(), "unknown projection index");
        let e = GroupElement::identity(ctx);
        CPElement::mono(&BoolFn::char_fn(&e, IndexTag::Proj(j)), &e)
    }

    /// Embedding of the coordinate algebra: `f δ_e`.
    pub fn embed(f: &BoolFn) -> Self {
        CPElement::mono(f, &GroupElement::identity(f.ctx()))
    }

    /// Ordered product of `pi` over the letters of a reduced word.  For a
    /// non-reduced sequence the partial representation is not multiplicative,
    /// so the input is a group element (always reduced).
    pub fn word_image(w: &GroupElement) -> Self {
        let ctx = w.ctx().clone();
        let mut acc = CPElement::one(&ctx);
        for &l in w.letters() {
            let g = GroupElement::from_letters(&ctx, &[l]);
            acc = acc.mul(&CPElement::pi(&g));
        }
        acc
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&GroupElement, &BoolFn)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, g: &GroupElement) -> Option<&BoolFn> {
        self.coeffs.get(g)
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn insert(coeffs: &mut BTreeMap<GroupElement, BoolFn>, g: GroupElement, f: BoolFn) {
        if f.is_zero() {
            return;
        }
        match coeffs.get_mut(&g) {
            Some(acc) => {
                let sum = acc.add(&f);
                if sum.is_zero() {
                    coeffs.remove(&g);
                } else {
                    *acc = sum;
                }
            }
            None => {
                coeffs.insert(g, f);
            }
        }
    }

    pub fn add(&self, rhs: &CPElement) -> CPElement {
        assert_same_ctx(&self.ctx, &rhs.ctx);
        let mut coeffs = self.coeffs.clone();
        for (g, f) in &rhs.coeffs {
            Self::insert(&mut coeffs, g.clone(), f.clone());
        }
        CPElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> CPElement {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(g, f)| (g.clone(), f.neg()))
            .collect();
        CPElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &CPElement) -> CPElement {
        self.add(&rhs.neg())
    }

    pub fn scalar_mul(&self, lambda: &Scalar) -> CPElement {
        if lambda.is_zero() {
            return CPElement::zero(&self.ctx);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(g, f)| (g.clone(), f.scalar_mul(lambda)))
            .collect();
        CPElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Twisted product, computed termwise.
    pub fn mul(&self, rhs: &CPElement) -> CPElement {
        assert_same_ctx(&self.ctx, &rhs.ctx);
        let mut coeffs: BTreeMap<GroupElement, BoolFn> = BTreeMap::new();
        for (g, a) in &self.coeffs {
            let pulled = alpha(&g.inv(), a);
            for (h, b) in &rhs.coeffs {
                let term = alpha(g, &pulled.mul(b));
                Self::insert(&mut coeffs, g.mul(h), term);
            }
        }
        CPElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Involution `Σ α_{g⁻¹}(a_g*) δ_{g⁻¹}`.
    pub fn star(&self) -> CPElement {
        let mut coeffs: BTreeMap<GroupElement, BoolFn> = BTreeMap::new();
        for (g, a) in &self.coeffs {
            Self::insert(&mut coeffs, g.inv(), alpha(&g.inv(), &a.conj()));
        }
        CPElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// ℓ¹-norm `Σ_g sup|a_g|`, exact.
    pub fn one_norm(&self, limits: &Limits) -> Result<NormReal> {
        let mut total = NormReal::zero();
        for a in self.coeffs.values() {
            total = total.add(&a.sup_norm(limits)?);
        }
        Ok(total)
    }
}

impl fmt::Display for CPElement {
    /// Canonical rendering: one `term d(word)` per monomial per group
    /// element; zero prints as `0 * 1[] d()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 * 1[] d()");
        }
        let mut first = true;
        for (g, a) in &self.coeffs {
            let word = if g.is_identity() {
                String::new()
            } else {
                g.to_string()
            };
            for (m, s) in a.terms() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let coeff = BoolFn::from_terms(
                    a.ctx(),
                    [(m.clone(), s.clone())].into_iter().collect(),
                );
                write!(f, "{coeff} d({word})")?;
            }
        }
        Ok(())
    }
}
