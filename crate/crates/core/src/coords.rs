//! The commutative *-algebra generated by the characteristic functions
//! `1[g;i]` of tagged group elements, in exact canonical form.
//!
//! Points of the underlying space are subsets `ξ` of the disjoint union
//! `⊔_{i∈I} G^i` (with `I = J ⊔ {0}` and `G⁰` identified with `G`) that
//! contain the identity and are closed under dropping tags: `g^i ∈ ξ ⇒
//! g ∈ ξ`.  A [`BoolFn`] is a finite linear combination of monomials in the
//! generators; monomial normalization (drop `1[e]`, absorb `1[g]` under any
//! `1[g;j]`) makes two functions equal on the whole space iff their term
//! maps are identical.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Limits, Result};
use crate::group::{Ctx, GroupElement};
use crate::scalar::{NormReal, Scalar};

/// Which copy of the group a coordinate lives in: the group itself (`Zero`)
/// or the copy tagged by a projection label (`Proj`, index into `J`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndexTag {
    Zero,
    Proj(usize),
}

/// A point coordinate `g^i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate {
    pub g: GroupElement,
    pub tag: IndexTag,
}

impl Coordinate {
    pub fn new(g: GroupElement, tag: IndexTag) -> Self {
        if let IndexTag::Proj(j) = tag {
            assert!(j < g.ctx().proj_labels().len(), "projection index out of range");
        }
        Coordinate { g, tag }
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            IndexTag::Zero => write!(f, "{}", self.g),
            IndexTag::Proj(j) => write!(f, "{};{}", self.g, self.g.ctx().proj_labels()[j]),
        }
    }
}

/// A finitely supported point: the subset of `⊔_i G^i` whose coordinates are
/// exactly `coords` (all other coordinates are 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoint {
    ctx: Ctx,
    coords: BTreeSet<Coordinate>,
}

impl FinitePoint {
    /// Smallest valid point containing the given coordinates: adds the
    /// identity and the untagged coordinate below every tagged one.
    pub fn closure(ctx: &Ctx, coords: impl IntoIterator<Item = Coordinate>) -> Self {
        let mut set = BTreeSet::new();
        set.insert(Coordinate::new(GroupElement::identity(ctx), IndexTag::Zero));
        for c in coords {
            if let IndexTag::Proj(_) = c.tag {
                set.insert(Coordinate::new(c.g.clone(), IndexTag::Zero));
            }
            set.insert(c);
        }
        FinitePoint {
            ctx: ctx.clone(),
            coords: set,
        }
    }

    /// Validating constructor: the set must already satisfy the invariants.
    pub fn new(ctx: &Ctx, coords: BTreeSet<Coordinate>) -> Result<Self> {
        let e = Coordinate::new(GroupElement::identity(ctx), IndexTag::Zero);
        if !coords.contains(&e) {
            return Err(Error::InvalidPoint("point must contain the identity".into()));
        }
        for c in &coords {
            if let IndexTag::Proj(_) = c.tag {
                let base = Coordinate::new(c.g.clone(), IndexTag::Zero);
                if !coords.contains(&base) {
                    return Err(Error::InvalidPoint(format!(
                        "tagged coordinate `{c}` present without `{}`",
                        base
                    )));
                }
            }
        }
        Ok(FinitePoint {
            ctx: ctx.clone(),
            coords,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coords(&self) -> &BTreeSet<Coordinate> {
        &self.coords
    }

    pub fn contains(&self, c: &Coordinate) -> bool {
        self.coords.contains(c)
    }

    /// The group elements in `ξ ∩ G` (untagged coordinates), sorted.
    pub fn group_members(&self) -> Vec<GroupElement> {
        self.coords
            .iter()
            .filter(|c| c.tag == IndexTag::Zero)
            .map(|c| c.g.clone())
            .collect()
    }
}

impl fmt::Display for FinitePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A normalized product of generators, identified with its coordinate set.
/// The empty monomial is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    coords: BTreeSet<Coordinate>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial {
            coords: BTreeSet::new(),
        }
    }

    /// Normalizes a raw coordinate set: drops the untagged identity, and
    /// drops `g` untagged whenever some `g^j` is present (absorption
    /// `1[g]·1[g;j] = 1[g;j]`).
    pub fn normalize(raw: impl IntoIterator<Item = Coordinate>) -> Self {
        let mut coords: BTreeSet<Coordinate> = BTreeSet::new();
        let mut tagged: BTreeSet<GroupElement> = BTreeSet::new();
        for c in raw {
            if c.tag == IndexTag::Zero {
                if c.g.is_identity() {
                    continue;
                }
            } else {
                tagged.insert(c.g.clone());
            }
            coords.insert(c);
        }
        let absorbed: Vec<Coordinate> = coords
            .iter()
            .filter(|c| c.tag == IndexTag::Zero && tagged.contains(&c.g))
            .cloned()
            .collect();
        for c in absorbed {
            coords.remove(&c);
        }
        Monomial { coords }
    }

    pub fn coords(&self) -> &BTreeSet<Coordinate> {
        &self.coords
    }

    pub fn is_unit(&self) -> bool {
        self.coords.is_empty()
    }

    /// Product of two normalized monomials (idempotent union + renormalize).
    fn product(&self, rhs: &Monomial) -> Monomial {
        Monomial::normalize(self.coords.iter().chain(rhs.coords.iter()).cloned())
    }

    /// 1 iff every coordinate of the monomial is present in `ξ`.
    fn holds_at(&self, point: &FinitePoint) -> bool {
        self.coords.iter().all(|c| point.contains(c))
    }
}

/// An exact element of the *-algebra generated by the characteristic
/// functions, as a canonical map monomial → nonzero scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolFn {
    ctx: Ctx,
    terms: BTreeMap<Monomial, Scalar>,
}

fn assert_same_ctx(a: &Ctx, b: &Ctx) {
    assert!(
        std::sync::Arc::ptr_eq(a, b) || a == b,
        "values from different contexts cannot be combined"
    );
}

impl BoolFn {
    pub fn zero(ctx: &Ctx) -> Self {
        BoolFn {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The constant function 1.
    pub fn unit(ctx: &Ctx) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::unit(), Scalar::one());
        BoolFn {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The generator `1[g;i]` in canonical form; `char(e, Zero)` is the unit.
    pub fn char_fn(g: &GroupElement, tag: IndexTag) -> Self {
        let ctx = g.ctx().clone();
        let m = Monomial::normalize([Coordinate::new(g.clone(), tag)]);
        let mut terms = BTreeMap::new();
        terms.insert(m, Scalar::one());
        BoolFn { ctx, terms }
    }

    pub(crate) fn from_terms(ctx: &Ctx, terms: BTreeMap<Monomial, Scalar>) -> Self {
        debug_assert!(terms.values().all(|s| !s.is_zero()));
        BoolFn {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &BoolFn) -> BoolFn {
        assert_same_ctx(&self.ctx, &rhs.ctx);
        let mut terms = self.terms.clone();
        for (m, s) in &rhs.terms {
            match terms.get_mut(m) {
                Some(t) => {
                    let sum = &*t + s;
                    if sum.is_zero() {
                        terms.remove(m);
                    } else {
                        *t = sum;
                    }
                }
                None => {
                    terms.insert(m.clone(), s.clone());
                }
            }
        }
        BoolFn {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> BoolFn {
        let terms = self.terms.iter().map(|(m, s)| (m.clone(), -s)).collect();
        BoolFn {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn sub(&self, rhs: &BoolFn) -> BoolFn {
        self.add(&rhs.neg())
    }

    pub fn scalar_mul(&self, lambda: &Scalar) -> BoolFn {
        if lambda.is_zero() {
            return BoolFn::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, s)| (m.clone(), lambda * s))
            .collect();
        BoolFn {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Pointwise complex conjugate (the involution of the *-algebra).
    pub fn conj(&self) -> BoolFn {
        let terms = self
            .terms
            .iter()
            .map(|(m, s)| (m.clone(), s.conj()))
            .collect();
        BoolFn {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Pointwise product; monomials multiply by coordinate-set union with
    /// idempotent absorption.
    pub fn mul(&self, rhs: &BoolFn) -> BoolFn {
        assert_same_ctx(&self.ctx, &rhs.ctx);
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, s1) in &self.terms {
            for (m2, s2) in &rhs.terms {
                let m = m1.product(m2);
                let s = s1 * s2;
                match terms.get_mut(&m) {
                    Some(t) => {
                        let sum = &*t + &s;
                        if sum.is_zero() {
                            terms.remove(&m);
                        } else {
                            *t = sum;
                        }
                    }
                    None => {
                        if !s.is_zero() {
                            terms.insert(m, s);
                        }
                    }
                }
            }
        }
        BoolFn {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Exact value at a finitely supported point.
    pub fn evaluate(&self, point: &FinitePoint) -> Scalar {
        assert_same_ctx(&self.ctx, point.ctx());
        let mut value = Scalar::zero();
        for (m, s) in &self.terms {
            if m.holds_at(point) {
                value = &value + s;
            }
        }
        value
    }

    /// All coordinates mentioned by the terms, closed under tag-dropping,
    /// plus the untagged identity.
    pub fn closed_support(&self) -> BTreeSet<Coordinate> {
        let mut support = BTreeSet::new();
        support.insert(Coordinate::new(
            GroupElement::identity(&self.ctx),
            IndexTag::Zero,
        ));
        for m in self.terms.keys() {
            for c in &m.coords {
                if let IndexTag::Proj(_) = c.tag {
                    support.insert(Coordinate::new(c.g.clone(), IndexTag::Zero));
                }
                support.insert(c.clone());
            }
        }
        support
    }

    /// Exact supremum of `|f|` over the whole point space.
    ///
    /// Every admissibility-consistent 0/1 assignment of the closed support
    /// extends to a genuine point by setting all other coordinates to 0, so
    /// the max over assignments equals the true sup.  Fails if the support
    /// would need more than `limits.max_assignments` assignments.
    pub fn sup_norm(&self, limits: &Limits) -> Result<NormReal> {
        let support: Vec<Coordinate> = self.closed_support().into_iter().collect();
        // The identity coordinate is forced to 1; the rest are free.
        let free: Vec<&Coordinate> = support
            .iter()
            .filter(|c| !(c.tag == IndexTag::Zero && c.g.is_identity()))
            .collect();
        let n = free.len();
        let needed: u128 = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
        if needed > limits.max_assignments as u128 {
            return Err(Error::EnumerationCap {
                what: "sup_norm assignments",
                needed,
                cap: limits.max_assignments as u128,
            });
        }
        let index: HashMap<&Coordinate, usize> =
            free.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        // For consistency: tagged bit i implies untagged bit dep[i].
        let deps: Vec<Option<usize>> = free
            .iter()
            .map(|c| match c.tag {
                IndexTag::Proj(_) => {
                    if c.g.is_identity() {
                        None // backed by the forced identity coordinate
                    } else {
                        Some(index[&Coordinate::new(c.g.clone(), IndexTag::Zero)])
                    }
                }
                IndexTag::Zero => None,
            })
            .collect();
        // Monomial masks over the free coordinates (identity never occurs in
        // a normalized monomial).
        let masks: Vec<(u128, &Scalar)> = self
            .terms
            .iter()
            .map(|(m, s)| {
                let mut mask = 0u128;
                for c in &m.coords {
                    mask |= 1u128 << index[c];
                }
                (mask, s)
            })
            .collect();
        let mut best = num::BigRational::from_integer(0.into());
        for assignment in 0..(1u128 << n) {
            let consistent = deps.iter().enumerate().all(|(i, dep)| match dep {
                Some(j) => (assignment >> i) & 1 == 0 || (assignment >> *j) & 1 == 1,
                None => true,
            });
            if !consistent {
                continue;
            }
            let mut value = Scalar::zero();
            for (mask, s) in &masks {
                if assignment & mask == *mask {
                    value = &value + s;
                }
            }
            let sq = value.norm_sq();
            if sq > best {
                best = sq;
            }
        }
        Ok(NormReal::sqrt_of(&best))
    }
}

impl fmt::Display for BoolFn {
    /// Canonical rendering in the expression grammar; zero prints as
    /// `0 * 1[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 * 1[]");
        }
        let mut first = true;
        for (m, s) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if s.is_one() {
                if m.is_unit() {
                    write!(f, "1[]")?;
                } else {
                    write_monomial(f, m)?;
                }
            } else {
                write!(f, "{s} * ")?;
                if m.is_unit() {
                    write!(f, "1[]")?;
                } else {
                    write_monomial(f, m)?;
                }
            }
        }
        Ok(())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for c in &m.coords {
        if !first {
            write!(f, " ")?;
        }
        first = false;
        match c.tag {
            IndexTag::Zero => write!(f, "1[{}]", c.g)?,
            IndexTag::Proj(j) => write!(f, "1[{};{}]", c.g, c.g.ctx().proj_labels()[j])?,
        }
    }
    Ok(())
}
