//! Relation sets, membership of finitely supported points in the invariant
//! set they cut out, and a sound bounded decision procedure for "vanishes on
//! that set".
//!
//! A relation set holds explicit coordinate functions plus an optional
//! generated family: for every pair of reduced words with `|rs| = |r| + |s|`
//! the function `1[rs]·1[r] − 1[rs]` (every prefix of a member word is a
//! member).  The invariant set consists of the points killed by every group
//! translate of every relation.
//!
//! The vanishing check instantiates the translates `alpha(t, f)` for `|t|`
//! up to a bound and searches exhaustively for a consistent 0/1 assignment
//! that zeroes every instantiated constraint yet gives the target a nonzero
//! value.  No such assignment means the target vanishes on the invariant
//! set (every point of the set restricts to such an assignment), so a
//! `Vanishes` verdict is sound at any bound.  An `Unknown` verdict carries
//! the found assignment, which may fail to extend to an actual point of the
//! set — the procedure is deliberately one-sided.
//!
//! Because every monomial of `alpha(t, f)` contains a coordinate over `t`,
//! a constraint is automatically zero unless the assignment sets `t` itself
//! to 1; the search therefore materializes constraints lazily, only for
//! group elements actually switched on, which keeps the explored universe
//! proportional to the target's support instead of the whole ball.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use rand::Rng;

use crate::action::{alpha, translate_point};
use crate::coords::{BoolFn, Coordinate, FinitePoint, IndexTag};
use crate::crossed::CPElement;
use crate::error::{Error, Limits, Result};
use crate::group::{ball, Ctx, GroupElement};
use crate::scalar::Scalar;

/// A set of relation functions: explicit elements plus generated families.
#[derive(Debug, Clone)]
pub struct RelationSet {
    ctx: Ctx,
    explicit: Vec<BoolFn>,
    length_additivity: bool,
}

impl RelationSet {
    pub fn new(ctx: &Ctx, explicit: Vec<BoolFn>, length_additivity: bool) -> Result<Self> {
        for f in &explicit {
            if f.ctx() != ctx && !Arc::ptr_eq(f.ctx(), ctx) {
                return Err(Error::Validation(
                    "relation function from a different context".into(),
                ));
            }
        }
        if length_additivity && !ctx.is_free() {
            return Err(Error::Validation(
                "the length-additivity family requires a free group".into(),
            ));
        }
        Ok(RelationSet {
            ctx: ctx.clone(),
            explicit,
            length_additivity,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn explicit(&self) -> &[BoolFn] {
        &self.explicit
    }

    pub fn has_length_additivity(&self) -> bool {
        self.length_additivity
    }

    /// Explicit relations plus every length-additivity instance
    /// `1[rs]·1[r] − 1[rs]` with `|rs| ≤ bound`, in deterministic order.
    /// Identically-zero instances (`r = e` or `s = e`) never arise because
    /// only proper nonempty prefixes are used.
    pub fn instantiate(&self, bound: usize, limits: &Limits) -> Result<Vec<BoolFn>> {
        let mut out = self.explicit.clone();
        if self.length_additivity {
            for w in ball(&self.ctx, bound, limits)? {
                if w.is_identity() {
                    continue;
                }
                let w_char = BoolFn::char_fn(&w, IndexTag::Zero);
                for prefix in w.proper_prefixes() {
                    let instance = w_char
                        .mul(&BoolFn::char_fn(&prefix, IndexTag::Zero))
                        .sub(&w_char);
                    out.push(instance);
                }
            }
        }
        Ok(out)
    }

    /// Largest reduced word length mentioned by the explicit relations.
    fn max_word_len(&self) -> usize {
        if !self.ctx.is_free() {
            return 0;
        }
        self.explicit
            .iter()
            .flat_map(|f| f.closed_support())
            .map(|c| c.g.len())
            .max()
            .unwrap_or(0)
    }

    /// Value of `f` at the zero-extension of a coordinate list.
    pub fn eval_assignment(f: &BoolFn, ones: &[Coordinate]) -> Scalar {
        let set: BTreeSet<&Coordinate> = ones.iter().collect();
        let mut value = Scalar::zero();
        for (m, s) in f.terms() {
            if m.coords().iter().all(|c| set.contains(c)) {
                value = &value + s;
            }
        }
        value
    }
}

/// Default search bound: twice the largest word length occurring in the
/// target and the relations.
pub fn default_bound(f: &BoolFn, rel: &RelationSet) -> usize {
    if !rel.ctx().is_free() {
        return 0;
    }
    let f_len = f
        .closed_support()
        .iter()
        .map(|c| c.g.len())
        .max()
        .unwrap_or(0);
    2 * f_len.max(rel.max_word_len())
}

/// Why a point is not in the invariant set.
#[derive(Debug, Clone)]
pub enum OmegaWitness {
    /// An explicit relation evaluates to a nonzero value on the translate
    /// by `t⁻¹`.
    Relation {
        t: GroupElement,
        index: usize,
        relation: BoolFn,
        value: Scalar,
    },
    /// A translate contains a word but not one of its prefixes.
    PrefixGap {
        t: GroupElement,
        word: GroupElement,
        missing_prefix: GroupElement,
    },
}

#[derive(Debug, Clone)]
pub enum OmegaOutcome {
    Member,
    NotMember(OmegaWitness),
}

impl OmegaOutcome {
    pub fn is_member(&self) -> bool {
        matches!(self, OmegaOutcome::Member)
    }
}

/// Exact membership test for finitely supported points: every explicit
/// relation must vanish on every translate `t⁻¹ξ` with `t ∈ ξ ∩ G`, and
/// (for the generated family) every such translate must be closed under
/// reduced-word prefixes.  The prefix check covers the whole infinite
/// family because a finitely supported point has only finitely many
/// translates and member words.
pub fn omega_contains(point: &FinitePoint, rel: &RelationSet) -> OmegaOutcome {
    for t in point.group_members() {
        let translate = translate_point(&t.inv(), point)
            .expect("t ∈ ξ guarantees the translate is defined");
        for (index, relation) in rel.explicit.iter().enumerate() {
            let value = relation.evaluate(&translate);
            if !value.is_zero() {
                return OmegaOutcome::NotMember(OmegaWitness::Relation {
                    t,
                    index,
                    relation: relation.clone(),
                    value,
                });
            }
        }
        if rel.length_additivity {
            for w in translate.group_members() {
                if w.is_identity() {
                    continue;
                }
                for prefix in w.proper_prefixes() {
                    if !translate.contains(&Coordinate::new(prefix.clone(), IndexTag::Zero)) {
                        return OmegaOutcome::NotMember(OmegaWitness::PrefixGap {
                            t,
                            word: w,
                            missing_prefix: prefix,
                        });
                    }
                }
            }
        }
    }
    OmegaOutcome::Member
}

/// A consistent assignment that zeroes every instantiated constraint while
/// giving the checked function a nonzero value.  `ones` lists the
/// coordinates set to 1 (all others are 0); the assignment may fail to
/// extend to an actual point of the invariant set.
#[derive(Debug, Clone)]
pub struct WitnessAssignment {
    pub ones: Vec<Coordinate>,
    pub value: Scalar,
}

/// Verdict of the bounded vanishing check.
#[derive(Debug, Clone)]
pub enum Verdict {
    Vanishes,
    Unknown(WitnessAssignment),
}

impl Verdict {
    pub fn is_vanishes(&self) -> bool {
        matches!(self, Verdict::Vanishes)
    }
}

/// Verdict of the coefficientwise quotient-equality check.
#[derive(Debug, Clone)]
pub enum CpVerdict {
    Equal,
    Unknown {
        at: GroupElement,
        witness: WitnessAssignment,
    },
}

impl CpVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, CpVerdict::Equal)
    }
}

/// Reusable bounded checker for one relation set at one bound; caches the
/// instantiated relations and their translates across queries.
pub struct OmegaChecker {
    rel: RelationSet,
    bound: usize,
    limits: Limits,
    instances: Vec<BoolFn>,
    translates: Mutex<HashMap<GroupElement, Arc<Vec<BoolFn>>>>,
}

impl OmegaChecker {
    pub fn new(rel: &RelationSet, bound: usize, limits: &Limits) -> Result<Self> {
        let instances = rel.instantiate(bound, limits)?;
        Ok(OmegaChecker {
            rel: rel.clone(),
            bound,
            limits: *limits,
            instances,
            translates: Mutex::new(HashMap::new()),
        })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn relation_set(&self) -> &RelationSet {
        &self.rel
    }

    fn translated_instances(&self, t: &GroupElement) -> Arc<Vec<BoolFn>> {
        let mut cache = self.translates.lock().unwrap();
        if let Some(v) = cache.get(t) {
            return v.clone();
        }
        let v: Arc<Vec<BoolFn>> = Arc::new(
            self.instances
                .iter()
                .map(|r| alpha(t, r))
                .filter(|c| !c.is_zero())
                .collect(),
        );
        cache.insert(t.clone(), v.clone());
        v
    }

    /// Sound bounded check that `f` vanishes on the invariant set.
    pub fn vanishes(&self, f: &BoolFn) -> Result<Verdict> {
        if f.is_zero() {
            return Ok(Verdict::Vanishes);
        }
        let mut search = Search::new(self, f);
        match search.run()? {
            Some(witness) => Ok(Verdict::Unknown(witness)),
            None => Ok(Verdict::Vanishes),
        }
    }

    /// Coefficientwise equality of formal sums modulo the relations.
    pub fn cp_equal(&self, x: &CPElement, y: &CPElement) -> Result<CpVerdict> {
        let diff = x.sub(y);
        for (g, coeff) in diff.coeffs() {
            if let Verdict::Unknown(witness) = self.vanishes(coeff)? {
                return Ok(CpVerdict::Unknown {
                    at: g.clone(),
                    witness,
                });
            }
        }
        Ok(CpVerdict::Equal)
    }

    /// Enumerates up to `max_points` finitely supported candidate points
    /// that zero every bounded constraint, then filters them through the
    /// exact membership test.  `seeds` are extra coordinates the search
    /// branches over, for variety; the RNG only reorders branch values, so
    /// the result is deterministic per seed.  Hitting a resource cap ends
    /// the enumeration early with the points found so far.
    pub fn sample_points(
        &self,
        seeds: &[Coordinate],
        max_points: usize,
        rng: &mut impl Rng,
    ) -> Result<Vec<FinitePoint>> {
        let target = BoolFn::zero(self.rel.ctx());
        let mut search = Search::new(self, &target);
        for c in seeds {
            search.intern(c.clone());
        }
        let mut raw = Vec::new();
        match search.enumerate(max_points, rng, &mut raw) {
            Ok(()) | Err(Error::EnumerationCap { .. }) => {}
            Err(e) => return Err(e),
        }
        let mut out = Vec::new();
        for ones in raw {
            let point = FinitePoint::closure(self.rel.ctx(), ones);
            if omega_contains(&point, &self.rel).is_member() && !out.contains(&point) {
                out.push(point);
            }
        }
        Ok(out)
    }
}

/// One-shot convenience wrapper around [`OmegaChecker::vanishes`].
pub fn vanishes_on_omega(
    f: &BoolFn,
    rel: &RelationSet,
    bound: usize,
    limits: &Limits,
) -> Result<Verdict> {
    OmegaChecker::new(rel, bound, limits)?.vanishes(f)
}

/// One-shot convenience wrapper around [`OmegaChecker::cp_equal`].
pub fn cp_equal_mod(
    x: &CPElement,
    y: &CPElement,
    rel: &RelationSet,
    bound: usize,
    limits: &Limits,
) -> Result<CpVerdict> {
    OmegaChecker::new(rel, bound, limits)?.cp_equal(x, y)
}

// ---------------------------------------------------------------------------
// The search engine.

type Mono = (Vec<usize>, Scalar);

struct Compiled {
    monos: Vec<Mono>,
}

enum ConsState {
    /// Value is fixed (independent of unset coordinates).
    Fixed(Scalar),
    /// Every undetermined monomial shares one unset coordinate:
    /// value = base + slope·x with slope ≠ 0.
    Linear {
        coord: usize,
        base: Scalar,
        slope: Scalar,
    },
    /// At least two distinct unset coordinates are involved.
    Open,
}

struct Search<'a> {
    checker: &'a OmegaChecker,
    coords: Vec<Coordinate>,
    index: HashMap<Coordinate, usize>,
    /// -1 unset, 0, 1.
    assign: Vec<i8>,
    /// tagged coordinate → its untagged base.
    base_of: Vec<Option<usize>>,
    /// untagged coordinate → tagged coordinates above it.
    tags_above: Vec<Vec<usize>>,
    constraints: Vec<Compiled>,
    by_coord: Vec<Vec<usize>>,
    materialized: HashSet<GroupElement>,
    target: Vec<Mono>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(checker: &'a OmegaChecker, f: &BoolFn) -> Search<'a> {
        let mut s = Search {
            checker,
            coords: Vec::new(),
            index: HashMap::new(),
            assign: Vec::new(),
            base_of: Vec::new(),
            tags_above: Vec::new(),
            constraints: Vec::new(),
            by_coord: Vec::new(),
            materialized: HashSet::new(),
            target: Vec::new(),
            nodes: 0,
        };
        s.target = f
            .terms()
            .map(|(m, lambda)| {
                let idxs: Vec<usize> = m.coords().iter().map(|c| s.intern(c.clone())).collect();
                (idxs, lambda.clone())
            })
            .collect();
        s
    }

    fn intern(&mut self, c: Coordinate) -> usize {
        if let Some(&i) = self.index.get(&c) {
            return i;
        }
        let base = match c.tag {
            IndexTag::Proj(_) => Some(self.intern(Coordinate::new(c.g.clone(), IndexTag::Zero))),
            IndexTag::Zero => None,
        };
        let i = self.coords.len();
        self.coords.push(c.clone());
        self.index.insert(c, i);
        self.assign.push(-1);
        self.base_of.push(base);
        self.tags_above.push(Vec::new());
        self.by_coord.push(Vec::new());
        if let Some(b) = base {
            self.tags_above[b].push(i);
        }
        i
    }

    fn check_caps(&self) -> Result<()> {
        if self.coords.len() > self.checker.limits.max_search_coords {
            return Err(Error::EnumerationCap {
                what: "search coordinates",
                needed: self.coords.len() as u128,
                cap: self.checker.limits.max_search_coords as u128,
            });
        }
        if self.nodes > self.checker.limits.max_search_nodes {
            return Err(Error::EnumerationCap {
                what: "search nodes",
                needed: self.nodes as u128,
                cap: self.checker.limits.max_search_nodes as u128,
            });
        }
        Ok(())
    }

    /// Adds the translated relation instances for `t` as compiled
    /// constraints; returns their indices.
    fn materialize(&mut self, t: &GroupElement) -> Vec<usize> {
        let funcs = self.checker.translated_instances(t);
        let mut added = Vec::new();
        for f in funcs.iter() {
            let ci = self.constraints.len();
            let monos: Vec<Mono> = f
                .terms()
                .map(|(m, lambda)| {
                    let idxs: Vec<usize> =
                        m.coords().iter().map(|c| self.intern(c.clone())).collect();
                    (idxs, lambda.clone())
                })
                .collect();
            let mut touched: BTreeSet<usize> = BTreeSet::new();
            for (idxs, _) in &monos {
                touched.extend(idxs.iter().copied());
            }
            self.constraints.push(Compiled { monos });
            for i in touched {
                self.by_coord[i].push(ci);
            }
            added.push(ci);
        }
        added
    }

    /// `None` → the monomial contains a 0; `Some(None)` → fully 1;
    /// `Some(Some(i))` → undetermined, first unset coordinate `i`.
    fn mono_state(&self, idxs: &[usize]) -> Option<Option<usize>> {
        let mut unset = None;
        for &i in idxs {
            match self.assign[i] {
                0 => return None,
                1 => {}
                _ => {
                    if unset.is_none() {
                        unset = Some(i);
                    }
                }
            }
        }
        Some(unset)
    }

    fn constraint_state(&self, c: &Compiled) -> ConsState {
        let mut base = Scalar::zero();
        let mut pending: Option<(usize, Scalar)> = None;
        for (idxs, lambda) in &c.monos {
            let mut zero = false;
            let mut first_unset: Option<usize> = None;
            let mut unset_count = 0usize;
            for &i in idxs {
                match self.assign[i] {
                    0 => {
                        zero = true;
                        break;
                    }
                    1 => {}
                    _ => {
                        if first_unset != Some(i) {
                            // coordinates within one monomial are distinct
                            unset_count += 1;
                            if first_unset.is_none() {
                                first_unset = Some(i);
                            }
                        }
                    }
                }
            }
            if zero {
                continue;
            }
            match (unset_count, first_unset) {
                (0, _) => base = &base + lambda,
                (1, Some(x)) => match &mut pending {
                    None => pending = Some((x, lambda.clone())),
                    Some((y, acc)) => {
                        if *y == x {
                            *acc = &*acc + lambda;
                        } else {
                            return ConsState::Open;
                        }
                    }
                },
                _ => return ConsState::Open,
            }
        }
        match pending {
            None => ConsState::Fixed(base),
            Some((coord, slope)) => {
                if slope.is_zero() {
                    ConsState::Fixed(base)
                } else {
                    ConsState::Linear { coord, base, slope }
                }
            }
        }
    }

    /// Assigns a value and propagates to fixpoint: admissibility closure,
    /// lazy materialization, and linear forcing on touched constraints.
    /// Returns `false` on conflict; every assignment made lands on `trail`.
    fn assign_and_propagate(&mut self, i: usize, v: i8, trail: &mut Vec<usize>) -> Result<bool> {
        let mut queue: Vec<(usize, i8)> = vec![(i, v)];
        while let Some((i, v)) = queue.pop() {
            match self.assign[i] {
                -1 => {}
                cur => {
                    if cur == v {
                        continue;
                    }
                    return Ok(false);
                }
            }
            self.assign[i] = v;
            trail.push(i);
            if v == 1 {
                if let Some(b) = self.base_of[i] {
                    queue.push((b, 1));
                }
            } else {
                for &t in &self.tags_above[i] {
                    queue.push((t, 0));
                }
            }
            let mut fresh: Vec<usize> = Vec::new();
            if v == 1 && self.coords[i].tag == IndexTag::Zero {
                let g = self.coords[i].g.clone();
                if g.in_ball(self.checker.bound) && !self.materialized.contains(&g) {
                    self.materialized.insert(g.clone());
                    fresh = self.materialize(&g);
                    self.check_caps()?;
                }
            }
            let affected: Vec<usize> = self.by_coord[i]
                .iter()
                .copied()
                .chain(fresh)
                .collect();
            for ci in affected {
                match self.constraint_state(&self.constraints[ci]) {
                    ConsState::Fixed(value) => {
                        if !value.is_zero() {
                            return Ok(false);
                        }
                    }
                    ConsState::Linear { coord, base, slope } => {
                        let can_zero = base.is_zero();
                        let can_one = (&base + &slope).is_zero();
                        match (can_zero, can_one) {
                            (true, false) => queue.push((coord, 0)),
                            (false, true) => queue.push((coord, 1)),
                            (false, false) => return Ok(false),
                            (true, true) => unreachable!("slope is nonzero"),
                        }
                    }
                    ConsState::Open => {}
                }
            }
        }
        Ok(true)
    }

    fn undo(&mut self, trail: Vec<usize>) {
        for i in trail {
            self.assign[i] = -1;
        }
    }

    /// `Err(coord)` while the target value still depends on an unset
    /// coordinate; `Ok(value)` once determined.
    fn target_state(&self) -> std::result::Result<Scalar, usize> {
        let mut value = Scalar::zero();
        for (idxs, lambda) in &self.target {
            match self.mono_state(idxs) {
                None => {}
                Some(None) => value = &value + lambda,
                Some(Some(unset)) => return Err(unset),
            }
        }
        Ok(value)
    }

    /// First unset coordinate of the first undetermined constraint.
    fn open_constraint_coord(&self) -> Option<usize> {
        for c in &self.constraints {
            for (idxs, _) in &c.monos {
                if let Some(Some(unset)) = self.mono_state(idxs) {
                    return Some(unset);
                }
            }
        }
        None
    }

    fn run(&mut self) -> Result<Option<WitnessAssignment>> {
        let e = GroupElement::identity(self.checker.rel.ctx());
        let root = self.intern(Coordinate::new(e, IndexTag::Zero));
        let mut trail = Vec::new();
        if !self.assign_and_propagate(root, 1, &mut trail)? {
            // No assignment satisfies the constraints at all, so nothing can
            // witness a nonzero value.
            return Ok(None);
        }
        self.dfs()
    }

    fn dfs(&mut self) -> Result<Option<WitnessAssignment>> {
        self.nodes += 1;
        self.check_caps()?;
        let branch = match self.target_state() {
            Err(coord) => Some(coord),
            Ok(value) => {
                if value.is_zero() {
                    // No extension changes the target: prune.
                    return Ok(None);
                }
                self.open_constraint_coord()
            }
        };
        let Some(coord) = branch else {
            // Every constraint is determined (and zero — conflicts prune
            // eagerly), the target is determined and nonzero, and every
            // remaining unset coordinate extends by 0 without activating
            // anything.
            let value = self.target_state().expect("target determined at leaf");
            let ones = self
                .coords
                .iter()
                .zip(&self.assign)
                .filter(|(_, &a)| a == 1)
                .map(|(c, _)| c.clone())
                .collect();
            return Ok(Some(WitnessAssignment { ones, value }));
        };
        for v in [0i8, 1] {
            let mut trail = Vec::new();
            if self.assign_and_propagate(coord, v, &mut trail)? {
                if let Some(w) = self.dfs()? {
                    return Ok(Some(w));
                }
            }
            self.undo(trail);
        }
        Ok(None)
    }

    /// Exhaustive leaf enumeration ignoring the target: collects the `ones`
    /// sets of up to `max_points` satisfying assignments.  The RNG decides
    /// which branch value is tried first at every node.
    fn enumerate(
        &mut self,
        max_points: usize,
        rng: &mut impl Rng,
        out: &mut Vec<Vec<Coordinate>>,
    ) -> Result<()> {
        let e = GroupElement::identity(self.checker.rel.ctx());
        let root = self.intern(Coordinate::new(e, IndexTag::Zero));
        let mut trail = Vec::new();
        if !self.assign_and_propagate(root, 1, &mut trail)? {
            return Ok(());
        }
        self.enumerate_dfs(max_points, rng, out)
    }

    fn enumerate_dfs(
        &mut self,
        max_points: usize,
        rng: &mut impl Rng,
        out: &mut Vec<Vec<Coordinate>>,
    ) -> Result<()> {
        if out.len() >= max_points {
            return Ok(());
        }
        self.nodes += 1;
        self.check_caps()?;
        let branch = self
            .open_constraint_coord()
            .or_else(|| (0..self.coords.len()).find(|&i| self.assign[i] == -1));
        let Some(coord) = branch else {
            let ones: Vec<Coordinate> = self
                .coords
                .iter()
                .zip(&self.assign)
                .filter(|(_, &a)| a == 1)
                .map(|(c, _)| c.clone())
                .collect();
            out.push(ones);
            return Ok(());
        };
        let first: i8 = if rng.gen_bool(0.5) { 1 } else { 0 };
        for v in [first, 1 - first] {
            if out.len() >= max_points {
                break;
            }
            let mut trail = Vec::new();
            if self.assign_and_propagate(coord, v, &mut trail)? {
                self.enumerate_dfs(max_points, rng, out)?;
            }
            self.undo(trail);
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Eager constraint system: the same verdict computed by materializing every
// translate up front and walking every assignment of the full universe.
// Feasible only at small bounds; the test suite uses it to cross-check the
// lazy search.

/// Fully materialized bounded constraint system.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub universe: Vec<Coordinate>,
    pub constraints: Vec<BoolFn>,
    pub bound: usize,
}

impl ConstraintSystem {
    /// Builds `{alpha(t, r) : |t| ≤ bound, r instantiated}` and the closed
    /// coordinate universe, extended by the support of `target`.
    pub fn build(
        rel: &RelationSet,
        bound: usize,
        target: &BoolFn,
        limits: &Limits,
    ) -> Result<Self> {
        let instances = rel.instantiate(bound, limits)?;
        let mut constraints = Vec::new();
        for t in ball(rel.ctx(), bound, limits)? {
            for r in &instances {
                let c = alpha(&t, r);
                if !c.is_zero() {
                    constraints.push(c);
                }
            }
        }
        let mut universe: BTreeSet<Coordinate> = BTreeSet::new();
        for f in constraints.iter().chain(std::iter::once(target)) {
            universe.extend(f.closed_support());
        }
        Ok(ConstraintSystem {
            universe: universe.into_iter().collect(),
            constraints,
            bound,
        })
    }

    /// Walks every admissible assignment of the universe; sound and, over
    /// this finite universe, complete.
    pub fn vanishes_eager(&self, target: &BoolFn, limits: &Limits) -> Result<Verdict> {
        let mut universe: BTreeSet<Coordinate> = self.universe.iter().cloned().collect();
        universe.extend(target.closed_support());
        let free: Vec<&Coordinate> = universe
            .iter()
            .filter(|c| !(c.tag == IndexTag::Zero && c.g.is_identity()))
            .collect();
        let n = free.len();
        let needed = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
        if needed > limits.max_assignments as u128 {
            return Err(Error::EnumerationCap {
                what: "eager constraint assignments",
                needed,
                cap: limits.max_assignments as u128,
            });
        }
        let index: HashMap<&Coordinate, usize> =
            free.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mask_of = |f: &BoolFn| -> Vec<(u128, Scalar)> {
            f.terms()
                .map(|(m, s)| {
                    let mut mask = 0u128;
                    for c in m.coords() {
                        mask |= 1 << index[c];
                    }
                    (mask, s.clone())
                })
                .collect()
        };
        let compiled: Vec<Vec<(u128, Scalar)>> = self.constraints.iter().map(&mask_of).collect();
        let target_masks = mask_of(target);
        let deps: Vec<Option<usize>> = free
            .iter()
            .map(|c| match c.tag {
                IndexTag::Proj(_) if !c.g.is_identity() => {
                    Some(index[&Coordinate::new(c.g.clone(), IndexTag::Zero)])
                }
                _ => None,
            })
            .collect();
        let eval = |masks: &[(u128, Scalar)], a: u128| -> Scalar {
            let mut v = Scalar::zero();
            for (mask, s) in masks {
                if a & mask == *mask {
                    v = &v + s;
                }
            }
            v
        };
        'outer: for a in 0..(1u128 << n) {
            for (i, dep) in deps.iter().enumerate() {
                if let Some(j) = dep {
                    if (a >> i) & 1 == 1 && (a >> *j) & 1 == 0 {
                        continue 'outer;
                    }
                }
            }
            for c in &compiled {
                if !eval(c, a).is_zero() {
                    continue 'outer;
                }
            }
            let value = eval(&target_masks, a);
            if !value.is_zero() {
                let ones = free
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (a >> i) & 1 == 1)
                    .map(|(_, c)| (*c).clone())
                    .collect();
                return Ok(Verdict::Unknown(WitnessAssignment { ones, value }));
            }
        }
        Ok(Verdict::Vanishes)
    }
}
