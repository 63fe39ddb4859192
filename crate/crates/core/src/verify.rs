//! Seeded exact identity suites over the core algebra: the translation law
//! for `alpha` on restricted generators, the composition law of the partial
//! action, covariance of the canonical generator images, the collapsing
//! five-factor conjugation chain, formal-sum associativity and involution
//! laws, the partial-representation laws, commutation of conjugated
//! projections, and the ℓ¹-norm laws.
//!
//! Every check is an exact canonical-form comparison; a failure is
//! definitive, never a tolerance artifact.  Reports are deterministic for a
//! fixed seed and sample count.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{alpha, translate_point};
use crate::coords::{BoolFn, Coordinate, FinitePoint, IndexTag};
use crate::crossed::CPElement;
use crate::error::{Limits, Result};
use crate::group::{ball, Context, Ctx, GroupElement};
use crate::scalar::Scalar;

/// Outcome of one suite: the number of cases run and the first few
/// counterexample descriptions (empty means the suite passed).
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, description: String) {
        if self.failures.len() < 5 {
            self.failures.push(description);
        }
    }
}

/// Aggregated outcome of [`run_core_suites`].
#[derive(Debug, Clone)]
pub struct CoreReport {
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<SuiteReport>,
}

impl CoreReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

/// Deterministic sampler over one context.
pub struct Sampler {
    ctx: Ctx,
    rng: ChaCha8Rng,
    pool: Vec<GroupElement>,
}

impl Sampler {
    /// Samples from the ball of radius `radius`; seeded, deterministic.
    pub fn new(ctx: &Ctx, radius: usize, seed: u64, limits: &Limits) -> Result<Self> {
        Ok(Sampler {
            ctx: ctx.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: ball(ctx, radius, limits)?,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn element(&mut self) -> GroupElement {
        self.pool.choose(&mut self.rng).expect("nonempty ball").clone()
    }

    pub fn tag(&mut self) -> IndexTag {
        let j_count = self.ctx.proj_labels().len();
        if j_count == 0 || self.rng.gen_bool(0.4) {
            IndexTag::Zero
        } else {
            IndexTag::Proj(self.rng.gen_range(0..j_count))
        }
    }

    pub fn coordinate(&mut self) -> Coordinate {
        let g = self.element();
        let tag = self.tag();
        Coordinate::new(g, tag)
    }

    /// Scalars drawn from a small exact set (closed under conjugation).
    pub fn scalar(&mut self) -> Scalar {
        let one = Scalar::one();
        let i = Scalar::i();
        let choices = [
            one.clone(),
            -&one,
            &one + &one,
            i.clone(),
            -&i,
            &one + &i,
            &one - &i,
            Scalar::new(
                num::BigRational::new(1.into(), 2.into()),
                num::BigRational::from_integer(0.into()),
            ),
        ];
        choices[self.rng.gen_range(0..choices.len())].clone()
    }

    /// A product of up to `max_factors` generator characteristic functions.
    pub fn product_of_chars(&mut self, max_factors: usize) -> BoolFn {
        let count = self.rng.gen_range(1..=max_factors);
        let mut f = BoolFn::unit(&self.ctx);
        for _ in 0..count {
            let c = self.coordinate();
            f = f.mul(&BoolFn::char_fn(&c.g, c.tag));
        }
        f
    }

    /// A linear combination of up to `max_terms` monomials.
    pub fn boolfn(&mut self, max_terms: usize, max_factors: usize) -> BoolFn {
        let terms = self.rng.gen_range(0..=max_terms);
        let mut f = BoolFn::zero(&self.ctx);
        for _ in 0..terms {
            let coeff = self.scalar();
            f = f.add(&self.product_of_chars(max_factors).scalar_mul(&coeff));
        }
        f
    }

    /// A one-term formal sum `(λ·∏ chars)·1[g] δ_g`.
    pub fn cp_monomial(&mut self) -> CPElement {
        let f = self.product_of_chars(2).scalar_mul(&self.scalar());
        let g = self.element();
        CPElement::mono(&f, &g)
    }

    /// A random finitely supported point built from up to `max_coords`
    /// sampled coordinates.
    pub fn point(&mut self, max_coords: usize) -> FinitePoint {
        let count = self.rng.gen_range(0..=max_coords);
        let coords: Vec<Coordinate> = (0..count).map(|_| self.coordinate()).collect();
        FinitePoint::closure(&self.ctx, coords)
    }
}

fn chr(g: &GroupElement, tag: IndexTag) -> BoolFn {
    BoolFn::char_fn(g, tag)
}

/// `alpha(t, 1[t⁻¹]·1[r;i]) = 1[t]·1[tr;i]` on sampled `(t, r, i)`.
pub fn suite_alpha_translation(s: &mut Sampler, cases: usize) -> SuiteReport {
    let mut report = SuiteReport {
        name: "alpha-generator-translation",
        cases,
        failures: vec![],
    };
    for _ in 0..cases {
        let t = s.element();
        let c = s.coordinate();
        let lhs = alpha(&t, &chr(&t.inv(), IndexTag::Zero).mul(&chr(&c.g, c.tag)));
        let rhs = chr(&t, IndexTag::Zero).mul(&chr(&t.mul(&c.g), c.tag));
        if lhs != rhs {
            report.record(format!("t = {t}, coordinate = {c}: {lhs} ≠ {rhs}"));
        }
    }
    report
}

/// `alpha(t, alpha(s, f)) = 1[t]·alpha(ts, 1[s⁻¹]·f)` on sampled triples.
pub fn suite_action_composition(s: &mut Sampler, cases: usize) -> SuiteReport {
    let mut report = SuiteReport {
        name: "partial-action-composition",
        cases,
        failures: vec![],
    };
    for _ in 0..cases {
        let t = s.element();
        let u = s.element();
        let f = s.boolfn(3, 2);
        let lhs = alpha(&t, &alpha(&u, &f));
        let rhs = chr(&t, IndexTag::Zero).mul(&alpha(
            &t.mul(&u),
            &chr(&u.inv(), IndexTag::Zero).mul(&f),
        ));
        if lhs != rhs {
            report.record(format!("t = {t}, s = {u}, f = {f}"));
        }
    }
    report
}

/// `sup|alpha(t, f)| = sup|f|` for `f` supported in the domain of `t`.
pub fn suite_action_isometry(s: &mut Sampler, cases: usize, limits: &Limits) -> SuiteReport {
    let mut report = SuiteReport {
        name: "partial-action-isometry",
        cases,
        failures: vec![],
    };
    for _ in 0..cases {
        let t = s.element();
        let f = chr(&t.inv(), IndexTag::Zero).mul(&s.boolfn(3, 2));
        match (f.sup_norm(limits), alpha(&t, &f).sup_norm(limits)) {
            (Ok(n1), Ok(n2)) => {
                if n1 != n2 {
                    report.record(format!("t = {t}, f = {f}: {n1} ≠ {n2}"));
                }
            }
            _ => report.record(format!("t = {t}, f = {f}: norm enumeration failed")),
        }
    }
    report
}

/// `alpha(t, f)(ξ) = f(t⁻¹ξ)` when `t ∈ ξ`, and `0` otherwise.
pub fn suite_point_compatibility(s: &mut Sampler, cases: usize) -> SuiteReport {
    let mut report = SuiteReport {
        name: "action-point-compatibility",
        cases,
        failures: vec![],
    };
    for _ in 0..cases {
        let t = s.element();
        let f = s.boolfn(3, 2);
        let xi = s.point(3);
        let lhs = alpha(&t, &f).evaluate(&xi);
        let rhs = if xi.contains(&Coordinate::new(t.clone(), IndexTag::Zero)) {
            f.evaluate(&translate_point(&t.inv(), &xi).expect("t ∈ ξ"))
        } else {
            Scalar::zero()
        };
        if lhs != rhs {
            report.record(format!("t = {t}, f = {f}, ξ = {xi}"));
        }
    }
    report
}

/// `pi(t)·embed(1[t⁻¹]·a)·pi(t)* = embed(alpha(t, 1[t⁻¹]·a))`.
pub fn suite_covariance(s: &mut Sampler, cases: usize) -> SuiteReport {
    let mut report = SuiteReport {
        name: "covariant-pair",
        cases,
        failures: vec![],
    };
    for _ in 0..cases {
        let t = s.element();
        let a = s.product_of_chars(3);
        let restricted = chr(&t.inv(), IndexTag::Zero).mul(&a);
        let pi_t = CPElement::pi(&t);
        let lhs = pi_t.mul(&CPElement::embed(&restricted)).mul(&pi_t.star());
        let rhs = CPElement::embed(&alpha(&t, &restricted));
        if lhs != rhs {
            report.record(format!("t = {t}, a = {a}"));
        }
    }
    report
}

/// `1[t]δ_e · pi(r) · proj(i) · pi(r⁻¹) · 1[t]δ_t = (1[t]·1[r;i]) δ_t`.
pub fn suite_conjugation_chain(s: &mut Sampler, cases: usize) -> SuiteReport {
    let mut report = SuiteReport {
        name: "generator-conjugation-chain",
        cases,
        failures: vec![],
    };
    let j_count = s.ctx().proj_labels().len().max(1);
    for _ in 0..cases {
        let t = s.element();
        let r = s.element();
        let j = s.rng().gen_range(0..j_count);
        let ctx = s.ctx().clone();
        let lhs = CPElement::embed(&chr(&t, IndexTag::Zero))
            .mul(&CPElement::pi(&r))
            .mul(&CPElement::proj(&ctx, j))
            .mul(&CPElement::pi(&r.inv()))
            .mul(&CPElement::mono(&chr(&t, IndexTag::Zero), &t));
        let rhs = CPElement::mono(
            &chr(&t, IndexTag::Zero).mul(&chr(&r, IndexTag::Proj(j))),
            &t,
        );
        if lhs != rhs {
            report.record(format!("t = {t}, r = {r}, j = {j}"));
        }
    }
    report
}

/// Associativity of the twisted product on sampled one-term elements.
pub fn suite_cp_associativity(s: &mut Sampler, cases: usize) -> SuiteReport {
    let mut report = SuiteReport {
        name: "formal-sum-associativity",
        cases,
        failures: vec![],
    };
    for _ in 0..cases {
        let x = s.cp_monomial();
        let y = s.cp_monomial();
        let z = s.cp_monomial();
        if x.mul(&y).mul(&z) != x.mul(&y.mul(&z)) {
            report.record(format!("x = {x}, y = {y}, z = {z}"));
        }
    }
    report
}

/// Involution laws: anti-multiplicative, conjugate-linear, involutive.
pub fn suite_star_laws(s: &mut Sampler, cases: usize) -> SuiteReport {
    let mut report = SuiteReport {
        name: "involution-laws",
        cases,
        failures: vec![],
    };
    for _ in 0..cases {
        let x = s.cp_monomial().add(&s.cp_monomial());
        let y = s.cp_monomial();
        let lambda = s.scalar();
        if x.mul(&y).star() != y.star().mul(&x.star()) {
            report.record(format!("(xy)* ≠ y*x* for x = {x}, y = {y}"));
        }
        if x.scalar_mul(&lambda).star() != x.star().scalar_mul(&lambda.conj()) {
            report.record(format!("(λx)* ≠ conj(λ)x* for x = {x}"));
        }
        if x.star().star() != x {
            report.record(format!("x** ≠ x for x = {x}"));
        }
    }
    report
}

/// The partial-representation laws of the canonical generator images:
/// `pi(e) = 1`, `pi(r)* = pi(r⁻¹)`, `pi(r)pi(s)pi(s⁻¹) = pi(rs)pi(s⁻¹)`,
/// and `pi(r)*pi(r)pi(s) = pi(r)*pi(rs)`.
pub fn suite_partial_representation(s: &mut Sampler, cases: usize) -> SuiteReport {
    let mut report = SuiteReport {
        name: "partial-representation-laws",
        cases,
        failures: vec![],
    };
    let e = GroupElement::identity(s.ctx());
    if CPElement::pi(&e) != CPElement::one(s.ctx()) {
        report.record("pi(e) ≠ 1".into());
    }
    for _ in 0..cases {
        let r = s.element();
        let u = s.element();
        if CPElement::pi(&r).star() != CPElement::pi(&r.inv()) {
            report.record(format!("pi({r})* ≠ pi({r}⁻¹)"));
        }
        let lhs = CPElement::pi(&r)
            .mul(&CPElement::pi(&u))
            .mul(&CPElement::pi(&u.inv()));
        let rhs = CPElement::pi(&r.mul(&u)).mul(&CPElement::pi(&u.inv()));
        if lhs != rhs {
            report.record(format!("[r][s][s⁻¹] ≠ [rs][s⁻¹] for r = {r}, s = {u}"));
        }
        let lhs = CPElement::pi(&r)
            .star()
            .mul(&CPElement::pi(&r))
            .mul(&CPElement::pi(&u));
        let rhs = CPElement::pi(&r).star().mul(&CPElement::pi(&r.mul(&u)));
        if lhs != rhs {
            report.record(format!("[r]*[r][s] ≠ [r]*[rs] for r = {r}, s = {u}"));
        }
    }
    report
}

/// Range projections and conjugated projections commute pairwise.
pub fn suite_commutation(s: &mut Sampler, cases: usize) -> SuiteReport {
    let mut report = SuiteReport {
        name: "conjugated-projection-commutation",
        cases,
        failures: vec![],
    };
    let j_count = s.ctx().proj_labels().len().max(1);
    for _ in 0..cases {
        let r = s.element();
        let u = s.element();
        let i = s.rng().gen_range(0..j_count);
        let j = s.rng().gen_range(0..j_count);
        let ctx = s.ctx().clone();
        let range = CPElement::pi(&r).mul(&CPElement::pi(&r).star());
        let conj_i = CPElement::pi(&r)
            .mul(&CPElement::proj(&ctx, i))
            .mul(&CPElement::pi(&r).star());
        let conj_j = CPElement::pi(&u)
            .mul(&CPElement::proj(&ctx, j))
            .mul(&CPElement::pi(&u).star());
        if range.mul(&conj_j) != conj_j.mul(&range) {
            report.record(format!("[r][r]* and [s]P[s]* do not commute: r = {r}, s = {u}"));
        }
        if conj_i.mul(&conj_j) != conj_j.mul(&conj_i) {
            report.record(format!("conjugated projections do not commute: r = {r}, s = {u}"));
        }
    }
    report
}

/// ℓ¹-norm laws: submultiplicative, invariant under the involution.
pub fn suite_norm_laws(s: &mut Sampler, cases: usize, limits: &Limits) -> SuiteReport {
    let mut report = SuiteReport {
        name: "l1-norm-laws",
        cases,
        failures: vec![],
    };
    for _ in 0..cases {
        let x = s.cp_monomial().add(&s.cp_monomial());
        let y = s.cp_monomial();
        let (Ok(nx), Ok(ny), Ok(nxy), Ok(nstar)) = (
            x.one_norm(limits),
            y.one_norm(limits),
            x.mul(&y).one_norm(limits),
            x.star().one_norm(limits),
        ) else {
            report.record("norm enumeration failed".into());
            continue;
        };
        if nstar != nx {
            report.record(format!("‖x*‖ ≠ ‖x‖ for x = {x}"));
        }
        // rational values compare exactly; radical sums via floats with
        // headroom well above the representation error
        let (lhs, rhs) = (nxy.clone(), nx.mul(&ny));
        let sub_ok = match (lhs.as_rational(), rhs.as_rational()) {
            (Some(l), Some(r)) => l <= r,
            _ => lhs.to_f64() <= rhs.to_f64() + 1e-9,
        };
        if !sub_ok {
            report.record(format!("‖xy‖ > ‖x‖·‖y‖ for x = {x}, y = {y}"));
        }
    }
    report
}

/// The default context for the seeded suites: two free generators, two
/// projection labels.
pub fn default_suite_ctx() -> Ctx {
    Context::free(["a", "b"], ["1", "2"]).expect("valid context")
}

/// Runs every suite with `samples` cases each, on the default context with
/// samples drawn from the radius-3 ball.
pub fn run_core_suites(seed: u64, samples: usize, limits: &Limits) -> Result<CoreReport> {
    let ctx = default_suite_ctx();
    let mut suites = Vec::new();
    let mut stream = 0u64;
    let sampler = |stream: &mut u64| -> Result<Sampler> {
        *stream += 1;
        Sampler::new(&ctx, 3, seed.wrapping_add(*stream), limits)
    };
    suites.push(suite_alpha_translation(&mut sampler(&mut stream)?, samples));
    suites.push(suite_action_composition(&mut sampler(&mut stream)?, samples));
    suites.push(suite_action_isometry(&mut sampler(&mut stream)?, samples, limits));
    suites.push(suite_point_compatibility(&mut sampler(&mut stream)?, samples));
    suites.push(suite_covariance(&mut sampler(&mut stream)?, samples));
    suites.push(suite_conjugation_chain(&mut sampler(&mut stream)?, samples));
    suites.push(suite_cp_associativity(&mut sampler(&mut stream)?, samples));
    suites.push(suite_star_laws(&mut sampler(&mut stream)?, samples));
    suites.push(suite_partial_representation(&mut sampler(&mut stream)?, samples));
    suites.push(suite_commutation(&mut sampler(&mut stream)?, samples));
    suites.push(suite_norm_laws(&mut sampler(&mut stream)?, samples, limits));
    Ok(CoreReport {
        seed,
        samples,
        suites,
    })
}
