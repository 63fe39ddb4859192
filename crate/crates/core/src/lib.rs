//! Exact symbolic computation in partial group algebras with projections
//! and relations.
//!
//! The crate models the commutative coordinate algebra spanned by the
//! characteristic functions `1[g;i]` on the space of admissible subsets of
//! tagged group elements, the partial action of the group on that algebra by
//! translation, and the *-algebra of finite formal sums `Σ a_g δ_g` built
//! from it.  On top of those it provides relation sets, a sound bounded
//! decision procedure for "vanishes on the invariant subset cut out by the
//! relations", and builders/checkers for two presentation families:
//! two-matrix Cuntz-Krieger style algebras and directed-graph algebras.
//!
//! All scalar arithmetic is exact (Gaussian rationals); equality of algebra
//! elements is a syntactic check on canonical forms, cross-checked by
//! point-evaluation oracles in the test suite.  Every value is immutable
//! after construction and every operation is a pure function, so everything
//! here is safe to share across threads.

pub mod action;
pub mod coords;
pub mod crossed;
pub mod error;
pub mod group;
pub mod parse;
pub mod presentations;
pub mod relations;
pub mod scalar;
pub mod verify;

pub use action::{alpha, translate_point};
pub use coords::{BoolFn, Coordinate, FinitePoint, IndexTag, Monomial};
pub use crossed::CPElement;
pub use error::{Error, Limits, Result};
pub use group::{Context, Ctx, GroupElement};
pub use relations::{OmegaOutcome, RelationSet, Verdict};
pub use scalar::{NormReal, Scalar};
