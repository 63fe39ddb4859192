//! Exact scalars: Gaussian rationals and nonnegative reals of the form
//! `Σ c·√d`.
//!
//! Relation coefficients are integers in practice, but the algebra is closed
//! under complex conjugation and rational scaling, so the scalar type is the
//! full field Q(i).  Norm values are square roots of rationals and sums
//! thereof; they are kept in exact radical form so that zero tests and
//! equality never involve floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// An exact Gaussian rational `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::new(r, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// Exact squared modulus `re² + im²`.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for Scalar {
    /// Renders per the expression grammar: `rational [('+'|'-') rational 'i']`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// A nonnegative real `Σ_d c_d·√d` with `d` squarefree positive integers and
/// `c_d` nonnegative rationals.  Distinct squarefree radicands are linearly
/// independent over Q, so structural equality is genuine equality of reals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormReal {
    /// radicand (squarefree, ≥ 1) → coefficient (> 0); empty map is 0.
    terms: std::collections::BTreeMap<BigInt, BigRational>,
}

impl NormReal {
    pub fn zero() -> Self {
        NormReal {
            terms: Default::default(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        assert!(!c.is_negative(), "NormReal is nonnegative");
        let mut n = NormReal::zero();
        if !c.is_zero() {
            n.terms.insert(BigInt::one(), c);
        }
        n
    }

    /// The exact square root of a nonnegative rational, in reduced radical
    /// form: `√(p/q) = (1/q)·√(pq) = (s/q)·√d` with `d` squarefree.
    ///
    /// Panics if the radicand is too large to reduce by trial division;
    /// values at that scale indicate a misuse of the norm API.
    pub fn sqrt_of(q: &BigRational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            return NormReal::zero();
        }
        let radicand = q.numer() * q.denom();
        let (square_part, free_part) = split_square(&radicand);
        let coeff = BigRational::new(square_part, q.denom().clone());
        let mut n = NormReal::zero();
        n.terms.insert(free_part, coeff);
        n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact rational value, when no irrational radicand is present.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (d, c) = self.terms.iter().next().unwrap();
            if d.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| rational_to_f64(c) * bigint_to_f64(d).sqrt())
            .sum()
    }

    pub fn add(&self, rhs: &NormReal) -> NormReal {
        let mut terms = self.terms.clone();
        for (d, c) in &rhs.terms {
            let entry = terms.entry(d.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(d);
            }
        }
        NormReal { terms }
    }

    pub fn mul(&self, rhs: &NormReal) -> NormReal {
        let mut out = NormReal::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                // √d1·√d2 = √(d1·d2), then re-reduce.
                let mut term = NormReal::sqrt_of(&BigRational::from_integer(d1 * d2));
                let (d, c) = term.terms.pop_first().unwrap();
                let mut piece = NormReal::zero();
                piece.terms.insert(d, c * c1 * c2);
                out = out.add(&piece);
            }
        }
        out
    }
}

impl fmt::Display for NormReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d.is_one() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "sqrt({})", d)?;
            } else {
                write!(f, "{}*sqrt({})", c, d)?;
            }
        }
        Ok(())
    }
}

/// Splits `n ≥ 1` as `s²·d` with `d` squarefree; returns `(s, d)`.
///
/// Trial division up to 2^20, then the residue is either 1, a perfect
/// square, or squarefree provided it is below (2^20)³; beyond that we bail
/// out rather than return an unreduced radical.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut remaining = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(1u64 << 20);
    while &p * &p <= remaining && p <= bound {
        let mut count = 0u32;
        while (&remaining % &p).is_zero() {
            remaining /= &p;
            count += 1;
        }
        if count > 0 {
            square *= p.pow(count / 2);
            if count % 2 == 1 {
                free *= &p;
            }
        }
        p += 1u32;
    }
    if !remaining.is_one() {
        if let Some(root) = exact_sqrt(&remaining) {
            square *= root;
        } else if remaining < (&bound * &bound * &bound) {
            free *= &remaining;
        } else {
            panic!("norm radicand {} too large for exact radical reduction", n);
        }
    }
    (square, free)
}

/// Integer square root when exact.
fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let root = n.sqrt();
    if &(&root * &root) == n {
        Some(root)
    } else {
        None
    }
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    use num::ToPrimitive;
    n.to_f64().unwrap_or(f64::INFINITY)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    bigint_to_f64(r.numer()) / bigint_to_f64(r.denom())
}
