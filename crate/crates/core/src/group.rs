//! Exact group arithmetic: free groups on a finite alphabet (reduced words)
//! and finite groups given by a multiplication table.
//!
//! A [`Context`] also carries the projection label set `J` so that every
//! value in the crate (group elements, coordinate functions, formal sums)
//! shares one ambient context.  Mixing values from different contexts is a
//! caller bug and panics; resource-bounded enumeration returns errors.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Limits, Result};

/// Shared, immutable ambient context.
pub type Ctx = Arc<Context>;

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum GroupData {
    /// Free group on named generators.
    Free { alphabet: Vec<String> },
    /// Finite group by multiplication table (row-major `order × order`).
    Finite {
        order: usize,
        table: Vec<usize>,
        identity: usize,
        inverse: Vec<usize>,
        names: Vec<String>,
    },
}

/// Group plus the projection label set `J`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Context {
    group: GroupData,
    proj_labels: Vec<String>,
}

fn validate_name(name: &str, what: &str) -> Result<()> {
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(Error::Validation(format!(
            "{what} `{name}` must be nonempty and use only [A-Za-z0-9_]"
        )));
    }
    Ok(())
}

impl Context {
    /// A free-group context.  Generator names must be distinct, nonempty,
    /// drawn from `[A-Za-z0-9_]` and different from the reserved identity
    /// name `e`; projection labels likewise, with `0` reserved for the
    /// untagged copy of the group.  An empty alphabet gives the trivial
    /// free group (used by graphs without edges).
    pub fn free<S: Into<String>, T: Into<String>>(
        alphabet: impl IntoIterator<Item = S>,
        proj_labels: impl IntoIterator<Item = T>,
    ) -> Result<Ctx> {
        let alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        for name in &alphabet {
            validate_name(name, "generator")?;
            if name == "e" {
                return Err(Error::Validation("generator name `e` is reserved".into()));
            }
        }
        let mut sorted = alphabet.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != alphabet.len() {
            return Err(Error::Validation("generator names must be distinct".into()));
        }
        let proj_labels = Self::validated_labels(proj_labels)?;
        Ok(Arc::new(Context {
            group: GroupData::Free { alphabet },
            proj_labels,
        }))
    }

    /// A finite-group context from a multiplication table.  The table is
    /// checked exhaustively: closure, associativity, two-sided identity and
    /// inverses.
    pub fn finite<S: Into<String>>(
        table: Vec<Vec<usize>>,
        proj_labels: impl IntoIterator<Item = S>,
    ) -> Result<Ctx> {
        let order = table.len();
        if order == 0 {
            return Err(Error::Validation("finite group must have order ≥ 1".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for row in &table {
            if row.len() != order {
                return Err(Error::Validation("multiplication table must be square".into()));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::Validation(format!(
                        "table entry {v} out of range 0..{order}"
                    )));
                }
                flat.push(v);
            }
        }
        let mul = |a: usize, b: usize| flat[a * order + b];
        let identity = (0..order)
            .find(|&c| (0..order).all(|a| mul(c, a) == a && mul(a, c) == a))
            .ok_or_else(|| Error::Validation("table has no identity element".into()))?;
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            inverse.push(
                (0..order)
                    .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                    .ok_or_else(|| Error::Validation(format!("element {a} has no inverse")))?,
            );
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::Validation(format!(
                            "table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let names = (0..order).map(|i| format!("g{i}")).collect();
        let proj_labels = Self::validated_labels(proj_labels)?;
        Ok(Arc::new(Context {
            group: GroupData::Finite {
                order,
                table: flat,
                identity,
                inverse,
                names,
            },
            proj_labels,
        }))
    }

    fn validated_labels<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Vec<String>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for l in &labels {
            validate_name(l, "projection label")?;
            if l == "0" {
                return Err(Error::Validation("projection label `0` is reserved".into()));
            }
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::Validation("projection labels must be distinct".into()));
        }
        Ok(labels)
    }

    pub fn is_free(&self) -> bool {
        matches!(self.group, GroupData::Free { .. })
    }

    pub fn alphabet(&self) -> &[String] {
        match &self.group {
            GroupData::Free { alphabet } => alphabet,
            GroupData::Finite { .. } => panic!("finite context has no alphabet"),
        }
    }

    pub fn proj_labels(&self) -> &[String] {
        &self.proj_labels
    }

    /// Index of a projection label in `J`.
    pub fn proj_index(&self, label: &str) -> Option<usize> {
        self.proj_labels.iter().position(|l| l == label)
    }
}

/// Reduced word (free) or table index (finite).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    /// Signed letters `+(i+1)` / `-(i+1)` for generator index `i`; adjacent
    /// cancelling pairs never occur.
    Free(Vec<i32>),
    Finite(usize),
}

/// An element of the context's group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    ctx: Ctx,
    word: Word,
}

fn assert_same_ctx(a: &Ctx, b: &Ctx) {
    assert!(
        Arc::ptr_eq(a, b) || a == b,
        "values from different contexts cannot be combined"
    );
}

/// Length-lexicographic letter rank: generator index, then `+` before `-`.
fn letter_rank(l: i32) -> (u32, u8) {
    (l.unsigned_abs() - 1, u8::from(l < 0))
}

impl GroupElement {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// The identity element of the context's group.
    pub fn identity(ctx: &Ctx) -> Self {
        let word = match &ctx.group {
            GroupData::Free { .. } => Word::Free(vec![]),
            GroupData::Finite { identity, .. } => Word::Finite(*identity),
        };
        GroupElement {
            ctx: ctx.clone(),
            word,
        }
    }

    /// The `idx`-th free generator.
    pub fn generator(ctx: &Ctx, idx: usize) -> Self {
        match &ctx.group {
            GroupData::Free { alphabet } => {
                assert!(idx < alphabet.len(), "generator index out of range");
                GroupElement {
                    ctx: ctx.clone(),
                    word: Word::Free(vec![idx as i32 + 1]),
                }
            }
            GroupData::Finite { .. } => panic!("finite context has no free generators"),
        }
    }

    /// Finite-group element by table index.
    pub fn finite(ctx: &Ctx, idx: usize) -> Self {
        match &ctx.group {
            GroupData::Finite { order, .. } => {
                assert!(idx < *order, "element index out of range");
                GroupElement {
                    ctx: ctx.clone(),
                    word: Word::Finite(idx),
                }
            }
            GroupData::Free { .. } => panic!("free context has no table indices"),
        }
    }

    /// Free element from signed letters; the result is reduced.
    pub fn from_letters(ctx: &Ctx, letters: &[i32]) -> Self {
        let n = match &ctx.group {
            GroupData::Free { alphabet } => alphabet.len() as i32,
            GroupData::Finite { .. } => panic!("letters require a free context"),
        };
        let mut reduced: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            assert!(l != 0 && l.abs() <= n, "letter out of range");
            if reduced.last().is_some_and(|&p| p == -l) {
                reduced.pop();
            } else {
                reduced.push(l);
            }
        }
        GroupElement {
            ctx: ctx.clone(),
            word: Word::Free(reduced),
        }
    }

    pub fn is_identity(&self) -> bool {
        match &self.word {
            Word::Free(w) => w.is_empty(),
            Word::Finite(i) => match &self.ctx.group {
                GroupData::Finite { identity, .. } => i == identity,
                GroupData::Free { .. } => unreachable!(),
            },
        }
    }

    /// Reduced product `self · rhs`.
    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        assert_same_ctx(&self.ctx, &rhs.ctx);
        match (&self.word, &rhs.word) {
            (Word::Free(u), Word::Free(v)) => {
                let mut out = u.clone();
                for &l in v {
                    if out.last().is_some_and(|&p| p == -l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                GroupElement {
                    ctx: self.ctx.clone(),
                    word: Word::Free(out),
                }
            }
            (Word::Finite(a), Word::Finite(b)) => match &self.ctx.group {
                GroupData::Finite { order, table, .. } => GroupElement {
                    ctx: self.ctx.clone(),
                    word: Word::Finite(table[a * order + b]),
                },
                GroupData::Free { .. } => unreachable!(),
            },
            _ => unreachable!("word kind always matches the context"),
        }
    }

    /// Group inverse.
    pub fn inv(&self) -> GroupElement {
        let word = match &self.word {
            Word::Free(w) => Word::Free(w.iter().rev().map(|&l| -l).collect()),
            Word::Finite(i) => match &self.ctx.group {
                GroupData::Finite { inverse, .. } => Word::Finite(inverse[*i]),
                GroupData::Free { .. } => unreachable!(),
            },
        };
        GroupElement {
            ctx: self.ctx.clone(),
            word,
        }
    }

    /// Number of letters of the reduced form.  Defined for free contexts
    /// only; panics otherwise.
    pub fn len(&self) -> usize {
        match &self.word {
            Word::Free(w) => w.len(),
            Word::Finite(_) => panic!("word length is undefined in a finite group"),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// True iff `|self · rhs| = |self| + |rhs|`, i.e. no cancellation.
    pub fn is_length_additive(&self, rhs: &GroupElement) -> bool {
        self.mul(rhs).len() == self.len() + rhs.len()
    }

    /// Signed letters of a free element.
    pub fn letters(&self) -> &[i32] {
        match &self.word {
            Word::Free(w) => w,
            Word::Finite(_) => panic!("finite elements have no letters"),
        }
    }

    /// The proper nonempty prefixes of a free reduced word, shortest first.
    pub fn proper_prefixes(&self) -> Vec<GroupElement> {
        let letters = self.letters();
        (1..letters.len())
            .map(|k| GroupElement {
                ctx: self.ctx.clone(),
                word: Word::Free(letters[..k].to_vec()),
            })
            .collect()
    }

    /// `|g| ≤ bound`, with every finite-group element inside every ball.
    pub fn in_ball(&self, bound: usize) -> bool {
        match &self.word {
            Word::Free(w) => w.len() <= bound,
            Word::Finite(_) => true,
        }
    }
}

/// All elements of length ≤ `bound`, in length-lexicographic order
/// (generator index, then `+` before `-`).  Finite contexts return all
/// elements and ignore the bound.
pub fn ball(ctx: &Ctx, bound: usize, limits: &Limits) -> Result<Vec<GroupElement>> {
    match &ctx.group {
        GroupData::Finite { order, .. } => {
            if *order > limits.max_ball {
                return Err(Error::EnumerationCap {
                    what: "ball",
                    needed: *order as u128,
                    cap: limits.max_ball as u128,
                });
            }
            Ok((0..*order).map(|i| GroupElement::finite(ctx, i)).collect())
        }
        GroupData::Free { alphabet } => {
            let n = alphabet.len() as u128;
            let mut expected: u128 = 1;
            let mut layer: u128 = 2 * n;
            for _ in 0..bound {
                expected += layer;
                layer *= (2 * n).saturating_sub(1);
            }
            if expected > limits.max_ball as u128 {
                return Err(Error::EnumerationCap {
                    what: "ball",
                    needed: expected,
                    cap: limits.max_ball as u128,
                });
            }
            let letters: Vec<i32> = {
                let mut ls: Vec<i32> = (1..=alphabet.len() as i32).flat_map(|i| [i, -i]).collect();
                ls.sort_by_key(|&l| letter_rank(l));
                ls
            };
            let mut out = vec![GroupElement::identity(ctx)];
            let mut frontier: Vec<Vec<i32>> = vec![vec![]];
            for _ in 0..bound {
                let mut next = Vec::with_capacity(frontier.len() * letters.len());
                for w in &frontier {
                    for &l in &letters {
                        if w.last().is_some_and(|&p| p == -l) {
                            continue;
                        }
                        let mut ext = w.clone();
                        ext.push(l);
                        next.push(ext);
                    }
                }
                for w in &next {
                    out.push(GroupElement {
                        ctx: ctx.clone(),
                        word: Word::Free(w.clone()),
                    });
                }
                frontier = next;
            }
            Ok(out)
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    /// Length-lexicographic; meaningful within one context.
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.word, &other.word) {
            (Word::Free(a), Word::Free(b)) => a.len().cmp(&b.len()).then_with(|| {
                for (&x, &y) in a.iter().zip(b.iter()) {
                    let c = letter_rank(x).cmp(&letter_rank(y));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }),
            (Word::Finite(a), Word::Finite(b)) => a.cmp(b),
            (Word::Free(_), Word::Finite(_)) => Ordering::Less,
            (Word::Finite(_), Word::Free(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for GroupElement {
    /// `e` for the identity; otherwise whitespace-separated letters,
    /// `x` or `x^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.word {
            Word::Free(w) => {
                if w.is_empty() {
                    return write!(f, "e");
                }
                let alphabet = self.ctx.alphabet();
                let mut first = true;
                for &l in w {
                    if !first {
                        write!(f, " ")?;
                    }
                    first = false;
                    let name = &alphabet[(l.unsigned_abs() - 1) as usize];
                    if l < 0 {
                        write!(f, "{name}^-1")?;
                    } else {
                        write!(f, "{name}")?;
                    }
                }
                Ok(())
            }
            Word::Finite(i) => match &self.ctx.group {
                GroupData::Finite { names, .. } => write!(f, "{}", names[*i]),
                GroupData::Free { .. } => unreachable!(),
            },
        }
    }
}
