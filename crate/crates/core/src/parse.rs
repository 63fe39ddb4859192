//! Text grammars and file formats.
//!
//! Words: whitespace-separated letters, `x` or `x^-1`; the empty string (or
//! the reserved name `e`) is the identity.
//!
//! Coordinate expressions: `boolfn := term ('+' term)*`,
//! `term := [scalar '*'] factor+`, `factor := '1[' word (';' index)? ']'`,
//! `index := projection-label | '0'` (omitted index means `0`),
//! `scalar := rational [('+'|'-') rational 'i']`.  A bare scalar is also
//! accepted as a term and means that multiple of the unit.
//!
//! Formal sums: `cp := cpterm ('+' cpterm)*`, `cpterm := term 'd(' word ')'`.
//!
//! Points: comma-separated coordinates, each `word` or `word;label`.
//!
//! JSON inputs: a matrix pair `{"n": int, "A": [[0|1,..]], "B": [[..]]}`, a
//! graph `{"vertices": [..], "edges": [{"name","src","rng"}]}`, or a raw
//! relation set `{"alphabet": [..], "projections": [..],
//! "length_additivity": bool, "relations": ["expr", ..]}`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::rational::BigRational;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::coords::{BoolFn, Coordinate, FinitePoint, IndexTag};
use crate::crossed::CPElement;
use crate::error::{Error, Result};
use crate::group::{Context, Ctx, GroupElement};
use crate::presentations::{
    build_ck, build_graph, DirectedGraph, Edge, GeneratorMap, Matrix01, Presentation,
};
use crate::relations::RelationSet;
use crate::scalar::Scalar;

/// Parses a word: empty or `e` is the identity, otherwise whitespace
/// separated `x` / `x^-1` letters.
pub fn parse_word(ctx: &Ctx, text: &str) -> Result<GroupElement> {
    let text = text.trim();
    if text.is_empty() || text == "e" {
        return Ok(GroupElement::identity(ctx));
    }
    if !ctx.is_free() {
        return Err(Error::Parse(
            "word syntax is only defined for free contexts".into(),
        ));
    }
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let (name, sign) = match token.strip_suffix("^-1") {
            Some(base) => (base, -1i32),
            None => (token, 1i32),
        };
        let idx = ctx
            .alphabet()
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
        letters.push(sign * (idx as i32 + 1));
    }
    Ok(GroupElement::from_letters(ctx, &letters))
}

/// Parses an index: `0` for the untagged copy, otherwise a projection label.
pub fn parse_index(ctx: &Ctx, text: &str) -> Result<IndexTag> {
    let text = text.trim();
    if text == "0" {
        return Ok(IndexTag::Zero);
    }
    ctx.proj_index(text)
        .map(IndexTag::Proj)
        .ok_or_else(|| Error::Parse(format!("unknown projection label `{text}`")))
}

/// Parses a point: comma-separated coordinates `word` or `word;label`;
/// the listed coordinates are closed up into a valid point.
pub fn parse_point(ctx: &Ctx, text: &str) -> Result<FinitePoint> {
    let mut coords = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (word, tag) = match part.split_once(';') {
            Some((w, idx)) => (w, parse_index(ctx, idx)?),
            None => (part, IndexTag::Zero),
        };
        coords.push(Coordinate::new(parse_word(ctx, word)?, tag));
    }
    Ok(FinitePoint::closure(ctx, coords))
}

struct Cursor<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn take_until(&mut self, stops: &[u8]) -> Result<&'a str> {
        let start = self.pos;
        while self.pos < self.bytes.len() && !stops.contains(&self.bytes[self.pos]) {
            self.pos += 1;
        }
        if self.pos == self.bytes.len() {
            return Err(self.error("unterminated bracket"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.bytes.len()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of `{}`", self.pos, self.text))
    }

    /// `rational := ['-'] digits ['/' digits]`.
    fn try_rational(&mut self) -> Option<BigRational> {
        self.skip_ws();
        let start = self.pos;
        let mut pos = self.pos;
        if self.bytes.get(pos) == Some(&b'-') {
            pos += 1;
        }
        let digits_start = pos;
        while self.bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if pos == digits_start {
            return None;
        }
        if self.bytes.get(pos) == Some(&b'/') {
            let denom_start = pos + 1;
            let mut p = denom_start;
            while self.bytes.get(p).is_some_and(u8::is_ascii_digit) {
                p += 1;
            }
            if p > denom_start {
                pos = p;
            }
        }
        let s = &self.text[start..pos];
        match BigRational::from_str(s) {
            Ok(r) => {
                self.pos = pos;
                Some(r)
            }
            Err(_) => None,
        }
    }

    /// `scalar := rational [('+'|'-') rational 'i']`.
    fn try_scalar(&mut self) -> Option<Scalar> {
        let re = self.try_rational()?;
        let save = self.pos;
        let sign = match self.peek() {
            Some(b'+') => Some(BigRational::from_integer(1.into())),
            Some(b'-') => Some(BigRational::from_integer((-1).into())),
            _ => None,
        };
        if let Some(sign) = sign {
            self.pos += 1;
            if let Some(im) = self.try_rational() {
                if self.bytes.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    return Some(Scalar::new(re, sign * im));
                }
            }
            self.pos = save;
        }
        Some(Scalar::new(re, BigRational::zero()))
    }

    /// `factor := '1[' word (';' index)? ']'`.
    fn parse_factor(&mut self, ctx: &Ctx) -> Result<Coordinate> {
        if !self.eat_str("1[") {
            return Err(self.error("expected a factor `1[..]`"));
        }
        let inner = self.take_until(b";]")?;
        let tag = if self.bytes[self.pos] == b';' {
            self.pos += 1;
            let idx = self.take_until(b"]")?;
            parse_index(ctx, idx)?
        } else {
            IndexTag::Zero
        };
        self.expect(b']')?;
        Ok(Coordinate::new(parse_word(ctx, inner)?, tag))
    }

    fn at_factor(&mut self) -> bool {
        self.skip_ws();
        self.text[self.pos..].starts_with("1[")
    }

    /// `term := [scalar '*'] factor+ | scalar`.
    fn parse_term(&mut self, ctx: &Ctx) -> Result<BoolFn> {
        let save = self.pos;
        let mut scalar = Scalar::one();
        let mut have_scalar = false;
        if !self.at_factor() {
            if let Some(s) = self.try_scalar() {
                if self.eat(b'*') {
                    scalar = s;
                    have_scalar = true;
                } else {
                    // bare scalar term
                    return Ok(BoolFn::unit(ctx).scalar_mul(&s));
                }
            }
        }
        if !self.at_factor() {
            if have_scalar {
                return Err(self.error("expected a factor after `*`"));
            }
            self.pos = save;
            return Err(self.error("expected a term"));
        }
        let mut f = BoolFn::unit(ctx);
        while self.at_factor() {
            let c = self.parse_factor(ctx)?;
            f = f.mul(&BoolFn::char_fn(&c.g, c.tag));
        }
        Ok(f.scalar_mul(&scalar))
    }
}

/// Parses a coordinate-algebra expression.
pub fn parse_boolfn(ctx: &Ctx, text: &str) -> Result<BoolFn> {
    let mut cur = Cursor::new(text);
    let mut f = cur.parse_term(ctx)?;
    while cur.eat(b'+') {
        f = f.add(&cur.parse_term(ctx)?);
    }
    if !cur.at_end() {
        return Err(cur.error("trailing input after expression"));
    }
    Ok(f)
}

/// Parses a formal-sum expression.
pub fn parse_cp(ctx: &Ctx, text: &str) -> Result<CPElement> {
    let mut cur = Cursor::new(text);
    let mut out = CPElement::zero(ctx);
    loop {
        // term, but ending at `d(`
        let save = cur.pos;
        let coeff = match cur.parse_term(ctx) {
            Ok(f) => f,
            Err(_) => {
                cur.pos = save;
                BoolFn::unit(ctx)
            }
        };
        if !cur.eat_str("d(") {
            return Err(cur.error("expected `d(word)`"));
        }
        let word = cur.take_until(b")")?;
        cur.expect(b')')?;
        out = out.add(&CPElement::mono(&coeff, &parse_word(ctx, word)?));
        if cur.at_end() {
            break;
        }
        if !cur.eat(b'+') {
            return Err(cur.error("expected `+` between formal-sum terms"));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// JSON file formats.

/// `{"n": int, "A": [[0|1,..]], "B": [[0|1,..]]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixPairFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<u8>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<u8>>,
}

impl MatrixPairFile {
    pub fn into_matrices(self) -> Result<(Matrix01, Matrix01)> {
        let a = Matrix01::new(self.a)?;
        let b = Matrix01::new(self.b)?;
        if a.size() != self.n || b.size() != self.n {
            return Err(Error::Validation(
                "declared order does not match the matrices".into(),
            ));
        }
        Ok((a, b))
    }
}

/// `{"vertices": [..], "edges": [{"name","src","rng"}, ..]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub name: String,
    pub src: String,
    pub rng: String,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<DirectedGraph> {
        DirectedGraph::new(
            self.vertices,
            self.edges
                .into_iter()
                .map(|e| Edge {
                    name: e.name,
                    src: e.src,
                    rng: e.rng,
                })
                .collect(),
        )
    }
}

/// Raw relation set file.
#[derive(Debug, Serialize, Deserialize)]
pub struct RelationSetFile {
    pub alphabet: Vec<String>,
    #[serde(default)]
    pub projections: Vec<String>,
    #[serde(default)]
    pub length_additivity: bool,
    pub relations: Vec<String>,
}

impl RelationSetFile {
    pub fn into_relation_set(self) -> Result<(Ctx, RelationSet)> {
        let ctx = Context::free(self.alphabet, self.projections)?;
        let relations = self
            .relations
            .iter()
            .map(|text| parse_boolfn(&ctx, text))
            .collect::<Result<Vec<_>>>()?;
        let rel = RelationSet::new(&ctx, relations, self.length_additivity)?;
        Ok((ctx, rel))
    }
}

/// Loads any of the three presentation inputs, sniffing the JSON shape.
pub fn load_presentation(json: &str) -> Result<Presentation> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if obj.contains_key("A") || obj.contains_key("B") {
        let file: MatrixPairFile = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("matrix file: {e}")))?;
        let (a, b) = file.into_matrices()?;
        build_ck(&a, &b)
    } else if obj.contains_key("vertices") {
        let file: GraphFile = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("graph file: {e}")))?;
        build_graph(&file.into_graph()?)
    } else if obj.contains_key("relations") {
        let file: RelationSetFile = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("relation file: {e}")))?;
        let (ctx, relations) = file.into_relation_set()?;
        Ok(Presentation::from_parts(ctx, relations))
    } else {
        Err(Error::Parse(
            "unrecognized input: expected matrices, a graph, or a relation set".into(),
        ))
    }
}

/// Generator-map file: source generator → target word, source projection
/// label → target formal-sum expression.
#[derive(Debug, Serialize, Deserialize)]
pub struct MapFile {
    pub group_map: BTreeMap<String, String>,
    #[serde(default)]
    pub proj_map: BTreeMap<String, String>,
}

impl MapFile {
    pub fn into_generator_map(self, src: &Ctx, tgt: &Ctx) -> Result<GeneratorMap> {
        let mut group_images = Vec::new();
        for name in src.alphabet() {
            let text = self.group_map.get(name).ok_or_else(|| {
                Error::Validation(format!("no image given for generator `{name}`"))
            })?;
            group_images.push(parse_word(tgt, text)?);
        }
        let mut proj_images = Vec::new();
        for label in src.proj_labels() {
            match self.proj_map.get(label) {
                Some(text) => proj_images.push(parse_cp(tgt, text)?),
                None => {
                    // default: same label in the target, when it exists
                    let j = tgt.proj_index(label).ok_or_else(|| {
                        Error::Validation(format!("no image given for projection `{label}`"))
                    })?;
                    proj_images.push(CPElement::proj(tgt, j));
                }
            }
        }
        Ok(GeneratorMap::new(group_images, proj_images))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Context::free(["a", "b"], ["1", "2"]).unwrap()
    }

    #[test]
    fn words_round_trip() {
        let c = ctx();
        for text in ["", "e", "a", "a^-1", "a b^-1 a"] {
            let w = parse_word(&c, text).unwrap();
            let again = parse_word(&c, &w.to_string()).unwrap();
            assert_eq!(w, again);
        }
        // unreduced input reduces
        let w = parse_word(&c, "a a^-1 b").unwrap();
        assert_eq!(w, GroupElement::generator(&c, 1));
        assert!(parse_word(&c, "c").is_err());
    }

    #[test]
    fn boolfn_grammar() {
        let c = ctx();
        let a = GroupElement::generator(&c, 0);
        // plain generator factor
        assert_eq!(
            parse_boolfn(&c, "1[a]").unwrap(),
            BoolFn::char_fn(&a, IndexTag::Zero)
        );
        // tagged, explicit zero tag, unit
        assert_eq!(
            parse_boolfn(&c, "1[a;1]").unwrap(),
            BoolFn::char_fn(&a, IndexTag::Proj(0))
        );
        assert_eq!(parse_boolfn(&c, "1[a;0]").unwrap(), parse_boolfn(&c, "1[a]").unwrap());
        assert_eq!(parse_boolfn(&c, "1[]").unwrap(), BoolFn::unit(&c));
        assert_eq!(parse_boolfn(&c, "1[e]").unwrap(), BoolFn::unit(&c));
        // scalars
        let f = parse_boolfn(&c, "1/2 * 1[a] + -1 * 1[b]").unwrap();
        assert_eq!(f.term_count(), 2);
        let g = parse_boolfn(&c, "2+3i * 1[a b^-1]").unwrap();
        assert_eq!(g.term_count(), 1);
        // multi-factor products absorb
        assert_eq!(
            parse_boolfn(&c, "1[a] 1[a;1]").unwrap(),
            BoolFn::char_fn(&a, IndexTag::Proj(0))
        );
        // bare scalar means a multiple of the unit
        assert_eq!(
            parse_boolfn(&c, "3").unwrap(),
            BoolFn::unit(&c).scalar_mul(&Scalar::from_int(3))
        );
        assert!(parse_boolfn(&c, "1[a] +").is_err());
        assert!(parse_boolfn(&c, "1[a").is_err());
        assert!(parse_boolfn(&c, "2 * ").is_err());
        assert!(parse_boolfn(&c, "1[a;7]").is_err());
    }

    #[test]
    fn boolfn_display_round_trip() {
        let c = ctx();
        let a = GroupElement::generator(&c, 0);
        let b = GroupElement::generator(&c, 1);
        let cases = [
            BoolFn::zero(&c),
            BoolFn::unit(&c),
            BoolFn::char_fn(&a, IndexTag::Proj(1)).scalar_mul(&Scalar::new(
                BigRational::new(3.into(), 2.into()),
                BigRational::from_integer((-1).into()),
            )),
            BoolFn::char_fn(&a, IndexTag::Zero)
                .mul(&BoolFn::char_fn(&b, IndexTag::Proj(0)))
                .sub(&BoolFn::unit(&c)),
        ];
        for f in &cases {
            let text = f.to_string();
            let again = parse_boolfn(&c, &text).unwrap();
            assert_eq!(&again, f, "round-tripping `{text}`");
        }
    }

    #[test]
    fn cp_grammar_and_round_trip() {
        let c = ctx();
        let a = GroupElement::generator(&c, 0);
        assert_eq!(
            parse_cp(&c, "1[a] d(a)").unwrap(),
            CPElement::pi(&a)
        );
        assert_eq!(parse_cp(&c, "1[] d()").unwrap(), CPElement::one(&c));
        assert_eq!(
            parse_cp(&c, "1[e;1] d(e)").unwrap(),
            CPElement::proj(&c, 0)
        );
        // restriction applies: coefficient picks up 1[a]
        assert_eq!(parse_cp(&c, "d(a)").unwrap(), CPElement::pi(&a));
        let x = CPElement::pi(&a)
            .mul(&CPElement::pi(&GroupElement::generator(&c, 1)))
            .add(&CPElement::proj(&c, 1).scalar_mul(&Scalar::i()));
        let again = parse_cp(&c, &x.to_string()).unwrap();
        assert_eq!(again, x);
        assert!(parse_cp(&c, "1[a]").is_err());
    }

    #[test]
    fn point_syntax() {
        let c = ctx();
        let a = GroupElement::generator(&c, 0);
        let p = parse_point(&c, "a, a;1").unwrap();
        assert!(p.contains(&Coordinate::new(a.clone(), IndexTag::Proj(0))));
        assert!(p.contains(&Coordinate::new(a, IndexTag::Zero)));
        assert_eq!(p.coords().len(), 3);
        let empty = parse_point(&c, "").unwrap();
        assert_eq!(empty.coords().len(), 1);
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let c = ctx();
        assert!(parse_boolfn(&c, "1/0 * 1[a]").is_err());
    }

    #[test]
    fn json_inputs() {
        let p = load_presentation(r#"{"n":2,"A":[[1,1],[1,0]],"B":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(p.relations().explicit().len(), 5);
        let p = load_presentation(
            r#"{"vertices":["v"],"edges":[{"name":"a","src":"v","rng":"v"}]}"#,
        )
        .unwrap();
        assert_eq!(p.relations().explicit().len(), 3);
        let p = load_presentation(
            r#"{"alphabet":["a"],"projections":["1"],"length_additivity":true,
                "relations":["1[e;1] + -1 * 1[]"]}"#,
        )
        .unwrap();
        assert_eq!(p.relations().explicit().len(), 1);
        assert!(load_presentation(r#"{"n":2,"A":[[1]],"B":[[1]]}"#).is_err());
        assert!(load_presentation("{}").is_err());
        assert!(load_presentation("not json").is_err());
    }
}
