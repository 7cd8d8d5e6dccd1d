use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::seq::Composition;
use crate::error::{Error, Result};

/// Which basis a [`BasisExpr`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// Complete homogeneous noncommutative symmetric functions.
    #[serde(rename = "H")]
    H,
    /// Ribbon basis.
    #[serde(rename = "R")]
    R,
    /// Monomial quasisymmetric functions.
    #[serde(rename = "M")]
    M,
    /// Dual immaculate quasisymmetric functions.
    #[serde(rename = "dI")]
    DualImmaculate,
    /// Commutative complete homogeneous symmetric functions, indexed by
    /// partitions.
    #[serde(rename = "h_sym")]
    HSym,
}

impl Basis {
    pub fn label(self) -> &'static str {
        match self {
            Basis::H => "H",
            Basis::R => "R",
            Basis::M => "M",
            Basis::DualImmaculate => "dI",
            Basis::HSym => "h_sym",
        }
    }

    /// Prefix used by the plain-text form, e.g. `H(3,1,3)` or `h(3,2,1)`.
    pub fn text_symbol(self) -> &'static str {
        match self {
            Basis::HSym => "h",
            other => other.label(),
        }
    }

    fn latex_symbol(self) -> &'static str {
        match self {
            Basis::H => "H",
            Basis::R => "R",
            Basis::M => "M",
            Basis::DualImmaculate => "\\mathfrak{S}^{*}",
            Basis::HSym => "h",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" => Ok(Basis::H),
            "R" => Ok(Basis::R),
            "M" => Ok(Basis::M),
            "dI" => Ok(Basis::DualImmaculate),
            "h" | "h_sym" => Ok(Basis::HSym),
            other => Err(Error::Parse(format!("unknown basis {:?}", other))),
        }
    }
}

fn add_coeff(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

fn mul_coeff(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

/// A finite formal linear combination of basis elements with exact integer
/// coefficients. Zero coefficients are never stored and terms iterate in
/// lexicographic order of their index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WireExpr", into = "WireExpr")]
pub struct BasisExpr {
    basis: Basis,
    terms: BTreeMap<Composition, i64>,
}

impl BasisExpr {
    pub fn zero(basis: Basis) -> Self {
        BasisExpr { basis, terms: BTreeMap::new() }
    }

    pub fn unit(basis: Basis) -> Self {
        Self::monomial(basis, Composition::empty(), 1)
    }

    pub fn monomial(basis: Basis, index: Composition, coeff: i64) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(index, coeff);
        e
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Composition, i64)>) -> Self {
        let mut e = Self::zero(basis);
        for (index, coeff) in terms {
            e.add_term(index, coeff);
        }
        e
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, i64)> + '_ {
        self.terms.iter().map(|(c, &v)| (c, v))
    }

    pub fn coeff(&self, index: &Composition) -> i64 {
        self.terms.get(index).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, index: Composition, coeff: i64) {
        if coeff == 0 {
            return;
        }
        if self.basis == Basis::HSym {
            debug_assert!(index.is_partition(), "h_sym keys are partitions");
        }
        match self.terms.entry(index) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = add_coeff(*o.get(), coeff);
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// In-place sum; the bases must agree.
    pub fn merge(&mut self, other: &BasisExpr) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch { expected: self.basis, found: other.basis });
        }
        for (index, coeff) in other.terms() {
            self.add_term(index.clone(), coeff);
        }
        Ok(())
    }

    pub fn scaled(&self, factor: i64) -> BasisExpr {
        if factor == 0 {
            return Self::zero(self.basis);
        }
        BasisExpr {
            basis: self.basis,
            terms: self.terms.iter().map(|(c, &v)| (c.clone(), mul_coeff(v, factor))).collect(),
        }
    }

    /// The same coefficients read in another basis.
    pub fn relabeled(&self, basis: Basis) -> BasisExpr {
        BasisExpr::from_terms(basis, self.terms.iter().map(|(c, &v)| (c.clone(), v)))
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<F>(&self, target: Basis, mut image: F) -> BasisExpr
    where
        F: FnMut(&Composition) -> BasisExpr,
    {
        let mut out = BasisExpr::zero(target);
        for (index, coeff) in self.terms() {
            let img = image(index);
            debug_assert_eq!(img.basis, target);
            for (c, v) in img.terms() {
                out.add_term(c.clone(), mul_coeff(v, coeff));
            }
        }
        out
    }

    /// Signed sum of `H(3,1,3)` style tokens; `0` for the empty expression.
    pub fn to_text(&self) -> String {
        self.render(
            |basis, index| {
                let parts: Vec<String> = index.parts().iter().map(|p| p.to_string()).collect();
                format!("{}({})", basis.text_symbol(), parts.join(","))
            },
            "*",
        )
    }

    /// Signed sum of `H_{(3,1,3)}` style tokens.
    pub fn to_latex(&self) -> String {
        self.render(
            |basis, index| {
                if index.is_empty() {
                    "1".to_string()
                } else {
                    format!("{}_{{{}}}", basis.latex_symbol(), index)
                }
            },
            "",
        )
    }

    fn render(&self, token: impl Fn(Basis, &Composition) -> String, times: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (index, &coeff)) in self.terms.iter().enumerate() {
            let sign = if coeff < 0 { '-' } else { '+' };
            if i == 0 {
                if coeff < 0 {
                    out.push('-');
                }
            } else {
                out.push(' ');
                out.push(sign);
                out.push(' ');
            }
            let mag = coeff.unsigned_abs();
            let tok = token(self.basis, index);
            if tok == "1" {
                out.push_str(&mag.to_string());
                continue;
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
                out.push_str(times);
            }
            out.push_str(&tok);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("expression serializes")
    }

    /// Parses the plain-text form produced by [`BasisExpr::to_text`]. Every
    /// token must use the same basis; `default` is used for the bare `0`.
    pub fn parse_text(s: &str, default: Basis) -> Result<BasisExpr> {
        TextParser { src: s, pos: 0 }.parse(default)
    }
}

struct TextParser<'a> {
    src: &'a str,
    pos: usize,
}

impl TextParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{} at offset {} in {:?}", msg, self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().ok()
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn parse(mut self, default: Basis) -> Result<BasisExpr> {
        self.skip_ws();
        if self.src[self.pos..].trim() == "0" {
            return Ok(BasisExpr::zero(default));
        }
        let mut expr: Option<BasisExpr> = None;
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos == self.src.len() {
                break;
            }
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Err(self.err("expected '+' or '-'"));
            };
            first = false;
            let coeff = match self.number() {
                Some(n) => {
                    self.eat('*');
                    i64::try_from(n).map_err(|_| self.err("coefficient too large"))?
                }
                None => 1,
            };
            let sym = self.ident().to_string();
            let basis: Basis = sym.parse().map_err(|_| self.err("expected a basis symbol"))?;
            if !self.eat('(') {
                return Err(self.err("expected '('"));
            }
            let mut parts = Vec::new();
            if !self.eat(')') {
                loop {
                    let p = self.number().ok_or_else(|| self.err("expected a part"))?;
                    parts.push(u32::try_from(p).map_err(|_| self.err("part too large"))?);
                    if self.eat(')') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(self.err("expected ',' or ')'"));
                    }
                }
            }
            let index = Composition::new(parts).map_err(|_| self.err("parts must be positive"))?;
            let e = expr.get_or_insert_with(|| BasisExpr::zero(basis));
            if e.basis != basis {
                return Err(Error::BasisMismatch { expected: e.basis, found: basis });
            }
            e.add_term(index, if negative { -coeff } else { coeff });
        }
        expr.ok_or_else(|| self.err("empty expression"))
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    coeff: i64,
    index: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct WireExpr {
    basis: Basis,
    terms: Vec<WireTerm>,
}

impl From<BasisExpr> for WireExpr {
    fn from(e: BasisExpr) -> Self {
        WireExpr {
            basis: e.basis,
            terms: e.terms.into_iter().map(|(c, coeff)| WireTerm { coeff, index: c.parts().to_vec() }).collect(),
        }
    }
}

impl TryFrom<WireExpr> for BasisExpr {
    type Error = Error;

    fn try_from(w: WireExpr) -> Result<Self> {
        let mut e = BasisExpr::zero(w.basis);
        for t in w.terms {
            let index = Composition::new(t.index)?;
            if w.basis == Basis::HSym && !index.is_partition() {
                return Err(Error::Parse(format!("h_sym index {} is not a partition", index)));
            }
            e.add_term(index, t.coeff);
        }
        Ok(e)
    }
}

/// Coefficient-wise sum of two expressions in the same basis.
pub fn expr_add(a: &BasisExpr, b: &BasisExpr) -> Result<BasisExpr> {
    let mut out = a.clone();
    out.merge(b)?;
    Ok(out)
}

/// Product in the H basis: bilinear extension of index concatenation.
pub fn h_multiply(a: &BasisExpr, b: &BasisExpr) -> Result<BasisExpr> {
    for e in [a, b] {
        if e.basis != Basis::H {
            return Err(Error::BasisMismatch { expected: Basis::H, found: e.basis });
        }
    }
    let mut out = BasisExpr::zero(Basis::H);
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            out.add_term(x.concat(y), mul_coeff(cx, cy));
        }
    }
    Ok(out)
}
