//! Elements of a free graded algebra: finite linear combinations of words.
//!
//! Every element carries its field and generator table. Binary operations
//! insist that both sides share the same context; mixing tables or fields is
//! reported as an error, never coerced.
//!
//! Text syntax: terms joined by `+` or `-`, an optional scalar prefix
//! `c*` on each term, letters separated by `*`. Over `Q` scalars may be
//! fractions `a/b`. Examples: `x1*t + t*x1`, `2/3*x3`, `0`, `1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgError, Result};
use crate::scalar::{FieldTag, Scalar};
use crate::word::{GeneratorTable, Word};

/// Degree of an element. The zero element has its own degree value rather
/// than being homogeneous of every degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(u32),
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    field: FieldTag,
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero(field: FieldTag, table: Arc<GeneratorTable>) -> Element {
        Element { field, table, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldTag, table: Arc<GeneratorTable>) -> Element {
        let word = table.empty_word();
        Element::from_term(field, table, word, None)
    }

    /// Single term with the given word; `None` means coefficient 1.
    pub fn from_term(
        field: FieldTag,
        table: Arc<GeneratorTable>,
        word: Word,
        coeff: Option<Scalar>,
    ) -> Element {
        let coeff = coeff.unwrap_or_else(|| field.one());
        let mut terms = BTreeMap::new();
        if !field.is_zero(&coeff) {
            terms.insert(word, coeff);
        }
        Element { field, table, terms }
    }

    pub fn generator(field: FieldTag, table: &Arc<GeneratorTable>, name: &str) -> Result<Element> {
        let letter = table
            .index_of(name)
            .ok_or_else(|| AlgError::UnknownGenerator(name.to_string()))?;
        Ok(Element::from_term(field, table.clone(), table.letter(letter), None))
    }

    pub fn from_terms(
        field: FieldTag,
        table: Arc<GeneratorTable>,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Element {
        let mut e = Element::zero(field, table);
        for (w, c) in terms {
            e.accumulate(w, c);
        }
        e
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest word in the canonical order, with its coefficient.
    pub fn leading_term(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(|w| w.degree());
        match degrees.next() {
            None => Degree::Zero,
            Some(first) => {
                if degrees.all(|d| d == first) {
                    Degree::Homogeneous(first)
                } else {
                    Degree::Mixed
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.degree(), Degree::Mixed)
    }

    /// Split into homogeneous parts, ascending by degree. Zero splits into
    /// nothing.
    pub fn homogeneous_components(&self) -> Vec<Element> {
        let mut by_degree: BTreeMap<u32, Element> = BTreeMap::new();
        for (w, c) in &self.terms {
            by_degree
                .entry(w.degree())
                .or_insert_with(|| Element::zero(self.field, self.table.clone()))
                .accumulate(w.clone(), c.clone());
        }
        by_degree.into_values().collect()
    }

    fn check_context(&self, other: &Element) -> Result<()> {
        if self.field != other.field {
            return Err(AlgError::IncompatibleContext(format!(
                "fields {} and {} differ",
                self.field, other.field
            )));
        }
        if !self.table.same_table(&other.table) {
            return Err(AlgError::IncompatibleContext(
                "elements belong to different generator tables".to_string(),
            ));
        }
        Ok(())
    }

    pub(crate) fn accumulate(&mut self, word: Word, coeff: Scalar) {
        if self.field.is_zero(&coeff) {
            return;
        }
        match self.terms.remove(&word) {
            None => {
                self.terms.insert(word, coeff);
            }
            Some(old) => {
                let sum = self.field.add(&old, &coeff);
                if !self.field.is_zero(&sum) {
                    self.terms.insert(word, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Element {
        if self.field.is_zero(s) {
            return Element::zero(self.field, self.table.clone());
        }
        let mut out = Element::zero(self.field, self.table.clone());
        for (w, c) in &self.terms {
            out.accumulate(w.clone(), self.field.mul(c, s));
        }
        out
    }

    /// Product in the free algebra (word concatenation, no rewriting).
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_context(other)?;
        let mut out = Element::zero(self.field, self.table.clone());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.accumulate(self.table.concat(wa, wb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// `[a, b] = a*b - (-1)^(|a||b|) b*a` on homogeneous arguments. Either
    /// argument may be zero, in which case the bracket is zero.
    pub fn graded_commutator(&self, other: &Element) -> Result<Element> {
        self.check_context(other)?;
        let (da, db) = match (self.degree(), other.degree()) {
            (Degree::Zero, _) | (_, Degree::Zero) => {
                return Ok(Element::zero(self.field, self.table.clone()));
            }
            (Degree::Homogeneous(a), Degree::Homogeneous(b)) => (a, b),
            _ => return Err(AlgError::NotHomogeneous),
        };
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        if (da * db) % 2 == 0 {
            ab.sub(&ba)
        } else {
            ab.add(&ba)
        }
    }

    /// Relabel letters into another table. Internal plumbing for rewrite
    /// systems; `map[i]` is the image of letter `i`.
    pub(crate) fn relabel(&self, table: Arc<GeneratorTable>, map: &[u32]) -> Element {
        let mut out = Element::zero(self.field, table.clone());
        for (w, c) in &self.terms {
            let letters: Vec<u32> = w.letters().iter().map(|&l| map[l as usize]).collect();
            out.accumulate(table.word(&letters), c.clone());
        }
        out
    }

    pub fn parse(text: &str, field: FieldTag, table: &Arc<GeneratorTable>) -> Result<Element> {
        Parser::new(text, field, table).element()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (word, coeff)) in self.terms.iter().enumerate() {
            let negative = self.field.is_negative(coeff);
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = self.field.format_abs(coeff);
            if word.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{}", self.table.format_word(word))?;
            } else {
                write!(f, "{}*{}", abs, self.table.format_word(word))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Int(String),
    Ident(String),
}

struct Parser<'a> {
    field: FieldTag,
    table: &'a Arc<GeneratorTable>,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, field: FieldTag, table: &'a Arc<GeneratorTable>) -> Parser<'a> {
        let mut toks = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => i += 1,
                b'+' => {
                    toks.push((i, Tok::Plus));
                    i += 1;
                }
                b'-' => {
                    toks.push((i, Tok::Minus));
                    i += 1;
                }
                b'*' => {
                    toks.push((i, Tok::Star));
                    i += 1;
                }
                b'/' => {
                    toks.push((i, Tok::Slash));
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    toks.push((start, Tok::Int(text[start..i].to_string())));
                }
                c if c.is_ascii_alphabetic() => {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    toks.push((start, Tok::Ident(text[start..i].to_string())));
                }
                _ => {
                    // A lone bad byte; report it lazily through a marker token.
                    toks.push((i, Tok::Ident(String::new())));
                    i += 1;
                }
            }
        }
        Parser { field, table, toks, at: 0, end: text.len() }
    }

    fn err(&self, msg: &str) -> AlgError {
        let pos = self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end);
        AlgError::Parse { pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t);
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn element(&mut self) -> Result<Element> {
        let mut out = Element::zero(self.field, self.table.clone());
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                true
            }
            Some(_) => false,
            None => return Err(self.err("empty element")),
        };
        loop {
            let term = self.term(negate)?;
            out = out.add(&term)?;
            match self.peek() {
                None => return Ok(out),
                Some(Tok::Plus) => {
                    self.at += 1;
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    negate = true;
                }
                Some(_) => return Err(self.err("expected `+` or `-` between terms")),
            }
        }
    }

    fn term(&mut self, negate: bool) -> Result<Element> {
        let mut coeff = self.field.one();
        let mut letters: Vec<u32> = Vec::new();
        let mut saw_word = false;

        if let Some(Tok::Int(_)) = self.peek() {
            coeff = self.scalar()?;
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    self.word(&mut letters)?;
                    saw_word = true;
                }
                Some(Tok::Plus) | Some(Tok::Minus) | None => {}
                Some(_) => return Err(self.err("expected `*` after coefficient")),
            }
        } else {
            self.word(&mut letters)?;
            saw_word = true;
        }

        let word = if saw_word { self.table.word(&letters) } else { self.table.empty_word() };
        if negate {
            coeff = self.field.neg(&coeff);
        }
        Ok(Element::from_term(self.field, self.table.clone(), word, Some(coeff)))
    }

    fn scalar(&mut self) -> Result<Scalar> {
        let num = match self.bump() {
            Some(Tok::Int(n)) => n.clone(),
            _ => return Err(self.err("expected an integer")),
        };
        if let Some(Tok::Slash) = self.peek() {
            self.at += 1;
            let den = match self.bump() {
                Some(Tok::Int(n)) => n.clone(),
                _ => return Err(self.err("expected a denominator")),
            };
            self.field
                .parse_scalar(&format!("{num}/{den}"))
                .map_err(|_| self.err("invalid fraction"))
        } else {
            self.field
                .parse_scalar(&num)
                .map_err(|_| self.err("invalid integer"))
        }
    }

    fn word(&mut self, letters: &mut Vec<u32>) -> Result<()> {
        loop {
            let name = match self.bump() {
                Some(Tok::Ident(name)) if !name.is_empty() => name.clone(),
                _ => return Err(self.err("expected a generator name")),
            };
            match self.table.index_of(&name) {
                Some(ix) => letters.push(ix),
                None => return Err(AlgError::UnknownGenerator(name)),
            }
            match self.peek() {
                Some(Tok::Star) => {
                    // A `*` may be followed by another letter only; scalars
                    // sit in front of the word.
                    self.at += 1;
                    if !matches!(self.peek(), Some(Tok::Ident(_))) {
                        return Err(self.err("expected a generator name after `*`"));
                    }
                }
                _ => return Ok(()),
            }
        }
    }
}
