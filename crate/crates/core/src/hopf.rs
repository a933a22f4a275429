//! Coproducts, dual pairings, and cup products.
//!
//! The coproduct is given on generators and extended as an algebra map into
//! the graded tensor square, where multiplication carries the Koszul sign
//! `(u1 (x) u2) * (v1 (x) v2) = (-1)^(|u2||v1|) u1*v1 (x) u2*v2` regardless
//! of the presentation's own commutation policy. Every duality statement
//! rests on the coproduct actually killing the relations, which
//! [`check_coproduct`](HopfStructure::check_coproduct) verifies rather than
//! assumes; run it before trusting any cup product.
//!
//! Dual elements are degree-local: coordinates against one degree's basis
//! words. Evaluation uses the canonical identification sending each basis
//! word to its delta functional.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::element::{Degree, Element};
use crate::error::{AlgError, Result};
use crate::presentation::{preset_algebra, Family, Presentation, PresetName};
use crate::rewrite::RewriteSystem;
use crate::scalar::{FieldTag, Scalar};
use crate::word::{GeneratorTable, Word};

/// Element of the graded tensor square. Both factors are kept in normal
/// form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    field: FieldTag,
    table: Arc<GeneratorTable>,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero(field: FieldTag, table: Arc<GeneratorTable>) -> TensorElement {
        TensorElement { field, table, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, left: &Word, right: &Word) -> Scalar {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn accumulate(&mut self, key: (Word, Word), coeff: Scalar) {
        if self.field.is_zero(&coeff) {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, coeff);
            }
            Some(old) => {
                let sum = self.field.add(&old, &coeff);
                if !self.field.is_zero(&sum) {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), self.field.neg(c));
        }
        out
    }

    /// Koszul-signed product; both factors of every term are reduced to
    /// normal form afterwards.
    pub fn mul(&self, other: &TensorElement, sys: &RewriteSystem) -> Result<TensorElement> {
        let field = self.field;
        let mut out = TensorElement::zero(field, self.table.clone());
        for ((u1, u2), c) in &self.terms {
            for ((v1, v2), d) in &other.terms {
                let mut coeff = field.mul(c, d);
                if field.characteristic() != 2 && (u2.degree() * v1.degree()) % 2 == 1 {
                    coeff = field.neg(&coeff);
                }
                let left = concat_nf(sys, u1, v1)?;
                let right = concat_nf(sys, u2, v2)?;
                for (lw, lc) in left.terms() {
                    for (rw, rc) in right.terms() {
                        let e = field.mul(&coeff, &field.mul(lc, rc));
                        out.accumulate((lw.clone(), rw.clone()), e);
                    }
                }
            }
        }
        Ok(out)
    }
}

fn concat_nf(sys: &RewriteSystem, a: &Word, b: &Word) -> Result<Element> {
    let mut letters = Vec::with_capacity(a.len() + b.len());
    letters.extend_from_slice(a.letters());
    letters.extend_from_slice(b.letters());
    let w = sys.ext_table().word(&letters);
    sys.normal_form(&Element::from_term(
        sys.base().field(),
        sys.ext_table().clone(),
        w,
        None,
    ))
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((u, v), c) in &self.terms {
            let negative = self.field.is_negative(c);
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = self.field.format_abs(c);
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            write!(
                f,
                "{} (x) {}",
                self.table.format_word(u),
                self.table.format_word(v)
            )?;
        }
        Ok(())
    }
}

/// Dual of one degree's basis: finitely many coordinates against the basis
/// words of that degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualElement {
    degree: u32,
    coords: BTreeMap<Word, Scalar>,
}

impl DualElement {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// The functional dual to one basis word.
    pub fn of_word(sys: &RewriteSystem, w: &Word) -> Result<DualElement> {
        if !sys.is_basis_word(w) {
            return Err(AlgError::NotBasisWord(sys.ext_table().format_word(w)));
        }
        let mut coords = BTreeMap::new();
        coords.insert(w.clone(), sys.base().field().one());
        Ok(DualElement { degree: w.degree(), coords })
    }

    /// Parse `dual(<basis word>)` combinations, e.g.
    /// `dual(w1) + 2*dual(t*x1)`.
    pub fn parse(sys: &RewriteSystem, text: &str) -> Result<DualElement> {
        parse_dual(sys, text)
    }
}

/// Validation outcome for a coproduct: relation kills, coassociativity on
/// basis words, and the counit axioms.
#[derive(Clone, Debug, Serialize)]
pub struct CoproductReport {
    pub ok: bool,
    pub max_degree: u32,
    pub relation_failures: Vec<String>,
    pub words_checked: usize,
    pub coassociativity_failures: Vec<String>,
    pub counit_failures: Vec<String>,
}

pub struct HopfStructure {
    sys: RewriteSystem,
    /// Coproduct of each base generator, factors in normal form.
    delta: Vec<TensorElement>,
}

impl HopfStructure {
    /// All generators primitive. The right choice for tensor squares of
    /// spheres and the default for user presentations; check before use.
    pub fn primitive(sys: RewriteSystem) -> HopfStructure {
        let field = sys.base().field();
        let n = sys.base().table().len();
        let delta = (0..n as u32)
            .map(|g| primitive_delta(&sys, field, g))
            .collect();
        HopfStructure { sys, delta }
    }

    /// The family presets carry their geometric coproducts; anything else
    /// defaults to primitive generators.
    pub fn for_presentation(p: &Presentation) -> Result<HopfStructure> {
        let sys = RewriteSystem::compile(p)?;
        let char2 = p.field().characteristic() == 2;
        let mut hopf = HopfStructure::primitive(sys);
        if !char2 {
            // Odd-field presets are exterior on odd-degree classes: all
            // generators primitive already.
            return Ok(hopf);
        }
        match p.family() {
            Some(Family::So3) => {
                hopf.set_so3_delta("x2", "x1")?;
            }
            Some(Family::K0) => {
                hopf.set_so3_delta("x2", "x1")?;
                hopf.set_so3_delta("z2", "z1")?;
            }
            Some(Family::K1) => {
                hopf.set_so3_delta("y2", "y1")?;
            }
            Some(Family::GLambda) => {
                hopf.set_so3_delta("x2", "x1")?;
                hopf.set_so3_delta("y2", "y1")?;
            }
            None => {}
        }
        Ok(hopf)
    }

    /// Custom coproducts, one per base generator in table order.
    pub fn new(sys: RewriteSystem, delta: Vec<TensorElement>) -> Result<HopfStructure> {
        if delta.len() != sys.base().table().len() {
            return Err(AlgError::IncompatibleContext(
                "one coproduct value per generator is required".to_string(),
            ));
        }
        Ok(HopfStructure { sys, delta })
    }

    /// Replace Δ(top) by `top (x) 1 + bottom (x) bottom + 1 (x) top`.
    fn set_so3_delta(&mut self, top: &str, bottom: &str) -> Result<()> {
        let ix = self
            .sys
            .base()
            .table()
            .index_of(top)
            .ok_or_else(|| AlgError::UnknownGenerator(top.to_string()))?;
        let field = self.sys.base().field();
        let mut t = primitive_delta(&self.sys, field, ix);
        let b = self
            .sys
            .to_ext(&Element::generator(field, self.sys.base().table(), bottom)?)?;
        let bw = b.leading_term().expect("generator is nonzero").0.clone();
        t.accumulate((bw.clone(), bw), field.one());
        self.delta[ix as usize] = t;
        Ok(())
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.sys
    }

    pub fn generator_coproduct(&self, name: &str) -> Result<&TensorElement> {
        let ix = self
            .sys
            .base()
            .table()
            .index_of(name)
            .ok_or_else(|| AlgError::UnknownGenerator(name.to_string()))?;
        Ok(&self.delta[ix as usize])
    }

    /// Δ as an algebra map, factors reduced to normal form. Computed on the
    /// normal form of `e`, so the answer is deterministic even when the
    /// coproduct fails `check_coproduct` (in which case it is meaningless).
    pub fn coproduct(&self, e: &Element) -> Result<TensorElement> {
        let nf = self.sys.normal_form(e)?;
        self.coproduct_free(&self.sys.embed(&nf)?)
    }

    /// Δ applied to a representative in the free base algebra, without
    /// canonicalizing first. This is the map whose well-definedness
    /// `check_coproduct` tests.
    fn coproduct_free(&self, base_elem: &Element) -> Result<TensorElement> {
        let field = self.sys.base().field();
        let mut out = TensorElement::zero(field, self.sys.ext_table().clone());
        for (w, c) in base_elem.terms() {
            let mut acc = tensor_unit(&self.sys, field);
            for &l in w.letters() {
                acc = acc.mul(&self.delta[l as usize], &self.sys)?;
            }
            for (k, d) in &acc.terms {
                out.accumulate(k.clone(), field.mul(c, d));
            }
        }
        Ok(out)
    }

    /// `<a cup b, z> = <a (x) b, Δz>` with the Koszul evaluation sign
    /// `(-1)^(deg b * deg a)` on the contributing terms.
    pub fn cup(&self, a: &DualElement, b: &DualElement) -> Result<DualElement> {
        let field = self.sys.base().field();
        let degree = a.degree + b.degree;
        let negate =
            field.characteristic() != 2 && (a.degree * b.degree) % 2 == 1;
        let mut coords = BTreeMap::new();
        for z in self.sys.basis_words(degree) {
            let dz = self.coproduct(&Element::from_term(
                field,
                self.sys.ext_table().clone(),
                z.clone(),
                None,
            ))?;
            let mut acc = field.zero();
            for ((u, v), c) in &dz.terms {
                if u.degree() != a.degree {
                    continue;
                }
                let fa = match a.coords.get(u) {
                    None => continue,
                    Some(s) => s,
                };
                let fb = match b.coords.get(v) {
                    None => continue,
                    Some(s) => s,
                };
                acc = field.add(&acc, &field.mul(c, &field.mul(fa, fb)));
            }
            if negate {
                acc = field.neg(&acc);
            }
            if !field.is_zero(&acc) {
                coords.insert(z, acc);
            }
        }
        Ok(DualElement { degree, coords })
    }

    /// Least `k` with the k-fold cup power zero, if within `bound`.
    pub fn nilpotency_order(&self, f: &DualElement, bound: u32) -> Result<Option<u32>> {
        let mut acc = f.clone();
        for k in 1..=bound {
            if acc.is_zero() {
                return Ok(Some(k));
            }
            acc = self.cup(&acc, f)?;
        }
        Ok(None)
    }

    pub fn check_coproduct(&self, max_degree: u32) -> Result<CoproductReport> {
        let field = self.sys.base().field();
        let mut relation_failures = Vec::new();
        for rel in self.sys.base().effective_relations() {
            let d = match rel.degree() {
                Degree::Homogeneous(d) => d,
                _ => unreachable!("relations are validated as homogeneous"),
            };
            if d > max_degree {
                continue;
            }
            let image = self.coproduct_free(&rel)?;
            if !image.is_zero() {
                relation_failures.push(format!("coproduct of {rel} leaves {image}"));
            }
        }

        let mut words_checked = 0usize;
        let mut coassociativity_failures = Vec::new();
        let mut counit_failures = Vec::new();
        // Coproducts of basis words, filled in ascending degree order so the
        // triple expansions below always hit the cache.
        let mut cache: HashMap<Word, TensorElement> = HashMap::new();
        for d in 0..=max_degree {
            for w in self.sys.basis_words(d) {
                words_checked += 1;
                let e = Element::from_term(
                    field,
                    self.sys.ext_table().clone(),
                    w.clone(),
                    None,
                );
                let dz = self.coproduct(&e)?;
                cache.insert(w.clone(), dz.clone());

                // Counit: picking off the empty factor returns the word.
                let mut left = Element::zero(field, self.sys.ext_table().clone());
                let mut right = Element::zero(field, self.sys.ext_table().clone());
                for ((u, v), c) in &dz.terms {
                    if u.is_empty() {
                        right.accumulate(v.clone(), c.clone());
                    }
                    if v.is_empty() {
                        left.accumulate(u.clone(), c.clone());
                    }
                }
                if left != e || right != e {
                    counit_failures.push(format!(
                        "counit fails on {}",
                        self.sys.ext_table().format_word(&w)
                    ));
                }

                // Coassociativity via full triple expansions. The factors
                // of every term are lower-degree basis words, so their
                // coproducts are already cached.
                let mut via_left: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
                let mut via_right: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
                for ((u, v), c) in &dz.terms {
                    let du = match cache.get(u) {
                        Some(t) => t.clone(),
                        None => self.coproduct(&Element::from_term(
                            field,
                            self.sys.ext_table().clone(),
                            u.clone(),
                            None,
                        ))?,
                    };
                    for ((a, b), c2) in &du.terms {
                        triple_accumulate(
                            field,
                            &mut via_left,
                            (a.clone(), b.clone(), v.clone()),
                            field.mul(c, c2),
                        );
                    }
                    let dv = match cache.get(v) {
                        Some(t) => t.clone(),
                        None => self.coproduct(&Element::from_term(
                            field,
                            self.sys.ext_table().clone(),
                            v.clone(),
                            None,
                        ))?,
                    };
                    for ((a, b), c2) in &dv.terms {
                        triple_accumulate(
                            field,
                            &mut via_right,
                            (u.clone(), a.clone(), b.clone()),
                            field.mul(c, c2),
                        );
                    }
                }
                if via_left != via_right {
                    coassociativity_failures.push(format!(
                        "coassociativity fails on {}",
                        self.sys.ext_table().format_word(&w)
                    ));
                }
            }
        }

        let ok = relation_failures.is_empty()
            && coassociativity_failures.is_empty()
            && counit_failures.is_empty();
        Ok(CoproductReport {
            ok,
            max_degree,
            relation_failures,
            words_checked,
            coassociativity_failures,
            counit_failures,
        })
    }
}

fn triple_accumulate(
    field: FieldTag,
    map: &mut BTreeMap<(Word, Word, Word), Scalar>,
    key: (Word, Word, Word),
    coeff: Scalar,
) {
    if field.is_zero(&coeff) {
        return;
    }
    match map.remove(&key) {
        None => {
            map.insert(key, coeff);
        }
        Some(old) => {
            let sum = field.add(&old, &coeff);
            if !field.is_zero(&sum) {
                map.insert(key, sum);
            }
        }
    }
}

fn tensor_unit(sys: &RewriteSystem, field: FieldTag) -> TensorElement {
    let mut t = TensorElement::zero(field, sys.ext_table().clone());
    let e = sys.ext_table().empty_word();
    t.accumulate((e.clone(), e), field.one());
    t
}

fn primitive_delta(sys: &RewriteSystem, field: FieldTag, letter: u32) -> TensorElement {
    let g = sys
        .to_ext(&Element::from_term(
            field,
            sys.base().table().clone(),
            sys.base().table().letter(letter),
            None,
        ))
        .expect("base generators convert");
    let gw = g.leading_term().expect("generator is nonzero").0.clone();
    let empty = sys.ext_table().empty_word();
    let mut t = TensorElement::zero(field, sys.ext_table().clone());
    t.accumulate((gw.clone(), empty.clone()), field.one());
    t.accumulate((empty, gw), field.one());
    t
}

/// Evaluate a dual element on an algebra element: coordinates of the normal
/// form against the dual's basis-word coordinates. The degrees must match
/// unless the element is zero.
pub fn pair(a: &DualElement, e: &Element, sys: &RewriteSystem) -> Result<Scalar> {
    let field = sys.base().field();
    let nf = sys.normal_form(e)?;
    match nf.degree() {
        Degree::Zero => return Ok(field.zero()),
        Degree::Homogeneous(d) if d == a.degree => {}
        Degree::Homogeneous(d) => {
            return Err(AlgError::DegreeMismatch { expected: a.degree, found: d })
        }
        Degree::Mixed => return Err(AlgError::NotHomogeneous),
    }
    let mut acc = field.zero();
    for (w, c) in nf.terms() {
        if let Some(s) = a.coords.get(w) {
            acc = field.add(&acc, &field.mul(s, c));
        }
    }
    Ok(acc)
}

/// The three diagonal classes of the rotation group, written in the
/// two-sided exterior algebra: the coproduct of each class with the left
/// factor kept in `x`-names and the right factor renamed to `z`-names.
pub fn so3_diagonal_classes(field: FieldTag) -> Result<Vec<(String, Element)>> {
    let so3 = preset_algebra(PresetName::So3, field)?;
    let hopf = HopfStructure::for_presentation(&so3)?;
    let k0 = preset_algebra(PresetName::K0, field)?;
    let k0_sys = RewriteSystem::compile(&k0)?;

    let classes: Vec<(&str, &str)> = if field.characteristic() == 2 {
        vec![("y1", "x1"), ("y2", "x2"), ("y3", "x1*x2")]
    } else {
        vec![("y3", "x3")]
    };
    let mut out = Vec::new();
    for (name, expr) in classes {
        let e = so3.parse_element(expr)?;
        let dz = hopf.coproduct(&e)?;
        let mut image = Element::zero(field, k0.table().clone());
        for ((u, v), c) in dz.terms() {
            let mut letters = Vec::with_capacity(u.len() + v.len());
            for &l in u.letters() {
                let n = hopf.system().ext_table().name(l);
                letters.push(k0.table().index_of(n).expect("x-name exists"));
            }
            for &l in v.letters() {
                let n = hopf.system().ext_table().name(l).replacen('x', "z", 1);
                letters.push(k0.table().index_of(&n).expect("z-name exists"));
            }
            image.accumulate(k0.table().word(&letters), c.clone());
        }
        let image = k0_sys.normal_form(&image)?;
        out.push((name.to_string(), image));
    }
    Ok(out)
}

fn parse_dual(sys: &RewriteSystem, text: &str) -> Result<DualElement> {
    let field = sys.base().field();
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut terms: Vec<(Scalar, Word)> = Vec::new();
    let err = |pos: usize, msg: &str| AlgError::Parse { pos, msg: msg.to_string() };

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    let mut first = true;
    while pos < bytes.len() {
        let mut sign_negative = false;
        if !first || bytes[pos] == b'+' || bytes[pos] == b'-' {
            match bytes.get(pos) {
                Some(b'+') => pos += 1,
                Some(b'-') => {
                    sign_negative = true;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(err(pos, "expected `+` or `-` between terms")),
            }
        }
        first = false;
        skip_ws(&mut pos);
        // Optional scalar prefix `c*`.
        let mut coeff = field.one();
        let scalar_start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
            pos += 1;
        }
        if pos > scalar_start {
            let s = std::str::from_utf8(&bytes[scalar_start..pos]).expect("ascii");
            coeff = field.parse_scalar(s).map_err(|_| err(scalar_start, "bad scalar"))?;
            skip_ws(&mut pos);
            if bytes.get(pos) == Some(&b'*') {
                pos += 1;
                skip_ws(&mut pos);
            } else {
                return Err(err(pos, "expected `*` after a scalar"));
            }
        }
        if sign_negative {
            coeff = field.neg(&coeff);
        }
        if !text[pos..].starts_with("dual(") {
            return Err(err(pos, "expected `dual(<basis word>)`"));
        }
        pos += "dual(".len();
        let close = text[pos..]
            .find(')')
            .ok_or_else(|| err(pos, "unclosed `dual(`"))?;
        let inner = &text[pos..pos + close];
        pos += close + 1;
        let e = sys.parse_ext(inner)?;
        let mut it = e.terms();
        let word = match (it.next(), it.next()) {
            (Some((w, c)), None) if field.is_zero(&field.sub(c, &field.one())) => w.clone(),
            _ => return Err(err(pos, "dual() takes a single word")),
        };
        if !sys.is_basis_word(&word) {
            return Err(AlgError::NotBasisWord(sys.ext_table().format_word(&word)));
        }
        terms.push((coeff, word));
        skip_ws(&mut pos);
    }
    if terms.is_empty() {
        return Err(err(0, "empty dual expression"));
    }
    let degree = terms[0].1.degree();
    let mut coords = BTreeMap::new();
    for (c, w) in terms {
        if w.degree() != degree {
            return Err(AlgError::DegreeMismatch { expected: degree, found: w.degree() });
        }
        let old = coords.remove(&w).unwrap_or_else(|| field.zero());
        let sum = field.add(&old, &c);
        if !field.is_zero(&sum) {
            coords.insert(w, sum);
        }
    }
    Ok(DualElement { degree, coords })
}
