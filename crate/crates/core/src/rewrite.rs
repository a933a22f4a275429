//! Compiled rewriting systems: normal forms and basis enumeration.
//!
//! Compiling a presentation produces a terminating rewrite system over an
//! extended alphabet. For most presentations the alphabet is the original
//! one and each relation is oriented at its largest word in the canonical
//! order. The built-in family with the non-commuting degree-1 and degree-2
//! letters gets a bespoke alphabet with extra letters `w1`, `w2`, `w3`
//! standing for the commutators `[x_i, t]`; the straightening rules over
//! that alphabet are complete, and every rule is certified against the
//! relation ideal by exact linear algebra at compile time.
//!
//! Normal forms use the leftmost redex and the first matching rule in
//! registry order, so they are deterministic. Whether the irreducible words
//! actually form a basis is a separate question, answered by
//! [`check_consistency`](RewriteSystem::check_consistency) and by
//! [`oracle::verify_basis`](crate::oracle::verify_basis).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::{Degree, Element};
use crate::error::{AlgError, Result};
use crate::oracle::{DegreeSlice, PivotStrategy, DEFAULT_WORD_CAP};
use crate::presentation::{Family, Presentation, SignPolicy};
use crate::scalar::Scalar;
use crate::word::{GeneratorTable, Word};

/// One oriented rule: `lhs` rewrites to the element `rhs`, every word of
/// which is strictly smaller than `lhs` in the canonical order.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    lhs: Word,
    rhs: Element,
}

impl RewriteRule {
    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Element {
        &self.rhs
    }
}

pub struct RewriteSystem {
    base: Presentation,
    ext_table: Arc<GeneratorTable>,
    rules: Vec<RewriteRule>,
    /// Base letter -> extended letter.
    base_to_ext: Vec<u32>,
    /// Extended letter -> its expansion in the base algebra.
    ext_embed: Vec<Element>,
    /// Rule indices grouped by the first letter of the lhs.
    rules_by_first: Vec<Vec<usize>>,
    /// Rule indices grouped by the last letter of the lhs.
    rules_by_last: Vec<Vec<usize>>,
}

impl RewriteSystem {
    /// Compile the presentation. Families with bespoke rule sets have every
    /// rule checked against the relation ideal; the generic orientation is
    /// sound by construction.
    pub fn compile(p: &Presentation) -> Result<RewriteSystem> {
        match p.family() {
            Some(Family::GLambda) if p.field().characteristic() == 2 => {
                compile_glambda_char2(p)
            }
            Some(Family::GLambda) => compile_glambda_odd(p),
            _ => compile_generic(p),
        }
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn ext_table(&self) -> &Arc<GeneratorTable> {
        &self.ext_table
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Parse an element over the extended alphabet.
    pub fn parse_ext(&self, text: &str) -> Result<Element> {
        Element::parse(text, self.base.field(), &self.ext_table)
    }

    /// Accepts elements over the base or the extended alphabet and returns
    /// the latter form.
    pub fn to_ext(&self, e: &Element) -> Result<Element> {
        if e.field() != self.base.field() {
            return Err(AlgError::IncompatibleContext(format!(
                "element over {}, system over {}",
                e.field(),
                self.base.field()
            )));
        }
        if e.table().same_table(&self.ext_table) {
            Ok(e.clone())
        } else if e.table().same_table(self.base.table()) {
            Ok(e.relabel(self.ext_table.clone(), &self.base_to_ext))
        } else {
            Err(AlgError::IncompatibleContext(
                "element belongs to a different generator table".to_string(),
            ))
        }
    }

    /// Expand the extra letters, giving an element of the free base algebra.
    pub fn embed(&self, e: &Element) -> Result<Element> {
        let field = self.base.field();
        if e.table().same_table(self.base.table()) {
            return Ok(e.clone());
        }
        if !e.table().same_table(&self.ext_table) {
            return Err(AlgError::IncompatibleContext(
                "element belongs to a different generator table".to_string(),
            ));
        }
        let mut out = Element::zero(field, self.base.table().clone());
        for (w, c) in e.terms() {
            let mut prod = Element::from_term(
                field,
                self.base.table().clone(),
                self.base.table().empty_word(),
                Some(c.clone()),
            );
            for &l in w.letters() {
                prod = prod.mul(&self.ext_embed[l as usize]).expect("same context");
            }
            out = out.add(&prod).expect("same context");
        }
        Ok(out)
    }

    fn leftmost_redex(&self, letters: &[u32]) -> Option<(usize, usize)> {
        for pos in 0..letters.len() {
            for &ri in &self.rules_by_first[letters[pos] as usize] {
                let lhs = self.rules[ri].lhs.letters();
                if letters[pos..].starts_with(lhs) {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    /// True when no rule applies anywhere in the word (extended alphabet).
    pub fn is_basis_word(&self, w: &Word) -> bool {
        self.leftmost_redex(w.letters()).is_none()
    }

    /// Fully reduce an element. The result is over the extended alphabet,
    /// supported on irreducible words only.
    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        let e = self.to_ext(e)?;
        let field = self.base.field();
        let mut out = Element::zero(field, self.ext_table.clone());
        // Worklist keyed by word so parallel branches cancel early; popping
        // the largest word first means no word is processed twice.
        let mut work: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in e.terms() {
            work.insert(w.clone(), c.clone());
        }
        while let Some((w, c)) = work.pop_last() {
            if field.is_zero(&c) {
                continue;
            }
            match self.leftmost_redex(w.letters()) {
                None => out.accumulate(w, c),
                Some((pos, ri)) => {
                    let rule = &self.rules[ri];
                    let prefix = &w.letters()[..pos];
                    let suffix = &w.letters()[pos + rule.lhs.len()..];
                    for (rw, rc) in rule.rhs.terms() {
                        let mut letters =
                            Vec::with_capacity(prefix.len() + rw.len() + suffix.len());
                        letters.extend_from_slice(prefix);
                        letters.extend_from_slice(rw.letters());
                        letters.extend_from_slice(suffix);
                        let word = self.ext_table.word(&letters);
                        let add = field.mul(&c, rc);
                        match work.remove(&word) {
                            None => {
                                work.insert(word, add);
                            }
                            Some(old) => {
                                let sum = field.add(&old, &add);
                                if !field.is_zero(&sum) {
                                    work.insert(word, sum);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// All irreducible words of one degree, ascending in the canonical
    /// order.
    pub fn basis_words(&self, degree: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut letters = Vec::new();
        self.walk_basis(&mut letters, 0, degree, &mut |w| out.push(w));
        out
    }

    /// Irreducible words embedded into the base algebra, grouped by degree
    /// `0..=max_degree`. This is the shape `oracle::verify_basis` consumes.
    pub fn basis_elements(&self, max_degree: u32) -> Result<Vec<Vec<Element>>> {
        let mut out = Vec::with_capacity(max_degree as usize + 1);
        for d in 0..=max_degree {
            let mut elems = Vec::new();
            for w in self.basis_words(d) {
                let e = Element::from_term(
                    self.base.field(),
                    self.ext_table.clone(),
                    w,
                    None,
                );
                elems.push(self.embed(&e)?);
            }
            out.push(elems);
        }
        Ok(out)
    }

    /// Certify the irreducible words against the rank oracle: in each degree
    /// up to `max_degree` they must be independent modulo the ideal and
    /// exactly fill the quotient.
    pub fn verify_basis(&self, max_degree: u32) -> Result<crate::oracle::BasisReport> {
        crate::oracle::verify_basis(self.base(), &self.basis_elements(max_degree)?)
    }

    /// Number of irreducible words in each degree `0..=max_degree`.
    pub fn dimensions(&self, max_degree: u32) -> Vec<usize> {
        let mut counts = vec![0usize; max_degree as usize + 1];
        let mut letters = Vec::new();
        self.walk_dims(&mut letters, 0, max_degree, &mut counts);
        counts
    }

    fn extends_without_redex(&self, letters: &[u32]) -> bool {
        let last = *letters.last().expect("called with at least one letter");
        for &ri in &self.rules_by_last[last as usize] {
            let lhs = self.rules[ri].lhs.letters();
            if lhs.len() <= letters.len() && letters[letters.len() - lhs.len()..] == *lhs {
                return false;
            }
        }
        true
    }

    fn walk_basis(
        &self,
        letters: &mut Vec<u32>,
        deg: u32,
        target: u32,
        emit: &mut impl FnMut(Word),
    ) {
        if deg == target {
            emit(self.ext_table.word(letters));
            return;
        }
        for l in 0..self.ext_table.len() as u32 {
            if deg + self.ext_table.degree(l) > target {
                continue;
            }
            letters.push(l);
            if self.extends_without_redex(letters) {
                self.walk_basis(letters, deg + self.ext_table.degree(l), target, emit);
            }
            letters.pop();
        }
    }

    fn walk_dims(&self, letters: &mut Vec<u32>, deg: u32, max: u32, counts: &mut [usize]) {
        counts[deg as usize] += 1;
        for l in 0..self.ext_table.len() as u32 {
            let next = deg + self.ext_table.degree(l);
            if next > max {
                continue;
            }
            letters.push(l);
            if self.extends_without_redex(letters) {
                self.walk_dims(letters, next, max, counts);
            }
            letters.pop();
        }
    }

    /// Empirical completeness check: every relation must rewrite to zero in
    /// random two-sided contexts, and every critical pair of rules must
    /// reduce to the same normal form. A clean report plus a basis
    /// certificate from the rank oracle is the full correctness argument.
    pub fn check_consistency(
        &self,
        max_degree: u32,
        samples: usize,
        seed: u64,
    ) -> Result<ConsistencyReport> {
        let field = self.base.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut products_checked = 0usize;
        let mut product_failures = Vec::new();
        for rel in self.base.effective_relations() {
            let dr = match rel.degree() {
                Degree::Homogeneous(d) => d,
                _ => unreachable!("relations are validated as homogeneous"),
            };
            if dr > max_degree {
                continue;
            }
            let mut contexts: Vec<(Element, Element)> = Vec::with_capacity(samples + 1);
            let one = Element::one(field, self.base.table().clone());
            contexts.push((one.clone(), one));
            for _ in 0..samples {
                let budget = max_degree - dr;
                let a = random_word(&mut rng, self.base.table(), budget);
                let b = random_word(&mut rng, self.base.table(), budget - a.degree());
                let a = Element::from_term(field, self.base.table().clone(), a, None);
                let b = Element::from_term(field, self.base.table().clone(), b, None);
                contexts.push((a, b));
            }
            for (a, b) in contexts {
                let product = a.mul(&rel).and_then(|ar| ar.mul(&b)).expect("same context");
                products_checked += 1;
                let nf = self.normal_form(&product)?;
                if !nf.is_zero() {
                    product_failures.push(format!(
                        "({}) * ({}) * ({}) rewrites to {}",
                        a, rel, b, nf
                    ));
                }
            }
        }

        let mut pairs_checked = 0usize;
        let mut pair_failures = Vec::new();
        for i in 0..self.rules.len() {
            for j in 0..self.rules.len() {
                let li = self.rules[i].lhs.len();
                for offset in 0..li {
                    if i == j && offset == 0 {
                        continue;
                    }
                    let super_word = match superpose(
                        self.rules[i].lhs.letters(),
                        self.rules[j].lhs.letters(),
                        offset,
                    ) {
                        None => continue,
                        Some(s) => s,
                    };
                    let word = self.ext_table.word(&super_word);
                    if word.degree() > max_degree {
                        continue;
                    }
                    pairs_checked += 1;
                    let via_i = self.splice(&super_word, 0, i);
                    let via_j = self.splice(&super_word, offset, j);
                    let ni = self.normal_form(&via_i)?;
                    let nj = self.normal_form(&via_j)?;
                    if ni != nj {
                        pair_failures.push(format!(
                            "{} reduces to {} and {}",
                            self.ext_table.format_word(&word),
                            ni,
                            nj
                        ));
                    }
                }
            }
        }

        let ok = product_failures.is_empty() && pair_failures.is_empty();
        Ok(ConsistencyReport {
            ok,
            relation_products_checked: products_checked,
            relation_product_failures: product_failures,
            critical_pairs_checked: pairs_checked,
            critical_pair_failures: pair_failures,
        })
    }

    /// Replace the lhs of `rules[ri]` at `pos` inside `letters` by its rhs.
    fn splice(&self, letters: &[u32], pos: usize, ri: usize) -> Element {
        let rule = &self.rules[ri];
        let field = self.base.field();
        let prefix = &letters[..pos];
        let suffix = &letters[pos + rule.lhs.len()..];
        let mut out = Element::zero(field, self.ext_table.clone());
        for (rw, rc) in rule.rhs.terms() {
            let mut ls = Vec::with_capacity(prefix.len() + rw.len() + suffix.len());
            ls.extend_from_slice(prefix);
            ls.extend_from_slice(rw.letters());
            ls.extend_from_slice(suffix);
            out.accumulate(self.ext_table.word(&ls), rc.clone());
        }
        out
    }
}

/// Overlay `rhs_word` onto `lhs_word` starting at `offset`; the overlap
/// must agree letterwise. Returns the combined word.
fn superpose(a: &[u32], b: &[u32], offset: usize) -> Option<Vec<u32>> {
    let overlap = usize::min(a.len() - offset, b.len());
    if a[offset..offset + overlap] != b[..overlap] {
        return None;
    }
    let mut out = a.to_vec();
    if b.len() > overlap {
        out.extend_from_slice(&b[overlap..]);
    }
    Some(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub ok: bool,
    pub relation_products_checked: usize,
    pub relation_product_failures: Vec<String>,
    pub critical_pairs_checked: usize,
    pub critical_pair_failures: Vec<String>,
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.rhs.table().format_word(&self.lhs), self.rhs)
    }
}

fn random_word(rng: &mut ChaCha8Rng, table: &Arc<GeneratorTable>, budget: u32) -> Word {
    let mut letters = Vec::new();
    let mut left = budget;
    loop {
        if uniform(rng, 4) == 0 {
            break;
        }
        let feasible: Vec<u32> =
            (0..table.len() as u32).filter(|&l| table.degree(l) <= left).collect();
        if feasible.is_empty() {
            break;
        }
        let l = feasible[uniform(rng, feasible.len() as u64) as usize];
        left -= table.degree(l);
        letters.push(l);
    }
    table.word(&letters)
}

/// Uniform draw from `0..n` by rejection, so no modulo bias.
fn uniform(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    debug_assert!(n > 0);
    let limit = u64::MAX - u64::MAX % n;
    loop {
        let v = rng.next_u64();
        if v < limit {
            return v % n;
        }
    }
}

fn assemble(
    base: Presentation,
    ext_table: Arc<GeneratorTable>,
    rules: Vec<RewriteRule>,
    base_to_ext: Vec<u32>,
    ext_embed: Vec<Element>,
) -> RewriteSystem {
    let mut rules_by_first = vec![Vec::new(); ext_table.len()];
    let mut rules_by_last = vec![Vec::new(); ext_table.len()];
    for (i, r) in rules.iter().enumerate() {
        let letters = r.lhs.letters();
        rules_by_first[letters[0] as usize].push(i);
        rules_by_last[*letters.last().expect("lhs is nonempty") as usize].push(i);
    }
    RewriteSystem { base, ext_table, rules, base_to_ext, ext_embed, rules_by_first, rules_by_last }
}

fn compile_generic(p: &Presentation) -> Result<RewriteSystem> {
    let field = p.field();
    let table = p.table().clone();
    let mut rules = Vec::new();
    for rel in p.effective_relations() {
        let (lead, c) = {
            let (w, c) = rel.leading_term().expect("relations are nonzero");
            (w.clone(), c.clone())
        };
        let inv = field.inv(&c)?;
        let mut rhs = Element::zero(field, table.clone());
        for (w, cw) in rel.terms() {
            if *w == lead {
                continue;
            }
            rhs.accumulate(w.clone(), field.neg(&field.mul(cw, &inv)));
        }
        rules.push(RewriteRule { lhs: lead, rhs });
    }
    let base_to_ext = (0..table.len() as u32).collect();
    let ext_embed = table
        .generators()
        .iter()
        .map(|g| Element::generator(field, &table, &g.name).expect("generator exists"))
        .collect();
    Ok(assemble(p.clone(), table, rules, base_to_ext, ext_embed))
}

/// Parse `lhs -> rhs` rule pairs over the extended alphabet.
fn parse_rules(
    table: &Arc<GeneratorTable>,
    field: crate::scalar::FieldTag,
    specs: &[(&str, &str)],
) -> Result<Vec<RewriteRule>> {
    let mut rules = Vec::with_capacity(specs.len());
    for (lhs, rhs) in specs {
        let lhs_elem = Element::parse(lhs, field, table)?;
        let mut terms = lhs_elem.terms();
        let lhs_word = match (terms.next(), terms.next()) {
            (Some((w, c)), None) if field.is_zero(&field.sub(c, &field.one())) => w.clone(),
            _ => {
                return Err(AlgError::IncompatibleContext(format!(
                    "rule lhs `{lhs}` must be a single word"
                )))
            }
        };
        let rhs = Element::parse(rhs, field, table)?;
        rules.push(RewriteRule { lhs: lhs_word, rhs });
    }
    Ok(rules)
}

/// Certify every rule against the relation ideal: the embedded difference
/// `lhs - rhs` must vanish in the quotient. Slices are cached per degree.
fn certify_rules(sys: &RewriteSystem) -> Result<()> {
    let mut slices: HashMap<u32, DegreeSlice> = HashMap::new();
    for rule in &sys.rules {
        let lhs = Element::from_term(
            sys.base.field(),
            sys.ext_table.clone(),
            rule.lhs.clone(),
            None,
        );
        let diff = sys.embed(&lhs)?.sub(&sys.embed(&rule.rhs)?).expect("same context");
        for part in diff.homogeneous_components() {
            let d = match part.degree() {
                Degree::Homogeneous(d) => d,
                _ => unreachable!("components are homogeneous"),
            };
            let slice = match slices.entry(d) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(v) => v.insert(DegreeSlice::build(
                    &sys.base,
                    d,
                    PivotStrategy::default(),
                    DEFAULT_WORD_CAP,
                )?),
            };
            if !slice.reduces_to_zero(&part)? {
                return Err(AlgError::RuleUnsound(rule.to_string()));
            }
        }
    }
    Ok(())
}

fn compile_glambda_char2(p: &Presentation) -> Result<RewriteSystem> {
    let field = p.field();
    let ext_table = GeneratorTable::new(vec![
        ("w1", 2),
        ("w2", 3),
        ("w3", 4),
        ("t", 1),
        ("x1", 1),
        ("x2", 2),
        ("y1", 1),
        ("y2", 2),
    ])?;
    let rules = parse_rules(
        &ext_table,
        field,
        &[
            ("t*t", "0"),
            ("x1*x1", "0"),
            ("x2*x2", "0"),
            ("y1*y1", "0"),
            ("y2*y2", "0"),
            ("x2*x1", "x1*x2"),
            ("x1*t", "t*x1 + w1"),
            ("x2*t", "t*x2 + w2"),
            ("t*w1", "w1*t"),
            ("t*w2", "w2*t"),
            ("t*w3", "w3*t"),
            ("x1*w1", "w1*x1"),
            ("x1*w2", "w1*x2 + w3"),
            ("x1*w3", "w1*x1*x2"),
            ("x2*w1", "w2*x1 + w3"),
            ("x2*w2", "w2*x2"),
            ("x2*w3", "w2*x1*x2"),
            ("y1*t", "t*y1"),
            ("y1*x1", "x1*y1"),
            ("y1*x2", "x2*y1"),
            ("y2*t", "t*y2"),
            ("y2*x1", "x1*y2"),
            ("y2*x2", "x2*y2"),
            ("y2*y1", "y1*y2"),
            ("y1*w1", "w1*y1"),
            ("y1*w2", "w2*y1"),
            ("y1*w3", "w3*y1"),
            ("y2*w1", "w1*y2"),
            ("y2*w2", "w2*y2"),
            ("y2*w3", "w3*y2"),
        ],
    )?;
    let base_table = p.table();
    let parse = |s: &str| Element::parse(s, field, base_table);
    let ext_embed = vec![
        parse("x1*t + t*x1")?,
        parse("x2*t + t*x2")?,
        parse("x1*x2*t + t*x1*x2")?,
        parse("t")?,
        parse("x1")?,
        parse("x2")?,
        parse("y1")?,
        parse("y2")?,
    ];
    let base_to_ext = vec![3, 4, 5, 6, 7];
    let sys = assemble(p.clone(), ext_table, rules, base_to_ext, ext_embed);
    certify_rules(&sys)?;
    Ok(sys)
}

fn compile_glambda_odd(p: &Presentation) -> Result<RewriteSystem> {
    let field = p.field();
    let ext_table =
        GeneratorTable::new(vec![("w3", 4), ("t", 1), ("x3", 3), ("y3", 3)])?;
    let y_moves: [(&str, &str); 3] = match p.sign_policy() {
        SignPolicy::Strict => {
            [("y3*t", "t*y3"), ("y3*x3", "x3*y3"), ("y3*w3", "w3*y3")]
        }
        // Odd-degree letters anticommute with y3; w3 has even degree.
        SignPolicy::Koszul => {
            [("y3*t", "-t*y3"), ("y3*x3", "-x3*y3"), ("y3*w3", "w3*y3")]
        }
    };
    let mut specs: Vec<(&str, &str)> = vec![
        ("t*t", "0"),
        ("x3*x3", "0"),
        ("y3*y3", "0"),
        ("x3*t", "w3 - t*x3"),
        ("t*w3", "w3*t"),
        ("x3*w3", "w3*x3"),
    ];
    specs.extend_from_slice(&y_moves);
    let rules = parse_rules(&ext_table, field, &specs)?;
    let base_table = p.table();
    let parse = |s: &str| Element::parse(s, field, base_table);
    let ext_embed =
        vec![parse("x3*t + t*x3")?, parse("t")?, parse("x3")?, parse("y3")?];
    let base_to_ext = vec![1, 2, 3];
    let sys = assemble(p.clone(), ext_table, rules, base_to_ext, ext_embed);
    certify_rules(&sys)?;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{preset_algebra, PresetName};
    use crate::scalar::FieldTag;
    use std::collections::BTreeSet;

    fn f2_system() -> RewriteSystem {
        let p = preset_algebra(PresetName::GLambda, FieldTag::Prime(2)).unwrap();
        RewriteSystem::compile(&p).unwrap()
    }

    fn q_system() -> RewriteSystem {
        let p = preset_algebra(PresetName::GLambda, FieldTag::Rationals).unwrap();
        RewriteSystem::compile(&p).unwrap()
    }

    #[test]
    fn straightening_normal_forms_match_hand_computations() {
        let sys = f2_system();
        let nf = |s: &str| {
            sys.normal_form(&sys.parse_ext(s).unwrap()).unwrap().to_string()
        };
        assert_eq!(nf("x1*t"), "w1 + t*x1");
        assert_eq!(nf("x1*w2"), "w1*x2 + w3");
        assert_eq!(nf("t*t"), "0");
        assert_eq!(nf("x1*x2*t"), "w3 + t*x1*x2");
        assert_eq!(nf("w1 + t*x1"), "w1 + t*x1");
    }

    #[test]
    fn odd_field_normal_forms_carry_signs() {
        let sys = q_system();
        let nf = |s: &str| {
            sys.normal_form(&sys.parse_ext(s).unwrap()).unwrap().to_string()
        };
        assert_eq!(nf("x3*t"), "w3 - t*x3");
        assert_eq!(nf("t*x3*t"), "w3*t");
        assert_eq!(nf("x3*t*x3"), "w3*x3");
        assert_eq!(nf("t*t"), "0");
    }

    #[test]
    fn degree_two_basis_is_in_canonical_order() {
        let sys = f2_system();
        let words: Vec<String> = sys
            .basis_words(2)
            .iter()
            .map(|w| sys.ext_table().format_word(w))
            .collect();
        assert_eq!(words, ["w1", "t*x1", "t*y1", "x1*y1", "x2", "y2"]);
        let deg1: Vec<String> = sys
            .basis_words(1)
            .iter()
            .map(|w| sys.ext_table().format_word(w))
            .collect();
        assert_eq!(deg1, ["t", "x1", "y1"]);
    }

    #[test]
    fn rewrite_dimensions_match_the_frozen_vector() {
        let sys = f2_system();
        assert_eq!(
            sys.dimensions(12),
            [1, 3, 6, 11, 17, 25, 37, 54, 79, 116, 170, 249, 365]
        );
        let odd = q_system();
        assert_eq!(odd.dimensions(8), [1, 1, 0, 2, 3, 1, 1, 3, 3]);
    }

    #[test]
    fn normal_form_is_idempotent_and_kills_relations() {
        let sys = f2_system();
        for s in ["x1*t*x1*t", "x2*x1*t", "y2*x2*t*x1", "x1*x2*t*t*x1"] {
            let e = sys.parse_ext(s).unwrap();
            let n1 = sys.normal_form(&e).unwrap();
            let n2 = sys.normal_form(&n1).unwrap();
            assert_eq!(n1, n2, "input {s}");
        }
        for rel in sys.base().effective_relations() {
            assert!(sys.normal_form(&rel).unwrap().is_zero(), "{rel}");
        }
    }

    #[test]
    fn consistency_check_passes_for_the_bespoke_systems() {
        let report = f2_system().check_consistency(8, 10, 7).unwrap();
        assert!(report.ok, "{:?}", report);
        assert!(report.critical_pairs_checked > 50);
        let report = q_system().check_consistency(10, 10, 7).unwrap();
        assert!(report.ok, "{:?}", report);
        let p3 = preset_algebra(PresetName::GLambda, FieldTag::Prime(3)).unwrap();
        let report =
            RewriteSystem::compile(&p3).unwrap().check_consistency(10, 10, 7).unwrap();
        assert!(report.ok, "{:?}", report);
    }

    #[test]
    fn non_confluent_orientation_is_detected() {
        // y*y -> x*x alone is not confluent: y*y*y reduces to both x*x*y
        // and y*x*x, which are distinct irreducible words.
        let table = GeneratorTable::new(vec![("x", 1), ("y", 1)]).unwrap();
        let f = FieldTag::Prime(2);
        let rel = Element::parse("y*y + x*x", f, &table).unwrap();
        let p = Presentation::new(f, table, vec![rel], BTreeSet::new(), SignPolicy::Strict)
            .unwrap();
        let sys = RewriteSystem::compile(&p).unwrap();
        let report = sys.check_consistency(6, 10, 7).unwrap();
        assert!(!report.ok);
        assert!(!report.critical_pair_failures.is_empty());
        // The rank oracle rejects the claimed basis as overcounting.
        let claimed = sys.basis_elements(3).unwrap();
        assert_eq!(claimed[3].len(), 5);
        let report = crate::oracle::verify_basis(&p, &claimed).unwrap();
        assert!(!report.ok);
        assert!(!report.degrees[3].count_matches);
        assert_eq!(report.degrees[3].quotient_dim, 4);
    }

    #[test]
    fn exterior_presets_compile_generically_and_correctly() {
        let p = preset_algebra(PresetName::K1, FieldTag::Prime(2)).unwrap();
        let sys = RewriteSystem::compile(&p).unwrap();
        assert!(sys.ext_table().same_table(p.table()));
        assert_eq!(sys.dimensions(5), [1, 2, 2, 2, 1, 0]);
        let report = sys.check_consistency(6, 5, 1).unwrap();
        assert!(report.ok, "{:?}", report);
    }

    #[test]
    fn embedded_normal_forms_stay_in_the_right_class() {
        let sys = f2_system();
        let p = sys.base().clone();
        for s in ["x1*t", "x1*x2*t", "x2*t*x1", "y1*x1*t*t"] {
            let e = p.parse_element(s).unwrap();
            let nf = sys.normal_form(&e).unwrap();
            let diff = sys.embed(&nf).unwrap().sub(&e).unwrap();
            assert!(
                crate::oracle::ideal_contains(&p, &diff).unwrap(),
                "nf changed the class of {s}"
            );
        }
    }

    #[test]
    fn basis_words_agree_with_the_rank_oracle_in_low_degrees() {
        for field in [FieldTag::Prime(2), FieldTag::Prime(5), FieldTag::Rationals] {
            let p = preset_algebra(PresetName::GLambda, field).unwrap();
            let sys = RewriteSystem::compile(&p).unwrap();
            let claimed = sys.basis_elements(6).unwrap();
            let report = crate::oracle::verify_basis(&p, &claimed).unwrap();
            assert!(report.ok, "field {field}: {:?}", report.degrees);
        }
    }
}
