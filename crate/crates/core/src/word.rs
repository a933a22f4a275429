//! Generator tables and words of the free monoid on graded letters.
//!
//! A [`GeneratorTable`] fixes the alphabet: an ordered list of named
//! generators with positive integer degrees. Listing order doubles as the
//! precedence used by the canonical term order. A [`Word`] is a finite
//! product of letters from one table; words from different tables must never
//! be mixed, and the element layer enforces that.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{AlgError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Ordered alphabet of graded generators.
#[derive(Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    entries: Vec<Generator>,
    by_name: HashMap<String, u32>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GeneratorTable {
    pub fn new<S: Into<String>>(gens: Vec<(S, u32)>) -> Result<Arc<GeneratorTable>> {
        let mut entries = Vec::with_capacity(gens.len());
        let mut by_name = HashMap::new();
        for (i, (name, degree)) in gens.into_iter().enumerate() {
            let name = name.into();
            if !valid_name(&name) {
                return Err(AlgError::InvalidName(name));
            }
            if degree == 0 {
                return Err(AlgError::InvalidDegree(name));
            }
            if by_name.insert(name.clone(), i as u32).is_some() {
                return Err(AlgError::DuplicateGenerator(name));
            }
            entries.push(Generator { name, degree });
        }
        Ok(Arc::new(GeneratorTable { entries, by_name }))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.entries
    }

    pub fn name(&self, letter: u32) -> &str {
        &self.entries[letter as usize].name
    }

    pub fn degree(&self, letter: u32) -> u32 {
        self.entries[letter as usize].degree
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.by_name.get(name).copied()
    }

    /// Structural compatibility check used by all element operations.
    pub fn same_table(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.entries == other.entries
    }

    pub fn word(&self, letters: &[u32]) -> Word {
        let degree = letters.iter().map(|&l| self.degree(l)).sum();
        Word { degree, letters: letters.to_vec() }
    }

    pub fn empty_word(&self) -> Word {
        Word { degree: 0, letters: Vec::new() }
    }

    pub fn letter(&self, letter: u32) -> Word {
        self.word(&[letter])
    }

    pub fn concat(&self, a: &Word, b: &Word) -> Word {
        let mut letters = Vec::with_capacity(a.letters.len() + b.letters.len());
        letters.extend_from_slice(&a.letters);
        letters.extend_from_slice(&b.letters);
        Word { degree: a.degree + b.degree, letters }
    }

    /// `x1*t` style rendering; the empty word prints as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.letters.is_empty() {
            return "1".to_string();
        }
        w.letters
            .iter()
            .map(|&l| self.name(l).to_string())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Number of free words of the given degree, computed without
    /// enumeration so resource caps can be checked up front.
    pub fn count_words(&self, degree: u32) -> u128 {
        let mut counts = vec![0u128; degree as usize + 1];
        counts[0] = 1;
        for d in 1..=degree as usize {
            for g in &self.entries {
                let gd = g.degree as usize;
                if gd <= d {
                    counts[d] = counts[d].saturating_add(counts[d - gd]);
                }
            }
        }
        counts[degree as usize]
    }

    /// All free words of the given degree in canonical (deglex) order.
    pub fn words_of_degree(&self, degree: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.enumerate(degree, &mut prefix, &mut out);
        out
    }

    fn enumerate(&self, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(self.word(prefix));
            return;
        }
        for (i, g) in self.entries.iter().enumerate() {
            if g.degree <= remaining {
                prefix.push(i as u32);
                self.enumerate(remaining - g.degree, prefix, out);
                prefix.pop();
            }
        }
    }
}

/// A product of letters, compared by degree first and then left to right by
/// letter precedence (deglex). The degree is cached at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    degree: u32,
    letters: Vec<u32>,
}

impl Word {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn glambda_table() -> Arc<GeneratorTable> {
        GeneratorTable::new(vec![("t", 1), ("x1", 1), ("x2", 2), ("y1", 1), ("y2", 2)])
            .unwrap()
    }

    #[test]
    fn table_rejects_bad_input() {
        assert!(matches!(
            GeneratorTable::new(vec![("t", 1), ("t", 2)]),
            Err(AlgError::DuplicateGenerator(_))
        ));
        assert!(matches!(
            GeneratorTable::new(vec![("2x", 1)]),
            Err(AlgError::InvalidName(_))
        ));
        assert!(matches!(
            GeneratorTable::new(vec![("t", 0)]),
            Err(AlgError::InvalidDegree(_))
        ));
    }

    #[test]
    fn word_order_is_degree_then_lex() {
        let t = glambda_table();
        let x1t = t.word(&[1, 0]);
        let tx1 = t.word(&[0, 1]);
        let x2 = t.word(&[2]);
        assert!(tx1 < x1t);
        // Same degree: the one-letter word x2 starts with a later letter
        // than t*x1 does, so it compares above both.
        assert!(x1t < x2);
        assert!(t.empty_word() < tx1);
        assert_eq!(x1t.degree(), 2);
    }

    #[test]
    fn enumeration_matches_count_and_is_sorted() {
        let t = glambda_table();
        for d in 0..=6 {
            let words = t.words_of_degree(d);
            assert_eq!(words.len() as u128, t.count_words(d));
            let mut sorted = words.clone();
            sorted.sort();
            assert_eq!(words, sorted);
        }
        // Three letters of degree 1 and two of degree 2: b_d = 3b_{d-1} + 2b_{d-2}.
        assert_eq!(t.count_words(3), 39);
        assert_eq!(t.count_words(8), 22363);
    }

    #[test]
    fn formatting_round_trips_names() {
        let t = glambda_table();
        assert_eq!(t.format_word(&t.word(&[1, 0])), "x1*t");
        assert_eq!(t.format_word(&t.empty_word()), "1");
        assert_eq!(t.index_of("y2"), Some(4));
        assert_eq!(t.index_of("w1"), None);
    }
}
