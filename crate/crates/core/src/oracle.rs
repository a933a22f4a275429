//! Exact rank computations on degree slices of a presented algebra.
//!
//! A degree-`d` slice spans all free words of degree `d`; the relation rows
//! are every product `a * r * b` with `r` an effective relation and `a`, `b`
//! free words of the complementary degrees. Gaussian elimination over the
//! exact field gives the rank of the ideal in that degree, hence the graded
//! dimension of the quotient, without any term rewriting. This is the
//! independent route used to certify rewrite-system output.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::element::{Degree, Element};
use crate::error::{AlgError, Result};
use crate::presentation::Presentation;
use crate::scalar::{FieldTag, Scalar};
use crate::word::{GeneratorTable, Word};

/// Largest slice the oracle will materialize by default.
pub const DEFAULT_WORD_CAP: usize = 500_000;

/// Which column of a row becomes its pivot. `HighColumn` pivots on the
/// largest word in the canonical order; both strategies must produce the
/// same rank.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotStrategy {
    LowColumn,
    #[default]
    HighColumn,
}

/// Row space in echelon form over an exact field. Rows are sparse, sorted
/// by column, with pivot coefficient normalized to 1. Stored rows are never
/// revisited; only incoming rows get reduced.
struct SparseSpace {
    field: FieldTag,
    strategy: PivotStrategy,
    rows: Vec<Vec<(u32, Scalar)>>,
    pivots: HashMap<u32, usize>,
}

impl SparseSpace {
    fn new(field: FieldTag, strategy: PivotStrategy) -> SparseSpace {
        SparseSpace { field, strategy, rows: Vec::new(), pivots: HashMap::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivot_of<'a>(&self, row: &'a [(u32, Scalar)]) -> Option<&'a (u32, Scalar)> {
        match self.strategy {
            PivotStrategy::LowColumn => row.first(),
            PivotStrategy::HighColumn => row.last(),
        }
    }

    /// `row - a * other`, where `other` has pivot coefficient 1 at a column
    /// where `row` has coefficient `a`. Both inputs sorted by column.
    fn sub_scaled(
        &self,
        row: &[(u32, Scalar)],
        other: &[(u32, Scalar)],
        a: &Scalar,
    ) -> Vec<(u32, Scalar)> {
        let f = self.field;
        let mut out = Vec::with_capacity(row.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < other.len() {
            let take_row = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
            let take_other = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
            if take_row {
                out.push(row[i].clone());
                i += 1;
            } else if take_other {
                out.push((other[j].0, f.neg(&f.mul(a, &other[j].1))));
                j += 1;
            } else {
                let c = f.sub(&row[i].1, &f.mul(a, &other[j].1));
                if !f.is_zero(&c) {
                    out.push((row[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Reduce against the stored rows. `None` means the row lies in the
    /// span; otherwise the returned row is normalized and pivots on a free
    /// column.
    fn reduce(&self, mut row: Vec<(u32, Scalar)>) -> Option<Vec<(u32, Scalar)>> {
        loop {
            let (col, coeff) = match self.pivot_of(&row) {
                None => return None,
                Some(&(c, ref a)) => (c, a.clone()),
            };
            match self.pivots.get(&col) {
                Some(&ri) => row = self.sub_scaled(&row, &self.rows[ri], &coeff),
                None => {
                    let inv = self.field.inv(&coeff).expect("pivot coefficient is nonzero");
                    for entry in &mut row {
                        entry.1 = self.field.mul(&entry.1, &inv);
                    }
                    return Some(row);
                }
            }
        }
    }

    /// Returns true when the row enlarged the span.
    fn insert(&mut self, row: Vec<(u32, Scalar)>) -> bool {
        match self.reduce(row) {
            None => false,
            Some(row) => {
                let &(col, _) = self.pivot_of(&row).expect("reduced row is nonzero");
                self.pivots.insert(col, self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }
}

/// All free words of one degree together with the echelonized relation rows
/// in that degree.
pub struct DegreeSlice {
    field: FieldTag,
    table: Arc<GeneratorTable>,
    degree: u32,
    words: Vec<Word>,
    index: HashMap<Word, u32>,
    space: SparseSpace,
}

impl DegreeSlice {
    /// Materialize the slice. Every degree up to `degree` must stay within
    /// `cap` free words.
    pub fn build(
        p: &Presentation,
        degree: u32,
        strategy: PivotStrategy,
        cap: usize,
    ) -> Result<DegreeSlice> {
        let table = p.table().clone();
        for d in 0..=degree {
            let n = table.count_words(d);
            if n > cap as u128 {
                return Err(AlgError::ResourceCap { degree: d, words: n, cap });
            }
        }
        let mut words_by_degree: Vec<Vec<Word>> = Vec::with_capacity(degree as usize + 1);
        for d in 0..=degree {
            words_by_degree.push(table.words_of_degree(d));
        }
        let words = words_by_degree[degree as usize].clone();
        let index: HashMap<Word, u32> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();

        let mut space = SparseSpace::new(p.field(), strategy);
        for rel in p.effective_relations() {
            let dr = match rel.degree() {
                Degree::Homogeneous(d) => d,
                _ => unreachable!("relations are validated as homogeneous"),
            };
            if dr > degree {
                continue;
            }
            let terms: Vec<(&Word, &Scalar)> = rel.terms().collect();
            for da in 0..=(degree - dr) {
                let db = degree - dr - da;
                for a in &words_by_degree[da as usize] {
                    for b in &words_by_degree[db as usize] {
                        let mut row: Vec<(u32, Scalar)> = terms
                            .iter()
                            .map(|(w, c)| {
                                let mut letters =
                                    Vec::with_capacity(a.len() + w.len() + b.len());
                                letters.extend_from_slice(a.letters());
                                letters.extend_from_slice(w.letters());
                                letters.extend_from_slice(b.letters());
                                let full = table.word(&letters);
                                (index[&full], (*c).clone())
                            })
                            .collect();
                        row.sort_unstable_by_key(|&(c, _)| c);
                        space.insert(row);
                    }
                }
            }
        }
        Ok(DegreeSlice { field: p.field(), table, degree, words, index, space })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Rank of the ideal in this degree.
    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    /// Dimension of the quotient algebra in this degree.
    pub fn quotient_dim(&self) -> usize {
        self.words.len() - self.space.rank()
    }

    fn element_row(&self, e: &Element) -> Result<Vec<(u32, Scalar)>> {
        match e.degree() {
            Degree::Zero => return Ok(Vec::new()),
            Degree::Homogeneous(d) if d == self.degree => {}
            Degree::Homogeneous(d) => {
                return Err(AlgError::DegreeMismatch { expected: self.degree, found: d })
            }
            Degree::Mixed => return Err(AlgError::NotHomogeneous),
        }
        if e.field() != self.field || !e.table().same_table(&self.table) {
            return Err(AlgError::IncompatibleContext(
                "element belongs to a different algebra".to_string(),
            ));
        }
        let mut row: Vec<(u32, Scalar)> =
            e.terms().map(|(w, c)| (self.index[w], c.clone())).collect();
        row.sort_unstable_by_key(|&(c, _)| c);
        Ok(row)
    }

    /// Does the element lie in the ideal in this degree?
    pub fn reduces_to_zero(&self, e: &Element) -> Result<bool> {
        Ok(self.space.reduce(self.element_row(e)?).is_none())
    }

    /// Adjoin the element's row; true when it was independent of the span.
    pub fn extends_rank(&mut self, e: &Element) -> Result<bool> {
        let row = self.element_row(e)?;
        Ok(self.space.insert(row))
    }
}

/// Graded dimension of the quotient in one degree, default strategy and cap.
pub fn quotient_dimension(p: &Presentation, degree: u32) -> Result<usize> {
    quotient_dimension_with(p, degree, PivotStrategy::default(), DEFAULT_WORD_CAP)
}

pub fn quotient_dimension_with(
    p: &Presentation,
    degree: u32,
    strategy: PivotStrategy,
    cap: usize,
) -> Result<usize> {
    Ok(DegreeSlice::build(p, degree, strategy, cap)?.quotient_dim())
}

/// Quotient dimensions for degrees `0..=max_degree`.
pub fn dimension_vector(p: &Presentation, max_degree: u32) -> Result<Vec<usize>> {
    (0..=max_degree).map(|d| quotient_dimension(p, d)).collect()
}

/// Exact two-sided ideal membership, one slice per homogeneous component.
pub fn ideal_contains(p: &Presentation, e: &Element) -> Result<bool> {
    for part in e.homogeneous_components() {
        let d = match part.degree() {
            Degree::Homogeneous(d) => d,
            _ => unreachable!("components are homogeneous"),
        };
        let slice = DegreeSlice::build(p, d, PivotStrategy::default(), DEFAULT_WORD_CAP)?;
        if !slice.reduces_to_zero(&part)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of checking one degree of a claimed basis.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub degree: u32,
    pub word_count: usize,
    pub ideal_rank: usize,
    pub quotient_dim: usize,
    pub claimed: usize,
    pub count_matches: bool,
    pub independent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub ok: bool,
    pub degrees: Vec<DegreeCheck>,
}

/// Certify a claimed graded basis: `claimed[d]` lists elements of degree `d`
/// asserted to span the quotient in that degree. Each degree passes when the
/// count equals the quotient dimension and each element enlarges the ideal's
/// row space (so the claimed elements are independent mod the ideal).
pub fn verify_basis(p: &Presentation, claimed: &[Vec<Element>]) -> Result<BasisReport> {
    verify_basis_with(p, claimed, PivotStrategy::default(), DEFAULT_WORD_CAP)
}

pub fn verify_basis_with(
    p: &Presentation,
    claimed: &[Vec<Element>],
    strategy: PivotStrategy,
    cap: usize,
) -> Result<BasisReport> {
    let mut degrees = Vec::with_capacity(claimed.len());
    for (d, elems) in claimed.iter().enumerate() {
        let mut slice = DegreeSlice::build(p, d as u32, strategy, cap)?;
        let ideal_rank = slice.rank();
        let quotient_dim = slice.quotient_dim();
        let count_matches = quotient_dim == elems.len();
        let mut independent = true;
        for e in elems {
            if !slice.extends_rank(e)? {
                independent = false;
            }
        }
        degrees.push(DegreeCheck {
            degree: d as u32,
            word_count: slice.word_count(),
            ideal_rank,
            quotient_dim,
            claimed: elems.len(),
            count_matches,
            independent,
        });
    }
    let ok = degrees.iter().all(|c| c.count_matches && c.independent);
    Ok(BasisReport { ok, degrees })
}
