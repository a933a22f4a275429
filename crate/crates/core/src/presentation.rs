//! Finitely presented graded algebras and the built-in presets.
//!
//! A presentation is a generator table, a list of homogeneous relations in
//! the free algebra, a set of generators declared central, and a sign policy
//! saying how centrality turns into commutation relations. Declaring `c`
//! central expands to one relation `g*c - s*c*g` per other generator `g`,
//! with `s = 1` under the strict policy and `s = (-1)^(|g||c|)` under the
//! Koszul policy.

use std::collections::BTreeSet;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::element::{Degree, Element};
use crate::error::{AlgError, Result};
use crate::scalar::FieldTag;
use crate::word::GeneratorTable;

/// How central generators commute with the rest of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignPolicy {
    #[serde(rename = "strict")]
    Strict,
    #[serde(rename = "koszul")]
    Koszul,
}

/// Families whose presentations get special treatment downstream (bespoke
/// rewrite systems, known coproducts). User presentations carry `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    So3,
    K0,
    K1,
    GLambda,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    field: FieldTag,
    table: Arc<GeneratorTable>,
    relations: Vec<Element>,
    central: BTreeSet<u32>,
    sign_policy: SignPolicy,
    family: Option<Family>,
}

impl Presentation {
    pub fn new(
        field: FieldTag,
        table: Arc<GeneratorTable>,
        relations: Vec<Element>,
        central: BTreeSet<u32>,
        sign_policy: SignPolicy,
    ) -> Result<Presentation> {
        for r in &relations {
            if r.is_zero() {
                return Err(AlgError::ZeroRelation);
            }
            match r.degree() {
                Degree::Homogeneous(d) if d >= 1 => {}
                Degree::Homogeneous(_) => {
                    return Err(AlgError::IncompatibleContext(
                        "a degree-0 relation collapses the algebra".to_string(),
                    ))
                }
                _ => return Err(AlgError::InhomogeneousRelation(r.to_string())),
            }
            if r.field() != field || !r.table().same_table(&table) {
                return Err(AlgError::IncompatibleContext(
                    "relation written over a different table or field".to_string(),
                ));
            }
        }
        for &c in &central {
            if c as usize >= table.len() {
                return Err(AlgError::IncompatibleContext(format!(
                    "central index {c} out of range"
                )));
            }
        }
        Ok(Presentation { field, table, relations, central, sign_policy, family: None })
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn central(&self) -> &BTreeSet<u32> {
        &self.central
    }

    pub fn sign_policy(&self) -> SignPolicy {
        self.sign_policy
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// Same presentation under the other commutation convention.
    pub fn with_sign_policy(mut self, policy: SignPolicy) -> Presentation {
        self.sign_policy = policy;
        self
    }

    fn with_family(mut self, family: Family) -> Presentation {
        self.family = Some(family);
        self
    }

    /// Parse a relation in this presentation's context.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        Element::parse(text, self.field, &self.table)
    }

    /// Explicit relations plus the expansion of centrality declarations.
    /// Each unordered pair of generators contributes at most one commutation
    /// relation.
    pub fn effective_relations(&self) -> Vec<Element> {
        let mut out = self.relations.clone();
        for &c in &self.central {
            for g in 0..self.table.len() as u32 {
                if g == c {
                    continue;
                }
                // When both letters are central keep one orientation only.
                if self.central.contains(&g) && g > c {
                    continue;
                }
                let sign_exp = self.table.degree(g) * self.table.degree(c);
                let koszul_negative =
                    self.sign_policy == SignPolicy::Koszul && sign_exp % 2 == 1;
                let gc = self.table.word(&[g, c]);
                let cg = self.table.word(&[c, g]);
                let minus_sigma = if koszul_negative {
                    self.field.one()
                } else {
                    self.field.neg(&self.field.one())
                };
                let rel = Element::from_terms(
                    self.field,
                    self.table.clone(),
                    [(gc, self.field.one()), (cg, minus_sigma)],
                );
                out.push(rel);
            }
        }
        out
    }

    /// Exterior algebra: every generator squares to zero and is central.
    pub fn exterior_algebra<S: Into<String> + Clone>(
        gens: &[(S, u32)],
        field: FieldTag,
    ) -> Result<Presentation> {
        let table = GeneratorTable::new(gens.to_vec().into_iter().map(|(n, d)| (n.into(), d)).collect())?;
        let mut relations = Vec::new();
        for i in 0..table.len() as u32 {
            let sq = table.word(&[i, i]);
            relations.push(Element::from_term(field, table.clone(), sq, None));
        }
        let central = (0..table.len() as u32).collect();
        Presentation::new(field, table, relations, central, SignPolicy::Strict)
    }

    /// Truncated polynomial algebra: generator `i` is central and satisfies
    /// `g^orders[i] = 0`.
    pub fn truncated_polynomial<S: Into<String> + Clone>(
        gens: &[(S, u32)],
        orders: &[u32],
        field: FieldTag,
    ) -> Result<Presentation> {
        let table = GeneratorTable::new(gens.to_vec().into_iter().map(|(n, d)| (n.into(), d)).collect())?;
        if orders.len() != table.len() {
            return Err(AlgError::IncompatibleContext(
                "one truncation order per generator is required".to_string(),
            ));
        }
        let mut relations = Vec::new();
        for (i, &k) in orders.iter().enumerate() {
            if k < 2 {
                return Err(AlgError::IncompatibleContext(
                    "truncation order must be at least 2".to_string(),
                ));
            }
            let letters = vec![i as u32; k as usize];
            let w = table.word(&letters);
            relations.push(Element::from_term(field, table.clone(), w, None));
        }
        let central = (0..table.len() as u32).collect();
        Presentation::new(field, table, relations, central, SignPolicy::Strict)
    }

    /// Free associative algebra: no relations, nothing central.
    pub fn free_algebra<S: Into<String> + Clone>(
        gens: &[(S, u32)],
        field: FieldTag,
    ) -> Result<Presentation> {
        let table = GeneratorTable::new(gens.to_vec().into_iter().map(|(n, d)| (n.into(), d)).collect())?;
        Presentation::new(field, table, Vec::new(), BTreeSet::new(), SignPolicy::Strict)
    }

    /// Tensor product: `p`'s generators first, then `q`'s. Generators from
    /// different factors commute (with the shared sign policy); pairs where
    /// one side is already central are covered by the centrality expansion.
    pub fn tensor_product(p: &Presentation, q: &Presentation) -> Result<Presentation> {
        if p.field != q.field {
            return Err(AlgError::IncompatibleContext(format!(
                "tensor factors over {} and {}",
                p.field, q.field
            )));
        }
        if p.sign_policy != q.sign_policy {
            return Err(AlgError::PolicyMismatch);
        }
        for g in q.table.generators() {
            if p.table.index_of(&g.name).is_some() {
                return Err(AlgError::NameCollision(g.name.clone()));
            }
        }
        let mut gens: Vec<(String, u32)> = p
            .table
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect();
        gens.extend(q.table.generators().iter().map(|g| (g.name.clone(), g.degree)));
        let table = GeneratorTable::new(gens)?;
        let offset = p.table.len() as u32;

        let identity: Vec<u32> = (0..offset).collect();
        let shifted: Vec<u32> = (0..q.table.len() as u32).map(|i| i + offset).collect();
        let mut relations: Vec<Element> = p
            .relations
            .iter()
            .map(|r| r.relabel(table.clone(), &identity))
            .collect();
        relations.extend(q.relations.iter().map(|r| r.relabel(table.clone(), &shifted)));

        let mut central: BTreeSet<u32> = p.central.clone();
        central.extend(q.central.iter().map(|&c| c + offset));

        // Cross commutation for pairs not already handled by centrality.
        for a in 0..offset {
            if central.contains(&a) {
                continue;
            }
            for b in offset..table.len() as u32 {
                if central.contains(&b) {
                    continue;
                }
                let sign_exp = table.degree(a) * table.degree(b);
                let koszul_negative =
                    p.sign_policy == SignPolicy::Koszul && sign_exp % 2 == 1;
                let ba = table.word(&[b, a]);
                let ab = table.word(&[a, b]);
                let minus_sigma = if koszul_negative {
                    p.field.one()
                } else {
                    p.field.neg(&p.field.one())
                };
                relations.push(Element::from_terms(
                    p.field,
                    table.clone(),
                    [(ba, p.field.one()), (ab, minus_sigma)],
                ));
            }
        }
        Presentation::new(p.field, table, relations, central, p.sign_policy)
    }
}

/// Built-in preset names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetName {
    So3,
    K0,
    K1,
    GLambda,
    U0Model,
    U1Model,
    SmashS1So3,
    LoopsModel,
}

pub const PRESET_NAMES: [PresetName; 8] = [
    PresetName::So3,
    PresetName::K0,
    PresetName::K1,
    PresetName::GLambda,
    PresetName::U0Model,
    PresetName::U1Model,
    PresetName::SmashS1So3,
    PresetName::LoopsModel,
];

impl PresetName {
    pub fn as_str(&self) -> &'static str {
        match self {
            PresetName::So3 => "so3",
            PresetName::K0 => "k0",
            PresetName::K1 => "k1",
            PresetName::GLambda => "glambda",
            PresetName::U0Model => "u0_model",
            PresetName::U1Model => "u1_model",
            PresetName::SmashS1So3 => "smash_s1_so3",
            PresetName::LoopsModel => "loops_model",
        }
    }
}

impl FromStr for PresetName {
    type Err = AlgError;

    fn from_str(s: &str) -> Result<PresetName> {
        PRESET_NAMES
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| AlgError::UnknownPreset { name: s.to_string(), field: "-".to_string() })
    }
}

/// Closed-form series data: numerator and denominator polynomials with
/// integer coefficients, constant denominator term 1 or -1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesRecipe {
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
    /// Short description of the basis-word schema the series counts.
    pub schema: &'static str,
}

/// What a preset resolves to: an honest presentation, or graded dimension
/// data given by a closed form (for spaces modeled only through their
/// basis-word schema).
#[derive(Clone, Debug)]
pub enum PresetValue {
    Algebra(Presentation),
    Dimensions(SeriesRecipe),
}

const W_DENOM_F2: [i64; 5] = [1, 0, -1, -1, -1];
const W_DENOM_ODD: [i64; 5] = [1, 0, 0, 0, -1];

/// Resolve a preset over a field. Every preset supports `F2`; the odd-prime
/// and rational variants use the smaller presentations valid there.
pub fn preset(name: PresetName, field: FieldTag) -> Result<PresetValue> {
    let char2 = field.characteristic() == 2;
    let val = match name {
        PresetName::So3 => {
            let p = if char2 {
                Presentation::exterior_algebra(&[("x1", 1), ("x2", 2)], field)?
            } else {
                Presentation::exterior_algebra(&[("x3", 3)], field)?
            };
            PresetValue::Algebra(p.with_family(Family::So3))
        }
        PresetName::K0 => {
            let p = if char2 {
                Presentation::exterior_algebra(
                    &[("x1", 1), ("x2", 2), ("z1", 1), ("z2", 2)],
                    field,
                )?
            } else {
                Presentation::exterior_algebra(&[("x3", 3), ("z3", 3)], field)?
            };
            PresetValue::Algebra(p.with_family(Family::K0))
        }
        PresetName::K1 => {
            let p = if char2 {
                Presentation::exterior_algebra(&[("t", 1), ("y1", 1), ("y2", 2)], field)?
            } else {
                Presentation::exterior_algebra(&[("t", 1), ("y3", 3)], field)?
            };
            PresetValue::Algebra(p.with_family(Family::K1))
        }
        PresetName::GLambda => PresetValue::Algebra(glambda(field)?),
        PresetName::U0Model => PresetValue::Dimensions(SeriesRecipe {
            numerator: vec![1, 1],
            denominator: if char2 { W_DENOM_F2.to_vec() } else { W_DENOM_ODD.to_vec() },
            schema: "words v_I * t^e",
        }),
        PresetName::U1Model => PresetValue::Dimensions(SeriesRecipe {
            numerator: if char2 { vec![1, 1, 1, 1] } else { vec![1, 0, 0, 1] },
            denominator: if char2 { W_DENOM_F2.to_vec() } else { W_DENOM_ODD.to_vec() },
            schema: "words u_I * x^e",
        }),
        PresetName::SmashS1So3 => PresetValue::Dimensions(SeriesRecipe {
            numerator: if char2 { vec![0, 0, 1, 1, 1] } else { vec![0, 0, 0, 0, 1] },
            denominator: vec![1],
            schema: "reduced classes of the suspended rotation group",
        }),
        PresetName::LoopsModel => PresetValue::Dimensions(SeriesRecipe {
            numerator: vec![1],
            denominator: if char2 { W_DENOM_F2.to_vec() } else { W_DENOM_ODD.to_vec() },
            schema: "tensor algebra on the reduced suspended classes",
        }),
    };
    Ok(val)
}

/// The preset algebra behind `preset(name, field)` when it is an algebra.
pub fn preset_algebra(name: PresetName, field: FieldTag) -> Result<Presentation> {
    match preset(name, field)? {
        PresetValue::Algebra(p) => Ok(p),
        PresetValue::Dimensions(_) => Err(AlgError::UnknownPreset {
            name: format!("{} (dimension data, not an algebra)", name.as_str()),
            field: field.to_string(),
        }),
    }
}

fn glambda(field: FieldTag) -> Result<Presentation> {
    let p = if field.characteristic() == 2 {
        let table = GeneratorTable::new(vec![("t", 1), ("x1", 1), ("x2", 2)])?;
        let parse = |s: &str| Element::parse(s, field, &table);
        let nc = Presentation::new(
            field,
            table.clone(),
            vec![
                parse("t*t")?,
                parse("x1*x1")?,
                parse("x2*x2")?,
                parse("x1*x2 + x2*x1")?,
            ],
            BTreeSet::new(),
            SignPolicy::Strict,
        )?;
        let ext = Presentation::exterior_algebra(&[("y1", 1), ("y2", 2)], field)?;
        Presentation::tensor_product(&nc, &ext)?
    } else {
        let table = GeneratorTable::new(vec![("t", 1), ("x3", 3)])?;
        let parse = |s: &str| Element::parse(s, field, &table);
        let nc = Presentation::new(
            field,
            table.clone(),
            vec![parse("t*t")?, parse("x3*x3")?],
            BTreeSet::new(),
            SignPolicy::Strict,
        )?;
        let ext = Presentation::exterior_algebra(&[("y3", 3)], field)?;
        Presentation::tensor_product(&nc, &ext)?
    };
    Ok(p.with_family(Family::GLambda))
}

/// JSON document form of a presentation.
#[derive(Debug, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub field: String,
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub central: Vec<String>,
    #[serde(default = "default_policy")]
    pub sign_policy: SignPolicy,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: u32,
}

fn default_policy() -> SignPolicy {
    SignPolicy::Strict
}

impl Presentation {
    pub fn from_doc(doc: &PresentationDoc) -> Result<Presentation> {
        let field: FieldTag = doc.field.parse()?;
        let table = GeneratorTable::new(
            doc.generators.iter().map(|g| (g.name.clone(), g.degree)).collect(),
        )?;
        let mut relations = Vec::new();
        for r in &doc.relations {
            relations.push(Element::parse(r, field, &table)?);
        }
        let mut central = BTreeSet::new();
        for name in &doc.central {
            let ix = table
                .index_of(name)
                .ok_or_else(|| AlgError::UnknownGenerator(name.clone()))?;
            central.insert(ix);
        }
        Presentation::new(field, table, relations, central, doc.sign_policy)
    }

    pub fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            field: self.field.to_string(),
            generators: self
                .table
                .generators()
                .iter()
                .map(|g| GeneratorDoc { name: g.name.clone(), degree: g.degree })
                .collect(),
            relations: self.relations.iter().map(|r| r.to_string()).collect(),
            central: self.central.iter().map(|&c| self.table.name(c).to_string()).collect(),
            sign_policy: self.sign_policy,
        }
    }

    pub fn from_json(text: &str) -> Result<Presentation> {
        let doc: PresentationDoc = serde_json::from_str(text).map_err(|e| AlgError::Parse {
            pos: 0,
            msg: format!("invalid presentation document: {e}"),
        })?;
        Presentation::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("documents always serialize")
    }
}
