//! Integer power series, the dimension-series routes, and identity checks
//! relating the built-in models.
//!
//! Every series carries its truncation degree. Arithmetic truncates to the
//! shorter operand; division is exact and reports the first degree at which
//! a remainder appears instead of rounding.

use std::fmt;

use serde::Serialize;

use crate::error::{AlgError, Result};
use crate::oracle;
use crate::presentation::{preset, Presentation, PresetName, PresetValue, SeriesRecipe};
use crate::rewrite::RewriteSystem;
use crate::scalar::FieldTag;

/// Polynomial truncation of a formal power series with integer
/// coefficients. `coeffs[d]` is the degree-`d` coefficient; the truncation
/// degree is `coeffs.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerSeries {
    coeffs: Vec<i64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<i64>) -> PowerSeries {
        assert!(!coeffs.is_empty(), "a series carries at least degree 0");
        PowerSeries { coeffs }
    }

    /// The polynomial, padded or cut to truncation degree `trunc`.
    pub fn from_polynomial(poly: &[i64], trunc: u32) -> PowerSeries {
        let mut coeffs = vec![0; trunc as usize + 1];
        for (d, &c) in poly.iter().enumerate().take(coeffs.len()) {
            coeffs[d] = c;
        }
        PowerSeries { coeffs }
    }

    pub fn constant(value: i64, trunc: u32) -> PowerSeries {
        PowerSeries::from_polynomial(&[value], trunc)
    }

    /// The series `q`.
    pub fn q(trunc: u32) -> PowerSeries {
        PowerSeries::from_polynomial(&[0, 1], trunc)
    }

    pub fn truncation(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, degree: u32) -> i64 {
        self.coeffs.get(degree as usize).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = usize::min(self.coeffs.len(), other.coeffs.len());
        PowerSeries::new((0..n).map(|d| self.coeffs[d] + other.coeffs[d]).collect())
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let n = usize::min(self.coeffs.len(), other.coeffs.len());
        PowerSeries::new((0..n).map(|d| self.coeffs[d] - other.coeffs[d]).collect())
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = usize::min(self.coeffs.len(), other.coeffs.len());
        let mut out = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries::new(out)
    }

    pub fn pow(&self, exp: u32) -> PowerSeries {
        let mut out = PowerSeries::constant(1, self.truncation());
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Exact division. The divisor's valuation must not exceed the
    /// dividend's, and every coefficient of the quotient must come out as an
    /// integer; otherwise the first failing degree is reported.
    pub fn div(&self, other: &PowerSeries) -> Result<PowerSeries> {
        let vb = match other.valuation() {
            None => return Err(AlgError::DivisionByZero),
            Some(v) => v,
        };
        if let Some(va) = self.valuation() {
            if va < vb {
                return Err(AlgError::SeriesRemainder(va as u32));
            }
        }
        let n = usize::min(self.coeffs.len(), other.coeffs.len());
        if vb >= n {
            return Err(AlgError::DivisionByZero);
        }
        let num = &self.coeffs[vb..n];
        let den = &other.coeffs[vb..n];
        let lead = den[0];
        let mut out = vec![0i64; num.len()];
        for d in 0..num.len() {
            let mut acc = num[d];
            for k in 1..=d {
                acc -= den.get(k).copied().unwrap_or(0) * out[d - k];
            }
            if acc % lead != 0 {
                return Err(AlgError::SeriesRemainder(d as u32));
            }
            out[d] = acc / lead;
        }
        Ok(PowerSeries::new(out))
    }

    /// Equality on all degrees both series carry.
    pub fn agrees_with(&self, other: &PowerSeries) -> bool {
        let n = usize::min(self.coeffs.len(), other.coeffs.len());
        self.coeffs[..n] == other.coeffs[..n]
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    if d == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{d}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Expand `num/den` to the truncation degree. The denominator's constant
/// term must be a unit in the integers so the expansion has integer
/// coefficients.
pub fn rational_series(num: &[i64], den: &[i64], trunc: u32) -> Result<PowerSeries> {
    let lead = den.first().copied().unwrap_or(0);
    if lead != 1 && lead != -1 {
        return Err(AlgError::SeriesDenominator);
    }
    let mut out = vec![0i64; trunc as usize + 1];
    for d in 0..out.len() {
        let mut acc = num.get(d).copied().unwrap_or(0);
        for k in 1..=d {
            acc -= den.get(k).copied().unwrap_or(0) * out[d - k];
        }
        out[d] = acc / lead;
    }
    Ok(PowerSeries::new(out))
}

pub fn recipe_series(recipe: &SeriesRecipe, trunc: u32) -> Result<PowerSeries> {
    rational_series(&recipe.numerator, &recipe.denominator, trunc)
}

/// The loop-space series of a wedge summand: `1/(1 - v)`, defined when `v`
/// has zero constant term. Counts words in the cells of `v`.
pub fn james_series(v: &PowerSeries) -> Result<PowerSeries> {
    if v.coeff(0) != 0 {
        return Err(AlgError::SeriesNotReduced);
    }
    let mut out = vec![0i64; v.coeffs.len()];
    out[0] = 1;
    for d in 1..out.len() {
        let mut acc = 0;
        for k in 1..=d {
            acc += v.coeffs[k] * out[d - k];
        }
        out[d] = acc;
    }
    Ok(PowerSeries::new(out))
}

/// Graded dimensions read off the compiled rewrite system's basis words.
pub fn series_via_rewrite(p: &Presentation, max_degree: u32) -> Result<PowerSeries> {
    let sys = RewriteSystem::compile(p)?;
    let dims = sys.dimensions(max_degree);
    Ok(PowerSeries::new(dims.into_iter().map(|d| d as i64).collect()))
}

/// Graded dimensions computed degree by degree with exact linear algebra.
pub fn series_via_oracle(p: &Presentation, max_degree: u32) -> Result<PowerSeries> {
    let dims = oracle::dimension_vector(p, max_degree)?;
    Ok(PowerSeries::new(dims.into_iter().map(|d| d as i64).collect()))
}

/// Series of a preset: algebras go through the rewrite route, dimension
/// presets through their closed form.
pub fn preset_series(
    name: PresetName,
    field: FieldTag,
    max_degree: u32,
) -> Result<PowerSeries> {
    match preset(name, field)? {
        PresetValue::Algebra(p) => series_via_rewrite(&p, max_degree),
        PresetValue::Dimensions(recipe) => recipe_series(&recipe, max_degree),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(checks: &mut Vec<NamedCheck>, name: &str, passed: bool, detail: String) {
    checks.push(NamedCheck { name: name.to_string(), passed, detail });
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub ok: bool,
    pub max_degree: u32,
    pub checks: Vec<NamedCheck>,
}

fn finish(max_degree: u32, checks: Vec<NamedCheck>) -> SeriesReport {
    SeriesReport { ok: checks.iter().all(|c| c.passed), max_degree, checks }
}

/// Identities tying the two evaluation-fibration section spaces to the
/// based-loop series `W`: closed forms, the degree-shift relating the two,
/// and the qualitative growth facts used downstream.
pub fn check_fibration_identities(max_degree: u32) -> Result<SeriesReport> {
    let n = max_degree;
    let char2 = FieldTag::Prime(2);
    let u0 = preset_series(PresetName::U0Model, char2, n)?;
    let u1 = preset_series(PresetName::U1Model, char2, n)?;
    let w = preset_series(PresetName::LoopsModel, char2, n)?;
    let one_q = PowerSeries::from_polynomial(&[1, 1], n);
    let one_q2 = PowerSeries::from_polynomial(&[1, 0, 1], n);

    let mut checks = Vec::new();
    check(
        &mut checks,
        "u0-closed-form",
        u0.agrees_with(&w.mul(&one_q)),
        format!("u0 = {u0}"),
    );
    check(
        &mut checks,
        "u1-closed-form",
        u1.agrees_with(&w.mul(&one_q).mul(&one_q2)),
        format!("u1 = {u1}"),
    );
    // The fiber inclusions split on series: dividing the whole algebra by
    // either fiber must leave no remainder, and the quotients are exactly
    // the two side models.
    let total = preset_series(PresetName::GLambda, char2, n)?;
    let k0 = preset_series(PresetName::K0, char2, n)?;
    let k1 = preset_series(PresetName::K1, char2, n)?;
    check(
        &mut checks,
        "k0-division",
        matches!(total.div(&k0), Ok(q) if q.agrees_with(&u0)),
        "series of the algebra / series of the even fiber = u0".to_string(),
    );
    check(
        &mut checks,
        "k1-division",
        matches!(total.div(&k1), Ok(q) if q.agrees_with(&u1)),
        "series of the algebra / series of the odd fiber = u1".to_string(),
    );
    let shifted = (1..=n).all(|d| u0.coeff(d) == u1.coeff(d - 1));
    check(
        &mut checks,
        "mv-shift",
        u0.coeff(0) == 1 && shifted,
        "u0 - 1 = q * u1".to_string(),
    );
    check(
        &mut checks,
        "u0-nondecreasing",
        (1..=n).all(|d| u0.coeff(d) >= u0.coeff(d - 1)),
        "coefficients of u0 never drop".to_string(),
    );
    check(
        &mut checks,
        "u0-at-least-two",
        (3..=n).all(|d| u0.coeff(d) >= 2),
        "u0 has at least two classes in each degree from 3 on".to_string(),
    );
    check(
        &mut checks,
        "u0-growth",
        (4..=n).all(|d| u0.coeff(d) > u0.coeff(d - 4)),
        "u0 grows strictly every four degrees".to_string(),
    );
    Ok(finish(n, checks))
}

/// The loop-space model: the algebra's series must equal
/// `james(smash) * (1 + q) * so3^2` over the same field.
pub fn check_homotopy_model(field: FieldTag, max_degree: u32) -> Result<SeriesReport> {
    let n = max_degree;
    let lhs = preset_series(PresetName::GLambda, field, n)?;
    let smash = preset_series(PresetName::SmashS1So3, field, n)?;
    let so3 = preset_series(PresetName::So3, field, n)?;
    let rhs = james_series(&smash)?
        .mul(&PowerSeries::from_polynomial(&[1, 1], n))
        .mul(&so3.pow(2));
    let mut checks = Vec::new();
    check(
        &mut checks,
        "loop-model-series",
        lhs.agrees_with(&rhs),
        format!("algebra: {lhs}; model: {rhs}"),
    );
    Ok(finish(n, checks))
}

/// Series expressions: integers, `q`, `+ - * / ^`, parentheses,
/// `james(expr)`, and `algebra(preset)`.
pub fn eval_series_expr(text: &str, field: FieldTag, trunc: u32) -> Result<PowerSeries> {
    let mut p = ExprParser { text: text.as_bytes(), pos: 0, field, trunc };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct ExprParser<'a> {
    text: &'a [u8],
    pos: usize,
    field: FieldTag,
    trunc: u32,
}

impl<'a> ExprParser<'a> {
    fn error(&self, msg: &str) -> AlgError {
        AlgError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", b as char)))
        }
    }

    fn expr(&mut self) -> Result<PowerSeries> {
        let mut acc = if self.eat(b'-') {
            PowerSeries::constant(0, self.trunc).sub(&self.term()?)
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PowerSeries> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                acc = acc.div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<PowerSeries> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.integer()?;
            if exp < 0 {
                return Err(self.error("exponent must be non-negative"));
            }
            Ok(base.pow(exp as u32))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("digits are utf8")
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8(self.text[start..self.pos].to_vec()).expect("ascii input")
    }

    fn atom(&mut self) -> Result<PowerSeries> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(PowerSeries::constant(self.integer()?, self.trunc))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                match name.as_str() {
                    "q" => Ok(PowerSeries::q(self.trunc)),
                    "james" => {
                        self.expect(b'(')?;
                        let inner = self.expr()?;
                        self.expect(b')')?;
                        james_series(&inner)
                    }
                    "algebra" => {
                        self.expect(b'(')?;
                        let preset_name = self.ident();
                        self.expect(b')')?;
                        let preset: PresetName =
                            preset_name.parse().map_err(|_| AlgError::UnknownPreset {
                                name: preset_name.clone(),
                                field: self.field.to_string(),
                            })?;
                        preset_series(preset, self.field, self.trunc)
                    }
                    other => Err(self.error(&format!("unknown name `{other}`"))),
                }
            }
            _ => Err(self.error("expected a series atom")),
        }
    }
}
