//! Batch command-line surface for the graded-algebra toolkit.
//!
//! Every invocation is deterministic given its flags (including `--seed`
//! for sampled checks), and the default JSON output is byte-stable so the
//! tool can sit behind golden-file tests. Exit codes: 0 success, 1 a
//! mathematical check failed, 2 usage or input error.

mod verify;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use gralg::hopf::{pair, DualElement, HopfStructure};
use gralg::oracle;
use gralg::presentation::{
    preset, preset_algebra, Presentation, PresetName, PresetValue, PRESET_NAMES,
};
use gralg::rewrite::RewriteSystem;
use gralg::series::{eval_series_expr, preset_series, series_via_rewrite};
use gralg::{AlgError, FieldTag};

#[derive(Parser)]
#[command(
    name = "gralg",
    version,
    about = "Finitely presented graded algebras: normal forms, rank oracles, pairings, series"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension sequence of a presentation or series preset.
    Dims(DimsArgs),
    /// Normal form of an element expression.
    Nf(ExprArgs),
    /// Product of two elements, in normal form.
    Mul(TwoExprArgs),
    /// Graded commutator of two elements, in normal form.
    Comm(TwoExprArgs),
    /// Basis words of one degree.
    Basis(BasisArgs),
    /// Evaluate a dual element on an algebra element.
    Pair(PairArgs),
    /// Cup product of two dual elements.
    Cup(TwoExprArgs),
    /// Coproduct of an element.
    Coproduct(ExprArgs),
    /// Evaluate a Poincare-series expression.
    Series(SeriesArgs),
    /// Run a named check suite.
    Verify(VerifyArgs),
    /// List the built-in presets.
    Presets(FormatOpt),
}

#[derive(Args)]
struct SourceOpts {
    /// Built-in preset (see `gralg presets`). Default: glambda.
    #[arg(long, conflicts_with = "presentation")]
    preset: Option<String>,
    /// Load a presentation from a JSON file instead of a preset.
    #[arg(long)]
    presentation: Option<PathBuf>,
    /// Coefficient field: F2, F<p> for an odd prime p, or Q.
    #[arg(long, default_value = "F2")]
    field: String,
}

#[derive(Args)]
struct FormatOpt {
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "table"])]
    format: String,
}

#[derive(Args)]
struct DimsArgs {
    #[command(flatten)]
    source: SourceOpts,
    #[arg(long, default_value_t = 16)]
    max_degree: u32,
    /// Rank route: Gaussian elimination on each degree slice instead of
    /// counting irreducible words.
    #[arg(long)]
    oracle: bool,
    /// Word cap for the oracle route.
    #[arg(long, default_value_t = oracle::DEFAULT_WORD_CAP)]
    max_words: usize,
    #[command(flatten)]
    fmt: FormatOpt,
}

#[derive(Args)]
struct ExprArgs {
    #[command(flatten)]
    source: SourceOpts,
    /// Element expression, e.g. "x1*t + t*x1".
    expr: String,
    #[command(flatten)]
    fmt: FormatOpt,
}

#[derive(Args)]
struct TwoExprArgs {
    #[command(flatten)]
    source: SourceOpts,
    left: String,
    right: String,
    #[command(flatten)]
    fmt: FormatOpt,
}

#[derive(Args)]
struct BasisArgs {
    #[command(flatten)]
    source: SourceOpts,
    degree: u32,
    #[command(flatten)]
    fmt: FormatOpt,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    source: SourceOpts,
    /// Dual element, e.g. "dual(w1) + dual(t*x1)".
    dual: String,
    /// Algebra element to evaluate on.
    element: String,
    #[command(flatten)]
    fmt: FormatOpt,
}

#[derive(Args)]
struct SeriesArgs {
    /// Series expression: q, integers, + - * / ^, james(...), algebra(<preset>).
    expr: String,
    #[arg(long, default_value = "F2")]
    field: String,
    #[arg(long, default_value_t = 16)]
    max_degree: u32,
    #[command(flatten)]
    fmt: FormatOpt,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check suite to run.
    #[arg(long, default_value = "paper", value_parser = ["paper"])]
    suite: String,
    #[arg(long, default_value_t = 16)]
    max_degree: u32,
    /// Degree bound for the rank-oracle cross-checks.
    #[arg(long, default_value_t = 6)]
    oracle_max_degree: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    fmt: FormatOpt,
}

enum CliError {
    Alg(AlgError),
    Input(String),
}

impl From<AlgError> for CliError {
    fn from(e: AlgError) -> CliError {
        CliError::Alg(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Alg(e) => write!(f, "{e}"),
            CliError::Input(m) => write!(f, "{m}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.cmd {
        Cmd::Dims(a) => cmd_dims(a),
        Cmd::Nf(a) => cmd_nf(a),
        Cmd::Mul(a) => cmd_mul(a, false),
        Cmd::Comm(a) => cmd_mul(a, true),
        Cmd::Basis(a) => cmd_basis(a),
        Cmd::Pair(a) => cmd_pair(a),
        Cmd::Cup(a) => cmd_cup(a),
        Cmd::Coproduct(a) => cmd_coproduct(a),
        Cmd::Series(a) => cmd_series(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Presets(f) => cmd_presets(f),
    }
}

impl SourceOpts {
    fn field(&self) -> CliResult<FieldTag> {
        Ok(FieldTag::from_str(&self.field)?)
    }

    fn label(&self) -> String {
        if let Some(p) = &self.presentation {
            return p.display().to_string();
        }
        self.preset.clone().unwrap_or_else(|| "glambda".to_string())
    }

    /// The presentation this invocation works in. Dimension-only presets
    /// are rejected here; `dims` handles them separately.
    fn algebra(&self) -> CliResult<Presentation> {
        if let Some(path) = &self.presentation {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Input(format!("cannot read {}: {e}", path.display()))
            })?;
            let p = Presentation::from_json(&text)?;
            if p.field() != self.field()? {
                return Err(CliError::Input(format!(
                    "presentation file declares field {}, but --field {} was given",
                    p.field(),
                    self.field()?
                )));
            }
            return Ok(p);
        }
        let name = self.preset.as_deref().unwrap_or("glambda");
        Ok(preset_algebra(PresetName::from_str(name)?, self.field()?)?)
    }

    fn system(&self) -> CliResult<RewriteSystem> {
        Ok(RewriteSystem::compile(&self.algebra()?)?)
    }
}

fn emit<T: Serialize>(fmt: &FormatOpt, value: &T, table: String) -> CliResult<()> {
    if fmt.format == "table" {
        print!("{table}");
    } else {
        let json = serde_json::to_string_pretty(value)
            .expect("output structures serialize");
        println!("{json}");
    }
    Ok(())
}

#[derive(Serialize)]
struct DimsOut {
    source: String,
    field: String,
    route: &'static str,
    max_degree: u32,
    dims: Vec<i64>,
}

fn cmd_dims(a: DimsArgs) -> CliResult<ExitCode> {
    let field = a.source.field()?;
    let (route, dims): (&'static str, Vec<i64>) = if a.oracle {
        let p = a.source.algebra()?;
        let mut dims = Vec::with_capacity(a.max_degree as usize + 1);
        for d in 0..=a.max_degree {
            let dim = oracle::quotient_dimension_with(
                &p,
                d,
                Default::default(),
                a.max_words,
            )?;
            dims.push(dim as i64);
        }
        ("oracle", dims)
    } else if a.source.presentation.is_some() {
        let p = a.source.algebra()?;
        ("rewrite", series_via_rewrite(&p, a.max_degree)?.coeffs().to_vec())
    } else {
        let name = PresetName::from_str(a.source.preset.as_deref().unwrap_or("glambda"))?;
        let route = match preset(name, field)? {
            PresetValue::Algebra(_) => "rewrite",
            PresetValue::Dimensions(_) => "recipe",
        };
        (route, preset_series(name, field, a.max_degree)?.coeffs().to_vec())
    };
    let out = DimsOut {
        source: a.source.label(),
        field: field.to_string(),
        route,
        max_degree: a.max_degree,
        dims,
    };
    let mut table = format!("degree  dim   ({} over {}, {})\n", out.source, out.field, route);
    for (d, c) in out.dims.iter().enumerate() {
        table.push_str(&format!("{d:<7} {c}\n"));
    }
    emit(&a.fmt, &out, table)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct NfOut {
    source: String,
    field: String,
    input: String,
    normal_form: String,
}

fn cmd_nf(a: ExprArgs) -> CliResult<ExitCode> {
    let sys = a.source.system()?;
    let e = sys.parse_ext(&a.expr)?;
    let nf = sys.normal_form(&e)?;
    let out = NfOut {
        source: a.source.label(),
        field: a.source.field()?.to_string(),
        input: a.expr.clone(),
        normal_form: nf.to_string(),
    };
    let table = format!("{}\n", out.normal_form);
    emit(&a.fmt, &out, table)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct MulOut {
    source: String,
    field: String,
    left: String,
    right: String,
    result: String,
}

fn cmd_mul(a: TwoExprArgs, commutator: bool) -> CliResult<ExitCode> {
    let sys = a.source.system()?;
    let l = sys.parse_ext(&a.left)?;
    let r = sys.parse_ext(&a.right)?;
    let product = if commutator {
        l.graded_commutator(&r)?
    } else {
        l.mul(&r)?
    };
    let nf = sys.normal_form(&product)?;
    let out = MulOut {
        source: a.source.label(),
        field: a.source.field()?.to_string(),
        left: a.left.clone(),
        right: a.right.clone(),
        result: nf.to_string(),
    };
    let table = format!("{}\n", out.result);
    emit(&a.fmt, &out, table)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BasisOut {
    source: String,
    field: String,
    degree: u32,
    count: usize,
    words: Vec<String>,
}

fn cmd_basis(a: BasisArgs) -> CliResult<ExitCode> {
    let sys = a.source.system()?;
    let words: Vec<String> = sys
        .basis_words(a.degree)
        .iter()
        .map(|w| sys.ext_table().format_word(w))
        .collect();
    let out = BasisOut {
        source: a.source.label(),
        field: a.source.field()?.to_string(),
        degree: a.degree,
        count: words.len(),
        words,
    };
    let mut table = String::new();
    for w in &out.words {
        table.push_str(w);
        table.push('\n');
    }
    emit(&a.fmt, &out, table)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PairOut {
    source: String,
    field: String,
    dual: String,
    element: String,
    value: String,
}

fn cmd_pair(a: PairArgs) -> CliResult<ExitCode> {
    let sys = a.source.system()?;
    let field = a.source.field()?;
    let d = DualElement::parse(&sys, &a.dual)?;
    let e = sys.parse_ext(&a.element)?;
    let v = pair(&d, &e, &sys)?;
    let out = PairOut {
        source: a.source.label(),
        field: field.to_string(),
        dual: a.dual.clone(),
        element: a.element.clone(),
        value: field.format_scalar(&v),
    };
    let table = format!("{}\n", out.value);
    emit(&a.fmt, &out, table)?;
    Ok(ExitCode::SUCCESS)
}

/// Refuse to report cup products or coproducts when the coproduct is not
/// well-defined on the presentation up to the degree in play.
fn gated_hopf(source: &SourceOpts, degree: u32) -> CliResult<Result<HopfStructure, ExitCode>> {
    let p = source.algebra()?;
    let hopf = HopfStructure::for_presentation(&p)?;
    let report = hopf.check_coproduct(degree)?;
    if !report.ok {
        eprintln!(
            "error: the coproduct is not well-defined on this presentation up to degree {degree}:"
        );
        for f in report
            .relation_failures
            .iter()
            .chain(&report.coassociativity_failures)
            .chain(&report.counit_failures)
        {
            eprintln!("  {f}");
        }
        if !report.relation_failures.is_empty() {
            eprintln!(
                "hint: over fields of odd characteristic, centrality relations need \
                 \"sign_policy\": \"koszul\" for the coproduct to descend"
            );
        }
        return Ok(Err(ExitCode::from(1)));
    }
    Ok(Ok(hopf))
}

#[derive(Serialize)]
struct CupOut {
    source: String,
    field: String,
    left: String,
    right: String,
    degree: u32,
    coords: Vec<DualTermOut>,
    display: String,
}

#[derive(Serialize)]
struct DualTermOut {
    word: String,
    coeff: String,
}

fn cmd_cup(a: TwoExprArgs) -> CliResult<ExitCode> {
    let sys = a.source.system()?;
    let field = a.source.field()?;
    let l = DualElement::parse(&sys, &a.left)?;
    let r = DualElement::parse(&sys, &a.right)?;
    let degree = l.degree() + r.degree();
    let hopf = match gated_hopf(&a.source, degree)? {
        Ok(h) => h,
        Err(code) => return Ok(code),
    };
    let result = hopf.cup(&l, &r)?;
    let table_sys = hopf.system();
    let coords: Vec<DualTermOut> = result
        .coords()
        .map(|(w, c)| DualTermOut {
            word: table_sys.ext_table().format_word(w),
            coeff: field.format_scalar(c),
        })
        .collect();
    let display = dual_display(&coords);
    let out = CupOut {
        source: a.source.label(),
        field: field.to_string(),
        left: a.left.clone(),
        right: a.right.clone(),
        degree,
        coords,
        display,
    };
    let table = format!("{}\n", out.display);
    emit(&a.fmt, &out, table)?;
    Ok(ExitCode::SUCCESS)
}

fn dual_display(coords: &[DualTermOut]) -> String {
    if coords.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, t) in coords.iter().enumerate() {
        if i > 0 {
            s.push_str(" + ");
        }
        if t.coeff != "1" {
            s.push_str(&t.coeff);
            s.push('*');
        }
        s.push_str(&format!("dual({})", t.word));
    }
    s
}

#[derive(Serialize)]
struct CoproductOut {
    source: String,
    field: String,
    input: String,
    terms: Vec<TensorTermOut>,
}

#[derive(Serialize)]
struct TensorTermOut {
    left: String,
    right: String,
    coeff: String,
}

fn cmd_coproduct(a: ExprArgs) -> CliResult<ExitCode> {
    let sys = a.source.system()?;
    let field = a.source.field()?;
    let e = sys.parse_ext(&a.expr)?;
    let gate_degree = e
        .terms()
        .map(|(w, _)| w.degree())
        .max()
        .unwrap_or(0);
    let hopf = match gated_hopf(&a.source, gate_degree)? {
        Ok(h) => h,
        Err(code) => return Ok(code),
    };
    let dz = hopf.coproduct(&e)?;
    let table_ref = hopf.system().ext_table();
    let terms: Vec<TensorTermOut> = dz
        .terms()
        .map(|((u, v), c)| TensorTermOut {
            left: table_ref.format_word(u),
            right: table_ref.format_word(v),
            coeff: field.format_scalar(c),
        })
        .collect();
    let out = CoproductOut {
        source: a.source.label(),
        field: field.to_string(),
        input: a.expr.clone(),
        terms,
    };
    let mut table = String::new();
    if out.terms.is_empty() {
        table.push_str("0\n");
    }
    for t in &out.terms {
        let c = if t.coeff == "1" { String::new() } else { format!("{}*", t.coeff) };
        table.push_str(&format!("{c}{} (x) {}\n", t.left, t.right));
    }
    emit(&a.fmt, &out, table)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SeriesOut {
    expression: String,
    field: String,
    max_degree: u32,
    coeffs: Vec<i64>,
}

fn cmd_series(a: SeriesArgs) -> CliResult<ExitCode> {
    let field = FieldTag::from_str(&a.field)?;
    let s = eval_series_expr(&a.expr, field, a.max_degree)?;
    let out = SeriesOut {
        expression: a.expr.clone(),
        field: field.to_string(),
        max_degree: a.max_degree,
        coeffs: s.coeffs().to_vec(),
    };
    let mut table = String::new();
    for (d, c) in out.coeffs.iter().enumerate() {
        table.push_str(&format!("{d:<7} {c}\n"));
    }
    emit(&a.fmt, &out, table)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> CliResult<ExitCode> {
    let opts = verify::SuiteOptions {
        max_degree: a.max_degree,
        oracle_max_degree: a.oracle_max_degree,
        seed: a.seed,
    };
    let report = verify::run_paper_suite(&opts)?;
    let mut table = String::new();
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        table.push_str(&format!("{status}  {:<28} {}\n", c.name, c.detail));
    }
    table.push_str(&format!(
        "{}: {} checks\n",
        if report.ok { "ok" } else { "FAILED" },
        report.checks.len()
    ));
    emit(&a.fmt, &report, table)?;
    Ok(if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct PresetsOut {
    presets: Vec<PresetRow>,
}

#[derive(Serialize)]
struct PresetRow {
    name: &'static str,
    kind: &'static str,
}

fn cmd_presets(fmt: FormatOpt) -> CliResult<ExitCode> {
    let mut rows = Vec::new();
    for name in PRESET_NAMES {
        let kind = match preset(name, FieldTag::Prime(2))? {
            PresetValue::Algebra(_) => "algebra",
            PresetValue::Dimensions(_) => "series",
        };
        rows.push(PresetRow { name: name.as_str(), kind });
    }
    let out = PresetsOut { presets: rows };
    let mut table = String::new();
    for r in &out.presets {
        table.push_str(&format!("{:<14} {}\n", r.name, r.kind));
    }
    emit(&fmt, &out, table)?;
    Ok(ExitCode::SUCCESS)
}
