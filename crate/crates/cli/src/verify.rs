//! The one-shot verification suite behind `gralg verify`.
//!
//! Every check pins a published value or structural fact of the target
//! algebras to an exact, recomputed-from-scratch equality. The manifest is
//! frozen: removing or renaming a check is itself a test failure, so the
//! suite cannot silently shrink.

use serde::Serialize;

use gralg::hopf::{pair, so3_diagonal_classes, DualElement, HopfStructure};
use gralg::oracle;
use gralg::presentation::{preset_algebra, PresetName};
use gralg::rewrite::RewriteSystem;
use gralg::series::{
    check_fibration_identities, check_homotopy_model, preset_series, rational_series,
    NamedCheck,
};
use gralg::{FieldTag, Result};

pub struct SuiteOptions {
    pub max_degree: u32,
    pub oracle_max_degree: u32,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub ok: bool,
    pub max_degree: u32,
    pub oracle_max_degree: u32,
    pub seed: u64,
    pub checks: Vec<NamedCheck>,
}

/// The frozen manifest. Order matters: reports list checks in this order.
pub const CHECK_NAMES: [&str; 26] = [
    "presentation-shape",
    "rank-degree-1",
    "rank-degree-2",
    "nf-commutation",
    "nf-straightening",
    "nf-square-zero",
    "nf-degree-three",
    "free-w-series",
    "so3-series",
    "k1-series",
    "total-series-closed-form",
    "oracle-agreement",
    "odd-field-series",
    "no-odd-torsion",
    "coproduct-valid",
    "coproduct-generators",
    "commutator-duals-vanish",
    "cup-matrix-entries",
    "dual-square",
    "tdual-nilpotency",
    "xdual-nilpotency",
    "diagonal-classes",
    "stratum-shift",
    "stratum-growth",
    "james-model",
    "rewrite-consistency",
];

fn push(checks: &mut Vec<NamedCheck>, name: &str, passed: bool, detail: String) {
    checks.push(NamedCheck { name: name.to_string(), passed, detail });
}

pub fn run_paper_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let n = opts.max_degree;
    let f2 = FieldTag::Prime(2);
    let f3 = FieldTag::Prime(3);
    let q = FieldTag::Rationals;
    let p2 = preset_algebra(PresetName::GLambda, f2)?;
    let sys = RewriteSystem::compile(&p2)?;
    let hopf = HopfStructure::for_presentation(&p2)?;
    let mut checks = Vec::new();

    // Shape of the main presentation.
    {
        let names: Vec<&str> = p2
            .table()
            .generators()
            .iter()
            .map(|g| g.name.as_str())
            .collect();
        let passed = names == ["t", "x1", "x2", "y1", "y2"]
            && p2.relations().len() == 6
            && p2.central().len() == 2
            && p2.effective_relations().len() == 13;
        push(
            &mut checks,
            "presentation-shape",
            passed,
            "five generators, six relations, two central classes".to_string(),
        );
    }

    // Low-degree ranks, both routes.
    let dims = sys.dimensions(n);
    for (name, d, want) in [("rank-degree-1", 1u32, 3usize), ("rank-degree-2", 2, 6)] {
        let by_rank = oracle::quotient_dimension(&p2, d)?;
        push(
            &mut checks,
            name,
            dims[d as usize] == want && by_rank == want,
            format!("dimension {want} in degree {d} by word count and by rank"),
        );
    }

    // Normal-form goldens.
    let nf_of = |text: &str| -> Result<String> {
        Ok(sys.normal_form(&sys.parse_ext(text)?)?.to_string())
    };
    push(
        &mut checks,
        "nf-commutation",
        nf_of("x1*t")? == "w1 + t*x1",
        "x1*t straightens to w1 + t*x1".to_string(),
    );
    push(
        &mut checks,
        "nf-straightening",
        nf_of("x1*w2")? == "w1*x2 + w3",
        "x1*w2 straightens to w1*x2 + w3".to_string(),
    );
    push(
        &mut checks,
        "nf-square-zero",
        nf_of("t*t")? == "0",
        "t*t reduces to zero".to_string(),
    );
    {
        // Two different reduction routes, plus an ideal-membership
        // certificate that the normal form really is congruent to the input.
        let direct = sys.normal_form(&sys.parse_ext("x1*x2*t")?)?;
        let via_suffix = {
            let inner = sys.normal_form(&sys.parse_ext("x2*t")?)?;
            sys.normal_form(&sys.parse_ext("x1")?.mul(&inner)?)?
        };
        let original = p2.parse_element("x1*x2*t")?;
        let diff = sys.embed(&direct)?.sub(&original)?;
        let member = oracle::ideal_contains(&p2, &diff)?;
        push(
            &mut checks,
            "nf-degree-three",
            direct.to_string() == "w3 + t*x1*x2" && direct == via_suffix && member,
            "x1*x2*t reduces to w3 + t*x1*x2 on every route, certified by rank".to_string(),
        );
    }

    // Series facts.
    {
        let w = rational_series(&[1], &[1, 0, -1, -1, -1], n)?;
        let prefix = [1i64, 0, 1, 1, 2, 2, 4, 5, 8];
        let prefix_ok = prefix
            .iter()
            .enumerate()
            .take(n as usize + 1)
            .all(|(d, c)| w.coeff(d as u32) == *c);
        let recurrence_ok = (4..=n).all(|d| {
            w.coeff(d) == w.coeff(d - 2) + w.coeff(d - 3) + w.coeff(d - 4)
        });
        push(
            &mut checks,
            "free-w-series",
            prefix_ok && recurrence_ok,
            "free series on degrees 2,3,4 satisfies c_d = c_(d-2)+c_(d-3)+c_(d-4)".to_string(),
        );
    }
    push(
        &mut checks,
        "so3-series",
        preset_series(PresetName::So3, f2, 4)?.coeffs() == [1, 1, 1, 1, 0],
        "so3 over F2 has one class in each degree 0..3".to_string(),
    );
    push(
        &mut checks,
        "k1-series",
        preset_series(PresetName::K1, f2, 5)?.coeffs() == [1, 2, 2, 2, 1, 0],
        "k1 over F2 matches (1+q)^2 (1+q^2)".to_string(),
    );
    push(
        &mut checks,
        "total-series-closed-form",
        preset_series(PresetName::GLambda, f2, n)?
            .agrees_with(&rational_series(&[1, 3, 5, 7, 7, 5, 3, 1], &[1, 0, -1, -1, -1], n)?),
        format!("glambda over F2 matches its rational closed form to degree {n}"),
    );
    {
        let m = opts.oracle_max_degree;
        let mut agree = true;
        for d in 0..=m {
            if oracle::quotient_dimension(&p2, d)? != dims[d as usize] {
                agree = false;
            }
        }
        push(
            &mut checks,
            "oracle-agreement",
            agree,
            format!("rank oracle equals word count to degree {m}"),
        );
    }
    {
        let over_q = preset_series(PresetName::GLambda, q, n)?;
        let closed = rational_series(&[1, 1, 0, 2, 2, 0, 1, 1], &[1, 0, 0, 0, -1], n)?;
        push(
            &mut checks,
            "odd-field-series",
            over_q.agrees_with(&closed) && over_q.coeff(1) == 1,
            "glambda over Q matches (1+q)(1+q^3)^2/(1-q^4); degree 1 has rank 1".to_string(),
        );
        push(
            &mut checks,
            "no-odd-torsion",
            preset_series(PresetName::GLambda, f3, n)?.agrees_with(&over_q),
            format!("F3 and Q dimension sequences agree to degree {n}"),
        );
    }

    // Coproduct and duality.
    let hopf_degree = n.min(8);
    let coproduct_report = hopf.check_coproduct(hopf_degree)?;
    push(
        &mut checks,
        "coproduct-valid",
        coproduct_report.ok,
        format!(
            "relations, coassociativity, and counit hold on {} words to degree {hopf_degree}",
            coproduct_report.words_checked
        ),
    );
    {
        let dt = hopf.coproduct(&sys.parse_ext("t")?)?;
        let dx2 = hopf.coproduct(&sys.parse_ext("x2")?)?;
        let x1w = sys.parse_ext("x1")?.leading_term().unwrap().0.clone();
        let d3 = hopf.coproduct(&sys.parse_ext("x1*x2")?)?;
        let passed = dt.terms().count() == 2
            && dx2.terms().count() == 3
            && !f2.is_zero(&dx2.coefficient(&x1w, &x1w))
            && d3.terms().count() == 4;
        push(
            &mut checks,
            "coproduct-generators",
            passed,
            "t is primitive; x2 and x1*x2 carry their mixed terms".to_string(),
        );
    }
    let dual = |text: &str| DualElement::parse(&sys, text);
    {
        let t_hat = dual("dual(t)")?;
        let mut all_zero = true;
        for (gen, comm) in [("x1", "w1"), ("x2", "w2"), ("x1*x2", "w3")] {
            let g_hat = dual(&format!("dual({gen})"))?;
            let cup = hopf.cup(&t_hat, &g_hat)?;
            let v = pair(&cup, &sys.parse_ext(comm)?, &sys)?;
            if !f2.is_zero(&v) {
                all_zero = false;
            }
        }
        push(
            &mut checks,
            "commutator-duals-vanish",
            all_zero,
            "dual(t) cup dual(x_i) kills the commutator class w_i, i = 1,2,3".to_string(),
        );
    }
    {
        let cup = hopf.cup(&dual("dual(w1)")?, &dual("dual(x1*y2)")?)?;
        let one = f2.one();
        let a = pair(&cup, &sys.parse_ext("w2*y2")?, &sys)?;
        let b = pair(&cup, &sys.parse_ext("w1*x1*y2")?, &sys)?;
        push(
            &mut checks,
            "cup-matrix-entries",
            a == one && b == one,
            "dual(w1) cup dual(x1*y2) hits both w2*y2 and w1*x1*y2".to_string(),
        );
    }
    push(
        &mut checks,
        "dual-square",
        hopf.cup(&dual("dual(x1)")?, &dual("dual(x1)")?)? == dual("dual(x2)")?,
        "dual(x1) squares to dual(x2)".to_string(),
    );
    {
        let t_hat = dual("dual(t)")?;
        let square = hopf.cup(&t_hat, &t_hat)?;
        push(
            &mut checks,
            "tdual-nilpotency",
            hopf.nilpotency_order(&t_hat, 8)? == Some(2) && square.is_zero(),
            "dual(t) squares to zero on all six degree-2 basis words".to_string(),
        );
    }
    push(
        &mut checks,
        "xdual-nilpotency",
        hopf.nilpotency_order(&dual("dual(x1)")?, 8)? == Some(4)
            && hopf.nilpotency_order(&dual("dual(y1)")?, 8)? == Some(4),
        "dual(x1) and dual(y1) both have cup order 4".to_string(),
    );
    {
        let classes = so3_diagonal_classes(f2)?;
        let shown: Vec<(String, String)> = classes
            .into_iter()
            .map(|(name, e)| (name, e.to_string()))
            .collect();
        let want = [
            ("y1", "x1 + z1"),
            ("y2", "x1*z1 + x2 + z2"),
            ("y3", "x1*x2 + x1*z2 + x2*z1 + z1*z2"),
        ];
        let char2_ok = shown.len() == want.len()
            && shown
                .iter()
                .zip(want.iter())
                .all(|((n1, e1), (n2, e2))| n1 == n2 && e1 == e2);
        let odd = so3_diagonal_classes(q)?;
        let odd_ok = odd.len() == 1 && odd[0].1.to_string() == "x3 + z3";
        push(
            &mut checks,
            "diagonal-classes",
            char2_ok && odd_ok,
            "the diagonal images of y1, y2, y3 match in both characteristics".to_string(),
        );
    }

    // Fibration and model identities.
    {
        let fib = check_fibration_identities(n)?;
        let named = |name: &str| fib.checks.iter().any(|c| c.name == name && c.passed);
        push(
            &mut checks,
            "stratum-shift",
            named("k0-division")
                && named("k1-division")
                && named("mv-shift")
                && named("u0-closed-form")
                && named("u1-closed-form"),
            "both fiber divisions are exact and u0 - 1 = q * u1".to_string(),
        );
        push(
            &mut checks,
            "stratum-growth",
            named("u0-nondecreasing") && named("u0-at-least-two") && named("u0-growth"),
            "u0 coefficients never drop, stay >= 2 past degree 3, and grow".to_string(),
        );
    }
    {
        let mut all_ok = true;
        for field in [f2, f3, q] {
            if !check_homotopy_model(field, n)?.ok {
                all_ok = false;
            }
        }
        push(
            &mut checks,
            "james-model",
            all_ok,
            format!("james(smash) * (1+q) * so3^2 equals the algebra series to degree {n} over F2, F3, Q"),
        );
    }

    // Sampled structural health of the rewrite system itself.
    {
        let report = sys.check_consistency(8, 120, opts.seed)?;
        push(
            &mut checks,
            "rewrite-consistency",
            report.ok,
            format!(
                "{} relation products and {} critical pairs reduce to agreement",
                report.relation_products_checked, report.critical_pairs_checked
            ),
        );
    }

    debug_assert_eq!(
        checks.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(),
        CHECK_NAMES,
        "the emitted checks must match the frozen manifest"
    );
    let ok = checks.iter().all(|c| c.passed);
    Ok(SuiteReport {
        suite: "paper",
        ok,
        max_degree: n,
        oracle_max_degree: opts.oracle_max_degree,
        seed: opts.seed,
        checks,
    })
}
