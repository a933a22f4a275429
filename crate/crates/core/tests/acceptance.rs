//! Acceptance gate: one test per shipped guarantee, each with the runtime
//! budget it must hold on commodity hardware. Every value asserted here is
//! recomputed from scratch by at least one independent route.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gralg::hopf::{pair, so3_diagonal_classes, DualElement, HopfStructure};
use gralg::oracle::{self, PivotStrategy};
use gralg::presentation::{preset_algebra, Presentation, PresetName, SignPolicy};
use gralg::rewrite::RewriteSystem;
use gralg::series::{
    check_fibration_identities, check_homotopy_model, preset_series, rational_series,
    series_via_oracle,
};
use gralg::{Element, FieldTag, GeneratorTable};

fn f2() -> FieldTag {
    FieldTag::Prime(2)
}

fn glambda(field: FieldTag) -> Presentation {
    preset_algebra(PresetName::GLambda, field).unwrap()
}

fn budget(t0: Instant, limit_secs: u64, what: &str) {
    let elapsed = t0.elapsed();
    assert!(
        elapsed < Duration::from_secs(limit_secs),
        "{what} took {elapsed:?}, budget {limit_secs}s"
    );
    println!("PASS {what} in {elapsed:?} (budget {limit_secs}s)");
}

#[test]
fn criterion_1_low_degree_ranks_from_both_routes() {
    let t0 = Instant::now();
    let p = glambda(f2());
    let sys = RewriteSystem::compile(&p).unwrap();
    let dims = sys.dimensions(2);
    assert_eq!(dims[1], 3, "degree 1 by word count");
    assert_eq!(dims[2], 6, "degree 2 by word count");
    assert_eq!(oracle::quotient_dimension(&p, 1).unwrap(), 3, "degree 1 by rank");
    assert_eq!(oracle::quotient_dimension(&p, 2).unwrap(), 6, "degree 2 by rank");
    budget(t0, 1, "low-degree ranks");
}

#[test]
fn criterion_2_three_routes_agree_on_the_dimension_sequence() {
    let t0 = Instant::now();
    let p = glambda(f2());
    let closed = rational_series(&[1, 3, 5, 7, 7, 5, 3, 1], &[1, 0, -1, -1, -1], 16).unwrap();
    let by_rewrite = preset_series(PresetName::GLambda, f2(), 16).unwrap();
    assert!(
        by_rewrite.agrees_with(&closed),
        "rewrite route vs closed form to degree 16"
    );
    let by_rank = series_via_oracle(&p, 8).unwrap();
    for d in 0..=8u32 {
        assert_eq!(
            by_rank.coeff(d),
            closed.coeff(d),
            "oracle route vs closed form in degree {d}"
        );
    }
    budget(t0, 60, "triple dimension agreement");
}

#[test]
fn criterion_3_odd_fields_share_one_dimension_sequence() {
    let t0 = Instant::now();
    let over_q = preset_series(PresetName::GLambda, FieldTag::Rationals, 16).unwrap();
    let over_f3 = preset_series(PresetName::GLambda, FieldTag::Prime(3), 16).unwrap();
    let closed = rational_series(&[1, 1, 0, 2, 2, 0, 1, 1], &[1, 0, 0, 0, -1], 16).unwrap();
    assert!(over_q.agrees_with(&over_f3), "Q and F3 agree to degree 16");
    assert!(over_q.agrees_with(&closed), "closed form to degree 16");
    assert_eq!(over_q.coeff(1), 1, "rank one in degree 1");
    budget(t0, 5, "odd-field dimensions");
}

#[test]
fn criterion_4_normal_form_goldens() {
    let t0 = Instant::now();
    let p = glambda(f2());
    let sys = RewriteSystem::compile(&p).unwrap();
    let nf = |text: &str| sys.normal_form(&sys.parse_ext(text).unwrap()).unwrap();
    assert_eq!(nf("x1*t").to_string(), "w1 + t*x1");
    assert_eq!(nf("x1*w2").to_string(), "w1*x2 + w3");
    assert_eq!(nf("t*t").to_string(), "0");

    // The degree-3 golden is certified twice over: a second reduction route
    // must land on the same word, and the difference between the input and
    // its embedded normal form must lie in the relation ideal.
    let direct = nf("x1*x2*t");
    assert_eq!(direct.to_string(), "w3 + t*x1*x2");
    let inner = nf("x2*t");
    let via_suffix = sys
        .normal_form(&sys.parse_ext("x1").unwrap().mul(&inner).unwrap())
        .unwrap();
    assert_eq!(direct, via_suffix, "reduction routes agree");
    let original = p.parse_element("x1*x2*t").unwrap();
    let diff = sys.embed(&direct).unwrap().sub(&original).unwrap();
    assert!(
        oracle::ideal_contains(&p, &diff).unwrap(),
        "normal form is congruent to the input"
    );
    budget(t0, 1, "normal-form goldens");
}

#[test]
fn criterion_5_duality_suite() {
    let t0 = Instant::now();
    let p = glambda(f2());
    let hopf = HopfStructure::for_presentation(&p).unwrap();
    let sys = hopf.system();
    let dual = |text: &str| DualElement::parse(sys, text).unwrap();
    let elem = |text: &str| sys.parse_ext(text).unwrap();

    // The commutator classes are invisible to products of lower duals.
    let t_hat = dual("dual(t)");
    for (gen, comm) in [("x1", "w1"), ("x2", "w2"), ("x1*x2", "w3")] {
        let cup = hopf.cup(&t_hat, &dual(&format!("dual({gen})"))).unwrap();
        assert_eq!(
            pair(&cup, &elem(comm), sys).unwrap(),
            f2().zero(),
            "dual(t) cup dual({gen}) on {comm}"
        );
    }

    // Two nonzero entries of the cup-product matrix in degree 6.
    let cup = hopf.cup(&dual("dual(w1)"), &dual("dual(x1*y2)")).unwrap();
    assert_eq!(pair(&cup, &elem("w2*y2"), sys).unwrap(), f2().one());
    assert_eq!(pair(&cup, &elem("w1*x1*y2"), sys).unwrap(), f2().one());

    // Nilpotency orders of the degree-1 duals.
    assert_eq!(hopf.nilpotency_order(&t_hat, 8).unwrap(), Some(2));
    assert_eq!(hopf.nilpotency_order(&dual("dual(x1)"), 8).unwrap(), Some(4));

    // The coproduct itself is sound out to degree 8.
    let report = hopf.check_coproduct(8).unwrap();
    assert!(report.ok, "{report:?}");
    budget(t0, 10, "duality suite");
}

#[test]
fn criterion_6_diagonal_classes() {
    let t0 = Instant::now();
    let classes = so3_diagonal_classes(f2()).unwrap();
    let shown: Vec<(String, String)> = classes
        .into_iter()
        .map(|(name, e)| (name, e.to_string()))
        .collect();
    assert_eq!(
        shown,
        [
            ("y1".to_string(), "x1 + z1".to_string()),
            ("y2".to_string(), "x1*z1 + x2 + z2".to_string()),
            ("y3".to_string(), "x1*x2 + x1*z2 + x2*z1 + z1*z2".to_string()),
        ]
    );
    budget(t0, 1, "diagonal classes");
}

#[test]
fn criterion_7_fibration_identities() {
    let t0 = Instant::now();
    let report = check_fibration_identities(16).unwrap();
    assert!(report.ok, "{:?}", report.checks);
    for name in [
        "k0-division",
        "k1-division",
        "mv-shift",
        "u0-nondecreasing",
        "u0-at-least-two",
    ] {
        assert!(
            report.checks.iter().any(|c| c.name == name && c.passed),
            "missing or failing subcheck {name}"
        );
    }
    budget(t0, 1, "fibration identities");
}

#[test]
fn criterion_8_james_model_over_three_fields() {
    let t0 = Instant::now();
    for field in [f2(), FieldTag::Prime(3), FieldTag::Rationals] {
        let report = check_homotopy_model(field, 16).unwrap();
        assert!(report.ok, "field {field}: {:?}", report.checks);
    }
    budget(t0, 1, "loop-space model");
}

struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        // Rejection sampling keeps the draw unbiased.
        let n64 = n as u64;
        let limit = u64::MAX - u64::MAX % n64;
        loop {
            let v = self.rng.next_u64();
            if v < limit {
                return (v % n64) as usize;
            }
        }
    }

    fn word(&mut self, table: &GeneratorTable, max_degree: u32) -> gralg::Word {
        let degree = 1 + self.below(max_degree as usize) as u32;
        let pool = table.words_of_degree(degree);
        if pool.is_empty() {
            return table.empty_word();
        }
        let ix = self.below(pool.len());
        pool[ix].clone()
    }

    fn element(&mut self, p: &Presentation, max_degree: u32) -> Element {
        let field = p.field();
        let terms = 1 + self.below(3);
        let mut e = Element::zero(field, p.table().clone());
        for _ in 0..terms {
            let w = self.word(p.table(), max_degree);
            let c = field.from_integer(1 + self.below(4) as i64);
            e = e
                .add(&Element::from_term(field, p.table().clone(), w, Some(c)))
                .unwrap();
        }
        e
    }
}

#[test]
fn criterion_9_property_suites() {
    let t0 = Instant::now();

    // Free-word recurrence: the algebra on generators in degrees 2, 3, 4
    // has c_d = c_(d-2) + c_(d-3) + c_(d-4).
    let free =
        Presentation::free_algebra(&[("w1", 2), ("w2", 3), ("w3", 4)], f2()).unwrap();
    let free_dims = RewriteSystem::compile(&free).unwrap().dimensions(16);
    for d in 4..=16usize {
        assert_eq!(
            free_dims[d],
            free_dims[d - 2] + free_dims[d - 3] + free_dims[d - 4],
            "free-word recurrence in degree {d}"
        );
    }

    // Rewriting is idempotent and kills the ideal on seeded random inputs.
    let mut systems = Vec::new();
    for name in [PresetName::So3, PresetName::K0, PresetName::K1, PresetName::GLambda] {
        systems.push(preset_algebra(name, f2()).unwrap());
    }
    systems.push(glambda(FieldTag::Prime(3)));
    systems.push(glambda(FieldTag::Rationals));
    for p in &systems {
        let sys = RewriteSystem::compile(p).unwrap();
        let relations = p.effective_relations();
        let mut sampler = Sampler::new(0xACCE97);
        for i in 0..500 {
            let e = sampler.element(p, 5);
            let nf = sys.normal_form(&e).unwrap();
            assert_eq!(sys.normal_form(&nf).unwrap(), nf, "idempotence, case {i}");

            let r = &relations[i % relations.len()];
            let a = Element::from_term(
                p.field(),
                p.table().clone(),
                sampler.word(p.table(), 2),
                None,
            );
            let b = Element::from_term(
                p.field(),
                p.table().clone(),
                sampler.word(p.table(), 2),
                None,
            );
            let product = a.mul(r).unwrap().mul(&b).unwrap();
            assert!(
                sys.normal_form(&product).unwrap().is_zero(),
                "relation product survives, case {i}"
            );
        }
    }

    // Rank is a quotient invariant: pivoting strategy must not change it.
    let fields = [f2(), FieldTag::Prime(3), FieldTag::Rationals];
    let mut sampler = Sampler::new(0x9A9A);
    let mut built = 0usize;
    while built < 50 {
        let field = fields[sampler.below(fields.len())];
        let gens = 2 + sampler.below(2);
        let names = ["a", "b", "c"];
        let table: Vec<(&str, u32)> = (0..gens)
            .map(|i| (names[i], 1 + sampler.below(2) as u32))
            .collect();
        let table = GeneratorTable::new(table).unwrap();
        let degree = 2 + sampler.below(2) as u32;
        let pool = table.words_of_degree(degree);
        if pool.len() < 2 {
            continue;
        }
        let i = sampler.below(pool.len());
        let mut j = sampler.below(pool.len());
        if i == j {
            j = (j + 1) % pool.len();
        }
        let relation = Element::from_terms(
            field,
            table.clone(),
            [
                (pool[i].clone(), field.one()),
                (pool[j].clone(), field.from_integer(1 + sampler.below(2) as i64)),
            ],
        );
        let p = Presentation::new(
            field,
            table,
            vec![relation],
            BTreeSet::new(),
            SignPolicy::Strict,
        )
        .unwrap();
        for d in 0..=4u32 {
            let low =
                oracle::quotient_dimension_with(&p, d, PivotStrategy::LowColumn, 1 << 20)
                    .unwrap();
            let high =
                oracle::quotient_dimension_with(&p, d, PivotStrategy::HighColumn, 1 << 20)
                    .unwrap();
            assert_eq!(low, high, "strategy-dependent rank in degree {d} over {field}");
        }
        built += 1;
    }

    budget(t0, 60, "property suites");
}
