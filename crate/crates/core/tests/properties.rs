//! Randomized algebraic laws. Each property is an identity that must hold
//! for every input, so shrunk counterexamples point straight at a broken
//! invariant rather than a wrong constant.

use std::sync::OnceLock;

use proptest::prelude::*;

use gralg::hopf::{DualElement, HopfStructure};
use gralg::oracle;
use gralg::presentation::{preset_algebra, Presentation, PresetName};
use gralg::rewrite::RewriteSystem;
use gralg::series::{james_series, PowerSeries};
use gralg::{Element, FieldTag};

fn glambda_f2() -> &'static Presentation {
    static CELL: OnceLock<Presentation> = OnceLock::new();
    CELL.get_or_init(|| preset_algebra(PresetName::GLambda, FieldTag::Prime(2)).unwrap())
}

fn glambda_f3() -> &'static Presentation {
    static CELL: OnceLock<Presentation> = OnceLock::new();
    CELL.get_or_init(|| preset_algebra(PresetName::GLambda, FieldTag::Prime(3)).unwrap())
}

fn system_f2() -> &'static RewriteSystem {
    static CELL: OnceLock<RewriteSystem> = OnceLock::new();
    CELL.get_or_init(|| RewriteSystem::compile(glambda_f2()).unwrap())
}

fn system_f3() -> &'static RewriteSystem {
    static CELL: OnceLock<RewriteSystem> = OnceLock::new();
    CELL.get_or_init(|| RewriteSystem::compile(glambda_f3()).unwrap())
}

fn hopf_f2() -> &'static HopfStructure {
    static CELL: OnceLock<HopfStructure> = OnceLock::new();
    CELL.get_or_init(|| HopfStructure::for_presentation(glambda_f2()).unwrap())
}

/// Raw material for one element: (degree, word pick, coefficient) triples.
type TermSeed = Vec<(u32, prop::sample::Index, i64)>;

fn term_seeds(max_terms: usize) -> impl Strategy<Value = TermSeed> {
    prop::collection::vec((1u32..=4, any::<prop::sample::Index>(), 1i64..6), 1..=max_terms)
}

fn build_element(p: &Presentation, seed: &TermSeed) -> Element {
    let field = p.field();
    let mut e = Element::zero(field, p.table().clone());
    for (degree, pick, coeff) in seed {
        let pool = p.table().words_of_degree(*degree);
        let w = pick.get(&pool).clone();
        let term = Element::from_term(
            field,
            p.table().clone(),
            w,
            Some(field.from_integer(*coeff)),
        );
        e = e.add(&term).unwrap();
    }
    e
}

proptest! {
    #[test]
    fn multiplication_is_associative(
        a in term_seeds(3), b in term_seeds(3), c in term_seeds(3)
    ) {
        for (p, sys) in [(glambda_f2(), system_f2()), (glambda_f3(), system_f3())] {
            let (a, b, c) = (build_element(p, &a), build_element(p, &b), build_element(p, &c));
            let left = sys.normal_form(&a.mul(&b).unwrap().mul(&c).unwrap()).unwrap();
            let right = sys.normal_form(&a.mul(&b.mul(&c).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn multiplication_distributes_over_addition(
        a in term_seeds(3), b in term_seeds(3), c in term_seeds(3)
    ) {
        for (p, sys) in [(glambda_f2(), system_f2()), (glambda_f3(), system_f3())] {
            let (a, b, c) = (build_element(p, &a), build_element(p, &b), build_element(p, &c));
            let left = sys.normal_form(&a.mul(&b.add(&c).unwrap()).unwrap()).unwrap();
            let right = sys
                .normal_form(&a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap())
                .unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn printing_then_parsing_round_trips(a in term_seeds(4)) {
        for p in [glambda_f2(), glambda_f3()] {
            let e = build_element(p, &a);
            let back = Element::parse(&e.to_string(), p.field(), p.table()).unwrap();
            prop_assert_eq!(back, e);
        }
    }

    #[test]
    fn characteristic_annihilates_every_element(a in term_seeds(4)) {
        for p in [glambda_f2(), glambda_f3()] {
            let e = build_element(p, &a);
            let ch = p.field().from_integer(p.field().characteristic() as i64);
            prop_assert!(e.scalar_mul(&ch).is_zero());
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(a in term_seeds(3), b in term_seeds(3)) {
        for (p, sys) in [(glambda_f2(), system_f2()), (glambda_f3(), system_f3())] {
            let (a, b) = (build_element(p, &a), build_element(p, &b));
            let nf_a = sys.normal_form(&a).unwrap();
            prop_assert_eq!(sys.normal_form(&nf_a).unwrap(), nf_a.clone());
            let sum = sys.normal_form(&a.add(&b).unwrap()).unwrap();
            let nf_b = sys.normal_form(&b).unwrap();
            prop_assert_eq!(sum, nf_a.add(&nf_b).unwrap());
        }
    }

    #[test]
    fn commutator_is_bilinear(
        // The commutator sign depends on degree, so each argument must be
        // homogeneous; a and b share a degree to keep their sum homogeneous.
        dab in 1u32..=3, dc in 1u32..=3,
        pa in prop::collection::vec((any::<prop::sample::Index>(), 1i64..6), 1..=2),
        pb in prop::collection::vec((any::<prop::sample::Index>(), 1i64..6), 1..=2),
        pc in prop::collection::vec((any::<prop::sample::Index>(), 1i64..6), 1..=2),
    ) {
        let (p, sys) = (glambda_f2(), system_f2());
        let build = |degree: u32, picks: &[(prop::sample::Index, i64)]| {
            let seed: TermSeed =
                picks.iter().map(|(ix, c)| (degree, *ix, *c)).collect();
            build_element(p, &seed)
        };
        let (a, b, c) = (build(dab, &pa), build(dab, &pb), build(dc, &pc));
        let left = sys
            .normal_form(&a.add(&b).unwrap().graded_commutator(&c).unwrap())
            .unwrap();
        let right = sys
            .normal_form(
                &a.graded_commutator(&c)
                    .unwrap()
                    .add(&b.graded_commutator(&c).unwrap())
                    .unwrap(),
            )
            .unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn series_form_a_commutative_ring(
        a in prop::collection::vec(-6i64..7, 1..6),
        b in prop::collection::vec(-6i64..7, 1..6),
        c in prop::collection::vec(-6i64..7, 1..6),
    ) {
        let n = 12;
        let (a, b, c) = (
            PowerSeries::from_polynomial(&a, n),
            PowerSeries::from_polynomial(&b, n),
            PowerSeries::from_polynomial(&c, n),
        );
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn division_inverts_multiplication(
        a in prop::collection::vec(-6i64..7, 1..6),
        mut b in prop::collection::vec(-6i64..7, 1..6),
        unit in prop::bool::ANY,
    ) {
        b[0] = if unit { 1 } else { -1 };
        let n = 12;
        let a = PowerSeries::from_polynomial(&a, n);
        let b = PowerSeries::from_polynomial(&b, n);
        let quotient = a.mul(&b).div(&b).unwrap();
        prop_assert_eq!(quotient, a);
    }

    #[test]
    fn james_series_inverts_one_minus_v(
        tail in prop::collection::vec(0i64..5, 1..6),
    ) {
        let n = 12;
        let mut poly = vec![0i64];
        poly.extend(&tail);
        let v = PowerSeries::from_polynomial(&poly, n);
        let j = james_series(&v).unwrap();
        let one_minus_v = PowerSeries::constant(1, n).sub(&v);
        prop_assert_eq!(j.mul(&one_minus_v), PowerSeries::constant(1, n));
    }

    #[test]
    fn normal_form_vanishes_exactly_on_the_ideal(a in term_seeds(2)) {
        // The rewrite route and the rank oracle must agree about membership.
        let (p, sys) = (glambda_f2(), system_f2());
        let e = build_element(p, &a);
        let by_rewrite = sys.normal_form(&e).unwrap().is_zero();
        let by_rank = oracle::ideal_contains(p, &e).unwrap();
        prop_assert_eq!(by_rewrite, by_rank);
    }
}

fn dual_seed_to_element(degree: u32, picks: &[prop::sample::Index]) -> Option<DualElement> {
    let sys = system_f2();
    let words = sys.basis_words(degree);
    let mut text = String::new();
    for pick in picks {
        if !text.is_empty() {
            text.push_str(" + ");
        }
        let w = pick.get(&words);
        text.push_str(&format!("dual({})", sys.ext_table().format_word(w)));
    }
    let d = DualElement::parse(sys, &text).unwrap();
    if d.is_zero() {
        None
    } else {
        Some(d)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cup_product_is_associative_and_commutative(
        da in 1u32..=2, db in 1u32..=2, dc in 1u32..=2,
        pa in prop::collection::vec(any::<prop::sample::Index>(), 1..=2),
        pb in prop::collection::vec(any::<prop::sample::Index>(), 1..=2),
        pc in prop::collection::vec(any::<prop::sample::Index>(), 1..=2),
    ) {
        let hopf = hopf_f2();
        let (a, b, c) = match (
            dual_seed_to_element(da, &pa),
            dual_seed_to_element(db, &pb),
            dual_seed_to_element(dc, &pc),
        ) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return Ok(()),
        };
        let ab = hopf.cup(&a, &b).unwrap();
        let bc = hopf.cup(&b, &c).unwrap();
        prop_assert_eq!(hopf.cup(&ab, &c).unwrap(), hopf.cup(&a, &bc).unwrap());
        prop_assert_eq!(ab, hopf.cup(&b, &a).unwrap());
    }
}
