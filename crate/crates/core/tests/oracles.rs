//! Cross-module consistency: the closed forms, the certified numeric
//! route, and the sampler must all tell the same story.

use ifs_transport::cdf::{
    cdf_difference_sign, first_moment_closed, CostDescriptor, SignClass, Staircase,
};
use ifs_transport::ifs::{positive_system, reflected_system, ContractionMap, IfSystem, WeightVector};
use ifs_transport::rational::{ratio, to_f64, Rational};
use ifs_transport::sampler::{chaos_game, w1_empirical};
use ifs_transport::transport::w1_numeric;
use num_traits::One;

fn eg1_system() -> IfSystem {
    IfSystem::new(vec![
        ContractionMap::affine_ratio(1, 5, 0, 1).unwrap(),
        ContractionMap::affine_ratio(1, 5, 2, 5).unwrap(),
        ContractionMap::affine_ratio(1, 5, 4, 5).unwrap(),
    ])
    .unwrap()
}

/// One-signed CDF difference means W1 equals the absolute difference of
/// identity integrals; checked on configurations where the sign
/// classification comes out one-sided.
#[test]
fn sign_constancy_matches_moment_formula() {
    let cases: Vec<(IfSystem, WeightVector, WeightVector)> = vec![
        (
            eg1_system(),
            WeightVector::from_ratios(&[(1, 2), (1, 4), (1, 4)]).unwrap(),
            WeightVector::from_ratios(&[(1, 4), (1, 4), (1, 2)]).unwrap(),
        ),
        (
            IfSystem::new(vec![
                ContractionMap::affine_ratio(1, 5, 0, 1).unwrap(),
                ContractionMap::affine_ratio(3, 5, 1, 5).unwrap(),
                ContractionMap::affine_ratio(1, 5, 4, 5).unwrap(),
            ])
            .unwrap(),
            WeightVector::from_ratios(&[(1, 4), (1, 3), (5, 12)]).unwrap(),
            WeightVector::from_ratios(&[(1, 6), (1, 4), (7, 12)]).unwrap(),
        ),
    ];
    for (sys, p, q) in cases {
        let sp = Staircase::build(&sys, &p, 1e-5).unwrap();
        let sq = Staircase::build(&sys, &q, 1e-5).unwrap();
        let sign = cdf_difference_sign(&sp, &sq);
        assert!(
            matches!(sign.classification, SignClass::NonNegative | SignClass::NonPositive),
            "expected one-sided difference, got {:?}",
            sign.classification
        );
        let numeric = w1_numeric(&sp, &sq);
        let moment_gap = sp
            .integrate_against(&CostDescriptor::Identity)
            .sub(&sq.integrate_against(&CostDescriptor::Identity))
            .abs();
        let budget = numeric.width() + moment_gap.width() + 1e-9;
        assert!(
            (numeric.midpoint() - moment_gap.midpoint()).abs() <= budget,
            "numeric {numeric:?} vs moment gap {moment_gap:?}"
        );
    }
}

/// The positive family is conjugated to itself by x -> 1-x, so reversing
/// the weights reflects the measure: moments satisfy m(q) = 1 - m(p)
/// exactly. The reflected family is NOT reflection-symmetric, and the same
/// identity fails there (3/8 vs 2/5 already at r = 3).
#[test]
fn reflection_symmetry_holds_for_positive_family_only() {
    let one = Rational::one();
    for r in [ratio(5, 2), ratio(3, 1), ratio(7, 1)] {
        let g = positive_system(&r).unwrap();
        let f = reflected_system(&r).unwrap();
        for (a, b) in [(1i64, 3i64), (1, 4), (2, 5)] {
            let p = WeightVector::new(vec![ratio(a, b), ratio(b - a, b)]).unwrap();
            let q = p.reversed();
            let mg_p = first_moment_closed(&g, &p).unwrap();
            let mg_q = first_moment_closed(&g, &q).unwrap();
            assert_eq!(mg_q, &one - &mg_p, "positive family should reflect");

            let mf_p = first_moment_closed(&f, &p).unwrap();
            let mf_q = first_moment_closed(&f, &q).unwrap();
            assert_ne!(mf_q, &one - &mf_p, "reflected family is not symmetric");
        }
    }
    // the specific numbers for r = 3, p = (1/3, 2/3)
    let f = reflected_system(&ratio(3, 1)).unwrap();
    let p = WeightVector::from_ratios(&[(1, 3), (2, 3)]).unwrap();
    assert_eq!(first_moment_closed(&f, &p).unwrap(), ratio(3, 5));
    assert_eq!(first_moment_closed(&f, &p.reversed()).unwrap(), ratio(3, 8));
}

/// Closed form, certified numeric route, and the chaos-game oracle agree
/// three ways on the dominated-pair configuration with W1 = 1/5.
#[test]
fn three_way_agreement_on_dominated_pair() {
    let f = IfSystem::new(vec![
        ContractionMap::affine_ratio(1, 3, 0, 1).unwrap(),
        ContractionMap::affine_ratio(1, 3, 2, 3).unwrap(),
    ])
    .unwrap();
    let g = IfSystem::new(vec![
        ContractionMap::affine_ratio(1, 6, 0, 1).unwrap(),
        ContractionMap::affine_ratio(1, 6, 2, 3).unwrap(),
    ])
    .unwrap();
    let p = WeightVector::from_ratios(&[(2, 5), (3, 5)]).unwrap();
    let q = WeightVector::from_ratios(&[(1, 2), (1, 2)]).unwrap();

    let closed = to_f64(
        &(first_moment_closed(&f, &p).unwrap() - first_moment_closed(&g, &q).unwrap()),
    );
    assert_eq!(closed, 0.2);

    let sf = Staircase::build(&f, &p, 1e-5).unwrap();
    let sg = Staircase::build(&g, &q, 1e-5).unwrap();
    let numeric = w1_numeric(&sf, &sg);
    assert!(numeric.widened(1e-9).contains(closed));

    let a = chaos_game(&f, &p, 100_000, 64, 21).unwrap();
    let b = chaos_game(&g, &q, 100_000, 64, 22).unwrap();
    let (estimate, se) = w1_empirical(&a, &b).unwrap();
    assert!(
        (estimate - closed).abs() <= 4.0 * se + 2.0 / (100_000f64).sqrt(),
        "empirical {estimate} vs closed {closed} (se {se})"
    );
}

/// Attractor containment at depth 3: every chaos-game point lies in one of
/// the eight level-3 cylinder intervals.
#[test]
fn samples_lie_in_level_three_cylinders() {
    let sys = reflected_system(&ratio(3, 1)).unwrap();
    let w = WeightVector::from_ratios(&[(1, 3), (2, 3)]).unwrap();
    let samples = chaos_game(&sys, &w, 20_000, 64, 9).unwrap();

    let level = ifs_transport::symbolic::build_level(3).unwrap();
    let cylinders: Vec<(f64, f64)> = level
        .words()
        .map(|word| sys.cylinder_interval(&word).unwrap())
        .collect();
    for &x in samples.points() {
        assert!(
            cylinders.iter().any(|&(lo, hi)| x >= lo && x <= hi),
            "sample {x} outside every level-3 cylinder"
        );
    }
}
