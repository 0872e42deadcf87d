//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `--nocapture` to see them) and enforcing its runtime budget.
//! The checks come from the library's verification module; on top of them
//! every criterion pins a handful of hand-computed values directly so the
//! suite does not lean on a single code path.

use chamanara::dyadic::Dyadic;
use chamanara::dynamics::{periodic_points, verify_isolation};
use chamanara::orbit::{
    accumulation_clusters, build_punctured_surface, make_special_point, stabilizer_proxy_check,
};
use chamanara::rational::Rational;
use chamanara::sequence::{SequenceSpec, SparseSequence};
use chamanara::surface::SquarePoint;
use chamanara::verify::{self, CheckOutcome};

fn report(criterion: u32, outcome: &CheckOutcome, budget_ms: u128) {
    let status = if outcome.passed { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion} [{}]: {status} — {} ({} ms, budget {} ms)",
        outcome.name, outcome.detail, outcome.millis, budget_ms
    );
    assert!(
        outcome.passed,
        "criterion {criterion} failed: {}",
        outcome.detail
    );
    assert!(
        outcome.millis < budget_ms,
        "criterion {criterion} took {} ms, budget {budget_ms} ms",
        outcome.millis
    );
}

fn squares() -> SparseSequence {
    SparseSequence::new(SequenceSpec::Polynomial {
        coefficients: vec![0, 0, 1],
    })
    .unwrap()
}

fn pow2m1() -> SparseSequence {
    SparseSequence::new(SequenceSpec::Exponential {
        base: 2,
        offset: -1,
    })
    .unwrap()
}

#[test]
fn criterion_1_digit_rule_consistency() {
    // spot value: (1/4, 1/4) -> (5/8, 1/2) by the lower branch
    let p = SquarePoint::from_parts(1, 2, 1, 2).unwrap();
    let img = chamanara::baker(&p).unwrap();
    let (x, y) = img.exact_pair().unwrap();
    assert_eq!((x, y), (Dyadic::new(5, 3), Dyadic::half()));

    report(1, &verify::check_digit_rule_consistency(), 10_000);
}

#[test]
fn criterion_2_group_laws() {
    report(2, &verify::check_group_laws(), 30_000);
}

#[test]
fn criterion_3_derivative() {
    report(3, &verify::check_derivative_scaling(), 30_000);
}

#[test]
fn criterion_4_periodic_points() {
    // spot values: the period-2 family and its separation bound
    let pts = periodic_points(2).unwrap();
    let coords: Vec<(Rational, Rational)> =
        pts.iter().map(|p| (p.x().clone(), p.y().clone())).collect();
    assert_eq!(
        coords,
        vec![
            (Rational::from_i64(1, 3), Rational::from_i64(1, 3)),
            (Rational::from_i64(2, 3), Rational::from_i64(2, 3)),
        ]
    );
    assert_eq!(
        verify_isolation(&pts, 1).min_separation.lower(),
        Some(&Rational::from_i64(1, 3))
    );

    report(4, &verify::check_periodic_points(), 30_000);
}

#[test]
fn criterion_5_gluing_soundness() {
    // spot values from the interval formulas
    let p = SquarePoint::from_parts(1, 2, 0, 0).unwrap();
    assert_eq!(
        chamanara::identify_edge(&p).unwrap(),
        SquarePoint::from_parts(3, 2, 1, 0).unwrap()
    );
    let q = SquarePoint::from_parts(5, 3, 0, 0).unwrap();
    assert_eq!(
        chamanara::identify_edge(&q).unwrap(),
        SquarePoint::from_parts(3, 3, 1, 0).unwrap()
    );

    report(5, &verify::check_gluing_soundness(), 30_000);
}

#[test]
fn criterion_6_orbit_separation() {
    // budget is 60 s per point; the check runs both standard families
    report(6, &verify::check_orbit_separation(), 120_000);
}

#[test]
fn criterion_7_accumulation_limits() {
    // spot check: the all-ones/all-zeros limit is the corner with K = 0
    let zeta = make_special_point(pow2m1(), pow2m1()).unwrap();
    let r = accumulation_clusters(&zeta, 200, 20).unwrap();
    assert!(r.flagged.is_empty());
    for (c, _) in &r.clusters {
        assert!(c.k_statistic <= 1);
    }

    report(7, &verify::check_accumulation(), 60_000);
}

#[test]
fn criterion_8_punctured_surface() {
    // spot check on the squares family: shift invariance and count
    let zeta = make_special_point(squares(), squares()).unwrap();
    let d = build_punctured_surface(&zeta, 50, 128, 1).unwrap();
    assert_eq!(d.punctures.len(), 101);
    assert!(d.radius.is_positive());
    assert!(d.shift_invariance);

    report(8, &verify::check_punctured_surface(), 120_000);
}

#[test]
fn criterion_9_stabilizer_proxy() {
    // direct checks at the documented scale
    for seq in [squares(), pow2m1()] {
        let zeta = make_special_point(seq.clone(), seq).unwrap();
        let cert = stabilizer_proxy_check(&zeta, 10).unwrap();
        assert_eq!(cert.checked, 10);
        assert_eq!(cert.witnesses.len(), 10);
    }

    report(9, &verify::check_stabilizer_proxy(), 30_000);
}
