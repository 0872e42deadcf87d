//! Property tests for the stream and surface invariants.

use proptest::prelude::*;

use chamanara::dyadic::Dyadic;
use chamanara::dynamics::{baker, baker_inverse};
use chamanara::metric::{bound_between, Enclosure, DEFAULT_EDGE_LIMIT};
use chamanara::sequence::{SequenceSpec, SparseSequence};
use chamanara::stream::DigitStream;
use chamanara::surface::{
    canonical_rep, identify_edge, point_on_edge, EdgeFamily, EdgeId, EdgeSide, SquarePoint,
};

fn sparse_sequence() -> impl Strategy<Value = SparseSequence> {
    prop_oneof![
        // n^2 shifted by a constant
        (0u64..32).prop_map(|c| {
            SparseSequence::new(SequenceSpec::Polynomial {
                coefficients: vec![c + 1, 0, 1],
            })
            .unwrap()
        }),
        // cubes
        Just(
            SparseSequence::new(SequenceSpec::Polynomial {
                coefficients: vec![0, 0, 0, 1]
            })
            .unwrap()
        ),
        // b^n + offset
        (2u64..4, 0i64..4).prop_map(|(b, o)| {
            SparseSequence::new(SequenceSpec::Exponential { base: b, offset: o }).unwrap()
        }),
    ]
}

fn stream() -> impl Strategy<Value = DigitStream> {
    let base = prop_oneof![
        sparse_sequence().prop_map(DigitStream::sparse_sum),
        sparse_sequence().prop_map(DigitStream::sparse_complement),
        (1u64..2000, 2001u64..4000)
            .prop_map(|(num, den)| DigitStream::from_rational(num, den).unwrap()),
        (0i128..256).prop_map(|n| DigitStream::terminating(Dyadic::new(n, 9)).unwrap()),
    ];
    // wrap in prefixes and shifts
    (base, proptest::collection::vec(0u8..2, 0..6), 0u64..5).prop_map(|(tail, prefix, shift)| {
        DigitStream::shift_of(DigitStream::prefix_then(&prefix, tail), shift)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn truncation_envelope(s in stream(), m in 1u32..80) {
        let coarse = s.to_dyadic_approx(m);
        let fine = s.to_dyadic_approx(m + 64);
        // coarse <= fine < coarse + 2^-m
        prop_assert!(coarse <= fine);
        prop_assert!(fine < coarse.add(&Dyadic::pow2_neg(m)));
    }

    #[test]
    fn digits_are_deterministic_and_idempotent(s in stream(), order in proptest::collection::vec(1u64..128, 1..40)) {
        let fresh: Vec<u8> = order.iter().map(|&i| s.digit_at(i)).collect();
        let again: Vec<u8> = order.iter().map(|&i| s.digit_at(i)).collect();
        prop_assert_eq!(&fresh, &again);
        // forward scan agrees with the shuffled reads
        for (k, &i) in order.iter().enumerate() {
            prop_assert_eq!(s.digits(i)[i as usize - 1], fresh[k]);
        }
    }

    #[test]
    fn prefix_composition(bits in proptest::collection::vec(0u8..2, 0..12), tail in stream(), i in 1u64..64) {
        let composed = DigitStream::prefix_then(&bits, tail.clone());
        let expected = if i <= bits.len() as u64 {
            bits[i as usize - 1]
        } else {
            tail.digit_at(i - bits.len() as u64)
        };
        prop_assert_eq!(composed.digit_at(i), expected);
    }

    #[test]
    fn complement_identity(seq in sparse_sequence(), horizon in 1u64..160) {
        let sum = DigitStream::sparse_sum(seq.clone());
        let comp = DigitStream::sparse_complement(seq);
        for i in 1..=horizon {
            prop_assert_eq!(sum.digit_at(i) + comp.digit_at(i), 1);
        }
    }

    #[test]
    fn shift_is_a_left_shift(s in stream(), off in 0u64..24, i in 1u64..64) {
        let shifted = DigitStream::shift_of(s.clone(), off);
        prop_assert_eq!(shifted.digit_at(i), s.digit_at(i + off));
    }

    #[test]
    fn canonical_rep_is_idempotent_on_edges(
        family in prop_oneof![Just(EdgeFamily::Horizontal), Just(EdgeFamily::Vertical)],
        side in prop_oneof![Just(EdgeSide::Lower), Just(EdgeSide::Upper)],
        k in 0u32..16,
        t in 1i128..64,
    ) {
        let p = point_on_edge(EdgeId { family, k, side }, &Dyadic::new(t, 6));
        let canon = canonical_rep(&p).unwrap();
        prop_assert_eq!(canonical_rep(&canon).unwrap(), canon.clone());
        // constant on the gluing class
        let partner = identify_edge(&p).unwrap();
        prop_assert_eq!(canonical_rep(&partner).unwrap(), canon);
    }

    #[test]
    fn round_trip_on_random_dyadics(a in 1i128..4096, b in 1i128..4096) {
        let p = SquarePoint::dyadic(Dyadic::new(a, 12), Dyadic::new(b, 12)).unwrap();
        prop_assert_eq!(baker_inverse(&baker(&p).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(baker(&baker_inverse(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn distance_bound_soundness(
        ax in 1i128..255, ay in 1i128..255, bx in 1i128..255, by in 1i128..255,
        depth in 0u32..3,
    ) {
        prop_assume!((ax, ay) != (bx, by));
        let p = SquarePoint::dyadic(Dyadic::new(ax, 8), Dyadic::new(ay, 8)).unwrap();
        let q = SquarePoint::dyadic(Dyadic::new(bx, 8), Dyadic::new(by, 8)).unwrap();
        let pe = Enclosure::of(&p, 32);
        let qe = Enclosure::of(&q, 32);
        let bound = bound_between(&pe, &qe, depth, DEFAULT_EDGE_LIMIT);
        let next = bound_between(&pe, &qe, depth + 1, DEFAULT_EDGE_LIMIT);
        let sym = bound_between(&qe, &pe, depth, DEFAULT_EDGE_LIMIT);
        // sound against the straight-line chart path, monotone in depth,
        // symmetric, and consistent with its own upper part
        let dx = Dyadic::new(ax - bx, 8).abs();
        let dy = Dyadic::new(ay - by, 8).abs();
        let cheb = chamanara::Rational::from(&dx.max(dy));
        prop_assert!(bound.lower <= cheb);
        prop_assert!(next.lower >= bound.lower);
        prop_assert_eq!(sym.lower.clone(), bound.lower.clone());
        prop_assert!(bound.lower <= bound.upper.unwrap());
    }
}
