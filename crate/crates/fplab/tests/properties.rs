//! Randomized invariant checks on the combinatorial layer.  Everything
//! here is pure integer computation, so the case counts can stay high.

use fplab::commands::extremal_target_from_delta;
use fplab::typevec::{
    bdl_hf_step, ci_delta_h, ctr_support_delta_h, h_from_delta, numerator_from_delta,
    PseudoTypeVector, TypeVector,
};
use proptest::prelude::*;

/// Strictly increasing vectors with entries in 1..=12, via subset masks.
fn type_vectors() -> impl Strategy<Value = Vec<u32>> {
    (1u32..(1 << 12)).prop_map(|mask| (1..=12u32).filter(|i| mask >> (i - 1) & 1 == 1).collect())
}

/// Weakly increasing vectors, no value three times, entries in 1..=9.
fn pseudo_vectors() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(1u32..=9, 1..=6)
        .prop_map(|mut v| {
            v.sort_unstable();
            v
        })
        .prop_filter("no value may appear three times", |v| {
            v.windows(3).all(|w| !(w[0] == w[1] && w[1] == w[2]))
        })
}

/// An O-sequence for points starts at 1 and climbs by at most 1.
fn assert_osequence_growth(delta: &[u32], context: &str) {
    assert_eq!(delta.first(), Some(&1), "{context}: must start at 1");
    for w in delta.windows(2) {
        assert!(w[1] <= w[0] + 1, "{context}: grows by more than 1: {delta:?}");
    }
    assert!(delta.iter().all(|&d| d > 0), "{context}: interior zero in {delta:?}");
}

proptest! {
    #[test]
    fn type_vector_delta_h_round_trips(v in type_vectors()) {
        let t = TypeVector::new(v.clone()).unwrap();
        let delta = t.delta_h();
        assert_osequence_growth(&delta, "type vector delta h");
        prop_assert_eq!(delta.iter().sum::<u32>(), t.point_count());
        let back = TypeVector::from_delta_h(&delta).unwrap();
        prop_assert_eq!(back.entries(), &v[..]);
    }

    #[test]
    fn double_classification_invariants(v in type_vectors()) {
        let t = TypeVector::new(v.clone()).unwrap();
        let c = t.classify_double();

        // a double point has length 3
        prop_assert_eq!(c.delta_h.iter().sum::<u32>(), 3 * t.point_count());
        assert_osequence_growth(&c.delta_h, "double delta h");

        // regularity is twice the largest entry and equals the length of delta h
        prop_assert_eq!(c.regularity, 2 * t.sigma());
        prop_assert_eq!(c.delta_h.len() as u32, c.regularity);

        // the uniqueness flag is exactly zero separation of the difference
        let diff = PseudoTypeVector::new(c.pseudo_type.clone()).unwrap().diff();
        prop_assert_eq!(c.hf_unique, diff.zeros_separated());

        // betti uniqueness implies hf uniqueness, and the table travels with it
        if c.betti_unique {
            prop_assert!(c.hf_unique);
        }
        prop_assert_eq!(c.betti.is_some(), c.betti_unique);
        if let Some(betti) = &c.betti {
            let p = c.pseudo_type.len();
            prop_assert_eq!(betti.beta1.len(), p + 1 - diff.zero_count());
            prop_assert_eq!(Some(betti.beta1.len() as u32), c.min_gen_count);
            prop_assert_eq!(betti.beta2.len() + 1, betti.beta1.len());
            // Hilbert-series identity ties the table to the delta h
            prop_assert!(betti.matches_delta_h(&c.delta_h));
        }

        // the classification agrees with the raw BDL chain
        let pseudo = PseudoTypeVector::new(c.pseudo_type.clone()).unwrap();
        prop_assert_eq!(&c.delta_h, &pseudo.delta_h_by_bdl());
        prop_assert_eq!(&c.delta_h, &pseudo.standard_osequence());
        if c.betti_unique {
            prop_assert_eq!(c.betti.as_ref().unwrap(), &pseudo.bdl_betti());
        }
    }

    #[test]
    fn pseudo_prediction_invariants(v in pseudo_vectors()) {
        let p = PseudoTypeVector::new(v.clone()).unwrap();
        let pred = p.predict();

        prop_assert_eq!(pred.delta_h.iter().sum::<u32>(), p.point_count());
        assert_osequence_growth(&pred.delta_h, "pseudo delta h");
        prop_assert_eq!(pred.hf_unique, p.diff().zeros_separated());

        if pred.hf_unique {
            // stabilization degree doubles as the regularity for points
            prop_assert_eq!(pred.regularity, Some(pred.delta_h.len() as u32));
        } else {
            prop_assert_eq!(pred.regularity, None);
            prop_assert_eq!(pred.betti_unique, None);
        }
        if let Some(betti) = &pred.betti {
            prop_assert_eq!(pred.betti_unique, Some(true));
            prop_assert!(betti.matches_delta_h(&pred.delta_h));
            prop_assert_eq!(Some(betti.beta1.len() as u32), pred.min_gen_count);
        }

        // the BDL chain computes the same difference function
        prop_assert_eq!(&pred.delta_h, &p.delta_h_by_bdl());
    }

    #[test]
    fn one_quadric_step_equals_two_linear_steps(m in 1u32..=12) {
        let one_line = bdl_hf_step(&[], m, 1).unwrap();
        let two_lines = bdl_hf_step(&one_line, m, 1).unwrap();
        prop_assert_eq!(two_lines, ci_delta_h(m, 2).unwrap());
    }

    #[test]
    fn complete_intersection_delta_is_a_palindrome_of_the_right_mass(
        a in 1u32..=12,
        b in 1u32..=2,
    ) {
        let delta = ci_delta_h(a, b).unwrap();
        prop_assert_eq!(delta.iter().sum::<u32>(), a * b);
        prop_assert_eq!(delta.len() as u32, a + b - 1);
        let mut reversed = delta.clone();
        reversed.reverse();
        prop_assert_eq!(delta, reversed);
    }

    #[test]
    fn series_numerator_and_cumulative_function_are_consistent(v in pseudo_vectors()) {
        let delta = PseudoTypeVector::new(v).unwrap().standard_osequence();
        // (1-t)^2 * delta poly evaluated at t = 1 vanishes
        let numerator = numerator_from_delta(&delta);
        prop_assert_eq!(numerator.iter().sum::<i64>(), 0);
        // h is the running sum of delta
        let h = h_from_delta(&delta);
        prop_assert_eq!(h.len(), delta.len());
        let mut acc = 0;
        for (hv, dv) in h.iter().zip(&delta) {
            acc += dv;
            prop_assert_eq!(*hv, acc);
        }
    }
}

#[test]
fn intersection_support_shapes_resolve_back_to_t_and_r() {
    for t in 2..=9u32 {
        for r in 0..t {
            let support = ctr_support_delta_h(t, r).unwrap();
            assert_eq!(
                extremal_target_from_delta(&support).unwrap(),
                (t, r),
                "support {support:?}"
            );
        }
    }
}
