//! The acceptance gate: ten end-to-end criteria, one test each, covering
//! the predictor, the oracle, and their agreement.  Every oracle run in
//! this file goes through [`hf_checked`], which enforces degree
//! conservation (the sum of the difference function equals the scheme
//! length) as a side condition.

use fplab::commands::{self, ReproduceOptions};
use fplab::config::{cubic_points, scattered_points, with_multiplicity, Configuration, FatPoint};
use fplab::oracle::{betti_table, hilbert_function, ArithmeticMode, HfRecord, RankEngine};
use fplab::report::Verdict;
use fplab::typevec::{BettiTable, PseudoTypeVector, TypeVector};
use rayon::prelude::*;

fn exact(seed: u64) -> RankEngine {
    RankEngine::new(ArithmeticMode::Exact, seed)
}

fn modular(seed: u64) -> RankEngine {
    RankEngine::new(ArithmeticMode::Modular, seed)
}

/// Oracle Hilbert function plus the degree-conservation side condition.
fn hf_checked(scheme: &[FatPoint], engine: &RankEngine) -> HfRecord {
    let hf = hilbert_function(scheme, engine).expect("oracle run failed");
    let mass: u32 = hf.delta_h.iter().sum();
    assert_eq!(
        mass, hf.degree,
        "sum of delta h must equal the scheme length (degree conservation)"
    );
    hf
}

fn subsets(max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << max) {
        out.push((1..=max).filter(|i| mask >> (i - 1) & 1 == 1).collect());
    }
    out.sort();
    out
}

#[test]
fn criterion_01_standard_osequence_fixture() {
    let p = PseudoTypeVector::new(vec![3, 6, 6, 7, 12, 14]).unwrap();
    assert_eq!(
        p.standard_osequence(),
        vec![1, 2, 3, 4, 5, 6, 6, 6, 5, 3, 2, 2, 2, 1]
    );
    eprintln!("criterion 01: PASS — standard O-sequence of (3,6,6,7,12,14)");
}

#[test]
fn criterion_02_reproduce_ex_2_4_5_exact() {
    // through the command layer, exactly as the CLI would run it
    let out = commands::reproduce(&ReproduceOptions {
        id: "ex-2-4-5".into(),
        mode: ArithmeticMode::Exact,
        seed: 0,
        trials: 8,
    })
    .unwrap();
    assert_eq!(out.report.verdict, Verdict::Match, "reproduce ex-2-4-5 must match");

    // and independently against the frozen numbers
    let t = TypeVector::new(vec![2, 4, 5]).unwrap();
    let scheme = Configuration::spread_out(&t).double();
    let engine = exact(0);
    let (profile, table) = betti_table(&scheme, &engine).unwrap();
    let hf = hf_checked(&scheme, &engine);
    assert_eq!(hf.h, vec![1, 3, 6, 10, 15, 21, 27, 30, 32, 33]);
    assert_eq!(hf.degree, 33, "the function stabilizes at 33");
    assert_eq!(profile.hf.h, hf.h);
    let expected = BettiTable::new(vec![6, 7, 7, 7, 9, 10], vec![8, 8, 9, 10, 11]).unwrap();
    assert_eq!(table, expected);
    eprintln!("criterion 02: PASS — reproduce ex-2-4-5 in exact mode");
}

#[test]
fn criterion_03_spread_out_vs_standard_gap_exact() {
    let t = TypeVector::new(vec![4, 5, 8, 9, 10]).unwrap();
    let spread = Configuration::spread_out(&t).double();
    let standard = Configuration::standard_linear(&t).double();
    let (spread_hf, standard_hf) = rayon::join(
        || hf_checked(&spread, &exact(0)),
        || hf_checked(&standard, &exact(0)),
    );
    assert_eq!(
        spread_hf.delta_h,
        vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10, 10, 10, 7, 4, 3, 3, 3, 2, 1]
    );
    assert_eq!(
        standard_hf.delta_h,
        vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10, 10, 10, 8, 3, 3, 3, 3, 2, 1]
    );
    eprintln!("criterion 03: PASS — spread-out vs standard lifting gap for (4,5,8,9,10)");
}

#[test]
fn criterion_04_uniqueness_sweep_to_8() {
    let passing: Vec<Vec<u32>> = subsets(8)
        .into_iter()
        .filter(|v| {
            let c = TypeVector::new(v.clone()).unwrap().classify_double();
            let diff = PseudoTypeVector::new(c.pseudo_type.clone()).unwrap().diff();
            diff.zeros_separated()
        })
        .collect();
    assert!(!passing.is_empty());
    let mismatches: Vec<String> = passing
        .par_iter()
        .flat_map(|v| {
            let c = TypeVector::new(v.clone()).unwrap().classify_double();
            assert!(c.hf_unique, "zero separation must imply a forced Hilbert function");
            let rows = PseudoTypeVector::new(v.clone()).unwrap();
            (0u64..10)
                .into_par_iter()
                .filter_map(|seed| {
                    let config = Configuration::generic_pseudo(&rows, seed).unwrap();
                    let hf = hf_checked(&config.double(), &modular(seed));
                    (hf.delta_h != c.delta_h).then(|| {
                        format!("type {:?} seed {}: {:?} != {:?}", v, seed, hf.delta_h, c.delta_h)
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    assert!(mismatches.is_empty(), "uniqueness sweep mismatches: {mismatches:#?}");
    eprintln!(
        "criterion 04: PASS — {} forced types x 10 seeds, zero mismatches",
        passing.len()
    );
}

#[test]
fn criterion_05_nonuniqueness_witnesses() {
    // (1,1,2,2): the standard realization and a generic one disagree
    let p = PseudoTypeVector::new(vec![1, 1, 2, 2]).unwrap();
    let standard = hf_checked(&Configuration::standard_pseudo(&p).support(), &modular(0));
    assert_eq!(standard.delta_h, vec![1, 2, 2, 1]);
    let generic = hf_checked(
        &Configuration::generic_pseudo(&p, 7).unwrap().support(),
        &modular(7),
    );
    assert_eq!(generic.delta_h, vec![1, 2, 3]);

    // (2,3,4,5) doubled: one Hilbert function, two Betti tables
    let t = TypeVector::new(vec![2, 3, 4, 5]).unwrap();
    let rows = PseudoTypeVector::new(vec![2, 3, 4, 5]).unwrap();
    let spread = Configuration::spread_out(&t).double();
    let lines = Configuration::generic_lines(&rows, 1).unwrap().double();
    let (spread_profile, spread_table) = betti_table(&spread, &modular(0)).unwrap();
    let (lines_profile, lines_table) = betti_table(&lines, &modular(1)).unwrap();
    assert_eq!(spread_profile.hf.delta_h, vec![1, 2, 3, 4, 5, 6, 7, 8, 5, 1]);
    assert_eq!(lines_profile.hf.delta_h, spread_profile.hf.delta_h, "identical HF");
    let first = BettiTable::new(
        vec![8, 8, 8, 8, 9, 9, 9, 10],
        vec![9, 9, 10, 10, 10, 10, 11],
    )
    .unwrap();
    let second = BettiTable::new(vec![8, 8, 8, 8, 9, 10], vec![10, 10, 10, 10, 11]).unwrap();
    assert_eq!(spread_table, first);
    assert_eq!(lines_table, second);
    eprintln!("criterion 05: PASS — non-uniqueness witnesses for (1,1,2,2) and (2,3,4,5)");
}

#[test]
fn criterion_06_regularity_laws() {
    // 10 type vectors, 5 random linear configurations each: reg = 2 n_r
    let types: Vec<Vec<u32>> = vec![
        vec![3],
        vec![1, 4],
        vec![2, 5],
        vec![1, 3, 5],
        vec![2, 4, 6],
        vec![1, 2, 6],
        vec![3, 6, 7],
        vec![1, 4, 6, 7],
        vec![2, 3, 5, 7],
        vec![1, 2, 3, 4, 7],
    ];
    assert_eq!(types.len(), 10);
    let failures: Vec<String> = types
        .par_iter()
        .flat_map(|v| {
            let t = TypeVector::new(v.clone()).unwrap();
            let rows = PseudoTypeVector::new(v.clone()).unwrap();
            (0u64..5)
                .into_par_iter()
                .filter_map(|seed| {
                    let config = Configuration::generic_pseudo(&rows, seed).unwrap();
                    let hf = hf_checked(&config.double(), &modular(seed));
                    (hf.regularity != 2 * t.sigma()).then(|| {
                        format!("type {:?} seed {}: reg {} != {}", v, seed, hf.regularity, 2 * t.sigma())
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    assert!(failures.is_empty(), "regularity failures: {failures:#?}");

    // 50 random reduced schemes: reg(double) <= 2 reg(support)
    let bound_failures: Vec<String> = (0u64..50)
        .into_par_iter()
        .filter_map(|seed| {
            let n = 3 + (seed % 10) as u32; // sizes 3..=12
            let pts = scattered_points(n, seed);
            let support = hf_checked(&with_multiplicity(&pts, 1), &modular(seed));
            let double = hf_checked(&with_multiplicity(&pts, 2), &modular(seed));
            (double.regularity > 2 * support.regularity).then(|| {
                format!(
                    "seed {}: reg(double) {} > 2 * reg(support) {}",
                    seed, double.regularity, support.regularity
                )
            })
        })
        .collect();
    assert!(bound_failures.is_empty(), "regularity bound failures: {bound_failures:#?}");
    eprintln!("criterion 06: PASS — 50/50 doubles at reg 2n_r, 50/50 within twice the support reg");
}

#[test]
fn criterion_07_intersection_double_minimality() {
    // exact values of the two smallest doubled full intersections
    let z4 = hf_checked(&Configuration::intersection(4, 0).unwrap().double(), &exact(0));
    assert_eq!(z4.delta_h, vec![1, 2, 3, 4, 4, 4]);
    let z5 = hf_checked(&Configuration::intersection(5, 0).unwrap().double(), &exact(0));
    assert_eq!(z5.delta_h, vec![1, 2, 3, 4, 5, 5, 5, 5]);

    // sampled minimality: no double of a generic-HF support dips below
    for (t, z) in [(4u32, &z4), (5u32, &z5)] {
        let target: Vec<u32> = (1..t).collect();
        let n: u32 = target.iter().sum();
        let value = |hf: &HfRecord, d: usize| hf.h.get(d).copied().unwrap_or(hf.degree);
        let dips: Vec<String> = (0u64..50)
            .into_par_iter()
            .filter_map(|trial| {
                // rejection-sample a support with the generic Hilbert function
                let mut accepted = None;
                for attempt in 0u64..64 {
                    let seed = trial * 64 + attempt + 1;
                    let pts = scattered_points(n, seed);
                    let support = hf_checked(&with_multiplicity(&pts, 1), &modular(seed));
                    if support.delta_h == target {
                        accepted = Some((seed, pts));
                        break;
                    }
                }
                let (seed, pts) = accepted.expect("sampling a generic support failed");
                let double = hf_checked(&with_multiplicity(&pts, 2), &modular(seed));
                let max_d = double.h.len().max(z.h.len());
                (0..max_d)
                    .find(|&d| value(&double, d) < value(z, d))
                    .map(|d| format!("t={t} trial {trial}: sample below in degree {d}"))
            })
            .collect();
        assert!(dips.is_empty(), "minimality violations: {dips:#?}");
    }
    eprintln!("criterion 07: PASS — Z4 and Z5 exact; 50+50 sampled doubles never dip below");
}

#[test]
fn criterion_08_betti_recursion_vs_oracle_to_6() {
    let unique: Vec<Vec<u32>> = subsets(6)
        .into_iter()
        .filter(|v| TypeVector::new(v.clone()).unwrap().classify_double().betti_unique)
        .collect();
    assert!(!unique.is_empty());
    let failures: Vec<String> = unique
        .par_iter()
        .filter_map(|v| {
            let c = TypeVector::new(v.clone()).unwrap().classify_double();
            let predicted = c.betti.expect("betti-unique classification carries a table");
            let scheme = Configuration::spread_out(&TypeVector::new(v.clone()).unwrap()).double();
            let (profile, table) = betti_table(&scheme, &modular(0)).unwrap();
            assert_eq!(
                profile.hf.delta_h.iter().sum::<u32>(),
                profile.hf.degree,
                "degree conservation"
            );
            (table != predicted).then(|| {
                format!("type {:?}: oracle {:?}/{:?} != predicted {:?}/{:?}",
                    v, table.beta1, table.beta2, predicted.beta1, predicted.beta2)
            })
        })
        .collect();
    assert!(failures.is_empty(), "betti recursion failures: {failures:#?}");
    eprintln!(
        "criterion 08: PASS — BDL Betti prediction matches the oracle on {} betti-unique types",
        unique.len()
    );
}

#[test]
fn criterion_09_roundtrip_conservation_series() {
    // type vector <-> delta h round trip, every vector with entries <= 12
    for v in subsets(12) {
        let t = TypeVector::new(v.clone()).unwrap();
        let back = TypeVector::from_delta_h(&t.delta_h()).unwrap();
        assert_eq!(back.entries(), &v[..], "round trip failed for {v:?}");
    }

    // Hilbert-series identity on every predicted (delta h, betti) pair
    for v in subsets(12) {
        let c = TypeVector::new(v.clone()).unwrap().classify_double();
        if let Some(betti) = &c.betti {
            assert!(
                betti.matches_delta_h(&c.delta_h),
                "series identity failed for predicted pair of {v:?}"
            );
        }
        let p = PseudoTypeVector::new(v.clone()).unwrap().predict();
        if let Some(betti) = &p.betti {
            assert!(
                betti.matches_delta_h(&p.delta_h),
                "series identity failed for predicted support pair of {v:?}"
            );
        }
    }

    // the same identity and degree conservation on exact oracle pairs
    let samples: Vec<Vec<FatPoint>> = vec![
        Configuration::spread_out(&TypeVector::new(vec![2, 4, 5]).unwrap()).double(),
        Configuration::standard_linear(&TypeVector::new(vec![1, 3, 4]).unwrap()).double(),
        Configuration::standard_pseudo(&PseudoTypeVector::new(vec![1, 2, 2, 3]).unwrap()).support(),
        with_multiplicity(&cubic_points(10, 0).unwrap(), 2),
    ];
    for scheme in &samples {
        let engine = exact(0);
        let (profile, table) = betti_table(scheme, &engine).unwrap();
        let hf = hf_checked(scheme, &engine);
        assert_eq!(profile.hf.h, hf.h);
        assert!(
            table.matches_delta_h(&hf.delta_h),
            "series identity failed on an exact oracle pair"
        );
    }
    eprintln!("criterion 09: PASS — round trip to 12, degree conservation, series identity");
}

#[test]
fn criterion_10_cubic_points_fixture() {
    let pts = cubic_points(10, 0).unwrap();
    let engine = exact(0);
    let support = hf_checked(&with_multiplicity(&pts, 1), &engine);
    assert_eq!(support.delta_h, vec![1, 2, 3, 3, 1]);
    let double = hf_checked(&with_multiplicity(&pts, 2), &engine);
    assert_eq!(double.delta_h, vec![1, 2, 3, 4, 5, 6, 6, 3]);

    let companion = Configuration::spread_out(&TypeVector::new(vec![1, 2, 3, 4]).unwrap());
    let companion_double = hf_checked(&companion.double(), &engine);
    assert_eq!(companion_double.delta_h, double.delta_h, "doubles must agree");
    let companion_support = hf_checked(&companion.support(), &engine);
    assert_ne!(companion_support.delta_h, support.delta_h, "supports must differ");
    eprintln!("criterion 10: PASS — cubic fixture: supports differ, doubles agree");
}
