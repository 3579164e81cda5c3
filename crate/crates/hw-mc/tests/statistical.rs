//! Statistical gates: sampled Haar unitaries reproduce exact first moments,
//! are invariant under permutation twists, and show the right variance decay.

use std::collections::HashMap;

use num_complex::Complex64;

use hw_core::word::Word;
use hw_mc::{estimate_word, haar_unitary, variance_decay_fit, CMat, SamplerConfig, C64};

fn permutation_matrix(d: usize, images: &[usize]) -> CMat {
    CMat::from_fn(d, |i, j| {
        if images[j] == i {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

#[test]
fn mean_entry_and_abs_square() {
    let d = 3;
    let n = 100_000u64;
    // E U_11 = 0 and E |U_11|^2 = 1/3, via direct sampling
    let mut sum = C64::new(0.0, 0.0);
    let mut sum_abs = 0.0;
    let mut sum_abs_sq = 0.0;
    for k in 0..n {
        let u = haar_unitary(d, 2024, k, 0);
        let v = u[(0, 0)];
        sum += v;
        sum_abs += v.norm_sqr();
        sum_abs_sq += v.norm_sqr() * v.norm_sqr();
    }
    let nf = n as f64;
    let mean = sum / nf;
    let se_entry = (1.0 / d as f64 / nf).sqrt(); // Var U_11 = 1/d
    assert!(mean.norm() < 4.0 * se_entry, "mean {mean}");
    let mean_abs = sum_abs / nf;
    let var_abs = (sum_abs_sq / nf - mean_abs * mean_abs).max(0.0);
    let z = (mean_abs - 1.0 / 3.0).abs() / (var_abs / nf).sqrt();
    assert!(z < 4.0, "z = {z}");
}

#[test]
fn commutator_word_estimate_matches_exact() {
    let w = Word::parse("U1 V1 U1* V1*").unwrap();
    let cfg = SamplerConfig {
        d: 4,
        seed: 7,
        samples: 20_000,
    };
    let r = estimate_word(
        &w,
        &HashMap::new(),
        &cfg,
        2,
        Some(Complex64::new(1.0 / 16.0, 0.0)),
    )
    .unwrap();
    assert!(r.z_score.unwrap() <= 4.0, "z = {:?}", r.z_score);
}

#[test]
fn quartic_entry_moment_matches_exact() {
    // int |U_11|^4 = 2/(d(d+1)) = 1/6 at d = 3
    let d = 3;
    let n = 100_000u64;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for k in 0..n {
        let u = haar_unitary(d, 99, k, 0);
        let v = u[(0, 0)].norm_sqr().powi(2);
        sum += v;
        sum_sq += v * v;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0);
    let z = (mean - 1.0 / 6.0).abs() / (var / nf).sqrt();
    assert!(z < 4.0, "z = {z}");
}

#[test]
fn permutation_twist_invariance() {
    // tr(PU) must be distributed like tr(U): two-sample z-test on the first
    // moment and on |tr|^2, with independent seeds
    let d = 3;
    let n = 100_000u64;
    let p = permutation_matrix(d, &[1, 2, 0]);
    let pt = p.adjoint();
    let mut constants = HashMap::new();
    constants.insert("P".to_string(), p);
    constants.insert("Q".to_string(), pt);

    let plain = Word::parse("U1").unwrap();
    let twisted = Word::parse("P U1").unwrap();
    let cfg_a = SamplerConfig {
        d,
        seed: 1001,
        samples: n,
    };
    let cfg_b = SamplerConfig {
        d,
        seed: 2002,
        samples: n,
    };
    let a = estimate_word(&plain, &constants, &cfg_a, 2, None).unwrap();
    let b = estimate_word(&twisted, &constants, &cfg_b, 2, None).unwrap();
    let z1 = (a.mean - b.mean).norm() / (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    assert!(z1 < 4.0, "first-moment z = {z1}");

    let abs_plain = Word::parse("(U1)(U1*)").unwrap();
    let abs_twisted = Word::parse("(P U1)(U1* Q)").unwrap();
    let a2 = estimate_word(&abs_plain, &constants, &cfg_a, 2, None).unwrap();
    let b2 = estimate_word(&abs_twisted, &constants, &cfg_b, 2, None).unwrap();
    let z2 = (a2.mean - b2.mean).norm() / (a2.std_error.powi(2) + b2.std_error.powi(2)).sqrt();
    assert!(z2 < 4.0, "second-moment z = {z2}");
}

#[test]
fn variance_decay_of_commutator_trace() {
    let w = Word::parse("U1 V1 U1* V1*").unwrap();
    let fit = variance_decay_fit(&w, |_| HashMap::new(), &[3, 5, 8, 12], 31, 8_000, 2).unwrap();
    assert!(
        fit.slope <= -1.5 && fit.slope >= -2.8,
        "slope = {} (variances {:?})",
        fit.slope,
        fit.variances
    );
}

#[test]
fn variance_decay_of_normalized_diagonal_word() {
    // tr(U W U*) alone is similarity-invariant, hence constant; the
    // fluctuating cousin tr(U W U* W) with W = diag(1..d)/d decays like d^-2
    let w = Word::parse("U1 W U1* W").unwrap();
    let make = |d: usize| {
        let mut m = HashMap::new();
        m.insert(
            "W".to_string(),
            CMat::from_fn(d, |i, j| {
                if i == j {
                    C64::new((i + 1) as f64 / d as f64, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
        );
        m
    };
    let fit = variance_decay_fit(&w, make, &[3, 5, 8, 12], 77, 8_000, 2).unwrap();
    assert!(fit.slope <= -1.5, "slope = {}", fit.slope);
}

#[test]
fn conjugation_word_is_degenerate_for_the_fit() {
    // tr(U W U*) = tr(W) at every sample: the fit must flag zero variance
    let w = Word::parse("U1 W U1*").unwrap();
    let make = |d: usize| {
        let mut m = HashMap::new();
        m.insert(
            "W".to_string(),
            CMat::from_fn(d, |i, j| {
                if i == j {
                    C64::new((i + 1) as f64 / d as f64, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
        );
        m
    };
    assert!(variance_decay_fit(&w, make, &[3, 5, 8], 5, 500, 1).is_err());
}

#[test]
fn constant_word_is_degenerate_for_the_fit() {
    let w = Word::parse("W").unwrap();
    let make = |d: usize| {
        let mut m = HashMap::new();
        m.insert("W".to_string(), CMat::identity(d));
        m
    };
    assert!(variance_decay_fit(&w, make, &[3, 5, 8], 5, 500, 1).is_err());
}
