//! The cumulant-wise limit of the Itzykson-Zuber integral against the reference
//! centered tables, the triangulation of both computation paths, and the
//! structural invariants of the exact finite-d forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use hw_core::gamma::GammaContext;
use hw_core::iz::{
    centered, evaluate_at_spectra, genus_condition, iz_cumulant_exact, iz_cumulant_limit,
    iz_cumulant_limit_from_exact, iz_moment_exact, pair_term, rank_one_limit, IzLimit,
};
use hw_core::momentpoly::{x_monomial, y_monomial, MomentPolynomial, XYSym};
use hw_core::perm::Permutation;
use hw_core::weingarten::WgContext;

fn rq(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Build a centered table polynomial from (coeff, x-parts, y-parts) triples.
fn table(terms: &[(i64, &[u32], &[u32])]) -> IzLimit {
    let mut p = IzLimit::zero();
    for &(c, xs, ys) in terms {
        p.add_term(x_monomial(xs).merge(&y_monomial(ys)), rq(c));
    }
    p
}

/// Reference centered limits of d^-2 C_q(d^2 tr A)/(q-1)! for q = 2..6.
fn reference_table(q: u32) -> IzLimit {
    match q {
        2 => table(&[(1, &[2], &[2])]),
        3 => table(&[(1, &[3], &[3])]),
        4 => table(&[
            (1, &[4], &[4]),
            (3, &[2, 2], &[2, 2]),
            (-2, &[2, 2], &[4]),
            (-2, &[4], &[2, 2]),
        ]),
        5 => table(&[
            (1, &[5], &[5]),
            (20, &[3, 2], &[3, 2]),
            (-5, &[3, 2], &[5]),
            (-5, &[5], &[3, 2]),
        ]),
        6 => table(&[
            (-6, &[4, 2], &[6]),
            (30, &[4, 2], &[4, 2]),
            (27, &[2, 2, 2], &[2, 2, 2]),
            (-30, &[2, 2, 2], &[4, 2]),
            (-30, &[4, 2], &[2, 2, 2]),
            (-16, &[3, 3], &[2, 2, 2]),
            (15, &[4, 2], &[3, 3]),
            (15, &[3, 3], &[4, 2]),
            (-6, &[6], &[4, 2]),
            (1, &[6], &[6]),
            (-16, &[2, 2, 2], &[3, 3]),
            (7, &[6], &[2, 2, 2]),
            (7, &[2, 2, 2], &[6]),
            (6, &[3, 3], &[3, 3]),
            (-3, &[3, 3], &[6]),
            (-3, &[6], &[3, 3]),
        ]),
        _ => panic!("no reference table for q = {q}"),
    }
}

#[test]
fn centered_limits_match_reference_tables_q2_to_q5() {
    let mut wg = WgContext::new();
    let mut gc = GammaContext::new();
    for q in 2..=5u32 {
        let via_gamma = centered(&iz_cumulant_limit(&mut wg, &mut gc, q).unwrap());
        let via_exact = centered(&iz_cumulant_limit_from_exact(&mut wg, &mut gc, q).unwrap());
        let expect = reference_table(q);
        assert_eq!(via_gamma, expect, "gamma path, q = {q}");
        assert_eq!(via_exact, expect, "exact path, q = {q}");
    }
}

#[test]
fn centered_limit_matches_reference_table_q6() {
    let mut wg = WgContext::new();
    let mut gc = GammaContext::new();
    let via_gamma = centered(&iz_cumulant_limit(&mut wg, &mut gc, 6).unwrap());
    let via_exact = centered(&iz_cumulant_limit_from_exact(&mut wg, &mut gc, 6).unwrap());
    let expect = reference_table(6);
    assert_eq!(via_gamma, expect, "gamma path");
    assert_eq!(via_exact, expect, "exact path");
}

/// Reference q = 7 table (centered). Stretch target: our two computation
/// paths must agree with each other; any term-level difference against the
/// reference polynomial is reported without failing the build.
fn reference_table_q7() -> IzLimit {
    table(&[
        (-7, &[5, 2], &[7]),
        (42, &[5, 2], &[4, 3]),
        (42, &[4, 3], &[5, 2]),
        (-7, &[7], &[5, 2]),
        (462, &[3, 2, 2], &[3, 2, 2]),
        (-7, &[7], &[4, 3]),
        (1, &[7], &[7]),
        (28, &[7], &[3, 2, 2]),
        (-7, &[4, 3], &[7]),
        (35, &[4, 3], &[4, 3]),
        (-140, &[4, 3], &[3, 2, 2]),
        (28, &[3, 2, 2], &[7]),
        (-140, &[3, 2, 2], &[4, 3]),
        (42, &[5, 2], &[5, 2]),
        (-147, &[5, 2], &[3, 2, 2]),
        (-147, &[3, 2, 2], &[5, 2]),
    ])
}

#[test]
#[ignore = "stretch target: run with --ignored (about a minute in release)"]
fn centered_limit_q7_stretch() {
    let mut wg = WgContext::new();
    let mut gc = GammaContext::new();
    let via_exact = centered(&iz_cumulant_limit_from_exact(&mut wg, &mut gc, 7).unwrap());
    let via_gamma = centered(&iz_cumulant_limit(&mut wg, &mut gc, 7).unwrap());
    assert_eq!(via_gamma, via_exact, "the two computation paths disagree");
    let reference = reference_table_q7();
    let diff = via_gamma.clone() - reference;
    if diff.is_zero() {
        println!("q = 7 centered limit matches the reference polynomial");
    } else {
        println!("q = 7 term-level differences (computed - reference):");
        for (mono, coeff) in diff.terms() {
            println!("  {mono:?}: {coeff}");
        }
    }
}

#[test]
fn moment_q2_matches_brute_force_index_sum_at_d3() {
    // independent oracle: the q-th moment of the scalar A = tr(XUYU*) is an
    // expectation of a product of q separate trace factors; expand it into
    // entry sums and integrate monomials directly
    use hw_core::word::{monomial_integral, MonomialSpec};
    let d = 3i64;
    let x_eigs: Vec<BigRational> = [1, 2, 3].iter().map(|&k| rq(k)).collect();
    let y_eigs: Vec<BigRational> = [4, 5, 6].iter().map(|&k| rq(k)).collect();
    let mut wg = WgContext::new();
    // A^2 = (1/d^2) sum X_ii Y_jj X_kk Y_ll U_ij conj(U_ij) U_kl conj(U_kl)
    let mut brute = BigRational::zero();
    let du = d as usize;
    for i in 1..=du {
        for j in 1..=du {
            for k in 1..=du {
                for l in 1..=du {
                    let spec = MonomialSpec {
                        d,
                        i: vec![i, k],
                        j: vec![j, l],
                        i_prime: vec![i, k],
                        j_prime: vec![j, l],
                    };
                    let ev = monomial_integral(&mut wg, &spec).unwrap();
                    if ev.is_zero() {
                        continue;
                    }
                    brute += &x_eigs[i - 1] * &y_eigs[j - 1] * &x_eigs[k - 1] * &y_eigs[l - 1] * ev;
                }
            }
        }
    }
    brute /= rq(d * d);
    let poly = iz_moment_exact(&mut wg, 2).unwrap();
    let formula = evaluate_at_spectra(&poly, &x_eigs, &y_eigs, d).unwrap();
    assert_eq!(formula, brute);

    // the same value through the word engine with a two-trace pattern
    use hw_core::word::{word_expectation_concrete, Mat, Word};
    use std::collections::HashMap;
    let mut constants = HashMap::new();
    constants.insert("X".to_string(), Mat::diagonal(x_eigs.clone()));
    constants.insert("Y".to_string(), Mat::diagonal(y_eigs.clone()));
    let word = Word::parse("(X U1 Y U1*)(X U1 Y U1*)").unwrap();
    let via_word = word_expectation_concrete(&mut wg, &word, &constants, d).unwrap();
    assert_eq!(via_word, brute);
}

#[test]
fn genus_failures_only_contribute_negative_orders_q_le_4() {
    let mut wg = WgContext::new();
    let mut gc = GammaContext::new();
    for q in 1..=4usize {
        for sigma in Permutation::all(q) {
            for tau in Permutation::all(q) {
                let (_, coeff) = pair_term(&mut wg, &mut gc, &sigma, &tau).unwrap();
                let Some(deg) = coeff.degree() else { continue };
                assert!(deg <= 0, "term degree {deg} positive");
                if !genus_condition(&sigma, &tau) {
                    assert!(
                        deg < 0,
                        "pair ({sigma}, {tau}) fails the genus condition but has degree 0"
                    );
                }
            }
        }
    }
}

#[test]
fn semi_invariance_under_identity_shifts() {
    // replacing X by X + cI adjusts the moments x_k binomially and must leave
    // C_q untouched for q >= 2 (adding a constant to the variable)
    let mut wg = WgContext::new();
    let mut gc = GammaContext::new();
    for q in 2..=4u32 {
        let exact = iz_cumulant_exact(&mut wg, &mut gc, q).unwrap();
        for c in [rq(1), rq(-2)] {
            let shifted = exact.substitute(|s| match s {
                XYSym::X(k) => {
                    // (X + cI)^k has normalized trace sum_j C(k,j) c^{k-j} x_j, x_0 = 1
                    let mut p = MomentPolynomial::zero();
                    let mut binom = BigRational::one();
                    for j in (0..=*k).rev() {
                        // binom = C(k, j) built incrementally from j = k down
                        let mut coeff = binom.clone();
                        for _ in 0..(k - j) {
                            coeff *= &c;
                        }
                        let mono = if j == 0 {
                            hw_core::momentpoly::Monomial::unit()
                        } else {
                            x_monomial(&[j])
                        };
                        p.add_term(
                            mono,
                            hw_core::ratfun::RatFun::from_rational(&coeff),
                        );
                        if j > 0 {
                            binom = binom * rq(j as i64) / rq((k - j + 1) as i64);
                        }
                    }
                    Some(p)
                }
                XYSym::Y(_) => None,
            });
            assert_eq!(shifted, exact, "q = {q}, shift {c}");
        }
    }
}

#[test]
fn rank_one_equals_scaled_free_cumulants_q_le_5() {
    use hw_core::freecum::{free_cumulant, MomentSequence};
    let mut wg = WgContext::new();
    let mut gc = GammaContext::new();
    for q in 1..=5u32 {
        let got = rank_one_limit(&mut wg, &mut gc, q).unwrap();
        // symbolic free cumulant with m_k = y_k
        let moments: MomentSequence<IzLimit> = MomentSequence(
            (1..=q)
                .map(|k| IzLimit::monomial(y_monomial(&[k]), BigRational::one()))
                .collect(),
        );
        let kq = free_cumulant(q as usize, &moments).unwrap();
        let mut factorial = rq(1);
        for i in 2..q as i64 {
            factorial *= rq(i);
        }
        assert_eq!(got, kq.scale(&factorial), "q = {q}");
    }
}

#[test]
fn exact_constant_terms_equal_limit_terms_q4() {
    let mut wg = WgContext::new();
    let mut gc = GammaContext::new();
    let exact = iz_cumulant_exact(&mut wg, &mut gc, 4).unwrap();
    let limit = iz_cumulant_limit(&mut wg, &mut gc, 4).unwrap();
    let from_exact = exact.map_coeffs(|f| f.limit_at_infinity().unwrap());
    assert_eq!(from_exact, limit);
}
