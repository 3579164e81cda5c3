//! Structural invariants of the Weingarten layer at library-test scale (the
//! acceptance suite re-runs them at the full documented ranges).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use hw_core::catalan::{catalan, moeb_perm};
use hw_core::laurent::laurent_expand;
use hw_core::partition::IntegerPartition;
use hw_core::perm::Permutation;
use hw_core::poly::PolyZ;
use hw_core::ratfun::RatFun;
use hw_core::weingarten::{CoefficientMethod, WgContext};

fn rq(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn gram_inversion_q_le_4() {
    let mut ctx = WgContext::new();
    for q in 1..=4usize {
        let perms = Permutation::all(q);
        for d in [q as i64, q as i64 + 1] {
            for sigma in &perms {
                let mut acc = BigRational::zero();
                for tau in &perms {
                    let rho = sigma.compose(&tau.inverse());
                    let mut power = BigRational::one();
                    for _ in 0..rho.num_cycles() {
                        power *= rq(d);
                    }
                    acc += power * ctx.wg(tau, d).unwrap();
                }
                let expect = if sigma.is_identity() { rq(1) } else { rq(0) };
                assert_eq!(acc, expect, "q={q} d={d} sigma={sigma}");
            }
        }
    }
}

#[test]
fn wg_is_a_class_function() {
    let mut ctx = WgContext::new();
    for p in Permutation::all(4) {
        let rep = Permutation::class_representative(&p.cycle_type());
        assert_eq!(ctx.wg(&p, 5).unwrap(), ctx.wg(&rep, 5).unwrap());
        assert_eq!(ctx.wg_ratfun(&p).unwrap(), ctx.wg_ratfun(&rep).unwrap());
    }
}

#[test]
fn scaled_wg_is_even_of_nonpositive_degree_q_le_5() {
    let mut ctx = WgContext::new();
    for q in 1..=5u32 {
        for ctype in IntegerPartition::enumerate(q) {
            let f = ctx.wg_ratfun_by_type(&ctype).unwrap();
            let scaled = f.mul_power((ctype.weight() as usize + ctype.norm()) as i64);
            assert!(scaled.is_even(), "not even at {ctype}");
            assert!(scaled.degree().unwrap() <= 0, "degree at {ctype}");
        }
    }
}

#[test]
fn full_cycle_closed_form_q_le_5() {
    let mut ctx = WgContext::new();
    for q in 1..=5i64 {
        let ctype = IntegerPartition::one_row(q as u32);
        let f = ctx.wg_ratfun_by_type(&ctype).unwrap();
        let mut den = PolyZ::one();
        for j in -(q - 1)..=(q - 1) {
            den = den.mul(&PolyZ::from_i64s(&[-j, 1]));
        }
        let sign = if q % 2 == 1 { 1 } else { -1 };
        let num = PolyZ::from_i64s(&[sign * catalan(q as u32 - 1) as i64]);
        assert_eq!(f, RatFun::new(num, den).unwrap(), "q = {q}");
    }
}

#[test]
fn leading_coefficient_is_moeb_q_le_4() {
    let mut ctx = WgContext::new();
    for q in 1..=4usize {
        for sigma in Permutation::all(q) {
            let f = ctx.wg_ratfun(&sigma).unwrap();
            let order = (q + sigma.norm()) as i64;
            let series = laurent_expand(&f, order).unwrap();
            assert_eq!(
                series.coefficient(order),
                rq(moeb_perm(&sigma)),
                "sigma = {sigma}"
            );
        }
    }
}

#[test]
fn enumeration_equals_expansion_q_le_3() {
    let mut ctx = WgContext::new();
    for q in 1..=3usize {
        for sigma in Permutation::all(q) {
            for l in 0..=6usize {
                let a = ctx
                    .laurent_coefficient(&sigma, l, CoefficientMethod::Enumeration)
                    .unwrap();
                let b = ctx
                    .laurent_coefficient(&sigma, l, CoefficientMethod::Expansion)
                    .unwrap();
                assert_eq!(a, b, "sigma={sigma} l={l}");
            }
        }
    }
}

#[test]
fn parity_vanishing_q_le_4() {
    let mut ctx = WgContext::new();
    for q in 1..=4usize {
        for sigma in Permutation::all(q) {
            for l in 0..=7usize {
                if l % 2 != sigma.norm() % 2 {
                    let c = ctx
                        .laurent_coefficient(&sigma, l, CoefficientMethod::Expansion)
                        .unwrap();
                    assert!(c.is_zero(), "sigma={sigma} l={l}");
                }
            }
        }
    }
}
