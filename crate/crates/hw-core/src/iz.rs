//! The Itzykson-Zuber integral at the cumulant level.
//!
//! With A = tr(X U Y U*) — a scalar random variable — and moments kept
//! symbolic (x_k for tr X^k, y_k for tr Y^k), the exact objects are
//!
//!   E(A^q)                       = sum_{s,t} d^{q-|t|-|s|} x_t y_s Wg(d, t s^-1)
//!   d^-2 C_q(d^2 A) / (q-1)!     = 1/(q-1)! sum_{s,t} d^{3q-2-|s|-|t|} x_s y_t
//!                                  C_{Pi_s v Pi_t, 1_q}(t s^-1, d)
//!
//! The moment is the q-th power of the scalar trace, i.e. the expectation of
//! a product of q separate trace factors (the trace pattern is q disjoint
//! transpositions), not the trace of a matrix power.
//!
//! and the large-d limit of the normalized cumulant is the genus-restricted
//! sum of transitive factorization coefficients gamma. Two independent paths
//! compute that limit (constant term of the exact form vs the gamma formula);
//! both are exposed and the tests triangulate them against the reference
//! tables.
//!
//! The double sum collapses to (conjugacy class) x (full group) because every
//! summand is invariant under simultaneous conjugation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{HwError, Result};
use crate::gamma::{gamma_signed, relative_cumulant_wg, relative_cumulant_wg_series, GammaContext};
use crate::momentpoly::{x_monomial, y_monomial, Monomial, MomentPolynomial, XYSym};
use crate::partition::{factorial_u64, IntegerPartition};
use crate::perm::Permutation;
use crate::ratfun::RatFun;
use crate::setpart::SetPartition;
use crate::weingarten::WgContext;

/// Exact finite-d moment polynomial and its normalized cumulant of one order.
pub type IzPolynomial = MomentPolynomial<XYSym, RatFun>;
/// Large-d limits carry exact rational coefficients.
pub type IzLimit = MomentPolynomial<XYSym, BigRational>;

const Q_GUARD: u32 = 7;

fn guard(q: u32, limit: u32, what: &str) -> Result<()> {
    if q == 0 || q > limit {
        return Err(HwError::CostGuard(format!(
            "{what} limited to 1 <= q <= {limit} (got {q})"
        )));
    }
    Ok(())
}

/// True iff |tau| + |sigma| + |tau sigma^-1| = 2q - 2 C(Pi_tau v Pi_sigma).
/// With a connected join this is genus-zero planarity of the pair.
pub fn genus_condition(sigma: &Permutation, tau: &Permutation) -> bool {
    let join = SetPartition::orbits_of(sigma)
        .join(&SetPartition::orbits_of(tau))
        .expect("same degree");
    let q = sigma.degree();
    let rho = tau.compose(&sigma.inverse());
    sigma.norm() + tau.norm() + rho.norm() == 2 * q - 2 * join.num_blocks()
}

/// E[(tr(XUYU*))^q] with symbolic spectra moments.
pub fn iz_moment_exact(wg: &mut WgContext, q: u32) -> Result<IzPolynomial> {
    guard(q, Q_GUARD, "the moment sum over S_q^2")?;
    let mut acc = IzPolynomial::zero();
    let perms = Permutation::all(q as usize);
    for mu in IntegerPartition::enumerate(q) {
        let sigma = Permutation::class_representative(&mu);
        let z = BigRational::from_integer(BigInt::from(mu.class_size()));
        let y_mono = y_monomial(mu.parts());
        for tau in &perms {
            let rho = tau.compose(&sigma.inverse());
            let w = wg.wg_ratfun_by_type(&rho.cycle_type())?;
            let power = q as i64 - tau.norm() as i64 - sigma.norm() as i64;
            let coeff = (w * RatFun::from_rational(&z)).mul_power(power);
            let mono = x_monomial(tau.cycle_type().parts()).merge(&y_mono);
            acc.add_term(mono, coeff);
        }
    }
    Ok(acc)
}

/// One summand of the cumulant double sum: the moment monomial x_s y_t and
/// the coefficient d^{3q-2-|s|-|t|} C_{Pi_s v Pi_t, 1_q}(t s^-1, d).
pub fn pair_term(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    sigma: &Permutation,
    tau: &Permutation,
) -> Result<(Monomial<XYSym>, RatFun)> {
    let q = sigma.degree();
    let join = SetPartition::orbits_of(sigma).join(&SetPartition::orbits_of(tau))?;
    let rho = tau.compose(&sigma.inverse());
    let crel = relative_cumulant_wg(wg, gamma, &join, &rho)?;
    let power = 3 * q as i64 - 2 - sigma.norm() as i64 - tau.norm() as i64;
    let mono = x_monomial(sigma.cycle_type().parts()).merge(&y_monomial(tau.cycle_type().parts()));
    Ok((mono, crel.mul_power(power)))
}

/// d^-2 C_q(d^2 A) / (q-1)! exactly, as a moment polynomial over rational
/// functions of d. Every coefficient has degree <= 0.
pub fn iz_cumulant_exact(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    q: u32,
) -> Result<IzPolynomial> {
    guard(q, Q_GUARD, "the cumulant sum over S_q^2")?;
    let mut acc = IzPolynomial::zero();
    let perms = Permutation::all(q as usize);
    let norm_factor = RatFun::from_rational(&BigRational::new(
        BigInt::one(),
        BigInt::from(factorial_u64(q as u64 - 1)),
    ));
    for mu in IntegerPartition::enumerate(q) {
        let sigma = Permutation::class_representative(&mu);
        let z = RatFun::from_int(mu.class_size() as i64);
        for tau in &perms {
            let (mono, coeff) = pair_term(wg, gamma, &sigma, tau)?;
            acc.add_term(mono, coeff * z.clone() * norm_factor.clone());
        }
    }
    Ok(acc)
}

/// Constant Laurent term of the exact cumulant, extracted pair by pair from
/// the character-route series of the relative cumulant. Independent of the
/// factorization-count path below.
pub fn iz_cumulant_limit_from_exact(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    q: u32,
) -> Result<IzLimit> {
    guard(q, Q_GUARD, "the cumulant sum over S_q^2")?;
    let mut acc = IzLimit::zero();
    let perms = Permutation::all(q as usize);
    let norm_factor = BigRational::new(BigInt::one(), BigInt::from(factorial_u64(q as u64 - 1)));
    for mu in IntegerPartition::enumerate(q) {
        let sigma = Permutation::class_representative(&mu);
        let z = BigRational::from_integer(BigInt::from(mu.class_size()));
        for tau in &perms {
            let join = SetPartition::orbits_of(&sigma).join(&SetPartition::orbits_of(tau))?;
            let rho = tau.compose(&sigma.inverse());
            // constant term of d^{3q-2-|s|-|t|} C picks the coefficient of
            // d^{-q-l} at l = 2q-2-|s|-|t|
            let l = 2 * q as i64 - 2 - sigma.norm() as i64 - tau.norm() as i64;
            if l < 0 {
                continue;
            }
            let trunc = q as i64 + l;
            let series = relative_cumulant_wg_series(wg, gamma, &join, &rho, trunc)?;
            let c = series.coefficient(trunc);
            if c.is_zero() {
                continue;
            }
            let mono =
                x_monomial(sigma.cycle_type().parts()).merge(&y_monomial(tau.cycle_type().parts()));
            acc.add_term(mono, c * &z * &norm_factor);
        }
    }
    Ok(acc)
}

/// lim_d d^-2 C_q(d^2 A) / (q-1)! by the genus-restricted gamma formula,
/// with gamma weights from factorization enumeration.
pub fn iz_cumulant_limit(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    q: u32,
) -> Result<IzLimit> {
    guard(q, Q_GUARD, "the cumulant sum over S_q^2")?;
    let mut acc = IzLimit::zero();
    let perms = Permutation::all(q as usize);
    let norm_factor = BigRational::new(BigInt::one(), BigInt::from(factorial_u64(q as u64 - 1)));
    for mu in IntegerPartition::enumerate(q) {
        let sigma = Permutation::class_representative(&mu);
        let z = BigRational::from_integer(BigInt::from(mu.class_size()));
        for tau in &perms {
            if !genus_condition(&sigma, tau) {
                continue;
            }
            let join = SetPartition::orbits_of(&sigma).join(&SetPartition::orbits_of(tau))?;
            let rho = tau.compose(&sigma.inverse());
            let l = rho.norm() + 2 * (join.num_blocks() - 1);
            let g = gamma_signed(wg, gamma, &rho, &join, l)?;
            if g.is_zero() {
                continue;
            }
            let mono =
                x_monomial(sigma.cycle_type().parts()).merge(&y_monomial(tau.cycle_type().parts()));
            acc.add_term(mono, g * &z * &norm_factor);
        }
    }
    Ok(acc)
}

/// One cumulant order bundled with its limit; constructing it checks the
/// defining invariant that the limit is the constant Laurent term of the
/// finite-d form.
pub struct IzCumulant {
    pub q: u32,
    /// d^-2 C_q(d^2 A)/(q-1)! as a rational function of d per moment monomial.
    pub finite_d: IzPolynomial,
    /// Its large-d limit.
    pub limit: IzLimit,
}

impl IzCumulant {
    pub fn compute(wg: &mut WgContext, gamma: &mut GammaContext, q: u32) -> Result<Self> {
        let finite_d = iz_cumulant_exact(wg, gamma, q)?;
        let limit = iz_cumulant_limit(wg, gamma, q)?;
        let constant_term = finite_d.map_coeffs(|f| {
            f.limit_at_infinity()
                .expect("cumulant coefficients have degree <= 0")
        });
        if constant_term != limit {
            return Err(HwError::Invalid(format!(
                "limit differs from the constant term of the exact form at q = {q}"
            )));
        }
        Ok(IzCumulant { q, finite_d, limit })
    }
}

/// Drop every term containing x1 or y1 (the centered normalization used by
/// the reference tables).
pub fn centered(poly: &IzLimit) -> IzLimit {
    poly.retain_terms(|m| {
        !m.symbols()
            .iter()
            .any(|s| matches!(s, XYSym::X(1) | XYSym::Y(1)))
    })
}

/// Rank-one scaling: substitute tr X^k = 1/d for every k, rescale by d, and
/// take the large-d limit. The result is (q-1)! k_q of the y-moments.
pub fn rank_one_limit(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    q: u32,
) -> Result<IzLimit> {
    guard(q, 8, "the rank-one cumulant sum")?;
    let mut acc = IzLimit::zero();
    let perms = Permutation::all(q as usize);
    // sum d^-1 C_q(d^2 A) = d (q-1)! * normalized form; group by the class of
    // tau since the y-monomial depends only on it
    for mu in IntegerPartition::enumerate(q) {
        let tau = Permutation::class_representative(&mu);
        let z = BigRational::from_integer(BigInt::from(mu.class_size()));
        let y_mono = y_monomial(mu.parts());
        for sigma in &perms {
            let join = SetPartition::orbits_of(sigma).join(&SetPartition::orbits_of(&tau))?;
            let rho = tau.compose(&sigma.inverse());
            // x-substitution turns d^{3q-2-|s|-|t|} into d^{2q-2-|t|+|s|-q+...}:
            // with the extra d rescale the constant term sits at l = q-1-|t|
            let l = q as i64 - 1 - tau.norm() as i64;
            if l < 0 {
                continue;
            }
            let trunc = q as i64 + l;
            let series = relative_cumulant_wg_series(wg, gamma, &join, &rho, trunc)?;
            let c = series.coefficient(trunc);
            if c.is_zero() {
                continue;
            }
            acc.add_term(y_mono.clone(), c * &z);
        }
    }
    Ok(acc)
}

/// Evaluate an exact IZ polynomial at concrete spectra and dimension: x_k and
/// y_k become the normalized power sums of the eigenvalue lists. The terms
/// are summed as rational functions of d before evaluating, because poles of
/// individual coefficients at small d can cancel in the total.
pub fn evaluate_at_spectra(
    poly: &IzPolynomial,
    x_eigs: &[BigRational],
    y_eigs: &[BigRational],
    d: i64,
) -> Result<BigRational> {
    if x_eigs.len() != d as usize || y_eigs.len() != d as usize {
        return Err(HwError::DimensionMismatch(format!(
            "expected {d} eigenvalues"
        )));
    }
    let power_sum = |eigs: &[BigRational], k: u32| -> BigRational {
        let mut acc = BigRational::zero();
        for e in eigs {
            let mut p = BigRational::one();
            for _ in 0..k {
                p *= e;
            }
            acc += p;
        }
        acc / BigRational::from_integer(BigInt::from(d))
    };
    let mut total = RatFun::zero();
    for (mono, coeff) in poly.terms() {
        let mut weight = BigRational::one();
        for s in mono.symbols() {
            weight *= match s {
                XYSym::X(k) => power_sum(x_eigs, *k),
                XYSym::Y(k) => power_sum(y_eigs, *k),
            };
        }
        total = total + coeff.clone() * RatFun::from_rational(&weight);
    }
    total.eval(d)
}
