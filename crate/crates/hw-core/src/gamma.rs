//! Transitive-restricted factorization coefficients and relative cumulants of
//! the Weingarten function.
//!
//! For sigma in S_q and a partition Pi >= Pi_sigma, gamma_{sigma,Pi,l} is the
//! signed count of factorizations sigma sigma_1 ... sigma_k = e into
//! non-identity factors with total norm l such that the factors together with
//! any tau having orbit partition Pi act transitively on {1..q}. It equals
//! the coefficient of d^{-q-l} in the relative cumulant C_{Pi,1_q}(sigma, d),
//! whose block moments are Weingarten values of restrictions of sigma.
//!
//! Two routes are implemented: a direct join-tracking enumeration (carries
//! per-k counts) and a faster one that resolves the join by Moebius inversion
//! of block-factorized counts. They agree; tests and the acceptance suite
//! triangulate both against the Laurent expansion of the cumulant.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::catalan::moeb_cycle_type;
use crate::cumulant::ring_int;
use crate::error::{HwError, Result};
use crate::laurent::LaurentSeries;
use crate::partition::IntegerPartition;
use crate::perm::Permutation;
use crate::ratfun::RatFun;
use crate::setpart::{PartitionLattice, SetPartition};
use crate::weingarten::{signed_sum, FactorizationCount, WgContext};

/// Canonical invariant of a pair (sigma, Pi) with Pi >= Pi_sigma under
/// simultaneous relabeling: the multiset of cycle types of sigma restricted
/// to the blocks of Pi. Everything computed here depends only on this key.
fn block_type_key(sigma: &Permutation, pi: &SetPartition) -> Vec<IntegerPartition> {
    let mut key: Vec<IntegerPartition> = pi
        .blocks()
        .iter()
        .map(|block| {
            sigma
                .restrict(block)
                .expect("Pi >= Pi_sigma makes blocks sigma-invariant")
                .cycle_type()
        })
        .collect();
    key.sort();
    key
}

/// Rebuild a concrete representative (sigma0, Pi0) from a block-type key:
/// blocks laid out consecutively, sigma0 the class representative per block.
fn representative(key: &[IntegerPartition]) -> (Permutation, SetPartition) {
    let q: usize = key.iter().map(|t| t.weight() as usize).sum();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut next = 0usize;
    for t in key {
        let size = t.weight() as usize;
        blocks.push((next..next + size).collect());
        let mut offset = next;
        for &part in t.parts() {
            cycles.push((offset..offset + part as usize).collect());
            offset += part as usize;
        }
        next += size;
    }
    let sigma = Permutation::from_cycles(q, &cycles).expect("disjoint");
    let pi = SetPartition::from_blocks(q, &blocks).expect("disjoint blocks");
    (sigma, pi)
}

/// Per-query caches shared across gamma and cumulant computations.
pub struct GammaContext {
    ratfun_memo: HashMap<Vec<IntegerPartition>, RatFun>,
    series_memo: HashMap<(Vec<IntegerPartition>, i64), LaurentSeries>,
    signed_memo: HashMap<(Vec<IntegerPartition>, usize), BigRational>,
}

impl GammaContext {
    pub fn new() -> Self {
        GammaContext {
            ratfun_memo: HashMap::new(),
            series_memo: HashMap::new(),
            signed_memo: HashMap::new(),
        }
    }
}

impl Default for GammaContext {
    fn default() -> Self {
        Self::new()
    }
}

/// C_{Pi,1_q}(sigma, d) exactly: sum over partitions Pi' in [Pi, 1_q] of
/// Moeb(Pi', 1_q) times the product over blocks V of Wg(d, sigma|_V).
pub fn relative_cumulant_wg(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    pi: &SetPartition,
    sigma: &Permutation,
) -> Result<RatFun> {
    let orbits = SetPartition::orbits_of(sigma);
    if !orbits.leq(pi) {
        return Err(HwError::Incomparable);
    }
    let key = block_type_key(sigma, pi);
    if let Some(f) = gamma.ratfun_memo.get(&key) {
        return Ok(f.clone());
    }
    let (sigma0, pi0) = representative(&key);
    let top = SetPartition::full(sigma0.degree());
    let mut acc = RatFun::zero();
    for upper in pi0.interval_to(&top)? {
        let weight = upper.moebius(&top)?;
        let mut term = RatFun::from_int(weight);
        for block in upper.blocks() {
            let ctype = sigma0.restrict(&block)?.cycle_type();
            term = term * wg.wg_ratfun_by_type(&ctype)?;
        }
        acc = acc + term;
    }
    gamma.ratfun_memo.insert(key, acc.clone());
    Ok(acc)
}

/// Same cumulant as a truncated Laurent series (cheaper at large q).
pub fn relative_cumulant_wg_series(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    pi: &SetPartition,
    sigma: &Permutation,
    trunc: i64,
) -> Result<LaurentSeries> {
    let orbits = SetPartition::orbits_of(sigma);
    if !orbits.leq(pi) {
        return Err(HwError::Incomparable);
    }
    let key = (block_type_key(sigma, pi), trunc);
    if let Some(s) = gamma.series_memo.get(&key) {
        return Ok(s.clone());
    }
    let (sigma0, pi0) = representative(&key.0);
    let top = SetPartition::full(sigma0.degree());
    let mut acc = LaurentSeries::zero(trunc);
    for upper in pi0.interval_to(&top)? {
        let weight = BigRational::from_integer(BigInt::from(upper.moebius(&top)?));
        let mut term = LaurentSeries::monomial(weight, 0, trunc);
        for block in upper.blocks() {
            let ctype = sigma0.restrict(&block)?.cycle_type();
            term = &term * &wg.wg_series_by_type(&ctype, trunc)?;
        }
        acc = &acc + &term;
    }
    gamma.series_memo.insert(key, acc.clone());
    Ok(acc)
}

/// gamma_{sigma,Pi,l} with per-k counts, by direct enumeration that tracks
/// the running join of factor orbits. Cost guard: q <= 6 and l <= max(8, 2q-2).
pub fn gamma_transitive(
    sigma: &Permutation,
    pi: &SetPartition,
    l: usize,
) -> Result<FactorizationCount> {
    let q = sigma.degree();
    if pi.size() != q {
        return Err(HwError::GroundSetMismatch(pi.size(), q));
    }
    let orbits = SetPartition::orbits_of(sigma);
    if !orbits.leq(pi) {
        return Err(HwError::Incomparable);
    }
    let guard = 8usize.max(2 * q.saturating_sub(1));
    if q > 6 || l > guard {
        return Err(HwError::CostGuard(format!(
            "transitive enumeration limited to q <= 6, l <= {guard} (got q = {q}, l = {l})"
        )));
    }
    let mut lattice = PartitionLattice::new(q);
    let perms = Permutation::all(q);
    let gens: Vec<(usize, usize, usize)> = perms
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| {
            let oi = lattice.index_of(&SetPartition::orbits_of(p));
            (p.norm(), p.rank(), oi)
        })
        .collect();
    let by_rank: Vec<Permutation> = perms.clone();
    let top = lattice.top();
    let mut memo: HashMap<(usize, usize, usize), Vec<u64>> = HashMap::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        rank: usize,
        budget: usize,
        join: usize,
        top: usize,
        by_rank: &[Permutation],
        gens: &[(usize, usize, usize)],
        lattice: &mut PartitionLattice,
        memo: &mut HashMap<(usize, usize, usize), Vec<u64>>,
    ) -> Vec<u64> {
        if let Some(v) = memo.get(&(rank, budget, join)) {
            return v.clone();
        }
        let p = &by_rank[rank];
        let mut row = vec![0u64; budget + 1];
        if p.norm() <= budget {
            if budget == 0 {
                if p.is_identity() && join == top {
                    row[0] = 1;
                }
            } else {
                for &(gnorm, grank, gorbit) in gens {
                    if gnorm > budget {
                        continue;
                    }
                    let child_rank = p.compose(&by_rank[grank]).rank();
                    let child_join = lattice.join_index(join, gorbit);
                    let child = rec(
                        child_rank,
                        budget - gnorm,
                        child_join,
                        top,
                        by_rank,
                        gens,
                        lattice,
                        memo,
                    );
                    for k in 1..=budget {
                        if k - 1 < child.len() {
                            row[k] += child[k - 1];
                        }
                    }
                }
            }
        }
        memo.insert((rank, budget, join), row.clone());
        row
    }

    let start_join = lattice.index_of(pi);
    let per_k = rec(
        sigma.rank(),
        l,
        start_join,
        top,
        &by_rank,
        &gens,
        &mut lattice,
        &mut memo,
    );
    let signed_total = signed_sum(&per_k);
    Ok(FactorizationCount {
        sigma: sigma.clone(),
        l,
        per_k,
        signed_total,
    })
}

/// Signed gamma_{sigma,Pi,l} by the block-factorized route: counts with all
/// factor orbits below a partition K factor over the blocks of K (signed
/// counts multiply), Moebius inversion resolves the exact join, and the
/// transitivity constraint keeps the joins K with K v Pi = 1_q.
pub fn gamma_signed(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    sigma: &Permutation,
    pi: &SetPartition,
    l: usize,
) -> Result<BigRational> {
    let q = sigma.degree();
    if pi.size() != q {
        return Err(HwError::GroundSetMismatch(pi.size(), q));
    }
    let orbits = SetPartition::orbits_of(sigma);
    if !orbits.leq(pi) {
        return Err(HwError::Incomparable);
    }
    let key = (block_type_key(sigma, pi), l);
    if let Some(v) = gamma.signed_memo.get(&key) {
        return Ok(v.clone());
    }
    let (sigma0, pi0) = representative(&key.0);
    let orbits0 = SetPartition::orbits_of(&sigma0);
    let top = SetPartition::full(q);

    // A_le(Pi') = signed count of factorizations with every factor inside the
    // blocks of Pi' (computed as a product of per-block generating series in
    // the norm budget).
    let uppers = orbits0.interval_to(&top)?;
    let mut a_le: HashMap<SetPartition, i128> = HashMap::new();
    for upper in &uppers {
        let mut gen = vec![0i128; l + 1];
        gen[0] = 1;
        for block in upper.blocks() {
            let rho = sigma0.restrict(&block)?;
            let engine_counts: Vec<i128> = (0..=l)
                .map(|m| wg.signed_count(&rho, m) as i128)
                .collect();
            let mut next = vec![0i128; l + 1];
            for (a, &ga) in gen.iter().enumerate() {
                if ga == 0 {
                    continue;
                }
                for (b, &cb) in engine_counts.iter().enumerate() {
                    if a + b <= l {
                        next[a + b] += ga * cb;
                    }
                }
            }
            gen = next;
        }
        a_le.insert(upper.clone(), gen[l]);
    }

    // Moebius inversion on [orbits0, 1_q] gives the join-exact counts, then
    // keep the joins that make the pair transitive.
    let mut total: i128 = 0;
    for join_exact in &uppers {
        if join_exact.join(&pi0)? != top {
            continue;
        }
        let mut a_eq: i128 = 0;
        for lower in orbits0.interval_to(join_exact)? {
            let mu = lower.moebius(join_exact)? as i128;
            a_eq += mu * a_le[&lower];
        }
        total += a_eq;
    }
    let v = BigRational::from_integer(BigInt::from(total));
    gamma.signed_memo.insert(key, v.clone());
    Ok(v)
}

/// Closed-form candidate for gamma at its minimal order l = |sigma| + 2(C(Pi)-1),
/// validated against the enumeration route before being returned. A mismatch
/// is reported as an error carrying both values, never silently patched.
pub fn schaeffer_leading(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    sigma: &Permutation,
    pi: &SetPartition,
) -> Result<BigRational> {
    let q = sigma.degree();
    if pi.size() != q {
        return Err(HwError::GroundSetMismatch(pi.size(), q));
    }
    let orbits = SetPartition::orbits_of(sigma);
    if !orbits.leq(pi) {
        return Err(HwError::Incomparable);
    }
    let l = sigma.norm() + 2 * (pi.num_blocks() - 1);

    // sum over partitions Pi' >= Pi_sigma with Pi' v Pi = 1_q and
    // C(Pi_sigma) - C(Pi') = C(Pi) - 1 of the per-block closed form
    let top = SetPartition::full(q);
    let target_blocks = orbits.num_blocks() + 1 - pi.num_blocks();
    let mut closed = BigRational::zero();
    for upper in orbits.interval_to(&top)? {
        if upper.num_blocks() != target_blocks {
            continue;
        }
        if upper.join(pi)? != top {
            continue;
        }
        let mut term = BigRational::one();
        for block in upper.blocks() {
            term *= transitive_leading_closed_form(&sigma.restrict(&block)?);
        }
        closed += term;
    }

    let enumerated = gamma_signed(wg, gamma, sigma, pi, l)?;
    if closed != enumerated {
        return Err(HwError::ClosedFormMismatch {
            closed: closed.to_string(),
            enumerated: enumerated.to_string(),
        });
    }
    Ok(closed)
}

/// The one-block closed form: gamma_{sigma, Pi_sigma = 1_q, 2q-2-|sigma|} =
/// (-1)^{|sigma|} 2^{q-|sigma|} (3q-3-|sigma|)! / (2q)! *
/// prod over cycle lengths i of ((2i-1)! / (i-1)!^2)^{multiplicity}.
fn transitive_leading_closed_form(sigma: &Permutation) -> BigRational {
    let q = sigma.degree() as u64;
    let norm = sigma.norm() as u64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    num *= BigInt::from(2u64).pow((q - norm) as u32);
    num *= big_factorial(3 * q - 3 - norm);
    den *= big_factorial(2 * q);
    for (len, mult) in sigma.cycle_type().multiplicities() {
        let i = len as u64;
        let f = big_factorial(2 * i - 1);
        let g = big_factorial(i - 1);
        for _ in 0..mult {
            num *= &f;
            den *= &g * &g;
        }
    }
    let v = BigRational::new(num, den);
    if norm % 2 == 1 {
        -v
    } else {
        v
    }
}

fn big_factorial(n: u64) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    f
}

/// Leading Weingarten asymptotics: the coefficient of d^{-q-|sigma|} equals
/// Moeb(sigma). Exposed as a cheap cross-check value.
pub fn moeb_leading(sigma: &Permutation) -> BigRational {
    BigRational::from_integer(BigInt::from(moeb_cycle_type(
        sigma.cycle_type().parts(),
    )))
}

/// Convenience: gamma as an exact rational from per-k counts.
pub fn gamma_from_counts(counts: &FactorizationCount) -> BigRational {
    ring_int::<BigRational>(counts.signed_total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::laurent_expand;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gamma_simple_cases() {
        // q=1: only the empty factorization, contributing at l = 0
        let e1 = Permutation::identity(1);
        let pi1 = SetPartition::full(1);
        assert_eq!(
            gamma_transitive(&e1, &pi1, 0).unwrap().signed_total,
            1
        );
        for l in 1..=3 {
            assert_eq!(
                gamma_transitive(&e1, &pi1, l).unwrap().signed_total,
                0
            );
        }
        // sigma = (1 2), Pi = 1_2, l = 1: the single factorization, sign -1
        let t = Permutation::parse(2, "(1 2)").unwrap();
        let c = gamma_transitive(&t, &SetPartition::full(2), 1).unwrap();
        assert_eq!(c.per_k, vec![0, 1]);
        assert_eq!(c.signed_total, -1);
    }

    #[test]
    fn incomparable_rejected() {
        let t = Permutation::parse(2, "(1 2)").unwrap();
        let pi = SetPartition::discrete(2);
        assert!(matches!(
            gamma_transitive(&t, &pi, 1),
            Err(HwError::Incomparable)
        ));
    }

    #[test]
    fn fast_route_matches_direct_q_le_4() {
        let mut wg = WgContext::new();
        let mut gc = GammaContext::new();
        for qn in 1..=4usize {
            for sigma in Permutation::all(qn) {
                let orbits = SetPartition::orbits_of(&sigma);
                for pi in orbits.interval_to(&SetPartition::full(qn)).unwrap() {
                    for l in 0..=6usize {
                        let direct =
                            gamma_transitive(&sigma, &pi, l).unwrap().signed_total;
                        let fast = gamma_signed(&mut wg, &mut gc, &sigma, &pi, l).unwrap();
                        assert_eq!(
                            q(direct, 1),
                            fast,
                            "q={qn} sigma={sigma} pi={pi} l={l}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn relative_cumulant_wg_q2_example() {
        let mut wg = WgContext::new();
        let mut gc = GammaContext::new();
        // q=2, sigma=e, Pi=0_2: C = Wg(e in S_2) - (1/d)^2 = 1/(d^2(d^2-1))
        let e2 = Permutation::identity(2);
        let f = relative_cumulant_wg(&mut wg, &mut gc, &SetPartition::discrete(2), &e2).unwrap();
        let expect = RatFun::new(
            crate::poly::PolyZ::from_i64s(&[1]),
            crate::poly::PolyZ::from_i64s(&[0, 0, -1, 0, 1]),
        )
        .unwrap();
        assert_eq!(f, expect);
        assert_eq!(f.degree(), Some(-4)); // attains the decay bound -q-|s|-2(C(Pi)-1)
        // Pi = 1_q collapses to Wg itself
        let f1 = relative_cumulant_wg(&mut wg, &mut gc, &SetPartition::full(2), &e2).unwrap();
        assert_eq!(f1, wg.wg_ratfun(&e2).unwrap());
    }

    #[test]
    fn gamma_matches_cumulant_laurent_q3() {
        let mut wg = WgContext::new();
        let mut gc = GammaContext::new();
        for sigma in Permutation::all(3) {
            let orbits = SetPartition::orbits_of(&sigma);
            for pi in orbits.interval_to(&SetPartition::full(3)).unwrap() {
                let f = relative_cumulant_wg(&mut wg, &mut gc, &pi, &sigma).unwrap();
                let series = laurent_expand(&f, 3 + 8).unwrap();
                for l in 0..=8usize {
                    let coeff = series.coefficient(3 + l as i64);
                    let g = gamma_signed(&mut wg, &mut gc, &sigma, &pi, l).unwrap();
                    assert_eq!(coeff, g, "sigma={sigma} pi={pi} l={l}");
                }
            }
        }
    }

    #[test]
    fn cumulant_series_route_matches_ratfun_route() {
        let mut wg = WgContext::new();
        let mut gc = GammaContext::new();
        let sigma = Permutation::parse(4, "(1 2)(3 4)").unwrap();
        let pi = SetPartition::orbits_of(&sigma);
        let f = relative_cumulant_wg(&mut wg, &mut gc, &pi, &sigma).unwrap();
        let direct = laurent_expand(&f, 12).unwrap();
        let series = relative_cumulant_wg_series(&mut wg, &mut gc, &pi, &sigma, 12).unwrap();
        assert_eq!(direct, series);
    }

    #[test]
    fn schaeffer_validates_small_cases() {
        let mut wg = WgContext::new();
        let mut gc = GammaContext::new();
        // identity, Pi = 0_q: 2^q (3q-3)! / (2q)! -> 1, 1, 8 for q = 1, 2, 3
        for (qn, expect) in [(1usize, q(1, 1)), (2, q(1, 1)), (3, q(8, 1))] {
            let e = Permutation::identity(qn);
            let v = schaeffer_leading(&mut wg, &mut gc, &e, &SetPartition::discrete(qn)).unwrap();
            assert_eq!(v, expect, "q = {qn}");
        }
        // full cycles at Pi = Pi_sigma land on Moeb
        let t = Permutation::parse(2, "(1 2)").unwrap();
        assert_eq!(
            schaeffer_leading(&mut wg, &mut gc, &t, &SetPartition::full(2)).unwrap(),
            q(-1, 1)
        );
        let c3 = Permutation::parse(3, "(1 2 3)").unwrap();
        assert_eq!(
            schaeffer_leading(&mut wg, &mut gc, &c3, &SetPartition::full(3)).unwrap(),
            q(2, 1)
        );
    }

    #[test]
    fn schaeffer_validates_all_q4_pairs() {
        let mut wg = WgContext::new();
        let mut gc = GammaContext::new();
        for mu in IntegerPartition::enumerate(4) {
            let sigma = Permutation::class_representative(&mu);
            let orbits = SetPartition::orbits_of(&sigma);
            for pi in orbits.interval_to(&SetPartition::full(4)).unwrap() {
                // closed form must survive its internal validation
                schaeffer_leading(&mut wg, &mut gc, &sigma, &pi)
                    .unwrap_or_else(|e| panic!("sigma={sigma} pi={pi}: {e}"));
            }
        }
    }
}
