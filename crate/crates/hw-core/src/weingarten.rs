//! The Weingarten function of U(d), exactly and asymptotically.
//!
//! Wg(d, sigma) = (1/q!^2) sum_{lambda |- q} chi^lambda(e)^2 chi^lambda(sigma)
//! / s_{lambda,d}(1), valid for d >= q; as a rational function of d it is the
//! analytic continuation and has degree exactly -q - |sigma|.
//!
//! The Laurent coefficient of d^{-q-l} is also a signed count of
//! factorizations sigma sigma_1 ... sigma_k = e into non-identity factors
//! with |sigma_1| + ... + |sigma_k| = l; both routes are exposed and must
//! agree.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::character::CharacterTable;
use crate::error::{HwError, Result};
use crate::laurent::laurent_expand;
use crate::partition::{factorial_u64, IntegerPartition};
use crate::perm::Permutation;
use crate::ratfun::RatFun;
use crate::schur::schur_dimension_poly;

/// Which route computes a Laurent coefficient.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoefficientMethod {
    /// Signed factorization counts (Theorem-level combinatorics).
    Enumeration,
    /// Expansion of the exact rational function.
    Expansion,
}

/// Factorization counts behind one Laurent coefficient.
#[derive(Clone, Debug)]
pub struct FactorizationCount {
    pub sigma: Permutation,
    pub l: usize,
    /// per_k`[k]` = number of k-tuples (non-identity factors, norm sum l).
    pub per_k: Vec<u64>,
    /// sum_k (-1)^k per_k`[k]`.
    pub signed_total: i64,
}

/// Memoized tables shared by every Weingarten computation: characters, Schur
/// polynomials, rational-function and value caches, factorization engines.
/// Build it once and reuse; all outputs are pure functions of the inputs.
pub struct WgContext {
    char_tables: HashMap<u32, CharacterTable>,
    schur_cache: HashMap<IntegerPartition, RatFun>,
    ratfun_cache: HashMap<IntegerPartition, RatFun>,
    value_cache: HashMap<(IntegerPartition, i64), BigRational>,
    series_cache: HashMap<(IntegerPartition, i64), crate::laurent::LaurentSeries>,
    fact_engines: HashMap<(usize, usize), FactEngine>,
}

impl WgContext {
    pub fn new() -> Self {
        WgContext {
            char_tables: HashMap::new(),
            schur_cache: HashMap::new(),
            ratfun_cache: HashMap::new(),
            value_cache: HashMap::new(),
            series_cache: HashMap::new(),
            fact_engines: HashMap::new(),
        }
    }

    pub fn characters(&mut self, q: u32) -> &mut CharacterTable {
        self.char_tables
            .entry(q)
            .or_insert_with(|| CharacterTable::new(q))
    }

    pub fn schur_poly(&mut self, lambda: &IntegerPartition) -> Result<RatFun> {
        if let Some(f) = self.schur_cache.get(lambda) {
            return Ok(f.clone());
        }
        let table = self
            .char_tables
            .entry(lambda.weight())
            .or_insert_with(|| CharacterTable::new(lambda.weight()));
        let f = schur_dimension_poly(table, lambda)?;
        self.schur_cache.insert(lambda.clone(), f.clone());
        Ok(f)
    }

    /// Wg(d, sigma) as an exact rational; requires d >= q.
    pub fn wg(&mut self, sigma: &Permutation, d: i64) -> Result<BigRational> {
        self.wg_by_type(&sigma.cycle_type(), d)
    }

    /// Wg keyed on the cycle type (Wg is a class function).
    pub fn wg_by_type(&mut self, ctype: &IntegerPartition, d: i64) -> Result<BigRational> {
        let q = ctype.weight() as usize;
        if d < q as i64 {
            return Err(HwError::OutOfStableRange { d, q });
        }
        if let Some(v) = self.value_cache.get(&(ctype.clone(), d)) {
            return Ok(v.clone());
        }
        let v = self.wg_ratfun_by_type(ctype)?.eval(d)?;
        self.value_cache.insert((ctype.clone(), d), v.clone());
        Ok(v)
    }

    /// Wg(d, sigma) as a reduced rational function of d (the analytic
    /// continuation below d = q).
    pub fn wg_ratfun(&mut self, sigma: &Permutation) -> Result<RatFun> {
        self.wg_ratfun_by_type(&sigma.cycle_type())
    }

    pub fn wg_ratfun_by_type(&mut self, ctype: &IntegerPartition) -> Result<RatFun> {
        if let Some(f) = self.ratfun_cache.get(ctype) {
            return Ok(f.clone());
        }
        let q = ctype.weight();
        let qfact_sq = {
            let f = BigInt::from(factorial_u64(q as u64));
            &f * &f
        };
        let mut acc = RatFun::zero();
        for lambda in IntegerPartition::enumerate(q) {
            let table = self
                .char_tables
                .entry(q)
                .or_insert_with(|| CharacterTable::new(q));
            let dim = table.dimension(&lambda)?;
            let chi = table.character(&lambda, ctype)?;
            if chi == 0 {
                continue;
            }
            let coeff = BigRational::new(BigInt::from(dim) * BigInt::from(dim) * BigInt::from(chi), qfact_sq.clone());
            let s = self.schur_poly(&lambda)?;
            acc = acc + RatFun::from_rational(&coeff) * s.recip()?;
        }
        self.ratfun_cache.insert(ctype.clone(), acc.clone());
        Ok(acc)
    }

    /// Laurent expansion of Wg for the cycle type, exact through d^{-trunc}.
    pub fn wg_series_by_type(
        &mut self,
        ctype: &IntegerPartition,
        trunc: i64,
    ) -> Result<crate::laurent::LaurentSeries> {
        if let Some(s) = self.series_cache.get(&(ctype.clone(), trunc)) {
            return Ok(s.clone());
        }
        let f = self.wg_ratfun_by_type(ctype)?;
        let s = laurent_expand(&f, trunc)?;
        self.series_cache
            .insert((ctype.clone(), trunc), s.clone());
        Ok(s)
    }

    /// Coefficient of d^{-q-l} in the Laurent expansion of Wg(d, sigma).
    pub fn laurent_coefficient(
        &mut self,
        sigma: &Permutation,
        l: usize,
        method: CoefficientMethod,
    ) -> Result<BigRational> {
        match method {
            CoefficientMethod::Expansion => {
                let q = sigma.degree() as i64;
                let f = self.wg_ratfun(sigma)?;
                let series = laurent_expand(&f, q + l as i64)?;
                Ok(series.coefficient(q + l as i64))
            }
            CoefficientMethod::Enumeration => {
                let c = self.factorization_counts(sigma, l)?;
                Ok(BigRational::from_integer(BigInt::from(c.signed_total)))
            }
        }
    }

    /// A[sigma, k, l] for all k, by depth-limited dynamic programming over
    /// the Cayley graph. Cost guard: q <= 6 and l <= 8.
    pub fn factorization_counts(
        &mut self,
        sigma: &Permutation,
        l: usize,
    ) -> Result<FactorizationCount> {
        let q = sigma.degree();
        if q > 6 || l > 8 {
            return Err(HwError::CostGuard(format!(
                "factorization enumeration limited to q <= 6, l <= 8 (got q = {q}, l = {l})"
            )));
        }
        let engine = self.fact_engine(q, l);
        let per_k = engine.per_k_counts(sigma, l);
        let signed_total = signed_sum(&per_k);
        Ok(FactorizationCount {
            sigma: sigma.clone(),
            l,
            per_k,
            signed_total,
        })
    }

    /// Signed factorization count A[sigma, l] without the public cost guard
    /// (internal callers manage their own budgets).
    pub(crate) fn signed_count(&mut self, sigma: &Permutation, l: usize) -> i64 {
        let engine = self.fact_engine(sigma.degree(), l);
        signed_sum(&engine.per_k_counts(sigma, l))
    }

    /// Read-only view of the memoized rational functions (cache persistence).
    pub fn cached_ratfuns(&self) -> impl Iterator<Item = (&IntegerPartition, &RatFun)> {
        self.ratfun_cache.iter()
    }

    /// Seed the rational-function cache (cache persistence).
    pub fn insert_ratfun(&mut self, ctype: IntegerPartition, f: RatFun) {
        self.ratfun_cache.insert(ctype, f);
    }

    /// Degrees with a character table built so far (cache persistence).
    pub fn char_table_degrees(&self) -> Vec<u32> {
        self.char_tables.keys().copied().collect()
    }

    pub(crate) fn fact_engine(&mut self, q: usize, min_budget: usize) -> &FactEngine {
        // one engine per (q, budget tier); the tier rounds small requests up
        // to the usual working range so repeated queries share a build
        let budget = min_budget.max((2 * q.saturating_sub(1)).min(16));
        self.fact_engines
            .entry((q, budget))
            .or_insert_with(|| FactEngine::build(q, budget))
    }
}

impl Default for WgContext {
    fn default() -> Self {
        Self::new()
    }
}

pub(crate) fn signed_sum(per_k: &[u64]) -> i64 {
    per_k
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let c = c as i64;
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum()
}

/// Bottom-up table of factorization counts for a whole symmetric group:
/// counts[b][rank][k] = number of k-tuples of non-identity permutations with
/// norm sum exactly b whose product is the inverse of the rank-th permutation.
pub(crate) struct FactEngine {
    q: usize,
    max_budget: usize,
    counts: Vec<Vec<Vec<u64>>>,
}

impl FactEngine {
    fn build(q: usize, max_budget: usize) -> Self {
        let perms = Permutation::all(q);
        let n = perms.len();
        let norms: Vec<usize> = perms.iter().map(|p| p.norm()).collect();
        // non-identity generators grouped with their norms
        let gens: Vec<(usize, &Permutation)> = perms
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_identity())
            .map(|(_, p)| (p.norm(), p))
            .collect();
        let mut counts: Vec<Vec<Vec<u64>>> = Vec::with_capacity(max_budget + 1);
        for b in 0..=max_budget {
            let mut layer = vec![Vec::new(); n];
            for (rank, p) in perms.iter().enumerate() {
                if norms[rank] > b {
                    layer[rank] = vec![0; b + 1];
                    continue;
                }
                let mut row = vec![0u64; b + 1];
                if b == 0 {
                    row[0] = if norms[rank] == 0 { 1 } else { 0 };
                } else {
                    for (gnorm, g) in &gens {
                        if *gnorm > b {
                            continue;
                        }
                        let child_rank = p.compose(g).rank();
                        let child = &counts[b - gnorm][child_rank];
                        for k in 1..=b {
                            if k - 1 < child.len() {
                                row[k] += child[k - 1];
                            }
                        }
                    }
                }
                layer[rank] = row;
            }
            counts.push(layer);
        }
        FactEngine {
            q,
            max_budget,
            counts,
        }
    }

    fn per_k_counts(&self, sigma: &Permutation, l: usize) -> Vec<u64> {
        assert_eq!(sigma.degree(), self.q);
        assert!(l <= self.max_budget);
        self.counts[l][sigma.rank()].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyZ;

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(PolyZ::from_i64s(num), PolyZ::from_i64s(den)).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_table_values() {
        let mut ctx = WgContext::new();
        // Wg((1), d) = 1/d at d = 5
        let s1 = Permutation::identity(1);
        assert_eq!(ctx.wg(&s1, 5).unwrap(), q(1, 5));
        // Wg((2), d) at d = 3 is -1/24
        let t = Permutation::parse(2, "(1 2)").unwrap();
        assert_eq!(ctx.wg(&t, 3).unwrap(), q(-1, 24));
        // Wg(e in S_2, d) at d = 2 is 1/3
        let e2 = Permutation::identity(2);
        assert_eq!(ctx.wg(&e2, 2).unwrap(), q(1, 3));
    }

    #[test]
    fn stable_range_enforced() {
        let mut ctx = WgContext::new();
        let e3 = Permutation::identity(3);
        assert!(matches!(
            ctx.wg(&e3, 2),
            Err(HwError::OutOfStableRange { d: 2, q: 3 })
        ));
    }

    #[test]
    fn ratfun_q2_and_q3_table() {
        let mut ctx = WgContext::new();
        let f = |p: &str, q: usize, ctx: &mut WgContext| {
            ctx.wg_ratfun(&Permutation::parse(q, p).unwrap()).unwrap()
        };
        assert_eq!(f("", 1, &mut ctx), rf(&[1], &[0, 1]));
        assert_eq!(f("(1 2)", 2, &mut ctx), rf(&[-1], &[0, -1, 0, 1]));
        assert_eq!(f("", 2, &mut ctx), rf(&[1], &[-1, 0, 1]));
        assert_eq!(
            f("(1 2 3)", 3, &mut ctx),
            rf(&[2], &[0, 4, 0, -5, 0, 1])
        );
        assert_eq!(
            f("(1 2)", 3, &mut ctx),
            rf(&[-1], &[4, 0, -5, 0, 1])
        );
        assert_eq!(
            f("", 3, &mut ctx),
            rf(&[-2, 0, 1], &[0, 4, 0, -5, 0, 1])
        );
    }

    #[test]
    fn factorization_identity_and_transposition() {
        let mut ctx = WgContext::new();
        let e = Permutation::identity(3);
        let c0 = ctx.factorization_counts(&e, 0).unwrap();
        assert_eq!(c0.signed_total, 1);
        let t = Permutation::parse(3, "(1 2)").unwrap();
        let c0t = ctx.factorization_counts(&t, 0).unwrap();
        assert_eq!(c0t.signed_total, 0);
        // single factor (1 2): one 1-tuple, sign -1
        let c1 = ctx.factorization_counts(&t, 1).unwrap();
        assert_eq!(c1.per_k, vec![0, 1]);
        assert_eq!(c1.signed_total, -1);
    }

    #[test]
    fn enumeration_matches_expansion_spot() {
        let mut ctx = WgContext::new();
        let t = Permutation::parse(2, "(1 2)").unwrap();
        assert_eq!(
            ctx.laurent_coefficient(&t, 1, CoefficientMethod::Enumeration)
                .unwrap(),
            q(-1, 1)
        );
        assert_eq!(
            ctx.laurent_coefficient(&t, 1, CoefficientMethod::Expansion)
                .unwrap(),
            q(-1, 1)
        );
        // parity vanishing
        assert_eq!(
            ctx.laurent_coefficient(&t, 2, CoefficientMethod::Expansion)
                .unwrap(),
            q(0, 1)
        );
    }

    #[test]
    fn cost_guard() {
        let mut ctx = WgContext::new();
        let e = Permutation::identity(7);
        assert!(matches!(
            ctx.factorization_counts(&e, 1),
            Err(HwError::CostGuard(_))
        ));
    }

    #[test]
    fn degree_is_minus_q_minus_norm() {
        let mut ctx = WgContext::new();
        for q in 1..=5usize {
            for mu in IntegerPartition::enumerate(q as u32) {
                let sigma = Permutation::class_representative(&mu);
                let f = ctx.wg_ratfun(&sigma).unwrap();
                assert_eq!(f.degree(), Some(-(q as i64) - sigma.norm() as i64));
            }
        }
    }
}
