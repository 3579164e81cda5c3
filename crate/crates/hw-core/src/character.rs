//! Irreducible characters of symmetric groups by recursive rim-hook removal
//! (Murnaghan-Nakayama), with memoization, plus the hook length dimension.
//!
//! Rim hooks are manipulated through beta-sets: for lambda with n parts the
//! beta-set is {lambda_i + n - i}; removing a rim hook of length t replaces a
//! beta value b by b - t (valid when b - t is free), and the sign is (-1) to
//! the number of beta values jumped over.

use std::collections::HashMap;

use crate::error::{HwError, Result};
use crate::partition::{factorial_u64, IntegerPartition};

/// All characters of S_q, built on demand and then read-only.
pub struct CharacterTable {
    q: u32,
    /// chi^lambda(mu) keyed by (lambda, mu) in canonical partition form.
    entries: HashMap<(IntegerPartition, IntegerPartition), i64>,
    memo: HashMap<(Vec<u32>, Vec<u32>), i64>,
}

impl CharacterTable {
    pub fn new(q: u32) -> Self {
        CharacterTable {
            q,
            entries: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.q
    }

    /// chi^lambda(mu); both partitions must have weight q.
    pub fn character(&mut self, lambda: &IntegerPartition, mu: &IntegerPartition) -> Result<i64> {
        if lambda.weight() != mu.weight() {
            return Err(HwError::DegreeMismatch(
                lambda.weight() as usize,
                mu.weight() as usize,
            ));
        }
        if lambda.weight() != self.q {
            return Err(HwError::DegreeMismatch(
                lambda.weight() as usize,
                self.q as usize,
            ));
        }
        let key = (lambda.clone(), mu.clone());
        if let Some(&v) = self.entries.get(&key) {
            return Ok(v);
        }
        let v = mn_recurse(
            lambda.parts().to_vec(),
            mu.parts().to_vec(),
            &mut self.memo,
        );
        self.entries.insert(key, v);
        Ok(v)
    }

    /// chi^lambda(e) via Murnaghan-Nakayama on the identity class.
    pub fn dimension(&mut self, lambda: &IntegerPartition) -> Result<i64> {
        let ones = IntegerPartition::new(vec![1; self.q as usize])?;
        self.character(lambda, &ones)
    }

    /// Fill every (lambda, mu) entry eagerly.
    pub fn build_full(&mut self) -> Result<()> {
        let parts = IntegerPartition::enumerate(self.q);
        for l in &parts {
            for m in &parts {
                self.character(l, m)?;
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &HashMap<(IntegerPartition, IntegerPartition), i64> {
        &self.entries
    }

    /// Insert a precomputed entry (used by the persistent cache loader).
    pub fn insert_entry(&mut self, lambda: IntegerPartition, mu: IntegerPartition, value: i64) {
        self.entries.insert((lambda, mu), value);
    }
}

fn beta_set(parts: &[u32]) -> Vec<u64> {
    let n = parts.len() as u64;
    parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p as u64 + n - 1 - i as u64)
        .collect()
}

fn partition_from_beta(mut beta: Vec<u64>) -> Vec<u32> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let n = beta.len() as u64;
    let mut parts: Vec<u32> = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| (b + 1 + i as u64 - n) as u32)
        .collect();
    parts.retain(|&p| p > 0);
    parts
}

fn mn_recurse(
    lambda: Vec<u32>,
    mu: Vec<u32>,
    memo: &mut HashMap<(Vec<u32>, Vec<u32>), i64>,
) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let t = mu[0] as u64;
    let rest: Vec<u32> = mu[1..].to_vec();
    let beta = beta_set(&lambda);
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < t {
            continue;
        }
        let target = b - t;
        if beta.contains(&target) {
            continue;
        }
        // height = number of beta values strictly between target and b
        let height = beta
            .iter()
            .filter(|&&x| x > target && x < b)
            .count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[i] = target;
        let sub = partition_from_beta(nb);
        total += sign * mn_recurse(sub, rest.clone(), memo);
    }
    memo.insert(key, total);
    total
}

/// dim(lambda) by the hook length formula: q! / prod of hooks.
pub fn hook_length_dimension(lambda: &IntegerPartition) -> u64 {
    let q = lambda.weight() as u64;
    factorial_u64(q) / hook_product(lambda)
}

/// Product of all hook lengths of lambda.
#[allow(clippy::needless_range_loop)] // j drives both the arm length and the conjugate lookup
pub fn hook_product(lambda: &IntegerPartition) -> u64 {
    let parts = lambda.parts();
    let conj = lambda.conjugate();
    let cparts = conj.parts();
    let mut prod = 1u64;
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - 1 - j;
            let leg = cparts[j] as usize - 1 - i;
            prod *= (arm + leg + 1) as u64;
        }
    }
    prod
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> IntegerPartition {
        IntegerPartition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_and_sign_representations() {
        let mut t = CharacterTable::new(4);
        for mu in IntegerPartition::enumerate(4) {
            assert_eq!(t.character(&part(&[4]), &mu).unwrap(), 1);
            let sign = if mu.norm() % 2 == 0 { 1 } else { -1 };
            assert_eq!(t.character(&part(&[1, 1, 1, 1]), &mu).unwrap(), sign);
        }
    }

    #[test]
    fn dimension_of_two_one() {
        let mut t = CharacterTable::new(3);
        assert_eq!(t.character(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(hook_length_dimension(&part(&[2, 1])), 2);
    }

    #[test]
    fn hook_dimension_matches_mn_through_q6() {
        for q in 1..=6 {
            let mut t = CharacterTable::new(q);
            for l in IntegerPartition::enumerate(q) {
                assert_eq!(
                    t.dimension(&l).unwrap(),
                    hook_length_dimension(&l) as i64,
                    "lambda = {l}"
                );
            }
        }
    }

    #[test]
    fn s5_character_values_spot() {
        // chi^(3,2) on classes of S_5, standard table row: dim 5
        let mut t = CharacterTable::new(5);
        assert_eq!(t.character(&part(&[3, 2]), &part(&[1, 1, 1, 1, 1])).unwrap(), 5);
        assert_eq!(t.character(&part(&[3, 2]), &part(&[2, 1, 1, 1])).unwrap(), 1);
        assert_eq!(t.character(&part(&[3, 2]), &part(&[5])).unwrap(), 0);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let mut t = CharacterTable::new(3);
        assert!(t
            .character(&part(&[2, 1]), &part(&[2, 2]))
            .is_err());
    }
}
