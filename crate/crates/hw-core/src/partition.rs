//! Integer partitions lambda |- q: weakly decreasing positive parts.
//!
//! Partitions index conjugacy classes and irreducible characters of S_q.
//! Enumeration is reverse-lexicographic, which fixes the canonical row and
//! column order of every table this crate emits.

use std::fmt;

use crate::error::{HwError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<u32>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(HwError::Invalid("partition parts must be >= 1".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(HwError::Invalid(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(IntegerPartition { parts })
    }

    /// Sorts the given positive parts into canonical order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        IntegerPartition { parts: vec![] }
    }

    pub fn one_row(q: u32) -> Self {
        if q == 0 {
            Self::empty()
        } else {
            IntegerPartition { parts: vec![q] }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Multiplicity m_i of each part value i, as (value, multiplicity) pairs.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// |C_mu| = q! / prod_i (i^{m_i} m_i!), the conjugacy class size.
    pub fn class_size(&self) -> u64 {
        let q = self.weight() as u64;
        let mut denom = 1u64;
        for (value, mult) in self.multiplicities() {
            for _ in 0..mult {
                denom *= value as u64;
            }
            denom *= factorial_u64(mult as u64);
        }
        factorial_u64(q) / denom
    }

    /// q - (number of parts): the norm of any permutation in this class.
    pub fn norm(&self) -> usize {
        self.weight() as usize - self.num_parts()
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Self {
        if self.parts.is_empty() {
            return Self::empty();
        }
        let cols = self.parts[0] as usize;
        let mut parts = vec![0u32; cols];
        for &p in &self.parts {
            for slot in parts.iter_mut().take(p as usize) {
                *slot += 1;
            }
        }
        IntegerPartition { parts }
    }

    /// All partitions of q in reverse-lexicographic order, starting at (q).
    pub fn enumerate(q: u32) -> Vec<IntegerPartition> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
            if remaining == 0 {
                out.push(IntegerPartition { parts: cur.clone() });
                return;
            }
            let hi = remaining.min(max);
            for next in (1..=hi).rev() {
                cur.push(next);
                rec(remaining - next, next, cur, out);
                cur.pop();
            }
        }
        rec(q, q, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn factorial_u64(n: u64) -> u64 {
    (2..=n).product::<u64>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_sizes() {
        assert_eq!(IntegerPartition::new(vec![1, 1]).unwrap().class_size(), 1);
        assert_eq!(IntegerPartition::new(vec![2]).unwrap().class_size(), 1);
        assert_eq!(IntegerPartition::new(vec![2, 1]).unwrap().class_size(), 3);
        // classes of S_4: sizes sum to 24
        let total: u64 = IntegerPartition::enumerate(4)
            .iter()
            .map(|m| m.class_size())
            .sum();
        assert_eq!(total, 24);
    }

    #[test]
    fn reverse_lex_order() {
        let ps = IntegerPartition::enumerate(4);
        let texts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        assert_eq!(texts, vec!["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn partition_counts() {
        assert_eq!(IntegerPartition::enumerate(6).len(), 11);
        assert_eq!(IntegerPartition::enumerate(10).len(), 42);
    }

    #[test]
    fn conjugate_involution() {
        for p in IntegerPartition::enumerate(7) {
            assert_eq!(p.conjugate().conjugate(), p);
        }
    }
}
