//! Permutations of {1..q} with the conventions used throughout the crate:
//! composition is right-to-left (`(a*b)(x) = a(b(x))`), points are stored
//! 0-based internally and printed 1-based in cycle notation, and the norm
//! |sigma| = q - c(sigma) is the transposition distance from the identity.

use std::fmt;

use crate::error::{HwError, Result};
use crate::partition::IntegerPartition;

/// A bijection of {1..q}, stored as the image vector on 0-based points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Build from 0-based images, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let q = images.len();
        let mut seen = vec![false; q];
        for &v in &images {
            if v >= q || seen[v] {
                return Err(HwError::Invalid(format!(
                    "image vector {images:?} is not a bijection of 0..{q}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(q: usize) -> Self {
        Permutation {
            images: (0..q).collect(),
        }
    }

    /// The full cycle (1 2 ... q).
    pub fn full_cycle(q: usize) -> Self {
        Permutation {
            images: (0..q).map(|i| (i + 1) % q.max(1)).collect(),
        }
    }

    pub fn transposition(q: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..q).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// Build from disjoint cycles of 0-based points; points omitted are fixed.
    pub fn from_cycles(q: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..q).collect();
        let mut used = vec![false; q];
        for cyc in cycles {
            for (k, &p) in cyc.iter().enumerate() {
                if p >= q {
                    return Err(HwError::IndexOutOfRange(p + 1, q));
                }
                if used[p] {
                    return Err(HwError::Invalid(format!(
                        "point {} repeated across cycles",
                        p + 1
                    )));
                }
                used[p] = true;
                images[p] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parse whitespace-separated 1-based cycle notation, e.g. "(1 3)(2 4)".
    /// Fixed points may be omitted; `q` is explicit. "()" or "e" is the identity.
    pub fn parse(q: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "e" || text == "()" || text.is_empty() {
            return Ok(Self::identity(q));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| HwError::Parse(format!("expected '(' in {text:?}")))?;
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| HwError::Parse(format!("unbalanced '(' in {text:?}")))?
                + open;
            let body = &rest[open + 1..close];
            let mut cyc = Vec::new();
            for tok in body.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| HwError::Parse(format!("bad point {tok:?}")))?;
                if v == 0 || v > q {
                    return Err(HwError::IndexOutOfRange(v, q));
                }
                cyc.push(v - 1);
            }
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = rest[close + 1..].trim_start();
        }
        Self::from_cycles(q, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// Function composition: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    /// Cycles sorted by minimal element, each starting at its minimal element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let q = self.degree();
        let mut seen = vec![false; q];
        let mut out = Vec::new();
        for start in 0..q {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cyc.push(p);
                p = self.images[p];
            }
            out.push(cyc);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Multiset of cycle lengths, sorted non-increasing.
    pub fn cycle_type(&self) -> IntegerPartition {
        let mut lens: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition::new(lens).expect("cycle lengths are positive")
    }

    /// |sigma| = q - c(sigma), the minimal transposition count.
    pub fn norm(&self) -> usize {
        self.degree() - self.num_cycles()
    }

    pub fn sign(&self) -> i64 {
        if self.norm().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Restriction to a subset of points that is a union of cycles.
    /// Points are renumbered by their order within `support`.
    pub fn restrict(&self, support: &[usize]) -> Result<Self> {
        let mut pos = vec![usize::MAX; self.degree()];
        for (k, &p) in support.iter().enumerate() {
            pos[p] = k;
        }
        let mut images = Vec::with_capacity(support.len());
        for &p in support {
            let v = self.images[p];
            if pos[v] == usize::MAX {
                return Err(HwError::Invalid(
                    "support is not a union of cycles".into(),
                ));
            }
            images.push(pos[v]);
        }
        Ok(Permutation { images })
    }

    /// Lehmer rank in 0..q!, used to index dense memo tables.
    pub fn rank(&self) -> usize {
        let q = self.degree();
        let mut rank = 0usize;
        let mut items: Vec<usize> = (0..q).collect();
        for i in 0..q {
            let pos = items.iter().position(|&x| x == self.images[i]).unwrap();
            rank = rank * (q - i) + pos;
            items.remove(pos);
        }
        rank
    }

    /// Enumerate all of S_q in lexicographic image order.
    pub fn all(q: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..q).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..q.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..q).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// A canonical representative of the conjugacy class with the given cycle type:
    /// cycles filled with consecutive points, longest first.
    pub fn class_representative(ctype: &IntegerPartition) -> Permutation {
        let q = ctype.weight() as usize;
        let mut cycles = Vec::new();
        let mut next = 0usize;
        for &part in ctype.parts() {
            let cyc: Vec<usize> = (next..next + part as usize).collect();
            next += part as usize;
            cycles.push(cyc);
        }
        Permutation::from_cycles(q, &cycles).expect("disjoint by construction")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cyc in nontrivial {
            write!(f, "(")?;
            for (k, p) in cyc.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_type_examples() {
        let e3 = Permutation::identity(3);
        assert_eq!(e3.cycle_type().parts(), &[1, 1, 1]);
        let t = Permutation::parse(2, "(1 2)").unwrap();
        assert_eq!(t.cycle_type().parts(), &[2]);
        let s = Permutation::parse(5, "(1 2 3)(4 5)").unwrap();
        assert_eq!(s.cycle_type().parts(), &[3, 2]);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(Permutation::identity(4).norm(), 0);
        assert_eq!(Permutation::parse(2, "(1 2)").unwrap().norm(), 1);
        assert_eq!(Permutation::parse(3, "(1 2 3)").unwrap().norm(), 2);
    }

    #[test]
    fn parse_roundtrip() {
        let p = Permutation::parse(4, "(1 3)(2 4)").unwrap();
        assert_eq!(Permutation::parse(4, &p.to_string()).unwrap(), p);
        let fixed = Permutation::parse(5, "(2 4)").unwrap();
        assert_eq!(fixed.apply(0), 0);
        assert_eq!(fixed.apply(1), 3);
    }

    #[test]
    fn compose_is_right_to_left() {
        // (1 2) then (2 3): x=1 -> 2 -> 3
        let a = Permutation::parse(3, "(2 3)").unwrap();
        let b = Permutation::parse(3, "(1 2)").unwrap();
        let ab = a.compose(&b);
        assert_eq!(ab.apply(0), 2);
    }

    #[test]
    fn rank_is_injective() {
        let mut seen = std::collections::HashSet::new();
        for p in Permutation::all(5) {
            assert!(seen.insert(p.rank()));
            assert!(p.rank() < 120);
        }
    }

    #[test]
    fn restrict_union_of_cycles() {
        let s = Permutation::parse(5, "(1 2 3)(4 5)").unwrap();
        let r = s.restrict(&[3, 4]).unwrap();
        assert_eq!(r.cycle_type().parts(), &[2]);
        assert!(s.restrict(&[0, 1]).is_err());
    }
}
