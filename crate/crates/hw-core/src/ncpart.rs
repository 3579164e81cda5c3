//! Noncrossing partitions of {1..q}: enumeration by first-block placement,
//! the geodesic permutation r(V) whose cycles are the blocks written
//! increasingly, and Kreweras complementation K(pi) = orbits of Z^{-1} r(pi)
//! with Z the full cycle (1 2 ... q).

use crate::error::{HwError, Result};
use crate::perm::Permutation;
use crate::setpart::SetPartition;

/// A set partition certified noncrossing: no a1 < a2 < a3 < a4 with a1, a3 in
/// one block and a2, a4 in another.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NonCrossingPartition {
    inner: SetPartition,
}

impl NonCrossingPartition {
    pub fn new(p: SetPartition) -> Result<Self> {
        if !is_noncrossing(&p) {
            return Err(HwError::Invalid(format!("partition {p} has a crossing")));
        }
        Ok(NonCrossingPartition { inner: p })
    }

    pub fn as_set_partition(&self) -> &SetPartition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.inner.size()
    }

    pub fn num_blocks(&self) -> usize {
        self.inner.num_blocks()
    }

    /// r(V): each block becomes an increasing cycle. Its orbit partition is V
    /// and it lies on the geodesic |r| + |Z r^{-1}| = q - 1.
    pub fn geodesic_permutation(&self) -> Permutation {
        let blocks = self.inner.blocks();
        Permutation::from_cycles(self.size(), &blocks).expect("blocks are disjoint")
    }

    /// Kreweras complement: orbits of Z^{-1} r(pi).
    pub fn kreweras(&self) -> NonCrossingPartition {
        let q = self.size();
        let z_inv = Permutation::full_cycle(q).inverse();
        let w = z_inv.compose(&self.geodesic_permutation());
        NonCrossingPartition::new(SetPartition::orbits_of(&w))
            .expect("Kreweras complement of a noncrossing partition is noncrossing")
    }
}

impl std::fmt::Display for NonCrossingPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.inner)
    }
}

/// Stack check: scanning 1..q, a block may resume only if no other block
/// opened after it is still open.
pub fn is_noncrossing(p: &SetPartition) -> bool {
    let q = p.size();
    let mut last = vec![usize::MAX; p.num_blocks()]; // last point seen per block
    for a in 0..q {
        let la = p.label(a);
        if last[la] != usize::MAX {
            // any point strictly between last[la] and a must not pair with a
            // point beyond a
            for b in last[la] + 1..a {
                let lb = p.label(b);
                if lb == la {
                    continue;
                }
                for c in a + 1..q {
                    if p.label(c) == lb {
                        return false;
                    }
                }
            }
        }
        last[la] = a;
    }
    true
}

/// All noncrossing partitions of {1..q}; |NC(q)| = catalan(q).
/// Cost guard at q <= 12.
pub fn enumerate_nc(q: usize) -> Result<Vec<NonCrossingPartition>> {
    if q == 0 || q > 12 {
        return Err(HwError::CostGuard(format!(
            "noncrossing enumeration limited to 1 <= q <= 12 (got {q})"
        )));
    }
    let mut out = Vec::new();
    let mut labels = vec![usize::MAX; q];
    place_first_block(&mut labels, 0, 0, &mut out);
    Ok(out)
}

/// Recursive first-block placement: the block of the least unassigned point
/// is chosen inside the current gap; the regions it cuts out are partitioned
/// independently. Noncrossing holds by construction.
fn place_first_block(
    labels: &mut Vec<usize>,
    next_label: usize,
    from: usize,
    out: &mut Vec<NonCrossingPartition>,
) {
    let q = labels.len();
    let Some(start) = (from..q).find(|&i| labels[i] == usize::MAX) else {
        let p = SetPartition::from_labels(labels);
        out.push(NonCrossingPartition { inner: p });
        return;
    };
    // choose the block of `start` among the still-free points that are not
    // separated from it by an already-assigned point of an enclosing block:
    // within the contiguous run of unassigned points starting at `start`,
    // any subset works because enclosing blocks only resume after the run.
    let mut run_end = start;
    while run_end + 1 < q && labels[run_end + 1] == usize::MAX {
        run_end += 1;
    }
    let free: Vec<usize> = (start + 1..=run_end).collect();
    let m = free.len();
    for mask in 0..(1u32 << m) {
        labels[start] = next_label;
        let mut chosen = vec![start];
        for (bit, &p) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                labels[p] = next_label;
                chosen.push(p);
            }
        }
        // each gap between consecutive chosen points is partitioned on its
        // own; recursing on the least unassigned point realizes exactly that
        place_first_block(labels, next_label + 1, start + 1, out);
        for &p in &chosen {
            labels[p] = usize::MAX;
        }
    }
}
