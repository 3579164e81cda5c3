//! The lattice of set partitions of {1..q} under refinement order.
//!
//! A partition is stored as its restricted growth string: labels`[i]` is the
//! block label of point i, labels assigned in order of first appearance.
//! Text form joins blocks with "|" and elements with spaces: "1 3|2 4".

use std::fmt;

use crate::error::{HwError, Result};
use crate::partition::IntegerPartition;
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<usize>,
}

impl SetPartition {
    /// Canonicalize arbitrary block labels into a restricted growth string.
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut map: Vec<Option<usize>> = vec![None; raw.len().max(raw.iter().map(|&x| x + 1).max().unwrap_or(0))];
        let mut labels = Vec::with_capacity(raw.len());
        let mut next = 0usize;
        for &r in raw {
            let l = match map[r] {
                Some(l) => l,
                None => {
                    map[r] = Some(next);
                    next += 1;
                    next - 1
                }
            };
            labels.push(l);
        }
        SetPartition { labels }
    }

    pub fn from_blocks(q: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut raw = vec![usize::MAX; q];
        for (b, block) in blocks.iter().enumerate() {
            for &p in block {
                if p >= q {
                    return Err(HwError::IndexOutOfRange(p + 1, q));
                }
                if raw[p] != usize::MAX {
                    return Err(HwError::Invalid(format!("point {} in two blocks", p + 1)));
                }
                raw[p] = b;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(HwError::Invalid("blocks do not cover the ground set".into()));
        }
        Ok(Self::from_labels(&raw))
    }

    /// The discrete partition 0_q (all singletons).
    pub fn discrete(q: usize) -> Self {
        SetPartition {
            labels: (0..q).collect(),
        }
    }

    /// The one-block partition 1_q.
    pub fn full(q: usize) -> Self {
        SetPartition {
            labels: vec![0; q],
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn label(&self, point: usize) -> usize {
        self.labels[point]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Blocks sorted by minimum element, elements ascending within each.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (p, &l) in self.labels.iter().enumerate() {
            out[l].push(p);
        }
        out
    }

    /// Block sizes as an integer partition (the orbit type of the lattice action).
    pub fn block_type(&self) -> IntegerPartition {
        let mut sizes: Vec<u32> = self.blocks().iter().map(|b| b.len() as u32).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        IntegerPartition::new(sizes).expect("blocks are non-empty")
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    /// Refinement order: self <= other iff every block of self sits inside a
    /// block of other.
    pub fn leq(&self, other: &Self) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut image: Vec<Option<usize>> = vec![None; self.num_blocks()];
        for (p, &l) in self.labels.iter().enumerate() {
            match image[l] {
                None => image[l] = Some(other.labels[p]),
                Some(t) if t == other.labels[p] => {}
                _ => return false,
            }
        }
        true
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(HwError::GroundSetMismatch(self.size(), other.size()));
        }
        let q = self.size();
        let mut uf = UnionFind::new(q);
        for par in [self, other] {
            let mut first: Vec<Option<usize>> = vec![None; par.num_blocks()];
            for (p, &l) in par.labels.iter().enumerate() {
                match first[l] {
                    None => first[l] = Some(p),
                    Some(r) => uf.union(r, p),
                }
            }
        }
        let raw: Vec<usize> = (0..q).map(|p| uf.find(p)).collect();
        Ok(Self::from_labels(&raw))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(HwError::GroundSetMismatch(self.size(), other.size()));
        }
        // blocks of the meet are non-empty intersections: key on label pairs
        let mut pair_ids: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let mut raw = Vec::with_capacity(self.size());
        for p in 0..self.size() {
            let key = (self.labels[p], other.labels[p]);
            let next = pair_ids.len();
            raw.push(*pair_ids.entry(key).or_insert(next));
        }
        Ok(Self::from_labels(&raw))
    }

    /// Partition whose blocks are the orbits of sigma.
    pub fn orbits_of(sigma: &Permutation) -> Self {
        let mut raw = vec![0usize; sigma.degree()];
        for (b, cyc) in sigma.cycles().iter().enumerate() {
            for &p in cyc {
                raw[p] = b;
            }
        }
        Self::from_labels(&raw)
    }

    /// Moebius value of the interval [self, upper] in the partition lattice:
    /// product over blocks V of upper of (-1)^{n_V - 1} (n_V - 1)!, where n_V
    /// counts the blocks of self inside V.
    pub fn moebius(&self, upper: &Self) -> Result<i64> {
        if !self.leq(upper) {
            return Err(HwError::Incomparable);
        }
        let mut counts = vec![0u64; upper.num_blocks()];
        let mut seen = vec![false; self.num_blocks()];
        for (p, &l) in self.labels.iter().enumerate() {
            if !seen[l] {
                seen[l] = true;
                counts[upper.labels[p]] += 1;
            }
        }
        let mut v = 1i64;
        for n in counts {
            let mut f = 1i64;
            for k in 1..n {
                f *= k as i64;
            }
            v *= if n % 2 == 1 { f } else { -f };
        }
        Ok(v)
    }

    /// All set partitions of {1..q} in restricted-growth-string lexicographic
    /// order (the all-zero string, i.e. the one-block partition, comes first).
    pub fn enumerate(q: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut labels = vec![0usize; q];
        fn rec(i: usize, maxl: usize, labels: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
            if i == labels.len() {
                out.push(SetPartition {
                    labels: labels.clone(),
                });
                return;
            }
            for l in 0..=maxl + 1 {
                labels[i] = l;
                rec(i + 1, maxl.max(l), labels, out);
            }
        }
        if q == 0 {
            out.push(SetPartition { labels });
        } else {
            labels[0] = 0;
            rec(1, 0, &mut labels, &mut out);
        }
        out
    }

    /// All partitions in the interval [self, upper]: one set partition of the
    /// blocks of self inside each block of upper, assembled on {1..q}.
    pub fn interval_to(&self, upper: &Self) -> Result<Vec<SetPartition>> {
        if !self.leq(upper) {
            return Err(HwError::Incomparable);
        }
        let blocks = self.blocks();
        let mut grouped: Vec<Vec<usize>> = vec![Vec::new(); upper.num_blocks()];
        for (bi, block) in blocks.iter().enumerate() {
            grouped[upper.labels[block[0]]].push(bi);
        }
        let mut results = vec![vec![usize::MAX; self.size()]];
        let mut next_label = vec![0usize];
        for group in &grouped {
            let subparts = SetPartition::enumerate(group.len());
            let mut new_results = Vec::new();
            let mut new_next = Vec::new();
            for (raw, &base) in results.iter().zip(&next_label) {
                for sp in &subparts {
                    let mut r = raw.clone();
                    for (gi, &bi) in group.iter().enumerate() {
                        let lbl = base + sp.labels[gi];
                        for &p in &blocks[bi] {
                            r[p] = lbl;
                        }
                    }
                    new_results.push(r);
                    new_next.push(base + sp.num_blocks());
                }
            }
            results = new_results;
            next_label = new_next;
        }
        Ok(results
            .into_iter()
            .map(|raw| Self::from_labels(&raw))
            .collect())
    }

    /// Parse "1 3|2 4" (1-based points) given the ground-set size.
    pub fn parse(q: usize, text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for chunk in text.split('|') {
            let mut block = Vec::new();
            for tok in chunk.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| HwError::Parse(format!("bad point {tok:?}")))?;
                if v == 0 || v > q {
                    return Err(HwError::IndexOutOfRange(v, q));
                }
                block.push(v - 1);
            }
            if !block.is_empty() {
                blocks.push(block);
            }
        }
        Self::from_blocks(q, &blocks)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (bi, block) in self.blocks().iter().enumerate() {
            if bi > 0 {
                write!(f, "|")?;
            }
            for (k, p) in block.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Indexed view of the full lattice for one ground-set size, with memoized
/// joins; the enumeration order fixes partition indices.
pub struct PartitionLattice {
    parts: Vec<SetPartition>,
    index: std::collections::HashMap<SetPartition, usize>,
    join_cache: std::collections::HashMap<(usize, usize), usize>,
}

impl PartitionLattice {
    pub fn new(q: usize) -> Self {
        let parts = SetPartition::enumerate(q);
        let index = parts
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PartitionLattice {
            parts,
            index,
            join_cache: std::collections::HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn get(&self, i: usize) -> &SetPartition {
        &self.parts[i]
    }

    pub fn index_of(&self, p: &SetPartition) -> usize {
        self.index[p]
    }

    pub fn top(&self) -> usize {
        self.index[&SetPartition::full(self.parts[0].size())]
    }

    pub fn bottom(&self) -> usize {
        self.index[&SetPartition::discrete(self.parts[0].size())]
    }

    pub fn join_index(&mut self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        if let Some(&j) = self.join_cache.get(&key) {
            return j;
        }
        let joined = self.parts[a].join(&self.parts[b]).expect("same ground set");
        let j = self.index[&joined];
        self.join_cache.insert(key, j);
        j
    }
}

/// Bell numbers for small q (enumeration sanity checks).
pub fn bell(q: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..q {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            next.push(next.last().unwrap() + v);
        }
        row = next;
    }
    row[0]
}
