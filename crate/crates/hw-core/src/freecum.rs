//! Free cumulants from moment sequences over the noncrossing lattice, and
//! R-transform coefficients.
//!
//! k_q is computed two independent ways: a generic recursive Moebius function
//! on the NC(q) lattice, and the Kreweras closed form
//! k_q = sum_{p in NC(q)} phi_p Moeb(K(p)) with Moeb the signed-Catalan
//! cycle weight. The two must agree; `free_cumulant` checks this on every call.

use std::collections::HashMap;

use crate::catalan::moeb_cycle_type;
use crate::cumulant::{ring_int, CoeffRing};
use crate::error::{HwError, Result};
use crate::ncpart::{enumerate_nc, NonCrossingPartition};

/// Moments m_1..m_Q of a single variable, in any coefficient ring.
#[derive(Clone, Debug)]
pub struct MomentSequence<R>(pub Vec<R>);

impl<R: CoeffRing> MomentSequence<R> {
    pub fn order(&self) -> usize {
        self.0.len()
    }

    fn moment(&self, k: usize) -> Result<R> {
        self.0
            .get(k - 1)
            .cloned()
            .ok_or_else(|| HwError::MissingMoment(vec![k]))
    }

    /// phi_p = product over blocks of m_{|block|}.
    pub fn phi(&self, p: &NonCrossingPartition) -> Result<R> {
        let mut acc = R::one();
        for block in p.as_set_partition().blocks() {
            acc = acc * self.moment(block.len())?;
        }
        Ok(acc)
    }
}

/// Moebius function of the NC(q) lattice by the defining recursion,
/// memoized per interval. Independent of any closed form.
pub struct NcMoebius {
    q: usize,
    elements: Vec<NonCrossingPartition>,
    memo: HashMap<(usize, usize), i64>,
}

impl NcMoebius {
    pub fn new(q: usize) -> Result<Self> {
        Ok(NcMoebius {
            q,
            elements: enumerate_nc(q)?,
            memo: HashMap::new(),
        })
    }

    pub fn elements(&self) -> &[NonCrossingPartition] {
        &self.elements
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a]
            .as_set_partition()
            .leq(self.elements[b].as_set_partition())
    }

    /// mu(a, b) with mu(a, a) = 1 and sum_{a <= c <= b} mu(a, c) = 0.
    pub fn moebius(&mut self, a: usize, b: usize) -> i64 {
        if a == b {
            return 1;
        }
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let mut acc = 0i64;
        for c in 0..self.elements.len() {
            if c != b && self.leq(a, c) && self.leq(c, b) {
                acc += self.moebius(a, c);
            }
        }
        let v = -acc;
        self.memo.insert((a, b), v);
        v
    }

    pub fn top(&self) -> usize {
        (0..self.elements.len())
            .find(|&i| self.elements[i].num_blocks() == 1)
            .expect("NC(q) contains 1_q")
    }

    pub fn degree(&self) -> usize {
        self.q
    }
}

/// k_q by both routes, verified equal.
pub fn free_cumulant<R: CoeffRing>(q: usize, m: &MomentSequence<R>) -> Result<R> {
    if m.order() < q {
        return Err(HwError::MissingMoment(vec![q]));
    }
    let mut nc = NcMoebius::new(q)?;
    let top = nc.top();
    let mut direct = R::zero();
    for i in 0..nc.elements().len() {
        let mu = nc.moebius(i, top);
        direct = direct + m.phi(&nc.elements()[i])? * ring_int::<R>(mu);
    }
    let mut via_kreweras = R::zero();
    for p in nc.elements() {
        let k = p.kreweras();
        let weight = moeb_cycle_type(k.as_set_partition().block_type().parts());
        via_kreweras = via_kreweras + m.phi(p)? * ring_int::<R>(weight);
    }
    if direct != via_kreweras {
        return Err(HwError::Invalid(format!(
            "free cumulant routes disagree at q = {q}"
        )));
    }
    Ok(direct)
}

/// (k_1, ..., k_Q): the coefficient of z^q in the R-transform is k_{q+1}.
pub fn r_transform_coefficients<R: CoeffRing>(
    m: &MomentSequence<R>,
    order: usize,
) -> Result<Vec<R>> {
    (1..=order).map(|q| free_cumulant(q, m)).collect()
}

/// Rebuild moments from free cumulants: m_q = sum_{p in NC(q)} prod_V k_{|V|}.
pub fn moments_from_free_cumulants<R: CoeffRing>(ks: &[R]) -> Result<MomentSequence<R>> {
    let mut moments = Vec::with_capacity(ks.len());
    for q in 1..=ks.len() {
        let mut acc = R::zero();
        for p in enumerate_nc(q)? {
            let mut term = R::one();
            for block in p.as_set_partition().blocks() {
                term = term * ks[block.len() - 1].clone();
            }
            acc = acc + term;
        }
        moments.push(acc);
    }
    Ok(MomentSequence(moments))
}
