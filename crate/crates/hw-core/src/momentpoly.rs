//! Multivariate polynomials in abstract moment symbols with coefficients in
//! any ring: exact rationals for limits, rational functions of d for finite-d
//! expressions. Terms are kept in a canonical order (total symbol weight,
//! then lexicographic), which makes serialized output byte-stable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::cumulant::CoeffRing;

/// An abstract commuting symbol carrying a weight for term ordering.
pub trait Symbol: Clone + Ord + Eq + std::hash::Hash + fmt::Debug {
    fn weight(&self) -> u32;
    fn render(&self) -> String;
}

/// Moment symbols x_k and y_k of the two spectra.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum XYSym {
    X(u32),
    Y(u32),
}

impl Symbol for XYSym {
    fn weight(&self) -> u32 {
        match self {
            XYSym::X(k) | XYSym::Y(k) => *k,
        }
    }
    fn render(&self) -> String {
        match self {
            XYSym::X(k) => format!("x{k}"),
            XYSym::Y(k) => format!("y{k}"),
        }
    }
}

/// A sorted multiset of symbols.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<S: Symbol>(Vec<S>);

impl<S: Symbol> Monomial<S> {
    pub fn unit() -> Self {
        Monomial(vec![])
    }

    pub fn from_symbols(mut syms: Vec<S>) -> Self {
        syms.sort();
        Monomial(syms)
    }

    pub fn symbols(&self) -> &[S] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_weight(&self) -> u32 {
        self.0.iter().map(|s| s.weight()).sum()
    }

    pub fn merge(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Self::from_symbols(v)
    }

    pub fn contains(&self, sym: &S) -> bool {
        self.0.contains(sym)
    }
}

impl<S: Symbol> PartialOrd for Monomial<S> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Symbol> Ord for Monomial<S> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_weight()
            .cmp(&other.total_weight())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MomentPolynomial<S: Symbol, C: CoeffRing> {
    terms: BTreeMap<Monomial<S>, C>,
}

impl<S: Symbol, C: CoeffRing> MomentPolynomial<S, C> {
    pub fn new() -> Self {
        MomentPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::new();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn symbol(s: S) -> Self {
        let mut p = Self::new();
        p.add_term(Monomial::from_symbols(vec![s]), C::one());
        p
    }

    pub fn monomial(m: Monomial<S>, c: C) -> Self {
        let mut p = Self::new();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial<S>, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<S>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial<S>) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::new();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Apply a ring map to every coefficient (e.g. take a Laurent constant term).
    pub fn map_coeffs<D: CoeffRing>(&self, f: impl Fn(&C) -> D) -> MomentPolynomial<S, D> {
        let mut out = MomentPolynomial::new();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), f(v));
        }
        out
    }

    /// Rename symbols (e.g. swap x and y); monomials are re-canonicalized.
    pub fn map_symbols(&self, f: impl Fn(&S) -> S) -> Self {
        let mut out = Self::new();
        for (m, v) in &self.terms {
            let syms = m.symbols().iter().map(&f).collect();
            out.add_term(Monomial::from_symbols(syms), v.clone());
        }
        out
    }

    /// Substitute whole polynomials for the symbols where `f` returns Some.
    pub fn substitute(&self, f: impl Fn(&S) -> Option<MomentPolynomial<S, C>>) -> Self {
        let mut out = Self::new();
        for (m, v) in &self.terms {
            let mut acc = Self::constant(v.clone());
            for s in m.symbols() {
                let factor = match f(s) {
                    Some(p) => p,
                    None => Self::symbol(s.clone()),
                };
                acc = acc * factor;
            }
            out = out + acc;
        }
        out
    }

    /// Drop every term that contains a symbol failing the predicate.
    pub fn retain_terms(&self, keep: impl Fn(&Monomial<S>) -> bool) -> Self {
        let mut out = Self::new();
        for (m, v) in &self.terms {
            if keep(m) {
                out.add_term(m.clone(), v.clone());
            }
        }
        out
    }

    /// Evaluate by assigning a ring value to every symbol.
    pub fn evaluate(&self, f: impl Fn(&S) -> C) -> C {
        let mut acc = C::zero();
        for (m, v) in &self.terms {
            let mut t = v.clone();
            for s in m.symbols() {
                t = t * f(s);
            }
            acc = acc + t;
        }
        acc
    }
}

impl<S: Symbol, C: CoeffRing> Default for MomentPolynomial<S, C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Symbol, C: CoeffRing> Add for MomentPolynomial<S, C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (m, v) in rhs.terms {
            out.add_term(m, v);
        }
        out
    }
}

impl<S: Symbol, C: CoeffRing> Sub for MomentPolynomial<S, C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Symbol, C: CoeffRing> Neg for MomentPolynomial<S, C> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut out = Self::new();
        for (m, v) in self.terms {
            out.add_term(m, -v);
        }
        out
    }
}

impl<S: Symbol, C: CoeffRing> Mul for MomentPolynomial<S, C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::new();
        for (ma, va) in &self.terms {
            for (mb, vb) in &rhs.terms {
                out.add_term(ma.merge(mb), va.clone() * vb.clone());
            }
        }
        out
    }
}

impl<S: Symbol, C: CoeffRing> Zero for MomentPolynomial<S, C> {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Symbol, C: CoeffRing> One for MomentPolynomial<S, C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<S: Symbol, C: CoeffRing + fmt::Display> fmt::Display for MomentPolynomial<S, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "({c})")?;
            let mut run: Option<(&S, u32)> = None;
            let emit = |f: &mut fmt::Formatter<'_>, s: &S, e: u32| -> fmt::Result {
                if e == 1 {
                    write!(f, "*{}", s.render())
                } else {
                    write!(f, "*{}^{}", s.render(), e)
                }
            };
            for s in m.symbols() {
                match run {
                    Some((prev, e)) if prev == s => run = Some((prev, e + 1)),
                    Some((prev, e)) => {
                        emit(f, prev, e)?;
                        run = Some((s, 1));
                    }
                    None => run = Some((s, 1)),
                }
            }
            if let Some((prev, e)) = run {
                emit(f, prev, e)?;
            }
        }
        Ok(())
    }
}

impl<S: Symbol, C: CoeffRing + fmt::Display> fmt::Debug for MomentPolynomial<S, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Monomial prod x_{parts of mu} for a cycle type, e.g. (2,1) -> x2*x1.
pub fn x_monomial(parts: &[u32]) -> Monomial<XYSym> {
    Monomial::from_symbols(parts.iter().map(|&k| XYSym::X(k)).collect())
}

pub fn y_monomial(parts: &[u32]) -> Monomial<XYSym> {
    Monomial::from_symbols(parts.iter().map(|&k| XYSym::Y(k)).collect())
}
