//! Exact expectations of words in independent Haar unitaries and constant
//! matrices, and the underlying entry-monomial integral.
//!
//! The monomial integral sums delta-matched permutation pairs against
//! Weingarten values. Word expectations follow the moment-expansion over, for
//! each unitary family, the permutations that swap its +1 and -1 occurrence
//! sets: each such xi contributes the bracket at the twisted trace pattern
//! alpha xi_1 ... xi_k, a power d^{|alpha| - |alpha xi_1 ... xi_k|}, and a
//! Weingarten factor Wg(d, xi^2 restricted to one side).
//!
//! Word syntax: letters separated by spaces, unitaries are NAME+digits with a
//! trailing '*' for the adjoint ("U1", "V1*"), anything else is a constant
//! symbol ("W"). Parenthesized groups give a multi-trace pattern; without
//! parentheses the whole word is one trace cycle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cumulant::CoeffRing;
use crate::error::{HwError, Result};
use crate::momentpoly::{Monomial, MomentPolynomial, Symbol};
use crate::partition::IntegerPartition;
use crate::perm::Permutation;
use crate::ratfun::RatFun;
use crate::weingarten::WgContext;

/// One letter of a word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Letter {
    Unitary { id: String, dagger: bool },
    Constant { id: String },
}

/// A word with a trace pattern over its letter positions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    letters: Vec<Letter>,
    pattern: Permutation,
}

impl Word {
    pub fn new(letters: Vec<Letter>, pattern: Permutation) -> Result<Self> {
        if pattern.degree() != letters.len() {
            return Err(HwError::Invalid(
                "trace pattern must permute the letter positions".into(),
            ));
        }
        Ok(Word { letters, pattern })
    }

    /// Single-trace word: the pattern is one full cycle over all letters.
    pub fn single_trace(letters: Vec<Letter>) -> Self {
        let n = letters.len();
        Word {
            letters,
            pattern: Permutation::full_cycle(n),
        }
    }

    /// Parse "U1 V1 U1* V1*" or "(U1 W)(U1* W)".
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.contains('(') {
            let mut letters = Vec::new();
            let mut cycles = Vec::new();
            let mut rest = text;
            while let Some(open) = rest.find('(') {
                let close = rest[open..]
                    .find(')')
                    .ok_or_else(|| HwError::Parse("unbalanced '('".into()))?
                    + open;
                let mut cycle = Vec::new();
                for tok in rest[open + 1..close].split_whitespace() {
                    cycle.push(letters.len());
                    letters.push(parse_letter(tok)?);
                }
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                rest = &rest[close + 1..];
            }
            let n = letters.len();
            let pattern = Permutation::from_cycles(n, &cycles)?;
            Word::new(letters, pattern)
        } else {
            let letters: Result<Vec<Letter>> =
                text.split_whitespace().map(parse_letter).collect();
            Ok(Word::single_trace(letters?))
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    /// Tensor two words side by side (independent trace groups).
    pub fn product(&self, other: &Word) -> Word {
        let shift = self.letters.len();
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        let mut cycles = self.pattern.cycles();
        for cyc in other.pattern.cycles() {
            cycles.push(cyc.into_iter().map(|p| p + shift).collect());
        }
        let pattern = Permutation::from_cycles(letters.len(), &cycles).expect("disjoint");
        Word { letters, pattern }
    }

    /// True when some unitary id appears with unequal +1 and -1 counts, which
    /// forces the expectation to vanish by scalar invariance of Haar measure.
    pub fn vanishes_by_invariance(&self) -> bool {
        let mut balance: BTreeMap<&str, i64> = BTreeMap::new();
        for l in &self.letters {
            if let Letter::Unitary { id, dagger } = l {
                *balance.entry(id).or_insert(0) += if *dagger { -1 } else { 1 };
            }
        }
        balance.values().any(|&v| v != 0)
    }
}

fn parse_letter(tok: &str) -> Result<Letter> {
    let (stem, dagger) = match tok.strip_suffix('*') {
        Some(s) => (s, true),
        None => (tok, false),
    };
    if stem.is_empty() {
        return Err(HwError::Parse(format!("bad letter {tok:?}")));
    }
    let is_unitary = stem.chars().next().unwrap().is_ascii_alphabetic()
        && stem.chars().any(|c| c.is_ascii_digit())
        && stem.chars().all(|c| c.is_ascii_alphanumeric());
    if is_unitary {
        Ok(Letter::Unitary {
            id: stem.to_string(),
            dagger,
        })
    } else if dagger {
        Err(HwError::Parse(format!(
            "'*' is only valid on unitary letters, got {tok:?}"
        )))
    } else {
        Ok(Letter::Constant {
            id: stem.to_string(),
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, cyc) in self.pattern.cycles().iter().enumerate() {
            if k > 0 || self.pattern.num_cycles() > 1 {
                write!(f, "(")?;
            }
            for (i, &p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                match &self.letters[p] {
                    Letter::Unitary { id, dagger } => {
                        write!(f, "{id}{}", if *dagger { "*" } else { "" })?
                    }
                    Letter::Constant { id } => write!(f, "{id}")?,
                }
            }
            if k > 0 || self.pattern.num_cycles() > 1 {
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

/// Trace of a cyclic product of constant symbols, canonicalized to the
/// lexicographically least rotation. The symbol for tr(W) is `tr(W)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TraceSym(Vec<String>);

impl TraceSym {
    pub fn new(word: Vec<String>) -> Self {
        if word.is_empty() {
            return TraceSym(word);
        }
        let n = word.len();
        let best = (0..n)
            .map(|r| {
                let mut w = word.clone();
                w.rotate_left(r);
                w
            })
            .min()
            .unwrap();
        TraceSym(best)
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }
}

impl Symbol for TraceSym {
    fn weight(&self) -> u32 {
        self.0.len() as u32
    }
    fn render(&self) -> String {
        format!("tr({})", self.0.join(" "))
    }
}

/// Symbolic word expectation: polynomial in trace symbols of the constants,
/// with rational-function-of-d coefficients.
pub type WordPolynomial = MomentPolynomial<TraceSym, RatFun>;

/// Dense square matrix over any commutative ring scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<T> {
    d: usize,
    data: Vec<T>,
}

impl<T: CoeffRing> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(HwError::DimensionMismatch("matrix must be square".into()));
        }
        Ok(Mat {
            d,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Mat {
            d,
            data: vec![T::zero(); d * d],
        };
        for i in 0..d {
            m.data[i * d + i] = T::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let d = entries.len();
        let mut m = Mat {
            d,
            data: vec![T::zero(); d * d],
        };
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * d + i] = e;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.d + j] = v;
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(HwError::DimensionMismatch(format!(
                "{} vs {}",
                self.d, other.d
            )));
        }
        let d = self.d;
        let mut out = Mat {
            d,
            data: vec![T::zero(); d * d],
        };
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a.clone() * other.get(k, j).clone());
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.d {
            t = t + self.get(i, i).clone();
        }
        t
    }

    /// Power k-th of the matrix (k >= 1).
    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }
}

/// Normalized-trace product over the cycles of alpha:
/// prod_cycles tr(M_{a1} M_{a2} ...) with tr = Tr/d.
pub fn bracket_eval(matrices: &[Mat<BigRational>], alpha: &Permutation) -> Result<BigRational> {
    if alpha.degree() != matrices.len() {
        return Err(HwError::DimensionMismatch(
            "pattern length differs from matrix count".into(),
        ));
    }
    let d = match matrices.first() {
        Some(m) => m.dim(),
        None => return Ok(BigRational::one()),
    };
    if matrices.iter().any(|m| m.dim() != d) {
        return Err(HwError::DimensionMismatch("mixed matrix sizes".into()));
    }
    let dd = BigRational::from_integer(BigInt::from(d as i64));
    let mut acc = BigRational::one();
    for cyc in alpha.cycles() {
        let mut prod = Mat::identity(d);
        for &p in &cyc {
            prod = prod.matmul(&matrices[p])?;
        }
        acc *= prod.trace() / &dd;
    }
    Ok(acc)
}

/// Index data of one entry-monomial integral over U(d):
/// integral of U_{i1 j1} ... U_{iq jq} conj(U_{i'1 j'1}) ... conj(U_{i'q' j'q'}).
/// Indices are 1-based and must lie in 1..=d.
#[derive(Clone, Debug)]
pub struct MonomialSpec {
    pub d: i64,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub i_prime: Vec<usize>,
    pub j_prime: Vec<usize>,
}

impl MonomialSpec {
    fn validate(&self) -> Result<()> {
        if self.i.len() != self.j.len() || self.i_prime.len() != self.j_prime.len() {
            return Err(HwError::Invalid(
                "row and column index lists must have matching lengths".into(),
            ));
        }
        for &v in self
            .i
            .iter()
            .chain(&self.j)
            .chain(&self.i_prime)
            .chain(&self.j_prime)
        {
            if v == 0 || v as i64 > self.d {
                return Err(HwError::IndexOutOfRange(v, self.d as usize));
            }
        }
        Ok(())
    }
}

/// The exact monomial integral: zero when q != q', otherwise
/// sum_{sigma,tau} [i = i' o sigma][j = j' o tau] Wg(d, sigma tau^{-1}).
pub fn monomial_integral(ctx: &mut WgContext, spec: &MonomialSpec) -> Result<BigRational> {
    spec.validate()?;
    let q = spec.i.len();
    if q != spec.i_prime.len() {
        return Ok(BigRational::zero());
    }
    if q == 0 {
        return Ok(BigRational::one());
    }
    if spec.d < q as i64 {
        return Err(HwError::OutOfStableRange {
            d: spec.d,
            q,
        });
    }
    let perms = Permutation::all(q);
    let mut matches_rows = Vec::new();
    let mut matches_cols = Vec::new();
    for p in &perms {
        if (0..q).all(|a| spec.i[a] == spec.i_prime[p.apply(a)]) {
            matches_rows.push(p.clone());
        }
        if (0..q).all(|a| spec.j[a] == spec.j_prime[p.apply(a)]) {
            matches_cols.push(p.clone());
        }
    }
    let mut acc = BigRational::zero();
    for sigma in &matches_rows {
        for tau in &matches_cols {
            let rho = sigma.compose(&tau.inverse());
            acc += ctx.wg(&rho, spec.d)?;
        }
    }
    Ok(acc)
}

/// The eval positions of a word in normal form: each unitary occurrence with
/// the constant prefix read since the previous unitary in its trace cycle.
struct NormalForm {
    /// (unitary id, dagger, constant ids preceding it in cycle order)
    positions: Vec<(String, bool, Vec<String>)>,
    alpha: Permutation,
    /// trace factors of cycles containing no unitary at all
    constant_cycles: Vec<Vec<String>>,
}

fn normal_form(word: &Word) -> Result<NormalForm> {
    let mut positions: Vec<(String, bool, Vec<String>)> = Vec::new();
    let mut alpha_cycles: Vec<Vec<usize>> = Vec::new();
    let mut constant_cycles = Vec::new();
    for cyc in word.pattern.cycles() {
        let unitary_slots: Vec<usize> = cyc
            .iter()
            .enumerate()
            .filter(|(_, &p)| matches!(word.letters[p], Letter::Unitary { .. }))
            .map(|(k, _)| k)
            .collect();
        if unitary_slots.is_empty() {
            let consts = cyc
                .iter()
                .map(|&p| match &word.letters[p] {
                    Letter::Constant { id } => id.clone(),
                    _ => unreachable!(),
                })
                .collect();
            constant_cycles.push(consts);
            continue;
        }
        let m = unitary_slots.len();
        let base = positions.len();
        for (t, &slot) in unitary_slots.iter().enumerate() {
            let prev_slot = unitary_slots[(t + m - 1) % m];
            // constants strictly between the previous unitary and this one,
            // walking the cycle forward (cyclically)
            let mut consts = Vec::new();
            let mut k = (prev_slot + 1) % cyc.len();
            while k != slot {
                if let Letter::Constant { id } = &word.letters[cyc[k]] {
                    consts.push(id.clone());
                }
                k = (k + 1) % cyc.len();
            }
            let Letter::Unitary { id, dagger } = &word.letters[cyc[slot]] else {
                unreachable!()
            };
            positions.push((id.clone(), *dagger, consts));
        }
        alpha_cycles.push((base..base + m).collect());
    }
    let n = positions.len();
    let alpha = Permutation::from_cycles(n, &alpha_cycles)?;
    Ok(NormalForm {
        positions,
        alpha,
        constant_cycles,
    })
}

/// All permutations exchanging the two occurrence sets of one unitary id:
/// a bijection plus->minus together with a bijection minus->plus.
fn swap_family(n: usize, plus: &[usize], minus: &[usize]) -> Vec<Permutation> {
    let m = plus.len();
    let perms = Permutation::all(m);
    let mut out = Vec::with_capacity(perms.len() * perms.len());
    for f in &perms {
        for g in &perms {
            let mut images: Vec<usize> = (0..n).collect();
            for (a, &p) in plus.iter().enumerate() {
                images[p] = minus[f.apply(a)];
            }
            for (b, &mpos) in minus.iter().enumerate() {
                images[mpos] = plus[g.apply(b)];
            }
            out.push(Permutation::from_images(images).expect("bijection"));
        }
    }
    out
}

/// Cycle type of xi^2 restricted to the plus side (the Weingarten argument).
fn wg_tilde_type(xi: &Permutation, plus: &[usize]) -> IntegerPartition {
    let sq = xi.compose(xi);
    sq.restrict(plus)
        .expect("xi^2 stabilizes the plus side")
        .cycle_type()
}

/// Symbolic word expectation with d kept as a symbol; constants stay as trace
/// symbols. Returns the zero polynomial when invariance forces vanishing.
pub fn word_expectation(ctx: &mut WgContext, word: &Word) -> Result<WordPolynomial> {
    if word.vanishes_by_invariance() {
        return Ok(WordPolynomial::zero());
    }
    let nf = normal_form(word)?;
    let n = nf.positions.len();

    let mut prefactor = Monomial::unit();
    for c in &nf.constant_cycles {
        prefactor = prefactor.merge(&Monomial::from_symbols(vec![TraceSym::new(c.clone())]));
    }
    if n == 0 {
        return Ok(WordPolynomial::monomial(prefactor, RatFun::one()));
    }

    // group positions per unitary id
    let mut families: BTreeMap<String, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (pos, (id, dagger, _)) in nf.positions.iter().enumerate() {
        let entry = families.entry(id.clone()).or_default();
        if *dagger {
            entry.1.push(pos);
        } else {
            entry.0.push(pos);
        }
    }
    let family_swaps: Vec<(Vec<usize>, Vec<Permutation>)> = families
        .values()
        .map(|(plus, minus)| (plus.clone(), swap_family(n, plus, minus)))
        .collect();

    // precompute the Weingarten type of xi^2 per family member once
    let family_data: Vec<Vec<(Permutation, IntegerPartition)>> = family_swaps
        .iter()
        .map(|(plus, swaps)| {
            swaps
                .iter()
                .map(|xi| (xi.clone(), wg_tilde_type(xi, plus)))
                .collect()
        })
        .collect();

    // group the combination sum by (bracket monomial, multiset of Weingarten
    // types, d power): the expensive rational-function arithmetic then runs
    // once per distinct key instead of once per combination
    let alpha_norm = nf.alpha.norm() as i64;
    type GroupKey = (Monomial<TraceSym>, Vec<IntegerPartition>, i64);
    let mut groups: HashMap<GroupKey, u64> = HashMap::new();
    let mut choice = vec![0usize; family_data.len()];
    loop {
        let mut beta = nf.alpha.clone();
        let mut wg_types: Vec<IntegerPartition> = Vec::with_capacity(family_data.len());
        for (fi, members) in family_data.iter().enumerate() {
            let (xi, ctype) = &members[choice[fi]];
            beta = beta.compose(xi);
            wg_types.push(ctype.clone());
        }
        wg_types.sort();
        let power = alpha_norm - beta.norm() as i64;
        // bracket of the constant prefixes along the cycles of beta
        let mut mono = prefactor.clone();
        for cyc in beta.cycles() {
            let mut wordv: Vec<String> = Vec::new();
            for &p in &cyc {
                wordv.extend(nf.positions[p].2.iter().cloned());
            }
            if !wordv.is_empty() {
                mono = mono.merge(&Monomial::from_symbols(vec![TraceSym::new(wordv)]));
            }
        }
        *groups.entry((mono, wg_types, power)).or_insert(0) += 1;

        // advance the mixed-radix choice vector
        let mut fi = 0;
        loop {
            if fi == family_data.len() {
                let mut acc = WordPolynomial::zero();
                for ((mono, wg_types, power), count) in groups {
                    let mut coeff = RatFun::from_rational(&BigRational::from_integer(
                        BigInt::from(count),
                    ));
                    for t in &wg_types {
                        coeff = coeff * ctx.wg_ratfun_by_type(t)?;
                    }
                    acc.add_term(mono, coeff.mul_power(power));
                }
                return Ok(acc);
            }
            choice[fi] += 1;
            if choice[fi] < family_data[fi].len() {
                break;
            }
            choice[fi] = 0;
            fi += 1;
        }
    }
}

/// Word expectation with concrete constant matrices at integer dimension d.
pub fn word_expectation_concrete(
    ctx: &mut WgContext,
    word: &Word,
    constants: &HashMap<String, Mat<BigRational>>,
    d: i64,
) -> Result<BigRational> {
    let poly = word_expectation(ctx, word)?;
    let dd = BigRational::from_integer(BigInt::from(d));
    let mut total = BigRational::zero();
    for (mono, coeff) in poly.terms() {
        let mut v = coeff.eval(d)?;
        for sym in mono.symbols() {
            let mut prod = Mat::identity(d as usize);
            for id in sym.letters() {
                let m = constants.get(id).ok_or_else(|| {
                    HwError::MissingMoment(vec![])
                })?;
                if m.dim() != d as usize {
                    return Err(HwError::DimensionMismatch(format!(
                        "constant {id} has size {} but d = {d}",
                        m.dim()
                    )));
                }
                prod = prod.matmul(m)?;
            }
            v *= prod.trace() / &dd;
        }
        total += v;
    }
    Ok(total)
}

/// Evaluate a symbolic word polynomial against a moment assignment for the
/// trace symbols, keeping d symbolic.
pub fn evaluate_symbolic(
    poly: &WordPolynomial,
    assign: &impl Fn(&TraceSym) -> Option<BigRational>,
) -> Result<RatFun> {
    let mut total = RatFun::zero();
    for (mono, coeff) in poly.terms() {
        let mut v = coeff.clone();
        for sym in mono.symbols() {
            let m = assign(sym).ok_or_else(|| {
                HwError::MissingMoment(sym.letters().iter().map(|_| 0).collect())
            })?;
            v = v * RatFun::from_rational(&m);
        }
        total = total + v;
    }
    Ok(total)
}

/// E(w1 w2) - E(w1) E(w2) as a polynomial in trace symbols with
/// rational-function coefficients; degree must be <= -2 for balanced words.
pub fn exact_covariance(ctx: &mut WgContext, w1: &Word, w2: &Word) -> Result<WordPolynomial> {
    let joint = word_expectation(ctx, &w1.product(w2))?;
    let e1 = word_expectation(ctx, w1)?;
    let e2 = word_expectation(ctx, w2)?;
    Ok(joint - e1 * e2)
}

/// Largest coefficient degree appearing in a word polynomial (None for zero).
pub fn polynomial_degree(poly: &WordPolynomial) -> Option<i64> {
    poly.terms().filter_map(|(_, c)| c.degree()).max()
}

/// Expectation of a word in which the listed constant ids are replaced by
/// their centered versions W - tr(W) I: expands multilinearly, each removal
/// contributing a factor -tr(W).
pub fn freeness_defect(
    ctx: &mut WgContext,
    word: &Word,
    centered: &[&str],
) -> Result<WordPolynomial> {
    let centered_positions: Vec<usize> = word
        .letters
        .iter()
        .enumerate()
        .filter(|(_, l)| matches!(l, Letter::Constant { id } if centered.contains(&id.as_str())))
        .map(|(p, _)| p)
        .collect();
    let mut acc = WordPolynomial::zero();
    for mask in 0..(1u32 << centered_positions.len()) {
        let removed: Vec<usize> = centered_positions
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        // rebuild the word without the removed letters
        let mut keep_index = vec![usize::MAX; word.letters.len()];
        let mut letters = Vec::new();
        for (p, l) in word.letters.iter().enumerate() {
            if !removed.contains(&p) {
                keep_index[p] = letters.len();
                letters.push(l.clone());
            }
        }
        let mut cycles = Vec::new();
        for cyc in word.pattern.cycles() {
            let newcyc: Vec<usize> = cyc
                .iter()
                .filter(|&&p| keep_index[p] != usize::MAX)
                .map(|&p| keep_index[p])
                .collect();
            if !newcyc.is_empty() {
                cycles.push(newcyc);
            }
        }
        let sub = Word::new(
            letters.clone(),
            Permutation::from_cycles(letters.len(), &cycles)?,
        )?;
        let mut term = word_expectation(ctx, &sub)?;
        for &p in &removed {
            let Letter::Constant { id } = &word.letters[p] else {
                unreachable!()
            };
            let sym = TraceSym::new(vec![id.clone()]);
            term = term
                * WordPolynomial::monomial(
                    Monomial::from_symbols(vec![sym]),
                    -RatFun::one(),
                );
        }
        acc = acc + term;
    }
    Ok(acc)
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

    fn constant_poly(word: &str, ctx: &mut WgContext) -> RatFun {
        let w = Word::parse(word).unwrap();
        let poly = word_expectation(ctx, &w).unwrap();
        if poly.is_zero() {
            return RatFun::zero();
        }
        assert_eq!(poly.num_terms(), 1, "expected constant-only word result");
        poly.coefficient(&Monomial::unit())
    }

    #[test]
    fn parse_words() {
        let w = Word::parse("U1 V1 U1* V1*").unwrap();
        assert_eq!(w.letters().len(), 4);
        assert!(!w.vanishes_by_invariance());
        let w2 = Word::parse("W U1 W U1*").unwrap();
        assert!(matches!(&w2.letters()[0], Letter::Constant { id } if id == "W"));
        let unbalanced = Word::parse("U1 V1").unwrap();
        assert!(unbalanced.vanishes_by_invariance());
        assert!(Word::parse("W*").is_err());
    }

    #[test]
    fn commutator_trace_is_d_minus_2() {
        let mut ctx = WgContext::new();
        assert_eq!(
            constant_poly("U1 V1 U1* V1*", &mut ctx),
            rf(&[1], &[0, 0, 1])
        );
    }

    #[test]
    fn conjugation_returns_trace() {
        // E tr(U W U*) = tr(W)
        let mut ctx = WgContext::new();
        let w = Word::parse("U1 W U1*").unwrap();
        let poly = word_expectation(&mut ctx, &w).unwrap();
        assert_eq!(poly.num_terms(), 1);
        let sym = TraceSym::new(vec!["W".into()]);
        assert_eq!(
            poly.coefficient(&Monomial::from_symbols(vec![sym])),
            RatFun::one()
        );
    }

    #[test]
    fn bracket_eval_cases() {
        let a = Mat::diagonal(vec![q(1, 1), q(2, 1)]);
        let b = Mat::diagonal(vec![q(3, 1), q(5, 1)]);
        // identity pattern: tr(A) tr(B)
        let id = Permutation::identity(2);
        assert_eq!(
            bracket_eval(&[a.clone(), b.clone()], &id).unwrap(),
            q(3, 2) * q(4, 1)
        );
        // transposition: tr(AB)
        let t = Permutation::parse(2, "(1 2)").unwrap();
        assert_eq!(bracket_eval(&[a, b], &t).unwrap(), q(13, 2));
        // identity matrices under a 3-cycle: 1
        let i3 = Mat::<BigRational>::identity(3);
        let c = Permutation::parse(3, "(1 2 3)").unwrap();
        assert_eq!(
            bracket_eval(&[i3.clone(), i3.clone(), i3], &c).unwrap(),
            q(1, 1)
        );
    }

    #[test]
    fn monomial_integral_examples() {
        let mut ctx = WgContext::new();
        // |U_11|^2 -> 1/d
        for d in 1..=5i64 {
            let spec = MonomialSpec {
                d,
                i: vec![1],
                j: vec![1],
                i_prime: vec![1],
                j_prime: vec![1],
            };
            assert_eq!(monomial_integral(&mut ctx, &spec).unwrap(), q(1, d));
        }
        // |U_11|^2 |U_22|^2 -> 1/(d^2-1)
        let spec = MonomialSpec {
            d: 3,
            i: vec![1, 2],
            j: vec![1, 2],
            i_prime: vec![1, 2],
            j_prime: vec![1, 2],
        };
        assert_eq!(monomial_integral(&mut ctx, &spec).unwrap(), q(1, 8));
        // |U_11|^4 -> 2/(d(d+1))
        let spec = MonomialSpec {
            d: 3,
            i: vec![1, 1],
            j: vec![1, 1],
            i_prime: vec![1, 1],
            j_prime: vec![1, 1],
        };
        assert_eq!(monomial_integral(&mut ctx, &spec).unwrap(), q(1, 6));
        // q != q' vanishes
        let spec = MonomialSpec {
            d: 3,
            i: vec![1, 1],
            j: vec![1, 1],
            i_prime: vec![1],
            j_prime: vec![1],
        };
        assert_eq!(monomial_integral(&mut ctx, &spec).unwrap(), q(0, 1));
    }

    #[test]
    fn unbalanced_word_vanishes() {
        let mut ctx = WgContext::new();
        assert!(constant_poly("U1 V1", &mut ctx).is_zero());
    }

    #[test]
    fn multi_trace_pattern_parses() {
        let w = Word::parse("(U1 W)(U1* W)").unwrap();
        assert_eq!(w.pattern().num_cycles(), 2);
        assert_eq!(w.to_string(), "(U1 W)(U1* W)");
    }
}
