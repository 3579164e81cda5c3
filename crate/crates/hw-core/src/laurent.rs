//! Laurent expansion at d = infinity: a degree <= 0 rational function of d
//! expands as sum_{k >= k0} c_k d^{-k}. Coefficients are exact rationals and
//! the series is truncated at an explicit order.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{HwError, Result};
use crate::ratfun::RatFun;

/// sum of coeffs`[i]` * d^{-(leading + i)} for i = 0..len, truncated so that
/// every power d^{-k} with k <= trunc is exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries {
    leading: i64,
    coeffs: Vec<BigRational>,
    trunc: i64,
}

impl LaurentSeries {
    pub fn zero(trunc: i64) -> Self {
        LaurentSeries {
            leading: trunc + 1,
            coeffs: vec![],
            trunc,
        }
    }

    pub fn from_coeffs(leading: i64, coeffs: Vec<BigRational>, trunc: i64) -> Self {
        let mut s = LaurentSeries {
            leading,
            coeffs,
            trunc,
        };
        s.normalize();
        s
    }

    /// c * d^{-k} seen exactly up to order trunc.
    pub fn monomial(c: BigRational, k: i64, trunc: i64) -> Self {
        if k > trunc || c.is_zero() {
            return Self::zero(trunc);
        }
        Self::from_coeffs(k, vec![c], trunc)
    }

    fn normalize(&mut self) {
        let max_len = (self.trunc - self.leading + 1).max(0) as usize;
        self.coeffs.truncate(max_len);
        while self.coeffs.first().is_some_and(|c| c.is_zero()) {
            self.coeffs.remove(0);
            self.leading += 1;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.leading = self.trunc + 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of 1/d at which the series starts.
    pub fn leading_exponent(&self) -> i64 {
        self.leading
    }

    pub fn truncation_order(&self) -> i64 {
        self.trunc
    }

    /// Coefficient of d^{-k}; zero outside the stored window.
    pub fn coefficient(&self, k: i64) -> BigRational {
        if k < self.leading {
            return BigRational::zero();
        }
        let idx = (k - self.leading) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Contiguous coefficients from the leading exponent.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, d: &BigRational) -> BigRational {
        let inv = d.recip();
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &inv + c;
        }
        let mut scale = BigRational::from_integer(1.into());
        for _ in 0..self.leading.abs() {
            if self.leading >= 0 {
                scale *= &inv;
            } else {
                scale *= d;
            }
        }
        acc * scale
    }

    /// Reassemble the truncated series as an exact rational function of d.
    pub fn to_ratfun(&self) -> RatFun {
        let mut acc = RatFun::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = acc + RatFun::monomial(c.clone(), -(self.leading + i as i64));
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        Self::from_coeffs(
            self.leading,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.trunc,
        )
    }

    /// Shift by d^{-k} (k may be negative): multiplies every term.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_coeffs(self.leading + k, self.coeffs.clone(), self.trunc + k)
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let leading = self.leading.min(rhs.leading).min(trunc + 1);
        let len = (trunc - leading + 1).max(0) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let k = leading + i as i64;
            *c = self.coefficient(k) + rhs.coefficient(k);
        }
        LaurentSeries::from_coeffs(leading, coeffs, trunc)
    }
}

impl Add for LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: LaurentSeries) -> LaurentSeries {
        &self + &rhs
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs.clone())
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(mut self) -> LaurentSeries {
        for c in &mut self.coeffs {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        // order of the product error term: a term of one factor beyond its
        // truncation multiplies at best the other factor's leading term
        let trunc = (self.trunc + rhs.leading).min(rhs.trunc + self.leading);
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero(trunc);
        }
        let leading = self.leading + rhs.leading;
        let len = (trunc - leading + 1).max(0) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentSeries::from_coeffs(leading, coeffs, trunc)
    }
}

impl Mul for LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: LaurentSeries) -> LaurentSeries {
        &self * &rhs
    }
}

/// Expand a degree <= 0 rational function in powers of 1/d, exactly through
/// the coefficient of d^{-order}.
pub fn laurent_expand(f: &RatFun, order: i64) -> Result<LaurentSeries> {
    if f.is_zero() {
        return Ok(LaurentSeries::zero(order));
    }
    let deg = f.degree().unwrap();
    if deg > 0 {
        return Err(HwError::PositiveDegree(deg));
    }
    let n = f.num().degree().unwrap();
    let m = f.den().degree().unwrap();
    let start = -deg; // leading exponent m - n
    if order < start {
        return Ok(LaurentSeries::zero(order));
    }
    // substitute d = 1/t: f = t^{m-n} rev(num)(t) / rev(den)(t), rev(den)(0) != 0
    let rev = |p: &crate::poly::PolyZ, d: usize| -> Vec<BigRational> {
        (0..=d)
            .map(|i| BigRational::from_integer(p.coeff(d - i)))
            .collect()
    };
    let num_rev = rev(f.num(), n);
    let den_rev = rev(f.den(), m);
    let terms = (order - start) as usize + 1;
    // power series division num_rev / den_rev to `terms` coefficients
    let inv0 = den_rev[0].clone().recip();
    let mut quot: Vec<BigRational> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = if k < num_rev.len() {
            num_rev[k].clone()
        } else {
            BigRational::zero()
        };
        for j in 1..=k.min(den_rev.len() - 1) {
            acc -= &den_rev[j] * &quot[k - j];
        }
        quot.push(acc * &inv0);
    }
    Ok(LaurentSeries::from_coeffs(start, quot, order))
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
    fn geometric_series() {
        // 1/(d^2-1) = d^-2 + d^-4 + d^-6 + ...
        let s = laurent_expand(&rf(&[1], &[-1, 0, 1]), 6).unwrap();
        assert_eq!(s.leading_exponent(), 2);
        assert_eq!(s.coefficient(2), q(1, 1));
        assert_eq!(s.coefficient(3), q(0, 1));
        assert_eq!(s.coefficient(4), q(1, 1));
        assert_eq!(s.coefficient(6), q(1, 1));
    }

    #[test]
    fn weingarten_transposition_series() {
        // -1/(d^3-d) = -d^-3 - d^-5 - d^-7 - ...
        let s = laurent_expand(&rf(&[-1], &[0, -1, 0, 1]), 7).unwrap();
        assert_eq!(s.leading_exponent(), 3);
        for (k, v) in [(3, -1), (4, 0), (5, -1), (6, 0), (7, -1)] {
            assert_eq!(s.coefficient(k), q(v, 1), "k = {k}");
        }
    }

    #[test]
    fn one_over_d() {
        let s = laurent_expand(&rf(&[1], &[0, 1]), 3).unwrap();
        assert_eq!(s.coefficient(1), q(1, 1));
        assert_eq!(s.coefficient(2), q(0, 1));
        assert_eq!(s.coefficient(3), q(0, 1));
    }

    #[test]
    fn positive_degree_rejected() {
        assert!(laurent_expand(&rf(&[0, 1], &[1]), 3).is_err());
    }

    #[test]
    fn remainder_degree_bound() {
        // reconstructing the truncation and subtracting leaves degree < -order
        let f = rf(&[3, 0, -1], &[1, 2, 0, 0, 5]);
        let order = 9;
        let s = laurent_expand(&f, order).unwrap();
        let remainder = &f - &s.to_ratfun();
        assert!(remainder.degree().unwrap() < -order);
    }

    #[test]
    fn series_product_matches_function_product() {
        let f = rf(&[1], &[-1, 0, 1]);
        let g = rf(&[-1], &[0, -1, 0, 1]);
        let sf = laurent_expand(&f, 12).unwrap();
        let sg = laurent_expand(&g, 12).unwrap();
        let prod = &sf * &sg;
        let direct = laurent_expand(&(&f * &g), prod.truncation_order()).unwrap();
        assert_eq!(prod, direct);
    }
}
