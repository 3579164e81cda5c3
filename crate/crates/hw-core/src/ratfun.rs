//! Reduced rational functions of the dimension symbol d.
//!
//! Canonical form: numerator and denominator are integer polynomials with no
//! common polynomial factor, their integer contents are coprime, and the
//! denominator has a positive leading coefficient. Equality of canonical
//! forms is structural equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HwError, Result};
use crate::poly::PolyZ;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: PolyZ,
    den: PolyZ,
}

impl RatFun {
    pub fn new(num: PolyZ, den: PolyZ) -> Result<Self> {
        if den.is_zero() {
            return Err(HwError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: PolyZ, den: PolyZ) -> Self {
        if num.is_zero() {
            return RatFun {
                num: PolyZ::zero(),
                den: PolyZ::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let cn = num.content();
        let cd = den.content();
        let c = cn.gcd(&cd);
        if !c.is_one() {
            num = num.div_exact(&PolyZ::constant(c.clone()));
            den = den.div_exact(&PolyZ::constant(c));
        }
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun {
            num: PolyZ::zero(),
            den: PolyZ::one(),
        }
    }

    pub fn one() -> Self {
        RatFun {
            num: PolyZ::one(),
            den: PolyZ::one(),
        }
    }

    pub fn var() -> Self {
        RatFun {
            num: PolyZ::var(),
            den: PolyZ::one(),
        }
    }

    pub fn from_poly(p: PolyZ) -> Self {
        RatFun {
            num: p,
            den: PolyZ::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(PolyZ::constant(BigInt::from(n)))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::reduced(
            PolyZ::constant(r.numer().clone()),
            PolyZ::constant(r.denom().clone()),
        )
    }

    /// c * d^k for integer k (negative k puts the power in the denominator).
    pub fn monomial(c: BigRational, k: i64) -> Self {
        let base = Self::from_rational(&c);
        if k >= 0 {
            base * Self::from_poly(PolyZ::monomial(BigInt::one(), k as usize))
        } else {
            base / Self::from_poly(PolyZ::monomial(BigInt::one(), (-k) as usize))
        }
    }

    pub fn num(&self) -> &PolyZ {
        &self.num
    }

    pub fn den(&self) -> &PolyZ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// deg(num) - deg(den); None for the zero function.
    pub fn degree(&self) -> Option<i64> {
        self.num
            .degree()
            .map(|n| n as i64 - self.den.degree().unwrap() as i64)
    }

    /// Ratio of leading coefficients: the limit of f(d)/d^degree as d -> oo.
    pub fn leading_coefficient(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(self.num.leading(), self.den.leading())
    }

    /// Constant term of the Laurent expansion at d = oo (requires degree <= 0).
    pub fn limit_at_infinity(&self) -> Result<BigRational> {
        match self.degree() {
            None => Ok(BigRational::zero()),
            Some(deg) if deg < 0 => Ok(BigRational::zero()),
            Some(0) => Ok(self.leading_coefficient()),
            Some(deg) => Err(HwError::PositiveDegree(deg)),
        }
    }

    pub fn eval(&self, d: i64) -> Result<BigRational> {
        let x = BigInt::from(d);
        let den = self.den.eval_int(&x);
        if den.is_zero() {
            return Err(HwError::PoleAt(d));
        }
        Ok(BigRational::new(self.num.eval_int(&x), den))
    }

    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        let den = self.den.eval_rational(x);
        if den.is_zero() {
            return Err(HwError::PoleAt(0));
        }
        Ok(self.num.eval_rational(x) / den)
    }

    /// f(-d) in canonical form.
    pub fn substitute_neg(&self) -> Self {
        Self::reduced(self.num.substitute_neg(), self.den.substitute_neg())
    }

    pub fn is_even(&self) -> bool {
        self.substitute_neg() == *self
    }

    /// Division that reports a zero divisor instead of panicking.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(HwError::DivisionByZero);
        }
        Ok(Self::reduced(
            self.num.mul(&rhs.den),
            self.den.mul(&rhs.num),
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(HwError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// Multiply by d^k, k of either sign.
    pub fn mul_power(&self, k: i64) -> Self {
        if k >= 0 {
            Self::reduced(self.num.shift(k as usize), self.den.clone())
        } else {
            Self::reduced(self.num.clone(), self.den.shift((-k) as usize))
        }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        &self - &rhs
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::reduced(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for RatFun {
    type Output = RatFun;
    fn div(self, rhs: RatFun) -> RatFun {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFun::reduced(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl num_traits::Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl num_traits::One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.leading().is_one() {
            return write!(f, "{}", self.num);
        }
        // pure monomial ratio prints Laurent style, e.g. d^-2 or 2d^-2
        let num_mono = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        let den_mono = self.den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
            && self.den.leading().is_one();
        if num_mono && den_mono {
            let k = self.num.degree().unwrap() as i64 - self.den.degree().unwrap() as i64;
            let c = self.num.leading();
            if k == 0 {
                return write!(f, "{c}");
            }
            if c.is_one() {
                return write!(f, "d^{k}");
            }
            if (-&c).is_one() {
                return write!(f, "-d^{k}");
            }
            return write!(f, "{c}d^{k}");
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// JSON encoding {"num":[c0,c1,...],"den":[...]} with coefficients rendered
/// as decimal numerals of arbitrary precision.
pub fn ratfun_to_json(f: &RatFun) -> serde_json::Value {
    let enc = |p: &PolyZ| -> serde_json::Value {
        let arr: Vec<serde_json::Value> = if p.is_zero() {
            vec![big_to_json(&BigInt::zero())]
        } else {
            p.coeffs().iter().map(big_to_json).collect()
        };
        serde_json::Value::Array(arr)
    };
    let mut map = serde_json::Map::new();
    map.insert("num".into(), enc(f.num()));
    map.insert("den".into(), enc(f.den()));
    serde_json::Value::Object(map)
}

pub fn ratfun_from_json(v: &serde_json::Value) -> Result<RatFun> {
    let arr = |key: &str| -> Result<PolyZ> {
        let a = v
            .get(key)
            .and_then(|x| x.as_array())
            .ok_or_else(|| HwError::Parse(format!("missing array {key:?}")))?;
        let mut coeffs = Vec::with_capacity(a.len());
        for item in a {
            let text = match item {
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::String(s) => s.clone(),
                _ => return Err(HwError::Parse("coefficient must be a number".into())),
            };
            let c = BigInt::from_str(&text)
                .map_err(|_| HwError::Parse(format!("bad integer {text:?}")))?;
            coeffs.push(c);
        }
        Ok(PolyZ::from_coeffs(coeffs))
    };
    RatFun::new(arr("num")?, arr("den")?)
}

pub fn big_to_json(n: &BigInt) -> serde_json::Value {
    serde_json::from_str(&n.to_string()).expect("decimal numeral is valid JSON")
}
