//! Dimension polynomials s_{lambda,d}(1) of irreducible U(d) representations.
//!
//! Two independent routes are provided: the power-sum/character average
//! (1/q!) sum_{mu |- q} Z_mu chi^lambda(mu) d^{c(mu)}, and the hook-content
//! product prod_{(i,j)} (d + j - i) / h(i,j). They must agree coefficient by
//! coefficient; the character route is the one the Weingarten sum uses.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::character::{hook_product, CharacterTable};
use crate::error::Result;
use crate::partition::{factorial_u64, IntegerPartition};
use crate::poly::PolyZ;
use crate::ratfun::RatFun;

/// s_{lambda,d}(1) as a polynomial in d via characters and class sizes.
pub fn schur_dimension_poly(
    table: &mut CharacterTable,
    lambda: &IntegerPartition,
) -> Result<RatFun> {
    let q = lambda.weight();
    let mut num = PolyZ::zero();
    for mu in IntegerPartition::enumerate(q) {
        let chi = table.character(lambda, &mu)?;
        let z = mu.class_size();
        let power = mu.num_parts(); // q - |mu|
        let coeff = BigInt::from(chi) * BigInt::from(z);
        num = num.add(&PolyZ::monomial(coeff, power));
    }
    RatFun::new(num, PolyZ::constant(BigInt::from(factorial_u64(q as u64))))
}

/// s_{lambda,d}(1) via the hook-content formula.
pub fn schur_dimension_hook_content(lambda: &IntegerPartition) -> RatFun {
    let mut num = PolyZ::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let content = j as i64 - i as i64;
            num = num.mul(&PolyZ::from_i64s(&[content, 1]));
        }
    }
    let den = PolyZ::constant(BigInt::from(hook_product(lambda)));
    RatFun::new(num, den).expect("hook product is positive")
}

/// Exact value of the dimension polynomial at integer d.
pub fn schur_dimension_at(
    table: &mut CharacterTable,
    lambda: &IntegerPartition,
    d: i64,
) -> Result<BigRational> {
    schur_dimension_poly(table, lambda)?.eval(d)
}
