//! Classical and relative cumulants over the set partition lattice, generic
//! in the coefficient ring so the same Moebius engine serves exact rationals,
//! rational functions of d, and moment polynomials.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::Result;
use crate::setpart::SetPartition;

/// Commutative ring bound for generic cumulant arithmetic.
pub trait CoeffRing:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> CoeffRing for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// Embed a small integer into any coefficient ring.
pub fn ring_int<R: CoeffRing>(n: i64) -> R {
    let neg = n < 0;
    let mut n = n.unsigned_abs();
    let mut acc = R::zero();
    let mut power = R::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + power.clone();
        }
        n >>= 1;
        if n > 0 {
            power = power.clone() + power;
        }
    }
    if neg {
        -acc
    } else {
        acc
    }
}

/// Assigns a ring value to each block that can arise in a lattice interval.
/// Blocks arrive as sorted 0-based point lists.
pub trait MomentAssignment<R> {
    fn block_moment(&self, block: &[usize]) -> Result<R>;
}

impl<R, F> MomentAssignment<R> for F
where
    F: Fn(&[usize]) -> Result<R>,
{
    fn block_moment(&self, block: &[usize]) -> Result<R> {
        self(block)
    }
}

/// E_Pi(m) = product over blocks of the block moment.
pub fn e_pi<R: CoeffRing>(pi: &SetPartition, m: &impl MomentAssignment<R>) -> Result<R> {
    let mut acc = R::one();
    for block in pi.blocks() {
        acc = acc * m.block_moment(&block)?;
    }
    Ok(acc)
}

/// C_Pi = sum_{Pi' <= Pi} E_{Pi'}(m) Moeb(Pi', Pi).
pub fn classical_cumulant<R: CoeffRing>(
    pi: &SetPartition,
    m: &impl MomentAssignment<R>,
) -> Result<R> {
    let bottom = SetPartition::discrete(pi.size());
    relative_cumulant(&bottom, pi, m)
}

/// The cumulant of order q, C_{1_q}.
pub fn cumulant<R: CoeffRing>(q: usize, m: &impl MomentAssignment<R>) -> Result<R> {
    classical_cumulant(&SetPartition::full(q), m)
}

/// C_{Pi1,Pi2} = sum_{Pi1 <= Pi <= Pi2} E_Pi(m) Moeb(Pi, Pi2).
pub fn relative_cumulant<R: CoeffRing>(
    lower: &SetPartition,
    upper: &SetPartition,
    m: &impl MomentAssignment<R>,
) -> Result<R> {
    let mut acc = R::zero();
    for pi in lower.interval_to(upper)? {
        let weight = pi.moebius(upper)?;
        acc = acc + e_pi(&pi, m)? * ring_int::<R>(weight);
    }
    Ok(acc)
}

/// Moebius inversion in the other direction:
/// E_{Pi2} = sum_{Pi1 <= Pi <= Pi2} C_{Pi1,Pi}. Used by tests as the
/// reconstruction identity.
pub fn moments_from_relative_cumulants<R: CoeffRing>(
    lower: &SetPartition,
    upper: &SetPartition,
    m: &impl MomentAssignment<R>,
) -> Result<R> {
    let mut acc = R::zero();
    for pi in lower.interval_to(upper)? {
        acc = acc + relative_cumulant(lower, &pi, m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Single random variable with prescribed power moments m[k].
    struct Powers(Vec<BigRational>);

    impl MomentAssignment<BigRational> for Powers {
        fn block_moment(&self, block: &[usize]) -> Result<BigRational> {
            Ok(self.0[block.len() - 1].clone())
        }
    }

    #[test]
    fn first_cumulant_is_mean() {
        let m = Powers(vec![q(7, 2)]);
        assert_eq!(cumulant(1, &m).unwrap(), q(7, 2));
    }

    #[test]
    fn second_cumulant_is_variance() {
        let m = Powers(vec![q(1, 3), q(2, 1)]);
        // E(A^2) - E(A)^2
        assert_eq!(cumulant(2, &m).unwrap(), q(2, 1) - q(1, 9));
    }

    #[test]
    fn third_cumulant_formula() {
        let m1 = q(1, 2);
        let m2 = q(5, 3);
        let m3 = q(-7, 4);
        let m = Powers(vec![m1.clone(), m2.clone(), m3.clone()]);
        let expect = m3 - q(3, 1) * &m2 * &m1 + q(2, 1) * &m1 * &m1 * &m1;
        assert_eq!(cumulant(3, &m).unwrap(), expect);
    }

    #[test]
    fn e_pi_cases() {
        let m = Powers(vec![q(3, 1), q(10, 1)]);
        assert_eq!(
            e_pi(&SetPartition::full(2), &m).unwrap(),
            q(10, 1)
        );
        assert_eq!(
            e_pi(&SetPartition::discrete(2), &m).unwrap(),
            q(9, 1)
        );
    }

    #[test]
    fn relative_cumulant_interval_cases() {
        let m = Powers(vec![q(2, 1), q(11, 1), q(6, 1)]);
        let pi = SetPartition::parse(3, "1 2|3").unwrap();
        // single-element interval collapses to E_Pi
        assert_eq!(
            relative_cumulant(&pi, &pi, &m).unwrap(),
            e_pi(&pi, &m).unwrap()
        );
        // full interval specializes to the classical cumulant
        assert_eq!(
            relative_cumulant(
                &SetPartition::discrete(3),
                &SetPartition::full(3),
                &m
            )
            .unwrap(),
            cumulant(3, &m).unwrap()
        );
        // two-point variance-style interval
        assert_eq!(
            relative_cumulant(&SetPartition::discrete(2), &SetPartition::full(2), &Powers(vec![q(2, 1), q(11, 1)]))
                .unwrap(),
            q(11, 1) - q(4, 1)
        );
    }

    #[test]
    fn rota_reconstruction_random_moments() {
        // pseudo-random rational assignment keyed on block content
        let assign = |block: &[usize]| -> Result<BigRational> {
            let mut h: i64 = 1;
            for &p in block {
                h = (h * 31 + p as i64 * 17 + 5) % 97;
            }
            Ok(q(h - 48, 7))
        };
        for qsize in 1..=5usize {
            let all = SetPartition::enumerate(qsize);
            for lower in all.iter().step_by(3) {
                for upper in all.iter().step_by(2) {
                    if !lower.leq(upper) {
                        continue;
                    }
                    let lhs = e_pi(upper, &assign).unwrap();
                    let rhs = moments_from_relative_cumulants(lower, upper, &assign).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
