//! Exact integration of polynomial functions of Haar-unitary matrix entries.
//!
//! The crate computes the Weingarten function of U(d) through symmetric group
//! characters, expands it asymptotically in 1/d by counting permutation
//! factorizations, runs classical and relative cumulants over the set
//! partition lattice, evaluates word moments of independent Haar unitaries
//! mixed with constant matrices, and carries the Itzykson-Zuber integral to
//! its cumulant-wise large-d limit, including the rank-one scaling that
//! recovers free cumulants over the noncrossing lattice.
//!
//! Everything outside the Harish-Chandra determinant evaluator is exact: the
//! scalars are arbitrary precision rationals, rational functions of the
//! dimension symbol d in reduced form, or polynomials in abstract moment
//! symbols.

pub mod catalan;
pub mod character;
pub mod cumulant;
pub mod error;
pub mod freecum;
pub mod gamma;
pub mod hciz;
pub mod iz;
pub mod laurent;
pub mod momentpoly;
pub mod ncpart;
pub mod partition;
pub mod perm;
pub mod poly;
pub mod ratfun;
pub mod schur;
pub mod setpart;
pub mod weingarten;
pub mod word;

pub use error::{HwError, Result};
pub use partition::IntegerPartition;
pub use perm::Permutation;
pub use ratfun::RatFun;
pub use setpart::SetPartition;
pub use weingarten::WgContext;
