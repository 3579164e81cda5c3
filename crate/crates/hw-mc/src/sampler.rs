//! Haar-distributed unitaries: complex Ginibre matrix, QR, then the phase
//! correction that multiplies each column by the phase of the corresponding
//! diagonal entry of R. Without the correction QR is not Haar.

use crate::linalg::{qr, CMat, C64};
use crate::rng::keyed_complex_gaussian;

/// Deterministic sampler configuration. `stream` separates independent
/// unitaries inside one sample.
#[derive(Clone, Copy, Debug)]
pub struct SamplerConfig {
    pub d: usize,
    pub seed: u64,
    pub samples: u64,
}

/// The Haar unitary at (seed, sample, stream). Pure function of its inputs.
pub fn haar_unitary(d: usize, seed: u64, sample: u64, stream: u64) -> CMat {
    let g = CMat::from_fn(d, |i, j| {
        let (re, im) = keyed_complex_gaussian(seed, sample, stream, (i * d + j) as u64);
        C64::new(re, im)
    });
    let (q, diag) = qr(&g);
    // multiply column j by phase(R_jj)
    let mut u = q;
    for j in 0..d {
        let r = diag[j];
        let phase = if r.norm() > 0.0 {
            r / r.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..d {
            u[(i, j)] *= phase;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_to_tolerance() {
        for d in [1usize, 3, 8, 12] {
            for s in 0..20 {
                let u = haar_unitary(d, 9, s, 0);
                assert!(
                    u.unitarity_defect() < 1e-12,
                    "d = {d}, defect = {}",
                    u.unitarity_defect()
                );
            }
        }
    }

    #[test]
    fn u1_is_pure_phase() {
        for s in 0..50 {
            let u = haar_unitary(1, 3, s, 0);
            assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reproducible_across_calls() {
        let a = haar_unitary(4, 11, 5, 2);
        let b = haar_unitary(4, 11, 5, 2);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a[(i, j)], b[(i, j)]);
            }
        }
    }
}
