//! Catalan numbers and the cycle-wise Moebius weight on permutations.

use crate::perm::Permutation;

/// c_n = (2n)! / (n! (n+1)!).
pub fn catalan(n: u32) -> u64 {
    // running product keeps everything in u64 for n well past our range
    let n = n as u64;
    let mut c = 1u64;
    for k in 0..n {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    c
}

/// Moeb(sigma) = prod over cycles C of (-1)^{len(C)-1} c_{len(C)-1}.
///
/// The index is the cycle length minus one; this is the convention under
/// which the leading Laurent coefficient of the Weingarten function at order
/// d^{-q-|sigma|} is exactly Moeb(sigma).
pub fn moeb_perm(sigma: &Permutation) -> i64 {
    let mut v = 1i64;
    for cyc in sigma.cycles() {
        let n = (cyc.len() - 1) as u32;
        let c = catalan(n) as i64;
        v *= if n.is_multiple_of(2) { c } else { -c };
    }
    v
}

/// Moeb on a cycle type rather than a concrete permutation.
pub fn moeb_cycle_type(parts: &[u32]) -> i64 {
    let mut v = 1i64;
    for &len in parts {
        let n = len - 1;
        let c = catalan(n) as i64;
        v *= if n % 2 == 0 { c } else { -c };
    }
    v
}
