//! Small dense complex matrices with Householder QR; enough for sampling
//! unitaries at the dimensions this crate works at.

use num_complex::Complex64;

pub type C64 = Complex64;

#[derive(Clone, Debug)]
pub struct CMat {
    pub d: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(d: usize) -> Self {
        CMat {
            d,
            data: vec![C64::new(0.0, 0.0); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.d, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let d = self.d;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.d).map(|i| self[(i, i)]).sum()
    }

    /// Normalized trace Tr/d.
    pub fn tr(&self) -> C64 {
        self.trace() / self.d as f64
    }

    /// max |(U* U - I)_{ij}|.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().matmul(self);
        let mut worst: f64 = 0.0;
        for i in 0..self.d {
            for j in 0..self.d {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((p[(i, j)] - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.d + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.d + j]
    }
}

/// Householder QR. Returns (Q, diag(R)); Q has orthonormal columns and
/// Q R = A with R upper triangular.
pub fn qr(a: &CMat) -> (CMat, Vec<C64>) {
    let d = a.d;
    let mut r = a.clone();
    let mut q = CMat::identity(d);
    for col in 0..d {
        // Householder vector for column `col` below the diagonal
        let norm_x = (col..d).map(|i| r[(i, col)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = r[(col, col)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let alpha = -phase * norm_x;
        let mut v: Vec<C64> = (col..d).map(|i| r[(i, col)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // apply H = I - 2 v v* / |v|^2 on the left of R and on the right of Q*
        for j in col..d {
            let s: C64 = (0..v.len()).map(|k| v[k].conj() * r[(col + k, j)]).sum();
            let s = s * (2.0 / vnorm2);
            for k in 0..v.len() {
                let sub = s * v[k];
                r[(col + k, j)] -= sub;
            }
        }
        for i in 0..d {
            let s: C64 = (0..v.len()).map(|k| q[(i, col + k)] * v[k]).sum();
            let s = s * (2.0 / vnorm2);
            for k in 0..v.len() {
                let sub = s * v[k].conj();
                q[(i, col + k)] -= sub;
            }
        }
    }
    let diag = (0..d).map(|i| r[(i, i)]).collect();
    (q, diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qr_reconstructs_and_q_unitary() {
        let d = 5;
        let a = CMat::from_fn(d, |i, j| {
            C64::new(((i * 7 + j * 3) % 11) as f64 - 5.0, ((i + 2 * j) % 5) as f64)
        });
        let (q, _) = qr(&a);
        assert!(q.unitarity_defect() < 1e-12, "{}", q.unitarity_defect());
        // Q* A is upper triangular
        let r = q.adjoint().matmul(&a);
        for i in 0..d {
            for j in 0..i {
                assert!(r[(i, j)].norm() < 1e-10);
            }
        }
    }
}
