//! Floating-point Harish-Chandra evaluation of the Itzykson-Zuber integral
//! for distinct spectra, and its comparison against the exact cumulant
//! series. This is the one numerical corner of the crate.
//!
//! For diag(x), diag(y) with pairwise distinct entries,
//!   E exp(z d^2 tr(X U Y U*)) = prod_{k<d} k! * det(e^{z d x_i y_j})
//!                               / ((zd)^{d(d-1)/2} Delta(x) Delta(y))
//! normalized so the z -> 0 limit is exactly 1.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{HwError, Result};
use crate::gamma::GammaContext;
use crate::iz::{evaluate_at_spectra, iz_cumulant_exact};
use crate::weingarten::WgContext;

/// det by LU decomposition with partial pivoting.
#[allow(clippy::needless_range_loop)] // row col stays borrowed while row r mutates
fn det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut acc = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| {
                a[r][col]
                    .norm()
                    .partial_cmp(&a[s][col].norm())
                    .expect("no NaN entries")
            })
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            acc = -acc;
        }
        acc *= a[col][col];
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                let sub = factor * a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    acc
}

fn vandermonde(v: &[f64]) -> f64 {
    let mut p = 1.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            p *= v[j] - v[i];
        }
    }
    p
}

/// The z-rescaled determinant ratio, normalized to 1 at z = 0. Entries are
/// scaled by a common exponential shift before the determinant to avoid
/// overflow at large spectra.
pub fn hciz_determinant(x: &[f64], y: &[f64], z: Complex64, d: usize) -> Result<Complex64> {
    if x.len() != d || y.len() != d {
        return Err(HwError::DimensionMismatch(format!(
            "expected {d} eigenvalues, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let distinct = |v: &[f64]| {
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] == v[j] {
                    return false;
                }
            }
        }
        true
    };
    if !distinct(x) || !distinct(y) {
        return Err(HwError::DegenerateSpectrum);
    }
    if d == 1 {
        return Ok((z * d as f64 * x[0] * y[0]).exp());
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let s = z * d as f64;
    // shift every exponent by the max real part; the determinant picks one
    // entry per row, so det(e^{sxy}) = e^{d*shift} det(e^{sxy - shift})
    let shift = x
        .iter()
        .flat_map(|&xi| y.iter().map(move |&yj| (s * xi * yj).re))
        .fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<Vec<Complex64>> = x
        .iter()
        .map(|&xi| {
            y.iter()
                .map(|&yj| (s * xi * yj - Complex64::new(shift, 0.0)).exp())
                .collect()
        })
        .collect();
    let det_full = det(scaled) * (Complex64::new(shift, 0.0) * d as f64).exp();
    let mut constant = 1.0;
    for k in 1..d {
        constant *= factorial_f64(k);
    }
    let power = (d * (d - 1) / 2) as i32;
    let denom = s.powi(power) * vandermonde(x) * vandermonde(y);
    Ok(det_full * constant / denom)
}

fn factorial_f64(n: usize) -> f64 {
    (2..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

/// Comparison report between log of the determinant formula and the exact
/// cumulant series truncated at `order`.
#[derive(Clone, Debug)]
pub struct SeriesComparison {
    pub z_points: Vec<f64>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

/// Exact cumulants C_q(d^2 A) for the given integer spectra, q = 1..order.
pub fn exact_scalar_cumulants(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    x: &[i64],
    y: &[i64],
    d: usize,
    order: u32,
) -> Result<Vec<BigRational>> {
    let to_rat = |v: &[i64]| -> Vec<BigRational> {
        v.iter()
            .map(|&k| BigRational::from_integer(k.into()))
            .collect()
    };
    let xr = to_rat(x);
    let yr = to_rat(y);
    let mut out = Vec::new();
    let d2 = BigRational::from_integer((d as i64 * d as i64).into());
    for q in 1..=order {
        // iz_cumulant_exact is d^-2 C_q(d^2 A)/(q-1)!; undo the normalization
        let poly = iz_cumulant_exact(wg, gamma, q)?;
        let mut v = evaluate_at_spectra(&poly, &xr, &yr, d as i64)?;
        let mut fact = BigRational::from_integer(1.into());
        for k in 2..q as i64 {
            fact *= BigRational::from_integer(k.into());
        }
        v *= &d2 * fact;
        out.push(v);
    }
    Ok(out)
}

/// Compare log hciz against sum_{q<=order} C_q z^q / q! on a z-grid.
/// The residual at each point should scale as z^{order+1}.
pub fn iz_series_vs_determinant(
    wg: &mut WgContext,
    gamma: &mut GammaContext,
    x: &[i64],
    y: &[i64],
    d: usize,
    z_points: &[f64],
    order: u32,
) -> Result<SeriesComparison> {
    if order > 5 {
        return Err(HwError::CostGuard(format!(
            "series comparison limited to order <= 5 (got {order})"
        )));
    }
    let cumulants = exact_scalar_cumulants(wg, gamma, x, y, d, order)?;
    let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
    let yf: Vec<f64> = y.iter().map(|&v| v as f64).collect();
    let mut residuals = Vec::new();
    for &z in z_points {
        let f = hciz_determinant(&xf, &yf, Complex64::new(z, 0.0), d)?;
        let logf = f.norm().ln();
        let mut series = 0.0;
        let mut zfact = 1.0;
        for (qi, c) in cumulants.iter().enumerate() {
            let q = qi + 1;
            zfact *= z / q as f64;
            series += c.to_f64().expect("cumulant fits in f64") * zfact;
        }
        residuals.push((logf - series).abs());
    }
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    Ok(SeriesComparison {
        z_points: z_points.to_vec(),
        residuals,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_at_zero() {
        let v = hciz_determinant(&[1.0, 2.0], &[3.0, 5.0], Complex64::new(0.0, 0.0), 2).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn dimension_one_is_exponential() {
        let z = Complex64::new(0.3, 0.1);
        let v = hciz_determinant(&[2.0], &[5.0], z, 1).unwrap();
        assert!((v - (z * 10.0).exp()).norm() < 1e-12);
    }

    #[test]
    fn repeated_eigenvalues_rejected() {
        assert!(matches!(
            hciz_determinant(&[1.0, 1.0], &[2.0, 3.0], Complex64::new(0.1, 0.0), 2),
            Err(HwError::DegenerateSpectrum)
        ));
    }

    #[test]
    fn matches_cumulant_series_to_first_order_d2() {
        // d/dz log hciz at 0 equals C_1(d^2 A) = d^2 x1 y1 (normalized traces)
        let mut wg = WgContext::new();
        let mut gc = GammaContext::new();
        let x = [1i64, -1];
        let y = [2i64, 0];
        let c = exact_scalar_cumulants(&mut wg, &mut gc, &x, &y, 2, 1).unwrap();
        let c1 = c[0].to_f64().unwrap();
        let h = 1e-6;
        let f = |z: f64| {
            hciz_determinant(&[1.0, -1.0], &[2.0, 0.0], Complex64::new(z, 0.0), 2)
                .unwrap()
                .norm()
                .ln()
        };
        let numeric = (f(h) - f(-h)) / (2.0 * h);
        assert!(
            (numeric - c1).abs() < 1e-5,
            "numeric {numeric} vs exact {c1}"
        );
    }

    #[test]
    fn dimension_one_series_is_exact() {
        // log of the d=1 integral is z x y exactly, so the residual at any
        // order >= 1 is floating noise
        let mut wg = WgContext::new();
        let mut gc = GammaContext::new();
        for (x, y) in [(2i64, 3i64), (0, 5)] {
            let report =
                iz_series_vs_determinant(&mut wg, &mut gc, &[x], &[y], 1, &[0.05, 0.2], 1)
                    .unwrap();
            assert!(
                report.max_residual < 1e-12,
                "x={x} y={y}: residual {}",
                report.max_residual
            );
        }
    }

    #[test]
    fn residual_scales_as_z4_at_order3() {
        let mut wg = WgContext::new();
        let mut gc = GammaContext::new();
        let report = iz_series_vs_determinant(
            &mut wg,
            &mut gc,
            &[1, -1],
            &[1, -1],
            2,
            &[0.0125, 0.025, 0.05],
            3,
        )
        .unwrap();
        let rho: Vec<f64> = report
            .z_points
            .iter()
            .zip(&report.residuals)
            .map(|(z, r)| r / z.powi(4))
            .collect();
        let bound = 4.0 * rho[0].max(rho[1]) + 1e-6;
        assert!(
            rho[2] <= bound,
            "z^4 scaling violated: rho = {rho:?}, bound = {bound}"
        );
    }
}
