//! Floating point roots by Aberth–Ehrlich simultaneous iteration.
//!
//! Shares nothing with the exact code paths; it exists to cross-check them.

use num_complex::Complex64;

use super::poly::IntPolynomial;
use super::AlgebraError;

const MAX_ITERATIONS: usize = 500;

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of `p`, with multiplicity, to relative accuracy about
/// `tol`.
pub fn numeric_roots(p: &IntPolynomial, tol: f64) -> Result<Vec<Complex64>, AlgebraError> {
    let n = match p.degree() {
        None => return Err(AlgebraError::ZeroPolynomial),
        Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    let coeffs = p.to_f64();
    let lead = coeffs[n].abs();
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.abs() / lead)
            .fold(0.0, f64::max);
    // starting points on a circle, rotated off the real axis
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5 + 0.5, angle)
        })
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (v, dv) = horner(&coeffs, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                worst = worst.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if worst < tol {
            z.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(b.im.total_cmp(&a.im)));
            return Ok(z);
        }
    }
    Err(AlgebraError::NonConvergence {
        iterations: MAX_ITERATIONS,
    })
}
