//! Closed-form multivariate complex Gaussian integrals.

use nalgebra::{DMatrix, DVector};

use super::Complex;
use crate::error::{LgiError, Result};
use crate::tolerances::{SINGULAR_DET, SYMMETRY};

/// Exponent `-1/2 v^T M v + b^T v + c` over real `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    m: DMatrix<Complex>,
    b: DVector<Complex>,
    c: Complex,
}

impl QuadraticForm {
    /// Checks shape and symmetry. Definiteness is checked when integrating.
    pub fn new(m: DMatrix<Complex>, b: DVector<Complex>, c: Complex) -> Result<Self> {
        let n = m.nrows();
        if n == 0 || m.ncols() != n || b.len() != n {
            return Err(LgiError::invalid(
                "form",
                format!("shape mismatch: M is {}x{}, b has {}", n, m.ncols(), b.len()),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let z = m[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(LgiError::NonFinite("QuadraticForm::new"));
                }
                if j > i && (z - m[(j, i)]).norm() > SYMMETRY {
                    return Err(LgiError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(QuadraticForm { m, b, c })
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn m(&self) -> &DMatrix<Complex> {
        &self.m
    }

    pub fn b(&self) -> &DVector<Complex> {
        &self.b
    }

    pub fn c(&self) -> Complex {
        self.c
    }

    /// Exponent evaluated at a real point.
    pub fn exponent(&self, v: &[f64]) -> Complex {
        let n = self.dim();
        let mut quad = Complex::new(0.0, 0.0);
        let mut lin = Complex::new(0.0, 0.0);
        for i in 0..n {
            lin += self.b[i] * v[i];
            for j in 0..n {
                quad += self.m[(i, j)] * (v[i] * v[j]);
            }
        }
        -0.5 * quad + lin + self.c
    }

    /// Reorders coordinates: new coordinate `k` is old coordinate `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.dim();
        let m = DMatrix::from_fn(n, n, |i, j| self.m[(perm[i], perm[j])]);
        let b = DVector::from_fn(n, |i, _| self.b[perm[i]]);
        QuadraticForm { m, b, c: self.c }
    }
}

/// Real Cholesky factor `L` of `Re M` (lower, `Re M = L L^T`).
pub(crate) fn real_cholesky(m: &DMatrix<Complex>) -> Result<DMatrix<f64>> {
    let re = m.map(|z| z.re);
    re.clone()
        .cholesky()
        .map(|ch| ch.l())
        .ok_or_else(|| LgiError::NotPositiveDefinite {
            pivot: first_bad_pivot(&re),
        })
}

fn first_bad_pivot(a: &DMatrix<f64>) -> usize {
    (1..=a.nrows())
        .find(|&k| a.view((0, 0), (k, k)).into_owned().cholesky().is_none())
        .map_or(0, |k| k - 1)
}

/// `int d^n v exp(-1/2 v^T M v + b^T v + c) = (2 pi)^(n/2) det(M)^(-1/2)
/// exp(1/2 b^T M^-1 b + c)`.
///
/// `det(M)^(-1/2)` is the product of principal square roots of the `LDL^T`
/// pivots. When `Re M` is positive definite every pivot has positive real
/// part, so each factor varies continuously with the matrix entries.
pub fn gaussian_integral(form: &QuadraticForm) -> Result<Complex> {
    real_cholesky(&form.m)?;
    let n = form.dim();
    let (l, d) = ldlt(&form.m)?;
    let det_abs: f64 = d.iter().map(|p| p.norm()).product();
    if det_abs < SINGULAR_DET {
        return Err(LgiError::SingularForm { det_abs });
    }

    // y = M^-1 b via L D L^T
    let mut y = form.b.clone();
    for i in 0..n {
        for k in 0..i {
            let t = l[(i, k)] * y[k];
            y[i] -= t;
        }
    }
    for i in 0..n {
        y[i] /= d[i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            let t = l[(k, i)] * y[k];
            y[i] -= t;
        }
    }
    let bmb: Complex = form.b.iter().zip(y.iter()).map(|(a, b)| a * b).sum();

    let root: Complex = d.iter().map(|p| p.sqrt()).product();
    let norm = (2.0 * std::f64::consts::PI).powf(n as f64 / 2.0);
    let out = (0.5 * bmb + form.c).exp() * norm / root;
    if out.re.is_finite() && out.im.is_finite() {
        Ok(out)
    } else {
        Err(LgiError::NonFinite("gaussian_integral"))
    }
}

// Unpivoted complex-symmetric LDL^T (no conjugation).
fn ldlt(m: &DMatrix<Complex>) -> Result<(DMatrix<Complex>, Vec<Complex>)> {
    let n = m.nrows();
    let mut l = DMatrix::<Complex>::identity(n, n);
    let mut d = vec![Complex::new(0.0, 0.0); n];
    for j in 0..n {
        let mut dj = m[(j, j)];
        for k in 0..j {
            dj -= l[(j, k)] * l[(j, k)] * d[k];
        }
        if dj.norm() == 0.0 {
            return Err(LgiError::SingularForm { det_abs: 0.0 });
        }
        d[j] = dj;
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)] * d[k];
            }
            l[(i, j)] = s / dj;
        }
    }
    Ok((l, d))
}
