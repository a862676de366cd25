//! Gauss–Hermite rules and a tensor-product oracle for Gaussian integrals.

use nalgebra::DMatrix;

use super::gaussian::{real_cholesky, QuadraticForm};
use super::Complex;
use crate::error::{LgiError, Result};
use crate::exec::{map_indexed, Execution};

/// Nodes and weights for `int exp(-x^2) f(x) dx`, ascending in x.
///
/// Newton iteration on the orthonormal Hermite recurrence, started from the
/// usual asymptotic guesses.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let m = n.div_ceil(2);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    x.reverse();
    w.reverse();
    (x, w)
}

/// Brute-force value of `int exp(form) d^n v` on a tensor Gauss–Hermite grid
/// with `nodes` points per axis.
///
/// Coordinates are whitened with the Cholesky factor of `Re M`, so the
/// Gaussian weight is exact and only the oscillatory remainder is sampled.
pub fn tensor_gauss_hermite(form: &QuadraticForm, nodes: usize, exec: Execution) -> Result<Complex> {
    let n = form.dim();
    let l = real_cholesky(form.m())?;
    // v = sqrt(2) T u with T = L^-T, so that 1/2 v^T Re(M) v = u^T u.
    let t = l
        .transpose()
        .try_inverse()
        .ok_or(LgiError::SingularForm { det_abs: 0.0 })?;
    let t = t * std::f64::consts::SQRT_2;
    let jac = t.determinant().abs();
    let im = form.m().map(|z| z.im);
    let a: DMatrix<f64> = t.transpose() * im * &t;
    // exponent(u) = -i/2 u^T a u + (T^T b) . u + c
    let bt: Vec<Complex> = (0..n)
        .map(|k| (0..n).map(|i| form.b()[i] * t[(i, k)]).sum())
        .collect();
    let (x, w) = gauss_hermite(nodes);

    let level = Level {
        a: &a,
        b: &bt,
        x: &x,
        w: &w,
    };
    let partial = map_indexed(exec, nodes, |i0| {
        let mut u = vec![0.0; n];
        u[0] = x[i0];
        let e0 = level.increment(0, &u);
        w[i0] * level.sum(1, &mut u, e0)
    });
    let total: Complex = partial.iter().sum();
    Ok(total * jac * form.c().exp())
}

struct Level<'a> {
    a: &'a DMatrix<f64>,
    b: &'a [Complex],
    x: &'a [f64],
    w: &'a [f64],
}

impl Level<'_> {
    // Terms of the exponent that first involve coordinate k.
    fn increment(&self, k: usize, u: &[f64]) -> Complex {
        let mut q = 0.5 * self.a[(k, k)] * u[k] * u[k];
        for j in 0..k {
            q += self.a[(j, k)] * u[j] * u[k];
        }
        Complex::new(0.0, -q) + self.b[k] * u[k]
    }

    fn sum(&self, k: usize, u: &mut [f64], acc: Complex) -> Complex {
        if k == u.len() {
            return acc.exp();
        }
        let mut s = Complex::new(0.0, 0.0);
        for (xi, wi) in self.x.iter().zip(self.w) {
            u[k] = *xi;
            let e = acc + self.increment(k, u);
            s += *wi * self.sum(k + 1, u, e);
        }
        s
    }
}
