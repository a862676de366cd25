//! Quadrature-only evaluation of the field quasi-probabilities.
//!
//! `I4` coefficients come from direct k-quadrature of the defining integral
//! (no Dawson function, no moment recurrence); `I1` and `I3` then come from
//! tensor Gauss–Hermite quadrature rather than the closed-form Gaussian
//! integral.

use nalgebra::{DMatrix, DVector};

use super::{polarize, with_measurement_weights, FieldScenario};
use crate::error::Result;
use crate::exec::Execution;
use crate::numerics::hermite::tensor_gauss_hermite;
use crate::numerics::quadrature::semi_infinite_quadrature_tol;
use crate::numerics::special::erfi_damped;
use crate::numerics::{c, Complex, QuadraticForm, I};
use crate::outcome::{OutcomePair, QuasiProbTable};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// `I4` by k-quadrature, with each time's mode factor
/// `f_j(k) = (k x_j + i W y_j) e^{i k (t_j + x_a)}`:
/// `I4 = 2/(sqrt(pi) W) int k e^{-k^2} (|f1|^2 + |f2|^2 + 2 f1 f2^*) dk`.
pub fn i4_by_quadrature(v: [f64; 4], tau: f64, omega_ell: f64, x_a: f64) -> Result<Complex> {
    let [x1, y1, x2, y2] = v;
    let w = omega_ell;
    let integrand = |k: f64| {
        let f1 = (k * x1 + I * w * y1) * Complex::from_polar(1.0, k * x_a);
        let f2 = (k * x2 + I * w * y2) * Complex::from_polar(1.0, k * (tau + x_a));
        k * (-k * k).exp() * (f1.norm_sqr() + f2.norm_sqr() + 2.0 * f1 * f2.conj())
    };
    let v = semi_infinite_quadrature_tol(integrand, 1.0, 1e-13)?;
    Ok(v * 2.0 / (SQRT_PI * w))
}

/// [`super::i4_form`] with coefficients from k-quadrature.
pub fn i4_form_by_quadrature(tau: f64, omega_ell: f64) -> Result<QuadraticForm> {
    let q = polarize(|v| i4_by_quadrature(v, tau, omega_ell, 0.0))?;
    QuadraticForm::new(q * c(2.0, 0.0), DVector::zeros(4), c(0.0, 0.0))
}

/// `I1` by 2D Gauss–Hermite on the `(x1, y1)` block of a k-quadrature form.
pub fn single_time_i_by_quadrature(expectation: &QuadraticForm, beta: Complex, nodes: usize) -> Result<Complex> {
    let m = DMatrix::from_fn(2, 2, |i, j| expectation.m()[(i, j)] + if i == j { 1.0 } else { 0.0 });
    let b = DVector::from_row_slice(&[2.0 * I * beta.im, -2.0 * I * beta.re]);
    tensor_gauss_hermite(&QuadraticForm::new(m, b, c(0.0, 0.0))?, nodes, Execution::Sequential)
}

/// `I3` by 4D Gauss–Hermite with `nodes` points per axis.
pub fn i3_by_quadrature(s: &FieldScenario, nodes: usize, exec: Execution) -> Result<Complex> {
    let form = with_measurement_weights(&i4_form_by_quadrature(s.tau, s.omega_ell)?, s.beta)?;
    tensor_gauss_hermite(&form, nodes, exec)
}

/// The full table computed without any closed form.
pub fn field_table_by_quadrature(s: &FieldScenario, nodes: usize, exec: Execution) -> Result<QuasiProbTable> {
    let pi = std::f64::consts::PI;
    let expectation = i4_form_by_quadrature(s.tau, s.omega_ell)?;
    let x = single_time_i_by_quadrature(&expectation, s.beta, nodes)?.re / pi;
    let form = with_measurement_weights(&expectation, s.beta)?;
    let x12 = tensor_gauss_hermite(&form, nodes, exec)?.re / (pi * pi);
    Ok(super::assemble(x, x12))
}

/// One quasi-probability by quadrature.
pub fn qp_field_by_quadrature(s: &FieldScenario, pair: OutcomePair, nodes: usize) -> Result<f64> {
    Ok(field_table_by_quadrature(s, nodes, Execution::Parallel)?.get(pair))
}

/// The Erfi-based expression for `I4` in the form it is usually printed.
/// Its imaginary part matches the k-integral but its real part does not;
/// kept only so tests can document the disagreement.
pub fn i4_erfi_expression(v: [f64; 4], t: f64, w: f64) -> Complex {
    let [x1, y1, x2, y2] = v;
    let a = (-2.0 * t * t * x1 * x2
        + 4.0 * (y1 + y2).powi(2) * w * w
        + 4.0 * ((x1 + x2).powi(2) + t * (x1 * y2 - x2 * y1) * w))
        / SQRT_PI;
    let poly = -t.powi(3) * x1 * x2
        + 2.0 * t * (3.0 * x1 * x2 + t * x2 * y1 * w - t * x1 * y2 * w)
        + 4.0 * w * (-x2 * y1 + y2 * x1 + t * y1 * y2 * w);
    // e^{-t^2/4} (i + erfi(t/2))
    let factor = I * (-0.25 * t * t).exp() + erfi_damped(0.5 * t);
    (a - poly * factor) / (4.0 * w)
}
