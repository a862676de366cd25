//! Quasi-probabilities for a Gaussian local mode of the (1+1)-dimensional
//! chiral scalar field in its vacuum.
//!
//! Everything is expressed in the dimensionless groups `omega_ell = omega l`
//! and `tau = t21 / l`. With `z_j = x_j + i y_j` the projector integration
//! variables, the vacuum expectation of two displacements at times `t1`,
//! `t2` is `exp(-I4(x1, y1, x2, y2))` with
//!
//! ```text
//! I4 = (2 / (sqrt(pi) W)) int_0^inf k e^{-k^2} [ k^2 (x1^2 + x2^2) + W^2 (y1^2 + y2^2)
//!        + 2 e^{-i k tau} (k x1 + i W y1)(k x2 - i W y2) ] dk ,     W = omega_ell.
//! ```
//!
//! The k-integrals reduce to the moments `G_n(tau) = int_0^inf k^n e^{-k^2}
//! e^{-i k tau} dk`, which follow from `G_0` (a Gaussian plus a Dawson term)
//! by a three-term recurrence.

pub mod oracle;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, LgiError, Result};
use crate::numerics::{c, dawson, gaussian_integral, semi_infinite_quadrature, Complex, QuadraticForm, I};
use crate::outcome::{OutcomePair, QuasiProbTable};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Gaussian window of width `ell` and UV cutoff `eps_over_ell * ell`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalMode {
    pub ell: f64,
    pub eps_over_ell: f64,
    /// Region centre. Enters mode functions only as a phase.
    pub x_a: f64,
}

impl LocalMode {
    pub fn new(ell: f64, eps_over_ell: f64) -> Result<Self> {
        if !(ell.is_finite() && ell > 0.0) {
            return Err(LgiError::invalid("ell", format!("must be positive, got {ell}")));
        }
        if !(eps_over_ell.is_finite() && eps_over_ell >= 0.0) {
            return Err(LgiError::invalid(
                "eps_over_ell",
                format!("must be non-negative, got {eps_over_ell}"),
            ));
        }
        Ok(LocalMode {
            ell,
            eps_over_ell,
            x_a: 0.0,
        })
    }
}

/// One local-mode measurement scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldScenario {
    pub omega_ell: f64,
    pub beta: Complex,
    pub tau: f64,
}

impl FieldScenario {
    pub fn new(omega_ell: f64, beta: Complex, tau: f64) -> Result<Self> {
        if !(omega_ell.is_finite() && omega_ell > 0.0) {
            return Err(LgiError::invalid(
                "omega_ell",
                format!("must be positive, got {omega_ell}"),
            ));
        }
        ensure_finite(beta.re, "beta")?;
        ensure_finite(beta.im, "beta")?;
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(LgiError::invalid("tau", format!("must be finite and >= 0, got {tau}")));
        }
        Ok(FieldScenario { omega_ell, beta, tau })
    }

    /// From dimensionful projector frequency, window width and time gap.
    pub fn from_physical(omega: f64, ell: f64, t21: f64, beta: Complex) -> Result<Self> {
        Self::new(omega * ell, beta, t21 / ell)
    }
}

/// `w_q(k) = 2 (l^6 / pi)^{1/4} exp(-l^2 k^2 / 2)`.
pub fn window_fourier(k: f64, ell: f64) -> f64 {
    2.0 * (ell.powi(6) / std::f64::consts::PI).powf(0.25) * (-0.5 * ell * ell * k * k).exp()
}

/// Position-space window `w_q(x) = 2 (l^2 / pi)^{1/4} exp(-x^2 / (2 l^2))`.
pub fn window_position(x: f64, ell: f64) -> f64 {
    2.0 * (ell * ell / std::f64::consts::PI).powf(0.25) * (-0.5 * x * x / (ell * ell)).exp()
}

/// Vacuum second moments of the local mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Covariances {
    pub qq: f64,
    pub pp: f64,
    /// Symplectic eigenvalue `sqrt(qq pp)`.
    pub nu: f64,
}

/// `<q^2> = 1/2 int k w_q^2 e^{-eps k} dk`, `<p^2> = 1/2 int k^3 w_q^2 e^{-eps k} dk`.
pub fn local_covariances(mode: &LocalMode) -> Result<Covariances> {
    let ell = mode.ell;
    let eps = mode.eps_over_ell * ell;
    let weight = move |k: f64| {
        let w = window_fourier(k, ell);
        0.5 * w * w * (-eps * k).exp()
    };
    let qq = semi_infinite_quadrature(|k| c(k * weight(k), 0.0), 1.0 / ell)?.re;
    let pp = semi_infinite_quadrature(|k| c(k * k * k * weight(k), 0.0), 1.0 / ell)?.re;
    Ok(Covariances {
        qq,
        pp,
        nu: (qq * pp).sqrt(),
    })
}

// a_x, a_y of the single-time exponent -a_x x^2 - a_y y^2.
fn single_time_coeffs(omega_ell: f64) -> (f64, f64) {
    (0.5 + 1.0 / (SQRT_PI * omega_ell), 0.5 + omega_ell / SQRT_PI)
}

/// `I1 = int d^2z exp(-|z|^2/2 - beta^* z + beta z^*) <D(z)>`
/// `   = pi / sqrt(a_x a_y) exp(-Re(beta)^2 / a_y - Im(beta)^2 / a_x)`.
pub fn single_time_i(beta: Complex, omega_ell: f64) -> Complex {
    let (ax, ay) = single_time_coeffs(omega_ell);
    let v = std::f64::consts::PI / (ax * ay).sqrt() * (-beta.re * beta.re / ay - beta.im * beta.im / ax).exp();
    c(v, 0.0)
}

/// The same integral through the generic Gaussian engine.
pub fn single_time_form(beta: Complex, omega_ell: f64) -> QuadraticForm {
    let (ax, ay) = single_time_coeffs(omega_ell);
    let m = DMatrix::from_row_slice(2, 2, &[c(2.0 * ax, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0 * ay, 0.0)]);
    let b = DVector::from_row_slice(&[2.0 * I * beta.im, -2.0 * I * beta.re]);
    QuadraticForm::new(m, b, c(0.0, 0.0)).expect("diagonal form is symmetric")
}

/// `G_n(tau) = int_0^inf k^n e^{-k^2} e^{-i k tau} dk` for `n = 0..=3`.
///
/// `G_0 = sqrt(pi)/2 e^{-tau^2/4} - i F(tau/2)` with `F` the Dawson function,
/// then `G_{n+1} = n/2 G_{n-1} - (i tau / 2) G_n`.
pub fn g_moments(tau: f64) -> [Complex; 4] {
    let g0 = c(0.5 * SQRT_PI * (-0.25 * tau * tau).exp(), -dawson(0.5 * tau));
    let h = c(0.0, -0.5 * tau);
    let g1 = c(0.5, 0.0) + h * g0;
    let g2 = 0.5 * g0 + h * g1;
    let g3 = g1 + h * g2;
    [g0, g1, g2, g3]
}

/// `I4` at a point `v = (x1, y1, x2, y2)`.
pub fn i4_value(v: [f64; 4], tau: f64, omega_ell: f64) -> Complex {
    let [x1, y1, x2, y2] = v;
    let w = omega_ell;
    let [_, g1, g2, g3] = g_moments(tau);
    let diag = (x1 * x1 + x2 * x2) / w + w * (y1 * y1 + y2 * y2);
    (diag + 4.0 * x1 * x2 * g3 / w + 4.0 * I * (y1 * x2 - x1 * y2) * g2 + 4.0 * w * y1 * y2 * g1) / SQRT_PI
}

/// Symmetric `Q` with `v^T Q v = I4(v)`, read off by polarisation at the ten
/// inputs `e_i` and `e_i + e_j`.
pub fn polarize(f: impl Fn([f64; 4]) -> Result<Complex>) -> Result<DMatrix<Complex>> {
    let unit = |i: usize| {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        v
    };
    let mut q = DMatrix::zeros(4, 4);
    for i in 0..4 {
        q[(i, i)] = f(unit(i))?;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let mut v = unit(i);
            v[j] = 1.0;
            let off = 0.5 * (f(v)? - q[(i, i)] - q[(j, j)]);
            q[(i, j)] = off;
            q[(j, i)] = off;
        }
    }
    Ok(q)
}

/// Form in `(x1, y1, x2, y2)` whose exponent is `-I4`, so that
/// `exp(exponent)` is the two-time displacement expectation.
pub fn i4_form(tau: f64, omega_ell: f64) -> QuadraticForm {
    let q = polarize(|v| Ok(i4_value(v, tau, omega_ell))).expect("closed form never fails");
    QuadraticForm::new(q * c(2.0, 0.0), DVector::zeros(4), c(0.0, 0.0)).expect("polarised form is symmetric")
}

/// Adds the projector weights `-|z_j|^2/2 - beta^* z_j + beta z_j^*` to a
/// form in `(x1, y1, x2, y2)`.
pub(crate) fn with_measurement_weights(expectation: &QuadraticForm, beta: Complex) -> Result<QuadraticForm> {
    let m = expectation.m() + DMatrix::<Complex>::identity(4, 4);
    let lin = [2.0 * I * beta.im, -2.0 * I * beta.re];
    let b = DVector::from_fn(4, |k, _| lin[k % 2]);
    QuadraticForm::new(m, b, expectation.c())
}

/// `I3 = int d^2z1 d^2z2 w(z1) w(z2) <D(z2, t2) D(z1, t1)>`.
pub fn i3(s: &FieldScenario) -> Result<Complex> {
    let form = with_measurement_weights(&i4_form(s.tau, s.omega_ell), s.beta)?;
    gaussian_integral(&form)
}

/// `q = (1-s1)(1-s2)/4 + (1-s2) s1 Re I1/(2 pi) + (1-s1) s2 Re I2/(2 pi)
///      + s1 s2 Re I3 / pi^2`, with `I2 = I1`.
pub fn qp_field(s: &FieldScenario, pair: OutcomePair) -> Result<f64> {
    Ok(field_table(s)?.get(pair))
}

/// All four quasi-probabilities of a field scenario.
pub fn field_table(s: &FieldScenario) -> Result<QuasiProbTable> {
    let pi = std::f64::consts::PI;
    let x = single_time_i(s.beta, s.omega_ell).re / pi;
    let x12 = i3(s)?.re / (pi * pi);
    Ok(assemble(x, x12))
}

/// Large-`tau` limit, where `I3` factorises into `I1 I2`.
pub fn field_table_asymptotic(omega_ell: f64, beta: Complex) -> QuasiProbTable {
    let pi = std::f64::consts::PI;
    let i1 = single_time_i(beta, omega_ell);
    assemble(i1.re / pi, (i1 * i1).re / (pi * pi))
}

fn assemble(x: f64, x12: f64) -> QuasiProbTable {
    let q = OutcomePair::ALL.map(|p| {
        let [w0, w1, w2, w12] = p.weights();
        w0 + w1 * x + w2 * x + w12 * x12
    });
    QuasiProbTable::from_values(q, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn window_examples() {
        assert!((window_fourier(0.0, 1.0) - 2.0 / PI.powf(0.25)).abs() < 1e-15);
        let l = 1.7;
        assert!((window_fourier(1.0 / l, l) - window_fourier(0.0, l) * (-0.5f64).exp()).abs() < 1e-15);
        // int (w_q'(x))^2 dx over the whole line
        let d = |x: f64| -x / (l * l) * window_position(x, l);
        let half = semi_infinite_quadrature(|x| c(d(x) * d(x), 0.0), l).unwrap();
        assert!((2.0 * half.re - 2.0).abs() < 1e-10);
    }

    #[test]
    fn covariances_at_zero_cutoff() {
        for &l in &[1.0, 0.3, 4.0] {
            let cv = local_covariances(&LocalMode::new(l, 0.0).unwrap()).unwrap();
            assert!((cv.qq - l / SQRT_PI).abs() < 1e-8);
            assert!((cv.pp - 1.0 / (SQRT_PI * l)).abs() < 1e-8);
            assert!((cv.nu - 1.0 / SQRT_PI).abs() < 1e-8);
        }
    }

    #[test]
    fn single_time_matches_engine() {
        for &(b, w) in &[(c(1.0, 0.0), 1.0), (c(0.4, -1.3), 0.3), (c(0.0, 0.0), 3.0)] {
            let a = single_time_i(b, w);
            let g = gaussian_integral(&single_time_form(b, w)).unwrap();
            assert!((a - g).norm() < 1e-13);
            assert!(a.re > 0.0 && a.im == 0.0);
        }
    }

    #[test]
    fn moments_against_quadrature() {
        for &tau in &[0.0, 1.0, 3.0, 7.5] {
            let g = g_moments(tau);
            for (n, gn) in g.iter().enumerate() {
                let q = semi_infinite_quadrature(
                    |k| k.powi(n as i32) * (-k * k).exp() * Complex::from_polar(1.0, -k * tau),
                    1.0,
                )
                .unwrap();
                assert!((q - gn).norm() < 1e-10, "n = {n}, tau = {tau}");
            }
        }
    }

    #[test]
    fn equal_time_idempotence() {
        for &(b, w) in &[(0.7, 1.3), (0.0, 1.0), (1.5, 0.4)] {
            let s = FieldScenario::new(w, c(b, 0.0), 0.0).unwrap();
            let i3v = i3(&s).unwrap();
            let i1 = single_time_i(s.beta, w);
            assert!((i3v - PI * i1).norm() < 1e-12 * i1.norm());
            let t = field_table(&s).unwrap();
            assert!((t.q_pp - t.p2_plus).abs() < 1e-12);
        }
    }

    #[test]
    fn cross_terms_fade() {
        let cross = |tau: f64| {
            let f = i4_form(tau, 1.0);
            let mut m = 0.0f64;
            for a in 0..2 {
                for b in 2..4 {
                    m = m.max(f.m()[(a, b)].norm());
                }
            }
            m
        };
        // polynomial and Dawson pieces cancel, leaving ~ tau^-2
        assert!(cross(2.0) > 0.3);
        assert!(cross(20.0) < 1e-2);
        assert!(cross(40.0) < 0.3 * cross(20.0));
        let s = FieldScenario::new(1.0, c(0.5, 0.0), 60.0).unwrap();
        let ratio = i3(&s).unwrap() / (single_time_i(s.beta, 1.0) * single_time_i(s.beta, 1.0));
        assert!((ratio - 1.0).norm() < 1e-3);
    }

    #[test]
    fn sum_rules() {
        let s = FieldScenario::new(2.0, c(1.1, 0.0), 2.3).unwrap();
        let t = field_table(&s).unwrap();
        assert!(t.sum_check.abs() < 1e-12);
        for s2 in crate::Outcome::BOTH {
            assert!(t.marginal_residual(s2).abs() < 1e-9);
        }
        assert!(t.min() >= -0.125 - 1e-9);
    }

    #[test]
    fn rejects_bad_scenarios() {
        assert!(FieldScenario::new(0.0, c(0.0, 0.0), 1.0).is_err());
        assert!(FieldScenario::new(1.0, c(0.0, 0.0), -1.0).is_err());
        assert!(LocalMode::new(1.0, -0.1).is_err());
    }
}
