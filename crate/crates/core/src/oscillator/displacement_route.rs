//! Quasi-probabilities from displacement operators only.
//!
//! Each projector is written as
//! `P(t) = (1/pi) int d^2z exp(-|z|^2/2 - beta^* z + beta z^*) D_a(Z(t))`
//! with `Z(t) = e^{it}(x e^{-r} + i y e^{r})` for `z = x + iy`, and the state
//! enters through its characteristic function
//! `chi(Z) = exp(-nu |Z|^2 + Z alpha^* - Z^* alpha)`. Products of
//! displacements fold into `chi`, so every term is a real Gaussian integral
//! in 2 or 4 variables handled by [`gaussian_integral`].
//!
//! Nothing here shares code with the Fock-series or overlap formulas, which
//! makes it a third independent evaluation.

use nalgebra::{DMatrix, DVector};

use super::{GaussianProjector, OscillatorState};
use crate::error::Result;
use crate::numerics::{c, gaussian_integral, Complex, QuadraticForm, I};
use crate::outcome::OutcomePair;

// Z = C_x x + C_y y
fn z_coeffs(r: f64, t: f64) -> [Complex; 2] {
    let e = Complex::from_polar(1.0, t);
    [e * (-r).exp(), I * e * r.exp()]
}

fn form(state: &OscillatorState, beta: Complex, coeffs: &[Complex], pairs: bool) -> Result<QuadraticForm> {
    let n = coeffs.len();
    let nu = state.nu;
    // -|z|^2/2 per complex variable, -nu |sum Z|^2 from chi
    let mut m = DMatrix::from_fn(n, n, |a, b| {
        let id = if a == b { 1.0 } else { 0.0 };
        c(id + 2.0 * nu * (coeffs[a] * coeffs[b].conj()).re, 0.0)
    });
    // D(Z2) D(Z1) = exp((Z2 Z1^* - Z2^* Z1)/2) D(Z1 + Z2)
    if pairs {
        for a in 2..4 {
            for b in 0..2 {
                let v = c(0.0, -(coeffs[a] * coeffs[b].conj()).im);
                m[(a, b)] += v;
                m[(b, a)] += v;
            }
        }
    }
    let lin = [2.0 * I * beta.im, -2.0 * I * beta.re];
    let b = DVector::from_fn(n, |a, _| lin[a % 2] + 2.0 * I * (coeffs[a] * state.alpha.conj()).im);
    QuadraticForm::new(m, b, c(0.0, 0.0))
}

/// `(Tr[P1 rho], Tr[P2 rho], Tr[P2 P1 rho])`.
pub fn projector_terms(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
) -> Result<(f64, f64, Complex)> {
    let pi = std::f64::consts::PI;
    let w = state.omega0;
    let z1 = z_coeffs(proj.r, w * t1);
    let z2 = z_coeffs(proj.r, w * t2);
    let i1 = gaussian_integral(&form(state, proj.beta, &z1, false)?)?;
    let i2 = gaussian_integral(&form(state, proj.beta, &z2, false)?)?;
    let both = [z1[0], z1[1], z2[0], z2[1]];
    let i3 = gaussian_integral(&form(state, proj.beta, &both, true)?)?;
    Ok((i1.re / pi, i2.re / pi, i3 / (pi * pi)))
}

/// One quasi-probability through the displacement-operator route.
pub fn qp_displacement_route(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
    pair: OutcomePair,
) -> Result<f64> {
    let (x1, x2, x12) = projector_terms(state, proj, t1, t2)?;
    Ok(super::combine(pair, x1, x2, x12))
}
