//! Two-time quasi-probabilities of a harmonic oscillator measured with
//! (squeezed) coherent-state projectors.
//!
//! Conventions: `Omega t` enters only as an angle; the projector state at time
//! `t` is `|gamma(t), zeta(t)> = D(gamma(t)) S(zeta(t)) |0>` with
//! `gamma(t) = e^{it} gamma`, `zeta(t) = e^{i(2t + pi)} r`, and
//! `S(zeta) = exp(zeta/2 a^dag^2 - zeta^*/2 a^2)`.

pub mod displacement_route;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, LgiError, Result};
use crate::numerics::{c, Complex};
use crate::outcome::{Outcome, OutcomePair, QuasiProbTable};
use crate::tolerances::{SERIES_MAX_TERMS, SERIES_TAIL};

/// Displaced thermal state with displacement `alpha` and symplectic
/// eigenvalue `nu` (`nu = 1/2` is a coherent state).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorState {
    pub alpha: Complex,
    pub nu: f64,
    /// Oscillator angular frequency; times are multiplied by it.
    pub omega0: f64,
}

impl OscillatorState {
    pub fn new(alpha: Complex, nu: f64) -> Result<Self> {
        Self::with_frequency(alpha, nu, 1.0)
    }

    pub fn with_frequency(alpha: Complex, nu: f64, omega0: f64) -> Result<Self> {
        ensure_finite(alpha.re, "alpha")?;
        ensure_finite(alpha.im, "alpha")?;
        if !(nu.is_finite() && nu >= 0.5) {
            return Err(LgiError::invalid("nu", format!("must be finite and >= 1/2, got {nu}")));
        }
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(LgiError::invalid("omega0", format!("must be positive, got {omega0}")));
        }
        Ok(OscillatorState { alpha, nu, omega0 })
    }

    pub fn vacuum() -> Self {
        OscillatorState {
            alpha: c(0.0, 0.0),
            nu: 0.5,
            omega0: 1.0,
        }
    }

    /// Boltzmann ratio `e^{-A} = (nu - 1/2) / (nu + 1/2)`.
    pub fn boltzmann_ratio(&self) -> f64 {
        (self.nu - 0.5) / (self.nu + 0.5)
    }

    /// Normalisation `1 - e^{-A} = 1 / (nu + 1/2)` of the thermal weights.
    pub fn thermal_norm(&self) -> f64 {
        1.0 / (self.nu + 0.5)
    }

    pub fn is_vacuum(&self) -> bool {
        self.nu == 0.5 && self.alpha == c(0.0, 0.0)
    }
}

impl Default for OscillatorState {
    fn default() -> Self {
        Self::vacuum()
    }
}

/// Projector onto the coherent state `|beta>_b` of the squeezed mode
/// `b = a cosh r + a^dag sinh r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianProjector {
    pub beta: Complex,
    pub r: f64,
}

impl GaussianProjector {
    pub fn new(beta: Complex, r: f64) -> Result<Self> {
        ensure_finite(beta.re, "beta")?;
        ensure_finite(beta.im, "beta")?;
        ensure_finite(r, "r")?;
        Ok(GaussianProjector { beta, r })
    }

    pub fn coherent(beta: Complex) -> Self {
        GaussianProjector { beta, r: 0.0 }
    }

    /// Displacement of the mode-a ket at `t = 0`.
    pub fn gamma(&self) -> Complex {
        self.beta * self.r.cosh() - self.beta.conj() * self.r.sinh()
    }

    /// `gamma(t) = e^{it} gamma`.
    pub fn gamma_at(&self, t: f64) -> Complex {
        Complex::from_polar(1.0, t) * self.gamma()
    }

    /// Phase of `zeta(t) = e^{i phi} r`.
    pub fn squeeze_phase(t: f64) -> f64 {
        2.0 * t + std::f64::consts::PI
    }
}

/// `<0 | beta, xi>` for `xi = e^{i phi} r`.
pub fn squeezed_vacuum_overlap(beta: Complex, r: f64, phi: f64) -> Complex {
    let e = Complex::from_polar(0.5 * r.tanh(), phi);
    (-0.5 * beta.norm_sqr() + e * beta.conj() * beta.conj()).exp() / r.cosh().sqrt()
}

/// `<beta1, xi1 | beta2, xi2>` for `xi_j = e^{i phi_j} r` with a shared `r`.
///
/// `Re sigma21 >= 1`, so the principal square root never crosses its cut and
/// the result is continuous in `phi2 - phi1`.
pub fn squeezed_overlap(beta1: Complex, beta2: Complex, phi1: f64, phi2: f64, r: f64) -> Complex {
    let (ch, sh) = (r.cosh(), r.sinh());
    let sigma = ch * ch - Complex::from_polar(sh * sh, phi2 - phi1);
    let eta21 = (beta2 - beta1) * ch - (beta2 - beta1).conj() * Complex::from_polar(sh, phi2);
    let eta12 = (beta1 - beta2) * ch - (beta1 - beta2).conj() * Complex::from_polar(sh, phi1);
    let phase = 0.5 * (beta2 * beta1.conj() - beta2.conj() * beta1);
    (eta21 * eta12.conj() / (2.0 * sigma) + phase).exp() / sigma.sqrt()
}

/// Fock amplitudes `<n | beta, xi>` for `n < len`.
pub fn squeezed_fock_amplitudes(beta: Complex, r: f64, phi: f64, len: usize) -> Vec<Complex> {
    let mut out = Vec::with_capacity(len);
    let mut it = FockAmplitudes::new(beta, r, phi);
    for _ in 0..len {
        out.push(it.next_amplitude());
    }
    out
}

// c_{n+1} = [mu c_n + e^{i phi} sinh r sqrt(n) c_{n-1}] / (cosh r sqrt(n+1))
struct FockAmplitudes {
    mu: Complex,
    k: Complex,
    ch: f64,
    n: usize,
    prev: Complex,
    cur: Complex,
}

impl FockAmplitudes {
    fn new(beta: Complex, r: f64, phi: f64) -> Self {
        let (ch, sh) = (r.cosh(), r.sinh());
        let e = Complex::from_polar(1.0, phi);
        FockAmplitudes {
            mu: beta * ch - beta.conj() * e * sh,
            k: e * sh,
            ch,
            n: 0,
            prev: c(0.0, 0.0),
            cur: squeezed_vacuum_overlap(beta, r, phi),
        }
    }

    fn next_amplitude(&mut self) -> Complex {
        let out = self.cur;
        let nf = self.n as f64;
        let next = (self.mu * self.cur + self.k * nf.sqrt() * self.prev) / (self.ch * (nf + 1.0).sqrt());
        self.prev = self.cur;
        self.cur = next;
        self.n += 1;
        out
    }
}

/// Zero-temperature, coherent projector (`alpha = 0`, `nu = 1/2`, `r = 0`):
/// `q = (1-s1)(1-s2)/4 + e^{-b^2}[(s1(1-s2) + s2(1-s1))/2]
///      + s1 s2 e^{-2b^2 + b^2 cos theta} cos(b^2 sin theta)` with `b = |beta|`.
pub fn qp_vacuum_coherent(beta: Complex, theta: f64, s1: Outcome, s2: Outcome) -> f64 {
    let b2 = beta.norm_sqr();
    let single = (-b2).exp();
    // <0|b2><b2|b1><b1|0> with b_j = e^{i t_j} beta, t1 = 0, t2 = theta
    let pair = (-2.0 * b2 + b2 * Complex::from_polar(1.0, -theta)).exp();
    combine(OutcomePair::new(s1, s2), single, single, pair)
}

/// Displaced thermal state with a coherent projector.
pub fn qp_thermal_coherent(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
    s1: Outcome,
    s2: Outcome,
) -> Result<f64> {
    if proj.r != 0.0 {
        return Err(LgiError::InvalidProjector { r: proj.r });
    }
    let (x1, x2, x12) = thermal_coherent_terms(state, proj.beta, t1, t2)?;
    Ok(combine(OutcomePair::new(s1, s2), x1, x2, x12))
}

fn thermal_coherent_terms(
    state: &OscillatorState,
    beta: Complex,
    t1: f64,
    t2: f64,
) -> Result<(f64, f64, Complex)> {
    let (t1, t2) = scaled_times(state, t1, t2)?;
    let ea = state.boltzmann_ratio();
    let norm = state.thermal_norm();
    let d1 = Complex::from_polar(1.0, t1) * beta - state.alpha;
    let d2 = Complex::from_polar(1.0, t2) * beta - state.alpha;
    let x1 = norm * (-d1.norm_sqr() * norm).exp();
    let x2 = norm * (-d2.norm_sqr() * norm).exp();
    let x12 = norm * (-d1.norm_sqr() - d2.norm_sqr() + d2.conj() * d1 + ea * d2 * d1.conj()).exp();
    Ok((x1, x2, x12))
}

/// Vacuum state with a squeezed projector, as a function of `theta = t2 - t1`.
pub fn qp_vacuum_squeezed(proj: &GaussianProjector, theta: f64, s1: Outcome, s2: Outcome) -> f64 {
    let (x, x12) = vacuum_squeezed_terms(proj, theta);
    combine(OutcomePair::new(s1, s2), x, x, x12)
}

// |c|^2 with c = <0|gamma(t), zeta(t)> (independent of t), and the pair term
// |c|^2 <psi2|psi1>.
fn vacuum_squeezed_terms(proj: &GaussianProjector, theta: f64) -> (f64, Complex) {
    let g = proj.gamma();
    let r = proj.r;
    let c2 = (-g.norm_sqr() - (g.conj() * g.conj()).re * r.tanh()).exp() / r.cosh();
    let g1 = g;
    let g2 = Complex::from_polar(1.0, theta) * g;
    let ov = squeezed_overlap(
        g2,
        g1,
        GaussianProjector::squeeze_phase(theta),
        GaussianProjector::squeeze_phase(0.0),
        r,
    );
    (c2, c2 * ov)
}

/// Displaced thermal state with a squeezed projector, summed over the thermal
/// Fock populations.
pub fn qp_thermal_squeezed(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
    s1: Outcome,
    s2: Outcome,
) -> Result<f64> {
    let (x1, x2, x12) = thermal_squeezed_terms(state, proj, t1, t2)?;
    Ok(combine(OutcomePair::new(s1, s2), x1, x2, x12))
}

fn thermal_squeezed_terms(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
) -> Result<(f64, f64, Complex)> {
    let (t1, t2) = scaled_times(state, t1, t2)?;
    let r = proj.r;
    let b1 = proj.gamma_at(t1) - state.alpha;
    let b2 = proj.gamma_at(t2) - state.alpha;
    let p1 = GaussianProjector::squeeze_phase(t1);
    let p2 = GaussianProjector::squeeze_phase(t2);
    let ea = state.boltzmann_ratio();

    let mut a1 = FockAmplitudes::new(b1, r, p1);
    let mut a2 = FockAmplitudes::new(b2, r, p2);
    // Past the photon-number peak the terms fall off at least geometrically
    // with ratio ~ e^{-A} tanh|r|.
    let ratio = ea * r.abs().tanh();
    let peak = b1.norm_sqr().max(b2.norm_sqr()) + r.sinh().powi(2);
    let n_min = 2.0 * peak + 10.0;
    if n_min.is_nan() || n_min >= SERIES_MAX_TERMS as f64 {
        return Err(LgiError::Truncation {
            dim: SERIES_MAX_TERMS,
            what: "thermal series photon-number peak",
            value: peak,
        });
    }
    let n_min = n_min.ceil() as usize;
    let cutoff = 1e-3 * SERIES_TAIL * (1.0 - ratio);

    let (mut s1, mut s2, mut s12) = (0.0, 0.0, c(0.0, 0.0));
    let mut w = 1.0;
    let mut last = f64::INFINITY;
    for n in 0..SERIES_MAX_TERMS {
        let c1 = a1.next_amplitude();
        let c2 = a2.next_amplitude();
        let t1 = w * c1.norm_sqr();
        let t2 = w * c2.norm_sqr();
        s1 += t1;
        s2 += t2;
        s12 += w * c2 * c1.conj();
        last = t1 + t2;
        if n >= n_min && t1 + t2 < cutoff {
            let norm = state.thermal_norm();
            let ov = squeezed_overlap(b2, b1, p2, p1, r);
            return Ok((norm * s1, norm * s2, norm * ov * s12));
        }
        w *= ea;
    }
    Err(LgiError::NoConvergence {
        what: "thermal Fock series",
        estimate: last / (1.0 - ratio),
    })
}

fn scaled_times(state: &OscillatorState, t1: f64, t2: f64) -> Result<(f64, f64)> {
    ensure_finite(t1, "t1")?;
    ensure_finite(t2, "t2")?;
    Ok((state.omega0 * t1, state.omega0 * t2))
}

// q = c0 + c1 X1 + c2 X2 + c12 Re X12
fn combine(pair: OutcomePair, x1: f64, x2: f64, x12: Complex) -> f64 {
    let [w0, w1, w2, w12] = pair.weights();
    w0 + w1 * x1 + w2 * x2 + w12 * x12.re
}

/// Single-time probability `Tr[M_+(t) rho0]` from the Gaussian overlap
/// formula `Tr[rho1 rho2] = det(V1 + V2)^{-1/2} exp(-d^T (V1 + V2)^{-1} d / 2)`.
///
/// Uses covariance matrices only, so it is independent of the Fock series
/// and overlap formulas above.
pub fn single_time_probability(state: &OscillatorState, proj: &GaussianProjector, t: f64) -> Result<f64> {
    ensure_finite(t, "t")?;
    let t = state.omega0 * t;
    let r = proj.r;
    let phi = GaussianProjector::squeeze_phase(t);
    let (c2, s2) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    // vacuum covariance is I/2, quadratures x = sqrt(2) Re, p = sqrt(2) Im
    let vxx = 0.5 * (c2 + s2 * phi.cos()) + state.nu;
    let vpp = 0.5 * (c2 - s2 * phi.cos()) + state.nu;
    let vxp = 0.5 * s2 * phi.sin();
    let det = vxx * vpp - vxp * vxp;
    let d = (proj.gamma_at(t) - state.alpha) * std::f64::consts::SQRT_2;
    let (dx, dp) = (d.re, d.im);
    let quad = (vpp * dx * dx - 2.0 * vxp * dx * dp + vxx * dp * dp) / det;
    Ok((-0.5 * quad).exp() / det.sqrt())
}

/// All four quasi-probabilities, choosing the closed form that applies:
/// coherent projector, pure vacuum with squeezing, or the thermal series.
pub fn qp_table(state: &OscillatorState, proj: &GaussianProjector, t1: f64, t2: f64) -> Result<QuasiProbTable> {
    let (x1, x2, x12) = projector_terms(state, proj, t1, t2)?;
    let q = OutcomePair::ALL.map(|p| combine(p, x1, x2, x12));
    let p2 = single_time_probability(state, proj, t2)?;
    let table = QuasiProbTable::from_values(q, p2);
    if q.iter().all(|v| v.is_finite()) {
        Ok(table)
    } else {
        Err(LgiError::NonFinite("qp_table"))
    }
}

/// `(Tr[P1 rho], Tr[P2 rho], Tr[P2 P1 rho])` by the applicable closed form.
pub fn projector_terms(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
) -> Result<(f64, f64, Complex)> {
    if proj.r == 0.0 {
        thermal_coherent_terms(state, proj.beta, t1, t2)
    } else if state.is_vacuum() {
        let (t1, t2) = scaled_times(state, t1, t2)?;
        let (x, x12) = vacuum_squeezed_terms(proj, t2 - t1);
        Ok((x, x, x12))
    } else {
        thermal_squeezed_terms(state, proj, t1, t2)
    }
}

/// Quasi-probability for one outcome pair via [`qp_table`]'s dispatch.
pub fn qp(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
    pair: OutcomePair,
) -> Result<f64> {
    let (x1, x2, x12) = projector_terms(state, proj, t1, t2)?;
    Ok(combine(pair, x1, x2, x12))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const PP: OutcomePair = OutcomePair::PP;
    const MM: OutcomePair = OutcomePair::MM;

    fn re(x: f64) -> Complex {
        c(x, 0.0)
    }

    #[test]
    fn vacuum_coherent_examples() {
        for p in OutcomePair::ALL {
            let s1 = p.s1.sign();
            let s2 = p.s2.sign();
            let want = (1.0 + s1) * (1.0 + s2) / 4.0;
            assert_eq!(qp_vacuum_coherent(re(0.0), 1.3, p.s1, p.s2), want);
        }
        let b: f64 = 1.6;
        let q = qp_vacuum_coherent(re(b), PI / 2.0, PP.s1, PP.s2);
        let want = (-2.0 * b * b).exp() * (b * b).cos();
        assert!((q - want).abs() < 1e-14);
        assert!((q + 0.004_993_5).abs() < 1e-7);

        let b: f64 = (1.5f64).ln().sqrt() / 2f64.sqrt();
        let q = qp_vacuum_coherent(re(b), PI, MM.s1, MM.s2);
        let x = (-b * b).exp();
        assert!((q - (1.0 - 2.0 * x + x * x * x)).abs() < 1e-14);
        assert!((q + 0.088_662_1).abs() < 1e-6);
    }

    #[test]
    fn squeezed_reduces_to_coherent() {
        let proj = GaussianProjector::coherent(c(0.4503, -0.2));
        for p in OutcomePair::ALL {
            for &th in &[0.0, 0.7, PI, 5.0] {
                let a = qp_vacuum_squeezed(&proj, th, p.s1, p.s2);
                let b = qp_vacuum_coherent(proj.beta, th, p.s1, p.s2);
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn near_luders_example() {
        let proj = GaussianProjector::new(re(0.57), 0.31).unwrap();
        let g = proj.gamma();
        assert!((g.re - 0.418_064_8).abs() < 1e-7 && g.im == 0.0);
        let ov0 = squeezed_vacuum_overlap(g, 0.31, PI).norm_sqr();
        assert!((ov0 - 0.759_885_47).abs() < 1e-8);
        let ov = squeezed_overlap(-g, g, 3.0 * PI, PI, 0.31);
        let want = (-2.0 * g.re * g.re * (0.62f64).exp()).exp();
        assert!((ov - want).norm() < 1e-14);
        let q = qp_vacuum_squeezed(&proj, PI, MM.s1, MM.s2);
        assert!((q + 0.122_996_6).abs() < 1e-7);
    }

    #[test]
    fn large_squeezing_example() {
        let proj = GaussianProjector::new(re(0.57), 5.0).unwrap();
        let q = qp_vacuum_squeezed(&proj, PI, PP.s1, PP.s2);
        let g = proj.gamma().re;
        let want = (-g * g * (1.0 + 5f64.tanh())).exp() / 5f64.cosh() * (-2.0 * g * g * 10f64.exp()).exp();
        assert!((q - want).abs() < 1e-14);
        assert!((q - 0.0070).abs() < 5e-4);
    }

    #[test]
    fn overlap_trivial_limits() {
        let b1 = c(0.3, -0.7);
        let b2 = c(-1.1, 0.4);
        let same = squeezed_overlap(b1, b1, 0.4, 0.4, 0.8);
        assert!((same - 1.0).norm() < 1e-14);
        let coh = squeezed_overlap(b1, b2, 0.1, 2.0, 0.0);
        let want = (-0.5 * b1.norm_sqr() - 0.5 * b2.norm_sqr() + b1.conj() * b2).exp();
        assert!((coh - want).norm() < 1e-14);
        let v = squeezed_vacuum_overlap(re(0.0), 0.7, 1.0);
        assert!((v - 1.0 / 0.7f64.cosh().sqrt()).norm() < 1e-15);
        let v = squeezed_vacuum_overlap(b1, 0.0, 1.0);
        assert!((v - (-0.5 * b1.norm_sqr()).exp()).norm() < 1e-15);
    }

    #[test]
    fn overlap_from_fock_amplitudes() {
        let (b1, b2, p1, p2, r) = (c(0.3, -0.7), c(-0.5, 0.4), 0.9, 2.9, 0.6);
        let a1 = squeezed_fock_amplitudes(b1, r, p1, 400);
        let a2 = squeezed_fock_amplitudes(b2, r, p2, 400);
        let norm: f64 = a1.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        let dot: Complex = a1.iter().zip(&a2).map(|(x, y)| x.conj() * y).sum();
        assert!((dot - squeezed_overlap(b1, b2, p1, p2, r)).norm() < 1e-12);
    }

    #[test]
    fn vacuum_squeezed_projector_weight_is_time_independent() {
        // complex beta: |<0|gamma(t), zeta(t)>|^2 must not depend on t
        let proj = GaussianProjector::new(c(0.8, -0.45), 0.7).unwrap();
        let base = squeezed_vacuum_overlap(proj.gamma(), proj.r, PI);
        for &t in &[0.3, 1.7, 4.0] {
            let v = squeezed_vacuum_overlap(proj.gamma_at(t), proj.r, GaussianProjector::squeeze_phase(t));
            assert!((v - base).norm() < 1e-14);
        }
    }

    #[test]
    fn series_matches_closed_forms() {
        let state = OscillatorState::new(c(0.4, -0.3), 0.9).unwrap();
        let proj = GaussianProjector::coherent(c(1.1, 0.5));
        let sq = GaussianProjector { r: 0.0, ..proj };
        for p in OutcomePair::ALL {
            let a = qp_thermal_coherent(&state, &proj, 0.4, 2.1, p.s1, p.s2).unwrap();
            let b = qp_thermal_squeezed(&state, &sq, 0.4, 2.1, p.s1, p.s2).unwrap();
            assert!((a - b).abs() < 1e-12, "{p}: {a} vs {b}");
        }
        let vac = OscillatorState::vacuum();
        let proj = GaussianProjector::new(c(0.7, 0.2), -0.6).unwrap();
        for p in OutcomePair::ALL {
            let a = qp_vacuum_squeezed(&proj, 1.9, p.s1, p.s2);
            let b = qp_thermal_squeezed(&vac, &proj, 0.0, 1.9, p.s1, p.s2).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn coherent_path_rejects_squeezing() {
        let proj = GaussianProjector::new(re(0.5), 0.2).unwrap();
        let err = qp_thermal_coherent(&OscillatorState::vacuum(), &proj, 0.0, 1.0, Outcome::Plus, Outcome::Plus);
        assert!(matches!(err, Err(LgiError::InvalidProjector { .. })));
        assert!(OscillatorState::new(re(0.0), 0.49).is_err());
        assert!(OscillatorState::new(re(f64::NAN), 0.6).is_err());
    }

    #[test]
    fn table_examples() {
        let vac = OscillatorState::vacuum();
        let t = qp_table(&vac, &GaussianProjector::coherent(re(0.0)), 0.0, 1.0).unwrap();
        assert_eq!(t.values(), [1.0, 0.0, 0.0, 0.0]);

        let proj = GaussianProjector::new(c(0.6, 0.3), 0.4).unwrap();
        let t = qp_table(&vac, &proj, 0.8, 0.8).unwrap();
        let p = t.p2_plus;
        assert!((t.q_pp - p).abs() < 1e-12 && t.q_pm.abs() < 1e-12 && t.q_mp.abs() < 1e-12);
        assert!((t.q_mm - (1.0 - p)).abs() < 1e-12);

        let proj = GaussianProjector::new(re(0.57), 0.31).unwrap();
        let t = qp_table(&vac, &proj, 0.0, PI).unwrap();
        assert!((t.q_mm + 0.123).abs() < 0.003);
        assert!(t.sum_check.abs() < 1e-12);
    }

    #[test]
    fn series_refuses_unreachable_peak() {
        let warm = OscillatorState::new(re(1.0), 0.6).unwrap();
        for r in [8.0, 40.0] {
            let proj = GaussianProjector::new(re(1.0), r).unwrap();
            let e = qp_thermal_squeezed(&warm, &proj, 0.0, 1.0, Outcome::Minus, Outcome::Minus).unwrap_err();
            assert!(matches!(e, LgiError::Truncation { .. }), "{e}");
        }
    }

    #[test]
    fn thermal_examples() {
        let proj = GaussianProjector::coherent(re(0.7));
        let hot = OscillatorState::new(re(0.0), 1e6).unwrap();
        for p in OutcomePair::ALL {
            let q = qp_thermal_coherent(&hot, &proj, 0.2, 1.4, p.s1, p.s2).unwrap();
            let base = p.weights()[0];
            assert!((q - base).abs() < 1e-5);
        }
        let vac = OscillatorState::vacuum();
        let q = qp_thermal_coherent(&vac, &GaussianProjector::coherent(re(0.0)), 0.0, 2.0, Outcome::Plus, Outcome::Plus).unwrap();
        assert_eq!(q, 1.0);
        let warm = OscillatorState::new(re(0.0), 0.75).unwrap();
        let proj = GaussianProjector::coherent(re(0.5));
        for k in 0..=400 {
            let th = 2.0 * PI * k as f64 / 400.0;
            let q = qp_thermal_coherent(&warm, &proj, 0.0, th, Outcome::Minus, Outcome::Minus).unwrap();
            assert!(q >= 0.0, "theta = {th}: {q}");
        }
    }

    #[test]
    fn single_time_probability_matches_fock_series() {
        let state = OscillatorState::new(c(-0.6, 0.9), 1.2).unwrap();
        let proj = GaussianProjector::new(c(0.3, -1.4), 0.45).unwrap();
        for &t in &[0.0, 0.9, 2.5] {
            let (x1, _, _) = thermal_squeezed_terms(&state, &proj, t, t + 1.0).unwrap();
            let p = single_time_probability(&state, &proj, t).unwrap();
            assert!((x1 - p).abs() < 1e-12, "t = {t}: {x1} vs {p}");
        }
    }
}
