//! Brute-force oracle: the oscillator quasi-probabilities computed from dense
//! truncated Fock-space matrices, with convergence checked by doubling the
//! truncation.

mod matrix;

pub use matrix::OperatorMatrix;

use serde::{Deserialize, Serialize};

use crate::error::{LgiError, Result};
use crate::numerics::{c, Complex};
use crate::oscillator::{GaussianProjector, OscillatorState};
use crate::outcome::OutcomePair;
use crate::tolerances::{DEFAULT_FOCK_DIM, FOCK_DOUBLING, FOCK_TAIL, MAX_FOCK_DIM};

/// `<n-1| a |n> = sqrt(n)`.
pub fn annihilation(n: usize) -> OperatorMatrix {
    let mut a = OperatorMatrix::zeros(n);
    for k in 1..n {
        a.set(k - 1, k, c((k as f64).sqrt(), 0.0));
    }
    a
}

/// Truncation needed for `D(alpha)` acting on low Fock states.
pub fn displacement_dim(alpha: Complex) -> usize {
    (alpha.norm() + 5.0).powi(2).ceil() as usize
}

/// Truncation needed for the squeezed vacuum tail to fall below
/// [`FOCK_TAIL`].
pub fn squeeze_dim(r: f64) -> usize {
    let t = r.abs().tanh();
    if t == 0.0 {
        return 2;
    }
    if t >= 1.0 {
        return usize::MAX;
    }
    (2.0 * FOCK_TAIL.ln() / t.ln()).ceil().max(2.0) as usize
}

/// `D(alpha) = exp(alpha a^dag - alpha^* a)` on an `n`-level space.
pub fn displacement(alpha: Complex, n: usize) -> Result<OperatorMatrix> {
    if displacement_dim(alpha) > n {
        return Err(LgiError::Truncation {
            dim: n,
            what: "|alpha|",
            value: alpha.norm(),
        });
    }
    displacement_unchecked(alpha, n)
}

/// [`displacement`] without the truncation heuristic.
pub fn displacement_unchecked(alpha: Complex, n: usize) -> Result<OperatorMatrix> {
    let a = annihilation(n);
    let ad = a.adjoint();
    ad.scale(alpha).sub(&a.scale(alpha.conj())).expm()
}

/// `S(zeta) = exp(zeta/2 a^dag^2 - zeta^*/2 a^2)` with `zeta = r e^{i phi}`.
pub fn squeeze(r: f64, phi: f64, n: usize) -> Result<OperatorMatrix> {
    if squeeze_dim(r) > n {
        return Err(LgiError::Truncation {
            dim: n,
            what: "|r|",
            value: r.abs(),
        });
    }
    squeeze_unchecked(r, phi, n)
}

/// [`squeeze`] without the truncation heuristic.
pub fn squeeze_unchecked(r: f64, phi: f64, n: usize) -> Result<OperatorMatrix> {
    let zeta = Complex::from_polar(r, phi);
    let a = annihilation(n);
    let a2 = a.mul(&a);
    let ad2 = a2.adjoint();
    ad2.scale(0.5 * zeta).sub(&a2.scale(0.5 * zeta.conj())).expm()
}

/// `D(alpha) rho_thermal D(alpha)^dag` with thermal weights `(1 - e^-A) e^{-An}`.
pub fn initial_state(state: &OscillatorState, n: usize) -> Result<OperatorMatrix> {
    let ea = state.boltzmann_ratio();
    let norm = state.thermal_norm();
    let weights: Vec<Complex> = (0..n).map(|k| c(norm * ea.powi(k as i32), 0.0)).collect();
    let d = displacement_unchecked(state.alpha, n)?;
    Ok(d.mul(&OperatorMatrix::diagonal(&weights)).mul(&d.adjoint()))
}

/// Projector ket at time `t`: `U(t)^dag D(gamma) S(-r) |0>` with
/// `U(t) = exp(-i a^dag a t)`.
pub fn projector_ket(proj: &GaussianProjector, t: f64, n: usize) -> Result<Vec<Complex>> {
    let sq = squeeze_unchecked(proj.r, std::f64::consts::PI, n)?;
    let d = displacement_unchecked(proj.gamma(), n)?;
    let ket0 = d.mul_vec(&sq.column(0));
    Ok(ket0
        .into_iter()
        .enumerate()
        .map(|(k, z)| z * Complex::from_polar(1.0, k as f64 * t))
        .collect())
}

/// Oracle output at one truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockEvaluation {
    pub dim: usize,
    /// `Re Tr[M_s2(t2) M_s1(t1) rho0]` in order `++, +-, -+, --`.
    pub q: [f64; 4],
    /// `Tr[M_s2(t2) M_s1(t1) rho0 M_s1(t1)]`, same order.
    pub p12: [f64; 4],
    /// `Tr[M_+(t2) rho0]`.
    pub p2_plus: f64,
    /// `Tr rho0` after truncation.
    pub trace: f64,
}

impl FockEvaluation {
    fn max_delta(&self, other: &Self) -> f64 {
        self.q
            .iter()
            .zip(&other.q)
            .chain(self.p12.iter().zip(&other.p12))
            .map(|(a, b)| (a - b).abs())
            .fold((self.p2_plus - other.p2_plus).abs(), f64::max)
    }

    pub fn q(&self, pair: OutcomePair) -> f64 {
        self.q[pair.index()]
    }

    pub fn p12(&self, pair: OutcomePair) -> f64 {
        self.p12[pair.index()]
    }
}

/// Starting truncation for a scenario: at least [`DEFAULT_FOCK_DIM`], enlarged
/// for large displacements, squeezing or temperature.
pub fn initial_dim(state: &OscillatorState, proj: &GaussianProjector) -> usize {
    let ea = state.boltzmann_ratio();
    let thermal = if ea > 0.0 { FOCK_TAIL.ln() / ea.ln() } else { 0.0 };
    let state_dim = (state.alpha.norm() + thermal.sqrt() + 5.0).powi(2).ceil() as usize;
    DEFAULT_FOCK_DIM
        .max(state_dim)
        .max(displacement_dim(proj.gamma()))
        .max(squeeze_dim(proj.r))
}

/// Evaluates every quantity at a fixed truncation `n`.
pub fn evaluate(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
    n: usize,
) -> Result<FockEvaluation> {
    if n < 2 {
        return Err(LgiError::invalid("n", format!("Fock dimension must be >= 2, got {n}")));
    }
    let rho = initial_state(state, n)?;
    let k1 = projector_ket(proj, state.omega0 * t1, n)?;
    let k2 = projector_ket(proj, state.omega0 * t2, n)?;
    let p1 = OperatorMatrix::outer(&k1, &k1);
    let p2 = OperatorMatrix::outer(&k2, &k2);
    let id = OperatorMatrix::identity(n);
    let m = |p: &OperatorMatrix, s: f64| id.scale(c(0.5 * (1.0 - s), 0.0)).add(&p.scale(c(s, 0.0)));

    let mut q = [0.0; 4];
    let mut p12 = [0.0; 4];
    for s1 in [1.0, -1.0] {
        let m1 = m(&p1, s1);
        let m1_rho = m1.mul(&rho);
        let sandwiched = m1_rho.mul(&m1);
        for s2 in [1.0, -1.0] {
            let m2 = m(&p2, s2);
            let idx = OutcomePair::ALL
                .iter()
                .position(|p| p.s1.sign() == s1 && p.s2.sign() == s2)
                .expect("all sign pairs are listed");
            q[idx] = m2.trace_product(&m1_rho).re;
            p12[idx] = m2.trace_product(&sandwiched).re;
        }
    }
    let out = FockEvaluation {
        dim: n,
        q,
        p12,
        p2_plus: p2.trace_product(&rho).re,
        trace: rho.trace().re,
    };
    if out.q.iter().chain(&out.p12).all(|v| v.is_finite()) {
        Ok(out)
    } else {
        Err(LgiError::NonFinite("Fock oracle"))
    }
}

/// Evaluates at `n`, `2n`, `4n`, ... until two successive truncations agree
/// to [`FOCK_DOUBLING`]; returns the larger one.
pub fn converged(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
    n: usize,
) -> Result<FockEvaluation> {
    let mut n = n.max(initial_dim(state, proj));
    let mut prev = evaluate(state, proj, t1, t2, n)?;
    loop {
        if 2 * n > MAX_FOCK_DIM.max(n) {
            return Err(LgiError::Truncation {
                dim: n,
                what: "doubling cap",
                value: MAX_FOCK_DIM as f64,
            });
        }
        n *= 2;
        let next = evaluate(state, proj, t1, t2, n)?;
        let delta = next.max_delta(&prev);
        if delta < FOCK_DOUBLING {
            return Ok(next);
        }
        if 2 * n > MAX_FOCK_DIM {
            return Err(LgiError::NoConvergence {
                what: "Fock truncation doubling",
                estimate: delta,
            });
        }
        prev = next;
    }
}

/// `Re Tr[M_s2(t2) M_s1(t1) rho0]` from dense matrices, doubling-checked.
pub fn qp_oracle(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
    pair: OutcomePair,
    n: usize,
) -> Result<f64> {
    Ok(converged(state, proj, t1, t2, n)?.q(pair))
}

/// Sequential-measurement probability `Tr[M_s2 M_s1 rho0 M_s1]`.
pub fn p12_oracle(
    state: &OscillatorState,
    proj: &GaussianProjector,
    t1: f64,
    t2: f64,
    pair: OutcomePair,
    n: usize,
) -> Result<f64> {
    Ok(converged(state, proj, t1, t2, n)?.p12(pair))
}
