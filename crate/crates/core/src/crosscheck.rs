//! Seeded random scenarios evaluated three independent ways: closed form,
//! dense Fock matrices, and the displacement-operator integral route.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exec::{map_indexed, Execution};
use crate::fock;
use crate::numerics::Complex;
use crate::oscillator::{displacement_route, projector_terms, GaussianProjector, OscillatorState};
use crate::outcome::OutcomePair;
use crate::tolerances::DEFAULT_FOCK_DIM;

/// Sampling box for oscillator scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub max_alpha: f64,
    pub max_beta: f64,
    pub max_r: f64,
    pub nu: [f64; 2],
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox {
            max_alpha: 2.5,
            max_beta: 2.5,
            max_r: 1.0,
            nu: [0.5, 1.5],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub state: OscillatorState,
    pub proj: GaussianProjector,
    pub t1: f64,
    pub t2: f64,
}

fn in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex {
    let rho = radius * rng.gen::<f64>().sqrt();
    Complex::from_polar(rho, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// `n` scenarios: `alpha`, `beta` uniform in disks, `r`, `nu`, `t1` and
/// `theta = t2 - t1` uniform in their ranges.
pub fn sample_scenarios(n: usize, seed: u64, bounds: &SampleBox) -> Vec<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let alpha = in_disk(&mut rng, bounds.max_alpha);
            let beta = in_disk(&mut rng, bounds.max_beta);
            let r = rng.gen_range(-bounds.max_r..=bounds.max_r);
            let nu = rng.gen_range(bounds.nu[0]..=bounds.nu[1]);
            let t1 = rng.gen_range(0.0..std::f64::consts::TAU);
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            Scenario {
                state: OscillatorState { alpha, nu, omega0: 1.0 },
                proj: GaussianProjector { beta, r },
                t1,
                t2: t1 + theta,
            }
        })
        .collect()
}

/// All four `q` values from each route, in order `++, +-, -+, --`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub scenario: Scenario,
    pub closed: [f64; 4],
    pub fock: [f64; 4],
    pub displacement: [f64; 4],
    pub fock_dim: usize,
}

impl CrossCheck {
    /// Largest disagreement between any two routes.
    pub fn max_delta(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..4 {
            let v = [self.closed[i], self.fock[i], self.displacement[i]];
            m = m.max((v[0] - v[1]).abs()).max((v[0] - v[2]).abs()).max((v[1] - v[2]).abs());
        }
        m
    }
}

fn table_from_terms((x1, x2, x12): (f64, f64, Complex)) -> [f64; 4] {
    OutcomePair::ALL.map(|p| {
        let [w0, w1, w2, w12] = p.weights();
        w0 + w1 * x1 + w2 * x2 + w12 * x12.re
    })
}

pub fn cross_check(s: &Scenario) -> Result<CrossCheck> {
    let closed = table_from_terms(projector_terms(&s.state, &s.proj, s.t1, s.t2)?);
    let displacement = table_from_terms(displacement_route::projector_terms(&s.state, &s.proj, s.t1, s.t2)?);
    let f = fock::converged(&s.state, &s.proj, s.t1, s.t2, DEFAULT_FOCK_DIM)?;
    Ok(CrossCheck {
        scenario: *s,
        closed,
        fock: f.q,
        displacement,
        fock_dim: f.dim,
    })
}

/// Cross-checks every scenario; per-scenario failures are kept in place.
pub fn cross_check_all(scenarios: &[Scenario], exec: Execution) -> Vec<Result<CrossCheck>> {
    map_indexed(exec, scenarios.len(), |i| cross_check(&scenarios[i]))
}
