//! Box-constrained Nelder–Mead with deterministic multi-start.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LgiError, Result};
use crate::exec::{map_indexed, Execution};
use crate::field::{qp_field, FieldScenario};
use crate::numerics::{c, Complex};
use crate::oscillator::{qp, GaussianProjector, OscillatorState};
use crate::outcome::OutcomePair;
use crate::tolerances::{LUDERS_BOUND, LUDERS_SLACK, NM_F_TOL, NM_MAX_ITER, NM_X_TOL};

/// Model and parameter meaning for the search. Oscillator parameters are
/// `(r, beta, theta)`; field parameters are `(omega_ell, beta, tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "lowercase")]
pub enum OptimizeSystem {
    Oscillator { alpha: Complex, nu: f64 },
    Field,
}

impl OptimizeSystem {
    pub fn vacuum_oscillator() -> Self {
        OptimizeSystem::Oscillator {
            alpha: c(0.0, 0.0),
            nu: 0.5,
        }
    }

    pub fn param_names(&self) -> [&'static str; 3] {
        match self {
            OptimizeSystem::Oscillator { .. } => ["r", "beta", "theta"],
            OptimizeSystem::Field => ["omega_ell", "beta", "tau"],
        }
    }

    /// `q` at a parameter point.
    pub fn evaluate(&self, p: [f64; 3], pair: OutcomePair) -> Result<f64> {
        match *self {
            OptimizeSystem::Oscillator { alpha, nu } => {
                let state = OscillatorState::new(alpha, nu)?;
                let proj = GaussianProjector::new(c(p[1], 0.0), p[0])?;
                qp(&state, &proj, 0.0, p[2], pair)
            }
            OptimizeSystem::Field => qp_field(&FieldScenario::new(p[0], c(p[1], 0.0), p[2])?, pair),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeSpec {
    pub system: OptimizeSystem,
    pub outcome: OutcomePair,
    /// Inclusive `[lo, hi]` per parameter; `lo == hi` pins it.
    pub bounds: [[f64; 2]; 3],
    pub restarts: usize,
    pub seed: u64,
}

impl OptimizeSpec {
    /// Oscillator `--` search over `r in [0,1], beta in [0,2], theta in [0, 2 pi]`.
    pub fn oscillator_default() -> Self {
        OptimizeSpec {
            system: OptimizeSystem::vacuum_oscillator(),
            outcome: OutcomePair::MM,
            bounds: [[0.0, 1.0], [0.0, 2.0], [0.0, 2.0 * std::f64::consts::PI]],
            restarts: crate::tolerances::DEFAULT_RESTARTS,
            seed: 0,
        }
    }

    /// Field `--` search over `omega_ell in [0.1, 10], beta in [0, 3], tau in [0, 8]`.
    pub fn field_default() -> Self {
        OptimizeSpec {
            system: OptimizeSystem::Field,
            outcome: OutcomePair::MM,
            bounds: [[0.1, 10.0], [0.0, 3.0], [0.0, 8.0]],
            restarts: crate::tolerances::DEFAULT_RESTARTS,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(LgiError::invalid("restarts", "must be >= 1"));
        }
        for (b, name) in self.bounds.iter().zip(self.system.param_names()) {
            if !(b[0].is_finite() && b[1].is_finite() && b[0] <= b[1]) {
                return Err(LgiError::invalid(
                    "bounds",
                    format!("{name}: need finite lo <= hi, got [{}, {}]", b[0], b[1]),
                ));
            }
        }
        if let OptimizeSystem::Field = self.system {
            if self.bounds[0][0] <= 0.0 {
                return Err(LgiError::invalid("bounds", "omega_ell must stay > 0"));
            }
            if self.bounds[2][0] < 0.0 {
                return Err(LgiError::invalid("bounds", "tau must stay >= 0"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartReport {
    pub index: usize,
    pub start: [f64; 3],
    pub params: [f64; 3],
    pub q: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeResult {
    pub spec: OptimizeSpec,
    pub param_names: [String; 3],
    pub params: [f64; 3],
    pub q: f64,
    pub iterations: usize,
    pub restart_index: usize,
    pub converged_restarts: usize,
    pub restarts: Vec<RestartReport>,
}

/// Deterministic start points in `[0,1)^3`: Halton (bases 2, 3, 5) with a
/// seeded random shift modulo 1.
pub fn start_points(n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
    (0..n)
        .map(|k| {
            let mut p = [0.0; 3];
            for (d, base) in [2u64, 3, 5].into_iter().enumerate() {
                p[d] = (radical_inverse(k as u64 + 1, base) + shift[d]).fract();
            }
            p
        })
        .collect()
}

fn radical_inverse(mut k: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while k > 0 {
        out += (k % base) as f64 * inv;
        k /= base;
        inv /= base as f64;
    }
    out
}

/// Multi-start minimisation of `q`. Restarts run through `exec`; the winner
/// is the smallest `q`, ties broken by restart index.
pub fn minimize_q(spec: &OptimizeSpec, exec: Execution) -> Result<OptimizeResult> {
    spec.validate()?;
    let free: Vec<usize> = (0..3).filter(|&d| spec.bounds[d][0] < spec.bounds[d][1]).collect();
    let starts = start_points(spec.restarts, spec.seed);

    let reports = map_indexed(exec, spec.restarts, |i| {
        let mut start = [0.0; 3];
        for d in 0..3 {
            let [lo, hi] = spec.bounds[d];
            start[d] = lo + starts[i][d] * (hi - lo);
        }
        let objective = |p: [f64; 3]| match spec.system.evaluate(p, spec.outcome) {
            Ok(v) if v.is_finite() => v,
            _ => f64::INFINITY,
        };
        let (params, iterations, converged) = nelder_mead(&objective, start, &free, &spec.bounds);
        RestartReport {
            index: i,
            start,
            params,
            q: objective(params),
            iterations,
            converged,
        }
    });

    let best = reports
        .iter()
        .filter(|r| r.q.is_finite())
        .min_by(|a, b| a.q.total_cmp(&b.q).then(a.index.cmp(&b.index)))
        .ok_or(LgiError::NoConvergence {
            what: "all optimizer restarts",
            estimate: f64::INFINITY,
        })?;
    if best.q < LUDERS_BOUND - LUDERS_SLACK {
        return Err(LgiError::invalid("q", format!("{} is below the Lüders bound", best.q)));
    }
    Ok(OptimizeResult {
        spec: spec.clone(),
        param_names: spec.system.param_names().map(String::from),
        params: best.params,
        q: best.q,
        iterations: best.iterations,
        restart_index: best.index,
        converged_restarts: reports.iter().filter(|r| r.converged).count(),
        restarts: reports,
    })
}

fn project(mut p: [f64; 3], bounds: &[[f64; 2]; 3]) -> [f64; 3] {
    for d in 0..3 {
        p[d] = p[d].clamp(bounds[d][0], bounds[d][1]);
    }
    p
}

/// Nelder–Mead over the `free` coordinates with every trial point clamped to
/// the box. Returns `(best point, iterations, converged)`.
fn nelder_mead(
    f: &dyn Fn([f64; 3]) -> f64,
    start: [f64; 3],
    free: &[usize],
    bounds: &[[f64; 2]; 3],
) -> ([f64; 3], usize, bool) {
    let n = free.len();
    if n == 0 {
        return (start, 0, true);
    }
    let mut simplex: Vec<([f64; 3], f64)> = Vec::with_capacity(n + 1);
    simplex.push((start, f(start)));
    for &d in free {
        let mut p = start;
        let span = bounds[d][1] - bounds[d][0];
        let step = 0.1 * span;
        p[d] = if p[d] + step <= bounds[d][1] { p[d] + step } else { p[d] - step };
        simplex.push((p, f(p)));
    }

    let combine = |a: &[f64; 3], b: &[f64; 3], t: f64| {
        let mut out = *a;
        for &d in free {
            out[d] = a[d] + t * (b[d] - a[d]);
        }
        project(out, bounds)
    };

    for it in 0..NM_MAX_ITER {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[n].1);
        let x0 = simplex[0].0;
        let size = simplex[1..]
            .iter()
            .flat_map(|(p, _)| free.iter().map(move |&d| (p[d] - x0[d]).abs()))
            .fold(0.0, f64::max);
        if (worst - best).abs() <= NM_F_TOL && size <= NM_X_TOL {
            return (simplex[0].0, it, true);
        }

        let mut centroid = [0.0; 3];
        for d in 0..3 {
            centroid[d] = simplex[..n].iter().map(|(p, _)| p[d]).sum::<f64>() / n as f64;
        }
        let xw = simplex[n].0;
        let xr = combine(&centroid, &xw, -1.0);
        let fr = f(xr);
        if fr < simplex[0].1 {
            let xe = combine(&centroid, &xw, -2.0);
            let fe = f(xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let p = combine(&centroid, &xr, 0.5);
                (p, f(p))
            } else {
                let p = combine(&centroid, &xw, 0.5);
                (p, f(p))
            };
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let x0 = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    let p = combine(&x0, &v.0, 0.5);
                    *v = (p, f(p));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    (simplex[0].0, NM_MAX_ITER, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_points_are_deterministic_and_spread() {
        let a = start_points(16, 7);
        assert_eq!(a, start_points(16, 7));
        assert_ne!(a, start_points(16, 8));
        assert!(a.iter().flatten().all(|&u| (0.0..1.0).contains(&u)));
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert!((radical_inverse(5, 3) - 7.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn nelder_mead_on_a_quadratic() {
        let f = |p: [f64; 3]| (p[0] - 0.3).powi(2) + 2.0 * (p[1] + 0.1).powi(2) + (p[2] - 5.0).powi(2);
        let b = [[-1.0, 1.0], [-1.0, 1.0], [0.0, 2.0]];
        let (p, _, ok) = nelder_mead(&f, [0.9, 0.9, 1.0], &[0, 1, 2], &b);
        assert!(ok);
        assert!((p[0] - 0.3).abs() < 1e-6 && (p[1] + 0.1).abs() < 1e-6);
        // constrained coordinate sits on its bound
        assert_eq!(p[2], 2.0);
    }

    #[test]
    fn pinned_coordinate_stays_put() {
        let f = |p: [f64; 3]| (p[0] - 0.3).powi(2) + (p[1] - 0.2).powi(2) + p[2];
        let b = [[-1.0, 1.0], [0.7, 0.7], [0.0, 1.0]];
        let (p, _, _) = nelder_mead(&f, [0.0, 0.7, 0.5], &[0, 2], &b);
        assert_eq!(p[1], 0.7);
    }

    #[test]
    fn coherent_vacuum_optimum() {
        let mut spec = OptimizeSpec::oscillator_default();
        spec.bounds[0] = [0.0, 0.0];
        let r = minimize_q(&spec, Execution::Sequential).unwrap();
        assert!((r.q + 0.088_662_1).abs() < 1e-6);
        assert!((r.params[1] - 0.450_258).abs() < 1e-4);
        assert!((r.params[2] - std::f64::consts::PI).abs() < 1e-4);
        assert_eq!(r.q, spec.system.evaluate(r.params, spec.outcome).unwrap());
    }
}
