use serde::{Deserialize, Serialize};

use crate::error::{LgiError, Result};
use crate::exec::{map_indexed, Execution};
use crate::field::{field_table, FieldScenario};
use crate::numerics::{c, Complex};
use crate::oscillator::{qp_table, GaussianProjector, OscillatorState};
use crate::outcome::{OutcomePair, QuasiProbTable};

/// Evenly spaced samples `lo, ..., hi`. A single sample requires `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        let axis = Axis { lo, hi, n };
        axis.validate("axis")?;
        Ok(axis)
    }

    /// One-point axis at `v`.
    pub fn point(v: f64) -> Self {
        Axis { lo: v, hi: v, n: 1 }
    }

    fn validate(&self, name: &'static str) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(LgiError::invalid(name, "range must be finite"));
        }
        match self.n {
            0 => Err(LgiError::invalid(name, "needs at least one sample")),
            1 if self.lo != self.hi => Err(LgiError::invalid(name, "a single sample needs lo == hi")),
            1 => Ok(()),
            _ if self.lo >= self.hi => Err(LgiError::invalid(name, "needs lo < hi")),
            _ => Ok(()),
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.n == 1 {
            self.lo
        } else if i + 1 == self.n {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.value(i)).collect()
    }
}

/// Which model a scan evaluates. The y axis is always a real projector
/// displacement `beta`; the x axis is `theta = Omega (t2 - t1)` for the
/// oscillator and `tau = t21 / l` for the field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "system", rename_all = "lowercase")]
pub enum ScanSystem {
    Oscillator {
        alpha: Complex,
        nu: f64,
        r: f64,
        t1: f64,
    },
    Field {
        omega_ell: f64,
    },
}

impl ScanSystem {
    pub fn oscillator(alpha: Complex, nu: f64, r: f64) -> Self {
        ScanSystem::Oscillator { alpha, nu, r, t1: 0.0 }
    }

    pub fn field(omega_ell: f64) -> Self {
        ScanSystem::Field { omega_ell }
    }

    pub fn x_name(&self) -> &'static str {
        match self {
            ScanSystem::Oscillator { .. } => "theta",
            ScanSystem::Field { .. } => "tau",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ScanSystem::Oscillator { alpha, nu, r, t1 } => {
                OscillatorState::new(alpha, nu)?;
                GaussianProjector::new(c(0.0, 0.0), r)?;
                crate::error::ensure_finite(t1, "t1")?;
                Ok(())
            }
            ScanSystem::Field { omega_ell } => FieldScenario::new(omega_ell, c(0.0, 0.0), 0.0).map(|_| ()),
        }
    }

    /// Quasi-probability table at one `(x, beta)` point.
    pub fn table(&self, x: f64, beta: f64) -> Result<QuasiProbTable> {
        match *self {
            ScanSystem::Oscillator { alpha, nu, r, t1 } => {
                let state = OscillatorState::new(alpha, nu)?;
                let proj = GaussianProjector::new(c(beta, 0.0), r)?;
                qp_table(&state, &proj, t1, t1 + x)
            }
            ScanSystem::Field { omega_ell } => field_table(&FieldScenario::new(omega_ell, c(beta, 0.0), x)?),
        }
    }
}

/// A rectangular scan over `(x, beta)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub system: ScanSystem,
    pub x: Axis,
    pub beta: Axis,
    /// Outcomes whose minima and contours are reported; all four are always
    /// evaluated.
    pub outcomes: Vec<OutcomePair>,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        self.system.validate()?;
        self.x.validate("x axis")?;
        self.beta.validate("beta axis")?;
        if self.outcomes.is_empty() {
            return Err(LgiError::invalid("outcomes", "at least one outcome is required"));
        }
        if let ScanSystem::Field { .. } = self.system {
            if self.x.lo < 0.0 {
                return Err(LgiError::invalid("tau axis", "tau must be >= 0"));
            }
        }
        Ok(())
    }
}

/// Smallest grid value of one outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridMinimum {
    pub outcome: OutcomePair,
    pub q: f64,
    pub ix: usize,
    pub iy: usize,
    pub x: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub spec: ScanSpec,
    pub version: String,
    /// Row-major, x fastest: entry `iy * nx + ix`, outcomes in `++, +-, -+, --`.
    pub q: Vec<[f64; 4]>,
    pub p2_plus: Vec<f64>,
    pub minima: Vec<GridMinimum>,
    /// Largest `|sum q - 1|` on the grid.
    pub max_sum_residual: f64,
    /// Largest `|sum_s1 q - p2|` on the grid.
    pub max_marginal_residual: f64,
}

impl ScanResult {
    pub fn nx(&self) -> usize {
        self.spec.x.n
    }

    pub fn ny(&self) -> usize {
        self.spec.beta.n
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx() + ix
    }

    pub fn value(&self, pair: OutcomePair, ix: usize, iy: usize) -> f64 {
        self.q[self.index(ix, iy)][pair.index()]
    }

    /// One outcome as a flat row-major grid.
    pub fn grid(&self, pair: OutcomePair) -> Vec<f64> {
        self.q.iter().map(|row| row[pair.index()]).collect()
    }

    pub fn minimum(&self, pair: OutcomePair) -> GridMinimum {
        minimum_of(&self.spec, &self.q, pair)
    }

    /// Smallest value over all four outcomes.
    pub fn global_min(&self) -> f64 {
        self.q.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }
}

fn minimum_of(spec: &ScanSpec, q: &[[f64; 4]], pair: OutcomePair) -> GridMinimum {
    let nx = spec.x.n;
    let (k, v) = q
        .iter()
        .map(|row| row[pair.index()])
        .enumerate()
        .fold((0, f64::INFINITY), |best, (k, v)| if v < best.1 { (k, v) } else { best });
    let (ix, iy) = (k % nx, k / nx);
    GridMinimum {
        outcome: pair,
        q: v,
        ix,
        iy,
        x: spec.x.value(ix),
        beta: spec.beta.value(iy),
    }
}

/// Evaluates every grid point. The result does not depend on `exec`.
pub fn grid_scan(spec: &ScanSpec, exec: Execution) -> Result<ScanResult> {
    spec.validate()?;
    let nx = spec.x.n;
    let total = nx * spec.beta.n;
    let tables = map_indexed(exec, total, |k| {
        let (ix, iy) = (k % nx, k / nx);
        spec.system
            .table(spec.x.value(ix), spec.beta.value(iy))
            .map_err(|e| LgiError::AtGridPoint {
                ix,
                iy,
                source: Box::new(e),
            })
    });
    let tables = tables.into_iter().collect::<Result<Vec<_>>>()?;

    let mut max_sum: f64 = 0.0;
    let mut max_marg: f64 = 0.0;
    for t in &tables {
        max_sum = max_sum.max(t.sum_check.abs());
        for s2 in crate::Outcome::BOTH {
            max_marg = max_marg.max(t.marginal_residual(s2).abs());
        }
    }
    let q: Vec<[f64; 4]> = tables.iter().map(|t| t.values()).collect();
    let minima = spec.outcomes.iter().map(|&p| minimum_of(spec, &q, p)).collect();
    Ok(ScanResult {
        spec: spec.clone(),
        version: crate::VERSION.to_string(),
        p2_plus: tables.iter().map(|t| t.p2_plus).collect(),
        q,
        minima,
        max_sum_residual: max_sum,
        max_marginal_residual: max_marg,
    })
}
