//! Range of `omega_ell` over which a field quasi-probability goes negative.

use serde::{Deserialize, Serialize};

use super::scan::{grid_scan, Axis, ScanSpec, ScanSystem};
use crate::error::{LgiError, Result};
use crate::exec::Execution;
use crate::outcome::OutcomePair;
use crate::tolerances::NEGATIVITY_THRESHOLD;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub outcome: OutcomePair,
    pub omega_lo: f64,
    pub omega_hi: f64,
    /// Number of log-spaced `omega_ell` values.
    pub omega_n: usize,
    pub beta: Axis,
    pub tau: Axis,
    /// A scan minimum below `-threshold` counts as negative.
    pub threshold: f64,
}

impl Default for WindowSpec {
    fn default() -> Self {
        WindowSpec {
            outcome: OutcomePair::MM,
            omega_lo: 0.05,
            omega_hi: 50.0,
            omega_n: 31,
            beta: Axis { lo: 0.0, hi: 3.0, n: 61 },
            tau: Axis { lo: 0.0, hi: 8.0, n: 81 },
            threshold: NEGATIVITY_THRESHOLD,
        }
    }
}

impl WindowSpec {
    pub fn omega_values(&self) -> Vec<f64> {
        let (a, b) = (self.omega_lo.ln(), self.omega_hi.ln());
        (0..self.omega_n)
            .map(|i| (a + (b - a) * i as f64 / (self.omega_n - 1) as f64).exp())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowEntry {
    pub omega_ell: f64,
    pub min_q: f64,
    pub beta: f64,
    pub tau: f64,
    pub negative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub spec: WindowSpec,
    pub entries: Vec<WindowEntry>,
    /// Smallest and largest sampled `omega_ell` with a negative minimum.
    pub interval: Option<[f64; 2]>,
    /// Whether the negative samples form one unbroken run.
    pub contiguous: bool,
    pub contains_one: bool,
}

impl WindowReport {
    /// Negative samples form a single run strictly inside the scanned range
    /// and the run covers `omega_ell = 1`.
    pub fn is_bounded_window(&self) -> bool {
        let first = self.entries.first().is_some_and(|e| !e.negative);
        let last = self.entries.last().is_some_and(|e| !e.negative);
        self.contiguous && self.contains_one && first && last
    }
}

/// Scans `(beta, tau)` at each log-spaced `omega_ell` and reports where the
/// minimum is negative.
pub fn omega_ell_window(spec: &WindowSpec, exec: Execution) -> Result<WindowReport> {
    if !(spec.omega_lo > 0.0 && spec.omega_lo < spec.omega_hi && spec.omega_n >= 2) {
        return Err(LgiError::invalid("omega_ell grid", "need 0 < lo < hi and n >= 2"));
    }
    let mut entries = Vec::with_capacity(spec.omega_n);
    for w in spec.omega_values() {
        let scan = ScanSpec {
            system: ScanSystem::field(w),
            x: spec.tau,
            beta: spec.beta,
            outcomes: vec![spec.outcome],
        };
        let m = grid_scan(&scan, exec)?.minimum(spec.outcome);
        entries.push(WindowEntry {
            omega_ell: w,
            min_q: m.q,
            beta: m.beta,
            tau: m.x,
            negative: m.q < -spec.threshold,
        });
    }
    let neg: Vec<usize> = entries.iter().enumerate().filter(|(_, e)| e.negative).map(|(i, _)| i).collect();
    let interval = match (neg.first(), neg.last()) {
        (Some(&a), Some(&b)) => Some([entries[a].omega_ell, entries[b].omega_ell]),
        _ => None,
    };
    let contiguous = neg.windows(2).all(|p| p[1] == p[0] + 1);
    let contains_one = interval.is_some_and(|[a, b]| a <= 1.0 && 1.0 <= b);
    Ok(WindowReport {
        spec: spec.clone(),
        entries,
        interval,
        contiguous,
        contains_one,
    })
}
