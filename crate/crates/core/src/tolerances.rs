//! Every numeric tolerance and threshold used by the library and its
//! acceptance suite, in one place.

/// Lüders bound: the smallest value a two-time quasi-probability can take.
pub const LUDERS_BOUND: f64 = -0.125;

/// Slack allowed below [`LUDERS_BOUND`] before a value is reported as a bug.
pub const LUDERS_SLACK: f64 = 1e-9;

/// `sum over (s1, s2) of q = 1`.
pub const SUM_RULE: f64 = 1e-12;

/// `sum over s1 of q(s1, s2) = p2(s2)` for the oscillator.
pub const MARGINAL_RULE: f64 = 1e-10;

/// Marginal sum rule for the field, where `p2` comes from the same integral.
pub const FIELD_MARGINAL_RULE: f64 = 1e-9;

/// Componentwise symmetry required of a quadratic-form matrix.
pub const SYMMETRY: f64 = 1e-12;

/// Determinant magnitude below which a quadratic form is treated as singular.
pub const SINGULAR_DET: f64 = 1e-300;

/// Relative accuracy target of the Dawson function.
pub const DAWSON_REL: f64 = 1e-12;

/// Absolute accuracy target of the semi-infinite adaptive quadrature.
pub const QUADRATURE_ABS: f64 = 1e-10;

/// Subinterval budget of the adaptive quadrature.
pub const QUADRATURE_MAX_INTERVALS: usize = 4000;

/// Closed form vs oracle agreement for quasi-probabilities.
pub const ORACLE_AGREEMENT: f64 = 1e-6;

/// `|q_N - q_2N|` accepted as converged by the Fock oracle.
pub const FOCK_DOUBLING: f64 = 1e-8;

/// Default Fock truncation.
pub const DEFAULT_FOCK_DIM: usize = 120;

/// Largest truncation the oracle will double up to.
pub const MAX_FOCK_DIM: usize = 1024;

/// Tail amplitude the truncation heuristics aim for.
pub const FOCK_TAIL: f64 = 1e-8;

/// Density matrix trace / Hermiticity tolerance.
pub const DENSITY_TRACE: f64 = 1e-10;

/// Term size at which the thermal Fock series is truncated.
pub const SERIES_TAIL: f64 = 1e-12;

/// Hard cap on Fock-series terms.
pub const SERIES_MAX_TERMS: usize = 20_000;

/// A scan minimum below `-NEGATIVITY_THRESHOLD` counts as a violation.
pub const NEGATIVITY_THRESHOLD: f64 = 1e-6;

/// Gauss–Hermite nodes per axis of the quadrature oracle.
pub const HERMITE_NODES: usize = 64;

/// Nelder–Mead stopping tolerances.
pub const NM_F_TOL: f64 = 1e-13;
pub const NM_X_TOL: f64 = 1e-9;
pub const NM_MAX_ITER: usize = 4000;

/// Default multi-start count.
pub const DEFAULT_RESTARTS: usize = 16;
