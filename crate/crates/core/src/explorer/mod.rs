//! Parameter-plane scans, `q = 0` level sets and violation search.

pub mod contour;
pub mod optimize;
pub mod scan;
pub mod window;

pub use contour::{negative_regions, NegativeRegion, Polyline};
pub use optimize::{minimize_q, OptimizeResult, OptimizeSpec, OptimizeSystem, RestartReport};
pub use scan::{grid_scan, Axis, ScanResult, ScanSpec, ScanSystem};
pub use window::{omega_ell_window, WindowEntry, WindowReport, WindowSpec};
