//! Adaptive Gauss–Kronrod quadrature over `[0, inf)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::Complex;
use crate::error::{LgiError, Result};
use crate::tolerances::{QUADRATURE_ABS, QUADRATURE_MAX_INTERVALS};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel {
    a: f64,
    b: f64,
    value: Complex,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> Complex>(g: &F, a: f64, b: f64) -> (Complex, f64) {
    let h = 0.5 * (b - a);
    let m = 0.5 * (b + a);
    let fc = g(m);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = g(m - x) + g(m + x);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let value = kron * h;
    let error = ((kron - gauss) * h).norm();
    (value, if error.is_nan() { f64::INFINITY } else { error })
}

/// `int_0^inf f(k) dk` to absolute accuracy `1e-10`.
///
/// The half line is mapped onto `[0, 1)` by `k = s u / (1 - u)` with
/// `s = decay_scale`, then bisected adaptively, largest error first.
pub fn semi_infinite_quadrature<F>(f: F, decay_scale: f64) -> Result<Complex>
where
    F: Fn(f64) -> Complex,
{
    semi_infinite_quadrature_tol(f, decay_scale, QUADRATURE_ABS)
}

pub fn semi_infinite_quadrature_tol<F>(f: F, decay_scale: f64, tol: f64) -> Result<Complex>
where
    F: Fn(f64) -> Complex,
{
    if !(decay_scale.is_finite() && decay_scale > 0.0) {
        return Err(LgiError::invalid(
            "decay_scale",
            format!("must be positive and finite, got {decay_scale}"),
        ));
    }
    let s = decay_scale;
    let g = |u: f64| {
        let w = 1.0 - u;
        let v = f(s * u / w) * (s / (w * w));
        if v.re.is_finite() && v.im.is_finite() {
            v
        } else {
            Complex::new(0.0, 0.0)
        }
    };
    adaptive(&g, 0.0, 1.0, tol, "semi-infinite quadrature")
}

/// `int_a^b f(x) dx` to absolute accuracy `tol`.
pub fn finite_quadrature<F>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex>
where
    F: Fn(f64) -> Complex,
{
    adaptive(&f, a, b, tol, "finite quadrature")
}

fn adaptive<F: Fn(f64) -> Complex>(
    g: &F,
    a: f64,
    b: f64,
    tol: f64,
    what: &'static str,
) -> Result<Complex> {
    let mut heap = BinaryHeap::new();
    // A few initial panels so narrow features near the origin are seen.
    let n0 = 8;
    for i in 0..n0 {
        let lo = a + (b - a) * i as f64 / n0 as f64;
        let hi = a + (b - a) * (i + 1) as f64 / n0 as f64;
        let (value, error) = gk15(g, lo, hi);
        heap.push(Panel { a: lo, b: hi, value, error });
    }
    loop {
        let total_err: f64 = heap.iter().map(|p| p.error).sum();
        if total_err <= tol {
            break;
        }
        if heap.len() >= QUADRATURE_MAX_INTERVALS {
            return Err(LgiError::NoConvergence {
                what,
                estimate: total_err,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(g, worst.a, mid);
        let (v2, e2) = gk15(g, mid, worst.b);
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // Sum in position order so the result does not depend on heap layout.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    Ok(panels.iter().map(|p| p.value).sum())
}
