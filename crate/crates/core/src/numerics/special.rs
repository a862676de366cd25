//! Dawson function and the damped imaginary error function.

use std::f64::consts::PI;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Sample spacing of Rybicki's method; the truncation error scales like
/// `exp(-(pi / 2h)^2)`, about 1e-27 here.
const RYBICKI_H: f64 = 0.2;
/// Half-width (in x) of the sample window; dropped terms are below e^-49.
const RYBICKI_REACH: f64 = 7.0;

/// Dawson's integral `F(x) = exp(-x^2) * int_0^x exp(t^2) dt`.
///
/// Odd, bounded by 0.5411, and about `1 / (2x)` for large `|x|`.
pub fn dawson(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax < 1.0 {
        dawson_series(ax)
    } else if ax <= 10.0 {
        dawson_rybicki(ax)
    } else {
        dawson_asymptotic(ax)
    };
    v.copysign(x)
}

/// `exp(-x^2) * erfi(x)`, evaluated as `2 F(x) / sqrt(pi)` so that it never
/// overflows.
pub fn erfi_damped(x: f64) -> f64 {
    2.0 * dawson(x) / SQRT_PI
}

// sum_n (-1)^n 2^n x^(2n+1) / (2n+1)!!
fn dawson_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for n in 1..60 {
        term *= -2.0 * x2 / (2 * n + 1) as f64;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

// F(x) = lim_{h->0} pi^(-1/2) sum_{n odd} exp(-(x - n h)^2) / n
fn dawson_rybicki(x: f64) -> f64 {
    let h = RYBICKI_H;
    let lo = ((x - RYBICKI_REACH) / h).floor() as i64;
    let hi = ((x + RYBICKI_REACH) / h).ceil() as i64;
    let mut sum = 0.0;
    for n in lo..=hi {
        if n % 2 == 0 {
            continue;
        }
        let d = x - n as f64 * h;
        sum += (-d * d).exp() / n as f64;
    }
    sum / PI.sqrt()
}

// F(x) ~ 1/(2x) sum_n (2n-1)!! / (2x^2)^n
fn dawson_asymptotic(x: f64) -> f64 {
    let y = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..40 {
        let next = term * (2 * n - 1) as f64 * y;
        if next > term {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum / (2.0 * x)
}
