//! Value parsers for the command line.

use lgi_core::explorer::Axis;
use lgi_core::{Complex, OutcomePair};

fn number(s: &str, what: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("{what}: {s:?} is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{what}: {s:?} is not finite"))
    }
}

/// `re,im` or a bare real part.
pub fn complex(s: &str) -> Result<Complex, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex::new(number(re, "real part")?, number(im, "imaginary part")?)),
        None => Ok(Complex::new(number(s, "value")?, 0.0)),
    }
}

pub fn finite(s: &str) -> Result<f64, String> {
    number(s, "value")
}

/// `lo:hi:n`.
pub fn axis(s: &str) -> Result<Axis, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(format!("expected lo:hi:n, got {s:?}"));
    };
    let n: usize = n.trim().parse().map_err(|_| format!("point count {n:?} is not an integer"))?;
    Axis::new(number(lo, "lower end")?, number(hi, "upper end")?, n).map_err(|e| e.to_string())
}

pub fn outcome(s: &str) -> Result<OutcomePair, String> {
    s.parse().map_err(|e: lgi_core::LgiError| e.to_string())
}

/// Comma-separated outcome list, e.g. `++,--`.
pub fn outcomes(s: &str) -> Result<Vec<OutcomePair>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let p = outcome(part)?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Three `lo:hi` pairs separated by commas.
pub fn bounds(s: &str) -> Result<[[f64; 2]; 3], String> {
    let pairs: Vec<&str> = s.split(',').collect();
    if pairs.len() != 3 {
        return Err(format!("expected three lo:hi pairs, got {}", pairs.len()));
    }
    let mut out = [[0.0; 2]; 3];
    for (slot, p) in out.iter_mut().zip(pairs) {
        let (lo, hi) = p.split_once(':').ok_or_else(|| format!("expected lo:hi, got {p:?}"))?;
        *slot = [number(lo, "lower bound")?, number(hi, "upper bound")?];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!(complex("0.5,-1").unwrap(), Complex::new(0.5, -1.0));
        assert_eq!(complex("2").unwrap(), Complex::new(2.0, 0.0));
        assert!(complex("a,b").is_err());
        let a = axis("0:3:4").unwrap();
        assert_eq!(a.values(), vec![0.0, 1.0, 2.0, 3.0]);
        assert!(axis("0:3").is_err());
        assert!(axis("3:0:10").is_err());
        assert_eq!(outcomes("++,mm,--").unwrap(), vec![OutcomePair::PP, OutcomePair::MM]);
        assert!(outcomes("+0").is_err());
        assert_eq!(bounds("0:1,0:2,0:0").unwrap(), [[0.0, 1.0], [0.0, 2.0], [0.0, 0.0]]);
        assert!(bounds("0:1,0:2").is_err());
        assert!(finite("inf").is_err());
    }
}
