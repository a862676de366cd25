use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LgiError;

/// Dichotomic measurement result `s = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn from_sign(s: i32) -> Result<Self, LgiError> {
        match s {
            1 => Ok(Outcome::Plus),
            -1 => Ok(Outcome::Minus),
            _ => Err(LgiError::invalid("s", format!("outcome must be +1 or -1, got {s}"))),
        }
    }

    fn symbol(self) -> char {
        match self {
            Outcome::Plus => '+',
            Outcome::Minus => '-',
        }
    }
}

/// Ordered pair `(s1, s2)` of outcomes at the first and second time.
/// Serialised as `"++"`, `"+-"`, `"-+"` or `"--"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct OutcomePair {
    pub s1: Outcome,
    pub s2: Outcome,
}

impl OutcomePair {
    pub const PP: OutcomePair = OutcomePair::new(Outcome::Plus, Outcome::Plus);
    pub const PM: OutcomePair = OutcomePair::new(Outcome::Plus, Outcome::Minus);
    pub const MP: OutcomePair = OutcomePair::new(Outcome::Minus, Outcome::Plus);
    pub const MM: OutcomePair = OutcomePair::new(Outcome::Minus, Outcome::Minus);

    /// Canonical order `++, +-, -+, --`.
    pub const ALL: [OutcomePair; 4] = [Self::PP, Self::PM, Self::MP, Self::MM];

    pub const fn new(s1: Outcome, s2: Outcome) -> Self {
        OutcomePair { s1, s2 }
    }

    pub fn index(self) -> usize {
        match (self.s1, self.s2) {
            (Outcome::Plus, Outcome::Plus) => 0,
            (Outcome::Plus, Outcome::Minus) => 1,
            (Outcome::Minus, Outcome::Plus) => 2,
            (Outcome::Minus, Outcome::Minus) => 3,
        }
    }

    /// Column suffix used in CSV output (`pp`, `pm`, `mp`, `mm`).
    pub fn tag(self) -> &'static str {
        ["pp", "pm", "mp", "mm"][self.index()]
    }

    /// Weights `(c0, c1, c2, c12)` with
    /// `q = c0 + c1 X1 + c2 X2 + c12 X12`, where `X1`, `X2` are single-time
    /// projector terms and `X12` the two-time term.
    pub fn weights(self) -> [f64; 4] {
        let s1 = self.s1.sign();
        let s2 = self.s2.sign();
        [
            (1.0 - s1) * (1.0 - s2) / 4.0,
            s1 * (1.0 - s2) / 2.0,
            s2 * (1.0 - s1) / 2.0,
            s1 * s2,
        ]
    }
}

impl fmt::Display for OutcomePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.s1.symbol(), self.s2.symbol())
    }
}

impl FromStr for OutcomePair {
    type Err = LgiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "++" | "pp" => Ok(Self::PP),
            "+-" | "pm" => Ok(Self::PM),
            "-+" | "mp" => Ok(Self::MP),
            "--" | "mm" => Ok(Self::MM),
            other => Err(LgiError::invalid(
                "outcome",
                format!("expected one of ++, +-, -+, -- (or pp, pm, mp, mm), got {other:?}"),
            )),
        }
    }
}

impl From<OutcomePair> for String {
    fn from(p: OutcomePair) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for OutcomePair {
    type Error = LgiError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// The four quasi-probabilities of one scenario plus sum-rule diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiProbTable {
    pub q_pp: f64,
    pub q_pm: f64,
    pub q_mp: f64,
    pub q_mm: f64,
    /// Single-time probability `Tr[M_+(t2) rho0]`, computed by a route
    /// independent of the `q` values where one exists.
    pub p2_plus: f64,
    /// `sum q - 1`.
    pub sum_check: f64,
}

impl QuasiProbTable {
    pub fn from_values(q: [f64; 4], p2_plus: f64) -> Self {
        let sum: f64 = q.iter().sum();
        QuasiProbTable {
            q_pp: q[0],
            q_pm: q[1],
            q_mp: q[2],
            q_mm: q[3],
            p2_plus,
            sum_check: sum - 1.0,
        }
    }

    pub fn values(&self) -> [f64; 4] {
        [self.q_pp, self.q_pm, self.q_mp, self.q_mm]
    }

    pub fn get(&self, pair: OutcomePair) -> f64 {
        self.values()[pair.index()]
    }

    pub fn p2(&self, s2: Outcome) -> f64 {
        match s2 {
            Outcome::Plus => self.p2_plus,
            Outcome::Minus => 1.0 - self.p2_plus,
        }
    }

    /// `sum over s1 of q(s1, s2) - p2(s2)`.
    pub fn marginal_residual(&self, s2: Outcome) -> f64 {
        let m = match s2 {
            Outcome::Plus => self.q_pp + self.q_mp,
            Outcome::Minus => self.q_pm + self.q_mm,
        };
        m - self.p2(s2)
    }

    pub fn min(&self) -> f64 {
        self.values().into_iter().fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for pair in OutcomePair::ALL {
            let parsed: OutcomePair = pair.to_string().parse().unwrap();
            assert_eq!(parsed, pair);
            let parsed: OutcomePair = pair.tag().parse().unwrap();
            assert_eq!(parsed, pair);
        }
        assert!("+0".parse::<OutcomePair>().is_err());
        assert!(Outcome::from_sign(0).is_err());
    }

    #[test]
    fn weights_sum_to_identity_structure() {
        // sum over pairs: c0 -> 1, c1, c2, c12 -> 0
        let mut tot = [0.0; 4];
        for p in OutcomePair::ALL {
            for (t, w) in tot.iter_mut().zip(p.weights()) {
                *t += w;
            }
        }
        assert_eq!(tot, [1.0, 0.0, 0.0, 0.0]);
    }
}
