use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::function::{difference_at_zero, FunctionSpec};
use crate::error::{Error, Result};
use crate::exact::{pow, QuadExt, Rational};
use crate::report::ser_display;
use crate::schemes::{require_grd, DiffScheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `h_j = ratio^j`
    Rational,
    /// `h_j = sqrt(2) * ratio^j`
    Sqrt2,
    /// `h_j = (-1)^j * ratio^j`
    SignedAlternating,
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "rational" => Ok(Branch::Rational),
            "sqrt2" => Ok(Branch::Sqrt2),
            "signed_alternating" => Ok(Branch::SignedAlternating),
            _ => Err(Error::parse(
                0,
                format!("unknown branch {text:?} (rational, sqrt2 or signed_alternating)"),
            )),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Rational => "rational",
            Branch::Sqrt2 => "sqrt2",
            Branch::SignedAlternating => "signed_alternating",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeSequence {
    pub branch: Branch,
    /// In `(0, 1)`.
    pub ratio: Rational,
    /// At least 3.
    pub count: u32,
}

impl ProbeSequence {
    pub fn new(branch: Branch, ratio: Rational, count: u32) -> ProbeSequence {
        ProbeSequence { branch, ratio, count }
    }

    /// `h_j` for `j = 1..=count`.
    pub fn points(&self) -> Vec<QuadExt> {
        (1..=self.count)
            .map(|j| {
                let r = pow(&self.ratio, j as i64);
                match self.branch {
                    Branch::Rational => QuadExt::rational(r),
                    Branch::Sqrt2 => QuadExt::new(Rational::zero(), r),
                    Branch::SignedAlternating if j % 2 == 1 => QuadExt::rational(-r),
                    Branch::SignedAlternating => QuadExt::rational(r),
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every sample after the first equals `value`, or the samples decay
    /// geometrically with the given exact ratio (then `value` is 0).
    Converges {
        value: QuadExt,
        decay: Option<QuadExt>,
    },
    Diverges,
    /// Exactly two values, alternating.
    Oscillates(QuadExt, QuadExt),
    Inconclusive,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Converges { .. } => "converges",
            Verdict::Diverges => "diverges",
            Verdict::Oscillates(..) => "oscillates",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Converges { value, decay: None } => write!(f, "converges({value})"),
            Verdict::Converges {
                value,
                decay: Some(rho),
            } => write!(f, "converges({value}) by exact decay with ratio {rho}"),
            Verdict::Oscillates(a, b) => write!(f, "oscillates({a}, {b})"),
            Verdict::Diverges | Verdict::Inconclusive => f.write_str(self.tag()),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("kind", self.tag())?;
        match self {
            Verdict::Converges { value, decay } => {
                map.serialize_entry("value", &value.to_string())?;
                map.serialize_entry("decay", &decay.as_ref().map(|d| d.to_string()))?;
            }
            Verdict::Oscillates(a, b) => {
                map.serialize_entry("values", &[a.to_string(), b.to_string()])?;
            }
            Verdict::Diverges | Verdict::Inconclusive => {}
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    #[serde(serialize_with = "ser_display")]
    pub h: QuadExt,
    #[serde(serialize_with = "ser_display")]
    pub quotient: QuadExt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub samples: Vec<Sample>,
    pub verdict: Verdict,
}

/// Sample counts beyond this are refused; `h_j` grows in size with `j`.
pub const MAX_SAMPLES: u32 = 4096;

/// Exact quotients `Delta_s f(0, h_j) / h_j^n` along a sequence `h_j -> 0`.
pub fn probe(s: &DiffScheme, f: &FunctionSpec, sequence: &ProbeSequence) -> Result<ProbeReport> {
    let n = require_grd(s)?;
    if sequence.count < 3 || sequence.count > MAX_SAMPLES {
        return Err(Error::domain(format!(
            "a probe needs between 3 and {MAX_SAMPLES} samples, got {}",
            sequence.count
        )));
    }
    if !(sequence.ratio > Rational::zero() && sequence.ratio < Rational::one()) {
        return Err(Error::domain(format!(
            "probe ratio {} is not in (0, 1)",
            sequence.ratio
        )));
    }
    let samples: Vec<Sample> = sequence
        .points()
        .into_iter()
        .map(|h| {
            let quotient = difference_at_zero(s, f, &h) / h.pow(n);
            Sample { h, quotient }
        })
        .collect();
    let quotients: Vec<QuadExt> = samples.iter().map(|s| s.quotient.clone()).collect();
    Ok(ProbeReport {
        verdict: classify_samples(&quotients),
        samples,
    })
}

fn classify_samples(q: &[QuadExt]) -> Verdict {
    let tail = &q[1..];
    if tail.iter().all(|v| v == &tail[0]) {
        return Verdict::Converges {
            value: tail[0].clone(),
            decay: None,
        };
    }
    let alternating = q[0] != q[1] && (2..q.len()).all(|j| q[j] == q[j - 2]);
    if alternating {
        return Verdict::Oscillates(q[0].clone(), q[1].clone());
    }
    if let Some(rho) = geometric_ratio(q) {
        if rho.abs().cmp_value(&QuadExt::rational(Rational::one())) == Ordering::Less {
            return Verdict::Converges {
                value: QuadExt::zero(),
                decay: Some(rho),
            };
        }
    }
    let growing = q
        .windows(2)
        .all(|w| w[1].abs().cmp_value(&w[0].abs()) == Ordering::Greater);
    if growing {
        return Verdict::Diverges;
    }
    Verdict::Inconclusive
}

/// The common ratio `q_{j+1} / q_j` when the samples are nonzero and exactly
/// geometric.
fn geometric_ratio(q: &[QuadExt]) -> Option<QuadExt> {
    if q.iter().any(QuadExt::is_zero) {
        return None;
    }
    let rho = q[1].clone() / q[0].clone();
    q.windows(2)
        .all(|w| w[1] == w[0].clone() * rho.clone())
        .then_some(rho)
}
