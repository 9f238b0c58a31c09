use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::WitnessFunction;
use crate::error::{Error, Result};
use crate::exact::{QuadExt, Rational};
use crate::lexer::Cursor;
use crate::schemes::DiffScheme;

/// A real function that can be evaluated exactly on `Q(sqrt 2)`.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    /// `x^m` on rationals, `0` elsewhere.
    PowerOnRationals(u32),
    IndicatorOfRationals,
    /// `0` on rationals, `x` elsewhere.
    ZeroOnRationalsIdentityOff,
    Abs,
    /// Coefficients from the constant term up.
    Polynomial(Vec<Rational>),
    WitnessTable(Arc<WitnessFunction>),
}

impl FunctionSpec {
    pub fn eval(&self, x: &QuadExt) -> QuadExt {
        eval_function(self, x)
    }
}

pub fn eval_function(f: &FunctionSpec, x: &QuadExt) -> QuadExt {
    match f {
        FunctionSpec::PowerOnRationals(m) => {
            if x.is_rational() {
                x.pow(*m)
            } else {
                QuadExt::zero()
            }
        }
        FunctionSpec::IndicatorOfRationals => {
            QuadExt::rational(if x.is_rational() { Rational::one() } else { Rational::zero() })
        }
        FunctionSpec::ZeroOnRationalsIdentityOff => {
            if x.is_rational() {
                QuadExt::zero()
            } else {
                x.clone()
            }
        }
        FunctionSpec::Abs => x.abs(),
        FunctionSpec::Polynomial(coeffs) => coeffs
            .iter()
            .rev()
            .fold(QuadExt::zero(), |acc, c| acc * x.clone() + QuadExt::rational(c.clone())),
        FunctionSpec::WitnessTable(w) => {
            if x.is_rational() {
                QuadExt::rational(w.eval_rational(&x.rat))
            } else {
                QuadExt::zero()
            }
        }
    }
}

/// `Delta_s f(0, h) = sum A_i f(a_i h)`.
pub fn difference_at_zero(s: &DiffScheme, f: &FunctionSpec, h: &QuadExt) -> QuadExt {
    s.terms().fold(QuadExt::zero(), |acc, (coeff, node)| {
        acc + eval_function(f, &(h.clone() * node)) * coeff
    })
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::PowerOnRationals(m) => write!(f, "power_on_rationals({m})"),
            FunctionSpec::IndicatorOfRationals => f.write_str("indicator_of_rationals"),
            FunctionSpec::ZeroOnRationalsIdentityOff => {
                f.write_str("zero_on_rationals_identity_off")
            }
            FunctionSpec::Abs => f.write_str("abs"),
            FunctionSpec::Polynomial(coeffs) => {
                let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                write!(f, "polynomial({})", parts.join(", "))
            }
            FunctionSpec::WitnessTable(w) => write!(
                f,
                "witness_table(p={}, M={}, L={})",
                w.scale_prime, w.scale_count, w.window_radius
            ),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    /// Every kind except `witness_table`, which only comes from a construction.
    fn from_str(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        let spec = if cur.eat_keyword("power_on_rationals") {
            cur.expect(b'(')?;
            cur.skip_ws();
            let at = cur.pos();
            let m = cur.small_natural()?;
            let m = u32::try_from(m)
                .ok()
                .filter(|&m| m <= 64)
                .ok_or_else(|| Error::parse(at, "power must be at most 64"))?;
            cur.skip_ws();
            cur.expect(b')')?;
            FunctionSpec::PowerOnRationals(m)
        } else if cur.eat_keyword("indicator_of_rationals") {
            FunctionSpec::IndicatorOfRationals
        } else if cur.eat_keyword("zero_on_rationals_identity_off") {
            FunctionSpec::ZeroOnRationalsIdentityOff
        } else if cur.eat_keyword("abs") {
            FunctionSpec::Abs
        } else if cur.eat_keyword("polynomial") {
            cur.expect(b'(')?;
            let mut coeffs = Vec::new();
            loop {
                cur.skip_ws();
                coeffs.push(cur.rational()?);
                cur.skip_ws();
                if cur.eat(b')') {
                    break;
                }
                cur.expect(b',')?;
                if coeffs.len() >= 64 {
                    return Err(cur.error("at most 64 polynomial coefficients"));
                }
            }
            FunctionSpec::Polynomial(coeffs)
        } else {
            return Err(cur.error("unknown function"));
        };
        cur.finish()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn q(rat: Rational, irr: Rational) -> QuadExt {
        QuadExt::new(rat, irr)
    }

    #[test]
    fn branch_evaluations() {
        let f = FunctionSpec::IndicatorOfRationals;
        assert_eq!(f.eval(&QuadExt::rational(ratio(3, 5))), QuadExt::rational(int(1)));
        assert_eq!(f.eval(&q(int(1), int(1))), QuadExt::zero());

        let at = q(int(0), ratio(1, 4));
        assert_eq!(FunctionSpec::ZeroOnRationalsIdentityOff.eval(&at), at);
        assert_eq!(
            FunctionSpec::ZeroOnRationalsIdentityOff.eval(&QuadExt::rational(int(5))),
            QuadExt::zero()
        );
        assert_eq!(FunctionSpec::Abs.eval(&QuadExt::rational(ratio(-7, 3))), QuadExt::rational(ratio(7, 3)));
        assert_eq!(FunctionSpec::Abs.eval(&q(int(1), int(-1))), q(int(-1), int(1)));

        let square = FunctionSpec::PowerOnRationals(2);
        assert_eq!(square.eval(&QuadExt::sqrt2()), QuadExt::zero());
        assert_eq!(square.eval(&QuadExt::rational(ratio(-1, 3))), QuadExt::rational(ratio(1, 9)));
    }

    #[test]
    fn polynomial_on_the_extension() {
        // 1 - 3/2 x^2 at sqrt 2 is -2.
        let p = FunctionSpec::Polynomial(vec![int(1), int(0), ratio(-3, 2)]);
        assert_eq!(p.eval(&QuadExt::sqrt2()), QuadExt::rational(int(-2)));
        assert_eq!(FunctionSpec::Polynomial(vec![]).eval(&QuadExt::sqrt2()), QuadExt::zero());
    }

    #[test]
    fn spec_round_trip() {
        for text in [
            "power_on_rationals(3)",
            "indicator_of_rationals",
            "zero_on_rationals_identity_off",
            "abs",
            "polynomial(1, 0, -3/2)",
        ] {
            let spec: FunctionSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        for bad in ["", "abs(1)", "polynomial()", "power_on_rationals(x)", "sin"] {
            assert!(bad.parse::<FunctionSpec>().is_err(), "{bad}");
        }
    }
}
