//! Exact number substrate: rationals, the quadratic extension Q(sqrt 2),
//! prime exponent vectors and exact linear solving.
//!
//! Nothing in the engine rounds. Rationals are arbitrary precision and are
//! always kept in lowest terms with a positive denominator.

mod factor;
mod linear;
mod quad;

pub use factor::{factor_over, factor_positive, is_prime, next_prime_not_in, ExponentVector};
pub use linear::{solve_linear_exact, Solution};
pub use quad::QuadExt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::lexer::Cursor;

/// Arbitrary-precision rational number in lowest terms.
///
/// Displays as `p/q`, or `p` when the denominator is one.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational literal.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `["-"] digits ["/" digits]`, surrounding whitespace allowed.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let value = cur.rational()?;
    cur.finish()?;
    Ok(value)
}

/// `base^exp` for a possibly negative exponent; `0^0 = 1`.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// All integer points of the box `lo <= x <= hi`, lexicographic.
pub(crate) fn lattice_box(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (l, h) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|p| {
                (*l..=*h).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(int(4).to_string(), "4");
        assert_eq!(ratio(0, 5).to_string(), "0");
    }

    #[test]
    fn rejects_malformed_rationals() {
        for bad in ["", "-", "1/", "1/0", "+1", "1.5", "1/2/3", "--1", "1 2"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn powers_and_factorials() {
        assert_eq!(pow(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(pow(&int(0), 0), int(1));
        assert_eq!(factorial(4), int(24));
        assert_eq!(binomial(4, 2), int(6));
    }
}
