use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exponents of a positive rational over the primes, `{p -> e}`.
///
/// Zero exponents are never stored, so the empty vector is the rational 1
/// and equality of vectors is equality of the rationals they encode.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(BTreeMap<u64, i64>);

impl ExponentVector {
    pub fn one() -> Self {
        ExponentVector::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut v = ExponentVector::default();
        for (p, e) in pairs {
            v.add_to(p, e);
        }
        v
    }

    fn add_to(&mut self, prime: u64, exp: i64) {
        let slot = self.0.entry(prime).or_insert(0);
        *slot += exp;
        if *slot == 0 {
            self.0.remove(&prime);
        }
    }

    pub fn get(&self, prime: u64) -> i64 {
        self.0.get(&prime).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            out.add_to(p, e);
        }
        out
    }

    pub fn neg(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|(&p, &e)| (p, -e)).collect())
    }

    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        self.add(&other.neg())
    }

    /// Largest absolute exponent.
    pub fn max_norm(&self) -> u64 {
        self.0.values().map(|e| e.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.values().sum()
    }

    /// The positive rational `prod p^e`.
    pub fn reconstruct(&self) -> Rational {
        let mut numer = BigInt::one();
        let mut denom = BigInt::one();
        for (p, e) in self.iter() {
            let factor = num_traits::pow(BigInt::from(p), e.unsigned_abs() as usize);
            if e > 0 {
                numer *= factor;
            } else {
                denom *= factor;
            }
        }
        Rational::new(numer, denom)
    }

    /// Dense exponents over `basis` (primes outside the basis are ignored).
    pub fn dense(&self, basis: &[u64]) -> Vec<i64> {
        basis.iter().map(|&p| self.get(p)).collect()
    }

    pub fn from_dense(basis: &[u64], exps: &[i64]) -> Self {
        ExponentVector::from_pairs(basis.iter().copied().zip(exps.iter().copied()))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, e)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}:{e}")?;
        }
        f.write_str("}")
    }
}

/// Trial divisors stop here; a cofactor left above `TRIAL_LIMIT^2` has a
/// prime factor too large to find this way.
const TRIAL_LIMIT: u64 = 1 << 20;

fn factor_natural(n: &BigInt, sign: i64, out: &mut ExponentVector) -> Result<()> {
    let mut rest = n.clone();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        if let Some(small) = rest.to_u64() {
            if d.saturating_mul(d) > small {
                break;
            }
        }
        let divisor = BigInt::from(d);
        loop {
            let (q, r) = rest.div_rem(&divisor);
            if !r.is_zero() {
                break;
            }
            out.add_to(d, sign);
            rest = q;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        // No factor up to min(d, TRIAL_LIMIT), so `rest` is prime if below the square.
        match rest.to_u64() {
            Some(p) if p <= TRIAL_LIMIT * TRIAL_LIMIT || d.saturating_mul(d) > p => {
                out.add_to(p, sign)
            }
            _ => {
                return Err(Error::domain(format!(
                    "cannot factor {n}: a prime factor exceeds the trial-division limit {TRIAL_LIMIT}"
                )))
            }
        }
    }
    Ok(())
}

/// Prime factorization of a positive rational.
pub fn factor_positive(r: &Rational) -> Result<ExponentVector> {
    if !r.is_positive() {
        return Err(Error::domain(format!(
            "factor_positive needs a positive rational, got {r}"
        )));
    }
    let mut out = ExponentVector::default();
    factor_natural(r.numer(), 1, &mut out)?;
    factor_natural(r.denom(), -1, &mut out)?;
    Ok(out)
}

/// Exponents of a positive rational over the given primes, or `None` when
/// another prime divides it. Exact, with no trial-division limit.
pub fn factor_over(r: &Rational, primes: &[u64]) -> Option<ExponentVector> {
    if !r.is_positive() {
        return None;
    }
    let mut out = ExponentVector::default();
    for (part, sign) in [(r.numer(), 1), (r.denom(), -1)] {
        let mut rest = part.clone();
        for &p in primes {
            let divisor = BigInt::from(p);
            loop {
                let (q, rem) = rest.div_rem(&divisor);
                if !rem.is_zero() {
                    break;
                }
                out.add_to(p, sign);
                rest = q;
            }
        }
        if !rest.is_one() {
            return None;
        }
    }
    Some(out)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime not contained in `used`.
pub fn next_prime_not_in(used: &[u64]) -> u64 {
    (2u64..)
        .find(|&n| is_prime(n) && !used.contains(&n))
        .expect("infinitely many primes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    #[test]
    fn factors_small_values() {
        assert_eq!(
            factor_positive(&int(12)).unwrap(),
            ExponentVector::from_pairs([(2, 2), (3, 1)])
        );
        assert!(factor_positive(&int(1)).unwrap().is_one());
        assert_eq!(
            factor_positive(&ratio(3, 2)).unwrap(),
            ExponentVector::from_pairs([(2, -1), (3, 1)])
        );
    }

    #[test]
    fn rejects_non_positive() {
        assert!(factor_positive(&int(0)).is_err());
        assert!(factor_positive(&ratio(-3, 2)).is_err());
    }

    #[test]
    fn reconstructs_large_prime_powers() {
        let r = ratio(5i64.pow(20), 7 * 49);
        let v = factor_positive(&r).unwrap();
        assert_eq!(v.get(5), 20);
        assert_eq!(v.get(7), -3);
        assert_eq!(v.reconstruct(), r);
    }

    #[test]
    fn large_primes_within_reach() {
        let p = int(2_147_483_647);
        assert_eq!(factor_positive(&p).unwrap(), ExponentVector::from_pairs([(2_147_483_647, 1)]));
        let sq = int(1_000_003 * 1_000_003);
        assert_eq!(factor_positive(&sq).unwrap(), ExponentVector::from_pairs([(1_000_003, 2)]));
    }

    #[test]
    fn refuses_out_of_reach_factors() {
        let mersenne = int((1 << 61) - 1);
        assert!(matches!(factor_positive(&mersenne), Err(Error::Domain(_))));
        let huge: Rational = "340282366920938463463374607431768211507".parse::<BigInt>().unwrap().into();
        assert!(matches!(factor_positive(&huge.recip()), Err(Error::Domain(_))));
    }

    #[test]
    fn factors_over_a_given_basis() {
        let big = 2_305_843_009_213_693_951i64;
        let r = ratio(4 * big, 9);
        let v = factor_over(&r, &[2, 3, big as u64]).unwrap();
        assert_eq!(v, ExponentVector::from_pairs([(2, 2), (3, -2), (big as u64, 1)]));
        assert_eq!(factor_over(&r, &[2, 3]), None);
        assert_eq!(factor_over(&ratio(-1, 2), &[2]), None);
    }

    #[test]
    fn picks_fresh_prime() {
        assert_eq!(next_prime_not_in(&[2, 3]), 5);
        assert_eq!(next_prime_not_in(&[]), 2);
        assert_eq!(next_prime_not_in(&[2, 5]), 3);
    }
}
