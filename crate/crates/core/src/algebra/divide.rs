use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::laurent::grlex;
use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::exact::{lattice_box, solve_linear_exact, ExponentVector, Rational};

/// Unknowns allowed in the brute-force oracle.
const MAX_BRUTE_UNKNOWNS: usize = 4096;

/// Dense view of a Laurent polynomial over a fixed basis.
struct Dense {
    terms: Vec<(Vec<i64>, Rational)>,
    min: Vec<i64>,
    max: Vec<i64>,
}

impl Dense {
    fn new(p: &LaurentPoly, basis: &[u64]) -> Dense {
        let terms: Vec<(Vec<i64>, Rational)> =
            p.terms().map(|(v, c)| (v.dense(basis), c.clone())).collect();
        let mut min = vec![i64::MAX; basis.len()];
        let mut max = vec![i64::MIN; basis.len()];
        for (e, _) in &terms {
            for i in 0..basis.len() {
                min[i] = min[i].min(e[i]);
                max[i] = max[i].max(e[i]);
            }
        }
        Dense { terms, min, max }
    }

    /// Shifted so every variable has minimum exponent zero.
    fn normalized(&self) -> BTreeMap<Vec<i64>, Rational> {
        self.terms
            .iter()
            .map(|(e, c)| (sub(e, &self.min), c.clone()))
            .collect()
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn union_basis(a: &LaurentPoly, b: &LaurentPoly) -> Vec<u64> {
    let set: BTreeSet<u64> = a.basis().into_iter().chain(b.basis()).collect();
    set.into_iter().collect()
}

/// Exponent vector ordered graded-lexicographically, so a map keyed by it
/// keeps its leading term last.
#[derive(Clone, PartialEq, Eq)]
struct Grlex(Vec<i64>);

impl Ord for Grlex {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

impl PartialOrd for Grlex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact quotient `num / den` in the Laurent ring, or `None` when `den`
/// does not divide `num`.
///
/// Both operands are shifted into the polynomial ring (no variable divides
/// either one), where a Laurent quotient must itself be a polynomial. A
/// single-divisor division under graded-lex order then either clears the
/// numerator or meets a leading term that the divisor's leading term does
/// not divide.
pub fn exact_divide(num: &LaurentPoly, den: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    if den.is_zero() {
        return Err(Error::domain("division by the zero polynomial"));
    }
    if num.is_zero() {
        return Ok(Some(LaurentPoly::zero()));
    }
    let basis = union_basis(num, den);
    let n = Dense::new(num, &basis);
    let d = Dense::new(den, &basis);
    let mut rem: BTreeMap<Grlex, Rational> =
        n.normalized().into_iter().map(|(e, c)| (Grlex(e), c)).collect();
    let divisor = d.normalized();
    let n_max = sub(&n.max, &n.min);
    let d_max = sub(&d.max, &d.min);
    // A polynomial quotient has degree at most deg(num) - deg(den) in each
    // variable, and every step below produces one of its terms.
    let q_max = sub(&n_max, &d_max);
    if q_max.iter().any(|&e| e < 0) {
        return Ok(None);
    }

    let (lt_exp, lt_coeff) = divisor
        .iter()
        .max_by(|(a, _), (b, _)| grlex(a, b))
        .map(|(e, c)| (e.clone(), c.clone()))
        .expect("nonzero");
    let mut quotient: Vec<(Vec<i64>, Rational)> = Vec::new();
    while let Some((Grlex(r_exp), r_coeff)) = rem.last_key_value().map(|(e, c)| (e.clone(), c.clone())) {
        let t = sub(&r_exp, &lt_exp);
        if t.iter().zip(&q_max).any(|(&e, &m)| e < 0 || e > m) {
            return Ok(None);
        }
        let c = r_coeff / &lt_coeff;
        for (e, dc) in &divisor {
            let key = Grlex(add(e, &t));
            let entry = rem.entry(key.clone()).or_insert_with(Rational::zero);
            *entry -= &c * dc;
            if entry.is_zero() {
                rem.remove(&key);
            }
        }
        quotient.push((t, c));
    }

    let offset = sub(&n.min, &d.min);
    Ok(Some(LaurentPoly::from_terms(quotient.into_iter().map(|(e, c)| {
        (ExponentVector::from_dense(&basis, &add(&e, &offset)), c)
    }))))
}

/// Oracle for [`exact_divide`]: solves `den * q = num` for `q` supported on
/// the exponent box `[min(num) - min(den) - bound, max(num) - max(den) + bound]`.
pub fn divides_brute(
    num: &LaurentPoly,
    den: &LaurentPoly,
    bound: u32,
) -> Result<Option<LaurentPoly>> {
    if den.is_zero() {
        return Err(Error::domain("division by the zero polynomial"));
    }
    if num.is_zero() {
        return Ok(Some(LaurentPoly::zero()));
    }
    let basis = union_basis(num, den);
    let n = Dense::new(num, &basis);
    let d = Dense::new(den, &basis);
    let b = bound as i64;
    let lo = sub(&n.min, &d.min).into_iter().map(|e| e - b).collect::<Vec<_>>();
    let hi = sub(&n.max, &d.max).into_iter().map(|e| e + b).collect::<Vec<_>>();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(None);
    }

    let mut size: usize = 1;
    for (l, h) in lo.iter().zip(&hi) {
        size = size.saturating_mul((h - l + 1) as usize);
    }
    if size > MAX_BRUTE_UNKNOWNS {
        return Err(Error::domain(format!(
            "brute-force box has {size} unknowns (limit {MAX_BRUTE_UNKNOWNS})"
        )));
    }
    let candidates = lattice_box(&lo, &hi);

    // One equation per monomial that can appear in den * q or in num.
    let mut rows_by_exp: BTreeMap<Vec<i64>, Vec<Rational>> = BTreeMap::new();
    for (j, q) in candidates.iter().enumerate() {
        for (e, c) in &d.terms {
            let row = rows_by_exp
                .entry(add(e, q))
                .or_insert_with(|| vec![Rational::zero(); candidates.len()]);
            row[j] += c;
        }
    }
    for (e, _) in &n.terms {
        rows_by_exp
            .entry(e.clone())
            .or_insert_with(|| vec![Rational::zero(); candidates.len()]);
    }
    let target: BTreeMap<&Vec<i64>, &Rational> = n.terms.iter().map(|(e, c)| (e, c)).collect();
    let rhs: Vec<Rational> = rows_by_exp
        .keys()
        .map(|e| target.get(e).map(|c| (*c).clone()).unwrap_or_else(Rational::zero))
        .collect();
    let rows: Vec<Vec<Rational>> = rows_by_exp.into_values().collect();

    match solve_linear_exact(&rows, &rhs) {
        Ok(sol) => Ok(Some(LaurentPoly::from_terms(
            candidates
                .iter()
                .zip(sol.values)
                .map(|(e, c)| (ExponentVector::from_dense(&basis, e), c)),
        ))),
        Err(Error::Infeasible) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_laurent;

    fn lp(text: &str) -> LaurentPoly {
        parse_laurent(text).unwrap()
    }

    fn both(num: &str, den: &str) -> Option<LaurentPoly> {
        let (n, d) = (lp(num), lp(den));
        let fast = exact_divide(&n, &d).unwrap();
        let slow = divides_brute(&n, &d, 2).unwrap();
        assert_eq!(fast, slow, "{num} / {den}");
        if let Some(q) = &fast {
            assert_eq!(q.mul(&d), n);
        }
        fast
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(both("y2^2 - 4", "y2 - 2"), Some(lp("y2 + 2")));
        assert_eq!(both("y2^2 - 4", "y2 + 2"), Some(lp("y2 - 2")));
    }

    #[test]
    fn laurent_shifts() {
        assert_eq!(both("y2^-1 - 4*y2^-3", "y2^-1 - 2*y2^-2"), Some(lp("1 + 2*y2^-1")));
        assert_eq!(both("3*y3^5*y2^-7", "y3^2"), Some(lp("3*y3^3*y2^-7")));
        assert_eq!(both("y2 - 2", "y2 - 2"), Some(lp("1")));
    }

    #[test]
    fn non_divisible_pairs() {
        assert_eq!(both("y2 - 2", "y2^2 - 4"), None);
        assert_eq!(both("2*y2^-1*y3 - 6*y2^-1", "y2 - 2"), None);
        assert_eq!(both("y2 - 2", "2*y2^-1*y3 - 6*y2^-1"), None);
        assert_eq!(both("y2^2 + 1", "y2 + 1"), None);
    }

    #[test]
    fn multivariate_products() {
        let a = lp("y2*y3 - 5 + y7^-1");
        let b = lp("y3^2 - 1/2*y2");
        assert_eq!(both(&a.mul(&b).to_string(), &b.to_string()), Some(a.clone()));
        assert_eq!(both(&a.mul(&b).add(&lp("1")).to_string(), &b.to_string()), None);
    }

    #[test]
    fn zero_cases() {
        assert!(exact_divide(&lp("y2"), &LaurentPoly::zero()).is_err());
        assert!(divides_brute(&lp("y2"), &LaurentPoly::zero(), 1).is_err());
        assert_eq!(exact_divide(&LaurentPoly::zero(), &lp("y2 - 2")).unwrap(), Some(LaurentPoly::zero()));
    }
}
