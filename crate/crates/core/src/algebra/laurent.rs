use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::PositivePart;
use crate::error::{Error, Result};
use crate::exact::{factor_positive, is_prime, ExponentVector, Rational};
use crate::lexer::Cursor;
use crate::schemes::Parity;

/// Largest variable index and absolute exponent accepted by the parser.
const MAX_PARSED_PRIME: u64 = 1_000_000;
const MAX_PARSED_EXPONENT: u64 = 10_000;

/// A Laurent polynomial in one variable `y_p` per prime `p`.
///
/// The monomial `y^v` is the positive rational with exponent vector `v`,
/// so this ring is the group algebra of Q+ written in the prime basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, ExponentVector::one())
    }

    pub fn monomial(c: Rational, exps: ExponentVector) -> Self {
        LaurentPoly::from_terms([(exps, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ExponentVector, Rational)>) -> Self {
        let mut out: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
        for (v, c) in terms {
            *out.entry(v).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, v: &ExponentVector) -> Rational {
        self.terms.get(v).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sorted primes whose variables occur.
    pub fn basis(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self.terms.keys().flat_map(|v| v.primes()).collect();
        set.into_iter().collect()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(v, c)| (v.clone(), c.clone())),
        )
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(v, a)| (v.clone(), a * c)))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().flat_map(|(v, a)| {
            other.terms.iter().map(move |(w, b)| (v.add(w), a * b))
        }))
    }

    /// Multiplication by the monomial `y^v` (a dilation by `v.reconstruct()`).
    pub fn shift(&self, v: &ExponentVector) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(w, c)| (w.add(v), c.clone())).collect(),
        }
    }

    /// Terms sorted by descending graded-lex order over `basis`.
    pub(crate) fn sorted_terms(&self) -> Vec<(&ExponentVector, &Rational)> {
        let basis = self.basis();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| grlex(&a.dense(&basis), &b.dense(&basis)).reverse());
        terms
    }

    /// Converts back to a positive part of the given parity.
    pub fn to_positive_part(&self, parity: Parity) -> PositivePart {
        PositivePart::from_terms(
            parity,
            self.terms.iter().map(|(v, c)| (v.reconstruct(), c.clone())),
        )
        .expect("monomials reconstruct to positive rationals")
    }
}

/// Graded lexicographic comparison of dense exponent vectors.
pub(crate) fn grlex(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl fmt::Display for LaurentPoly {
    /// `c*y2^e2*y3^e3` terms; unit coefficients and exponents are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (v, c)) in self.sorted_terms().into_iter().enumerate() {
            let magnitude = if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                c.abs()
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            let mut factors = Vec::new();
            if !magnitude.is_one() || v.is_one() {
                factors.push(magnitude.to_string());
            }
            for (p, e) in v.iter() {
                if e == 1 {
                    factors.push(format!("y{p}"));
                } else {
                    factors.push(format!("y{p}^{e}"));
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parses sums of terms like `2*y2^-1*y3 - 6*y2^-1` or `y2^2 - 4`.
///
/// Variables are `y<p>` with `p` prime; coefficients are rationals.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.at_end() {
        return Err(cur.error("expected a polynomial"));
    }
    let mut terms = Vec::new();
    let mut negative = cur.eat(b'-');
    loop {
        cur.skip_ws();
        let (v, mut c) = parse_term(&mut cur)?;
        if negative {
            c = -c;
        }
        terms.push((v, c));
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        negative = if cur.eat(b'+') {
            false
        } else if cur.eat(b'-') {
            true
        } else {
            return Err(cur.error("expected '+' or '-'"));
        };
    }
    Ok(LaurentPoly::from_terms(terms))
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(ExponentVector, Rational)> {
    let mut coeff = Rational::one();
    let mut pairs = Vec::new();
    if matches!(cur.peek(), Some(b) if b.is_ascii_digit()) {
        coeff = cur.rational()?;
        if !cur.eat(b'*') {
            return Ok((ExponentVector::one(), coeff));
        }
    }
    let mut need_factor = true;
    while need_factor {
        if !cur.eat(b'y') {
            return Err(cur.error("expected a variable 'y<prime>'"));
        }
        let at = cur.pos();
        let p = cur.small_natural()?;
        if p > MAX_PARSED_PRIME || !is_prime(p) {
            return Err(Error::parse(at, format!("y{p} is not indexed by a prime")));
        }
        let mut e = 1i64;
        if cur.eat(b'^') {
            let neg = cur.eat(b'-');
            let at = cur.pos();
            let mag = cur.small_natural()?;
            if mag > MAX_PARSED_EXPONENT {
                return Err(Error::parse(at, "exponent too large"));
            }
            e = if neg { -(mag as i64) } else { mag as i64 };
        }
        pairs.push((p, e));
        need_factor = cur.eat(b'*');
    }
    Ok((ExponentVector::from_pairs(pairs), coeff))
}

/// Embeds a positive part into the Laurent ring over the primes.
///
/// Returns the polynomial and its basis (sorted primes of the support).
/// Fails only when a support point has a prime factor out of reach of
/// trial division.
pub fn laurent_embed(p: &PositivePart) -> Result<(LaurentPoly, Vec<u64>)> {
    let terms = p
        .terms()
        .map(|(r, c)| Ok((factor_positive(r)?, c.clone())))
        .collect::<Result<Vec<_>>>()?;
    let poly = LaurentPoly::from_terms(terms);
    let basis = poly.basis();
    Ok((poly, basis))
}

/// `Some((c, r))` when `p = c * y^vec(r)`.
pub fn is_monomial(p: &LaurentPoly) -> Option<(Rational, Rational)> {
    if p.len() != 1 {
        return None;
    }
    let (v, c) = p.terms.iter().next()?;
    Some((c.clone(), v.reconstruct()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parity_project, to_algebra};
    use crate::exact::{int, ratio};
    use crate::schemes::{catalog, CatalogEntry};

    fn lp(text: &str) -> LaurentPoly {
        parse_laurent(text).unwrap()
    }

    fn odd_image(entry: CatalogEntry) -> (LaurentPoly, Vec<u64>) {
        let alpha = to_algebra(&catalog(&entry).unwrap()).unwrap();
        laurent_embed(&parity_project(&alpha, Parity::Odd)).unwrap()
    }

    #[test]
    fn embeds_example_elements() {
        let (alpha, basis) = odd_image(CatalogEntry::Example3iii);
        assert_eq!(alpha, lp("y2 - 2"));
        assert_eq!(basis, vec![2]);

        let (beta, basis) = odd_image(CatalogEntry::Symmetric(3));
        assert_eq!(beta, lp("2*y2^-1*y3 - 6*y2^-1"));
        assert_eq!(basis, vec![2, 3]);
        assert_eq!(beta.to_string(), "2*y2^-1*y3 - 6*y2^-1");

        let unit = PositivePart::from_terms(Parity::Even, [(int(1), int(1))]).unwrap();
        assert_eq!(laurent_embed(&unit).unwrap().0, LaurentPoly::constant(int(1)));
    }

    #[test]
    fn embedding_is_multiplicative() {
        let a = PositivePart::from_terms(Parity::Odd, [(ratio(3, 2), int(2)), (int(5), int(-1))])
            .unwrap();
        let b = PositivePart::from_terms(Parity::Odd, [(ratio(1, 10), int(3)), (int(1), int(1))])
            .unwrap();
        let prod = a.multiply(&b).unwrap();
        assert_eq!(
            laurent_embed(&prod).unwrap().0,
            laurent_embed(&a).unwrap().0.mul(&laurent_embed(&b).unwrap().0)
        );
        assert_eq!(laurent_embed(&prod).unwrap().0.to_positive_part(Parity::Odd), prod);
    }

    #[test]
    fn monomial_detection() {
        assert_eq!(is_monomial(&lp("2*y2^-1")), Some((int(2), ratio(1, 2))));
        assert_eq!(is_monomial(&lp("y2 - 2")), None);
        assert_eq!(is_monomial(&lp("5")), Some((int(5), int(1))));
        assert_eq!(is_monomial(&LaurentPoly::zero()), None);
    }

    #[test]
    fn parser_accepts_and_normalizes() {
        assert_eq!(lp("y2*y2 - 4"), lp("y2^2 - 4"));
        assert_eq!(lp("-y3 + 3"), lp("3 - 1*y3^1"));
        assert_eq!(lp("1/2*y5 + 1/2*y5"), lp("y5"));
        assert!(lp("y2 - y2").is_zero());
        assert_eq!(lp("0"), LaurentPoly::zero());
        for text in ["y2^3*y3^-2 - 7/3", "-y2", "12", "y7^-4 + y3 - 1/5*y2*y3"] {
            assert_eq!(lp(&lp(text).to_string()), lp(text), "{text}");
        }
    }

    #[test]
    fn parser_rejects() {
        for bad in ["", "y4", "y", "2*", "y2^", "y2 y3", "x2", "y2 +", "y2^99999999", "1/0*y2", "--y2"] {
            assert!(parse_laurent(bad).is_err(), "{bad:?} should not parse");
        }
    }
}
