//! The group algebra of the nonzero rationals and its parity components.
//!
//! A scheme without its node-0 term is the element `alpha = sum A_r x_r`;
//! dilation by `r` is multiplication by `x_r`. The idempotents
//! `e = (1 + x_-1)/2` and `d = (1 - x_-1)/2` split the algebra into even and
//! odd halves, each isomorphic to the group algebra of the positive
//! rationals via `e_r -> x_r` (resp. `d_r -> x_r`). With the primes as a free
//! basis of that group, each half is a ring of Laurent polynomials, and
//! ideal inclusion becomes exact divisibility.

mod divide;
mod laurent;

pub use divide::{divides_brute, exact_divide};
pub use laurent::{is_monomial, laurent_embed, parse_laurent, LaurentPoly};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ratio, Rational};
use crate::schemes::{DiffScheme, Parity};

/// A finitely supported element `sum A_r x_r` with `r != 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Rational, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        AlgebraElement::basis(Rational::one())
    }

    /// The basis element `x_r`. Panics on `r = 0`.
    pub fn basis(r: Rational) -> Self {
        assert!(!r.is_zero(), "x_0 is not an element of the group algebra");
        AlgebraElement::from_terms([(r, Rational::one())])
    }

    /// `sigma = x_-1`.
    pub fn sigma() -> Self {
        AlgebraElement::basis(-Rational::one())
    }

    /// Sums `(node, coefficient)` pairs; node 0 is skipped.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut out: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (r, c) in terms {
            if r.is_zero() {
                continue;
            }
            *out.entry(r).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        AlgebraElement { terms: out }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient_at(&self, r: &Rational) -> Rational {
        self.terms.get(r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(r, c)| (r.clone(), c.clone())),
        )
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(r, a)| (r.clone(), a * c)))
    }

    /// Convolution over the multiplicative group: `x_r x_s = x_rs`.
    pub fn multiply(&self, other: &AlgebraElement) -> AlgebraElement {
        multiply(self, other)
    }

    /// The even idempotent `e = (1 + sigma)/2`.
    pub fn even_idempotent() -> Self {
        AlgebraElement::one().add(&AlgebraElement::sigma()).scale(&ratio(1, 2))
    }

    /// The odd idempotent `d = (1 - sigma)/2`.
    pub fn odd_idempotent() -> Self {
        AlgebraElement::one().sub(&AlgebraElement::sigma()).scale(&ratio(1, 2))
    }
}

pub fn multiply(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_terms(a.terms.iter().flat_map(|(r, x)| {
        b.terms.iter().map(move |(s, y)| (r * s, x * y))
    }))
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(
            f,
            self.terms.iter().rev().map(|(r, c)| (c.clone(), format!("x[{r}]"))),
        )
    }
}

/// Writes `c1*t1 + c2*t2 - c3*t3` with explicit coefficients; `0` when empty.
pub(crate) fn write_sum(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Rational, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, name) in terms {
        if first {
            write!(f, "{c}*{name}")?;
            first = false;
        } else if c.is_negative() {
            write!(f, " - {}*{name}", -c)?;
        } else {
            write!(f, " + {c}*{name}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// The element `sum A_r x_r` of a scheme, dropping its node-0 term.
pub fn to_algebra(s: &DiffScheme) -> Result<AlgebraElement> {
    if s.terms().all(|(_, node)| node.is_zero()) {
        return Err(Error::domain(format!(
            "scheme {s} has no nonzero node; its element is degenerate"
        )));
    }
    Ok(AlgebraElement::from_terms(
        s.terms().map(|(c, n)| (n.clone(), c.clone())),
    ))
}

/// The image `e*alpha` or `d*alpha`, recorded by its coefficients on
/// positive points: `A_r + A_-r` (even) or `A_r - A_-r` (odd).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositivePart {
    terms: BTreeMap<Rational, Rational>,
    pub parity: Parity,
}

impl PositivePart {
    pub fn zero(parity: Parity) -> Self {
        PositivePart {
            terms: BTreeMap::new(),
            parity,
        }
    }

    /// Sums `(point, coefficient)` pairs; points must be positive.
    pub fn from_terms(
        parity: Parity,
        terms: impl IntoIterator<Item = (Rational, Rational)>,
    ) -> Result<Self> {
        let mut out: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (r, c) in terms {
            if !r.is_positive() {
                return Err(Error::domain(format!("positive part indexed by {r} <= 0")));
            }
            *out.entry(r).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(PositivePart { terms: out, parity })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient_at(&self, r: &Rational) -> Rational {
        self.terms.get(r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product inside `e A` (or `d A`), which is the group algebra of Q+.
    pub fn multiply(&self, other: &PositivePart) -> Result<PositivePart> {
        if self.parity != other.parity {
            return Err(Error::domain("product of even and odd components is zero by orthogonality, not a positive part"));
        }
        PositivePart::from_terms(
            self.parity,
            self.terms.iter().flat_map(|(r, x)| {
                other.terms.iter().map(move |(s, y)| (r * s, x * y))
            }),
        )
    }

    /// Back to `sum c_r e_r` (or `sum c_r d_r`) inside the full algebra.
    pub fn to_element(&self) -> AlgebraElement {
        let half = ratio(1, 2);
        let mirror_sign = match self.parity {
            Parity::Even => Rational::one(),
            Parity::Odd => -Rational::one(),
        };
        AlgebraElement::from_terms(self.terms.iter().flat_map(|(r, c)| {
            let h = c * &half;
            [(r.clone(), h.clone()), (-r.clone(), h * &mirror_sign)]
        }))
    }
}

impl fmt::Display for PositivePart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.parity {
            Parity::Even => 'e',
            Parity::Odd => 'd',
        };
        write_sum(
            f,
            self.terms.iter().rev().map(|(r, c)| (c.clone(), format!("{letter}[{r}]"))),
        )
    }
}

/// Even or odd projection of an algebra element.
pub fn parity_project(a: &AlgebraElement, parity: Parity) -> PositivePart {
    let sign = match parity {
        Parity::Even => Rational::one(),
        Parity::Odd => -Rational::one(),
    };
    let points = a.terms.keys().map(|r| r.abs());
    PositivePart::from_terms(
        parity,
        points
            .map(|r| {
                let c = a.coefficient_at(&r) + &sign * a.coefficient_at(&-r.clone());
                (r, c)
            })
            .collect::<BTreeMap<_, _>>(),
    )
    .expect("absolute values of nonzero nodes are positive")
}
