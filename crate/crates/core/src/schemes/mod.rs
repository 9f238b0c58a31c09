//! Difference schemes `sum A_i f(x + a_i h)` and their classical analysis.

mod catalog;
mod parity;
mod parse;
mod vandermonde;

pub use catalog::{catalog, CatalogEntry};
pub use parity::{parity_split, parity_structure, Parity, ParitySplit, ParityStructure};
pub use parse::{parse_scheme, parse_scheme_ref};
pub use vandermonde::grd_from_nodes;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, pow, Rational};

/// A finite difference scheme: nonzero coefficients on distinct nodes.
///
/// Terms with zero coefficient are dropped on construction, so two schemes
/// are equal exactly when they have the same terms. The empty scheme is the
/// zero difference; it only arises from arithmetic (the parser rejects it).
/// Iteration and display order is by node, descending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffScheme {
    // node -> coefficient
    terms: BTreeMap<Rational, Rational>,
}

impl DiffScheme {
    pub fn zero() -> Self {
        DiffScheme::default()
    }

    /// Builds a scheme from `(coefficient, node)` pairs; nodes must be distinct.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut out = BTreeMap::new();
        for (coeff, node) in terms {
            if out.contains_key(&node) {
                return Err(Error::DuplicateNode(node.to_string()));
            }
            out.insert(node, coeff);
        }
        out.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(DiffScheme { terms: out })
    }

    /// Builds a scheme summing coefficients of repeated nodes.
    pub fn accumulate<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut out: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (coeff, node) in terms {
            *out.entry(node).or_insert_with(Rational::zero) += coeff;
        }
        out.retain(|_, c| !c.is_zero());
        DiffScheme { terms: out }
    }

    /// `(coefficient, node)` pairs, nodes descending.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> + '_ {
        self.terms.iter().rev().map(|(node, coeff)| (coeff, node))
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.terms.keys().rev()
    }

    pub fn coefficient_at(&self, node: &Rational) -> Rational {
        self.terms.get(node).cloned().unwrap_or_else(Rational::zero)
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

    /// Largest absolute node value (zero for the zero scheme).
    pub fn max_abs_node(&self) -> Rational {
        self.terms
            .keys()
            .map(|n| if n < &Rational::zero() { -n.clone() } else { n.clone() })
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// `sum A_i a_i^j`, with `0^0 = 1`.
    pub fn moment(&self, j: u32) -> Rational {
        self.terms
            .iter()
            .map(|(node, coeff)| coeff * pow(node, j as i64))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn profile(&self) -> GrdProfile {
        grd_profile(self)
    }

    /// Nodes multiplied by `r`.
    pub fn dilate(&self, r: &Rational) -> Result<DiffScheme> {
        if r.is_zero() {
            return Err(Error::domain("dilation factor must be nonzero"));
        }
        Ok(self.map_nodes(|node| node * r))
    }

    /// Coefficients multiplied by `c`.
    pub fn scale(&self, c: &Rational) -> Result<DiffScheme> {
        if c.is_zero() {
            return Err(Error::domain("scale factor must be nonzero"));
        }
        Ok(self.mul_scalar(c))
    }

    /// The scaling `Delta f(x, t h) / t^n` of an order-n scheme.
    pub fn scaling(&self, t: &Rational) -> Result<DiffScheme> {
        let profile = self.profile();
        let Some(n) = profile.order.filter(|_| profile.is_grd) else {
            return Err(Error::domain(
                "scaling is defined only for generalized Riemann differences",
            ));
        };
        let dilated = self.dilate(t)?;
        Ok(dilated.mul_scalar(&pow(t, -(n as i64))))
    }

    /// Nodes negated (`h -> -h`).
    pub fn reflect(&self) -> DiffScheme {
        self.map_nodes(|node| -node.clone())
    }

    pub fn add(&self, other: &DiffScheme) -> DiffScheme {
        DiffScheme::accumulate(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(n, c)| (c.clone(), n.clone())),
        )
    }

    pub fn sub(&self, other: &DiffScheme) -> DiffScheme {
        self.add(&other.mul_scalar(&-Rational::one()))
    }

    pub(crate) fn mul_scalar(&self, c: &Rational) -> DiffScheme {
        DiffScheme::accumulate(self.terms.iter().map(|(n, a)| (a * c, n.clone())))
    }

    fn map_nodes(&self, f: impl Fn(&Rational) -> Rational) -> DiffScheme {
        DiffScheme {
            terms: self.terms.iter().map(|(n, c)| (f(n), c.clone())).collect(),
        }
    }

    /// Whether the scheme has a term at node 0.
    pub fn has_zero_node(&self) -> bool {
        self.terms.contains_key(&Rational::zero())
    }
}

impl fmt::Display for DiffScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (coeff, node)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{coeff}@{node}")?;
        }
        Ok(())
    }
}

/// Moment data of a scheme: where the first nonzero moment sits and whether
/// the Vandermonde conditions of that order hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrdProfile {
    /// Least `j` with a nonzero moment; `None` for the zero scheme.
    pub first_nonzero_index: Option<u32>,
    #[serde(serialize_with = "crate::report::ser_opt_rational")]
    pub first_moment_value: Option<Rational>,
    pub is_grd: bool,
    pub order: Option<u32>,
    pub excess: Option<i64>,
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub moments: Vec<Rational>,
}

impl GrdProfile {
    /// Order if the scheme is a generalized Riemann difference.
    pub fn grd_order(&self) -> Option<u32> {
        self.order.filter(|_| self.is_grd)
    }
}

/// Moments `0, 1, 2, ...` computed with running powers of the nodes.
fn moments(s: &DiffScheme) -> impl Iterator<Item = Rational> + '_ {
    let mut powers: Vec<Rational> = vec![Rational::one(); s.terms.len()];
    let mut first = true;
    std::iter::from_fn(move || {
        if !first {
            for (p, node) in powers.iter_mut().zip(s.terms.keys()) {
                *p *= node;
            }
        }
        first = false;
        Some(
            powers
                .iter()
                .zip(s.terms.values())
                .fold(Rational::zero(), |acc, (p, c)| acc + p * c),
        )
    })
}

/// Moments `0..m-1` and the generalized-Riemann order/excess of `s`.
pub fn grd_profile(s: &DiffScheme) -> GrdProfile {
    let m = s.len() as u32;
    let moments: Vec<Rational> = moments(s).take(m as usize).collect();
    let first = moments.iter().position(|v| !v.is_zero()).map(|j| j as u32);
    let first_value = first.map(|j| moments[j as usize].clone());
    let is_grd = matches!((first, &first_value), (Some(j), Some(c)) if *c == factorial(j));
    let (order, excess) = if is_grd {
        let n = first.unwrap();
        (Some(n), Some(m as i64 - (n as i64 + 1)))
    } else {
        (None, None)
    };
    GrdProfile {
        first_nonzero_index: first,
        first_moment_value: first_value,
        is_grd,
        order,
        excess,
        moments,
    }
}

/// Order of a generalized Riemann difference, or a domain error.
///
/// Stops at the first nonzero moment instead of building the full profile.
pub fn require_grd(s: &DiffScheme) -> Result<u32> {
    moments(s)
        .take(s.len())
        .enumerate()
        .find(|(_, v)| !v.is_zero())
        .and_then(|(j, v)| (v == factorial(j as u32)).then_some(j as u32))
        .ok_or_else(|| Error::domain(format!("not a generalized Riemann difference: {s}")))
}
