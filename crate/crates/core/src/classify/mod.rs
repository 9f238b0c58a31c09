//! Implication, equivalence and canonical forms of generalized Riemann
//! differences.
//!
//! Both decisions work on the Laurent images of the even and odd positive
//! parts. Differentiability with respect to `S` implies differentiability
//! with respect to `T` exactly when the orders agree and each parity
//! component of `T` lies in the principal ideal generated by the matching
//! component of `S`. Equivalence asks for unit (monomial) quotients.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{
    exact_divide, is_monomial, laurent_embed, parity_project, to_algebra, LaurentPoly,
};
use crate::error::{Error, Result};
use crate::exact::{pow, Rational};
use crate::report::{ser_display, ser_opt_rational, ser_rational};
use crate::schemes::{parity_split, require_grd, DiffScheme, Parity, ParitySplit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    OrderGap,
    EvenPartNotDivisible,
    OddPartNotDivisible,
    ZeroVsNonzeroComponent,
    Ok,
}

impl Reason {
    fn not_divisible(parity: Parity) -> Reason {
        match parity {
            Parity::Even => Reason::EvenPartNotDivisible,
            Parity::Odd => Reason::OddPartNotDivisible,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Reason::OrderGap => "order-gap",
            Reason::EvenPartNotDivisible => "even-part-not-divisible",
            Reason::OddPartNotDivisible => "odd-part-not-divisible",
            Reason::ZeroVsNonzeroComponent => "zero-vs-nonzero-component",
            Reason::Ok => "ok",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Quotient certifying one parity component of an implication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentCertificate {
    Quotient(LaurentPoly),
    /// The consequent's component is zero, which every ideal contains.
    ZeroComponent,
}

impl fmt::Display for ComponentCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentCertificate::Quotient(q) => q.fmt(f),
            ComponentCertificate::ZeroComponent => f.write_str("zero-component"),
        }
    }
}

impl Serialize for ComponentCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_display(self, s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub epsilon: ComponentCertificate,
    pub epsilon_prime: ComponentCertificate,
}

impl Certificate {
    fn component(&self, parity: Parity, epsilon: Parity) -> &ComponentCertificate {
        if parity == epsilon {
            &self.epsilon
        } else {
            &self.epsilon_prime
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicationVerdict {
    pub holds: bool,
    pub reason: Reason,
    /// Common order; `None` on an order gap.
    pub order: Option<u32>,
    pub certificate: Option<Certificate>,
}

/// Constants relating two equivalent schemes: the epsilon part of `a` is
/// the scaling of that of `b` by `s`, and the epsilon-prime part of `a` is
/// `A` times the dilate of that of `b` by `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constants {
    #[serde(rename = "A", serialize_with = "ser_opt_rational")]
    pub a: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub r: Option<Rational>,
    #[serde(serialize_with = "ser_rational")]
    pub s: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub holds: bool,
    pub reason: Reason,
    pub order: Option<u32>,
    pub constants: Option<Constants>,
}

/// Laurent images of both parity parts of an order-n scheme.
struct Components {
    order: u32,
    epsilon: Parity,
    even: LaurentPoly,
    odd: LaurentPoly,
    split: ParitySplit,
}

impl Components {
    fn of(s: &DiffScheme) -> Result<Components> {
        let order = require_grd(s)?;
        if order == 0 {
            return Err(Error::domain(
                "order-0 schemes have no derivative structure to compare",
            ));
        }
        let alpha = to_algebra(s)?;
        Ok(Components {
            order,
            epsilon: Parity::of_order(order),
            even: laurent_embed(&parity_project(&alpha, Parity::Even))?.0,
            odd: laurent_embed(&parity_project(&alpha, Parity::Odd))?.0,
            split: parity_split(s),
        })
    }

    fn image(&self, parity: Parity) -> &LaurentPoly {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    /// Epsilon parity first.
    fn parities(&self) -> [Parity; 2] {
        [self.epsilon, self.epsilon.opposite()]
    }
}

/// Decides whether differentiability with respect to `antecedent` implies
/// differentiability with respect to `consequent`.
///
/// ```
/// use grd_core::classify::{implies, Reason};
/// use grd_core::schemes::{catalog, CatalogEntry};
///
/// let s3 = catalog(&CatalogEntry::Symmetric(3)).unwrap();
/// let ex = catalog(&CatalogEntry::Example3iii).unwrap();
/// let v = implies(&s3, &ex).unwrap();
/// assert!(!v.holds);
/// assert_eq!(v.reason, Reason::OddPartNotDivisible);
/// ```
pub fn implies(antecedent: &DiffScheme, consequent: &DiffScheme) -> Result<ImplicationVerdict> {
    let s = Components::of(antecedent)?;
    let t = Components::of(consequent)?;
    if s.order != t.order {
        return Ok(ImplicationVerdict {
            holds: false,
            reason: Reason::OrderGap,
            order: None,
            certificate: None,
        });
    }
    let refuted = |reason| ImplicationVerdict {
        holds: false,
        reason,
        order: Some(s.order),
        certificate: None,
    };

    let mut certs = Vec::with_capacity(2);
    for parity in s.parities() {
        let (p, q) = (s.image(parity), t.image(parity));
        if q.is_zero() {
            certs.push(ComponentCertificate::ZeroComponent);
        } else if p.is_zero() {
            return Ok(refuted(Reason::ZeroVsNonzeroComponent));
        } else {
            match exact_divide(q, p)? {
                Some(g) => certs.push(ComponentCertificate::Quotient(g)),
                None => return Ok(refuted(Reason::not_divisible(parity))),
            }
        }
    }
    let epsilon_prime = certs.pop().expect("two components");
    let epsilon = certs.pop().expect("two components");
    let certificate = Certificate {
        epsilon,
        epsilon_prime,
    };

    for parity in s.parities() {
        let rebuilt = match certificate.component(parity, s.epsilon) {
            ComponentCertificate::Quotient(g) => g.mul(s.image(parity)),
            ComponentCertificate::ZeroComponent => LaurentPoly::zero(),
        };
        if &rebuilt != t.image(parity) {
            return Err(Error::Inconsistent(format!(
                "{parity} certificate does not recompose the consequent"
            )));
        }
    }
    Ok(ImplicationVerdict {
        holds: true,
        reason: Reason::Ok,
        order: Some(s.order),
        certificate: Some(certificate),
    })
}

/// Decides equivalence of two schemes and recovers the relating constants.
pub fn equivalent(a: &DiffScheme, b: &DiffScheme) -> Result<EquivalenceVerdict> {
    let ca = Components::of(a)?;
    let cb = Components::of(b)?;
    if ca.order != cb.order {
        return Ok(EquivalenceVerdict {
            holds: false,
            reason: Reason::OrderGap,
            order: None,
            constants: None,
        });
    }
    let n = ca.order;
    let refuted = |reason| EquivalenceVerdict {
        holds: false,
        reason,
        order: Some(n),
        constants: None,
    };

    // (scalar, point) of the monomial quotient per parity, epsilon first.
    let mut units: Vec<Option<(Rational, Rational)>> = Vec::with_capacity(2);
    for parity in ca.parities() {
        let (x, y) = (ca.image(parity), cb.image(parity));
        match (x.is_zero(), y.is_zero()) {
            (true, true) => units.push(None),
            (true, false) | (false, true) => return Ok(refuted(Reason::ZeroVsNonzeroComponent)),
            (false, false) => match exact_divide(x, y)?.as_ref().and_then(is_monomial) {
                Some(unit) => units.push(Some(unit)),
                None => return Ok(refuted(Reason::not_divisible(parity))),
            },
        }
    }
    let prime_unit = units.pop().expect("two components");
    let Some((c, s)) = units.pop().expect("two components") else {
        return Err(Error::Inconsistent("order-n scheme with a zero epsilon part".into()));
    };
    if c != pow(&s, -(n as i64)) {
        return Err(Error::Inconsistent(format!(
            "epsilon quotient scalar {c} is not s^-n for s = {s}"
        )));
    }
    let (big_a, r) = match prime_unit {
        Some((a, r)) => (Some(a), Some(r)),
        None => (None, None),
    };

    // Recompose on the schemes themselves, independently of the algebra.
    let eps = ca.epsilon;
    let eps_ok = ca.split.component(eps) == &cb.split.component(eps).scaling(&s)?;
    let prime_ok = match (&big_a, &r) {
        (Some(big_a), Some(r)) => {
            ca.split.component(eps.opposite())
                == &cb.split.component(eps.opposite()).dilate(r)?.scale(big_a)?
        }
        _ => true,
    };
    if !(eps_ok && prime_ok) {
        return Err(Error::Inconsistent(
            "equivalence constants do not recompose the schemes".into(),
        ));
    }
    Ok(EquivalenceVerdict {
        holds: true,
        reason: Reason::Ok,
        order: Some(n),
        constants: Some(Constants { a: big_a, r, s }),
    })
}

/// A representative of the equivalence class of a scheme.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalForm {
    #[serde(serialize_with = "ser_display")]
    pub epsilon_canon: DiffScheme,
    /// Zero scheme when the epsilon-prime part vanishes.
    #[serde(serialize_with = "ser_display")]
    pub epsilon_prime_canon: DiffScheme,
    pub order: u32,
}

/// Normalizes the epsilon part by a scaling (largest node 1) and the
/// epsilon-prime part by a dilation (largest node 1) and a scalar
/// (coefficient 1 at node 1).
pub fn canonical_form(s: &DiffScheme) -> Result<CanonicalForm> {
    let c = Components::of(s)?;
    let eps = c.split.component(c.epsilon);
    let epsilon_canon = eps.scaling(&eps.max_abs_node().recip())?;

    let prime = c.split.component(c.epsilon.opposite());
    let epsilon_prime_canon = if prime.is_zero() {
        DiffScheme::zero()
    } else {
        let t = prime.max_abs_node();
        if t.is_zero() {
            return Err(Error::Inconsistent(
                "epsilon-prime part supported only at node 0".into(),
            ));
        }
        let dilated = prime.dilate(&t.recip())?;
        let lead = dilated.coefficient_at(&Rational::one());
        dilated.scale(&lead.recip())?
    };
    Ok(CanonicalForm {
        epsilon_canon,
        epsilon_prime_canon,
        order: c.order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_laurent;
    use crate::exact::{int, ratio};
    use crate::schemes::{catalog, parse_scheme, CatalogEntry};

    fn cat(text: &str) -> DiffScheme {
        catalog(&text.parse().unwrap()).unwrap()
    }

    #[test]
    fn symmetric_three_does_not_imply_example() {
        let v = implies(&cat("symmetric(3)"), &cat("example3iii")).unwrap();
        assert_eq!((v.holds, v.reason, v.order), (false, Reason::OddPartNotDivisible, Some(3)));
        let v = implies(&cat("example3iii"), &cat("symmetric(3)")).unwrap();
        assert_eq!((v.holds, v.reason), (false, Reason::OddPartNotDivisible));
    }

    #[test]
    fn forward_difference_implies_theorem1_instance() {
        let v = implies(&cat("riemann(1)"), &cat("theorem1(1, 2)")).unwrap();
        assert!(v.holds);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.epsilon, ComponentCertificate::Quotient(parse_laurent("1").unwrap()));
        assert_eq!(cert.epsilon_prime, ComponentCertificate::Quotient(parse_laurent("y2").unwrap()));
    }

    #[test]
    fn zero_component_certificate() {
        let v = implies(&cat("riemann(1)"), &cat("symmetric_centered_1")).unwrap();
        assert!(v.holds);
        assert_eq!(v.certificate.unwrap().epsilon_prime, ComponentCertificate::ZeroComponent);
        let v = implies(&cat("symmetric_centered_1"), &cat("riemann(1)")).unwrap();
        assert_eq!((v.holds, v.reason), (false, Reason::ZeroVsNonzeroComponent));
    }

    #[test]
    fn order_gaps() {
        let v = implies(&cat("riemann(2)"), &cat("riemann(1)")).unwrap();
        assert_eq!((v.holds, v.reason, v.order), (false, Reason::OrderGap, None));
        assert_eq!(equivalent(&cat("riemann(1)"), &cat("riemann(3)")).unwrap().reason, Reason::OrderGap);
    }

    #[test]
    fn theorem1_constants() {
        for (a, r) in [(int(1), int(2)), (ratio(-3, 7), ratio(5, 2)), (int(4), int(1))] {
            let t1 = catalog(&CatalogEntry::Theorem1 { a: a.clone(), r: r.clone() }).unwrap();
            let v = equivalent(&t1, &cat("riemann(1)")).unwrap();
            assert!(v.holds);
            assert_eq!(v.constants, Some(Constants { a: Some(a), r: Some(r), s: int(1) }));
        }
    }

    #[test]
    fn centered_difference_is_not_equivalent() {
        let v = equivalent(&cat("symmetric_centered_1"), &cat("riemann(1)")).unwrap();
        assert_eq!((v.holds, v.reason), (false, Reason::ZeroVsNonzeroComponent));
        // symmetric(1) sits on nodes +-1/2; it is the scaling by 1/2.
        let v = equivalent(&cat("symmetric(1)"), &cat("symmetric_centered_1")).unwrap();
        assert_eq!(v.constants.map(|k| k.s), Some(ratio(1, 2)));
    }

    #[test]
    fn scalings_are_equivalent() {
        let s3 = cat("symmetric(3)");
        let v = equivalent(&s3.scaling(&int(2)).unwrap(), &s3).unwrap();
        assert!(v.holds);
        let k = v.constants.unwrap();
        assert_eq!((k.s, k.a, k.r), (int(2), None, None));
        assert!(!equivalent(&cat("example3iii"), &s3).unwrap().holds);
    }

    #[test]
    fn canonical_forms() {
        let c = canonical_form(&cat("theorem1(-5/3, 7/4)")).unwrap();
        assert_eq!(c, canonical_form(&cat("riemann(1)")).unwrap());
        assert_eq!(c.epsilon_canon, parse_scheme("1/2@1, -1/2@-1").unwrap());
        assert_eq!(c.epsilon_prime_canon, parse_scheme("1@1, 1@-1, -2@0").unwrap());

        let s3 = canonical_form(&cat("symmetric(3)")).unwrap();
        assert_eq!(s3.epsilon_canon, cat("symmetric(3)").scaling(&ratio(2, 3)).unwrap());
        assert!(s3.epsilon_prime_canon.is_zero());
        let again = canonical_form(&s3.epsilon_canon).unwrap();
        assert_eq!(again, s3);
    }

    #[test]
    fn non_grd_inputs_are_domain_errors() {
        let bad = parse_scheme("2@1, -2@0").unwrap();
        assert!(matches!(implies(&bad, &cat("riemann(1)")), Err(Error::Domain(_))));
        assert!(matches!(equivalent(&cat("riemann(1)"), &bad), Err(Error::Domain(_))));
        assert!(matches!(canonical_form(&bad), Err(Error::Domain(_))));
        assert!(matches!(canonical_form(&parse_scheme("1@0").unwrap()), Err(Error::Domain(_))));
    }
}
