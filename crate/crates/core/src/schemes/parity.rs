use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::{grd_profile, require_grd, DiffScheme, GrdProfile};
use crate::error::Result;
use crate::exact::{ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// The parity matching order `n` (the epsilon part).
    pub fn of_order(n: u32) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn opposite(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unique decomposition of a scheme into even and odd components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySplit {
    pub even: DiffScheme,
    pub odd: DiffScheme,
    /// Parity of the epsilon part, when the scheme has an order.
    pub epsilon: Option<Parity>,
}

impl ParitySplit {
    pub fn component(&self, parity: Parity) -> &DiffScheme {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn epsilon_part(&self) -> Option<&DiffScheme> {
        self.epsilon.map(|p| self.component(p))
    }

    pub fn epsilon_prime_part(&self) -> Option<&DiffScheme> {
        self.epsilon.map(|p| self.component(p.opposite()))
    }
}

/// Even coefficient at `b` is `(A_b + A_-b)/2`, odd is `(A_b - A_-b)/2`.
pub fn parity_split(s: &DiffScheme) -> ParitySplit {
    let half = ratio(1, 2);
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (coeff, node) in s.terms() {
        let mirror = s.coefficient_at(&-node.clone());
        let e: Rational = (coeff + &mirror) * &half;
        let o: Rational = (coeff - &mirror) * &half;
        if node.is_zero() {
            even.push((coeff.clone(), node.clone()));
            continue;
        }
        even.push((e, node.clone()));
        odd.push((o, node.clone()));
        if mirror.is_zero() {
            // The mirrored node is absent from `s`; emit its share here.
            let minus = -node.clone();
            even.push((coeff * &half, minus.clone()));
            odd.push((-(coeff * &half), minus));
        }
    }
    ParitySplit {
        even: DiffScheme::accumulate(even),
        odd: DiffScheme::accumulate(odd),
        epsilon: s.profile().grd_order().map(Parity::of_order),
    }
}

/// Order structure of the parity components of an order-n scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityStructure {
    pub order: u32,
    pub epsilon: Parity,
    pub epsilon_profile: GrdProfile,
    /// `None` when the epsilon-prime part is zero.
    pub epsilon_prime_profile: Option<GrdProfile>,
    pub theorem4_holds: bool,
}

/// Checks that the epsilon part is of order n and the epsilon-prime part is
/// zero or has its first nonzero moment beyond n.
pub fn parity_structure(s: &DiffScheme) -> Result<ParityStructure> {
    let n = require_grd(s)?;
    let split = parity_split(s);
    let epsilon = Parity::of_order(n);
    let eps = split.component(epsilon);
    let eps_prime = split.component(epsilon.opposite());

    let epsilon_profile = grd_profile(eps);
    let epsilon_prime_profile = (!eps_prime.is_zero()).then(|| grd_profile(eps_prime));

    let eps_ok = epsilon_profile.grd_order() == Some(n);
    let prime_ok = match &epsilon_prime_profile {
        None => true,
        Some(p) => p.first_nonzero_index.is_some_and(|j| j > n),
    };
    Ok(ParityStructure {
        order: n,
        epsilon,
        epsilon_profile,
        epsilon_prime_profile,
        theorem4_holds: eps_ok && prime_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::schemes::{catalog, parse_scheme, CatalogEntry};

    fn s(text: &str) -> DiffScheme {
        parse_scheme(text).unwrap()
    }

    #[test]
    fn forward_difference_split() {
        let split = parity_split(&s("1@1, -1@0"));
        assert_eq!(split.even, s("1/2@1, 1/2@-1, -1@0"));
        assert_eq!(split.odd, s("1/2@1, -1/2@-1"));
        assert_eq!(split.epsilon, Some(Parity::Odd));
        assert_eq!(split.epsilon_part(), Some(&split.odd));
    }

    #[test]
    fn antisymmetric_schemes_are_odd() {
        for entry in [CatalogEntry::Symmetric(3), CatalogEntry::Example3iii] {
            let scheme = catalog(&entry).unwrap();
            let split = parity_split(&scheme);
            assert!(split.even.is_zero());
            assert_eq!(split.odd, scheme);
        }
    }

    #[test]
    fn recomposes_lopsided_scheme() {
        let a = s("2@1, 1@-1, -3@0");
        let split = parity_split(&a);
        assert_eq!(split.even.add(&split.odd), a);
        assert_eq!(split.even.reflect(), split.even);
        assert_eq!(split.odd.reflect(), split.odd.mul_scalar(&int(-1)));
    }

    #[test]
    fn forward_difference_structure() {
        let st = parity_structure(&s("1@1, -1@0")).unwrap();
        assert!(st.theorem4_holds);
        assert_eq!(st.epsilon, Parity::Odd);
        assert_eq!(st.epsilon_profile.grd_order(), Some(1));
        let prime = st.epsilon_prime_profile.unwrap();
        // Half of the second symmetric difference.
        assert_eq!(prime.first_nonzero_index, Some(2));
        assert_eq!(prime.first_moment_value, Some(int(1)));
    }

    #[test]
    fn symmetric_differences_have_zero_prime_part() {
        for n in 1..=5 {
            let st = parity_structure(&catalog(&CatalogEntry::Symmetric(n)).unwrap()).unwrap();
            assert!(st.theorem4_holds);
            assert!(st.epsilon_prime_profile.is_none());
        }
    }

    #[test]
    fn non_grd_rejected() {
        assert!(parity_structure(&s("2@1, -2@0")).is_err());
    }
}
