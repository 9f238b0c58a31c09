use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, Rational};

/// An element `rat + irr * sqrt(2)` of Q(sqrt 2).
///
/// Used only to evaluate functions whose definition branches on
/// rationality; it never enters the multiplicative machinery.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub rat: Rational,
    pub irr: Rational,
}

impl QuadExt {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        QuadExt { rat, irr }
    }

    pub fn rational(rat: Rational) -> Self {
        QuadExt {
            rat,
            irr: Rational::zero(),
        }
    }

    pub fn sqrt2() -> Self {
        QuadExt::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// Exact sign of the real number this represents.
    pub fn signum(&self) -> Ordering {
        let a = self.rat.cmp(&Rational::zero());
        let b = self.irr.cmp(&Rational::zero());
        if a == b || b == Ordering::Equal {
            return a;
        }
        if a == Ordering::Equal {
            return b;
        }
        // Opposite signs: compare rat^2 against 2 * irr^2.
        let lhs = &self.rat * &self.rat;
        let rhs = int(2) * &self.irr * &self.irr;
        match lhs.cmp(&rhs) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn abs(&self) -> QuadExt {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn cmp_value(&self, other: &QuadExt) -> Ordering {
        (self.clone() - other.clone()).signum()
    }

    pub fn pow(&self, exp: u32) -> QuadExt {
        (0..exp).fold(QuadExt::rational(Rational::one()), |acc, _| acc * self.clone())
    }

    /// Inverse of a nonzero value. Panics on zero.
    pub fn recip(&self) -> QuadExt {
        let norm = &self.rat * &self.rat - int(2) * &self.irr * &self.irr;
        assert!(!norm.is_zero(), "division by zero in Q(sqrt 2)");
        QuadExt::new(&self.rat / &norm, -(&self.irr / &norm))
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*s2", self.rat, self.irr)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        QuadExt::new(self.rat + rhs.rat, self.irr + rhs.irr)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        QuadExt::new(self.rat - rhs.rat, self.irr - rhs.irr)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let rat = &self.rat * &rhs.rat + int(2) * &self.irr * &rhs.irr;
        let irr = &self.rat * &rhs.irr + &self.irr * &rhs.rat;
        QuadExt::new(rat, irr)
    }
}

impl Mul<&Rational> for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &Rational) -> QuadExt {
        QuadExt::new(self.rat * rhs, self.irr * rhs)
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: QuadExt) -> QuadExt {
        self * rhs.recip()
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.rat, -self.irr)
    }
}
