use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::DiffScheme;
use crate::error::{Error, Result};
use crate::exact::{binomial, int, ratio, Rational};
use crate::lexer::Cursor;

/// Named schemes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    /// `sum (-1)^k C(n,k) f(x + (n-k)h)`
    Riemann(u32),
    /// `sum (-1)^k C(n,k) f(x + (n/2-k)h)`
    Symmetric(u32),
    /// `(f(x+h) - f(x-h)) / 2`, the first symmetric difference on nodes +-1.
    SymmetricCentered1,
    /// `(A f(x+rh) + A f(x-rh) - 2A f(x) + f(x+h) - f(x-h)) / 2`
    Theorem1 { a: Rational, r: Rational },
    /// `(f(x+2h) - 2f(x+h) + 2f(x-h) - f(x-2h)) / 2`, third order.
    Example3iii,
}

pub fn catalog(entry: &CatalogEntry) -> Result<DiffScheme> {
    match entry {
        CatalogEntry::Riemann(n) => {
            if *n == 0 {
                return Err(Error::domain("riemann(n) needs n >= 1"));
            }
            DiffScheme::from_terms((0..=*n).map(|k| {
                (sign(k) * binomial(*n, k), int((*n - k) as i64))
            }))
        }
        CatalogEntry::Symmetric(n) => {
            if *n == 0 {
                return Err(Error::domain("symmetric(n) needs n >= 1"));
            }
            DiffScheme::from_terms((0..=*n).map(|k| {
                let node = ratio(*n as i64, 2) - int(k as i64);
                (sign(k) * binomial(*n, k), node)
            }))
        }
        CatalogEntry::SymmetricCentered1 => {
            DiffScheme::from_terms([(ratio(1, 2), int(1)), (ratio(-1, 2), int(-1))])
        }
        CatalogEntry::Theorem1 { a, r } => {
            if a.is_zero() || r.is_zero() {
                return Err(Error::domain("theorem1(A, r) needs A != 0 and r != 0"));
            }
            let half = ratio(1, 2);
            Ok(DiffScheme::accumulate([
                (a * &half, r.clone()),
                (a * &half, -r.clone()),
                (-a.clone(), int(0)),
                (half.clone(), int(1)),
                (-half, int(-1)),
            ]))
        }
        CatalogEntry::Example3iii => DiffScheme::from_terms([
            (ratio(1, 2), int(2)),
            (int(-1), int(1)),
            (int(1), int(-1)),
            (ratio(-1, 2), int(-2)),
        ]),
    }
}

fn sign(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogEntry::Riemann(n) => write!(f, "riemann({n})"),
            CatalogEntry::Symmetric(n) => write!(f, "symmetric({n})"),
            CatalogEntry::SymmetricCentered1 => f.write_str("symmetric_centered_1"),
            CatalogEntry::Theorem1 { a, r } => write!(f, "theorem1({a}, {r})"),
            CatalogEntry::Example3iii => f.write_str("example3iii"),
        }
    }
}

impl FromStr for CatalogEntry {
    type Err = Error;

    /// `riemann(n)`, `symmetric(n)`, `symmetric_centered_1`,
    /// `theorem1(A, r)` or `example3iii`.
    fn from_str(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        let entry = if cur.eat_keyword("riemann") {
            CatalogEntry::Riemann(order_arg(&mut cur)?)
        } else if cur.eat_keyword("symmetric_centered_1") {
            CatalogEntry::SymmetricCentered1
        } else if cur.eat_keyword("symmetric") {
            CatalogEntry::Symmetric(order_arg(&mut cur)?)
        } else if cur.eat_keyword("theorem1") {
            cur.expect(b'(')?;
            cur.skip_ws();
            let a = cur.rational()?;
            cur.skip_ws();
            cur.expect(b',')?;
            cur.skip_ws();
            let r = cur.rational()?;
            cur.skip_ws();
            cur.expect(b')')?;
            CatalogEntry::Theorem1 { a, r }
        } else if cur.eat_keyword("example3iii") {
            CatalogEntry::Example3iii
        } else {
            return Err(cur.error("unknown catalog entry"));
        };
        cur.finish()?;
        Ok(entry)
    }
}

fn order_arg(cur: &mut Cursor<'_>) -> Result<u32> {
    cur.expect(b'(')?;
    cur.skip_ws();
    let at = cur.pos();
    let n = cur.small_natural()?;
    cur.skip_ws();
    cur.expect(b')')?;
    u32::try_from(n)
        .ok()
        .filter(|&n| n <= 64)
        .ok_or_else(|| Error::parse(at, "order must be at most 64"))
}
