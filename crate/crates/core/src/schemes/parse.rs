use super::{catalog, CatalogEntry, DiffScheme};
use crate::error::{Error, Result};
use crate::lexer::Cursor;

/// Parses `term (("," | whitespace) term)*` where `term := rational "@" rational`.
///
/// ```
/// use grd_core::schemes::parse_scheme;
/// let s = parse_scheme("1@1, -1@0").unwrap();
/// assert_eq!(s.to_string(), "1@1, -1@0");
/// ```
pub fn parse_scheme(text: &str) -> Result<DiffScheme> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.at_end() {
        return Err(Error::EmptyScheme);
    }
    let mut terms = Vec::new();
    loop {
        let coeff = cur.rational()?;
        cur.expect(b'@')?;
        let node = cur.rational()?;
        terms.push((coeff, node));

        let had_ws = cur.skip_ws();
        let had_comma = cur.eat(b',');
        cur.skip_ws();
        if cur.at_end() {
            if had_comma {
                return Err(cur.error("expected a term after ','"));
            }
            break;
        }
        if !had_ws && !had_comma {
            return Err(cur.error("expected ',' or whitespace between terms"));
        }
    }
    DiffScheme::from_terms(terms)
}

/// Parses either a scheme literal or `catalog:<entry>`.
pub fn parse_scheme_ref(text: &str) -> Result<DiffScheme> {
    let trimmed = text.trim_start();
    match trimmed.strip_prefix("catalog:") {
        Some(rest) => {
            let entry: CatalogEntry = rest.parse().map_err(|e| shift(e, text.len() - rest.len()))?;
            catalog(&entry)
        }
        None => parse_scheme(text),
    }
}

fn shift(err: Error, by: usize) -> Error {
    match err {
        Error::Parse { position, message } => Error::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}
