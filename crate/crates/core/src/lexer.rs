//! Byte cursor shared by the text grammars.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Rational;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, byte: u8) -> Result<()> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    /// Skips ASCII whitespace; returns whether any was skipped.
    pub(crate) fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos > start
    }

    pub(crate) fn eat_keyword(&mut self, word: &str) -> bool {
        if self.src[self.pos..].starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        let found = match self.src[self.pos..].chars().next() {
            Some(c) => format!(" (found '{}')", c.escape_default()),
            None => " (found end of input)".to_string(),
        };
        Error::parse(self.pos, format!("{}{}", message.into(), found))
    }

    pub(crate) fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }

    pub(crate) fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        let text = self.digits()?;
        text.parse::<BigInt>()
            .map_err(|_| Error::parse(start, "invalid integer"))
    }

    pub(crate) fn small_natural(&mut self) -> Result<u64> {
        let start = self.pos;
        let text = self.digits()?;
        text.parse::<u64>()
            .map_err(|_| Error::parse(start, "integer out of range"))
    }

    /// `["-"] digits ["/" digits]`
    pub(crate) fn rational(&mut self) -> Result<Rational> {
        let negative = self.eat(b'-');
        let numer = self.natural()?;
        let denom = if self.eat(b'/') {
            let at = self.pos;
            let d = self.natural()?;
            if d.is_zero() {
                return Err(Error::parse(at, "zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        let value = Rational::new(numer, denom);
        Ok(if negative { -value } else { value })
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}
