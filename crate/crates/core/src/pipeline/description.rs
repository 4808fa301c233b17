//! Text form of a gluing: `(3,3,4 ; 3,6,8,0,...)`. Side counts before the
//! semicolon, the face permutation after it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enumerate::Pairing;
use crate::error::{Error, Result};
use crate::polyhedra::DipyramidSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GluingDescription {
    pub spec: DipyramidSpec,
    pub pairing: Pairing,
}

impl GluingDescription {
    pub fn new(spec: DipyramidSpec, perm: Vec<usize>) -> Result<Self> {
        let pairing = Pairing::new(&spec, perm)?;
        Ok(GluingDescription { spec, pairing })
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.error(format!("expected {c:?}, found {found:?}"))),
            None => Err(self.error(format!("expected {c:?}, found end of input"))),
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.text[self.pos..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let value = self.text[self.pos..self.pos + digits]
            .parse()
            .map_err(|_| self.error("number too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn list_until(&mut self, end: char) -> Result<Vec<usize>> {
        let mut out = vec![self.number()?];
        loop {
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    out.push(self.number()?);
                }
                Some(c) if c == end => return Ok(out),
                Some(c) => return Err(self.error(format!("expected ',' or {end:?}, found {c:?}"))),
                None => return Err(self.error(format!("expected {end:?}, found end of input"))),
            }
        }
    }
}

pub fn parse_description(text: &str) -> Result<GluingDescription> {
    let mut cur = Cursor { text, pos: 0 };
    cur.expect('(')?;
    let sides = cur.list_until(';')?;
    cur.expect(';')?;
    let perm = cur.list_until(')')?;
    cur.expect(')')?;
    if cur.peek().is_some() {
        return Err(cur.error("trailing characters"));
    }
    let spec = DipyramidSpec::new(sides)?;
    GluingDescription::new(spec, perm)
}

pub fn emit_description(d: &GluingDescription) -> String {
    d.to_string()
}

impl fmt::Display for GluingDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({} ; {})", join(self.spec.sides()), join(self.pairing.as_slice()))
    }
}

impl FromStr for GluingDescription {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_description(s)
    }
}

/// Parses one description per non-empty line, skipping `#` comments.
pub fn parse_description_list(text: &str) -> Result<Vec<GluingDescription>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_description)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_entry() {
        let d = parse_description("(3,3,4 ; 3,6,8,0,13,19,1,15,2,17,14,18,16,4,10,7,12,9,11,5)").unwrap();
        assert_eq!(d.spec.sides(), &[3, 3, 4]);
        assert_eq!(&d.pairing.as_slice()[..3], &[3, 6, 8]);
    }

    #[test]
    fn toy_entry_round_trips() {
        let text = "(3 ; 1,0,3,2,5,4)";
        let d = parse_description(text).unwrap();
        assert_eq!(emit_description(&d), text);
        let loose = parse_description(" ( 3 ;1, 0,3 ,2,5,4 ) ").unwrap();
        assert_eq!(loose, d);
    }

    #[test]
    fn error_kinds() {
        assert!(matches!(parse_description("(3 ; 0,2,1,4,3,5)"), Err(Error::FixedPoints(f)) if f == vec![0, 5]));
        assert!(matches!(parse_description("(3 ; 1,2,0,4,5,3)"), Err(Error::NotInvolution { .. })));
        assert!(matches!(parse_description("(3 ; 1,0)"), Err(Error::LengthMismatch { .. })));
        assert!(matches!(parse_description("(3 ; 1,0,3,2,5,4"), Err(Error::Parse { position: 16, .. })));
        assert!(matches!(parse_description("(3 , 1,0,3,2,5,4)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_description("(3 ; 1,0,x)"), Err(Error::Parse { position: 9, .. })));
        assert!(matches!(parse_description("(2 ; 1,0,3,2)"), Err(Error::InvalidSpec(_))));
        assert!(matches!(parse_description("(3 ; 1,0,3,2,5,4) extra"), Err(Error::Parse { .. })));
    }
}
