//! Words in named generators.
//!
//! Grammar: `WORD := TERM (('*'|' ') TERM)*`, `TERM := GEN ('^' INT)?`,
//! `INT` a signed decimal. The empty word denotes the identity. Which
//! generator names are legal is decided by the consumer.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    terms: Vec<(String, i64)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a word, dropping zero exponents and merging adjacent equal symbols.
    pub fn from_terms<S: Into<String>>(terms: impl IntoIterator<Item = (S, i64)>) -> Self {
        let mut out: Vec<(String, i64)> = Vec::new();
        for (sym, exp) in terms {
            let sym = sym.into();
            match out.last_mut() {
                Some((last, e)) if *last == sym => {
                    *e += exp;
                    if *e == 0 {
                        out.pop();
                    }
                }
                _ if exp != 0 => out.push((sym, exp)),
                _ => {}
            }
        }
        GroupWord { terms: out }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for tok in text.split(['*', ' ']).filter(|t| !t.is_empty()) {
            let (sym, exp) = match tok.split_once('^') {
                Some((sym, exp)) => {
                    let e = parse_int(exp)
                        .ok_or_else(|| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (sym, e)
                }
                None => (tok, 1),
            };
            if sym.is_empty() {
                return Err(Error::Parse(format!("missing generator in `{tok}`")));
            }
            terms.push((sym.to_string(), exp));
        }
        Ok(Self::from_terms(terms))
    }

    pub fn terms(&self) -> &[(String, i64)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn inverse(&self) -> GroupWord {
        Self::from_terms(self.terms.iter().rev().map(|(s, e)| (s.clone(), -e)))
    }

    /// Fails with a parse error on the first symbol not accepted by `allowed`.
    pub fn check_symbols(&self, allowed: impl Fn(&str) -> bool) -> Result<()> {
        match self.terms.iter().find(|(s, _)| !allowed(s)) {
            Some((s, _)) => Err(Error::Parse(format!("unknown generator `{s}`"))),
            None => Ok(()),
        }
    }
}

fn parse_int(s: &str) -> Option<i64> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (sym, exp)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *exp == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{exp}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
