//! Text forms used in configuration files and reports.
//!
//! Groups are written `free(k)` or `product(m1,m2,...)`. Words are written as
//! dot-separated syllables `a^2.b^-1.a^1`, with factor names `a, b, c, ..` in
//! declaration order and `e` for the identity. A bare name means power 1, so
//! the fifth factor's generator must be written `e^1`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{GroupModel, Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Free(u32),
    Product(Vec<u32>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupModel> {
        match self {
            GroupSpec::Free(k) => GroupModel::free(*k),
            GroupSpec::Product(orders) => GroupModel::free_product(orders),
        }
    }
}

impl core::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GroupSpec::Free(k) => write!(f, "free({k})"),
            GroupSpec::Product(orders) => {
                f.write_str("product(")?;
                for (i, m) in orders.iter().enumerate() {
                    if i > 0 {
                        f.write_char(',')?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_char(')')
            }
        }
    }
}

pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| Error::Parse(format!("group spec {text:?}: {why}"));
    let (head, rest) = s.split_once('(').ok_or_else(|| bad("expected free(k) or product(m1,...)"))?;
    let args = rest.strip_suffix(')').ok_or_else(|| bad("missing closing parenthesis"))?;
    let nums = args
        .split(',')
        .map(|a| a.parse::<u32>().map_err(|_| bad("arguments must be positive integers")))
        .collect::<Result<Vec<_>>>()?;
    match head {
        "free" => match nums.as_slice() {
            [k] => Ok(GroupSpec::Free(*k)),
            _ => Err(bad("free takes exactly one rank")),
        },
        "product" => Ok(GroupSpec::Product(nums)),
        _ => Err(bad("unknown group family")),
    }
}

fn factor_name(f: u32) -> char {
    (b'a' + f as u8) as char
}

pub fn format_word(w: &Word) -> String {
    if w.is_identity() {
        return String::from("e");
    }
    let mut out = String::new();
    for (i, l) in w.letters().iter().enumerate() {
        if i > 0 {
            out.push('.');
        }
        let _ = write!(out, "{}^{}", factor_name(l.factor), l.power);
    }
    out
}

/// Parses a word and reduces it in `model`.
pub fn parse_word(model: &GroupModel, text: &str) -> Result<Word> {
    let s = text.trim();
    if s == "e" || s == "1" || s.is_empty() {
        return Ok(Word::identity());
    }
    let mut letters = Vec::new();
    for token in s.split('.') {
        let token = token.trim();
        let bad = || Error::Parse(format!("bad syllable {token:?} in word {text:?}"));
        let mut chars = token.chars();
        let name = chars.next().ok_or_else(bad)?;
        if !name.is_ascii_lowercase() {
            return Err(bad());
        }
        let factor = name as u32 - 'a' as u32;
        let rest = chars.as_str();
        let power = if rest.is_empty() {
            1
        } else {
            rest.strip_prefix('^').ok_or_else(bad)?.parse::<i32>().map_err(|_| bad())?
        };
        letters.push(Letter::new(factor, power));
    }
    model.word(&letters)
}
