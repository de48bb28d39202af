//! Text input grammar.
//!
//! - Symbol multisets: comma-separated identifiers with optional `^k`
//!   repetition, e.g. `a,a,b` or `a^3,g^2`. Each distinct symbol becomes
//!   one coordinate of the variable family.
//! - Vector multisets and brackets: semicolon-separated exponent vectors,
//!   each a comma-separated integer list with optional parentheses and
//!   `^k` repetition, e.g. `2,0;1,0` or `(1,0)^2;0,1` or `1^5;2^3;3^2`.
//! - Integer partitions: comma-separated positive integers, e.g. `2,1`.

use crate::bracket::Bracket;
use crate::combinatorics::{IntegerPartition, Multiset};
use crate::error::{Error, Result};
use crate::monomial::{Exponents, Monomial};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_u16(s: &str) -> Result<u16> {
    s.trim()
        .parse::<u16>()
        .map_err(|_| parse_err(format!("expected a small non-negative integer, got {s:?}")))
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim()
        .parse::<u32>()
        .map_err(|_| parse_err(format!("expected a non-negative integer, got {s:?}")))
}

/// One `entry^rep` item: strips optional parentheses around the entry.
fn split_repetition(item: &str) -> Result<(&str, u32)> {
    let item = item.trim();
    let (body, rep) = match item.rsplit_once('^') {
        Some((body, rep)) if !rep.contains(')') => (body.trim(), parse_u32(rep)?),
        _ => (item, 1),
    };
    if rep == 0 {
        return Err(parse_err(format!("repetition must be positive in {item:?}")));
    }
    let body = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .unwrap_or(body)
        .trim();
    if body.is_empty() {
        return Err(parse_err(format!("empty entry in {item:?}")));
    }
    Ok((body, rep))
}

fn parse_vector(s: &str) -> Result<Exponents> {
    let values = s
        .split(',')
        .map(parse_u16)
        .collect::<Result<Vec<u16>>>()?;
    Ok(Exponents::new(values))
}

/// Parse a multiset of exponent vectors, e.g. `1,0;1,0;0,1`.
pub fn parse_vector_multiset(s: &str) -> Result<Multiset<Monomial>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("empty multiset"));
    }
    let mut pairs: Vec<(Monomial, u32)> = Vec::new();
    let mut width: Option<usize> = None;
    for item in s.split(';') {
        let (body, rep) = split_repetition(item)?;
        let v = parse_vector(body)?;
        match width {
            None => width = Some(v.width()),
            Some(w) if w != v.width() => {
                return Err(Error::ArityMismatch {
                    left: w,
                    right: v.width(),
                })
            }
            _ => {}
        }
        pairs.push((Monomial::unlabeled(v), rep));
    }
    Ok(Multiset::from_pairs(pairs))
}

/// Parse a bracket, e.g. `2,0;1,0` or `1^2;3`.
pub fn parse_bracket(s: &str) -> Result<Bracket> {
    let m = parse_vector_multiset(s)?;
    Bracket::from_multiset(&m)
}

/// Parse an integer partition given as comma-separated parts in any order.
pub fn parse_partition(s: &str) -> Result<IntegerPartition> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("empty partition"));
    }
    let mut parts: Vec<u32> = Vec::new();
    for item in s.split(',') {
        let (body, rep) = split_repetition(item)?;
        let p = parse_u32(body)?;
        if p == 0 {
            return Err(Error::InvalidPartition);
        }
        for _ in 0..rep {
            parts.push(p);
        }
    }
    IntegerPartition::from_unsorted(parts)
}

/// Parse a symbol multiset like `a,a,b` or `a^3,g^2`. Returns the monomial
/// multiset (one unit coordinate per distinct symbol, in sorted symbol
/// order) together with the symbol names for display.
pub fn parse_symbol_multiset(s: &str) -> Result<(Multiset<Monomial>, Vec<String>)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("empty multiset"));
    }
    let mut counted: Vec<(String, u32)> = Vec::new();
    for item in s.split(',') {
        let (body, rep) = split_repetition(item)?;
        if !body.chars().all(|c| c.is_alphanumeric() || c == '_') || body.chars().all(|c| c.is_ascii_digit()) {
            return Err(parse_err(format!("invalid symbol {body:?}")));
        }
        match counted.iter_mut().find(|(name, _)| name == body) {
            Some((_, c)) => *c += rep,
            None => counted.push((body.to_string(), rep)),
        }
    }
    counted.sort_by(|a, b| a.0.cmp(&b.0));
    let names: Vec<String> = counted.iter().map(|(n, _)| n.clone()).collect();
    let width = names.len();
    let pairs = counted.iter().enumerate().map(|(i, (_, c))| {
        let mut v = vec![0u16; width];
        v[i] = 1;
        (Monomial::unlabeled(Exponents::new(v)), *c)
    });
    Ok((Multiset::from_pairs(pairs), names))
}

/// Map a unit monomial back to its symbol name, for displaying subdivisions
/// of symbol multisets.
pub fn symbol_of(mono: &Monomial, names: &[String]) -> Option<String> {
    let v = mono.exponents().values();
    let mut hot = None;
    for (i, &e) in v.iter().enumerate() {
        match (e, hot) {
            (0, _) => {}
            (1, None) => hot = Some(i),
            _ => return None,
        }
    }
    hot.map(|i| names[i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_with_repetition() {
        let m = parse_vector_multiset("1,0;1,0;0,1").unwrap();
        let same = parse_vector_multiset("(1,0)^2;0,1").unwrap();
        assert_eq!(m, same);
        assert_eq!(m.len(), 3);

        let b = parse_bracket("2,0;1,0").unwrap();
        assert_eq!(b.to_string(), "1,0;2,0");

        let b = parse_bracket("1^5;2^3;3^2").unwrap();
        assert_eq!(b.len(), 10);
    }

    #[test]
    fn partitions() {
        let p = parse_partition("2,1").unwrap();
        assert_eq!(p.parts(), &[2, 1]);
        let p = parse_partition("1,3,2").unwrap();
        assert_eq!(p.parts(), &[3, 2, 1]);
        let p = parse_partition("2^3,1").unwrap();
        assert_eq!(p.parts(), &[2, 2, 2, 1]);
        assert!(parse_partition("0,1").is_err());
        assert!(parse_partition("").is_err());
    }

    #[test]
    fn symbols() {
        let (m, names) = parse_symbol_multiset("a^3,g^2").unwrap();
        assert_eq!(names, vec!["a", "g"]);
        assert_eq!(m.len(), 5);
        let (m2, _) = parse_symbol_multiset("a,a,a,g,g").unwrap();
        assert_eq!(m, m2);
        assert!(parse_symbol_multiset("3,a").is_err());
        assert!(parse_symbol_multiset("a,,b").is_err());
    }

    #[test]
    fn mixed_widths_rejected() {
        assert!(matches!(
            parse_vector_multiset("1,0;2"),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
