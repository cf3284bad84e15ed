use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Domain, Poly, Rational};
use crate::error::{Error, Result};

impl FromStr for Poly {
    type Err = Error;

    /// Parses sparse terms such as `3 - 2*x + x^3` or `1/2*x^2 + 4/3` into a
    /// polynomial over `Q`. Repeated powers are summed.
    fn from_str(s: &str) -> Result<Poly> {
        parse_terms(s)
    }
}

impl Poly {
    /// Parses like [`FromStr`] and tags the result `Z`; fails on fractions.
    pub fn parse_integer(s: &str) -> Result<Poly> {
        parse_terms(s)?.to_integer()
    }
}

fn parse_err(s: &str, why: &str) -> Error {
    Error::Parse(format!("{why} in polynomial `{s}`"))
}

fn parse_terms(src: &str) -> Result<Poly> {
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(parse_err(src, "empty input"));
    }
    let mut coeffs: Vec<Rational> = Vec::new();
    let bytes = compact.as_bytes();
    let mut start = 0;
    let mut depth = 0i32;
    let mut pieces = Vec::new();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if i > start && depth == 0 && !matches!(bytes[i - 1], b'^' | b'+' | b'-') => {
                pieces.push(&compact[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    pieces.push(&compact[start..]);
    for piece in pieces {
        let (c, k) = parse_term(piece).map_err(|why| parse_err(src, &why))?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] += c;
    }
    Ok(Poly::from_coeffs_unchecked(coeffs, Domain::Q))
}

fn parse_term(term: &str) -> std::result::Result<(Rational, usize), String> {
    let mut negative = false;
    let mut body = term;
    while let Some(rest) = body.strip_prefix(['+', '-']) {
        negative ^= body.starts_with('-');
        body = rest;
    }
    if body.is_empty() {
        return Err(format!("dangling sign `{term}`"));
    }
    let (coef_part, power) = match body.find('x') {
        None => (body, None),
        Some(pos) => {
            let coef = body[..pos].trim_end_matches('*');
            let rest = &body[pos + 1..];
            let power = if rest.is_empty() {
                1
            } else if let Some(exp) = rest.strip_prefix('^') {
                exp.parse::<usize>().map_err(|_| format!("bad exponent `{exp}`"))?
            } else {
                return Err(format!("unexpected `{rest}` after x"));
            };
            (coef, Some(power))
        }
    };
    let coef = if coef_part.is_empty() {
        if power.is_none() {
            return Err(format!("empty term `{term}`"));
        }
        Rational::one()
    } else {
        parse_rational(coef_part.trim_start_matches('(').trim_end_matches(')'))?
    };
    let coef = if negative { -coef } else { coef };
    Ok((coef, power.unwrap_or(0)))
}

/// Parses `p` or `p/q` with optional sign.
pub(crate) fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let int = |t: &str| t.parse::<BigInt>().map_err(|_| format!("bad number `{t}`"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err("zero denominator".to_string());
            }
            Ok(Rational::new(int(n)?, d))
        }
    }
}
