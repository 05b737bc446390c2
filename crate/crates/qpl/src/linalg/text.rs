//! Shared helpers for the digit-based text formats.

use crate::error::{Error, Result};
use crate::linalg::field::PrimeField;

/// Iterates over non-empty, non-comment lines together with 1-based line numbers.
pub(crate) fn meaningful_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a header line of the form `key1 v1 key2 v2 ...` with fixed keys.
pub(crate) fn header_fields(lineno: usize, line: &str, keys: &[&str]) -> Result<Vec<u64>> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != 2 * keys.len() {
        return Err(Error::parse(
            lineno,
            1,
            format!("expected header `{}`", keys.iter().map(|k| format!("{k} <{k}>")).collect::<Vec<_>>().join(" ")),
        ));
    }
    let mut out = Vec::with_capacity(keys.len());
    for (i, key) in keys.iter().enumerate() {
        if tokens[2 * i] != *key {
            return Err(Error::parse(lineno, 1, format!("expected key `{key}`, found `{}`", tokens[2 * i])));
        }
        let v: u64 = tokens[2 * i + 1]
            .parse()
            .map_err(|_| Error::parse(lineno, 1, format!("bad value for `{key}`: `{}`", tokens[2 * i + 1])))?;
        out.push(v);
    }
    Ok(out)
}

/// Parses one row of residue digits, validating length and range.
pub(crate) fn digit_row(lineno: usize, line: &str, cols: usize, field: PrimeField) -> Result<Vec<u32>> {
    let line = line.trim();
    if line.chars().count() != cols {
        return Err(Error::parse(lineno, 1, format!("expected {cols} digits, found {}", line.chars().count())));
    }
    let mut out = Vec::with_capacity(cols);
    for (col, ch) in line.chars().enumerate() {
        let d = ch
            .to_digit(10)
            .ok_or_else(|| Error::parse(lineno, col + 1, format!("non-digit character `{ch}`")))?;
        if d >= field.order() {
            return Err(Error::parse(
                lineno,
                col + 1,
                format!("residue {d} out of range for q = {}", field.order()),
            ));
        }
        out.push(d);
    }
    Ok(out)
}

/// Parses a reduced positive rational written as `p/r` (or a bare integer `p`).
pub fn parse_ratio(s: &str) -> Result<(u64, u64)> {
    let (p, r) = match s.split_once('/') {
        Some((p, r)) => (p, r),
        None => (s, "1"),
    };
    let p: u64 = p
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))?;
    let r: u64 = r
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))?;
    if p == 0 || r == 0 {
        return Err(Error::InvalidInput(format!("rational `{s}` must be positive")));
    }
    let g = num_integer::gcd(p, r);
    Ok((p / g, r / g))
}
