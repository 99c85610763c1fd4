//! Monoid description files.
//!
//! ```text
//! # comments run to the end of the line
//! elements: 0 a b c
//! zero: 0
//! strict                # optional: no implicit unit or mirror entries
//! a + b = c
//! ```
//!
//! Filtered descriptions put sum lines under `level i:` headers, numbered
//! from 0 in order; level `i` holds the sums of its own section and all
//! earlier ones. Element names are whitespace-free and may not contain
//! `+`, `=`, `:` or `#`.

use super::filtered::{validate_filtered, RawFiltered};
use super::fixtures::Coefficients;
use super::validate::{validate_monoid, RawMonoid, RawSum, Violation};
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidDescription {
    Plain(RawMonoid),
    Filtered(RawFiltered),
}

impl MonoidDescription {
    /// Runs the validator; the coefficients are present iff there are no violations.
    pub fn validate(&self) -> (Vec<Violation>, Option<Coefficients>) {
        match self {
            MonoidDescription::Plain(raw) => {
                let v = validate_monoid(raw);
                (v.violations, v.monoid.map(Coefficients::Plain))
            }
            MonoidDescription::Filtered(raw) => {
                let v = validate_filtered(raw);
                (v.violations, v.monoid.map(Coefficients::Filtered))
            }
        }
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.contains(['+', '=', ':', '#']) && !name.chars().any(char::is_whitespace)
}

pub fn parse_monoid_text(input: &str) -> Result<MonoidDescription, ParseError> {
    let mut elements: Option<Vec<String>> = None;
    let mut zero: Option<String> = None;
    let mut strict = false;
    let mut plain: Vec<RawSum> = Vec::new();
    let mut levels: Vec<Vec<RawSum>> = Vec::new();

    for (idx, raw_line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            if elements.is_some() {
                return Err(ParseError::new(line_no, "`elements:` given twice"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(ParseError::new(line_no, "empty element list"));
            }
            if let Some(bad) = names.iter().find(|n| !valid_name(n)) {
                return Err(ParseError::new(line_no, format!("invalid element name `{bad}`")));
            }
            elements = Some(names);
        } else if let Some(rest) = line.strip_prefix("zero:") {
            if zero.is_some() {
                return Err(ParseError::new(line_no, "`zero:` given twice"));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            match toks.as_slice() {
                [z] if valid_name(z) => zero = Some(z.to_string()),
                _ => return Err(ParseError::new(line_no, "expected `zero: <element>`")),
            }
        } else if line == "strict" {
            strict = true;
        } else if let Some(rest) = line.strip_prefix("level") {
            let Some(num) = rest.trim().strip_suffix(':') else {
                return Err(ParseError::new(line_no, "expected `level <i>:`"));
            };
            let i: usize = num.trim().parse().map_err(|_| ParseError::new(line_no, format!("bad level index `{}`", num.trim())))?;
            if i != levels.len() {
                return Err(ParseError::new(line_no, format!("expected level {}, found level {i}", levels.len())));
            }
            if !plain.is_empty() {
                return Err(ParseError::new(line_no, "sum entries before the first level header"));
            }
            levels.push(Vec::new());
        } else {
            let sum = parse_sum(line, line_no)?;
            match levels.last_mut() {
                Some(section) => section.push(sum),
                None => plain.push(sum),
            }
        }
    }

    let elements = elements.ok_or_else(|| ParseError::new(0, "missing `elements:` line"))?;
    let zero = zero.ok_or_else(|| ParseError::new(0, "missing `zero:` line"))?;
    if levels.is_empty() {
        Ok(MonoidDescription::Plain(RawMonoid { elements, zero, sums: plain, implicit_unit: !strict, implicit_mirror: !strict }))
    } else {
        Ok(MonoidDescription::Filtered(RawFiltered { elements, zero, levels, implicit_unit: !strict, implicit_mirror: !strict }))
    }
}

fn parse_sum(line: &str, line_no: usize) -> Result<RawSum, ParseError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    match toks.as_slice() {
        [a, "+", b, "=", c] if valid_name(a) && valid_name(b) && valid_name(c) => {
            Ok(RawSum { lhs: a.to_string(), rhs: b.to_string(), value: c.to_string(), line: Some(line_no) })
        }
        _ => Err(ParseError::new(line_no, format!("unrecognized line `{line}`"))),
    }
}
