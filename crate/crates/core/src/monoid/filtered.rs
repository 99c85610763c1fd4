use super::validate::{validate_monoid, RawMonoid, RawSum, Violation};
use super::{Element, PartialMonoid};
use crate::error::MonoidError;

/// A filtered partial monoid `M = ∪ M(i)`: one carrier, an ascending
/// sequence of partial sums, each level a partial submonoid of the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredPartialMonoid {
    levels: Vec<PartialMonoid>,
}

impl FilteredPartialMonoid {
    /// Checks the carrier and submonoid conditions between consecutive levels.
    pub fn new(levels: Vec<PartialMonoid>) -> Result<Self, MonoidError> {
        let violations = filtration_violations(&levels);
        if let Some(first) = violations.first() {
            return Err(MonoidError::Invalid(first.to_string()));
        }
        Ok(FilteredPartialMonoid { levels })
    }

    /// The constant filtration with `count` identical levels.
    pub fn constant(monoid: PartialMonoid, count: usize) -> Result<Self, MonoidError> {
        if count == 0 {
            return Err(MonoidError::InvalidParameter { tag: "constant".into(), reason: "at least one level".into() });
        }
        Ok(FilteredPartialMonoid { levels: vec![monoid; count] })
    }

    pub fn levels(&self) -> &[PartialMonoid] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &PartialMonoid {
        &self.levels[i]
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// The carrier, shared by every level.
    pub fn carrier(&self) -> &PartialMonoid {
        &self.levels[0]
    }

    /// Least level at which `items` is composable, if any.
    pub fn admitting_level(&self, items: &[Element]) -> Result<Option<usize>, MonoidError> {
        for (i, level) in self.levels.iter().enumerate() {
            if level.composable(items)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn to_text(&self) -> String {
        let base = self.carrier();
        let mut out = String::new();
        out.push_str("elements: ");
        out.push_str(&base.names().join(" "));
        out.push('\n');
        out.push_str(&format!("zero: {}\n", base.name(base.zero())));
        for (i, level) in self.levels.iter().enumerate() {
            out.push_str(&format!("level {i}:\n"));
            for (a, b, c) in level.defined_sums() {
                if a == base.zero() || b == base.zero() {
                    continue;
                }
                if i > 0 && self.levels[i - 1].add(a, b).is_some() {
                    continue;
                }
                out.push_str(&format!("{} + {} = {}\n", base.name(a), base.name(b), base.name(c)));
            }
        }
        out
    }

    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }
}

/// `(composable, least admitting level)` for a multiset in a filtered monoid.
pub fn filtered_composable(monoid: &FilteredPartialMonoid, items: &[Element]) -> Result<(bool, Option<usize>), MonoidError> {
    let level = monoid.admitting_level(items)?;
    Ok((level.is_some(), level))
}

fn filtration_violations(levels: &[PartialMonoid]) -> Vec<Violation> {
    let mut out = Vec::new();
    if levels.is_empty() {
        out.push(Violation::CarrierMismatch { level: 0 });
        return out;
    }
    for (i, pair) in levels.windows(2).enumerate() {
        let (lower, upper) = (&pair[0], &pair[1]);
        if lower.names() != upper.names() || lower.zero() != upper.zero() {
            out.push(Violation::CarrierMismatch { level: i + 1 });
            continue;
        }
        for (a, b, c) in lower.defined_sums() {
            let detail = match upper.add(a, b) {
                None => Some("becomes undefined".to_string()),
                Some(d) if d != c => Some(format!("changes from {} to {}", lower.name(c), upper.name(d))),
                Some(_) => None,
            };
            if let Some(detail) = detail {
                out.push(Violation::NotSubmonoid { level: i, lhs: lower.name(a).into(), rhs: lower.name(b).into(), detail });
            }
        }
    }
    out
}

/// Unchecked filtered description. Each entry of `levels` lists the sums
/// added at that level; level `i` is the union of sections `0..=i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFiltered {
    pub elements: Vec<String>,
    pub zero: String,
    pub levels: Vec<Vec<RawSum>>,
    pub implicit_unit: bool,
    pub implicit_mirror: bool,
}

#[derive(Clone, Debug)]
pub struct FilteredValidation {
    pub violations: Vec<Violation>,
    pub monoid: Option<FilteredPartialMonoid>,
}

impl FilteredValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_filtered(raw: &RawFiltered) -> FilteredValidation {
    let mut violations = Vec::new();
    let mut levels = Vec::new();
    if raw.levels.is_empty() {
        violations.push(Violation::CarrierMismatch { level: 0 });
    }
    let mut cumulative: Vec<RawSum> = Vec::new();
    for (i, section) in raw.levels.iter().enumerate() {
        cumulative.extend(section.iter().cloned());
        let level = RawMonoid {
            elements: raw.elements.clone(),
            zero: raw.zero.clone(),
            sums: cumulative.clone(),
            implicit_unit: raw.implicit_unit,
            implicit_mirror: raw.implicit_mirror,
        };
        let report = validate_monoid(&level);
        violations.extend(report.violations.into_iter().map(|v| Violation::AtLevel { level: i, inner: Box::new(v) }));
        if let Some(m) = report.monoid {
            levels.push(m);
        }
    }
    if violations.is_empty() {
        violations.extend(filtration_violations(&levels));
    }
    let monoid = violations.is_empty().then_some(FilteredPartialMonoid { levels });
    FilteredValidation { violations, monoid }
}
