//! Standard monoid constructors.

use std::collections::{BTreeSet, HashMap};

use super::filtered::FilteredPartialMonoid;
use super::validate::{validate_monoid, RawMonoid, RawSum};
use super::{Element, PartialMonoid};
use crate::error::MonoidError;

fn param_error(tag: &str, reason: impl Into<String>) -> MonoidError {
    MonoidError::InvalidParameter { tag: tag.into(), reason: reason.into() }
}

fn build(elements: Vec<String>, sums: Vec<RawSum>) -> Result<PartialMonoid, MonoidError> {
    let raw = RawMonoid { zero: elements[0].clone(), elements, sums, implicit_unit: true, implicit_mirror: true };
    let report = validate_monoid(&raw);
    match report.monoid {
        Some(m) => Ok(m),
        None => Err(MonoidError::Invalid(report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))),
    }
}

/// The cyclic group `Z/q` on elements `0..q`.
pub fn cyclic(q: usize) -> Result<PartialMonoid, MonoidError> {
    if q == 0 {
        return Err(param_error("cyclic", "q must be positive"));
    }
    let elements = (0..q).map(|i| i.to_string()).collect();
    let mut sums = Vec::new();
    for a in 1..q {
        for b in a..q {
            sums.push(RawSum::new(&a.to_string(), &b.to_string(), &((a + b) % q).to_string()));
        }
    }
    build(elements, sums)
}

/// `q` nonzero elements `1..=q` where only sums with zero are defined.
pub fn trivial(q: usize) -> Result<PartialMonoid, MonoidError> {
    if q == 0 {
        return Err(param_error("trivial", "q must be positive"));
    }
    build((0..=q).map(|i| i.to_string()).collect(), Vec::new())
}

/// `{0..=n}` with `a + b` defined iff `a + b <= n`.
pub fn truncated_naturals(n: usize) -> Result<PartialMonoid, MonoidError> {
    let elements = (0..=n).map(|i| i.to_string()).collect();
    let mut sums = Vec::new();
    for a in 1..=n {
        for b in a..=n - a {
            sums.push(RawSum::new(&a.to_string(), &b.to_string(), &(a + b).to_string()));
        }
    }
    build(elements, sums)
}

/// The one-point monoid `{0}`.
pub fn one_point() -> PartialMonoid {
    cyclic(1).expect("one-point monoid")
}

/// `{0, a, b, c}` with the single nonzero sum `a + b = c`.
pub fn abc() -> PartialMonoid {
    build(
        ["0", "a", "b", "c"].iter().map(|s| s.to_string()).collect(),
        vec![RawSum::new("a", "b", "c")],
    )
    .expect("abc fixture")
}

/// A downward-closed finite subset of `N^r` under componentwise order,
/// with `x + y` defined iff it stays in the set. Points are named by their
/// coordinates joined with `.`; the zero vector must be present.
pub fn order_ideal(points: &[Vec<u32>]) -> Result<PartialMonoid, MonoidError> {
    let tag = "order-ideal";
    let Some(first) = points.first() else { return Err(param_error(tag, "no points")) };
    let r = first.len();
    if points.iter().any(|p| p.len() != r) {
        return Err(param_error(tag, "points of different dimensions"));
    }
    let set: BTreeSet<&Vec<u32>> = points.iter().collect();
    if set.len() != points.len() {
        return Err(param_error(tag, "duplicate point"));
    }
    for p in points {
        for i in 0..r {
            if p[i] > 0 {
                let mut q = p.clone();
                q[i] -= 1;
                if !set.contains(&q) {
                    return Err(param_error(tag, format!("not downward closed at {p:?}")));
                }
            }
        }
    }
    let name = |p: &[u32]| p.iter().map(u32::to_string).collect::<Vec<_>>().join(".");
    let zero = vec![0u32; r];
    // Zero first so the generic builder picks it up as the unit.
    let mut ordered: Vec<&Vec<u32>> = vec![&zero];
    ordered.extend(points.iter().filter(|p| **p != zero));
    let names: Vec<String> = ordered.iter().map(|p| name(p)).collect();
    let lookup: HashMap<&Vec<u32>, usize> = ordered.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut sums = Vec::new();
    for (i, p) in ordered.iter().enumerate().skip(1) {
        for q in ordered.iter().skip(i) {
            let s: Vec<u32> = p.iter().zip(q.iter()).map(|(x, y)| x + y).collect();
            if let Some(&k) = lookup.get(&s) {
                sums.push(RawSum::new(&name(p), &name(q), &names[k]));
            }
        }
    }
    build(names, sums)
}

/// Carrier `{0..=max}`; level `i` defines nonzero sums with total at most
/// `min(i + 1, max)`.
pub fn threshold_filtration(max: usize, levels: usize) -> Result<FilteredPartialMonoid, MonoidError> {
    if max == 0 || levels == 0 {
        return Err(param_error("threshold", "max and levels must be positive"));
    }
    let elements: Vec<String> = (0..=max).map(|i| i.to_string()).collect();
    let mut out = Vec::with_capacity(levels);
    for i in 0..levels {
        let bound = (i + 1).min(max);
        let mut sums = Vec::new();
        for a in 1..=bound {
            for b in a..=bound.saturating_sub(a) {
                sums.push(RawSum::new(&a.to_string(), &b.to_string(), &(a + b).to_string()));
            }
        }
        out.push(build(elements.clone(), sums)?);
    }
    FilteredPartialMonoid::new(out)
}

/// Label monoid for configuration spaces: a plain or a filtered monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Plain(PartialMonoid),
    Filtered(FilteredPartialMonoid),
}

impl From<PartialMonoid> for Coefficients {
    fn from(m: PartialMonoid) -> Self {
        Coefficients::Plain(m)
    }
}

impl From<FilteredPartialMonoid> for Coefficients {
    fn from(m: FilteredPartialMonoid) -> Self {
        Coefficients::Filtered(m)
    }
}

impl Coefficients {
    /// Level-0 monoid; every level shares its carrier.
    pub fn carrier(&self) -> &PartialMonoid {
        match self {
            Coefficients::Plain(m) => m,
            Coefficients::Filtered(f) => f.carrier(),
        }
    }

    pub fn level_count(&self) -> usize {
        match self {
            Coefficients::Plain(_) => 1,
            Coefficients::Filtered(f) => f.len(),
        }
    }

    pub fn level(&self, i: usize) -> &PartialMonoid {
        match self {
            Coefficients::Plain(m) => m,
            Coefficients::Filtered(f) => f.level(i),
        }
    }

    /// Least level at which the multiset is composable.
    pub fn admitting_level(&self, items: &[Element]) -> Result<Option<usize>, MonoidError> {
        match self {
            Coefficients::Plain(m) => Ok(m.composable(items)?.then_some(0)),
            Coefficients::Filtered(f) => f.admitting_level(items),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Coefficients::Plain(m) => m.to_text(),
            Coefficients::Filtered(f) => f.to_text(),
        }
    }

    pub fn fingerprint(&self) -> String {
        match self {
            Coefficients::Plain(m) => m.fingerprint(),
            Coefficients::Filtered(f) => f.fingerprint(),
        }
    }
}

/// Builds a fixture from a tag: `point`, `abc`, `cyclic:q`, `trivial:q`,
/// `truncated:n`, `threshold:max:levels`.
pub fn standard_monoid(tag: &str) -> Result<Coefficients, MonoidError> {
    let parts: Vec<&str> = tag.split(':').collect();
    let num = |s: &str| -> Result<usize, MonoidError> {
        s.parse::<usize>().map_err(|_| param_error(tag, format!("`{s}` is not a nonnegative integer")))
    };
    match parts.as_slice() {
        ["point"] => Ok(one_point().into()),
        ["abc"] => Ok(abc().into()),
        ["cyclic", q] => Ok(cyclic(num(q)?)?.into()),
        ["trivial", q] => Ok(trivial(num(q)?)?.into()),
        ["truncated", n] => Ok(truncated_naturals(num(n)?)?.into()),
        ["threshold", max, levels] => Ok(threshold_filtration(num(max)?, num(levels)?)?.into()),
        _ => Err(param_error(tag, "unknown fixture tag")),
    }
}
