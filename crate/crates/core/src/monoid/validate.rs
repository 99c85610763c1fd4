use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use super::{Element, PartialMonoid};

/// One directed sum entry `lhs + rhs = value` of a raw description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSum {
    pub lhs: String,
    pub rhs: String,
    pub value: String,
    /// Source line, when the entry came from a file.
    pub line: Option<usize>,
}

impl RawSum {
    pub fn new(lhs: &str, rhs: &str, value: &str) -> Self {
        RawSum { lhs: lhs.into(), rhs: rhs.into(), value: value.into(), line: None }
    }
}

impl fmt::Display for RawSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} = {}", self.lhs, self.rhs, self.value)?;
        if let Some(line) = self.line {
            write!(f, " (line {line})")?;
        }
        Ok(())
    }
}

/// An unchecked monoid description.
///
/// With `implicit_unit`, missing `0 + m` and `m + 0` entries are filled in.
/// With `implicit_mirror`, an entry `a + b = c` whose mirror `b + a` is not
/// listed also defines the mirror. Explicit entries are always checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMonoid {
    pub elements: Vec<String>,
    pub zero: String,
    pub sums: Vec<RawSum>,
    pub implicit_unit: bool,
    pub implicit_mirror: bool,
}

impl RawMonoid {
    pub fn new(elements: &[&str], zero: &str, sums: &[(&str, &str, &str)]) -> Self {
        RawMonoid {
            elements: elements.iter().map(|s| s.to_string()).collect(),
            zero: zero.to_string(),
            sums: sums.iter().map(|(a, b, c)| RawSum::new(a, b, c)).collect(),
            implicit_unit: true,
            implicit_mirror: true,
        }
    }

    /// Same description with implicit unit and mirror entries disabled.
    pub fn strict(mut self) -> Self {
        self.implicit_unit = false;
        self.implicit_mirror = false;
        self
    }
}

/// An axiom or well-formedness violation found by [`validate_monoid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateElement { name: String },
    MissingZero { zero: String },
    OutsideCarrier { entry: RawSum, name: String },
    ConflictingEntry { first: RawSum, second: RawSum },
    Asymmetric { lhs: String, rhs: String, forward: Option<String>, backward: Option<String> },
    Unit { element: String, found: Option<String> },
    Associativity { a: String, b: String, c: String, detail: String },
    CarrierMismatch { level: usize },
    NotSubmonoid { level: usize, lhs: String, rhs: String, detail: String },
    AtLevel { level: usize, inner: Box<Violation> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "undefined".into());
        match self {
            Violation::DuplicateElement { name } => write!(f, "duplicate element `{name}`"),
            Violation::MissingZero { zero } => write!(f, "zero `{zero}` is not among the elements"),
            Violation::OutsideCarrier { entry, name } => {
                write!(f, "entry `{entry}` uses `{name}`, which is not an element")
            }
            Violation::ConflictingEntry { first, second } => {
                write!(f, "conflicting entries `{first}` and `{second}`")
            }
            Violation::Asymmetric { lhs, rhs, forward, backward } => write!(
                f,
                "asymmetric sum: {lhs} + {rhs} = {} but {rhs} + {lhs} = {}",
                show(forward),
                show(backward)
            ),
            Violation::Unit { element, found } => {
                write!(f, "unit axiom fails for `{element}`: zero sum gives {}", show(found))
            }
            Violation::Associativity { a, b, c, detail } => {
                write!(f, "associativity fails for ({a}, {b}, {c}): {detail}")
            }
            Violation::CarrierMismatch { level } => write!(f, "level {level} has a different carrier"),
            Violation::NotSubmonoid { level, lhs, rhs, detail } => {
                write!(f, "level {level} is not a partial submonoid of level {}: {lhs} + {rhs} {detail}", level + 1)
            }
            Violation::AtLevel { level, inner } => write!(f, "level {level}: {inner}"),
        }
    }
}

/// Result of validating a raw description: the violation list, empty iff
/// the monoid is valid, and the monoid itself when it is.
#[derive(Clone, Debug)]
pub struct Validation {
    pub violations: Vec<Violation>,
    pub monoid: Option<PartialMonoid>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the unit, symmetry and associativity-coherence axioms.
pub fn validate_monoid(raw: &RawMonoid) -> Validation {
    let mut violations = Vec::new();

    let mut index: HashMap<&str, u32> = HashMap::new();
    for name in &raw.elements {
        if index.contains_key(name.as_str()) {
            violations.push(Violation::DuplicateElement { name: name.clone() });
        } else {
            index.insert(name, index.len() as u32);
        }
    }
    let names: Vec<String> = {
        let mut seen = HashSet::new();
        raw.elements.iter().filter(|n| seen.insert(n.as_str())).cloned().collect()
    };
    if !index.contains_key(raw.zero.as_str()) {
        violations.push(Violation::MissingZero { zero: raw.zero.clone() });
    }
    for entry in &raw.sums {
        for name in [&entry.lhs, &entry.rhs, &entry.value] {
            if !index.contains_key(name.as_str()) {
                violations.push(Violation::OutsideCarrier { entry: entry.clone(), name: name.clone() });
                break;
            }
        }
    }
    if !violations.is_empty() {
        return Validation { violations, monoid: None };
    }

    let n = names.len();
    let zero = index[raw.zero.as_str()];
    let mut directed: BTreeMap<(u32, u32), (u32, &RawSum)> = BTreeMap::new();
    for entry in &raw.sums {
        let key = (index[entry.lhs.as_str()], index[entry.rhs.as_str()]);
        let value = index[entry.value.as_str()];
        match directed.get(&key) {
            Some((prev, first)) if *prev != value => {
                violations.push(Violation::ConflictingEntry { first: (*first).clone(), second: entry.clone() });
            }
            Some(_) => {}
            None => {
                directed.insert(key, (value, entry));
            }
        }
    }

    let mut table: Vec<Option<u32>> = vec![None; n * n];
    for (&(a, b), &(v, _)) in &directed {
        table[a as usize * n + b as usize] = Some(v);
    }
    if raw.implicit_mirror {
        for (&(a, b), &(v, _)) in &directed {
            let mirror = &mut table[b as usize * n + a as usize];
            if mirror.is_none() {
                *mirror = Some(v);
            }
        }
    }
    if raw.implicit_unit {
        for m in 0..n as u32 {
            for slot in [zero as usize * n + m as usize, m as usize * n + zero as usize] {
                if table[slot].is_none() {
                    table[slot] = Some(m);
                }
            }
        }
    }

    let at = |a: u32, b: u32| table[a as usize * n + b as usize];
    let name = |i: u32| names[i as usize].clone();
    let named = |v: Option<u32>| v.map(name);

    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if at(a, b) != at(b, a) {
                violations.push(Violation::Asymmetric {
                    lhs: name(a),
                    rhs: name(b),
                    forward: named(at(a, b)),
                    backward: named(at(b, a)),
                });
            }
        }
    }
    for m in 0..n as u32 {
        for found in [at(zero, m), at(m, zero)] {
            if found != Some(m) {
                violations.push(Violation::Unit { element: name(m), found: named(found) });
                break;
            }
        }
    }
    // a + (b + c) defined  =>  a + b and (a + b) + c defined, with equal totals.
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            for c in 0..n as u32 {
                let Some(bc) = at(b, c) else { continue };
                let Some(right) = at(a, bc) else { continue };
                let detail = match at(a, b) {
                    None => Some(format!("{} + ({} + {}) is defined but {} + {} is not", name(a), name(b), name(c), name(a), name(b))),
                    Some(ab) => match at(ab, c) {
                        None => Some(format!("{} + ({} + {}) is defined but ({} + {}) + {} is not", name(a), name(b), name(c), name(a), name(b), name(c))),
                        Some(left) if left != right => Some(format!(
                            "({} + {}) + {} = {} differs from {} + ({} + {}) = {}",
                            name(a), name(b), name(c), name(left), name(a), name(b), name(c), name(right)
                        )),
                        Some(_) => None,
                    },
                };
                if let Some(detail) = detail {
                    violations.push(Violation::Associativity { a: name(a), b: name(b), c: name(c), detail });
                }
            }
        }
    }

    if !violations.is_empty() {
        return Validation { violations, monoid: None };
    }
    let table = table.into_iter().map(|v| v.map(Element)).collect();
    Validation { violations, monoid: Some(PartialMonoid::from_checked(names, Element(zero), table)) }
}
