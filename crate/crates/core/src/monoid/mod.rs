//! Finite discrete partial abelian monoids.
//!
//! A [`PartialMonoid`] is a finite carrier with a unit and a commutative sum
//! that is defined only on some pairs. Values are only obtainable through
//! validation ([`validate_monoid`]), so every monoid in circulation satisfies
//! the unit, symmetry and associativity-coherence axioms. Under those axioms a
//! multiset is composable along one binary reduction order iff it is
//! composable along all of them, and all orders agree on the total.

mod filtered;
mod fixtures;
mod text;
mod validate;

use std::collections::HashMap;
use std::fmt;

use parking_lot::RwLock;
use sha2::{Digest, Sha256};

use crate::error::MonoidError;

pub use filtered::{filtered_composable, validate_filtered, FilteredPartialMonoid, FilteredValidation, RawFiltered};
pub use fixtures::{
    abc, cyclic, one_point, order_ideal, standard_monoid, threshold_filtration, trivial, truncated_naturals,
    Coefficients,
};
pub use text::{parse_monoid_text, MonoidDescription};
pub use validate::{validate_monoid, RawMonoid, RawSum, Validation, Violation};

/// Index of an element in a monoid carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub(crate) u32);

impl Element {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Self {
        Element(index as u32)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A validated finite partial abelian monoid.
pub struct PartialMonoid {
    names: Vec<String>,
    zero: Element,
    // Dense symmetric n*n table; `None` marks an undefined sum.
    table: Vec<Option<Element>>,
    // Canonical (sorted, zero-free) multiset -> total, or None if not composable.
    memo: RwLock<HashMap<Box<[u32]>, Option<Element>>>,
}

impl Clone for PartialMonoid {
    fn clone(&self) -> Self {
        PartialMonoid {
            names: self.names.clone(),
            zero: self.zero,
            table: self.table.clone(),
            memo: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for PartialMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.zero == other.zero && self.table == other.table
    }
}

impl Eq for PartialMonoid {}

impl fmt::Debug for PartialMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartialMonoid")
            .field("elements", &self.names)
            .field("zero", &self.names[self.zero.index()])
            .field("sums", &self.defined_sums().map(|(a, b, c)| format!("{}+{}={}", self.name(a), self.name(b), self.name(c))).collect::<Vec<_>>())
            .finish()
    }
}

impl PartialMonoid {
    /// Assembles a monoid from an already-checked table. Only the validator calls this.
    pub(crate) fn from_checked(names: Vec<String>, zero: Element, table: Vec<Option<Element>>) -> Self {
        debug_assert_eq!(table.len(), names.len() * names.len());
        PartialMonoid { names, zero, table, memo: RwLock::new(HashMap::new()) }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn zero(&self) -> Element {
        self.zero
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Element) -> &str {
        &self.names[e.index()]
    }

    pub fn element(&self, name: &str) -> Result<Element, MonoidError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(Element::from_index)
            .ok_or_else(|| MonoidError::UnknownElement(name.to_string()))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.names.len()).map(Element::from_index)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Element> + '_ {
        let zero = self.zero;
        self.elements().filter(move |&e| e != zero)
    }

    pub fn contains(&self, e: Element) -> bool {
        e.index() < self.names.len()
    }

    fn check(&self, e: Element) -> Result<(), MonoidError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(MonoidError::NotInCarrier(e.0))
        }
    }

    /// Table lookup without membership checks. Panics on foreign indices.
    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Option<Element> {
        self.table[a.index() * self.names.len() + b.index()]
    }

    /// The sum `a + b`, or `Ok(None)` when it is undefined.
    pub fn sum_pair(&self, a: Element, b: Element) -> Result<Option<Element>, MonoidError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    /// Defined sums `(a, b, a + b)` with `a <= b`, zero sums included.
    pub fn defined_sums(&self) -> impl Iterator<Item = (Element, Element, Element)> + '_ {
        let n = self.names.len();
        (0..n).flat_map(move |a| {
            (a..n).filter_map(move |b| {
                let (a, b) = (Element::from_index(a), Element::from_index(b));
                self.add(a, b).map(|c| (a, b, c))
            })
        })
    }

    /// True when the only defined sums involve zero.
    pub fn has_trivial_multiplication(&self) -> bool {
        self.defined_sums().all(|(a, b, _)| a == self.zero || b == self.zero)
    }

    /// True when every pair has a defined sum.
    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    fn canonical(&self, items: &[Element]) -> Result<Vec<u32>, MonoidError> {
        let mut key = Vec::with_capacity(items.len());
        for &e in items {
            self.check(e)?;
            if e != self.zero {
                key.push(e.0);
            }
        }
        key.sort_unstable();
        Ok(key)
    }

    /// Total of a multiset, or `None` when no reduction order succeeds.
    pub fn try_sum(&self, items: &[Element]) -> Result<Option<Element>, MonoidError> {
        let key = self.canonical(items)?;
        Ok(self.reduce(&key))
    }

    /// Whether some binary reduction order sums `items` with every
    /// intermediate sum defined. The empty multiset is composable.
    pub fn composable(&self, items: &[Element]) -> Result<bool, MonoidError> {
        Ok(self.try_sum(items)?.is_some())
    }

    pub fn sum_multiset(&self, items: &[Element]) -> Result<Element, MonoidError> {
        self.try_sum(items)?.ok_or_else(|| MonoidError::NotComposable(self.format_items(items)))
    }

    pub(crate) fn format_items(&self, items: &[Element]) -> String {
        let parts: Vec<&str> = items.iter().filter(|e| self.contains(**e)).map(|&e| self.name(e)).collect();
        format!("{{{}}}", parts.join(","))
    }

    fn reduce(&self, key: &[u32]) -> Option<Element> {
        match key.len() {
            0 => return Some(self.zero),
            1 => return Some(Element(key[0])),
            2 => return self.add(Element(key[0]), Element(key[1])),
            _ => {}
        }
        if let Some(hit) = self.memo.read().get(key) {
            return *hit;
        }
        let mut result = None;
        let mut prev = None;
        for (pos, &x) in key.iter().enumerate() {
            if prev == Some(x) {
                continue;
            }
            prev = Some(x);
            let mut rest = Vec::with_capacity(key.len() - 1);
            rest.extend_from_slice(&key[..pos]);
            rest.extend_from_slice(&key[pos + 1..]);
            if let Some(partial) = self.reduce(&rest) {
                if let Some(total) = self.add(partial, Element(x)) {
                    result = Some(total);
                    break;
                }
            }
        }
        self.memo.write().insert(key.into(), result);
        result
    }

    /// All ordered `k`-tuples whose entries form a composable multiset,
    /// in lexicographic carrier order. `k = 0` yields the empty tuple.
    pub fn composable_tuples(&self, k: usize) -> Vec<ComposableTuple> {
        let mut out = Vec::new();
        let mut entries = Vec::with_capacity(k);
        self.extend_tuples(k, self.zero, &mut entries, &mut out);
        out
    }

    fn extend_tuples(&self, k: usize, running: Element, entries: &mut Vec<Element>, out: &mut Vec<ComposableTuple>) {
        if entries.len() == k {
            out.push(ComposableTuple { entries: entries.clone(), total: running });
            return;
        }
        for e in self.elements() {
            if let Some(next) = self.add(running, e) {
                entries.push(e);
                self.extend_tuples(k, next, entries, out);
                entries.pop();
            }
        }
    }

    /// Canonical text description, readable by [`parse_monoid_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("elements: ");
        out.push_str(&self.names.join(" "));
        out.push('\n');
        out.push_str(&format!("zero: {}\n", self.name(self.zero)));
        for (a, b, c) in self.defined_sums() {
            if a != self.zero && b != self.zero {
                out.push_str(&format!("{} + {} = {}\n", self.name(a), self.name(b), self.name(c)));
            }
        }
        out
    }

    /// SHA-256 of the canonical text description.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }
}

/// An ordered tuple certified to be composable in its monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComposableTuple {
    entries: Vec<Element>,
    total: Element,
}

impl ComposableTuple {
    pub fn certify(monoid: &PartialMonoid, entries: Vec<Element>) -> Result<Self, MonoidError> {
        let total = monoid.sum_multiset(&entries)?;
        Ok(ComposableTuple { entries, total })
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn total(&self) -> Element {
        self.total
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
