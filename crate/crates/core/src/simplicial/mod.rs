//! Finite pointed simplicial sets materialized to a fixed depth.
//!
//! Levels `0..=depth` are stored as explicit simplex tables. Level `k`
//! carries the face tables `∂_0..∂_k` into level `k - 1` and, below the top
//! level, the degeneracy tables `s_0..s_k` into level `k + 1`. A simplex is
//! degenerate iff it lies in the image of some degeneracy from the level
//! below, so nondegeneracy is decided on every materialized level.

mod build;
mod interchange;
mod map;

use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::SimplicialError;

pub use build::{sphere, wedge, wedge_fold, wedge_inclusion};
pub use interchange::{parse_simplicial, write_simplicial};
pub use map::{collapse_map, compose_maps, identity_map, SimplicialMap, Subcomplex};

/// One level of a simplicial set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    names: Vec<String>,
    basepoint: u32,
    faces: Vec<Vec<u32>>,
    degeneracies: Vec<Vec<u32>>,
}

impl Level {
    /// `faces[i][x]` is `∂_i x`; `degeneracies[j][x]` is `s_j x`.
    pub fn new(names: Vec<String>, basepoint: u32, faces: Vec<Vec<u32>>, degeneracies: Vec<Vec<u32>>) -> Self {
        Level { names, basepoint, faces, degeneracies }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn basepoint(&self) -> u32 {
        self.basepoint
    }

    pub fn faces(&self) -> &[Vec<u32>] {
        &self.faces
    }

    pub fn degeneracies(&self) -> &[Vec<u32>] {
        &self.degeneracies
    }
}

fn valid_simplex_name(name: &str) -> bool {
    !name.is_empty() && name != "|" && !name.chars().any(char::is_whitespace)
}

/// A finite pointed simplicial set, levels `0..=depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    levels: Vec<Level>,
    meta: BTreeMap<String, String>,
}

impl SimplicialSet {
    /// Checks table shapes and references; simplicial identities are
    /// checked separately by [`SimplicialSet::validate_identities`].
    pub fn new(levels: Vec<Level>) -> Result<Self, SimplicialError> {
        let bad = |msg: String| Err(SimplicialError::Malformed(msg));
        if levels.is_empty() {
            return bad("no levels".into());
        }
        let depth = levels.len() - 1;
        for (k, level) in levels.iter().enumerate() {
            let n = level.names.len();
            if n == 0 {
                return bad(format!("level {k} is empty"));
            }
            if level.basepoint as usize >= n {
                return bad(format!("level {k}: basepoint {} out of range", level.basepoint));
            }
            let mut seen = std::collections::HashSet::with_capacity(n);
            for name in &level.names {
                if !valid_simplex_name(name) {
                    return bad(format!("level {k}: invalid simplex name `{name}`"));
                }
                if !seen.insert(name.as_str()) {
                    return bad(format!("level {k}: duplicate simplex name `{name}`"));
                }
            }
            let face_count = if k == 0 { 0 } else { k + 1 };
            if level.faces.len() != face_count {
                return bad(format!("level {k}: expected {face_count} face tables, found {}", level.faces.len()));
            }
            for (i, table) in level.faces.iter().enumerate() {
                let below = levels[k - 1].names.len();
                if table.len() != n || table.iter().any(|&y| y as usize >= below) {
                    return bad(format!("level {k}: face table {i} is malformed"));
                }
            }
            let degen_count = if k < depth { k + 1 } else { 0 };
            if level.degeneracies.len() != degen_count {
                return bad(format!("level {k}: expected {degen_count} degeneracy tables, found {}", level.degeneracies.len()));
            }
            for (j, table) in level.degeneracies.iter().enumerate() {
                let above = levels[k + 1].names.len();
                if table.len() != n || table.iter().any(|&y| y as usize >= above) {
                    return bad(format!("level {k}: degeneracy table {j} is malformed"));
                }
            }
        }
        Ok(SimplicialSet { levels, meta: BTreeMap::new() })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k]
    }

    /// Levels `0..=depth` only; metadata is dropped.
    pub fn truncated(&self, depth: usize) -> SimplicialSet {
        let mut levels = self.levels[..=depth].to_vec();
        levels[depth].degeneracies.clear();
        SimplicialSet { levels, meta: BTreeMap::new() }
    }

    pub fn count(&self, k: usize) -> usize {
        self.levels[k].names.len()
    }

    /// Total simplex counts per level.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Level::len).collect()
    }

    pub fn name(&self, k: usize, x: u32) -> &str {
        &self.levels[k].names[x as usize]
    }

    pub fn find(&self, k: usize, name: &str) -> Option<u32> {
        self.levels.get(k)?.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn basepoint(&self, k: usize) -> u32 {
        self.levels[k].basepoint
    }

    #[inline]
    pub fn face(&self, k: usize, i: usize, x: u32) -> u32 {
        self.levels[k].faces[i][x as usize]
    }

    #[inline]
    pub fn degeneracy(&self, k: usize, j: usize, x: u32) -> u32 {
        self.levels[k].degeneracies[j][x as usize]
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    /// Keys are whitespace-free and values single-line in the interchange
    /// text; other characters are replaced by `_` and spaces.
    pub fn set_meta(&mut self, key: &str, value: &str) {
        let key: String = key.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect();
        let value: String = value.chars().map(|c| if c == '\n' || c == '\r' { ' ' } else { c }).collect();
        self.meta.insert(key, value);
    }

    pub(crate) fn meta_mut(&mut self) -> &mut BTreeMap<String, String> {
        &mut self.meta
    }

    /// Degeneracy flags for level `k`.
    pub fn degenerate_flags(&self, k: usize) -> Vec<bool> {
        let mut flags = vec![false; self.count(k)];
        if k > 0 {
            for table in &self.levels[k - 1].degeneracies {
                for &y in table {
                    flags[y as usize] = true;
                }
            }
        }
        flags
    }

    pub fn is_degenerate(&self, k: usize, x: u32) -> bool {
        k > 0 && self.levels[k - 1].degeneracies.iter().any(|t| t.contains(&x))
    }

    /// Nondegenerate simplices of level `k`, in index order.
    pub fn nondegenerate(&self, k: usize) -> Vec<u32> {
        self.degenerate_flags(k)
            .iter()
            .enumerate()
            .filter(|(_, &d)| !d)
            .map(|(i, _)| i as u32)
            .collect()
    }

    /// Nondegenerate simplex counts per level.
    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.depth()).map(|k| self.nondegenerate(k).len()).collect()
    }

    /// Number of connected components of the 1-skeleton.
    pub fn components(&self) -> usize {
        let n = self.count(0);
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        if self.depth() >= 1 {
            for e in 0..self.count(1) as u32 {
                let (a, b) = (self.face(1, 0, e) as usize, self.face(1, 1, e) as usize);
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        (0..n).filter(|&x| root(&mut parent, x) == x).count()
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }

    /// Checks every simplicial identity on all materialized levels,
    /// plus basepoint closure. Empty iff all hold.
    pub fn validate_identities(&self) -> Vec<IdentityViolation> {
        let mut out = Vec::new();
        let depth = self.depth();
        let mut report = |identity: String, level: usize, x: u32, lhs: u32, rhs: u32| {
            out.push(IdentityViolation { identity, level, simplex: self.name(level, x).to_string(), lhs, rhs });
        };
        for k in 0..=depth {
            let n = self.count(k) as u32;
            let bp = self.basepoint(k);
            if k > 0 {
                for i in 0..=k {
                    let y = self.face(k, i, bp);
                    if y != self.basepoint(k - 1) {
                        report(format!("d{i}(*) = *"), k, bp, y, self.basepoint(k - 1));
                    }
                }
            }
            if k < depth {
                for j in 0..=k {
                    let y = self.degeneracy(k, j, bp);
                    if y != self.basepoint(k + 1) {
                        report(format!("s{j}(*) = *"), k, bp, y, self.basepoint(k + 1));
                    }
                }
            }
            for x in 0..n {
                // d_i d_j = d_{j-1} d_i for i < j
                if k >= 2 {
                    for j in 1..=k {
                        for i in 0..j {
                            let lhs = self.face(k - 1, i, self.face(k, j, x));
                            let rhs = self.face(k - 1, j - 1, self.face(k, i, x));
                            if lhs != rhs {
                                report(format!("d{i} d{j} = d{} d{i}", j - 1), k, x, lhs, rhs);
                            }
                        }
                    }
                }
                // s_i s_j = s_{j+1} s_i for i <= j
                if k + 2 <= depth {
                    for j in 0..=k {
                        for i in 0..=j {
                            let lhs = self.degeneracy(k + 1, i, self.degeneracy(k, j, x));
                            let rhs = self.degeneracy(k + 1, j + 1, self.degeneracy(k, i, x));
                            if lhs != rhs {
                                report(format!("s{i} s{j} = s{} s{i}", j + 1), k, x, lhs, rhs);
                            }
                        }
                    }
                }
                // d_i s_j mixed identities
                if k < depth {
                    for j in 0..=k {
                        let sx = self.degeneracy(k, j, x);
                        for i in 0..=k + 1 {
                            let lhs = self.face(k + 1, i, sx);
                            let (rhs, name) = if i < j {
                                (self.degeneracy(k - 1, j - 1, self.face(k, i, x)), format!("d{i} s{j} = s{} d{i}", j - 1))
                            } else if i == j || i == j + 1 {
                                (x, format!("d{i} s{j} = id"))
                            } else {
                                (self.degeneracy(k - 1, j, self.face(k, i - 1, x)), format!("d{i} s{j} = s{j} d{}", i - 1))
                            };
                            if lhs != rhs {
                                report(name, k, x, lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// SHA-256 of the interchange text.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(write_simplicial(self).as_bytes()))
    }
}

/// A failed simplicial identity: `lhs` and `rhs` are the simplex indices
/// the two sides of `identity` produced from `simplex` at `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub identity: String,
    pub level: usize,
    pub simplex: String,
    pub lhs: u32,
    pub rhs: u32,
}

impl fmt::Display for IdentityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at level {} on `{}` ({} vs {})", self.identity, self.level, self.simplex, self.lhs, self.rhs)
    }
}
