use std::sync::Arc;

use super::{Level, SimplicialSet};
use crate::error::SimplicialError;

/// A based simplicial map, stored as one assignment table per level.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    assignment: Vec<Vec<u32>>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl SimplicialMap {
    /// Validates the assignment against every materialized face and
    /// degeneracy table and the basepoints.
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, assignment: Vec<Vec<u32>>) -> Result<Self, SimplicialError> {
        let map = SimplicialMap { source, target, assignment };
        map.check()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, assignment: Vec<Vec<u32>>) -> Self {
        SimplicialMap { source, target, assignment }
    }

    pub fn check(&self) -> Result<(), SimplicialError> {
        let (x, y) = (&*self.source, &*self.target);
        if x.depth() != y.depth() {
            return Err(SimplicialError::DepthMismatch(x.depth(), y.depth()));
        }
        if self.assignment.len() != x.depth() + 1 {
            return Err(SimplicialError::NotSimplicial(format!("{} assignment levels for depth {}", self.assignment.len(), x.depth())));
        }
        for k in 0..=x.depth() {
            let f = &self.assignment[k];
            if f.len() != x.count(k) || f.iter().any(|&v| v as usize >= y.count(k)) {
                return Err(SimplicialError::NotSimplicial(format!("level {k} assignment is malformed")));
            }
            if f[x.basepoint(k) as usize] != y.basepoint(k) {
                return Err(SimplicialError::NotSimplicial(format!("level {k}: basepoint not preserved")));
            }
            for s in 0..x.count(k) as u32 {
                if k > 0 {
                    for i in 0..=k {
                        if self.assignment[k - 1][x.face(k, i, s) as usize] != y.face(k, i, f[s as usize]) {
                            return Err(SimplicialError::NotSimplicial(format!(
                                "level {k}: d{i} does not commute on `{}`",
                                x.name(k, s)
                            )));
                        }
                    }
                }
                if k < x.depth() {
                    for j in 0..=k {
                        if self.assignment[k + 1][x.degeneracy(k, j, s) as usize] != y.degeneracy(k, j, f[s as usize]) {
                            return Err(SimplicialError::NotSimplicial(format!(
                                "level {k}: s{j} does not commute on `{}`",
                                x.name(k, s)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn assignment(&self) -> &[Vec<u32>] {
        &self.assignment
    }

    #[inline]
    pub fn apply(&self, k: usize, x: u32) -> u32 {
        self.assignment[k][x as usize]
    }

    /// True when every level is a bijection.
    pub fn is_isomorphism(&self) -> bool {
        (0..self.assignment.len()).all(|k| {
            let mut hit = vec![false; self.target.count(k)];
            self.assignment[k].len() == hit.len()
                && self.assignment[k].iter().all(|&v| !std::mem::replace(&mut hit[v as usize], true))
        })
    }

    /// True when every level is injective.
    pub fn is_injective(&self) -> bool {
        self.assignment.iter().enumerate().all(|(k, f)| {
            let mut hit = vec![false; self.target.count(k)];
            f.iter().all(|&v| !std::mem::replace(&mut hit[v as usize], true))
        })
    }
}

pub fn identity_map(x: &Arc<SimplicialSet>) -> SimplicialMap {
    let assignment = (0..=x.depth()).map(|k| (0..x.count(k) as u32).collect()).collect();
    SimplicialMap::new_unchecked(x.clone(), x.clone(), assignment)
}

/// `second ∘ first`: apply `first`, then `second`.
pub fn compose_maps(first: &SimplicialMap, second: &SimplicialMap) -> Result<SimplicialMap, SimplicialError> {
    if first.target.depth() != second.source.depth() {
        return Err(SimplicialError::DepthMismatch(first.target.depth(), second.source.depth()));
    }
    if !Arc::ptr_eq(&first.target, &second.source) && first.target != second.source {
        return Err(SimplicialError::InvalidParameter("target of the first map is not the source of the second".into()));
    }
    let assignment = first
        .assignment
        .iter()
        .enumerate()
        .map(|(k, f)| f.iter().map(|&v| second.assignment[k][v as usize]).collect())
        .collect();
    Ok(SimplicialMap::new_unchecked(first.source.clone(), second.target.clone(), assignment))
}

/// A pointed simplicial subset: membership flags per level, closed under
/// faces and degeneracies, containing the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    members: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn new(x: &SimplicialSet, members: Vec<Vec<bool>>) -> Result<Self, SimplicialError> {
        if members.len() != x.depth() + 1 || members.iter().enumerate().any(|(k, m)| m.len() != x.count(k)) {
            return Err(SimplicialError::InvalidParameter("subcomplex shape does not match the space".into()));
        }
        for k in 0..=x.depth() {
            if !members[k][x.basepoint(k) as usize] {
                return Err(SimplicialError::InvalidParameter(format!("subcomplex misses the basepoint at level {k}")));
            }
            for s in (0..x.count(k) as u32).filter(|&s| members[k][s as usize]) {
                if k > 0 && (0..=k).any(|i| !members[k - 1][x.face(k, i, s) as usize]) {
                    return Err(SimplicialError::NotClosed { op: "faces", level: k, simplex: x.name(k, s).into() });
                }
                if k < x.depth() && (0..=k).any(|j| !members[k + 1][x.degeneracy(k, j, s) as usize]) {
                    return Err(SimplicialError::NotClosed { op: "degeneracies", level: k, simplex: x.name(k, s).into() });
                }
            }
        }
        Ok(Subcomplex { members })
    }

    /// The basepoint and its degeneracies.
    pub fn basepoint(x: &SimplicialSet) -> Self {
        let members = (0..=x.depth())
            .map(|k| (0..x.count(k) as u32).map(|s| s == x.basepoint(k)).collect())
            .collect();
        Subcomplex { members }
    }

    /// Smallest subcomplex containing the basepoint and `seeds` (level, simplex).
    pub fn generated(x: &SimplicialSet, seeds: &[(usize, u32)]) -> Self {
        let mut members: Vec<Vec<bool>> = Self::basepoint(x).members;
        let mut stack: Vec<(usize, u32)> = Vec::new();
        let visit = |members: &mut Vec<Vec<bool>>, stack: &mut Vec<(usize, u32)>, k: usize, s: u32| {
            if !members[k][s as usize] {
                members[k][s as usize] = true;
                stack.push((k, s));
            }
        };
        for &(k, s) in seeds {
            visit(&mut members, &mut stack, k, s);
        }
        while let Some((k, s)) = stack.pop() {
            if k > 0 {
                for i in 0..=k {
                    visit(&mut members, &mut stack, k - 1, x.face(k, i, s));
                }
            }
            if k < x.depth() {
                for j in 0..=k {
                    visit(&mut members, &mut stack, k + 1, x.degeneracy(k, j, s));
                }
            }
        }
        Subcomplex { members }
    }

    pub fn contains(&self, k: usize, s: u32) -> bool {
        self.members[k][s as usize]
    }

    pub fn members(&self) -> &[Vec<bool>] {
        &self.members
    }
}

/// The quotient map `X -> X/A`. The quotient keeps the simplices outside
/// `A` (plus the basepoint) in their original order and names.
pub fn collapse_map(x: &Arc<SimplicialSet>, a: &Subcomplex) -> Result<SimplicialMap, SimplicialError> {
    let checked = Subcomplex::new(x, a.members.clone())?;
    let depth = x.depth();
    let mut remap: Vec<Vec<u32>> = Vec::with_capacity(depth + 1);
    let mut kept: Vec<Vec<u32>> = Vec::with_capacity(depth + 1);
    let mut quotient_bp = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let bp = x.basepoint(k);
        let keep: Vec<u32> = (0..x.count(k) as u32).filter(|&s| s == bp || !checked.contains(k, s)).collect();
        let new_bp = keep.iter().position(|&s| s == bp).unwrap() as u32;
        let mut r = vec![new_bp; x.count(k)];
        for (i, &s) in keep.iter().enumerate() {
            r[s as usize] = i as u32;
        }
        remap.push(r);
        kept.push(keep);
        quotient_bp.push(new_bp);
    }
    let mut levels = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let names = kept[k].iter().map(|&s| x.name(k, s).to_string()).collect();
        let faces = if k == 0 {
            Vec::new()
        } else {
            (0..=k).map(|i| kept[k].iter().map(|&s| remap[k - 1][x.face(k, i, s) as usize]).collect()).collect()
        };
        let degeneracies = if k == depth {
            Vec::new()
        } else {
            (0..=k).map(|j| kept[k].iter().map(|&s| remap[k + 1][x.degeneracy(k, j, s) as usize]).collect()).collect()
        };
        levels.push(Level::new(names, quotient_bp[k], faces, degeneracies));
    }
    let target = Arc::new(SimplicialSet::new(levels)?);
    SimplicialMap::new(x.clone(), target, remap)
}
