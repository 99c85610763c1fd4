//! The classifying space `BM` of a partial abelian monoid.
//!
//! Level `k` holds the composable `k`-tuples. `∂_0` drops the first entry,
//! `∂_k` the last, and an inner `∂_i` sums entries `i` and `i + 1`;
//! `s_i` inserts the unit at position `i`. The basepoint at level `k` is
//! the all-zero tuple, so level 0 is the empty tuple alone.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::dold_thom::{dold_thom_space, DoldThomSpace};
use crate::error::SimplicialError;
use crate::monoid::{Coefficients, Element, PartialMonoid};
use crate::simplicial::{sphere, Level, SimplicialMap, SimplicialSet};

#[derive(Clone, Debug)]
pub struct ClassifyingSpace {
    monoid: PartialMonoid,
    tuples: Vec<Vec<Vec<Element>>>,
    space: Arc<SimplicialSet>,
}

impl ClassifyingSpace {
    pub fn monoid(&self) -> &PartialMonoid {
        &self.monoid
    }

    pub fn space(&self) -> &Arc<SimplicialSet> {
        &self.space
    }

    pub fn depth(&self) -> usize {
        self.space.depth()
    }

    /// Level-`k` tuples in simplex order.
    pub fn tuples(&self, k: usize) -> &[Vec<Element>] {
        &self.tuples[k]
    }
}

fn tuple_name(m: &PartialMonoid, t: &[Element]) -> String {
    let parts: Vec<&str> = t.iter().map(|&e| m.name(e)).collect();
    format!("[{}]", parts.join(","))
}

/// `∂_i` of a nerve tuple, or `None` if an inner sum is undefined.
pub fn nerve_face(m: &PartialMonoid, t: &[Element], i: usize) -> Option<Vec<Element>> {
    let k = t.len();
    if k == 0 || i > k {
        return None;
    }
    if i == 0 {
        return Some(t[1..].to_vec());
    }
    if i == k {
        return Some(t[..k - 1].to_vec());
    }
    let mut out = Vec::with_capacity(k - 1);
    out.extend_from_slice(&t[..i - 1]);
    out.push(m.add(t[i - 1], t[i])?);
    out.extend_from_slice(&t[i + 1..]);
    Some(out)
}

pub fn nerve_degeneracy(m: &PartialMonoid, t: &[Element], i: usize) -> Vec<Element> {
    let mut out = t.to_vec();
    out.insert(i, m.zero());
    out
}

/// Builds `BM` through level `max_dim`.
pub fn classifying_space(m: &PartialMonoid, max_dim: usize) -> Result<ClassifyingSpace, SimplicialError> {
    let tuples: Vec<Vec<Vec<Element>>> =
        (0..=max_dim).into_par_iter().map(|k| m.composable_tuples(k).into_iter().map(|t| t.entries().to_vec()).collect()).collect();
    let index: Vec<HashMap<&[Element], u32>> =
        tuples.iter().map(|level| level.iter().enumerate().map(|(i, t)| (t.as_slice(), i as u32)).collect()).collect();
    let lookup = |k: usize, t: &[Element]| -> Result<u32, SimplicialError> {
        index[k].get(t).copied().ok_or_else(|| SimplicialError::Internal(format!("tuple {} is not composable", tuple_name(m, t))))
    };

    let levels: Vec<Level> = (0..=max_dim)
        .into_par_iter()
        .map(|k| -> Result<Level, SimplicialError> {
            let level = &tuples[k];
            let names = level.iter().map(|t| tuple_name(m, t)).collect();
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        level
                            .iter()
                            .map(|t| {
                                let f = nerve_face(m, t, i)
                                    .ok_or_else(|| SimplicialError::Internal(format!("face {i} of {} undefined", tuple_name(m, t))))?;
                                lookup(k - 1, &f)
                            })
                            .collect::<Result<Vec<u32>, _>>()
                    })
                    .collect::<Result<_, _>>()?
            };
            let degeneracies = if k == max_dim {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| level.iter().map(|t| lookup(k + 1, &nerve_degeneracy(m, t, i))).collect::<Result<Vec<u32>, _>>())
                    .collect::<Result<_, _>>()?
            };
            let basepoint = lookup(k, &vec![m.zero(); k])?;
            Ok(Level::new(names, basepoint, faces, degeneracies))
        })
        .collect::<Result<_, _>>()?;

    let mut space = SimplicialSet::new(levels)?;
    space.set_meta("kind", "nerve");
    space.set_meta("monoid-hash", &m.fingerprint());
    space.set_meta("depth", &max_dim.to_string());
    Ok(ClassifyingSpace { monoid: m.clone(), tuples, space: Arc::new(space) })
}

/// `BM` next to `M[S¹]` at the same depth, with the canonical alignment
/// when it is a simplicial isomorphism.
#[derive(Clone, Debug)]
pub struct CircleComparison {
    pub nerve: ClassifyingSpace,
    pub circle: DoldThomSpace,
    pub alignment: Option<SimplicialMap>,
}

/// The simplex of `S¹` at level `k` whose vertex sequence switches from 0
/// to 1 after position `j - 1`, for `1 <= j <= k`.
fn switch_name(k: usize, j: usize) -> String {
    let bits: Vec<&str> = (0..=k).map(|p| if p < j { "0" } else { "1" }).collect();
    format!("[{}]", bits.join(","))
}

/// Sends `(m_1, .., m_k)` to the configuration with label `m_j` on the
/// `j`-th nonbasepoint simplex of `S¹`, zeros dropped.
pub fn circle_alignment(nerve: &ClassifyingSpace, circle: &DoldThomSpace) -> Result<SimplicialMap, SimplicialError> {
    let m = nerve.monoid();
    let carrier = circle.coefficients().carrier();
    if carrier != m {
        return Err(SimplicialError::InvalidParameter("coefficients differ from the nerve's monoid".into()));
    }
    if nerve.depth() != circle.depth() {
        return Err(SimplicialError::DepthMismatch(nerve.depth(), circle.depth()));
    }
    let base = circle.base();
    let assignment = (0..=nerve.depth())
        .map(|k| {
            let switches: Vec<u32> = (1..=k)
                .map(|j| base.find(k, &switch_name(k, j)).ok_or_else(|| SimplicialError::Internal(format!("no simplex {}", switch_name(k, j)))))
                .collect::<Result<_, _>>()?;
            nerve
                .tuples(k)
                .iter()
                .map(|t| {
                    let mut points: Vec<(&str, &str)> = Vec::new();
                    for (j, &e) in t.iter().enumerate() {
                        if e != m.zero() {
                            points.push((base.name(k, switches[j]), m.name(e)));
                        }
                    }
                    circle
                        .find_named(k, &points)
                        .ok_or_else(|| SimplicialError::Internal(format!("tuple {} has no configuration", tuple_name(m, t))))
                })
                .collect::<Result<Vec<u32>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    SimplicialMap::new(nerve.space().clone(), circle.space().clone(), assignment)
}

pub fn nerve_to_circle_comparison(m: &PartialMonoid, depth: usize) -> Result<CircleComparison, SimplicialError> {
    let nerve = classifying_space(m, depth)?;
    let s1 = Arc::new(sphere(1, depth.max(1))?);
    let circle = dold_thom_space(&Coefficients::Plain(m.clone()), &s1, None, depth)?;
    let alignment = circle_alignment(&nerve, &circle).ok().filter(SimplicialMap::is_isomorphism);
    Ok(CircleComparison { nerve, circle, alignment })
}
