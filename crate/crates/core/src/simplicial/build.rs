use std::collections::HashMap;
use std::sync::Arc;

use super::{Level, SimplicialMap, SimplicialSet};
use crate::error::SimplicialError;

const BASEPOINT: &str = "*";

/// Monotone surjections `[k] -> [n]` as value sequences, lexicographic.
fn monotone_surjections(k: usize, n: usize) -> Vec<Vec<u32>> {
    fn go(k: usize, n: u32, seq: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let last = *seq.last().unwrap();
        let remaining = k + 1 - seq.len();
        if remaining == 0 {
            if last == n {
                out.push(seq.clone());
            }
            return;
        }
        // Stay, then step; the step must leave enough room to reach n.
        if ((n - last) as usize) < remaining {
            seq.push(last);
            go(k, n, seq, out);
            seq.pop();
        }
        if last < n {
            seq.push(last + 1);
            go(k, n, seq, out);
            seq.pop();
        }
    }
    if k < n {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(k, n as u32, &mut vec![0], &mut out);
    out
}

fn surjection_name(seq: &[u32]) -> String {
    let parts: Vec<String> = seq.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// The sphere `Δⁿ/∂Δⁿ` materialized through level `depth`.
///
/// Level `k` holds the basepoint (index 0) followed by the monotone
/// surjections `[k] -> [n]`; faces that stop being surjective collapse to
/// the basepoint.
pub fn sphere(n: usize, depth: usize) -> Result<SimplicialSet, SimplicialError> {
    if n == 0 {
        return Err(SimplicialError::InvalidParameter("sphere dimension must be at least 1 (S^0 is not connected)".into()));
    }
    if depth < n {
        return Err(SimplicialError::InvalidParameter(format!("sphere S^{n} needs depth at least {n}, got {depth}")));
    }
    let cells: Vec<Vec<Vec<u32>>> = (0..=depth).map(|k| monotone_surjections(k, n)).collect();
    let index: Vec<HashMap<&[u32], u32>> = cells
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32 + 1)).collect())
        .collect();
    let lookup = |k: usize, seq: &[u32]| -> u32 { index[k].get(seq).copied().unwrap_or(0) };

    let mut levels = Vec::with_capacity(depth + 1);
    for (k, level_cells) in cells.iter().enumerate() {
        let mut names = vec![BASEPOINT.to_string()];
        names.extend(level_cells.iter().map(|s| surjection_name(s)));
        let faces = if k == 0 {
            Vec::new()
        } else {
            (0..=k)
                .map(|i| {
                    let mut table = vec![0u32];
                    for seq in &cells[k] {
                        let mut f = seq.clone();
                        f.remove(i);
                        table.push(lookup(k - 1, &f));
                    }
                    table
                })
                .collect()
        };
        let degeneracies = if k == depth {
            Vec::new()
        } else {
            (0..=k)
                .map(|j| {
                    let mut table = vec![0u32];
                    for seq in &cells[k] {
                        let mut s = seq.clone();
                        s.insert(j, seq[j]);
                        table.push(lookup(k + 1, &s));
                    }
                    table
                })
                .collect()
        };
        levels.push(Level::new(names, 0, faces, degeneracies));
    }
    SimplicialSet::new(levels)
}

/// Index layout of a wedge: basepoint first, then the non-basepoint
/// simplices of each copy in base order.
struct WedgeLayout<'a> {
    base: &'a SimplicialSet,
    // rank[k][x]: position of x among non-basepoint simplices of level k
    rank: Vec<Vec<u32>>,
}

impl<'a> WedgeLayout<'a> {
    fn new(base: &'a SimplicialSet) -> Self {
        let rank = (0..=base.depth())
            .map(|k| {
                let bp = base.basepoint(k);
                let mut next = 0;
                (0..base.count(k) as u32)
                    .map(|x| {
                        if x == bp {
                            u32::MAX
                        } else {
                            next += 1;
                            next - 1
                        }
                    })
                    .collect()
            })
            .collect();
        WedgeLayout { base, rank }
    }

    fn stride(&self, k: usize) -> u32 {
        self.base.count(k) as u32 - 1
    }

    /// Wedge index of simplex `x` of copy `c` (1-based).
    fn index(&self, k: usize, c: usize, x: u32) -> u32 {
        if x == self.base.basepoint(k) {
            0
        } else {
            1 + (c as u32 - 1) * self.stride(k) + self.rank[k][x as usize]
        }
    }

    /// Inverse of `index`: (copy, base simplex), basepoint as copy 0.
    fn locate(&self, k: usize, w: u32) -> (usize, u32) {
        if w == 0 {
            return (0, self.base.basepoint(k));
        }
        let stride = self.stride(k);
        let c = (w - 1) / stride;
        let r = (w - 1) % stride;
        let bp = self.base.basepoint(k);
        let x = if r < bp { r } else { r + 1 };
        (c as usize + 1, x)
    }
}

/// `copies` copies of `base` with basepoints identified. Simplex `x` of
/// copy `c` is named `x@c`.
pub fn wedge(base: &SimplicialSet, copies: usize) -> Result<SimplicialSet, SimplicialError> {
    if copies == 0 {
        return Err(SimplicialError::InvalidParameter("wedge needs at least one copy".into()));
    }
    let layout = WedgeLayout::new(base);
    let depth = base.depth();
    let mut levels = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        let bp = base.basepoint(k);
        let mut names = vec![base.name(k, bp).to_string()];
        for c in 1..=copies {
            for x in 0..base.count(k) as u32 {
                if x != bp {
                    names.push(format!("{}@{c}", base.name(k, x)));
                }
            }
        }
        let table = |next_level: usize, f: &dyn Fn(u32) -> u32| -> Vec<u32> {
            let mut t = vec![0u32];
            for c in 1..=copies {
                for x in 0..base.count(k) as u32 {
                    if x != bp {
                        t.push(layout.index(next_level, c, f(x)));
                    }
                }
            }
            t
        };
        let faces = if k == 0 {
            Vec::new()
        } else {
            (0..=k).map(|i| table(k - 1, &|x| base.face(k, i, x))).collect()
        };
        let degeneracies = if k == depth {
            Vec::new()
        } else {
            (0..=k).map(|j| table(k + 1, &|x| base.degeneracy(k, j, x))).collect()
        };
        levels.push(Level::new(names, 0, faces, degeneracies));
    }
    SimplicialSet::new(levels)
}

/// The fold map `wedge(base, copies) -> base`.
pub fn wedge_fold(base: &Arc<SimplicialSet>, wedged: &Arc<SimplicialSet>, copies: usize) -> Result<SimplicialMap, SimplicialError> {
    check_wedge_shape(base, wedged, copies)?;
    let layout = WedgeLayout::new(base);
    let assignment = (0..=base.depth())
        .map(|k| (0..wedged.count(k) as u32).map(|w| layout.locate(k, w).1).collect())
        .collect();
    SimplicialMap::new(wedged.clone(), base.clone(), assignment)
}

/// Inclusion of `base` as copy `copy` (1-based) of the wedge.
pub fn wedge_inclusion(base: &Arc<SimplicialSet>, wedged: &Arc<SimplicialSet>, copies: usize, copy: usize) -> Result<SimplicialMap, SimplicialError> {
    check_wedge_shape(base, wedged, copies)?;
    if copy == 0 || copy > copies {
        return Err(SimplicialError::InvalidParameter(format!("copy {copy} out of range 1..={copies}")));
    }
    let layout = WedgeLayout::new(base);
    let assignment = (0..=base.depth())
        .map(|k| (0..base.count(k) as u32).map(|x| layout.index(k, copy, x)).collect())
        .collect();
    SimplicialMap::new(base.clone(), wedged.clone(), assignment)
}

fn check_wedge_shape(base: &SimplicialSet, wedged: &SimplicialSet, copies: usize) -> Result<(), SimplicialError> {
    if base.depth() != wedged.depth() {
        return Err(SimplicialError::DepthMismatch(base.depth(), wedged.depth()));
    }
    for k in 0..=base.depth() {
        if wedged.count(k) != 1 + copies * (base.count(k) - 1) {
            return Err(SimplicialError::InvalidParameter(format!("level {k} is not a {copies}-fold wedge of the base")));
        }
    }
    Ok(())
}
