//! Labeled configuration spaces `M_n[X]` and `M[X]`.
//!
//! Level `k` of `M_n[X]` consists of configurations on the level-`k`
//! simplices of `X`: finitely supported maps from non-basepoint simplices to
//! nonzero labels whose label multiset is composable, with at most `n`
//! points. Configurations are kept in merged normal form, so a face map
//! pushes every point forward, drops points landing on the basepoint and
//! sums the labels of points that collide.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::SimplicialError;
use crate::monoid::{Coefficients, Element};
use crate::simplicial::{Level, SimplicialMap, SimplicialSet};

/// Upper limit on configurations per level.
pub const MAX_CONFIGURATIONS_PER_LEVEL: usize = 4_000_000;

/// A configuration in merged normal form: `(simplex, label)` pairs sorted
/// by simplex, labels nonzero, simplices distinct and not the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Configuration {
    points: Vec<(u32, Element)>,
}

impl Configuration {
    pub fn empty() -> Self {
        Configuration::default()
    }

    pub fn points(&self) -> &[(u32, Element)] {
        &self.points
    }

    pub fn support_size(&self) -> usize {
        self.points.len()
    }

    pub fn labels(&self) -> Vec<Element> {
        self.points.iter().map(|(_, m)| *m).collect()
    }

    pub fn label_at(&self, simplex: u32) -> Option<Element> {
        self.points.iter().find(|(x, _)| *x == simplex).map(|(_, m)| *m)
    }
}

/// The Dold-Thom space of `base` with labels in `coefficients`, at most
/// `bound` points per configuration (`None` for no bound).
#[derive(Clone, Debug)]
pub struct DoldThomSpace {
    coefficients: Coefficients,
    base: Arc<SimplicialSet>,
    bound: Option<usize>,
    configurations: Vec<Vec<Configuration>>,
    admitted_at: Vec<Vec<usize>>,
    index: Vec<HashMap<Configuration, u32>>,
    space: Arc<SimplicialSet>,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Composable label sequences of each length (nonzero labels, carrier
/// order), each with its least admitting filtration level.
fn label_sequences(coefficients: &Coefficients, max_len: usize) -> Vec<Vec<(Vec<Element>, usize)>> {
    let carrier = coefficients.carrier();
    let nonzero: Vec<Element> = carrier.nonzero_elements().collect();
    let levels = coefficients.level_count();
    let mut by_len: Vec<Vec<(Vec<Element>, usize)>> = vec![vec![(Vec::new(), 0)]];
    // Running totals per filtration level, None where the prefix is not composable there.
    let mut frontier: Vec<(Vec<Element>, Vec<Option<Element>>)> = vec![(Vec::new(), vec![Some(carrier.zero()); levels])];
    for _ in 0..max_len {
        let mut next_frontier = Vec::new();
        let mut layer = Vec::new();
        for (seq, totals) in &frontier {
            for &m in &nonzero {
                let new_totals: Vec<Option<Element>> = totals
                    .iter()
                    .enumerate()
                    .map(|(lvl, t)| t.and_then(|t| coefficients.level(lvl).add(t, m)))
                    .collect();
                if let Some(lvl) = new_totals.iter().position(Option::is_some) {
                    let mut s = seq.clone();
                    s.push(m);
                    layer.push((s.clone(), lvl));
                    next_frontier.push((s, new_totals));
                }
            }
        }
        if layer.is_empty() {
            break;
        }
        by_len.push(layer);
        frontier = next_frontier;
    }
    by_len
}

/// Lexicographic k-subsets of `0..n`.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn enumerate_level(
    base: &SimplicialSet,
    k: usize,
    bound: Option<usize>,
    labels: &[Vec<(Vec<Element>, usize)>],
) -> Result<(Vec<Configuration>, Vec<usize>), SimplicialError> {
    let bp = base.basepoint(k);
    let simplices: Vec<u32> = (0..base.count(k) as u32).filter(|&x| x != bp).collect();
    let max_support = bound.unwrap_or(usize::MAX).min(simplices.len()).min(labels.len() - 1);
    let mut total: usize = 0;
    for (s, seqs) in labels.iter().enumerate().take(max_support + 1) {
        total = total.saturating_add(binomial(simplices.len(), s).saturating_mul(seqs.len()));
    }
    if total > MAX_CONFIGURATIONS_PER_LEVEL {
        return Err(SimplicialError::Unsupported(format!(
            "level {k} would hold {total} configurations (limit {MAX_CONFIGURATIONS_PER_LEVEL}); lower the depth or set a point bound"
        )));
    }
    let mut configs = Vec::with_capacity(total);
    let mut admitted = Vec::with_capacity(total);
    for (s, seqs) in labels.iter().enumerate().take(max_support + 1) {
        for_each_combination(simplices.len(), s, |combo| {
            for (seq, lvl) in seqs {
                let points = combo.iter().zip(seq).map(|(&c, &m)| (simplices[c], m)).collect();
                configs.push(Configuration { points });
                admitted.push(*lvl);
            }
        });
    }
    Ok((configs, admitted))
}

/// Pushes `(simplex, label)` pairs through `image`, dropping those that
/// land on `basepoint` and summing labels of collisions in `monoid_level`.
fn push_forward(
    points: &[(u32, Element)],
    image: impl Fn(u32) -> u32,
    basepoint: u32,
    coefficients: &Coefficients,
    monoid_level: usize,
) -> Result<Configuration, SimplicialError> {
    let mut moved: Vec<(u32, Element)> = points.iter().map(|&(x, m)| (image(x), m)).filter(|&(y, _)| y != basepoint).collect();
    moved.sort_unstable_by_key(|&(y, _)| y);
    let monoid = coefficients.level(monoid_level);
    let mut merged: Vec<(u32, Element)> = Vec::with_capacity(moved.len());
    let mut start = 0;
    while start < moved.len() {
        let y = moved[start].0;
        let mut end = start + 1;
        while end < moved.len() && moved[end].0 == y {
            end += 1;
        }
        let label = if end - start == 1 {
            moved[start].1
        } else {
            let run: Vec<Element> = moved[start..end].iter().map(|&(_, m)| m).collect();
            monoid
                .try_sum(&run)?
                .ok_or_else(|| SimplicialError::Internal(format!("merged labels {} are not composable", monoid.format_items(&run))))?
        };
        if label != monoid.zero() {
            merged.push((y, label));
        }
        start = end;
    }
    Ok(Configuration { points: merged })
}

impl DoldThomSpace {
    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn base(&self) -> &Arc<SimplicialSet> {
        &self.base
    }

    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    pub fn space(&self) -> &Arc<SimplicialSet> {
        &self.space
    }

    pub fn depth(&self) -> usize {
        self.space.depth()
    }

    pub fn configurations(&self, k: usize) -> &[Configuration] {
        &self.configurations[k]
    }

    /// Least filtration level admitting configuration `i` of level `k`.
    pub fn admitted_at(&self, k: usize, i: u32) -> usize {
        self.admitted_at[k][i as usize]
    }

    pub fn find(&self, k: usize, c: &Configuration) -> Option<u32> {
        self.index[k].get(c).copied()
    }

    /// Looks up a configuration given as `(base simplex name, label name)` pairs.
    pub fn find_named(&self, k: usize, points: &[(&str, &str)]) -> Option<u32> {
        let carrier = self.coefficients.carrier();
        let mut pts = Vec::with_capacity(points.len());
        for (x, m) in points {
            pts.push((self.base.find(k, x)?, carrier.element(m).ok()?));
        }
        pts.sort_unstable();
        self.find(k, &Configuration { points: pts })
    }

    pub fn configuration_name(&self, k: usize, c: &Configuration) -> String {
        let carrier = self.coefficients.carrier();
        let mut out = String::from("{");
        for (n, (x, m)) in c.points.iter().enumerate() {
            if n > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}={}", self.base.name(k, *x), carrier.name(*m));
        }
        out.push('}');
        out
    }

    /// Configuration `c` is degenerate iff its whole support lies in the
    /// image of one `s_j` of the base; then it is `s_j` of its pullback.
    pub fn is_degenerate_by_support(&self, k: usize, c: &Configuration) -> bool {
        if k == 0 {
            return false;
        }
        (0..k).any(|j| {
            let image = &self.base.level(k - 1).degeneracies()[j];
            c.points.iter().all(|(x, _)| image.contains(x))
        })
    }
}

/// Builds `M_n[X]` (or `M[X]` when `bound` is `None`) through `max_dim`.
pub fn dold_thom_space(
    coefficients: &Coefficients,
    base: &Arc<SimplicialSet>,
    bound: Option<usize>,
    max_dim: usize,
) -> Result<DoldThomSpace, SimplicialError> {
    if base.depth() < max_dim {
        return Err(SimplicialError::InvalidParameter(format!("base is materialized to depth {}, need {max_dim}", base.depth())));
    }
    let components = base.components();
    if components != 1 {
        return Err(SimplicialError::Disconnected(components));
    }
    let base: Arc<SimplicialSet> = if base.depth() == max_dim { base.clone() } else { Arc::new(base.truncated(max_dim)) };
    let widest = (0..=max_dim).map(|k| base.count(k) - 1).max().unwrap_or(0);
    let labels = label_sequences(coefficients, bound.unwrap_or(usize::MAX).min(widest));

    let enumerated: Vec<(Vec<Configuration>, Vec<usize>)> =
        (0..=max_dim).into_par_iter().map(|k| enumerate_level(&base, k, bound, &labels)).collect::<Result<_, _>>()?;
    let (configurations, admitted_at): (Vec<_>, Vec<_>) = enumerated.into_iter().unzip();
    let index: Vec<HashMap<Configuration, u32>> = configurations
        .par_iter()
        .map(|level| level.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect())
        .collect();

    let lookup = |k: usize, c: &Configuration| -> Result<u32, SimplicialError> {
        index[k].get(c).copied().ok_or_else(|| SimplicialError::Internal(format!("level {k}: configuration {c:?} missing")))
    };
    let levels: Vec<Level> = (0..=max_dim)
        .into_par_iter()
        .map(|k| -> Result<Level, SimplicialError> {
            let configs = &configurations[k];
            let names: Vec<String> = configs.iter().map(|c| configuration_name(&base, coefficients, k, c)).collect();
            let mut faces = Vec::new();
            if k > 0 {
                for i in 0..=k {
                    let table = configs
                        .iter()
                        .zip(&admitted_at[k])
                        .map(|(c, &lvl)| {
                            let f = push_forward(&c.points, |x| base.face(k, i, x), base.basepoint(k - 1), coefficients, lvl)?;
                            lookup(k - 1, &f)
                        })
                        .collect::<Result<Vec<u32>, _>>()?;
                    faces.push(table);
                }
            }
            let mut degeneracies = Vec::new();
            if k < max_dim {
                for j in 0..=k {
                    let table = configs
                        .iter()
                        .zip(&admitted_at[k])
                        .map(|(c, &lvl)| {
                            let s = push_forward(&c.points, |x| base.degeneracy(k, j, x), base.basepoint(k + 1), coefficients, lvl)?;
                            lookup(k + 1, &s)
                        })
                        .collect::<Result<Vec<u32>, _>>()?;
                    degeneracies.push(table);
                }
            }
            let empty = lookup(k, &Configuration::empty())?;
            Ok(Level::new(names, empty, faces, degeneracies))
        })
        .collect::<Result<_, _>>()?;

    let mut space = SimplicialSet::new(levels)?;
    space.set_meta("kind", "dold-thom");
    space.set_meta("monoid-hash", &coefficients.fingerprint());
    space.set_meta("base-hash", &base.fingerprint());
    space.set_meta("bound", &bound.map_or_else(|| "inf".to_string(), |n| n.to_string()));
    space.set_meta("depth", &max_dim.to_string());
    Ok(DoldThomSpace { coefficients: coefficients.clone(), base, bound, configurations, admitted_at, index, space: Arc::new(space) })
}

fn configuration_name(base: &SimplicialSet, coefficients: &Coefficients, k: usize, c: &Configuration) -> String {
    let carrier = coefficients.carrier();
    let parts: Vec<String> = c.points.iter().map(|(x, m)| format!("{}={}", base.name(k, *x), carrier.name(*m))).collect();
    format!("{{{}}}", parts.join(","))
}

fn same_space(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn bound_le(small: Option<usize>, large: Option<usize>) -> bool {
    match (small, large) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(a), Some(b)) => a <= b,
    }
}

/// `M[f] : M_n[X] -> M_m[Y]` for a based map `f : X -> Y`, `n <= m`: each
/// label moves to the image of its simplex; labels meeting at one simplex
/// are summed and labels reaching the basepoint are discarded.
pub fn induced_map(f: &SimplicialMap, source: &DoldThomSpace, target: &DoldThomSpace) -> Result<SimplicialMap, SimplicialError> {
    if !same_space(f.source(), &source.base) || !same_space(f.target(), &target.base) {
        return Err(SimplicialError::InvalidParameter("map endpoints do not match the base spaces".into()));
    }
    if source.coefficients != target.coefficients {
        return Err(SimplicialError::InvalidParameter("source and target use different coefficients".into()));
    }
    if source.depth() != target.depth() {
        return Err(SimplicialError::DepthMismatch(source.depth(), target.depth()));
    }
    if !bound_le(source.bound, target.bound) {
        return Err(SimplicialError::InvalidParameter("target point bound is smaller than the source bound".into()));
    }
    let assignment = (0..=source.depth())
        .map(|k| {
            source.configurations[k]
                .iter()
                .zip(&source.admitted_at[k])
                .map(|(c, &lvl)| {
                    let image = push_forward(&c.points, |x| f.apply(k, x), target.base.basepoint(k), &source.coefficients, lvl)?;
                    target.find(k, &image).ok_or_else(|| SimplicialError::Internal(format!("image of {c:?} missing from target level {k}")))
                })
                .collect::<Result<Vec<u32>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    SimplicialMap::new(source.space.clone(), target.space.clone(), assignment)
}

/// The inclusion `M_n[X] ⊆ M_m[X]` for `n <= m`.
pub fn filtration_inclusion(small: &DoldThomSpace, large: &DoldThomSpace) -> Result<SimplicialMap, SimplicialError> {
    if small.coefficients != large.coefficients || !same_space(&small.base, &large.base) {
        return Err(SimplicialError::InvalidParameter("spaces differ in coefficients or base".into()));
    }
    if small.depth() != large.depth() {
        return Err(SimplicialError::DepthMismatch(small.depth(), large.depth()));
    }
    if !bound_le(small.bound, large.bound) {
        return Err(SimplicialError::InvalidParameter("inclusion needs the first bound to be at most the second".into()));
    }
    let assignment = (0..=small.depth())
        .map(|k| {
            small.configurations[k]
                .iter()
                .map(|c| large.find(k, c).ok_or_else(|| SimplicialError::Internal(format!("{c:?} missing from the larger space"))))
                .collect::<Result<Vec<u32>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    SimplicialMap::new(small.space.clone(), large.space.clone(), assignment)
}
