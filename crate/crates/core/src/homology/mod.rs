//! Exact integer homology of simplicial sets through normalized chains.

mod matrix;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::HomologyError;
use crate::simplicial::SimplicialSet;

pub use matrix::{IntMatrix, SparseMatrix};
pub use snf::{invariant_factors, smith_normal_form, SmithForm, DENSE_THRESHOLD};

/// Integer chain complex in degrees `0..=max_deg + 1`.
///
/// `boundaries[k]` is `∂_k : C_k -> C_{k-1}` with rows indexed by the
/// degree `k - 1` basis; `boundaries[0]` is the zero map out of `C_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    max_deg: usize,
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
    /// Simplex indices of each basis, when the complex came from a simplicial set.
    bases: Option<Vec<Vec<u32>>>,
}

impl ChainComplex {
    /// A complex from explicit boundary matrices `∂_1..=∂_{max_deg+1}`.
    pub fn from_boundaries(ranks: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self, HomologyError> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(HomologyError::Dimension(format!("{} ranks need {} boundary matrices", ranks.len(), ranks.len().saturating_sub(1))));
        }
        for (k, m) in boundaries.iter().enumerate() {
            let k = k + 1;
            if m.rows() != ranks[k - 1] || m.cols() != ranks[k] {
                return Err(HomologyError::Dimension(format!("∂_{k} is {}x{}, expected {}x{}", m.rows(), m.cols(), ranks[k - 1], ranks[k])));
            }
        }
        let mut all = vec![SparseMatrix::zeros(0, ranks[0])];
        all.extend(boundaries);
        Ok(ChainComplex { max_deg: ranks.len() - 2, ranks, boundaries: all, bases: None })
    }

    /// Highest degree whose homology this complex determines.
    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, k: usize) -> &SparseMatrix {
        &self.boundaries[k]
    }

    pub fn bases(&self) -> Option<&[Vec<u32>]> {
        self.bases.as_deref()
    }

    /// First degree `k` with `∂_k ∘ ∂_{k+1} != 0`, if any.
    pub fn boundary_defect(&self) -> Option<usize> {
        (1..self.boundaries.len() - 1).find(|&k| {
            let product = self.boundaries[k].mul(&self.boundaries[k + 1]).expect("dimensions checked at construction");
            !product.is_zero()
        })
    }

    /// The same complex with every basis reordered by `orders[k]`.
    pub fn permuted(&self, orders: &[Vec<usize>]) -> ChainComplex {
        let mut boundaries = vec![SparseMatrix::zeros(0, self.ranks[0])];
        for k in 1..self.boundaries.len() {
            boundaries.push(self.boundaries[k].permuted(&orders[k - 1], &orders[k]));
        }
        ChainComplex { max_deg: self.max_deg, ranks: self.ranks.clone(), boundaries, bases: None }
    }
}

/// Normalized chains of `x` through degree `max_deg + 1`: nondegenerate
/// bases, alternating face sums with degenerate faces dropped.
pub fn normalized_chains(x: &SimplicialSet, max_deg: usize) -> Result<ChainComplex, HomologyError> {
    if x.depth() < max_deg + 1 {
        return Err(HomologyError::InsufficientDepth { needed: max_deg + 1, available: x.depth() });
    }
    let top = max_deg + 1;
    let bases: Vec<Vec<u32>> = (0..=top).map(|k| x.nondegenerate(k)).collect();
    let mut ranks = Vec::with_capacity(top + 1);
    let mut boundaries = Vec::with_capacity(top);
    ranks.push(bases[0].len());
    for k in 1..=top {
        let mut position = vec![usize::MAX; x.count(k - 1)];
        for (p, &s) in bases[k - 1].iter().enumerate() {
            position[s as usize] = p;
        }
        let mut m = SparseMatrix::zeros(bases[k - 1].len(), bases[k].len());
        for (col, &s) in bases[k].iter().enumerate() {
            let mut entries = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let row = position[x.face(k, i, s) as usize];
                if row != usize::MAX {
                    entries.push((row, if i % 2 == 0 { BigInt::one() } else { -BigInt::one() }));
                }
            }
            m.set_column(col, entries);
        }
        ranks.push(bases[k].len());
        boundaries.push(m);
    }
    let mut complex = ChainComplex::from_boundaries(ranks, boundaries)?;
    if let Some(k) = complex.boundary_defect() {
        return Err(HomologyError::BoundaryNotNilpotent(k));
    }
    complex.bases = Some(bases);
    Ok(complex)
}

/// One homology group `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        HomologyGroup { rank, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, &[order])
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum of `copies` copies, with torsion re-normalized to
    /// invariant factors.
    pub fn power(&self, copies: usize) -> Self {
        let rank = self.rank * copies;
        let mut elementary = Vec::new();
        for _ in 0..copies {
            elementary.extend(self.torsion.iter().cloned());
        }
        HomologyGroup { rank, torsion: normalize_torsion(elementary) }
    }
}

/// Turns any list of cyclic orders into invariant factors `t_1 | t_2 | ...`.
fn normalize_torsion(orders: Vec<BigInt>) -> Vec<BigInt> {
    let n = orders.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, t) in orders.into_iter().enumerate() {
        m.set(i, i, t);
    }
    smith_normal_form(&m).diagonal().into_iter().filter(|t| !t.is_zero() && !t.is_one()).collect()
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in degrees `0..=max_deg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub reduced: bool,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn through(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.iter().any(|g| !g.torsion.is_empty())
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `H_k = ker ∂_k / im ∂_{k+1}` for `k <= max_deg`, from the invariant
/// factors of the boundary matrices. `reduced` subtracts one free
/// generator in degree 0.
pub fn homology(c: &ChainComplex, reduced: bool) -> Result<HomologyResult, HomologyError> {
    if let Some(k) = c.boundary_defect() {
        return Err(HomologyError::BoundaryNotNilpotent(k));
    }
    let top = c.max_deg + 1;
    let factors: Vec<Vec<BigInt>> = (0..=top).into_par_iter().map(|k| invariant_factors(&c.boundaries[k])).collect();
    let mut groups = Vec::with_capacity(c.max_deg + 1);
    for k in 0..=c.max_deg {
        let rank = c.ranks[k] - factors[k].len() - factors[k + 1].len();
        let torsion = factors[k + 1].iter().filter(|t| !t.is_one()).cloned().collect();
        groups.push(HomologyGroup { rank, torsion });
    }
    if reduced {
        groups[0].rank = groups[0].rank.saturating_sub(1);
    }
    Ok(HomologyResult { reduced, groups })
}

/// Homology of a simplicial set through `max_deg`.
pub fn simplicial_homology(x: &SimplicialSet, max_deg: usize, reduced: bool) -> Result<HomologyResult, HomologyError> {
    homology(&normalized_chains(x, max_deg)?, reduced)
}

/// Outcome of comparing two homology computations degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub through: usize,
    pub first_difference: Option<usize>,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        self.first_difference.is_none()
    }
}

pub fn compare_homology(a: &HomologyResult, b: &HomologyResult, through: usize) -> Result<Comparison, HomologyError> {
    let available = a.through().min(b.through());
    if available < through {
        return Err(HomologyError::DegreeRange { needed: through, available });
    }
    let first_difference = (0..=through).find(|&k| a.groups[k] != b.groups[k]);
    Ok(Comparison { through, first_difference })
}
