//! Smith normal form over the integers.
//!
//! Pivoting always takes the nonzero entry of least absolute value in the
//! remaining block; remainders left by the row and column reductions become
//! the next pivot candidates, so entries shrink until the pivot divides its
//! row and column. A pivot that fails to divide some remaining entry absorbs
//! that entry's row and the reduction repeats.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, SparseMatrix};

/// Matrices at most this large in both dimensions go straight to the
/// dense routine.
pub const DENSE_THRESHOLD: usize = 64;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_row_multiple(target, source, factor);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(target, source, factor);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_col_multiple(target, source, factor);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(target, source, factor);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(_, _, b)| x.magnitude() < b.magnitude()) {
                    best = Some((i, j, x));
                    if x.magnitude().is_one() {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else { return };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let pivot = self.a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..rows {
                    let x = self.a.get(i, t);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.div_floor(&pivot);
                    if !q.is_zero() {
                        self.add_row(i, t, &-q);
                    }
                    clean &= self.a.get(i, t).is_zero();
                }
                for j in t + 1..cols {
                    let x = self.a.get(t, j);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.div_floor(&pivot);
                    if !q.is_zero() {
                        self.add_col(j, t, &-q);
                    }
                    clean &= self.a.get(t, j).is_zero();
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a.get(i, j).is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut r = Reducer { a: a.clone(), u: Some(IntMatrix::identity(a.rows())), v: Some(IntMatrix::identity(a.cols())) };
    r.run();
    SmithForm { d: r.a, u: r.u.unwrap(), v: r.v.unwrap() }
}

fn dense_factors(a: IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer { a, u: None, v: None };
    r.run();
    r.a.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
}

/// Nonzero invariant factors in divisibility order. Large matrices first
/// eliminate unit pivots sparsely, then finish the remaining block densely.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    if m.rows() <= DENSE_THRESHOLD && m.cols() <= DENSE_THRESHOLD {
        return dense_factors(m.to_dense());
    }
    let (units, rest) = eliminate_unit_pivots(m);
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense_factors(rest));
    factors
}

/// Repeatedly pivots on entries equal to ±1, choosing the one with the
/// smallest Markowitz cost. Returns the number of unit pivots and the
/// remaining block.
fn eliminate_unit_pivots(m: &SparseMatrix) -> (usize, IntMatrix) {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows()];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for j in 0..m.cols() {
        for (i, v) in m.column(j) {
            rows[*i].insert(j, v.clone());
            cols[j].insert(*i);
        }
    }
    let mut row_alive = vec![true; m.rows()];
    let mut col_alive = vec![true; m.cols()];
    let mut units = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row_alive[i] {
                continue;
            }
            for (j, v) in row {
                if v.magnitude().is_one() {
                    let cost = (row.len() - 1) * (cols[*j].len() - 1);
                    if best.is_none_or(|(_, _, c)| cost < c) {
                        best = Some((i, *j, cost));
                    }
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let pivot = rows[pr][&pc].clone();
        let pivot_row = rows[pr].clone();
        let targets: Vec<usize> = cols[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in targets {
            // pivot is ±1, so the multiplier is entry * pivot.
            let factor = &rows[r][&pc] * &pivot;
            for (j, v) in &pivot_row {
                let entry = rows[r].entry(*j).or_default();
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[r].remove(j);
                    cols[*j].remove(&r);
                } else {
                    cols[*j].insert(r);
                }
            }
        }
        for j in pivot_row.keys() {
            cols[*j].remove(&pr);
        }
        rows[pr].clear();
        row_alive[pr] = false;
        col_alive[pc] = false;
        units += 1;
    }
    let live_rows: Vec<usize> = (0..m.rows()).filter(|&i| row_alive[i]).collect();
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&j| col_alive[j]).collect();
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(p, &j)| (j, p)).collect();
    let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (p, &i) in live_rows.iter().enumerate() {
        for (j, v) in &rows[i] {
            if let Some(&q) = col_pos.get(j) {
                rest.set(p, q, v.clone());
            }
        }
    }
    (units, rest)
}
