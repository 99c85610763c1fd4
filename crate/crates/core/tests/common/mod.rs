//! Oracles and generators shared by the integration tests. Nothing here
//! calls into the engine's reduction, enumeration or Smith form code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use dold_thom::homology::{ChainComplex, IntMatrix, SparseMatrix};
use dold_thom::monoid::{cyclic, order_ideal, trivial, truncated_naturals, validate_monoid, Element, PartialMonoid, RawMonoid, RawSum};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every way of reducing a multiset by pairwise sums. Returns the set of
/// totals reached and whether some step met an undefined pair.
pub struct OrderOracle<'a> {
    m: &'a PartialMonoid,
    memo: HashMap<Vec<usize>, (BTreeSet<usize>, bool)>,
}

impl<'a> OrderOracle<'a> {
    pub fn new(m: &'a PartialMonoid) -> Self {
        OrderOracle { m, memo: HashMap::new() }
    }

    pub fn explore(&mut self, items: &[usize]) -> (BTreeSet<usize>, bool) {
        let mut key = items.to_vec();
        key.sort_unstable();
        if key.is_empty() {
            return ([self.m.zero().index()].into(), false);
        }
        if key.len() == 1 {
            return ([key[0]].into(), false);
        }
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut totals = BTreeSet::new();
        let mut failed = false;
        for i in 0..key.len() {
            for j in i + 1..key.len() {
                match self.m.add(Element::from_index(key[i]), Element::from_index(key[j])) {
                    None => failed = true,
                    Some(s) => {
                        let mut rest: Vec<usize> = key.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &x)| x).collect();
                        rest.push(s.index());
                        let (t, f) = self.explore(&rest);
                        totals.extend(t);
                        failed |= f;
                    }
                }
            }
        }
        self.memo.insert(key, (totals.clone(), failed));
        (totals, failed)
    }
}

/// Multisets of element indices of each size up to `max`, sizes ascending.
pub fn multisets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for ms in &layer {
            let start = ms.last().copied().unwrap_or(0);
            for x in start..n {
                let mut m: Vec<usize> = ms.clone();
                m.push(x);
                next.push(m);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Checks "some order succeeds => all orders succeed and agree" on every
/// multiset up to `max` items, and that the engine's verdict matches.
pub fn coherence_failures(m: &PartialMonoid, max: usize) -> Vec<String> {
    let mut oracle = OrderOracle::new(m);
    let mut out = Vec::new();
    for ms in multisets(m.len(), max) {
        let (totals, failed) = oracle.explore(&ms);
        let items: Vec<Element> = ms.iter().map(|&i| Element::from_index(i)).collect();
        let engine = m.try_sum(&items).unwrap().map(Element::index);
        let ok = if totals.is_empty() { engine.is_none() } else { !failed && totals.len() == 1 && engine == totals.first().copied() };
        if !ok {
            out.push(format!("{ms:?}: totals {totals:?}, undefined step {failed}, engine {engine:?}"));
        }
    }
    out
}

fn random_order_ideal(rng: &mut impl Rng) -> PartialMonoid {
    let dims = rng.gen_range(1..=3);
    let size = rng.gen_range(2..=6);
    let mut points: Vec<Vec<u32>> = vec![vec![0; dims]];
    let mut attempts = 0;
    while points.len() < size && attempts < 200 {
        attempts += 1;
        let mut p = points.choose(rng).unwrap().clone();
        p[rng.gen_range(0..dims)] += 1;
        let closed = (0..dims).filter(|&j| p[j] > 0).all(|j| {
            let mut q = p.clone();
            q[j] -= 1;
            points.contains(&q)
        });
        if closed && !points.contains(&p) {
            points.push(p);
        }
    }
    order_ideal(&points).expect("order ideals are valid")
}

fn product_group(a: usize, b: usize) -> PartialMonoid {
    let name = |x: usize, y: usize| format!("{x}.{y}");
    let elements: Vec<String> = (0..a).flat_map(|x| (0..b).map(move |y| name(x, y))).collect();
    let mut sums = Vec::new();
    for x1 in 0..a {
        for y1 in 0..b {
            for x2 in 0..a {
                for y2 in 0..b {
                    sums.push(RawSum::new(&name(x1, y1), &name(x2, y2), &name((x1 + x2) % a, (y1 + y2) % b)));
                }
            }
        }
    }
    let raw = RawMonoid { zero: name(0, 0), elements, sums, implicit_unit: true, implicit_mirror: true };
    validate_monoid(&raw).monoid.expect("product of cyclic groups")
}

/// A random symmetric table, kept only if the validator accepts it.
fn random_table(rng: &mut impl Rng) -> PartialMonoid {
    loop {
        let n = rng.gen_range(2..=6);
        let names: Vec<String> = std::iter::once("0".to_string()).chain((1..n).map(|i| format!("e{i}"))).collect();
        let density = rng.gen_range(0.1..0.6);
        let mut sums = Vec::new();
        for a in 1..n {
            for b in a..n {
                if rng.gen_bool(density) {
                    sums.push(RawSum::new(&names[a], &names[b], &names[rng.gen_range(0..n)]));
                }
            }
        }
        let raw = RawMonoid { zero: "0".into(), elements: names, sums, implicit_unit: true, implicit_mirror: true };
        if let Some(m) = validate_monoid(&raw).monoid {
            return m;
        }
    }
}

/// A valid partial monoid with at most six elements, drawn from several
/// families so the sample covers groups, ideals and ad hoc tables.
pub fn random_monoid(rng: &mut impl Rng) -> PartialMonoid {
    match rng.gen_range(0..6) {
        0 => random_order_ideal(rng),
        1 => cyclic(rng.gen_range(1..=6)).unwrap(),
        2 => [(2, 2), (2, 3), (3, 2)].choose(rng).map(|&(a, b)| product_group(a, b)).unwrap(),
        3 => trivial(rng.gen_range(1..=5)).unwrap(),
        4 => truncated_naturals(rng.gen_range(1..=5)).unwrap(),
        _ => random_table(rng),
    }
}

/// Elementary divisors of an `i128` matrix by direct diagonalization.
pub fn elementary_divisors(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))).filter(|&(i, j)| a[i][j] != 0).min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut done = true;
        let pivot_row = a[t].clone();
        for i in t + 1..rows {
            let q = a[i][t].div_euclid(a[t][t]);
            for (x, p) in a[i].iter_mut().zip(&pivot_row).skip(t) {
                *x -= q * p;
            }
            done &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j].div_euclid(a[t][t]);
            for row in a.iter_mut().skip(t) {
                row[j] -= q * row[t];
            }
            done &= a[t][j] == 0;
        }
        if done {
            diag.push(a[t][t].abs());
            t += 1;
        }
    }
    // Pairwise gcd/lcm turns the diagonal into a divisibility chain.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = gcd(diag[i], diag[j]);
            let l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn rank_and_factors(m: Vec<Vec<i128>>) -> (usize, Vec<i128>) {
    let d = elementary_divisors(m);
    let torsion = d.iter().copied().filter(|&x| x > 1).collect();
    (d.len(), torsion)
}

/// Group homology of `Z/q` with integer coefficients through `top`, from
/// the normalized bar complex: `C_n` is spanned by `n`-tuples of nonzero
/// residues, `d[g_1|..|g_n] = [g_2|..] + Σ (-1)^i [..|g_i + g_{i+1}|..] + (-1)^n [..|g_{n-1}]`,
/// with tuples containing a zero dropped.
pub fn bar_homology(q: usize, top: usize) -> Vec<(usize, Vec<i128>)> {
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out.into_iter().flat_map(|t: Vec<usize>| (1..q).map(move |g| [t.clone(), vec![g]].concat())).collect();
        }
        out
    };
    let bases: Vec<Vec<Vec<usize>>> = (0..=top + 1).map(tuples).collect();
    let boundary = |n: usize| -> Vec<Vec<i128>> {
        let rows = &bases[n - 1];
        let index: HashMap<&Vec<usize>, usize> = rows.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut m = vec![vec![0i128; bases[n].len()]; rows.len()];
        for (c, t) in bases[n].iter().enumerate() {
            let mut add = |face: Vec<usize>, sign: i128| {
                if face.iter().all(|&g| g != 0) {
                    m[index[&face]][c] += sign;
                }
            };
            add(t[1..].to_vec(), 1);
            for i in 1..n {
                let mut face = t[..i - 1].to_vec();
                face.push((t[i - 1] + t[i]) % q);
                face.extend_from_slice(&t[i + 1..]);
                add(face, if i % 2 == 0 { 1 } else { -1 });
            }
            add(t[..n - 1].to_vec(), if n.is_multiple_of(2) { 1 } else { -1 });
        }
        m
    };
    let mut ranks_factors: Vec<(usize, Vec<i128>)> = vec![(0, Vec::new())];
    for n in 1..=top + 1 {
        ranks_factors.push(rank_and_factors(boundary(n)));
    }
    (0..=top).map(|n| (bases[n].len() - ranks_factors[n].0 - ranks_factors[n + 1].0, ranks_factors[n + 1].1.clone())).collect()
}

/// Determinant by fraction-free Gaussian elimination.
pub fn bareiss_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    bareiss_det(m).abs().is_one()
}

pub fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| i128::try_from(m.get(i, j)).expect("small entries")).collect()).collect()
}

/// The cellular chain complex of CP²: one cell in each even degree through 4.
pub fn cp2_complex() -> ChainComplex {
    let ranks = vec![1, 0, 1, 0, 1, 0];
    let boundaries = (1..ranks.len()).map(|k| SparseMatrix::zeros(ranks[k - 1], ranks[k])).collect();
    ChainComplex::from_boundaries(ranks, boundaries).unwrap()
}

/// The cellular chain complex of a wedge of `q` circles through degree 2.
pub fn circle_wedge_complex(q: usize) -> ChainComplex {
    let ranks = vec![1, q, 0, 0];
    let boundaries = (1..ranks.len()).map(|k| SparseMatrix::zeros(ranks[k - 1], ranks[k])).collect();
    ChainComplex::from_boundaries(ranks, boundaries).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, entry: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-entry..=entry)).collect()).collect();
    IntMatrix::from_rows(&data).unwrap()
}

/// Smith form postconditions: `U·A·V = D`, `D` diagonal and nonnegative
/// with `d_i | d_{i+1}`, `U` and `V` unimodular.
pub fn smith_postconditions(a: &IntMatrix) -> Result<(), String> {
    let s = dold_thom::homology::smith_normal_form(a);
    if s.u.mul(a).unwrap().mul(&s.v).unwrap() != s.d {
        return Err("U·A·V != D".into());
    }
    if !s.d.is_diagonal() {
        return Err("D is not diagonal".into());
    }
    let diag = s.d.diagonal();
    if diag.iter().any(|x| x.is_negative()) {
        return Err("negative diagonal entry".into());
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        if !ok {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    if !is_unimodular(&s.u) || !is_unimodular(&s.v) {
        return Err("transform is not unimodular".into());
    }
    let expected: Vec<i128> = elementary_divisors(to_i128(a));
    let computed: Vec<i128> = diag.iter().filter(|x| !x.is_zero()).map(|x| i128::try_from(x).unwrap()).collect();
    if expected != computed {
        return Err(format!("diagonal {computed:?}, oracle {expected:?}"));
    }
    Ok(())
}
