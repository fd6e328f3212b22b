use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{dense_identity, Dense, IntMatrix};
use crate::error::{Error, Result};

/// `U·A·V = S` with `S` diagonal, `d_1 | d_2 | ⋯` nonnegative, and `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// The `min(rows, cols)` diagonal entries of `S`; zeros come last.
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn s(&self) -> IntMatrix {
        let cols = (0..self.cols)
            .map(|j| match self.diagonal.get(j) {
                Some(d) if !d.is_zero() => vec![(j, d.clone())],
                _ => Vec::new(),
            })
            .collect();
        IntMatrix::from_columns(self.rows, cols)
    }

    /// Nonzero invariant factors other than 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

/// Full Smith form with transforms, re-verified before returning.
pub fn smith(a: &IntMatrix) -> SmithForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut work = DenseSmith::new(a.to_dense(), rows, cols, true);
    work.run();
    let t = work.transforms.take().expect("tracking enabled");
    let diagonal: Vec<BigInt> = (0..rows.min(cols)).map(|i| work.m[i][i].clone()).collect();
    let form = SmithForm {
        diagonal,
        u: IntMatrix::from_dense(rows, rows, &t.u),
        u_inv: IntMatrix::from_dense(rows, rows, &t.u_inv),
        v: IntMatrix::from_dense(cols, cols, &t.v),
        v_inv: IntMatrix::from_dense(cols, cols, &t.v_inv),
        rows,
        cols,
    };
    if let Err(e) = verify_smith(a, &form) {
        panic!("Smith form self-check failed: {e}");
    }
    form
}

pub fn verify_smith(a: &IntMatrix, f: &SmithForm) -> Result<()> {
    let uav = f.u.mul(a)?.mul(&f.v)?;
    if uav != f.s() {
        return Err(Error::Internal("U·A·V differs from S".into()));
    }
    let n = f.diagonal.iter().take_while(|d| !d.is_zero()).count();
    if f.diagonal[n..].iter().any(|d| !d.is_zero()) {
        return Err(Error::Internal("zero invariant factor before a nonzero one".into()));
    }
    for w in f.diagonal[..n].windows(2) {
        if !(&w[1] % &w[0]).is_zero() || w[0].is_negative() {
            return Err(Error::Internal("divisibility chain broken".into()));
        }
    }
    let ru = f.u.mul(&f.u_inv)?;
    let rv = f.v.mul(&f.v_inv)?;
    if ru != IntMatrix::identity(f.rows) || rv != IntMatrix::identity(f.cols) {
        return Err(Error::Internal("transform inverses are wrong".into()));
    }
    Ok(())
}

/// Nonzero invariant factors of `a` in divisibility order (its length is the rank).
///
/// Splits into connected blocks, eliminates unit pivots sparsely and finishes
/// each block with a dense reduction.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut diag = Vec::new();
    for (rows, cols) in a.components() {
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let block = a.select_rows(&rows).select_columns(&cols);
        diag.extend(block_diagonal_entries(&block));
    }
    normalize_chain(diag)
}

fn block_diagonal_entries(a: &IntMatrix) -> Vec<BigInt> {
    let mut sparse = SparseElim::new(a);
    let mut out = sparse.eliminate_units();
    let (rest, r, c) = sparse.remainder();
    if r > 0 && c > 0 {
        let mut work = DenseSmith::new(rest, r, c, false);
        work.run();
        for i in 0..r.min(c) {
            if !work.m[i][i].is_zero() {
                out.push(work.m[i][i].abs());
            }
        }
    }
    out
}

/// Turns any list of nonzero diagonal entries into the invariant factor chain.
pub fn normalize_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for x in d.iter_mut() {
        *x = x.abs();
    }
    d.retain(|x| !x.is_zero());
    d.sort();
    let n = d.len();
    // pairwise (gcd, lcm) replacement converges to the chain
    for i in 0..n {
        if d[i].is_one() {
            continue;
        }
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d.sort();
    d
}

struct Transforms {
    u: Dense,
    u_inv: Dense,
    v: Dense,
    v_inv: Dense,
}

struct DenseSmith {
    m: Dense,
    rows: usize,
    cols: usize,
    transforms: Option<Transforms>,
}

impl DenseSmith {
    fn new(m: Dense, rows: usize, cols: usize, track: bool) -> Self {
        let transforms = track.then(|| Transforms {
            u: dense_identity(rows),
            u_inv: dense_identity(rows),
            v: dense_identity(cols),
            v_inv: dense_identity(cols),
        });
        DenseSmith {
            m,
            rows,
            cols,
            transforms,
        }
    }

    // row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        let (a, b) = two_rows(&mut self.m, i, t);
        axpy(a, b, q);
        if let Some(tr) = self.transforms.as_mut() {
            let (a, b) = two_rows(&mut tr.u, i, t);
            axpy(a, b, q);
            // inverse: column_t of U⁻¹ += q * column_i
            for row in tr.u_inv.iter_mut() {
                if !row[i].is_zero() {
                    let add = &row[i] * q;
                    row[t] += add;
                }
            }
        }
    }

    // col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in self.m.iter_mut() {
            if !row[t].is_zero() {
                let sub = &row[t] * q;
                row[j] -= sub;
            }
        }
        if let Some(tr) = self.transforms.as_mut() {
            for row in tr.v.iter_mut() {
                if !row[t].is_zero() {
                    let sub = &row[t] * q;
                    row[j] -= sub;
                }
            }
            // inverse: row_t of V⁻¹ += q * row_j
            let (a, b) = two_rows(&mut tr.v_inv, t, j);
            axpy(a, b, &-q);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap(i, j);
        if let Some(tr) = self.transforms.as_mut() {
            tr.u.swap(i, j);
            for row in tr.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.m.iter_mut() {
            row.swap(i, j);
        }
        if let Some(tr) = self.transforms.as_mut() {
            for row in tr.v.iter_mut() {
                row.swap(i, j);
            }
            tr.v_inv.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.m[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(tr) = self.transforms.as_mut() {
            for x in tr.u[i].iter_mut() {
                *x = -std::mem::take(x);
            }
            for row in tr.u_inv.iter_mut() {
                row[i] = -std::mem::take(&mut row[i]);
            }
        }
    }

    /// Smallest |entry| in the trailing block, first in row-major order among ties.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.m[i][j];
                if v.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((_, _, b)) => v.magnitude() < b.magnitude(),
                };
                if better {
                    best = Some((i, j, v));
                    if v.magnitude().is_one() {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.m[i][t].is_zero() {
                        let q = self.m[i][t].div_floor(&self.m[t][t]);
                        self.row_sub(i, t, &q);
                        if !self.m[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if !self.m[t][j].is_zero() {
                        let q = self.m[t][j].div_floor(&self.m[t][t]);
                        self.col_sub(j, t, &q);
                        if !self.m[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // move the smallest remainder in row t or column t to the pivot
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        let v = &self.m[i][t];
                        if !v.is_zero() && v.magnitude() < self.m[best.0][best.1].magnitude() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        let v = &self.m[t][j];
                        if !v.is_zero() && v.magnitude() < self.m[best.0][best.1].magnitude() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let p = self.m[t][t].clone();
                let bad = (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !(&self.m[i][j] % &p).is_zero()));
                match bad {
                    Some(i) => self.row_sub(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.m[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn two_rows(m: &mut Dense, i: usize, t: usize) -> (&mut Vec<BigInt>, &Vec<BigInt>) {
    assert_ne!(i, t);
    if i < t {
        let (lo, hi) = m.split_at_mut(t);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&mut hi[0], &lo[t])
    }
}

// a -= q * b
fn axpy(a: &mut [BigInt], b: &[BigInt], q: &BigInt) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x -= y * q;
        }
    }
}

/// Sparse Schur-complement elimination on ±1 pivots (Markowitz order).
struct SparseElim {
    rows: Vec<Option<BTreeMap<usize, BigInt>>>,
    col_rows: Vec<BTreeSet<usize>>,
    col_alive: Vec<bool>,
}

impl SparseElim {
    fn new(a: &IntMatrix) -> Self {
        let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); a.rows()];
        let mut col_rows = vec![BTreeSet::new(); a.cols()];
        for j in 0..a.cols() {
            for (i, v) in a.column(j) {
                rows[*i].insert(j, v.clone());
                col_rows[j].insert(*i);
            }
        }
        SparseElim {
            rows: rows.into_iter().map(Some).collect(),
            col_rows,
            col_alive: vec![true; a.cols()],
        }
    }

    fn pick_unit(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let Some(row) = row else { continue };
            let rl = row.len() - usize::from(!row.is_empty());
            for (&j, v) in row {
                if !v.magnitude().is_one() {
                    continue;
                }
                let cost = rl * (self.col_rows[j].len() - 1);
                if best.is_none_or(|(c, _, _)| cost < c) {
                    best = Some((cost, i, j));
                    if cost == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn eliminate_units(&mut self) -> Vec<BigInt> {
        let mut out = Vec::new();
        while let Some((p, q)) = self.pick_unit() {
            let pivot_row = self.rows[p].take().expect("alive row");
            let u = pivot_row[&q].clone();
            let others: Vec<usize> = self.col_rows[q].iter().copied().filter(|&r| r != p).collect();
            for r in others {
                let row = self.rows[r].as_mut().expect("alive row");
                let f = &row[&q] * &u;
                for (&c, v) in &pivot_row {
                    let entry = row.entry(c).or_default();
                    *entry -= &f * v;
                    if entry.is_zero() {
                        row.remove(&c);
                        self.col_rows[c].remove(&r);
                    } else {
                        self.col_rows[c].insert(r);
                    }
                }
            }
            for &c in pivot_row.keys() {
                self.col_rows[c].remove(&p);
            }
            self.col_alive[q] = false;
            self.col_rows[q].clear();
            out.push(BigInt::one());
        }
        out
    }

    fn remainder(&self) -> (Dense, usize, usize) {
        let live_rows: Vec<usize> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.as_ref().is_some_and(|r| !r.is_empty()))
            .map(|(i, _)| i)
            .collect();
        let live_cols: Vec<usize> = (0..self.col_rows.len())
            .filter(|&j| self.col_alive[j] && !self.col_rows[j].is_empty())
            .collect();
        let mut pos = vec![usize::MAX; self.col_rows.len()];
        for (n, &j) in live_cols.iter().enumerate() {
            pos[j] = n;
        }
        let dense = live_rows
            .iter()
            .map(|&i| {
                let mut row = vec![BigInt::zero(); live_cols.len()];
                for (&j, v) in self.rows[i].as_ref().unwrap() {
                    row[pos[j]] = v.clone();
                }
                row
            })
            .collect();
        (dense, live_rows.len(), live_cols.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_two_three() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith(&a).diagonal, ints(&[1, 6]));
        assert_eq!(invariant_factors(&a), ints(&[1, 6]));
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zeros(3, 2);
        assert_eq!(smith(&z).diagonal, ints(&[0, 0]));
        assert!(invariant_factors(&z).is_empty());
        let i = IntMatrix::identity(4);
        assert_eq!(smith(&i).diagonal, ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn chain_from_unsorted() {
        assert_eq!(normalize_chain(ints(&[4, 6, 0, -3])), ints(&[1, 6, 12]));
    }

    #[test]
    fn dense_and_sparse_agree() {
        let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.diagonal, ints(&[2, 6, 12]));
        assert_eq!(invariant_factors(&a), ints(&[2, 6, 12]));
    }
}
