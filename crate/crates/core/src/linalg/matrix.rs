use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense row-major integer matrix used inside the elimination routines.
pub type Dense = Vec<Vec<BigInt>>;

/// Sparse integer matrix stored by columns; each column is a list of
/// `(row, value)` pairs with strictly increasing rows and nonzero values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (j, col) in m.columns.iter_mut().enumerate() {
            col.push((j, BigInt::one()));
        }
        m
    }

    /// Builds from columns of `(row, value)` pairs in any order; duplicate rows are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|(i, _)| *i);
                let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(c.len());
                for (i, v) in c {
                    assert!(i < rows, "row index {i} out of range {rows}");
                    match out.last_mut() {
                        Some((j, w)) if *j == i => *w += v,
                        _ => out.push((i, v)),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        IntMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &Dense) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (i, row) in dense.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[j].push((i, v.clone()));
                }
            }
        }
        IntMatrix { rows, cols, columns }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let dense: Dense = rows
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_dense(r, c, &dense)
    }

    /// The matrix whose columns are the given dense vectors.
    pub fn from_column_vectors(rows: usize, vectors: &[Vec<BigInt>]) -> Self {
        let columns = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), rows);
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, x.clone()))
                    .collect()
            })
            .collect();
        IntMatrix {
            rows,
            cols: vectors.len(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn column_dense(&self, j: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rows];
        for (i, x) in &self.columns[j] {
            v[*i] = x.clone();
        }
        v
    }

    pub fn columns_dense(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column_dense(j)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.columns[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(pos) => self.columns[j][pos].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Dense {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                columns[*i].push((j, v.clone()));
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc = vec![BigInt::zero(); self.rows];
                let mut touched = false;
                for (k, b) in col {
                    for (i, a) in &self.columns[*k] {
                        acc[*i] += a * b;
                        touched = true;
                    }
                }
                if !touched {
                    return Vec::new();
                }
                acc.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i] += a * &v[j];
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
            .collect();
        Ok(IntMatrix::from_columns(self.rows, columns))
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(|(i, v)| (*i, v * c)).collect())
            .collect();
        IntMatrix::from_columns(self.rows, columns)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            columns,
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        Ok(self.transpose().hstack(&other.transpose())?.transpose())
    }

    pub fn select_rows(&self, keep: &[usize]) -> IntMatrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (n, &i) in keep.iter().enumerate() {
            pos[i] = n;
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .filter(|(i, _)| pos[*i] != usize::MAX)
                    .map(|(i, v)| (pos[*i], v.clone()))
                    .collect()
            })
            .collect();
        IntMatrix::from_columns(keep.len(), columns)
    }

    pub fn select_columns(&self, keep: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: keep.len(),
            columns: keep.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.columns
            .iter()
            .flatten()
            .map(|(_, v)| v.abs())
            .max()
            .unwrap_or_default()
    }

    /// `|det|` via Smith invariants; `None` for non-square matrices.
    pub fn abs_det(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let inv = super::smith::invariant_factors(self);
        if inv.len() < self.rows {
            return Some(BigInt::zero());
        }
        Some(inv.iter().product())
    }

    pub fn is_unimodular(&self) -> bool {
        self.abs_det().is_some_and(|d| d.is_one())
    }

    pub fn rank(&self) -> usize {
        super::smith::invariant_factors(self).len()
    }

    /// Partition of rows and columns into connected components of the
    /// bipartite nonzero pattern. Zero columns and zero rows appear as
    /// singleton components on their own side.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        // union-find over rows (0..rows) and columns (rows..rows+cols)
        let n = self.rows + self.cols;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (j, col) in self.columns.iter().enumerate() {
            for (i, _) in col {
                let a = find(&mut parent, *i);
                let b = find(&mut parent, self.rows + j);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push((Vec::new(), Vec::new()));
            }
            let c = &mut out[slot[r]];
            if x < self.rows {
                c.0.push(x);
            } else {
                c.1.push(x - self.rows);
            }
        }
        out
    }
}

/// Connected components of `{0, …, n−1}` under the combined nonzero pattern
/// of several `n × n` matrices, reading row and column indices as the same
/// basis. Each operator is block diagonal for the resulting partition.
pub fn shared_components(n: usize, mats: &[&IntMatrix]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for m in mats {
        assert!(
            m.rows == n && m.cols == n,
            "shared_components needs square matrices of size {n}"
        );
        for (j, col) in m.columns.iter().enumerate() {
            for (i, _) in col {
                let (a, b) = (find(&mut parent, *i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(x);
    }
    out
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.to_dense();
        for row in d {
            let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut entries = Vec::with_capacity(self.nnz());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                entries.push((*i, j, v.to_string()));
            }
        }
        entries.sort();
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let mut columns = vec![Vec::new(); raw.cols];
        for (i, j, v) in raw.entries {
            if i >= raw.rows || j >= raw.cols {
                return Err(D::Error::custom(format!("entry ({i},{j}) out of range")));
            }
            let v: BigInt = v.parse().map_err(|_| D::Error::custom(format!("bad integer `{v}`")))?;
            columns[j].push((i, v));
        }
        Ok(IntMatrix::from_columns(raw.rows, columns))
    }
}

/// Dense helpers shared by the elimination routines.
pub(crate) fn dense_identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let m = IntMatrix::from_i64(&[&[1, 0, -2], &[0, 0, 5]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":3,"entries":[[0,0,"1"],[0,2,"-2"],[1,2,"5"]]}"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn products_and_transpose() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), IntMatrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose().get(0, 1), BigInt::from(3));
        assert!(a.mul(&IntMatrix::zeros(3, 1)).is_err());
        assert_eq!(
            a.mul_vec(&[BigInt::from(1), BigInt::from(-1)]),
            vec![BigInt::from(-1), BigInt::from(-1)]
        );
    }

    #[test]
    fn block_components() {
        let a = IntMatrix::from_i64(&[&[1, 0, 0], &[0, 2, 3], &[0, 0, 0]]);
        let comps = a.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], (vec![0], vec![0]));
        assert_eq!(comps[1], (vec![1], vec![1, 2]));
        assert_eq!(comps[2], (vec![2], vec![]));
    }
}
