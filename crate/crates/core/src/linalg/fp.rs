//! Linear algebra over 𝔽_p, with a bit-packed path for p = 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::matrix::IntMatrix;

pub fn reduce_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Dense matrix over 𝔽_p with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![vec![0; cols]; rows],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i][i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u64, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols);
        }
        FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data: rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x % p).collect())
                .collect(),
        }
    }

    /// Columns given as vectors.
    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i][j] = x % p;
            }
        }
        m
    }

    pub fn from_int(a: &IntMatrix, p: u64) -> Self {
        let mut m = Self::zeros(p, a.rows(), a.cols());
        for j in 0..a.cols() {
            for (i, v) in a.column(j) {
                m.data[*i][j] = reduce_mod(v, p);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i][j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        self.data.iter().map(|r| r[j]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.data[k][j];
                    if b != 0 {
                        out.data[i][j] = (out.data[i][j] + mul_mod(a, b, p)) % p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.p;
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + mul_mod(a, b, p)) % p)
            })
            .collect()
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect())
            .collect();
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i][c] != 0) else {
                continue;
            };
            self.data.swap(r, pr);
            let inv = inv_mod(self.data[r][c], p);
            for x in self.data[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.data[i][c];
                if f == 0 {
                    continue;
                }
                for (x, &y) in self.data[i].iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = (*x + p - mul_mod(f, y, p)) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.p == 2 {
            return BitMatrix::from_fp(self).rank();
        }
        self.rref().1.len()
    }

    /// Basis of `{v : A v = 0}`, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        if self.p == 2 {
            return BitMatrix::from_fp(self)
                .kernel()
                .into_iter()
                .map(|v| bits_to_vec(&v, self.cols))
                .collect();
        }
        let (r, pivots) = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = (p - r.data[i][f]) % p;
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `A x = b`, free variables zero.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.clone();
        for (i, row) in aug.data.iter_mut().enumerate() {
            row.push(b[i] % self.p);
        }
        aug.cols += 1;
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.data[i][self.cols];
        }
        Some(x)
    }
}

/// Rank of an integer matrix reduced mod `p`, computed block by block.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    a.components()
        .into_iter()
        .filter(|(r, c)| !r.is_empty() && !c.is_empty())
        .map(|(r, c)| FpMatrix::from_int(&a.select_rows(&r).select_columns(&c), p).rank())
        .sum()
}

/// A subspace of `𝔽_p^n` in reduced echelon form, with coordinates on the
/// complementary (non-pivot) unit vectors for quotient computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    p: u64,
    ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(p: u64, ambient: usize, vectors: &[Vec<u64>]) -> Self {
        let m = FpMatrix::from_rows(p, ambient, vectors.to_vec());
        let (r, pivots) = m.rref();
        let rows = r.data.into_iter().take(pivots.len()).collect();
        Subspace {
            p,
            ambient,
            rows,
            pivots,
        }
    }

    pub fn zero(p: u64, ambient: usize) -> Self {
        Self::span(p, ambient, &[])
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `v` minus its projection onto the span; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = w[c];
            if f != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    if y != 0 {
                        *x = (*x + p - mul_mod(f, y, p)) % p;
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vecs = self.rows.clone();
        vecs.extend(other.rows.iter().cloned());
        Subspace::span(self.p, self.ambient, &vecs)
    }

    /// Non-pivot positions: the unit vectors there span a complement.
    pub fn complement_positions(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of `v` modulo the subspace, in the complement basis.
    pub fn quotient_coordinates(&self, v: &[u64]) -> Vec<u64> {
        let w = self.reduce(v);
        self.complement_positions().into_iter().map(|c| w[c]).collect()
    }
}

/// Bit-packed 𝔽₂ matrix: row `i` is a little-endian bitset over the columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<Vec<u64>>,
}

pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

pub fn bits_to_vec(bits: &[u64], n: usize) -> Vec<u64> {
    (0..n).map(|i| (bits[i / 64] >> (i % 64)) & 1).collect()
}

pub fn vec_to_bits(v: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; words_for(v.len())];
    for (i, &x) in v.iter().enumerate() {
        if x & 1 == 1 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

impl BitMatrix {
    pub fn new(cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let w = words_for(cols);
        for r in &rows {
            assert_eq!(r.len(), w);
        }
        BitMatrix { cols, rows }
    }

    pub fn from_fp(m: &FpMatrix) -> Self {
        assert_eq!(m.p, 2);
        BitMatrix {
            cols: m.cols,
            rows: m.data.iter().map(|r| vec_to_bits(r)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn bit(row: &[u64], c: usize) -> bool {
        (row[c / 64] >> (c % 64)) & 1 == 1
    }

    /// In-place reduced echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        let n = self.rows.len();
        for c in 0..self.cols {
            if r == n {
                break;
            }
            let Some(pr) = (r..n).find(|&i| Self::bit(&self.rows[i], c)) else {
                continue;
            };
            self.rows.swap(r, pr);
            let (head, tail) = self.rows.split_at_mut(r);
            let (pivot, rest) = tail.split_first_mut().expect("row r exists");
            for row in head.iter_mut().chain(rest.iter_mut()) {
                if Self::bit(row, c) {
                    for (x, y) in row.iter_mut().zip(pivot.iter()) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Kernel basis as packed vectors, one per free column.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let w = words_for(self.cols);
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; w];
            v[f / 64] |= 1 << (f % 64);
            for (i, &c) in pivots.iter().enumerate() {
                if Self::bit(&m.rows[i], f) {
                    v[c / 64] |= 1 << (c % 64);
                }
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let two = FpMatrix::from_rows(2, 1, vec![vec![2]]);
        assert_eq!(two.rank(), 0);
        assert_eq!(FpMatrix::identity(2, 5).rank(), 5);
        let ones = FpMatrix::from_rows(2, 2, vec![vec![1, 1]]);
        assert_eq!(ones.kernel(), vec![vec![1, 1]]);
        let ones3 = FpMatrix::from_rows(3, 2, vec![vec![1, 1]]);
        assert_eq!(ones3.kernel(), vec![vec![2, 1]]);
    }

    #[test]
    fn solve_and_subspace() {
        let a = FpMatrix::from_rows(5, 2, vec![vec![1, 2], vec![0, 3]]);
        let x = a.solve(&[4, 1]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![4, 1]);
        let b = FpMatrix::from_rows(5, 2, vec![vec![1, 2], vec![2, 4]]);
        assert!(b.solve(&[1, 1]).is_none());
        let s = Subspace::span(3, 3, &[vec![1, 1, 0], vec![2, 2, 0]]);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[2, 2, 0]));
        assert_eq!(s.complement_positions(), vec![1, 2]);
        assert_eq!(s.quotient_coordinates(&[1, 1, 0]), vec![0, 0]);
    }

    #[test]
    fn packed_kernel_matches_dense() {
        let rows = vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![1, 1, 0, 1]];
        let m = FpMatrix::from_rows(2, 4, rows);
        let k = m.kernel();
        assert_eq!(k.len(), 4 - m.rank());
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }
}
