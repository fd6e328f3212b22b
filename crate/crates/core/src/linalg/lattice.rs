use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::abelian::{cokernel, AbelianInvariants};
use super::matrix::{Dense, IntMatrix};
use super::smith::{invariant_factors, smith};
use crate::error::{Error, Result};

/// Row-style Hermite reduction of the generators.
///
/// Pivot columns strictly increase, pivots are positive, and entries above a
/// pivot lie in `[0, pivot)`. Only the first `limit` columns are used as
/// pivot columns; the returned count is the number of nonzero rows in that
/// range, and any rows after it have zeros in the first `limit` columns.
fn echelonize(m: &mut Dense, limit: usize, reduce_above: bool) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == nrows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if !m[i][c].is_zero() && best.is_none_or(|b| m[i][c].magnitude() < m[b][c].magnitude()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut clean = true;
            for i in r + 1..nrows {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    row_sub(m, i, r, &q);
                    if !m[i][c].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if r < nrows && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            if reduce_above {
                for i in 0..r {
                    if !m[i][c].is_zero() {
                        let q = m[i][c].div_floor(&m[r][c]);
                        row_sub(m, i, r, &q);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    pivots
}

fn row_sub(m: &mut Dense, i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[t].clone();
    for (x, y) in m[i].iter_mut().zip(&src) {
        if !y.is_zero() {
            *x -= y * q;
        }
    }
}

/// Canonical Hermite basis of the lattice spanned by `gens` in `ℤ^ncols`.
pub fn hnf_rows(gens: &[Vec<BigInt>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Dense = gens.to_vec();
    for row in &m {
        assert_eq!(row.len(), ncols);
    }
    let pivots = echelonize(&mut m, ncols, true);
    m.truncate(pivots.len());
    (m, pivots)
}

/// Basis of the saturated kernel `{v ∈ ℤ^cols : A v = 0}` in Hermite form.
pub fn kernel_lattice(a: &IntMatrix) -> Lattice {
    let n = a.cols();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for (rows, cols) in a.components() {
        if cols.is_empty() {
            continue;
        }
        if rows.is_empty() {
            for &j in &cols {
                let mut v = vec![BigInt::zero(); n];
                v[j] = BigInt::one();
                gens.push(v);
            }
            continue;
        }
        let block = a.select_rows(&rows).select_columns(&cols);
        let (br, bc) = (rows.len(), cols.len());
        // rows of [Bᵀ | I]
        let bt = block.transpose().to_dense();
        let mut aug: Dense = bt
            .into_iter()
            .enumerate()
            .map(|(j, mut row)| {
                row.extend((0..bc).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
                row
            })
            .collect();
        let rank = echelonize(&mut aug, br, false).len();
        for row in aug.into_iter().skip(rank) {
            debug_assert!(row[..br].iter().all(Zero::is_zero));
            let mut v = vec![BigInt::zero(); n];
            for (k, x) in row.into_iter().skip(br).enumerate() {
                v[cols[k]] = x;
            }
            gens.push(v);
        }
    }
    Lattice::from_generators(n, &gens)
}

/// A sublattice of `ℤ^n` held in canonical Hermite form; equality of lattices
/// is equality of these bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                (0..ambient)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Lattice {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Self {
        let (basis, pivots) = hnf_rows(gens, ambient);
        Lattice { ambient, basis, pivots }
    }

    /// Column span of `a`.
    pub fn column_span(a: &IntMatrix) -> Self {
        Self::from_generators(a.rows(), &a.columns_dense())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient × rank` matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_column_vectors(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the Hermite basis, or `None` if `v ∉ L`.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rest[c].div_rem(&row[c]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, y) in rest.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= y * &q;
                    }
                }
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Lattice::from_generators(self.ambient, &gens)
    }

    /// `ℤ^n / L` is torsion-free.
    pub fn is_saturated(&self) -> bool {
        invariant_factors(&self.basis_matrix()).iter().all(One::is_one)
    }

    /// `(L ⊗ ℚ) ∩ ℤ^n`.
    pub fn saturation(&self) -> Lattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        let rows = IntMatrix::from_column_vectors(self.ambient, &self.basis).transpose();
        let annihilator = kernel_lattice(&rows);
        if annihilator.rank() == 0 {
            return Lattice::full(self.ambient);
        }
        let ann = IntMatrix::from_column_vectors(self.ambient, &annihilator.basis).transpose();
        kernel_lattice(&ann)
    }

    /// The lattice spanned by `a·v` for `v` in this lattice.
    pub fn image(&self, a: &IntMatrix) -> Lattice {
        let gens: Vec<Vec<BigInt>> = self.basis.iter().map(|v| a.mul_vec(v)).collect();
        Lattice::from_generators(a.rows(), &gens)
    }

    /// `{x ∈ ℤ^cols : a·x ∈ target}`.
    pub fn preimage(a: &IntMatrix, target: &Lattice) -> Lattice {
        let n = a.cols();
        let b = target.basis_matrix().scale(&BigInt::from(-1));
        let joint = a.hstack(&b).expect("row counts agree");
        let k = kernel_lattice(&joint);
        let gens: Vec<Vec<BigInt>> = k.basis.iter().map(|v| v[..n].to_vec()).collect();
        Lattice::from_generators(n, &gens)
    }

    /// `self / sub` as an abelian group; `sub` must be contained in `self`.
    pub fn quotient_invariants(&self, sub: &Lattice) -> Result<AbelianInvariants> {
        let c = self.coordinate_matrix(sub)?;
        Ok(cokernel(&c))
    }

    /// Coordinates of the generators of `sub` in this basis (as columns).
    pub fn coordinate_matrix(&self, sub: &Lattice) -> Result<IntMatrix> {
        self.coordinate_matrix_of(&sub.basis)
    }

    pub fn coordinate_matrix_of(&self, vectors: &[Vec<BigInt>]) -> Result<IntMatrix> {
        let mut cols = Vec::with_capacity(vectors.len());
        for v in vectors {
            let c = self
                .coordinates(v)
                .ok_or_else(|| Error::NoSolution("vector outside the lattice".into()))?;
            cols.push(c);
        }
        Ok(IntMatrix::from_column_vectors(self.rank(), &cols))
    }

    /// Free quotient `self / sub` with an explicit basis; `sub` must be
    /// contained and saturated in `self`.
    pub fn free_quotient(&self, sub: &Lattice) -> Result<FreeQuotient> {
        let c = self.coordinate_matrix(sub)?;
        let m = self.rank();
        let l = sub.rank();
        let (proj, reps_coords) = if l == 0 {
            (IntMatrix::identity(m), IntMatrix::identity(m))
        } else {
            let f = smith(&c);
            if f.diagonal.iter().any(|d| !d.is_one()) {
                return Err(Error::InvalidArgument(
                    "sublattice is not saturated in the ambient lattice".into(),
                ));
            }
            let keep: Vec<usize> = (l..m).collect();
            (f.u.select_rows(&keep), f.u_inv.select_columns(&keep))
        };
        let big = self.basis_matrix();
        let reps = big.mul(&reps_coords)?.columns_dense();
        Ok(FreeQuotient {
            lattice: self.clone(),
            proj,
            reps,
        })
    }
}

/// A free quotient `M / L` with representatives of a basis and the
/// coordinate projection `M → ℤ^{rank M − rank L}`.
#[derive(Debug, Clone)]
pub struct FreeQuotient {
    lattice: Lattice,
    proj: IntMatrix,
    reps: Vec<Vec<BigInt>>,
}

impl FreeQuotient {
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    /// Ambient vectors lifting the quotient basis.
    pub fn representatives(&self) -> &[Vec<BigInt>] {
        &self.reps
    }

    /// Quotient coordinates of `v ∈ M`.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.lattice.coordinates(v)?;
        Some(self.proj.mul_vec(&c))
    }
}

/// Integral solver `A x = b` built from per-block Smith forms.
pub struct Solver {
    rows: usize,
    cols: usize,
    blocks: Vec<SolverBlock>,
    dead_rows: Vec<usize>,
}

struct SolverBlock {
    rows: Vec<usize>,
    cols: Vec<usize>,
    form: super::smith::SmithForm,
}

impl Solver {
    pub fn new(a: &IntMatrix) -> Self {
        let mut blocks = Vec::new();
        let mut dead_rows = Vec::new();
        for (rows, cols) in a.components() {
            if cols.is_empty() {
                dead_rows.extend(rows);
                continue;
            }
            if rows.is_empty() {
                continue;
            }
            let block = a.select_rows(&rows).select_columns(&cols);
            blocks.push(SolverBlock {
                form: smith(&block),
                rows,
                cols,
            });
        }
        Solver {
            rows: a.rows(),
            cols: a.cols(),
            blocks,
            dead_rows,
        }
    }

    /// The preimage with all free Smith coordinates set to zero.
    pub fn solve(&self, b: &[BigInt]) -> Result<Vec<BigInt>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "target of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        if self.dead_rows.iter().any(|&i| !b[i].is_zero()) {
            return Err(Error::NoSolution("target has support on zero rows".into()));
        }
        let mut x = vec![BigInt::zero(); self.cols];
        for blk in &self.blocks {
            let bi: Vec<BigInt> = blk.rows.iter().map(|&i| b[i].clone()).collect();
            if bi.iter().all(Zero::is_zero) {
                continue;
            }
            let ub = blk.form.u.mul_vec(&bi);
            let mut y = vec![BigInt::zero(); blk.cols.len()];
            for (i, v) in ub.iter().enumerate() {
                let d = blk.form.diagonal.get(i).cloned().unwrap_or_default();
                if d.is_zero() {
                    if !v.is_zero() {
                        return Err(Error::NoSolution("target outside the rational image".into()));
                    }
                } else {
                    let (q, r) = v.div_rem(&d);
                    if !r.is_zero() {
                        return Err(Error::NoSolution(format!(
                            "target in the rational image but not divisible by invariant factor {d}"
                        )));
                    }
                    y[i] = q;
                }
            }
            let xb = blk.form.v.mul_vec(&y);
            for (k, v) in xb.into_iter().enumerate() {
                x[blk.cols[k]] = v;
            }
        }
        Ok(x)
    }
}

pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigInt>> {
    Solver::new(a).solve(b)
}

/// A matrix `X` with `A·X = I` for surjective `A`.
pub fn right_inverse(a: &IntMatrix) -> Result<IntMatrix> {
    let s = Solver::new(a);
    let mut cols = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut e = vec![BigInt::zero(); a.rows()];
        e[i] = BigInt::one();
        cols.push(s.solve(&e)?);
    }
    Ok(IntMatrix::from_column_vectors(a.cols(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_lattice(&IntMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.basis(), &[ints(&[1, -1])]);
        assert_eq!(kernel_lattice(&IntMatrix::from_i64(&[&[2]])).rank(), 0);
        assert_eq!(kernel_lattice(&IntMatrix::identity(3)).rank(), 0);
        let k = kernel_lattice(&IntMatrix::from_i64(&[&[2, 4, 0]]));
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&ints(&[2, -1, 0])));
        assert!(k.is_saturated());
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_i64(&[&[2]]);
        assert_eq!(solve(&a, &ints(&[4])).unwrap(), ints(&[2]));
        assert!(matches!(solve(&a, &ints(&[3])), Err(Error::NoSolution(_))));
        let a = IntMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(solve(&a, &ints(&[1])).unwrap(), ints(&[1, 0]));
        let x = right_inverse(&IntMatrix::from_i64(&[&[2, 3]])).unwrap();
        assert_eq!(IntMatrix::from_i64(&[&[2, 3]]).mul(&x).unwrap(), IntMatrix::identity(1));
    }

    #[test]
    fn saturation_and_quotients() {
        let l = Lattice::from_generators(2, &[ints(&[2, 4])]);
        assert!(!l.is_saturated());
        assert_eq!(l.saturation(), Lattice::from_generators(2, &[ints(&[1, 2])]));
        let full = Lattice::full(2);
        assert_eq!(
            full.quotient_invariants(&l).unwrap(),
            AbelianInvariants::from_cyclic(1, [BigInt::from(2)])
        );
        let q = full.free_quotient(&l.saturation()).unwrap();
        assert_eq!(q.rank(), 1);
        let rep = &q.representatives()[0];
        assert_eq!(q.coordinates(rep).unwrap(), ints(&[1]));
        assert_eq!(q.coordinates(&ints(&[1, 2])).unwrap(), ints(&[0]));
    }

    #[test]
    fn preimage_of_lattice() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        let target = Lattice::from_generators(2, &[ints(&[4, 0]), ints(&[0, 1])]);
        let pre = Lattice::preimage(&a, &target);
        assert_eq!(pre, Lattice::from_generators(2, &[ints(&[2, 0]), ints(&[0, 1])]));
    }
}
