use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Basis, LinearMap, Space};
use crate::linalg::fp::{bits_to_vec, words_for};
use crate::linalg::{BitMatrix, FpMatrix, Subspace};

/// Determinant modulo `p` by elimination.
fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| m[r][c] % p != 0) else {
            return 0;
        };
        if r != c {
            m.swap(r, c);
            det = (p - det) % p;
        }
        let pivot = m[c][c] % p;
        det = det * pivot % p;
        let inv = pow_mod(pivot, p - 2, p);
        for r in c + 1..n {
            let f = m[r][c] % p * inv % p;
            if f != 0 {
                for j in c..n {
                    m[r][j] = (m[r][j] + p * p - f * m[c][j] % p) % p;
                }
            }
        }
    }
    det
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// The induced action of `a` (columns are images of `e^1, …, e^{2g}`) on
/// `Λ^k` in the monomial basis: entries are `k × k` minors.
pub fn exterior_power_action(a: &FpMatrix, space: Space, k: usize) -> FpMatrix {
    let basis = Basis::degree(space, k as i64);
    let idx: Vec<Vec<usize>> = basis
        .monomials()
        .iter()
        .map(|m| m.indices().map(|i| i - 1).collect())
        .collect();
    let n = idx.len();
    let mut out = FpMatrix::zeros(a.p(), n, n);
    for (col, s) in idx.iter().enumerate() {
        for (row, t) in idx.iter().enumerate() {
            let minor: Vec<Vec<u64>> = t.iter().map(|&i| s.iter().map(|&j| a.get(i, j)).collect()).collect();
            out.set(row, col, det_mod(minor, a.p()));
        }
    }
    out
}

/// All symplectic transvections `x ↦ x + ω(x, v) v` of `𝔽₂^{2g}`, `v ≠ 0`,
/// in the order of `v` read as a binary number (bit `i` is coordinate `i + 1`).
pub fn f2_transvections(g: usize) -> Vec<FpMatrix> {
    (1u64..1 << (2 * g))
        .map(|bits| {
            let v: Vec<BigInt> = (0..2 * g).map(|i| BigInt::from(bits >> i & 1)).collect();
            FpMatrix::from_int(&LinearMap::transvection(g, &v).matrix, 2)
        })
        .collect()
}

/// A finite-dimensional `𝔽_p`-module with one matrix per group generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpModule {
    pub name: String,
    pub p: u64,
    pub dim: usize,
    pub actions: Vec<FpMatrix>,
}

impl FpModule {
    pub fn new(name: impl Into<String>, p: u64, dim: usize, actions: Vec<FpMatrix>) -> Result<Self> {
        let name = name.into();
        for a in &actions {
            if a.rows() != dim || a.cols() != dim || a.p() != p {
                return Err(Error::InvalidArgument(format!("{name}: action of the wrong shape")));
            }
        }
        Ok(FpModule { name, p, dim, actions })
    }

    pub fn trivial(name: impl Into<String>, p: u64, dim: usize, generators: usize) -> Self {
        FpModule {
            name: name.into(),
            p,
            dim,
            actions: vec![FpMatrix::identity(p, dim); generators],
        }
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        if self.p != other.p || self.actions.len() != other.actions.len() {
            return Err(Error::InvalidArgument("direct sum of incompatible modules".into()));
        }
        let n = self.dim + other.dim;
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut m = FpMatrix::zeros(self.p, n, n);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(FpModule {
            name: format!("{} ⊕ {}", self.name, other.name),
            p: self.p,
            dim: n,
            actions,
        })
    }
}

/// `A/B` for subspaces `B ⊂ A` of an ambient `𝔽_p^n`.
#[derive(Debug, Clone)]
pub struct Subquotient {
    a: Subspace,
    b: Subspace,
    /// `A` in the complement coordinates of `B`.
    image: Subspace,
    reps: Vec<Vec<u64>>,
}

impl Subquotient {
    pub fn new(a: &Subspace, b: &Subspace) -> Result<Self> {
        if !a.contains_subspace(b) {
            return Err(Error::InvalidArgument("subquotient A/B needs B ⊂ A".into()));
        }
        let q: Vec<Vec<u64>> = a.basis().iter().map(|v| b.quotient_coordinates(v)).collect();
        let image = Subspace::span(a.p(), a.ambient() - b.dim(), &q);
        let positions = b.complement_positions();
        let reps = image
            .basis()
            .iter()
            .map(|w| {
                let mut v = vec![0u64; a.ambient()];
                for (&c, &x) in positions.iter().zip(w) {
                    v[c] = x;
                }
                v
            })
            .collect();
        Ok(Subquotient {
            a: a.clone(),
            b: b.clone(),
            image,
            reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.image.dim()
    }

    /// Lifts to the ambient space of the basis of `A/B`.
    pub fn representatives(&self) -> &[Vec<u64>] {
        &self.reps
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.a.contains(v)
    }

    /// Coordinates of `v ∈ A` modulo `B`; `None` when `v ∉ A`.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let q = self.b.quotient_coordinates(v);
        if !self.image.contains(&q) {
            return None;
        }
        Some(self.image.pivots().iter().map(|&c| q[c]).collect())
    }

    /// The module `A/B` for an ambient action; fails unless `A` and `B` are invariant.
    pub fn module(&self, name: impl Into<String>, ambient: &[FpMatrix]) -> Result<FpModule> {
        let name = name.into();
        let p = self.a.p();
        let mut actions = Vec::with_capacity(ambient.len());
        for (t, m) in ambient.iter().enumerate() {
            if !self.b.basis().iter().all(|v| self.b.contains(&m.mul_vec(v))) {
                return Err(Error::violation(
                    "invariant subspace",
                    format!("{name}: generator {t} moves the denominator"),
                ));
            }
            let cols = self
                .reps
                .iter()
                .map(|r| self.coordinates(&m.mul_vec(r)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| {
                    Error::violation(
                        "invariant subspace",
                        format!("{name}: generator {t} moves the numerator"),
                    )
                })?;
            actions.push(FpMatrix::from_columns(p, self.dim(), &cols));
        }
        FpModule::new(name, p, self.dim(), actions)
    }
}

/// Incrementally reduced rows over `𝔽₂`, each with its leading bit as pivot.
struct Echelon {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    fn insert(&mut self, mut v: Vec<u64>) {
        for c in 0..self.cols {
            if v[c / 64] >> (c % 64) & 1 == 0 {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    for (x, y) in v.iter_mut().zip(&self.rows[r]) {
                        *x ^= y;
                    }
                }
                None => {
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(v);
                    return;
                }
            }
        }
    }

    fn nullity(&self) -> usize {
        self.cols - self.rows.len()
    }

    fn kernel(&self) -> Vec<Vec<u64>> {
        BitMatrix::new(self.cols, self.rows.clone()).kernel()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomSpace {
    pub source: String,
    pub target: String,
    pub dim: usize,
    /// Generators whose commutation equations were stacked before the solution stabilised.
    pub generators_used: usize,
    /// Every basis element commutes with every generator.
    pub verified: bool,
    #[serde(skip)]
    pub basis: Vec<FpMatrix>,
}

/// Rounds without a drop in nullity before a candidate basis is checked.
const STABLE_ROUNDS: usize = 6;

/// `{M : M ρ_source(t) = ρ_target(t) M for every generator t}` over `𝔽₂`.
pub fn equivariant_hom_space(source: &FpModule, target: &FpModule) -> Result<HomSpace> {
    if source.p != 2 || target.p != 2 {
        return Err(Error::InvalidArgument(
            "equivariant hom spaces are solved over 𝔽₂ only".into(),
        ));
    }
    if source.actions.len() != target.actions.len() {
        return Err(Error::InvalidArgument("modules carry different generator lists".into()));
    }
    let (m, n) = (target.dim, source.dim);
    let unknowns = m * n;
    let words = words_for(unknowns);
    let var = |i: usize, j: usize| i * n + j;
    let mut echelon = Echelon::new(unknowns);
    let mut used = vec![false; source.actions.len()];
    let add = |echelon: &mut Echelon, t: usize| {
        let (s, r) = (&source.actions[t], &target.actions[t]);
        for i in 0..m {
            for l in 0..n {
                let mut row = vec![0u64; words];
                for j in 0..n {
                    if s.get(j, l) == 1 {
                        row[var(i, j) / 64] ^= 1 << (var(i, j) % 64);
                    }
                }
                for k in 0..m {
                    if r.get(i, k) == 1 {
                        row[var(k, l) / 64] ^= 1 << (var(k, l) % 64);
                    }
                }
                echelon.insert(row);
            }
        }
    };
    let to_matrix = |bits: &[u64]| {
        let v = bits_to_vec(bits, unknowns);
        FpMatrix::from_rows(2, n, v.chunks(n.max(1)).map(<[u64]>::to_vec).collect())
    };
    let commutes = |b: &FpMatrix, t: usize| b.mul(&source.actions[t]) == target.actions[t].mul(b);
    let mut stable = 0;
    let mut last = echelon.nullity();
    let mut t = 0;
    loop {
        while t < used.len() && stable < STABLE_ROUNDS {
            add(&mut echelon, t);
            used[t] = true;
            t += 1;
            if echelon.nullity() < last {
                last = echelon.nullity();
                stable = 0;
            } else {
                stable += 1;
            }
        }
        let basis: Vec<FpMatrix> = echelon.kernel().iter().map(|b| to_matrix(b)).collect();
        let failing = (0..used.len()).find(|&u| !used[u] && basis.iter().any(|b| !commutes(b, u)));
        match failing {
            Some(u) => {
                add(&mut echelon, u);
                used[u] = true;
                last = echelon.nullity();
                stable = 0;
            }
            None => {
                let verified = (0..used.len()).all(|u| basis.iter().all(|b| commutes(b, u)));
                return Ok(HomSpace {
                    source: source.name.clone(),
                    target: target.name.clone(),
                    dim: basis.len(),
                    generators_used: used.iter().filter(|&&x| x).count(),
                    verified,
                    basis,
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{degree_matrix, Operator};

    #[test]
    fn minors_match_pushforward() {
        let g = 2;
        let s = Space::symplectic(g);
        let v: Vec<BigInt> = [1, 0, 1, 1].iter().map(|&x| BigInt::from(x)).collect();
        let map = LinearMap::transvection(g, &v);
        let a = FpMatrix::from_int(&map.matrix, 2);
        for k in 0..=4 {
            let push = degree_matrix(&Operator::Pushforward(map.clone()), s, k, k).unwrap();
            assert_eq!(exterior_power_action(&a, s, k as usize), FpMatrix::from_int(&push, 2));
        }
    }

    #[test]
    fn transvections_commute_with_contraction() {
        let s = Space::symplectic(2);
        let w = FpMatrix::from_int(&degree_matrix(&Operator::ContractOmega(1), s, 3, 1).unwrap(), 2);
        let ts = f2_transvections(2);
        assert_eq!(ts.len(), 15);
        for t in &ts {
            let a3 = exterior_power_action(t, s, 3);
            let a1 = exterior_power_action(t, s, 1);
            assert_eq!(w.mul(&a3), a1.mul(&w));
        }
    }

    #[test]
    fn hom_spaces_small() {
        let s = Space::symplectic(2);
        let ts = f2_transvections(2);
        let l1 = FpModule::new("Λ¹", 2, 4, ts.iter().map(|t| exterior_power_action(t, s, 1)).collect()).unwrap();
        let triv = FpModule::trivial("𝔽₂", 2, 1, ts.len());
        let end = equivariant_hom_space(&l1, &l1).unwrap();
        assert!(end.verified);
        assert!(end.basis.contains(&FpMatrix::identity(2, 4)));
        assert_eq!(end.dim, 1);
        assert_eq!(equivariant_hom_space(&l1, &triv).unwrap().dim, 0);
        assert_eq!(equivariant_hom_space(&triv, &triv).unwrap().dim, 1);
    }

    #[test]
    fn subquotient_actions() {
        let s = Space::symplectic(2);
        let ts = f2_transvections(2);
        let l2: Vec<FpMatrix> = ts.iter().map(|t| exterior_power_action(t, s, 2)).collect();
        // ω = e12 + e34 in the monomial order of Λ²
        let b = Basis::degree(s, 2);
        let mut w = vec![0u64; 6];
        for m in ["12", "34"] {
            let idx: Vec<usize> = m.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
            w[b.index_of(crate::exterior::Monomial::from_indices(&idx).unwrap())
                .unwrap()] = 1;
        }
        let units: Vec<Vec<u64>> = (0..6).map(|i| (0..6).map(|j| u64::from(i == j)).collect()).collect();
        let full = Subspace::span(2, 6, &units);
        let q = Subquotient::new(&full, &Subspace::span(2, 6, &[w.clone()])).unwrap();
        assert_eq!(q.dim(), 5);
        assert_eq!(q.coordinates(&w), Some(vec![0; 5]));
        let m = q.module("Λ²/⟨ω⟩", &l2).unwrap();
        assert_eq!(m.dim, 5);
        let bad = Subspace::span(2, 6, &[vec![1, 0, 0, 0, 0, 0]]);
        assert!(Subquotient::new(&full, &bad).unwrap().module("x", &l2).is_err());
    }
}
