use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::filtration::{filtration, primitive_basis, FiltrationData};
use crate::error::{Error, Result};
use crate::exterior::{degree_matrix, Operator, Space};
use crate::linalg::{IntMatrix, Lattice, Solver};

fn contract_matrix(g: usize, k: usize, j: usize) -> IntMatrix {
    degree_matrix(
        &Operator::ContractOmega(j as i64),
        Space::symplectic(g),
        k as i64,
        k as i64 - 2 * j as i64,
    )
    .expect("contraction stays inside the algebra")
}

/// Inside the lattice `domain ⊂ Λ^k`, the span of a section of the
/// surjection `ι_{ω_j}: domain → P^{k−2j}`.
fn lift_primitive(g: usize, k: usize, j: usize, domain: &Lattice, check: &str) -> Result<Lattice> {
    let prim = primitive_basis(g, k as i64 - 2 * j as i64);
    if prim.rank() == 0 {
        return Ok(Lattice::zero(domain.ambient()));
    }
    let m = contract_matrix(g, k, j);
    let images: Vec<Vec<BigInt>> = domain.basis().iter().map(|v| m.mul_vec(v)).collect();
    let c = prim
        .coordinate_matrix_of(&images)
        .map_err(|_| Error::violation(check, "contraction leaves the primitive lattice"))?;
    let solver = Solver::new(&c);
    let mut lifts = Vec::with_capacity(prim.rank());
    for i in 0..prim.rank() {
        let mut e = vec![BigInt::from(0); prim.rank()];
        e[i] = BigInt::from(1);
        let coeffs = solver
            .solve(&e)
            .map_err(|e| Error::violation(check, format!("no integral lift: {e}")))?;
        let mut v = vec![BigInt::from(0); domain.ambient()];
        for (c, b) in coeffs.iter().zip(domain.basis()) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        lifts.push(v);
    }
    Ok(Lattice::from_generators(domain.ambient(), &lifts))
}

/// Splittings of `Λ^0, …, Λ^g` with `ι_ω(G_r Λ^k) ⊂ G_{r−1} Λ^{k−2}`.
pub fn split_first_half(g: usize) -> Result<Vec<FiltrationData>> {
    let mut out: Vec<FiltrationData> = Vec::with_capacity(g + 1);
    for k in 0..=g {
        let check = format!("compatible splitting of Λ^{k}(ℤ^{})", 2 * g);
        let f = filtration(g, k);
        let mut pieces = vec![f.level(0)];
        for r in 1..=f.top() {
            let below = out[k - 2].splitting().expect("built above");
            let iota = contract_matrix(g, k, 1);
            let domain = Lattice::preimage(&iota, &below[r - 1]);
            pieces.push(lift_primitive(g, k, r, &domain, &check)?);
        }
        let split = f.with_splitting(pieces)?;
        if k >= 2 {
            let iota = contract_matrix(g, k, 1);
            let below = out[k - 2].splitting().expect("built above");
            for (r, gr) in split.splitting().expect("just attached").iter().enumerate().skip(1) {
                if !below[r - 1].contains_lattice(&gr.image(&iota)) {
                    return Err(Error::violation(&check, format!("ι_ω(G_{r}) ⊄ G_{}", r - 1)));
                }
            }
        }
        out.push(split);
    }
    Ok(out)
}

/// A splitting of `Λ^{g+k}` with `ι_{ω_k}(G_{r+k} Λ^{g+k}) ⊂ G_r Λ^{g−k}`, given a
/// split filtration on `Λ^{g−k}`.
pub fn split_across_midpoint(g: usize, k: usize, base: &FiltrationData) -> Result<FiltrationData> {
    let check = format!("splitting of Λ^{}(ℤ^{}) across the middle", g + k, 2 * g);
    if k > g {
        return Err(Error::InvalidArgument(format!("{check}: need k ≤ g")));
    }
    if base.g != g || base.k != g - k {
        return Err(Error::InvalidArgument(format!("{check}: base is not Λ^{}", g - k)));
    }
    let base_pieces = base
        .splitting()
        .ok_or_else(|| Error::InvalidArgument(format!("{check}: base has no splitting")))?;
    let f = filtration(g, g + k);
    let iota = contract_matrix(g, g + k, k);
    let mut pieces = vec![Lattice::zero(f.ambient()); k.min(f.top() + 1)];
    for (r, gr) in base_pieces.iter().enumerate() {
        let domain = Lattice::preimage(&iota, gr);
        pieces.push(lift_primitive(g, g + k, r + k, &domain, &check)?);
    }
    let split = f.with_splitting(pieces)?;
    for (r, gr) in base_pieces.iter().enumerate() {
        let image = split.splitting().expect("just attached")[r + k].image(&iota);
        if !gr.contains_lattice(&image) {
            return Err(Error::violation(&check, format!("ι_ω_k(G_{}) ⊄ G_{r}", r + k)));
        }
    }
    Ok(split)
}

/// Split filtrations on `Λ^0, …, Λ^{g+1}` such that `ι_ω` maps `G_{r+1} Λ^{k+1}`
/// into `G_r Λ^{k−1}` whenever `k ≤ g`.
#[derive(Debug, Clone)]
pub struct Splittings {
    pub g: usize,
    degrees: BTreeMap<usize, FiltrationData>,
}

impl Splittings {
    pub fn build(g: usize) -> Result<Self> {
        let mut degrees: BTreeMap<usize, FiltrationData> = split_first_half(g)?.into_iter().enumerate().collect();
        if g >= 1 {
            let above = split_across_midpoint(g, 1, &degrees[&(g - 1)])?;
            degrees.insert(g + 1, above);
        }
        Ok(Splittings { g, degrees })
    }

    pub fn degree(&self, k: usize) -> Option<&FiltrationData> {
        self.degrees.get(&k)
    }

    /// `G_r Λ^k`; zero outside the filtration range.
    pub fn piece(&self, k: usize, r: i64) -> Option<Lattice> {
        let f = self.degrees.get(&k)?;
        let pieces = f.splitting()?;
        Some(if r < 0 || r as usize >= pieces.len() {
            Lattice::zero(f.ambient())
        } else {
            pieces[r as usize].clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees_are_single_step() {
        let s = split_first_half(3).unwrap();
        assert_eq!(s[0].splitting().unwrap().len(), 1);
        assert_eq!(s[1].splitting().unwrap()[0].rank(), 6);
    }

    #[test]
    fn genus_two_compatibility() {
        let s = split_first_half(2).unwrap();
        let g1 = &s[2].splitting().unwrap()[1];
        let g0 = &s[0].splitting().unwrap()[0];
        assert!(g0.contains_lattice(&g1.image(&contract_matrix(2, 2, 1))));
        let up = split_across_midpoint(2, 1, &s[1]).unwrap();
        assert_eq!(up.splitting().unwrap()[1].rank(), 4);
    }

    #[test]
    fn identity_across_midpoint() {
        let s = split_first_half(3).unwrap();
        let same = split_across_midpoint(3, 0, &s[3]).unwrap();
        assert_eq!(same.splitting().unwrap(), s[3].splitting().unwrap());
    }

    #[test]
    fn genus_four_sweep() {
        let s = split_first_half(4).unwrap();
        assert_eq!(s.len(), 5);
        split_across_midpoint(4, 2, &s[2]).unwrap();
        Splittings::build(4).unwrap();
    }
}
