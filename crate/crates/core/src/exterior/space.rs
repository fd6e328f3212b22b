use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::util::subsets_of_size;

/// The ambient exterior algebra: `Λ*(R^{2g})` on indices `1..=2g`, or the
/// extended `Λ*(R^{2g+1})` on indices `0..=2g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub g: usize,
    pub extended: bool,
}

impl Space {
    pub fn symplectic(g: usize) -> Space {
        assert!(2 * g < 63, "genus {g} exceeds the 63-index monomial word");
        Space { g, extended: false }
    }

    pub fn extended(g: usize) -> Space {
        assert!(2 * g < 63, "genus {g} exceeds the 63-index monomial word");
        Space { g, extended: true }
    }

    pub fn dim(&self) -> usize {
        if self.extended {
            2 * self.g + 1
        } else {
            2 * self.g
        }
    }

    pub fn lowest_index(&self) -> usize {
        if self.extended {
            0
        } else {
            1
        }
    }

    pub fn index_mask(&self) -> u64 {
        let top = (1u64 << (2 * self.g + 1)) - 1;
        if self.extended {
            top
        } else {
            top & !1
        }
    }

    pub fn contains(&self, m: Monomial) -> bool {
        m.0 & !self.index_mask() == 0
    }

    /// Degree-`k` monomials in ascending bitmask order.
    pub fn basis(&self, k: usize) -> Vec<Monomial> {
        let shift = self.lowest_index();
        subsets_of_size(self.dim(), k)
            .into_iter()
            .map(|s| Monomial(s << shift))
            .collect()
    }

    /// Monomials of every degree in `degrees`, merged in ascending bitmask order.
    pub fn basis_of_degrees(&self, degrees: &[usize]) -> Vec<Monomial> {
        let mut all: Vec<Monomial> = degrees.iter().flat_map(|&k| self.basis(k)).collect();
        all.sort();
        all.dedup();
        all
    }

    pub fn even_degrees(&self) -> Vec<usize> {
        (0..=self.dim()).filter(|k| k % 2 == 0).collect()
    }

    pub fn odd_degrees(&self) -> Vec<usize> {
        (0..=self.dim()).filter(|k| k % 2 == 1).collect()
    }

    pub fn all_degrees(&self) -> Vec<usize> {
        (0..=self.dim()).collect()
    }
}

/// Degree selection for operator sources and targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: usize) -> Parity {
        if k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn degrees(self, space: &Space) -> Vec<usize> {
        match self {
            Parity::Even => space.even_degrees(),
            Parity::Odd => space.odd_degrees(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}
