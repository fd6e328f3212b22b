//! Cross-checks of computed invariants against independent computations.

use intlef::cokernels::{contraction_cokernel, hard_lefschetz_coker};
use intlef::exterior::{degree_matrix, Operator, Space};
use intlef::floer::{cup_homology, hf_model};
use intlef::heisenberg::gysin_homology;
use intlef::linalg::{fp::rank_mod_p, AbelianInvariants};
use intlef::util::{binom_u, binomial};
use intlef::CoefficientRing;
use num_bigint::BigInt;
use num_traits::One;

fn order(a: &AbelianInvariants) -> BigInt {
    a.torsion.iter().product::<BigInt>()
}

/// `|coker| = |det|` for the square middle-range maps.
#[test]
fn middle_cokernel_order_is_the_determinant() {
    for g in 1..=4 {
        for k in 0..=g {
            let m = degree_matrix(
                &Operator::WedgeOmega(k as i64),
                Space::symplectic(g),
                (g - k) as i64,
                (g + k) as i64,
            )
            .unwrap();
            let det = m.abs_det().unwrap();
            let c = hard_lefschetz_coker(g, k, false).unwrap();
            assert!(c.wedge.free_rank == 0, "g={g} k={k}");
            assert_eq!(order(&c.wedge), det, "g={g} k={k}");
        }
    }
}

/// Over `𝔽_p`, the dimension of a cokernel is the corank of the reduced matrix.
#[test]
fn f2_and_f3_cokernel_dimensions_from_ranks() {
    for g in 1..=4 {
        let s = Space::symplectic(g);
        let all = s.all_degrees();
        let basis = intlef::exterior::Basis::new(s, &all);
        let m = intlef::exterior::operator_matrix(&Operator::ContractOmega(1), &basis, &basis).unwrap();
        let z = contraction_cokernel(g, &Operator::ContractOmega(1), None).unwrap();
        for p in [2u64, 3] {
            let corank = basis.len() - rank_mod_p(&m, p);
            assert_eq!(z.tensor_mod(p).num_summands(), corank, "g={g} p={p}");
        }
    }
}

/// Per U-period the model has free rank `2 C(2g+1, g)` and `C(2g+2, g+1-2n)`
/// summands whose order is divisible by `n`, summed over the chain.
#[test]
fn hf_model_counts() {
    for g in 1..=4usize {
        let m = hf_model(g, CoefficientRing::Integers).unwrap().per_period();
        assert_eq!(m.free_rank, 2 * binom_u(2 * g as i64 + 1, g as i64), "g={g}");
        let twos = m.torsion.iter().filter(|d| (*d % 2u32) == BigInt::from(0)).count();
        assert_eq!(BigInt::from(twos), binomial(2 * g as i64 + 2, g as i64 - 3), "g={g}");
    }
}

/// Universal coefficients: `dim HC(𝔽_2) = rank HC(ℤ) + 2·#(even torsion)`.
#[test]
fn cup_homology_universal_coefficients() {
    for g in 1..=3 {
        let z = cup_homology(g, CoefficientRing::Integers).unwrap().total();
        let f2 = cup_homology(g, CoefficientRing::PrimeField(2)).unwrap().total();
        let even = z.torsion.iter().filter(|d| (*d % 2u32) == BigInt::from(0)).count();
        assert_eq!(f2.num_summands(), z.free_rank + 2 * even, "g={g}");
    }
}

#[test]
fn heisenberg_low_degrees() {
    for g in 1..=4 {
        let h = gysin_homology(g).unwrap();
        assert_eq!(h.degree(0), &AbelianInvariants::free(1));
        assert_eq!(h.degree(1), &AbelianInvariants::free(2 * g));
        assert_eq!(h.degree(2 * g + 1), &AbelianInvariants::free(1));
        assert_eq!(h.euler_characteristic(), 0);
        let torsion: BigInt = h.degrees.iter().map(order).product();
        assert_eq!(torsion.is_one(), g <= 2, "g={g}");
    }
}
