mod common;

use common::{oracle_eigenvalues, rng, unit_trace_hermitian, TOL};
use num_complex::Complex64;
use proptest::prelude::*;
use qudit_core::qudit_state::to_bloch;
use qudit_core::random::{haar_unitary, random_mixed_density, random_pure_density, uniform};
use qudit_core::sun_basis::adjoint_of;
use qudit_core::sym_poly::{elementary_from_power, power_sums};
use qudit_core::{GellMannBasis, QuditState, StructureTensors};

fn setup(n: usize) -> (GellMannBasis, StructureTensors) {
    let b = GellMannBasis::new(n).unwrap();
    let t = StructureTensors::compute(&b, TOL).unwrap();
    (b, t)
}

#[test]
fn bloch_round_trip() {
    for n in 2..=5 {
        let b = GellMannBasis::new(n).unwrap();
        let mut r = rng(500 + n as u64);
        for _ in 0..1000 {
            let rho = unit_trace_hermitian(n, 0.3, &mut r);
            let s = QuditState::from_bloch(&b, to_bloch(&rho, &b, TOL).unwrap()).unwrap();
            assert!((s.rho() - &rho).max_abs() < 1e-12);
        }
    }
}

#[test]
fn purity_iff_vanishing_residuals() {
    for n in 2..=5 {
        let (b, t) = setup(n);
        let mut r = rng(600 + n as u64);
        for i in 0..300 {
            let pure = random_pure_density(n, &mut r);
            let rho = if i % 2 == 0 {
                pure
            } else {
                let eps = 1e-3 + 0.1 * uniform(&mut r);
                let mut m = pure.scale(1.0 - eps);
                m.add_scaled(Complex64::new(eps, 0.0), &random_mixed_density(n, n, &mut r));
                m
            };
            let s = QuditState::from_density(&rho, &b, TOL).unwrap();
            let idempotent = (&(s.rho() * s.rho()) - s.rho()).max_abs() < 1e-10;
            let res = s.purity_residuals(&t).unwrap();
            assert_eq!(idempotent, res.is_pure(1e-8), "N={n} sample {i}: {res:?}");
        }
    }
}

#[test]
fn invariant_closed_forms_match_spectrum() {
    for n in 3..=6 {
        let (b, t) = setup(n);
        let mut r = rng(700 + n as u64);
        for _ in 0..200 {
            let rho = unit_trace_hermitian(n, 0.2, &mut r);
            let s = QuditState::from_density(&rho, &b, TOL).unwrap();
            let closed = s.invariants(&t).unwrap().elementary(n);
            let e = elementary_from_power(&power_sums(s.rho(), 4, TOL).unwrap());
            for k in 0..3 {
                assert!((closed[k] - e[k + 1]).abs() < 1e-10, "N={n} e{}: {} {}", k + 2, closed[k], e[k + 1]);
            }
        }
    }
}

#[test]
fn entropy_depends_only_on_invariants() {
    for n in 2..=5 {
        let b = GellMannBasis::new(n).unwrap();
        let mut r = rng(800 + n as u64);
        for _ in 0..200 {
            let s = QuditState::from_density(&random_mixed_density(n, 3, &mut r), &b, TOL).unwrap();
            let adj = adjoint_of(&haar_unitary(n, &mut r), &b, TOL).unwrap();
            let rotated = s.rotate(&adj, &b).unwrap();
            assert!((s.entropy(TOL).unwrap() - rotated.entropy(TOL).unwrap()).abs() < 1e-9);
        }
    }
}

#[test]
fn eigenvalues_agree_with_oracle() {
    let mut r = rng(900);
    for n in 2..=6 {
        let b = GellMannBasis::new(n).unwrap();
        let s = QuditState::from_density(&random_mixed_density(n, 2, &mut r), &b, TOL).unwrap();
        for (a, o) in s.eigenvalues().iter().zip(oracle_eigenvalues(s.rho())) {
            assert!((a - o).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_preserves_invariants(seed in any::<u64>(), n in 2usize..=4) {
        let (b, t) = setup(n);
        let mut r = rng(seed);
        let s = QuditState::from_density(&random_mixed_density(n, 2, &mut r), &b, TOL).unwrap();
        let u = haar_unitary(n, &mut r);
        let moved = s.transform(&u, &b, TOL).unwrap();
        let (i0, i1) = (s.invariants(&t).unwrap(), moved.invariants(&t).unwrap());
        prop_assert!((i0.p2 - i1.p2).abs() < 1e-9);
        prop_assert!((i0.cubic - i1.cubic).abs() < 1e-9);
        prop_assert!((i0.quartic - i1.quartic).abs() < 1e-9);
    }
}
