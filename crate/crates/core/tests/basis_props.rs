mod common;

use common::{rng, TOL};
use proptest::prelude::*;
use qudit_core::random::haar_unitary;
use qudit_core::sun_basis::{adjoint_of, verify_ff_dd_identity, verify_product_rule};
use qudit_core::{GellMannBasis, Ordering, StructureTensors};

fn setup(n: usize) -> (GellMannBasis, StructureTensors) {
    let b = GellMannBasis::new(n).unwrap();
    let t = StructureTensors::compute(&b, TOL).unwrap();
    (b, t)
}

#[test]
fn product_rule_and_contractions_up_to_six() {
    for n in 2..=6 {
        for ord in [Ordering::SymAntisymDiag, Ordering::GellMann] {
            let b = GellMannBasis::with_ordering(n, ord).unwrap();
            let t = StructureTensors::compute(&b, TOL).unwrap();
            assert!(b.orthonormality_residual() < 1e-14);
            let pr = verify_product_rule(&b, &t, 1e-10);
            assert!(pr.holds, "N={n} {ord:?} {pr:?}");
            let c = t.contraction_residuals();
            assert!(c.ff < 1e-10 && c.dd < 1e-10 && c.trace_d < 1e-10, "N={n} {c:?}");
            assert!(verify_ff_dd_identity(&t, 1e-10).holds);
            assert!(t.symmetry_residual() < 1e-14);
        }
    }
}

#[test]
fn haar_adjoints_are_orthogonal_and_covariant() {
    for n in 2..=4 {
        let (b, t) = setup(n);
        let mut r = rng(100 + n as u64);
        for _ in 0..100 {
            let u = haar_unitary(n, &mut r);
            let adj = adjoint_of(&u, &b, TOL).unwrap();
            assert!(adj.orthogonality_residual() < 1e-10);
            let (f, d) = adj.covariance_residuals(&t);
            assert!(f < 1e-8 && d < 1e-8, "N={n}: {f} {d}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_is_a_homomorphism(seed in any::<u64>(), n in 2usize..=4) {
        let b = GellMannBasis::new(n).unwrap();
        let mut r = rng(seed);
        let u = haar_unitary(n, &mut r);
        let v = haar_unitary(n, &mut r);
        let uv = adjoint_of(&(&u * &v), &b, TOL).unwrap();
        let composed = adjoint_of(&u, &b, TOL).unwrap().compose(&adjoint_of(&v, &b, TOL).unwrap());
        prop_assert!((uv.matrix() - composed.matrix()).max_abs() < 1e-10);
    }

    #[test]
    fn combine_and_project_are_inverse(seed in any::<u64>(), n in 2usize..=5) {
        let b = GellMannBasis::new(n).unwrap();
        let mut r = rng(seed);
        let coeffs: Vec<f64> = (0..b.len()).map(|_| qudit_core::random::standard_normal(&mut r)).collect();
        let back = b.project(&b.combine(&coeffs));
        for (x, y) in coeffs.iter().zip(&back) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}
