//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{oracle_eigenvalues, rng, unit_trace_hermitian, TOL};
use nalgebra::DMatrix;
use num_complex::Complex64;
use qudit_core::qutrit::{admissible, region_scan, spectrum, P_MAX};
use qudit_core::random::{haar_unitary, random_mixed_density, random_pure_density, standard_normal, uniform};
use qudit_core::su4_bridge::{verify_pauli_expansions, PauliProductBasis};
use qudit_core::sun_basis::{adjoint_of, verify_ff_dd_identity};
use qudit_core::sym_poly::{elementary_closed_form_unit_trace, elementary_from_power, positivity_check, power_sums};
use qudit_core::two_qudit::{werner_alpha_norm, werner_alpha_omega, werner_consistency, werner_positivity_scan};
use qudit_core::{BipartiteState, CMatrix, GellMannBasis, Ordering, QuditState, RMatrix, StructureTensors};

type Outcome = Result<String, String>;

fn setup(n: usize) -> (GellMannBasis, StructureTensors) {
    let b = GellMannBasis::new(n).unwrap();
    let t = StructureTensors::compute(&b, TOL).unwrap();
    (b, t)
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn pure_state_invariants() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        let (b, t) = setup(n);
        let nf = n as f64;
        let (p2, q) = (nf * (nf - 1.0) / 2.0, nf * (nf - 1.0) * (nf - 2.0) / 2.0);
        let mut r = rng(10 + n as u64);
        for _ in 0..200 {
            let s = QuditState::from_density(&random_pure_density(n, &mut r), &b, TOL).unwrap();
            let inv = s.invariants(&t).unwrap();
            worst = worst.max((inv.p2 - p2).abs()).max((inv.cubic - q).abs());
        }
    }
    ensure(worst < 1e-9, format!("N=2..5, 200 states each, max |Δ| = {worst:.2e}"))
}

fn structure_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        let (_, t) = setup(n);
        let c = t.contraction_residuals();
        worst = worst.max(c.ff).max(c.dd).max(c.trace_d);
        worst = worst.max(verify_ff_dd_identity(&t, 1e-10).max_residual);
    }
    let (_, t2) = setup(2);
    let d_zero = t2.d_entries().is_empty() && (0..3).all(|a| (0..3).all(|b| (0..3).all(|c| t2.d(a, b, c) == 0.0)));
    ensure(worst < 1e-10 && d_zero, format!("N=2..6 max residual {worst:.2e}, d == 0 at N=2: {d_zero}"))
}

fn qutrit_closed_form() -> Outcome {
    let b = GellMannBasis::with_ordering(3, Ordering::GellMann).unwrap();
    let t = StructureTensors::compute(&b, TOL).unwrap();
    let mut r = rng(30);
    let (mut root_err, mut vieta): (f64, f64) = (0.0, 0.0);
    for i in 0..10_000 {
        let s = QuditState::from_density(&random_mixed_density(3, 2 + i % 3, &mut r), &b, TOL).unwrap();
        let inv = s.invariants(&t).unwrap();
        let sp = spectrum(inv.p2, inv.cubic, TOL).map_err(|e| format!("sample {i}: {e}"))?;
        let mut a = CMatrix::identity(3).scale(-1.0);
        a.add_scaled(Complex64::new(3.0, 0.0), s.rho());
        for (x, o) in sp.roots.iter().zip(oracle_eigenvalues(&a)) {
            root_err = root_err.max((x - o).abs());
        }
        vieta = sp.vieta_residuals(inv.p2, inv.cubic).into_iter().fold(vieta, f64::max);
    }
    ensure(root_err < 1e-9 && vieta < 1e-10, format!("10000 mixed qutrits, root err {root_err:.2e}, Vieta {vieta:.2e}"))
}

/// Direct verdict from the cubic's roots found as companion-matrix eigenvalues.
fn companion_verdict(p2: f64, q: f64) -> bool {
    let c = DMatrix::<f64>::from_row_slice(3, 3, &[0.0, p2, 2.0 / 3.0 * q, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    let roots = c.complex_eigenvalues();
    let scale = 1.0 + p2.sqrt();
    roots.iter().all(|z| z.im.abs() <= 1e-4 * scale && 1.0 + z.re >= -TOL)
}

fn admissible_region() -> Outcome {
    let res = 512;
    let g = region_scan(res, TOL);
    let disagreements = g.cells.iter().filter(|c| c.verdict.admissible != companion_verdict(c.p * c.p, c.q)).count();
    let corner = g.cell(res - 1, res - 1);
    let corner_ok = corner.verdict.admissible && {
        let sp = spectrum(corner.p * corner.p, corner.q, TOL).unwrap();
        let ev = sp.rho_eigenvalues();
        let purity: f64 = ev.iter().map(|v| v * v).sum();
        (purity - 1.0).abs() < 1e-9
    };
    let h = P_MAX / (res - 1) as f64;
    // the grid has no Q = 0 row, so the cut is taken on its |P| axis at Q = 0 exactly
    let cut = g.p_axis.iter().copied().filter(|&p| admissible(p * p, 0.0, TOL).admissible).fold(f64::NAN, f64::max);
    let cut_ok = (cut - 1.0).abs() <= h;
    let cut_detail = format!(" Q=0 cut |P| <= {cut:.4}");
    ensure(
        disagreements == 0 && corner_ok && cut_ok,
        format!(
            "512x512, {} admissible, {disagreements} disagreements, corner pure: {corner_ok},{cut_detail} (cell {h:.4})",
            g.admissible_count()
        ),
    )
}

fn two_qubit_chain() -> Outcome {
    let (b, _) = setup(2);
    let mut r = rng(50);
    let (mut purity, mut ident): (f64, f64) = (0.0, 0.0);
    for _ in 0..500 {
        let s = BipartiteState::from_density(&random_pure_density(4, &mut r), &b, TOL).unwrap();
        purity = purity.max(s.purity_residuals_qubit().unwrap().max());
        let id = s.qubit_identities(1e-8).map_err(|e| e.to_string())?;
        ident = ident.max(id.trace_relation).max(id.norms_equal).max(id.gram).max(id.det_relation);
    }
    let mut adj: f64 = 0.0;
    for _ in 0..1000 {
        let w = RMatrix::from_fn(3, 3, |_, _| standard_normal(&mut r));
        let s = BipartiteState::from_components(&b, vec![0.0; 3], vec![0.0; 3], w).unwrap();
        adj = adj.max(s.z_matrix().unwrap().adjugate_residual);
    }
    ensure(
        purity < 1e-8 && ident < 1e-8 && adj < 1e-10,
        format!("purity {purity:.2e}, identities {ident:.2e}, adjugate {adj:.2e}"),
    )
}

fn werner_theorem() -> Outcome {
    let mut detail = String::new();
    let mut ok = true;
    for n in 2..=5 {
        let (b, t) = setup(n);
        let c = werner_consistency(&b, &t, 10_000, TOL).unwrap();
        let exact = (c.alpha_norm - werner_alpha_norm(n)).abs() < 1e-10 && (c.alpha_omega - werner_alpha_omega(n)).abs() < 1e-10;
        let gap = c.alpha_omega.abs() - c.alpha_norm;
        let expected_gap = werner_alpha_omega(n).abs() - werner_alpha_norm(n);
        if n == 2 {
            let at_singlet = BipartiteState::werner(&b, -1.0).purity_residuals(&t).unwrap().total();
            let both_minus_one = (c.alpha_omega + 1.0).abs() < 1e-12 && (c.alpha_norm - 1.0).abs() < 1e-12;
            ok &= exact && c.consistent && both_minus_one && at_singlet < 1e-10 && c.min_residual < 1e-10;
            detail.push_str(&format!(
                "N=2 a1=-1 a2={}, residual at -1 {at_singlet:.1e}, min {:.1e} at {};",
                c.alpha_omega, c.min_residual, c.argmin
            ));
        } else {
            ok &= exact && !c.consistent && (gap - expected_gap).abs() < 1e-10 && c.min_residual > 0.1;
            detail.push_str(&format!(
                " N={n} |a1|={} a2={} min res {:.3};",
                c.alpha_norm, c.alpha_omega, c.min_residual
            ));
        }
    }
    ensure(ok, detail)
}

fn window(rows: &[qudit_core::two_qudit::WernerScanRow], pick: impl Fn(&qudit_core::two_qudit::WernerScanRow) -> bool) -> (f64, f64) {
    let sel: Vec<f64> = rows.iter().filter(|r| pick(r)).map(|r| r.alpha).collect();
    (sel.iter().copied().fold(f64::INFINITY, f64::min), sel.iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

fn necessary_vs_sufficient() -> Outcome {
    let mut ok = true;
    let mut detail = String::new();
    for (n, lo, hi, steps, e2_win, psd_win) in
        [(2, -1.5, 1.5, 3001, (-1.0, 1.0), (-1.0, 1.0 / 3.0)), (3, -2.0, 2.0, 4001, (-1.5, 1.5), (-0.75, 0.375))]
    {
        let (b, t) = setup(n);
        let rows = werner_positivity_scan(&b, &t, lo, hi, steps, TOL).unwrap();
        let step = (hi - lo) / (steps - 1) as f64;
        let e2 = window(&rows, |r| r.e2_ok);
        let psd = window(&rows, |r| r.psd);
        let near = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs() <= step + 1e-12 && (a.1 - b.1).abs() <= step + 1e-12;
        let gap = rows.iter().any(|r| r.e2_ok && !r.psd);
        // the windows share the lower endpoint for qubits; for qutrits containment is strict
        let contained = if n == 2 { e2.0 <= psd.0 && psd.1 < e2.1 } else { e2.0 < psd.0 && psd.1 < e2.1 };
        ok &= near(e2, e2_win) && near(psd, psd_win) && gap && contained;
        detail.push_str(&format!(
            " N={n}: e2 window [{:.3}, {:.3}], PSD window [{:.3}, {:.3}];",
            e2.0, e2.1, psd.0, psd.1
        ));
    }
    ensure(ok, detail)
}

fn su4_dictionary() -> Outcome {
    let worst = verify_pauli_expansions().iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    let qubit = GellMannBasis::new(2).unwrap();
    let pb = PauliProductBasis::default();
    let mut r = rng(80);
    let mut round: f64 = 0.0;
    for i in 0..1000 {
        let s = BipartiteState::from_density(&random_mixed_density(4, 1 + i % 4, &mut r), &qubit, TOL).unwrap();
        let p = pb.components_to_ququart(s.x(), s.y(), s.omega()).unwrap();
        let (x, y, w) = pb.ququart_to_components(&p).unwrap();
        for (a, b) in x.iter().zip(s.x()).chain(y.iter().zip(s.y())) {
            round = round.max((a - b).abs());
        }
        round = round.max((&w - s.omega()).max_abs());
    }
    let singlet = pb.components_to_ququart(&[0.0; 3], &[0.0; 3], &RMatrix::identity(3).scale(-1.0)).unwrap();
    let p2: f64 = singlet.iter().map(|v| v * v).sum();
    ensure(
        worst < 1e-15 && round < 1e-12 && (p2 - 6.0).abs() < 1e-12,
        format!("15 identities max {worst:.1e}, round trip {round:.1e}, singlet |P|^2 = {p2}"),
    )
}

fn symmetric_polynomials() -> Outcome {
    let mut newton: f64 = 0.0;
    for n in 2..=6 {
        let mut r = rng(90 + n as u64);
        for i in 0..1000 {
            let rho = random_mixed_density(n, 1 + i % n, &mut r);
            let p = power_sums(&rho, 6, TOL).unwrap();
            let e = elementary_from_power(&p);
            let c = elementary_closed_form_unit_trace(&p);
            newton = e.iter().zip(c).map(|(a, b)| (a - b).abs()).fold(newton, f64::max);
        }
    }
    let mut r = rng(99);
    let (mut disagree, mut eps_fail, mut psd_count) = (0, 0, 0);
    for i in 0..10_000 {
        let n = 2 + i % 5;
        let weight = if i % 2 == 0 { 0.0 } else { 0.02 + 0.3 * uniform(&mut r) };
        let rho = unit_trace_hermitian(n, weight, &mut r);
        let rep = positivity_check(&rho, TOL).map_err(|e| format!("sample {i}: {e}"))?;
        if rep.psd != (oracle_eigenvalues(&rho)[0] >= -TOL) {
            disagree += 1;
        }
        if rep.psd {
            psd_count += 1;
            let p = &rep.power_sums;
            let (eps, delta) = (1.0 - p[1], 1.0 - p.get(2).copied().unwrap_or_else(|| trace_cube(&rho)));
            if eps < 2.0 / 3.0 * delta - 1e-12 {
                eps_fail += 1;
            }
        }
    }
    ensure(
        newton < 1e-11 && disagree == 0 && eps_fail == 0,
        format!("Newton vs closed {newton:.1e}, verdict disagreements {disagree}/10000, eps >= 2/3 delta violations {eps_fail}/{psd_count}"),
    )
}

fn trace_cube(rho: &CMatrix) -> f64 {
    power_sums(rho, 3, TOL).unwrap()[2]
}

fn su_n_invariance() -> Outcome {
    let (mut inv_dev, mut orth, mut cov): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for n in 2..=4 {
        let (b, t) = setup(n);
        let mut r = rng(100 + n as u64);
        for _ in 0..100 {
            let s = QuditState::from_density(&random_mixed_density(n, 3, &mut r), &b, TOL).unwrap();
            let u = haar_unitary(n, &mut r);
            let m = s.transform(&u, &b, TOL).unwrap();
            let (i0, i1) = (s.invariants(&t).unwrap(), m.invariants(&t).unwrap());
            let ds = (s.entropy(TOL).unwrap() - m.entropy(TOL).unwrap()).abs();
            inv_dev = inv_dev
                .max(ds)
                .max((i0.p2 - i1.p2).abs())
                .max((i0.cubic - i1.cubic).abs())
                .max((i0.quartic - i1.quartic).abs());
            let adj = adjoint_of(&u, &b, TOL).unwrap();
            orth = orth.max(adj.orthogonality_residual());
            let (f, d) = adj.covariance_residuals(&t);
            cov = cov.max(f).max(d);
        }
    }
    ensure(
        inv_dev < 1e-9 && orth < 1e-8 && cov < 1e-8,
        format!("invariants {inv_dev:.1e}, R^T R {orth:.1e}, covariance {cov:.1e}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("pure-state invariants", pure_state_invariants),
        ("structure-tensor identities", structure_identities),
        ("qutrit closed form", qutrit_closed_form),
        ("qutrit admissible region", admissible_region),
        ("two-qubit purity chain", two_qubit_chain),
        ("Werner theorem", werner_theorem),
        ("necessary vs sufficient", necessary_vs_sufficient),
        ("SU(4) Pauli dictionary", su4_dictionary),
        ("symmetric polynomials", symmetric_polynomials),
        ("SU(N) invariance", su_n_invariance),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let (tag, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail} ({:.2}s)", i + 1, t0.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
