use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use qudit_core::qutrit::{boundary_curves, region_scan};
use qudit_core::random::{random_mixed_density, random_pure_density};
use qudit_core::su4_bridge::{kind_label, verify_pauli_expansions, PauliProductBasis};
use qudit_core::sym_poly::positivity_check;
use qudit_core::two_qudit::{
    to_components, werner_alpha_norm, werner_consistency, werner_e2_bound, werner_positivity_scan,
};
use qudit_core::{BipartiteState, GellMannBasis, QuditState, RMatrix, StructureTensors};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cli::{Cli, Command, Format, GlobalArgs, StateKind};
use crate::error::CliError;
use crate::schema::*;

/// Runs one parsed command line, writing results to `--output` or standard output.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    g.validate()?;
    match &cli.command {
        Command::Basis => basis(g),
        Command::Tensors => tensors(g),
        Command::Check { input, require_physical } => check(g, input, *require_physical),
        Command::Entropy { input } => entropy(g, input),
        Command::QutritRegion { resolution, boundary, boundary_samples } => {
            qutrit_region(g, *resolution, boundary.as_deref(), *boundary_samples)
        }
        Command::Werner { alpha_min, alpha_max, steps, grid } => werner(g, *alpha_min, *alpha_max, *steps, *grid),
        Command::Convert { input } => convert(g, input),
        Command::VerifySu4 => verify_su4(g),
        Command::Random { kind, count, ancilla } => random(g, *kind, *count, *ancilla),
    }
}

fn require_json(g: &GlobalArgs, command: &str) -> Result<(), CliError> {
    match g.format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("`{command}` has no CSV output"))),
    }
}

fn write_bytes(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|source| CliError::Write { path: p.to_path_buf(), source }),
        None => std::io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(|source| CliError::Write { path: PathBuf::from("<stdout>"), source }),
    }
}

fn write_json<T: Serialize>(g: &GlobalArgs, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    write_bytes(g.output.as_deref(), text.as_bytes())
}

fn csv_bytes<T: Serialize>(rows: &[T]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory CSV write");
    }
    w.into_inner().expect("in-memory CSV flush")
}

fn read_states(path: &Path) -> Result<Vec<StateJson>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    let doc: StateDocument =
        serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })?;
    Ok(doc.into_states())
}

fn basis_for(dim: usize, g: &GlobalArgs) -> Result<GellMannBasis, CliError> {
    Ok(GellMannBasis::with_ordering(dim, g.ordering())?)
}

enum Parsed {
    Qudit(QuditState),
    Bipartite(BipartiteState),
}

fn parse_state(state: &StateJson, basis: &GellMannBasis) -> Result<Parsed, CliError> {
    Ok(match state {
        StateJson::Qudit(s) => Parsed::Qudit(QuditState::from_bloch(basis, s.bloch.clone())?),
        StateJson::Bipartite(s) => {
            let omega = s
                .omega_matrix()
                .ok_or_else(|| CliError::Usage("omega must be a rectangular array of rows".into()))?;
            Parsed::Bipartite(BipartiteState::from_components(basis, s.x.clone(), s.y.clone(), omega)?)
        }
    })
}

fn state_dim(state: &StateJson) -> usize {
    match state {
        StateJson::Qudit(s) => s.n,
        StateJson::Bipartite(s) => s.n,
    }
}

fn basis(g: &GlobalArgs) -> Result<(), CliError> {
    require_json(g, "basis")?;
    let basis = basis_for(g.n, g)?;
    let out: Vec<MatrixJson> = basis.generators().iter().map(MatrixJson::from).collect();
    write_json(g, &out)
}

fn tensors(g: &GlobalArgs) -> Result<(), CliError> {
    let basis = basis_for(g.n, g)?;
    let t = StructureTensors::compute(&basis, g.tolerance)?;
    let records = |entries: &[qudit_core::sun_basis::TensorEntry]| -> Vec<TensorRecord> {
        entries.iter().map(|e| TensorRecord { a: e.a, b: e.b, c: e.c, value: e.value }).collect()
    };
    let export = TensorExport {
        header: TensorHeader { n: g.n, tolerance: g.tolerance, ordering: g.ordering().name().to_string() },
        f: records(t.f_entries()),
        d: records(t.d_entries()),
    };
    match g.format {
        Format::Json => write_json(g, &export),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                tensor: &'a str,
                a: usize,
                b: usize,
                c: usize,
                value: f64,
            }
            let rows: Vec<Row> = [("f", &export.f), ("d", &export.d)]
                .into_iter()
                .flat_map(|(name, rs)| rs.iter().map(move |r| Row { tensor: name, a: r.a, b: r.b, c: r.c, value: r.value }))
                .collect();
            write_bytes(g.output.as_deref(), &csv_bytes(&rows))
        }
    }
}

fn qudit_report(state: &QuditState, tensors: &StructureTensors, tol: f64) -> Result<QuditReport, CliError> {
    let sym = positivity_check(state.rho(), tol)?;
    let inv = state.invariants(tensors)?;
    let purity = state.purity_residuals(tensors)?;
    Ok(QuditReport {
        n: state.dim(),
        physical: sym.psd,
        invariants: InvariantsJson { p2: inv.p2, q: inv.cubic, quartic: inv.quartic },
        elementary_from_invariants: inv.elementary(state.dim()),
        sym_poly: SymPolyJson::from(&sym),
        eigenvalues: state.eigenvalues(),
        entropy: if sym.psd { Some(state.entropy(tol)?) } else { None },
        purity: QuditPurityJson { norm_residual: purity.norm, vector_residual: purity.vector, pure: purity.is_pure(tol) },
    })
}

fn reduced_json(state: &QuditState, tol: f64) -> Result<ReducedJson, CliError> {
    let psd = positivity_check(state.rho(), tol)?.psd;
    Ok(ReducedJson {
        bloch: state.bloch().to_vec(),
        physical: psd,
        entropy: if psd { Some(state.entropy(tol)?) } else { None },
    })
}

fn qubit_pair_json(state: &BipartiteState, tol: f64) -> Result<QubitPairJson, CliError> {
    let purity = state.purity_residuals_qubit()?;
    let identities = state.qubit_identities(tol).ok().map(|i| QubitIdentitiesJson {
        det_omega: i.det_omega,
        x_norm_sqr: i.x_norm_sqr,
        y_norm_sqr: i.y_norm_sqr,
        trace_relation: i.trace_relation,
        norms_equal: i.norms_equal,
        gram: i.gram,
        det_relation: i.det_relation,
        holds: i.holds,
    });
    let z = state.z_matrix()?;
    let m = state.mixed_positivity_qubit(tol)?;
    Ok(QubitPairJson {
        purity: PurityJson::new(&purity, tol),
        identities,
        z: ZMatrixJson {
            z: z.z.to_rows(),
            det_omega: z.det_omega,
            adjugate_residual: z.adjugate_residual,
            entangled: z.is_entangled(tol),
        },
        mixed_positivity: MixedPositivityJson {
            margins: m.margins,
            satisfied: m.satisfied,
            equality: m.equality,
            elementary: m.elementary,
            reconciliation: m.reconciliation,
        },
    })
}

fn bipartite_report(
    state: &BipartiteState,
    basis: &GellMannBasis,
    tensors: &StructureTensors,
    tol: f64,
) -> Result<BipartiteReport, CliError> {
    let sym = positivity_check(state.rho(), tol)?;
    let (a, b) = state.reduced_states(basis, tol)?;
    Ok(BipartiteReport {
        n: state.dim(),
        physical: sym.psd,
        sym_poly: SymPolyJson::from(&sym),
        eigenvalues: state.eigenvalues(),
        purity: PurityJson::new(&state.purity_residuals(tensors)?, tol),
        omega_trace_residual: state.omega_trace_residual(tensors)?,
        reduced: [reduced_json(&a, tol)?, reduced_json(&b, tol)?],
        qubits: if state.dim() == 2 { Some(qubit_pair_json(state, tol)?) } else { None },
    })
}

fn check(g: &GlobalArgs, input: &Path, require_physical: bool) -> Result<(), CliError> {
    require_json(g, "check")?;
    let states = read_states(input)?;
    let single = states.len() == 1;
    let mut reports = Vec::with_capacity(states.len());
    let mut unphysical = Vec::new();
    for (k, s) in states.iter().enumerate() {
        let basis = basis_for(state_dim(s), g)?;
        let tensors = StructureTensors::compute(&basis, g.tolerance)?;
        let report = match parse_state(s, &basis)? {
            Parsed::Qudit(q) => Report::Qudit(qudit_report(&q, &tensors, g.tolerance)?),
            Parsed::Bipartite(b) => Report::Bipartite(Box::new(bipartite_report(&b, &basis, &tensors, g.tolerance)?)),
        };
        let (physical, min) = match &report {
            Report::Qudit(r) => (r.physical, r.sym_poly.min_eigenvalue),
            Report::Bipartite(r) => (r.physical, r.sym_poly.min_eigenvalue),
        };
        if !physical {
            unphysical.push(format!("state {k} has min eigenvalue {min:e}"));
        }
        reports.push(report);
    }
    if single {
        write_json(g, &reports[0])?;
    } else {
        write_json(g, &reports)?;
    }
    if require_physical && !unphysical.is_empty() {
        return Err(CliError::Unphysical(unphysical.join("; ")));
    }
    Ok(())
}

fn entropy(g: &GlobalArgs, input: &Path) -> Result<(), CliError> {
    require_json(g, "entropy")?;
    let states = read_states(input)?;
    let single = states.len() == 1;
    let mut out = Vec::with_capacity(states.len());
    for s in &states {
        let basis = basis_for(state_dim(s), g)?;
        let tol = g.tolerance;
        out.push(match parse_state(s, &basis)? {
            Parsed::Qudit(q) => EntropyJson { n: q.dim(), entropy: q.entropy(tol)?, reduced: None },
            Parsed::Bipartite(b) => {
                let entropy = b.entropy(tol)?;
                let (x, y) = b.reduced_states(&basis, tol)?;
                EntropyJson { n: b.dim(), entropy, reduced: Some([x.entropy(tol)?, y.entropy(tol)?]) }
            }
        });
    }
    if single {
        write_json(g, &out[0])
    } else {
        write_json(g, &out)
    }
}

/// `out.csv` becomes `out_boundary.csv`.
fn boundary_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = output.extension().map(|e| e.to_string_lossy().into_owned()).unwrap_or_else(|| "csv".into());
    output.with_file_name(format!("{stem}_boundary.{ext}"))
}

fn qutrit_region(
    g: &GlobalArgs,
    resolution: usize,
    boundary: Option<&Path>,
    samples: usize,
) -> Result<(), CliError> {
    if resolution < 2 {
        return Err(CliError::Usage(format!("--resolution must be at least 2, got {resolution}")));
    }
    let grid = region_scan(resolution, g.tolerance);
    let curves: Vec<BoundaryRow> = boundary_curves(samples)
        .into_iter()
        .map(|b| BoundaryRow {
            p: b.p,
            condition1: b.condition1,
            discriminant_upper: b.discriminant_upper,
            discriminant_lower: b.discriminant_lower,
        })
        .collect();
    match g.format {
        Format::Json => {
            let r = grid.resolution;
            let admissible = (0..r).map(|iq| (0..r).map(|ip| grid.cell(ip, iq).verdict.admissible).collect()).collect();
            let fail_mask = (0..r).map(|iq| (0..r).map(|ip| grid.cell(ip, iq).verdict.failed.0).collect()).collect();
            write_json(
                g,
                &RegionJson {
                    resolution: r,
                    p_axis: grid.p_axis.clone(),
                    q_axis: grid.q_axis.clone(),
                    admissible,
                    fail_mask,
                    boundary: curves,
                },
            )
        }
        Format::Csv => {
            let rows: Vec<RegionRow> = grid
                .cells
                .iter()
                .map(|c| RegionRow {
                    p: c.p,
                    q: c.q,
                    admissible: c.verdict.admissible as u8,
                    fail_mask: c.verdict.failed.0,
                })
                .collect();
            write_bytes(g.output.as_deref(), &csv_bytes(&rows))?;
            let target = boundary.map(Path::to_path_buf).or_else(|| g.output.as_deref().map(boundary_path));
            if let Some(path) = target {
                write_bytes(Some(&path), &csv_bytes(&curves))?;
            }
            Ok(())
        }
    }
}

fn werner(g: &GlobalArgs, alpha_min: Option<f64>, alpha_max: Option<f64>, steps: usize, grid: usize) -> Result<(), CliError> {
    let n = g.n;
    let lo = alpha_min.unwrap_or(-(n as f64));
    let hi = alpha_max.unwrap_or(n as f64);
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(CliError::Usage(format!("need finite --alpha-min <= --alpha-max, got {lo} and {hi}")));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    let basis = basis_for(n, g)?;
    let tensors = StructureTensors::compute(&basis, g.tolerance)?;
    let scan: Vec<WernerRow> = werner_positivity_scan(&basis, &tensors, lo, hi, steps, g.tolerance)?
        .into_iter()
        .map(|r| WernerRow {
            n,
            alpha: r.alpha,
            e2: r.e2,
            e3: r.e3,
            min_eigenvalue: r.min_eigenvalue,
            psd: r.psd as u8,
            purity_residual: r.purity_residual,
        })
        .collect();
    match g.format {
        Format::Csv => write_bytes(g.output.as_deref(), &csv_bytes(&scan)),
        Format::Json => {
            let c = werner_consistency(&basis, &tensors, grid, g.tolerance)?;
            let a1 = if c.alpha_norm.is_finite() { c.alpha_norm } else { werner_alpha_norm(n) };
            write_json(
                g,
                &WernerJson {
                    n,
                    alpha1: [a1, -a1],
                    alpha2: c.alpha_omega,
                    consistent: c.consistent,
                    min_residual: c.min_residual,
                    argmin: c.argmin,
                    e2_bound: werner_e2_bound(n),
                    scan,
                },
            )
        }
    }
}

fn convert(g: &GlobalArgs, input: &Path) -> Result<(), CliError> {
    require_json(g, "convert")?;
    let states = read_states(input)?;
    let single = states.len() == 1;
    let bridge = PauliProductBasis::new(g.ordering());
    let mut out = Vec::with_capacity(states.len());
    for s in &states {
        out.push(match s {
            StateJson::Bipartite(b) if b.n == 2 => {
                let omega = b
                    .omega_matrix()
                    .ok_or_else(|| CliError::Usage("omega must be a rectangular array of rows".into()))?;
                let bloch = bridge.components_to_ququart(&b.x, &b.y, &omega)?;
                let state = QuditState::from_bloch(bridge.basis(), bloch)?;
                let physical = positivity_check(state.rho(), g.tolerance)?.psd;
                StateJson::Qudit(QuditStateJson { n: 4, bloch: state.bloch().to_vec(), physical: Some(physical) })
            }
            StateJson::Qudit(q) if q.n == 4 => {
                let (x, y, omega) = bridge.ququart_to_components(&q.bloch)?;
                StateJson::Bipartite(BipartiteStateJson { n: 2, x, y, omega: omega.to_rows() })
            }
            other => {
                return Err(CliError::Usage(format!(
                    "convert maps qubit pairs (N = 2) and ququarts (N = 4); got a state with N = {}",
                    state_dim(other)
                )))
            }
        });
    }
    if single {
        write_json(g, &out[0])
    } else {
        write_json(g, &out)
    }
}

fn verify_su4(g: &GlobalArgs) -> Result<(), CliError> {
    require_json(g, "verify-su4")?;
    let bridge = PauliProductBasis::new(g.ordering());
    let basis = bridge.basis();
    let identities: Vec<IdentityJson> = verify_pauli_expansions()
        .into_iter()
        .map(|c| IdentityJson {
            generator: c.label,
            index: basis.index_of(c.kind).expect("SU(4) kind present"),
            max_deviation: c.max_deviation,
            holds: c.max_deviation <= g.tolerance,
        })
        .collect();
    let dictionary = bridge
        .dictionary()
        .into_iter()
        .map(|e| DictionaryJson { index: e.index, generator: kind_label(e.kind), labels: e.labels, coeffs: e.coeffs })
        .collect();
    let all_hold = identities.iter().all(|i| i.holds);
    write_json(g, &Su4Json { ordering: g.ordering().name().to_string(), identities, all_hold, dictionary })
}

fn random(g: &GlobalArgs, kind: StateKind, count: usize, ancilla: Option<usize>) -> Result<(), CliError> {
    require_json(g, "random")?;
    if count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    if ancilla == Some(0) {
        return Err(CliError::Usage("--ancilla must be at least 1".into()));
    }
    let n = g.n;
    let basis = basis_for(n, g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    // Sampled matrices are Hermitian with unit trace only up to roundoff.
    let read_tol = g.tolerance.max(1e-9);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(match kind {
            StateKind::Pure | StateKind::Mixed => {
                let rho = match kind {
                    StateKind::Pure => random_pure_density(n, &mut rng),
                    _ => random_mixed_density(n, ancilla.unwrap_or(n), &mut rng),
                };
                let state = QuditState::from_density(&rho, &basis, read_tol)?;
                let physical = positivity_check(state.rho(), g.tolerance)?.psd;
                StateJson::Qudit(QuditStateJson { n, bloch: state.bloch().to_vec(), physical: Some(physical) })
            }
            StateKind::BipartitePure | StateKind::BipartiteMixed => {
                let rho = match kind {
                    StateKind::BipartitePure => random_pure_density(n * n, &mut rng),
                    _ => random_mixed_density(n * n, ancilla.unwrap_or(n * n), &mut rng),
                };
                let (x, y, omega) = to_components(&rho, &basis, read_tol)?;
                StateJson::Bipartite(BipartiteStateJson { n, x, y, omega: RMatrix::to_rows(&omega) })
            }
        });
    }
    if count == 1 {
        write_json(g, &out[0])
    } else {
        write_json(g, &out)
    }
}
