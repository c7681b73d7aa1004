//! Acceptance criteria, one test per criterion. Each prints a single
//! `PASS`/`FAIL` line before asserting.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::Instant;

use common::{block_completeness, params, spectrum, trapezoid};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rabi_core::analytic::{
    classify_regime, critical_coupling, degenerate_spectrum, fock_to_position, harmonic_levels, hermite_gauss,
    kummer_1f1, sector_to_fock,
};
use rabi_core::format::csv_row;
use rabi_core::matrix::TridiagonalMatrix;
use rabi_core::model::{
    boson_parity, build_full_fock, build_phase_space, build_rotated_fock, build_subspace_tridiagonal,
    tensor_qubit_identity,
};
use rabi_core::representation::{FullFock, ParityBlock, PhaseSpace, RotatedFock};
use rabi_core::solver::{convergence_filter, solve_hermitian, solve_tridiagonal, tail_norm, EigenPair};
use rabi_core::sweep::{
    detect_collapse, exceptional_state, run_sweep, CollapseEstimate, CouplingSpec, Grid, SweepConfig,
};
use rabi_core::SubspaceLabel;

const SLICES: [(f64, f64); 4] = [(0.0, 0.45), (1.0, 0.5), (1.0, 0.45), (0.95, 0.5)];
const SWEEP_CUTOFF: usize = 1024;
const VERIFY_CUTOFF: usize = 8192;

fn report(id: u32, title: &str, pass: bool, detail: &str) {
    println!("{} criterion {id}: {title}: {detail}", if pass { "PASS" } else { "FAIL" });
}

/// 200 steps over `[0, 2] g_c`, so `g_c` itself is the middle comb point.
fn coarse_comb(omega0: Vec<f64>, omega: Vec<f64>) -> SweepConfig {
    let mut c = SweepConfig::new(
        Grid::Values(omega0),
        Grid::Values(omega),
        CouplingSpec::RelativeToCritical(Grid::Linspace { start: 0.0, stop: 2.0, count: 201 }),
    );
    c.cutoff = SWEEP_CUTOFF;
    c
}

fn estimate(omega0: f64, omega: f64) -> ((f64, f64), f64) {
    let start = Instant::now();
    let result = run_sweep(&coarse_comb(vec![omega0], vec![omega])).unwrap();
    let seconds = start.elapsed().as_secs_f64();
    assert_eq!(result.failures(), 0);
    match detect_collapse(&result, omega0, omega, "q14+").unwrap() {
        CollapseEstimate::Collapsed { coupling, step } => ((coupling, step), seconds),
        CollapseEstimate::NoCollapse => ((f64::NAN, f64::NAN), seconds),
    }
}

#[test]
fn criterion_1_critical_coupling() {
    let mut pass = true;
    let mut parts = Vec::new();
    for (omega0, omega) in SLICES {
        let gc = critical_coupling(omega).unwrap();
        let ((g, step), seconds) = estimate(omega0, omega);
        let ok = (g - gc).abs() <= step && seconds < 300.0;
        pass &= ok;
        parts.push(format!("(w0={omega0}, w={omega}) g_c={g} expected {gc} step {step:.5} in {seconds:.1}s"));
    }
    report(1, "collapse located within one comb step", pass, &parts.join("; "));
    assert!(pass);
}

#[test]
fn criterion_2_qubit_frequency_independence() {
    let omega0 = [0.0, 0.95, 1.0, 1.05];
    let result = run_sweep(&coarse_comb(omega0.to_vec(), vec![0.5])).unwrap();
    let found: Vec<(f64, f64)> = omega0
        .iter()
        .map(|&w0| match detect_collapse(&result, w0, 0.5, "q14+").unwrap() {
            CollapseEstimate::Collapsed { coupling, step } => (coupling, step),
            CollapseEstimate::NoCollapse => (f64::NAN, f64::NAN),
        })
        .collect();
    let lo = found.iter().map(|f| f.0).fold(f64::INFINITY, f64::min);
    let hi = found.iter().map(|f| f.0).fold(f64::NEG_INFINITY, f64::max);
    let step = found.iter().map(|f| f.1).fold(0.0, f64::max);
    let pass = hi - lo <= step;
    report(
        2,
        "g_c independent of omega0 at omega=0.5",
        pass,
        &format!("estimates {:?}, spread {:.3e}, step {step:.5}", found.iter().map(|f| f.0).collect::<Vec<_>>(), hi - lo),
    );
    assert!(pass);
}

#[test]
fn criterion_3_degenerate_analytic_oracle() {
    let mut worst: f64 = 0.0;
    let mut complete = true;
    for g2 in [0.0, 0.1, 0.2] {
        let p = params(0.0, 0.45, g2);
        for label in SubspaceLabel::ALL {
            let exact = degenerate_spectrum(&p, label, 10).unwrap();
            let numeric = spectrum(&ParityBlock(label), &p, 4096, 10).converged_values();
            complete &= numeric.len() == 10;
            for (n, e) in numeric.iter().zip(&exact) {
                worst = worst.max(((n - e) / e).abs());
            }
        }
    }
    let pass = complete && worst < 1e-8;
    report(3, "degenerate spectra match Omega(2m+2q)", pass, &format!("max relative error {worst:.3e} (< 1e-8), all 10 converged: {complete}"));
    assert!(pass);
}

#[test]
fn criterion_4_exceptional_state() {
    let mut pass = true;
    let mut parts = Vec::new();
    for (omega0, omega) in SLICES {
        let gc = critical_coupling(omega).unwrap();
        let mut config = SweepConfig::new(
            Grid::Values(vec![omega0]),
            Grid::Values(vec![omega]),
            CouplingSpec::Absolute(Grid::Values(vec![gc])),
        );
        config.cutoff = VERIFY_CUTOFF;
        config.subspaces = SubspaceLabel::ALL.iter().map(|l| l.name().to_string()).collect();
        let result = run_sweep(&config).unwrap();
        let counts: Vec<String> = result
            .rows
            .iter()
            .map(|r| format!("{}:{}", r.subspace, r.converged_count().unwrap()))
            .collect();
        let featured = &result.rows[0];
        let (ok, overlap) = match exceptional_state(featured, &config) {
            Ok(state) => (state.overlap > 0.9, format!("{:.4}", state.overlap)),
            Err(_) => (false, "n/a".to_string()),
        };
        let others: Vec<String> = result.rows[1..]
            .iter()
            .filter_map(|r| exceptional_state(r, &config).ok().map(|s| format!("{} {:.4}", r.subspace, s.overlap)))
            .collect();
        pass &= ok;
        parts.push(format!(
            "(w0={omega0}, w={omega}) q14+ count {} overlap {overlap} [counts {}; other overlaps {}]",
            featured.converged_count().unwrap(),
            counts.join(" "),
            if others.is_empty() { "none".into() } else { others.join(", ") }
        ));
    }
    report(4, "single converged state at g_c with ground-state overlap > 0.9", pass, &parts.join("; "));
    assert!(pass);
}

#[test]
fn criterion_5_representation_equivalence() {
    let mut pass = true;
    let mut parts = Vec::new();
    for g2 in [0.0, 0.1, 0.2] {
        let c = block_completeness(&params(1.0, 0.5, g2), 128, 256);
        pass &= c.residual < 1e-8;
        parts.push(format!("g2={g2}: {} levels residual {:.2e}", c.full_levels, c.residual));
    }
    let mut chain: f64 = 0.0;
    for g2 in [0.0, 0.1, 0.2] {
        let p = params(1.0, 0.5, g2);
        let lab = spectrum(&FullFock, &p, 256, 20);
        let quad = spectrum(&PhaseSpace, &p, 256, 20);
        let rot = spectrum(&RotatedFock, &p, 256, 20);
        for ((a, b), c) in lab.pairs.iter().zip(&quad.pairs).zip(&rot.pairs) {
            chain = chain.max((a.value + 0.5 * p.omega - b.value).abs());
            chain = chain.max((b.value - c.value).abs());
        }
    }
    pass &= chain < 1e-8;
    parts.push(format!("rotation chain max deviation {chain:.2e}"));
    report(5, "parity blocks and rotations reproduce the full model", pass, &parts.join("; "));
    assert!(pass);
}

#[test]
fn criterion_6_eigenfunction_match() {
    let p = params(0.0, 0.5, 0.1);
    let label = SubspaceLabel::ALL[0];
    let x: Vec<f64> = (0..2001).map(|i| -10.0 + 0.01 * i as f64).collect();
    let ground = &solve_tridiagonal(&build_subspace_tridiagonal(label, &p, 2048).unwrap(), 1).unwrap()[0];
    let numeric = fock_to_position(&sector_to_fock(label.bargmann, &ground.vector.to_complex()), &x).unwrap();
    let analytic = hermite_gauss(0, &classify_regime(&p, 0.0), &x).unwrap();
    let sign = numeric.iter().zip(&analytic).map(|(n, a)| n.re * a).sum::<f64>().signum();
    let sq: Vec<f64> = numeric
        .iter()
        .zip(&analytic)
        .map(|(n, a)| (n - Complex64::new(sign * a, 0.0)).norm_sqr())
        .collect();
    let err = trapezoid(&sq, 0.01).sqrt();
    let pass = err < 1e-6;
    report(6, "numeric ground state equals the Hermite-Gauss mode", pass, &format!("L2 grid error {err:.3e} (< 1e-6)"));
    assert!(pass);
}

fn orthonormality_defect(pairs: &[EigenPair]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in pairs.iter().enumerate() {
        worst = worst.max((a.vector.norm() - 1.0).abs() * 1e2);
        for b in &pairs[i + 1..] {
            worst = worst.max(a.vector.inner(&b.vector).norm());
        }
    }
    worst
}

#[test]
fn criterion_7_property_suites() {
    let points = [params(1.0, 0.5, 0.1), params(0.95, 0.5, 0.25), params(0.0, 0.45, 0.2), params(0.3, 1.2, 0.9)];
    let mut checks: Vec<(&str, bool)> = Vec::new();

    let hermitian = points.iter().all(|p| {
        [build_full_fock(p, 40), build_phase_space(p, 40), build_rotated_fock(p, 40)]
            .into_iter()
            .all(|h| h.unwrap().max_asymmetry() == 0.0)
    });
    checks.push(("hermiticity", hermitian));

    let parity = tensor_qubit_identity(&boson_parity(256).unwrap()).unwrap().to_dense();
    let commute = points.iter().all(|p| {
        let h: DMatrix<Complex64> = build_full_fock(p, 256).unwrap().to_dense();
        (&h * &parity - &parity * &h).iter().all(|z| *z == Complex64::new(0.0, 0.0))
    });
    checks.push(("parity commutation", commute));

    let gauge = points.iter().all(|p| {
        SubspaceLabel::ALL.iter().all(|&l| {
            let t = build_subspace_tridiagonal(l, p, 64).unwrap();
            let f = TridiagonalMatrix::new(t.diag().to_vec(), t.offdiag().iter().map(|e| -e).collect()).unwrap();
            let (a, b) = (solve_tridiagonal(&t, 64).unwrap(), solve_tridiagonal(&f, 64).unwrap());
            a.iter().zip(&b).all(|(x, y)| (x.value - y.value).abs() <= 1e-12 * (1.0 + x.value.abs()))
        })
    });
    checks.push(("gauge invariance", gauge));

    let p = points[0];
    let pairs = solve_tridiagonal(&build_subspace_tridiagonal(SubspaceLabel::ALL[0], &p, 256).unwrap(), 20).unwrap();
    let once = convergence_filter(pairs, 0.2, 1e-6).unwrap();
    let twice = convergence_filter(once.pairs.clone(), 0.2, 1e-6).unwrap();
    let monotone = once.pairs.iter().all(|q| {
        tail_norm(&q.vector, q.layout, 0.1).unwrap() <= tail_norm(&q.vector, q.layout, 0.2).unwrap()
    });
    checks.push(("filter idempotence", once == twice && monotone));

    let full = solve_hermitian(&build_full_fock(&p, 128).unwrap(), 30).unwrap();
    checks.push(("orthonormality", orthonormality_defect(&full) <= 1e-10 && orthonormality_defect(&once.pairs) <= 1e-10));

    let equidistant = [0.0, 0.1, 0.2].iter().all(|&g2| {
        let q = params(0.0, 0.45, g2);
        let big = (0.45f64 * 0.45 - 4.0 * g2 * g2).sqrt();
        let levels = harmonic_levels(q.alpha_plus(), q.alpha_minus(), 0.25, 20).unwrap();
        levels == harmonic_levels(q.alpha_minus(), q.alpha_plus(), 0.25, 20).unwrap()
            && levels.windows(2).all(|w| (w[1] - w[0] - 2.0 * big).abs() < 1e-12)
    });
    checks.push(("equidistance", equidistant));

    let kummer = (0..=100).all(|i| {
        let z = -5.0 + 0.1 * i as f64;
        (kummer_1f1(1.0, 1.0, z).unwrap() - z.exp()).abs() <= 1e-12 * z.exp()
    });
    checks.push(("kummer identities", kummer));

    let mut config = coarse_comb(vec![0.0, 1.0], vec![0.5]);
    config.cutoff = 128;
    config.coupling = CouplingSpec::RelativeToCritical(Grid::Linspace { start: 0.0, stop: 1.2, count: 13 });
    let table = |r: &rabi_core::sweep::SweepResult| -> String {
        r.rows
            .iter()
            .map(|row| {
                let o = row.outcome.as_ref().unwrap();
                let mut fields = vec![row.params.omega0, row.params.omega, row.params.g2, o.converged_count as f64];
                fields.extend(&o.energies);
                csv_row(&fields)
            })
            .collect()
    };
    let a = table(&rabi_core::sweep::run_sweep_with_threads(&config, Some(1)).unwrap());
    let b = table(&rabi_core::sweep::run_sweep_with_threads(&config, Some(3)).unwrap());
    checks.push(("csv determinism", a == b && !a.contains('\r')));

    let pass = checks.iter().all(|c| c.1);
    let detail: Vec<String> = checks
        .iter()
        .map(|(n, ok)| format!("{n} {}", if *ok { "ok" } else { "FAILED" }))
        .collect();
    report(7, "property suites", pass, &detail.join(", "));
    assert!(pass);
}
