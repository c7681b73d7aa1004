//! Values frozen from an independent dense diagonalization (LAPACK via numpy).

use approx::assert_abs_diff_eq;
use rabi_core::model::build_full_fock;
use rabi_core::solver::{convergence_filter, solve_hermitian};
use rabi_core::ModelParams;

#[test]
fn ground_state_small_cutoff() {
    let p = ModelParams::new(1.0, 0.5, 0.1).unwrap();
    let h = build_full_fock(&p, 64).unwrap();
    let pairs = solve_hermitian(&h, 1).unwrap();
    assert_abs_diff_eq!(pairs[0].value, -0.5102660183012444, epsilon = 1e-12);
    let h = build_full_fock(&p, 128).unwrap();
    assert_abs_diff_eq!(solve_hermitian(&h, 1).unwrap()[0].value, -0.5102660183012486, epsilon = 1e-12);
}

#[test]
fn lowest_ten_at_512() {
    const FROZEN: [f64; 10] = [
        -0.545420844055256,
        -0.1450993769996093,
        0.05150735028141019,
        0.25231447851262456,
        0.457121872204161,
        0.6028703295512856,
        0.6728194832448373,
        0.9386183576313177,
        0.9589713868552001,
        1.194957007860924,
    ];
    let p = ModelParams::new(1.0, 0.5, 0.2).unwrap();
    let h = build_full_fock(&p, 512).unwrap();
    let s = convergence_filter(solve_hermitian(&h, 10).unwrap(), 0.2, 1e-6).unwrap();
    assert_eq!(s.converged_count(), 10);
    for (v, f) in s.converged_values().iter().zip(FROZEN) {
        assert_abs_diff_eq!(*v, f, epsilon = 1e-10);
    }
}

#[test]
fn decoupled_levels() {
    let p = ModelParams::new(1.0, 1.0, 0.0).unwrap();
    for n in [4, 8] {
        let h = build_full_fock(&p, n).unwrap();
        let v: Vec<f64> = solve_hermitian(&h, 4).unwrap().iter().map(|p| p.value).collect();
        for (a, b) in v.iter().zip([-0.5, 0.5, 0.5, 1.5]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-13);
        }
    }
}
