//! Property and oracle tests for the eigensolver and spectral operations.

mod common;

use dirichlet_core::bounds::sine_bound;
use dirichlet_core::spectral::{
    self, dirichlet_laplacian, dirichlet_spectrum, rayleigh_quotient, symmetric_eigen,
    SymmetricMatrix, DEFAULT_SOLVER_TOL,
};
use proptest::prelude::*;
use rand::Rng;
use std::f64::consts::PI;

#[test]
fn jacobi_matches_charpoly_bisection_on_small_matrices() {
    let mut rng = common::rng(0x5eed_0001);
    for trial in 0..200 {
        let dim = rng.gen_range(1..=6);
        let a = common::random_symmetric(&mut rng, dim);
        let spectrum = symmetric_eigen(&a, DEFAULT_SOLVER_TOL).unwrap();
        for k in 0..dim {
            let oracle = common::kth_eigenvalue_by_bisection(&a, k);
            assert!(
                (spectrum.eigenvalues[k] - oracle).abs() <= 1e-8,
                "trial {trial}, k = {k}: {} vs oracle {} (eigenvalues {:?}, residual {:e}, matrix {:?})",
                spectrum.eigenvalues[k],
                oracle,
                spectrum.eigenvalues,
                spectrum.residual_tol,
                (0..dim).map(|i| (0..dim).map(|j| a.get(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn jacobi_matches_sine_form_on_tridiagonal_path_matrices() {
    for m in [3usize, 10, 57, 200] {
        let mut a = SymmetricMatrix::zeros(m);
        for i in 0..m {
            a.set_sym(i, i, 2.0);
            if i + 1 < m {
                a.set_sym(i, i + 1, -1.0);
            }
        }
        let spectrum = symmetric_eigen(&a, DEFAULT_SOLVER_TOL).unwrap();
        for k in 0..m {
            let expect = 4.0 * ((k + 1) as f64 * PI / (2 * (m + 1)) as f64).sin().powi(2);
            assert!(
                (spectrum.eigenvalues[k] - expect).abs() <= 1e-8,
                "m = {m}, k = {k}"
            );
        }
    }
}

#[test]
fn spectra_meet_residual_and_orthonormality_invariants() {
    let mut rng = common::rng(0x5eed_0002);
    for _ in 0..30 {
        let bg = common::random_boundary_graph(&mut rng, 40);
        let spectrum = dirichlet_spectrum(&bg).unwrap();
        assert!(spectrum.residual_tol <= 1e-9);
        let m = spectrum.eigenvalues.len();
        for i in 0..m {
            for j in i..m {
                let dot: f64 = spectrum.eigenvectors[i]
                    .iter()
                    .zip(&spectrum.eigenvectors[j])
                    .map(|(x, y)| x * y)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() <= 1e-9, "orthonormality at ({i},{j})");
            }
        }
    }
}

#[test]
fn perron_gap_and_positivity_on_random_instances() {
    let mut rng = common::rng(0x5eed_0003);
    for trial in 0..60 {
        let bg = if trial % 2 == 0 {
            common::random_boundary_graph(&mut rng, 40)
        } else {
            let n = rng.gen_range(4..80);
            common::random_leaf_boundary_tree(&mut rng, n)
        };
        let spectrum = dirichlet_spectrum(&bg).unwrap();
        let pair = spectral::ground_pair(&spectrum).unwrap();
        assert!(pair.lambda1 > 0.0);
        assert!(pair.eigenfunction.iter().all(|&x| x > 0.0));
        if spectrum.eigenvalues.len() >= 2 {
            assert!(
                spectrum.eigenvalues[1] - spectrum.eigenvalues[0] > 1e-8,
                "ground eigenvalue must be simple"
            );
        }
    }
}

#[test]
fn rayleigh_quotient_dominates_lambda1() {
    let mut rng = common::rng(0x5eed_0004);
    for _ in 0..8 {
        let bg = common::random_boundary_graph(&mut rng, 30);
        let lambda1 = spectral::lambda1(&bg).unwrap().lambda1;
        let dim = bg.interior().len();
        for _ in 0..200 {
            let f: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if f.iter().all(|&x| x == 0.0) {
                continue;
            }
            let rq = rayleigh_quotient(&bg, &f).unwrap();
            assert!(rq >= lambda1 - 1e-9);
        }
    }
}

#[test]
fn metrics_and_lambda1_are_relabeling_invariant() {
    let mut rng = common::rng(0x5eed_0005);
    for _ in 0..25 {
        let bg = common::random_boundary_graph(&mut rng, 30);
        let perm = common::random_permutation(&mut rng, bg.graph().vertex_count());
        let relabeled = common::permute(&bg, &perm);
        assert_eq!(bg.metrics(), relabeled.metrics());
        let l1 = spectral::lambda1(&bg).unwrap().lambda1;
        let l2 = spectral::lambda1(&relabeled).unwrap().lambda1;
        assert!((l1 - l2).abs() <= 1e-9);
    }
}

#[test]
fn metric_inequalities_on_random_instances() {
    let mut rng = common::rng(0x5eed_0007);
    for trial in 0..80 {
        let bg = if trial % 2 == 0 {
            common::random_boundary_graph(&mut rng, 50)
        } else {
            let n = rng.gen_range(4..120);
            common::random_leaf_boundary_tree(&mut rng, n)
        };
        let m = bg.metrics();
        assert!(m.inscribed_radius >= 1);
        assert!(m.inscribed_radius <= m.diameter, "trial {trial}");
        assert!(m.circumscribed_radius <= m.diameter, "trial {trial}");
        assert!(m.diameter <= 2 * m.circumscribed_radius, "trial {trial}");
        assert!(
            m.interior_boundary_edges >= m.boundary_size,
            "trial {trial}"
        );
    }
}

#[test]
fn ground_pair_rejects_mixed_sign_vectors() {
    use dirichlet_core::spectral::{ground_pair, SpectralError, Spectrum};
    let fake = Spectrum {
        eigenvalues: vec![1.0, 2.0],
        eigenvectors: vec![vec![0.8, -0.6], vec![0.6, 0.8]],
        residual_tol: 0.0,
    };
    assert!(matches!(
        ground_pair(&fake),
        Err(SpectralError::PerronViolation { index: 1, .. })
    ));
}

#[test]
fn laplacian_diagonal_counts_whole_graph_degrees() {
    let mut rng = common::rng(0x5eed_0006);
    for _ in 0..20 {
        let bg = common::random_boundary_graph(&mut rng, 25);
        let l = dirichlet_laplacian(&bg);
        for (i, &v) in bg.interior().iter().enumerate() {
            assert_eq!(l.get(i, i), bg.graph().degree(v) as f64);
        }
    }
}

proptest! {
    // partial sums s_i of a real sequence obey s_i^2 <= i * sum_{j<=i} a_j^2
    // and sum s_i^2 <= sum a_i^2 / (4 sin^2(pi/(4l+2)))
    #[test]
    fn partial_sum_inequalities(values in prop::collection::vec(-10.0..10.0f64, 1..30)) {
        let len = values.len();
        let mut partial = 0.0;
        let mut prefix_sq = 0.0;
        let mut sum_s_sq = 0.0;
        for (i, &a) in values.iter().enumerate() {
            partial += a;
            prefix_sq += a * a;
            sum_s_sq += partial * partial;
            prop_assert!(partial * partial <= (i + 1) as f64 * prefix_sq + 1e-9);
        }
        let cap = prefix_sq / sine_bound(len);
        prop_assert!(sum_s_sq <= cap + 1e-9);
    }

    // the min-matrix spectrum matches its sine closed form at every order
    #[test]
    fn minmatrix_closed_form(len in 1usize..40) {
        let report = spectral::minmatrix_spectrum(len);
        prop_assert!(report.max_discrepancy <= 1e-8);
    }
}
