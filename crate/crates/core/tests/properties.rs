use std::f64::consts::PI;

use adqc_fidelity::density::DensityMatrix;
use adqc_fidelity::entropy::{f, f_inverse, g, g_inverse};
use adqc_fidelity::linalg::{
    hermitian_eigenvalues, inner, kron, norm_sqr, partial_trace_pure, phase_aligned_distance,
    ComplexMatrix, C64, ZERO,
};
use adqc_fidelity::protocols::{mean_gate_fidelity, run_protocol, ProtocolKind, ProtocolSpec};
use adqc_fidelity::qcore::{
    apply_gate, deviated_u_basis, deviated_z_basis, measure_branch, random_pure_state, reconstruct,
    sample_rng, Gate, PureState,
};
use adqc_fidelity::verify::{
    check_interm, check_jonas, check_monotonicity, random_density_matrix_from,
};
use proptest::prelude::*;

fn matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |v| {
        ComplexMatrix::from_vec(
            dim,
            dim,
            v.into_iter().map(|(re, im)| C64::new(re, im)).collect(),
        )
    })
}

/// Columns of a random unitary, by Gram-Schmidt on random vectors.
fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let n = dim.trailing_zeros() as usize;
    let mut cols: Vec<Vec<C64>> = Vec::new();
    for k in 0..dim as u64 {
        let mut v = random_pure_state(n, seed.wrapping_add(k))
            .unwrap()
            .into_amplitudes();
        for c in &cols {
            let proj = inner(c, &v);
            for (x, y) in v.iter_mut().zip(c) {
                *x -= proj * y;
            }
        }
        let norm = norm_sqr(&v).sqrt();
        cols.push(v.into_iter().map(|x| x / norm).collect());
    }
    let mut data = vec![ZERO; dim * dim];
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            data[i * dim + j] = x;
        }
    }
    ComplexMatrix::from_vec(dim, dim, data)
}

fn nonzero_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.retain(|&x| x > 1e-9);
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative(a in matrix(2), b in matrix(2), c in matrix(2)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) < 1e-14);
    }

    #[test]
    fn bipartite_spectra_agree(seed in any::<u64>(), n in 2usize..=5, cut in 1usize..5) {
        let cut = cut.min(n - 1);
        let psi = random_pure_state(n, seed).unwrap();
        let a: Vec<usize> = (0..cut).collect();
        let b: Vec<usize> = (cut..n).collect();
        let ra = hermitian_eigenvalues(&partial_trace_pure(psi.amplitudes(), &a).unwrap()).unwrap();
        let rb = hermitian_eigenvalues(&partial_trace_pure(psi.amplitudes(), &b).unwrap()).unwrap();
        let (ra, rb) = (nonzero_sorted(ra), nonzero_sorted(rb));
        prop_assert_eq!(ra.len(), rb.len());
        for (x, y) in ra.iter().zip(&rb) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn eigenvalues_of_rotated_diagonal(seed in any::<u64>(), d in prop::collection::vec(-3.0f64..3.0, 8)) {
        let u = random_unitary(8, seed);
        let m = u.matmul(&ComplexMatrix::real_diagonal(&d)).matmul(&u.adjoint());
        let got = hermitian_eigenvalues(&m).unwrap();
        let mut want = d.clone();
        want.sort_by(f64::total_cmp);
        for (x, y) in got.iter().zip(&want) {
            prop_assert!((x - y).abs() < 1e-10, "{:?} vs {:?}", got, want);
        }
    }

    #[test]
    fn deviated_bases_are_orthonormal(u in -7.0f64..7.0, eps in 0.0f64..=PI, delta in -7.0f64..7.0) {
        prop_assert!(deviated_u_basis(u, eps, delta).orthonormality_defect() < 1e-14);
        prop_assert!(deviated_z_basis(eps, delta).orthonormality_defect() < 1e-14);
    }

    #[test]
    fn measurement_branches_reconstruct_the_state(
        seed in any::<u64>(), n in 1usize..=5, q in 0usize..5, u in 0.0f64..6.3, eps in 0.0f64..=PI, delta in 0.0f64..6.3,
    ) {
        let q = q % n;
        let psi = random_pure_state(n, seed).unwrap();
        let basis = deviated_u_basis(u, eps, delta);
        let branches = measure_branch(&psi, q, &basis).unwrap();
        prop_assert!((branches.0.probability + branches.1.probability - 1.0).abs() < 1e-12);
        let back = reconstruct(&branches, q, &basis);
        for (a, b) in back.iter().zip(psi.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn protocol_branch_probabilities_sum_to_one(
        seed in any::<u64>(), kind in 0usize..5, n in 2usize..=5, u in 0.0f64..6.3, eps in 0.0f64..=PI, delta in 0.0f64..6.3,
    ) {
        let kind = ProtocolKind::ALL[kind];
        let psi = random_pure_state(n, seed).unwrap();
        let spec = if kind.is_rotation() {
            ProtocolSpec::rotation(kind, n - 1, u, eps, delta).unwrap()
        } else {
            ProtocolSpec::two_qubit(kind, n - 1, 0, eps, delta).unwrap()
        };
        let r = run_protocol(&psi, &spec).unwrap();
        let total: f64 = r.branches.iter().map(|b| b.probability()).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        for b in &r.branches {
            prop_assert!((b.ideal_probability - 0.5).abs() < 1e-12);
        }
        let fid = mean_gate_fidelity(&r);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&fid));
    }

    #[test]
    fn inverse_functions_round_trip(x in 0.0f64..=1.0, s in 0.0f64..=1.0) {
        prop_assert!((f_inverse(f(x).unwrap()).unwrap() - x).abs() < 1e-6);
        prop_assert!((f(f_inverse(s).unwrap()).unwrap() - s).abs() < 1e-9);
        prop_assert!((g(g_inverse(1.0 + s).unwrap()).unwrap() - 1.0 - s).abs() < 1e-9);
        prop_assert!((g(x).unwrap() - 1.0 - f(x).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn appendix_slacks_form_a_chain(seed in any::<u64>()) {
        let (rho, _) = random_density_matrix_from(2, &mut sample_rng(seed, 0)).unwrap();
        let quarter = DensityMatrix::maximally_mixed(2).unwrap();
        let mono = check_monotonicity(&rho, &quarter).unwrap();
        let interm = check_interm(&rho).unwrap();
        let jonas = check_jonas(&rho).unwrap();
        prop_assert!((mono - interm).abs() < 1e-10);
        prop_assert!(interm >= -1e-9);
        prop_assert!(interm <= jonas + 1e-10);
    }

    #[test]
    fn ancilla_interactions_agree_on_plus_ancilla(seed in any::<u64>(), n in 1usize..=4, t in 0usize..4) {
        let t = t % n;
        let input = random_pure_state(n, seed).unwrap().tensor(&PureState::plus()).unwrap();
        let e_cz = apply_gate(&input, &Gate::ECz.matrix(), &[t, n]).unwrap();
        let cz_swap = apply_gate(&input, &Gate::CzSwap.matrix(), &[t, n]).unwrap();
        prop_assert!(phase_aligned_distance(e_cz.amplitudes(), cz_swap.amplitudes()) < 1e-14);
    }
}

#[test]
fn hadamard_pair_acts_as_swap_on_aligned_inputs() {
    let hh = kron(&Gate::H.matrix(), &Gate::H.matrix());
    let swap = Gate::Swap.matrix();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let zero_plus = [C64::new(h, 0.0), C64::new(h, 0.0), ZERO, ZERO];
    let one_minus = [ZERO, ZERO, C64::new(h, 0.0), C64::new(-h, 0.0)];
    for v in [zero_plus, one_minus] {
        let a = hh.apply(&v);
        let b = swap.apply(&v);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-15);
        }
    }
}
