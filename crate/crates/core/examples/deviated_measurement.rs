//! A measurement basis tilted by (ε, δ) and the branch probabilities it produces.

use std::f64::consts::FRAC_PI_3;

use adqc_fidelity::qcore::{deviated_u_basis, measure_branch, random_pure_state, reconstruct};

fn main() -> adqc_fidelity::Result<()> {
    let psi = random_pure_state(3, 11)?;
    for eps in [0.0, 0.4, FRAC_PI_3] {
        let basis = deviated_u_basis(0.7, eps, 0.2);
        let branches = measure_branch(&psi, 1, &basis)?;
        let back = reconstruct(&branches, 1, &basis);
        let err = back
            .iter()
            .zip(psi.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        println!(
            "ε = {eps:.3}: p0 = {:.6}, p1 = {:.6}, orthonormality defect {:.1e}, reconstruction error {err:.1e}",
            branches.0.probability,
            branches.1.probability,
            basis.orthonormality_defect()
        );
    }
    Ok(())
}
