//! Relative entropy, the computational-basis dephasing map, and the slack of each inequality in
//! the chain that bounds a two-qubit entropy by its `Z ⊗ Z` correlator.

use crate::density::{DensityMatrix, EIGEN_CLAMP};
use crate::entropy::{correlator, g, von_neumann, xlog2x, zz};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, inner, ComplexMatrix, C64};
use crate::qcore::{random_pure_state_from, PureState, SampleRng};

/// Support test threshold for relative entropy.
const SUPPORT_TOL: f64 = 1e-12;

fn require_pair(rho: &DensityMatrix) -> Result<()> {
    if rho.n_qubits() != 2 {
        return Err(Error::NotDensityMatrix(format!(
            "expected a two-qubit state, got {} qubit(s)",
            rho.n_qubits()
        )));
    }
    Ok(())
}

/// `H(ρ‖σ) = Tr(ρ log₂ ρ) − Tr(ρ log₂ σ)`; `+∞` when the support of `ρ` is not inside that of `σ`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let neg_entropy: f64 = rho.spectrum().into_iter().map(xlog2x).sum();
    let eig = hermitian_eigen(sigma.matrix())?;
    let mut cross = 0.0;
    for (k, &lambda) in eig.values.iter().enumerate() {
        let v = eig.vector(k);
        let weight = inner(&v, &rho.matrix().apply(&v)).re;
        if lambda < SUPPORT_TOL.max(EIGEN_CLAMP) {
            if weight > SUPPORT_TOL {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += weight * lambda.log2();
    }
    Ok(neg_entropy - cross)
}

/// `E(ρ) = Σ_ab ρ_ab |ab⟩⟨ab|`
pub fn dephasing_map(rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_pair(rho)?;
    let diag: Vec<C64> = rho
        .diagonal()
        .into_iter()
        .map(|x| C64::new(x, 0.0))
        .collect();
    DensityMatrix::new(ComplexMatrix::diagonal(&diag))
}

/// `H(ρ‖σ) − H(E(ρ)‖E(σ))`, nonnegative for a CPTP map.
///
/// An infinite left side makes the inequality vacuous and yields `+∞`.
pub fn check_monotonicity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let before = relative_entropy(rho, sigma)?;
    if before.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let after = relative_entropy(&dephasing_map(rho)?, &dephasing_map(sigma)?)?;
    Ok(before - after)
}

/// `Tr(ρ log₂ ρ) − Σ_ab ρ_ab log₂ ρ_ab`
pub fn check_interm(rho: &DensityMatrix) -> Result<f64> {
    require_pair(rho)?;
    let lhs: f64 = rho.spectrum().into_iter().map(xlog2x).sum();
    let rhs: f64 = rho.diagonal().into_iter().map(|x| xlog2x(x.max(0.0))).sum();
    Ok(lhs - rhs)
}

/// `g(|C_zz|) − S_v2(ρ)`
pub fn check_jonas(rho: &DensityMatrix) -> Result<f64> {
    require_pair(rho)?;
    let czz = correlator(rho, &zz())?.abs().min(1.0);
    Ok(g(czz)? - von_neumann(rho)?)
}

/// `λ|00⟩⟨00| + (1−λ)|11⟩⟨11|`
pub fn rho_lambda(lambda: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::OutOfDomain {
            what: "lambda",
            value: lambda,
            domain: "[0, 1]",
        });
    }
    DensityMatrix::new(ComplexMatrix::real_diagonal(&[
        lambda,
        0.0,
        0.0,
        1.0 - lambda,
    ]))
}

/// A random density matrix from the induced ensemble, along with the purification it came from
/// (its first `n_qubits` qubits carry the returned state).
pub fn random_density_matrix_from(
    n_qubits: usize,
    rng: &mut SampleRng,
) -> Result<(DensityMatrix, PureState)> {
    if !(1..=3).contains(&n_qubits) {
        return Err(Error::QubitCount(n_qubits, 1, 3));
    }
    let purification = random_pure_state_from(2 * n_qubits, rng)?;
    let keep: Vec<usize> = (0..n_qubits).collect();
    Ok((DensityMatrix::reduced(&purification, &keep)?, purification))
}

/// Partial trace over an equal-size half of a Haar-random pure state on `2·n_qubits` qubits.
pub fn random_density_matrix(n_qubits: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_matrix_from(n_qubits, &mut crate::qcore::sample_rng(seed, 0)).map(|(r, _)| r)
}
