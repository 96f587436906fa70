//! Entanglement and correlation measures, and the entropy-to-correlator bound functions
//! `f`, `g` together with their inverses.
//!
//! All logarithms are base 2, with `0·log₂0 = 0`.

use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, HERMITIAN_TOL};
use crate::qcore::Gate;

/// Slack accepted on the closed ends of `[0, 1]` and `[1, 2]` before an argument is rejected.
const DOMAIN_SLACK: f64 = 1e-12;

const BISECTION_MAX_ITERS: usize = 200;
const BISECTION_VALUE_TOL: f64 = 1e-12;
const BISECTION_WIDTH_TOL: f64 = 1e-13;

/// `x·log₂x`, zero at zero.
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Measures of one (or two) register qubits versus the rest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    /// `S = 2(1 − Tr ρ²)`; single-qubit reports only.
    pub purity_s: Option<f64>,
    /// `S_v` for one qubit, `S_v2` for a pair.
    pub von_neumann: f64,
    /// `C_z` for one qubit, `C_zz` for a pair.
    pub correlator: f64,
    /// Bloch vector length `r`; single-qubit reports only.
    pub bloch_length: Option<f64>,
}

impl EntanglementReport {
    pub fn single_qubit(rho: &DensityMatrix) -> Result<Self> {
        let bloch = bloch_vector(rho)?;
        Ok(EntanglementReport {
            purity_s: Some(purity_entanglement(rho)?),
            von_neumann: von_neumann(rho)?,
            correlator: bloch[2],
            bloch_length: Some(bloch.iter().map(|c| c * c).sum::<f64>().sqrt()),
        })
    }

    pub fn pair(rho: &DensityMatrix) -> Result<Self> {
        Ok(EntanglementReport {
            purity_s: None,
            von_neumann: von_neumann(rho)?,
            correlator: correlator(rho, &zz())?,
            bloch_length: None,
        })
    }
}

fn require_qubits(rho: &DensityMatrix, n: usize) -> Result<()> {
    if rho.n_qubits() != n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// `Z ⊗ Z`
pub fn zz() -> ComplexMatrix {
    kron(&Gate::Z.matrix(), &Gate::Z.matrix())
}

/// `S = 2[1 − Tr(ρ²)]` of a single-qubit state.
pub fn purity_entanglement(rho: &DensityMatrix) -> Result<f64> {
    require_qubits(rho, 1)?;
    Ok(2.0 * (1.0 - rho.purity()))
}

/// `−Tr(ρ log₂ ρ)`.
pub fn von_neumann(rho: &DensityMatrix) -> Result<f64> {
    Ok(-rho.spectrum().into_iter().map(xlog2x).sum::<f64>()).map(|s| s.max(0.0))
}

/// `Tr(ρ O)` for a Hermitian observable `O`.
pub fn correlator(rho: &DensityMatrix, observable: &ComplexMatrix) -> Result<f64> {
    let dev = observable.hermiticity_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let value = rho.expectation(observable)?;
    debug_assert!(value.im.abs() < 1e-12, "imaginary residue {}", value.im);
    Ok(value.re)
}

/// `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)` of a single-qubit state.
pub fn bloch_vector(rho: &DensityMatrix) -> Result<[f64; 3]> {
    require_qubits(rho, 1)?;
    Ok([
        correlator(rho, &Gate::X.matrix())?,
        correlator(rho, &Gate::Y.matrix())?,
        correlator(rho, &Gate::Z.matrix())?,
    ])
}

fn check_unit_interval(what: &'static str, x: f64) -> Result<f64> {
    if !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&x) {
        return Err(Error::OutOfDomain {
            what,
            value: x,
            domain: "[0, 1]",
        });
    }
    Ok(x.clamp(0.0, 1.0))
}

/// `f(x) = −((1+x)/2)log₂((1+x)/2) − ((1−x)/2)log₂((1−x)/2)`, decreasing from 1 to 0 on `[0, 1]`.
pub fn f(c: f64) -> Result<f64> {
    let c = check_unit_interval("f argument", c)?;
    Ok(f_unchecked(c))
}

fn f_unchecked(c: f64) -> f64 {
    -xlog2x((1.0 + c) / 2.0) - xlog2x((1.0 - c) / 2.0)
}

/// `g(x) = −((1+x)/2)log₂((1+x)/4) − ((1−x)/2)log₂((1−x)/4)`, decreasing from 2 to 1 on `[0, 1]`.
pub fn g(c: f64) -> Result<f64> {
    let c = check_unit_interval("g argument", c)?;
    Ok(g_unchecked(c))
}

fn g_unchecked(c: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * (p / 2.0).log2() };
    term((1.0 + c) / 2.0) + term((1.0 - c) / 2.0)
}

/// Unique `c ∈ [0, 1]` with `f(c) = s`.
pub fn f_inverse(s: f64) -> Result<f64> {
    let s = check_unit_interval("S_v", s)?;
    if s == 1.0 {
        return Ok(0.0);
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    Ok(invert_decreasing(f_unchecked, s))
}

/// Unique `c ∈ [0, 1]` with `g(c) = s`. Entropies below 1 are outside the range of `g` and are
/// rejected with [`Error::BelowBoundDomain`].
pub fn g_inverse(s: f64) -> Result<f64> {
    if s.is_nan() {
        return Err(Error::OutOfDomain {
            what: "S_v2",
            value: s,
            domain: "[1, 2]",
        });
    }
    if s < 1.0 {
        return Err(Error::BelowBoundDomain(s));
    }
    if s > 2.0 + DOMAIN_SLACK {
        return Err(Error::OutOfDomain {
            what: "S_v2",
            value: s,
            domain: "[1, 2]",
        });
    }
    let s = s.min(2.0);
    if s == 2.0 {
        return Ok(0.0);
    }
    if s == 1.0 {
        return Ok(1.0);
    }
    Ok(invert_decreasing(g_unchecked, s))
}

/// Bisection on `[0, 1]` for a strictly decreasing function.
fn invert_decreasing(func: impl Fn(f64) -> f64, target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut mid = 0.5;
    for _ in 0..BISECTION_MAX_ITERS {
        mid = 0.5 * (lo + hi);
        let value = func(mid);
        if (value - target).abs() <= BISECTION_VALUE_TOL || hi - lo <= BISECTION_WIDTH_TOL {
            break;
        }
        if value > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    mid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ComplexMatrix, C64};
    use approx::assert_abs_diff_eq;

    fn dm(diag: &[f64]) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::real_diagonal(diag)).unwrap()
    }

    /// Binary entropy computed straight from its definition; independent of `f`.
    fn h2(p: f64) -> f64 {
        -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
    }

    #[test]
    fn purity_examples() {
        assert_abs_diff_eq!(
            purity_entanglement(&dm(&[0.5, 0.5])).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            purity_entanglement(&dm(&[1.0, 0.0])).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            purity_entanglement(&dm(&[0.9, 0.1])).unwrap(),
            0.36,
            epsilon = 1e-12
        );
        assert!(purity_entanglement(&dm(&[0.25; 4])).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        assert_abs_diff_eq!(von_neumann(&dm(&[0.25; 4])).unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            von_neumann(&dm(&[0.9, 0.1])).unwrap(),
            0.4690,
            epsilon = 1e-3
        );
        assert_abs_diff_eq!(
            von_neumann(&dm(&[0.9, 0.1])).unwrap(),
            h2(0.9),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            von_neumann(&dm(&[0.3, 0.0, 0.0, 0.7])).unwrap(),
            0.8813,
            epsilon = 1e-3
        );
        assert_eq!(von_neumann(&dm(&[1.0, 0.0])).unwrap(), 0.0);
    }

    #[test]
    fn correlator_examples() {
        let plus =
            DensityMatrix::new(ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])).unwrap();
        assert_abs_diff_eq!(
            correlator(&plus, &Gate::Z.matrix()).unwrap(),
            0.0,
            epsilon = 1e-15
        );

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
        ];
        let rho = DensityMatrix::new(ComplexMatrix::outer(&bell)).unwrap();
        assert_abs_diff_eq!(correlator(&rho, &zz()).unwrap(), 1.0, epsilon = 1e-15);

        for lambda in [0.0, 0.3, 0.5, 1.0] {
            let r = dm(&[lambda, 0.0, 0.0, 1.0 - lambda]);
            assert_eq!(correlator(&r, &zz()).unwrap(), 1.0);
        }
        assert!(matches!(
            correlator(&plus, &zz()),
            Err(Error::DimensionMismatch { .. })
        ));
        let non_herm = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            correlator(&plus, &non_herm),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn f_and_g_values() {
        assert_eq!(f(0.0).unwrap(), 1.0);
        assert_eq!(f(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(f(0.5).unwrap(), h2(0.75), epsilon = 1e-15);
        assert_abs_diff_eq!(f(0.5).unwrap(), 0.8113, epsilon = 1e-4);
        assert_eq!(g(0.0).unwrap(), 2.0);
        assert_eq!(g(1.0).unwrap(), 1.0);
        assert_abs_diff_eq!(g(0.5).unwrap(), 1.8113, epsilon = 1e-4);
        assert_abs_diff_eq!(g(0.5).unwrap(), 1.0 + f(0.5).unwrap(), epsilon = 1e-15);
        assert!(f(1.1).is_err());
        assert!(g(-0.1).is_err());
    }

    #[test]
    fn inverse_values() {
        assert_eq!(f_inverse(1.0).unwrap(), 0.0);
        assert_eq!(f_inverse(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(f_inverse(0.4690).unwrap(), 0.8, epsilon = 1e-3);
        assert_eq!(g_inverse(2.0).unwrap(), 0.0);
        assert_eq!(g_inverse(1.0).unwrap(), 1.0);
        assert_abs_diff_eq!(g_inverse(1.8113).unwrap(), 0.5, epsilon = 1e-3);
    }

    #[test]
    fn inverse_domain_errors() {
        assert_eq!(g_inverse(0.88), Err(Error::BelowBoundDomain(0.88)));
        assert!(matches!(g_inverse(2.5), Err(Error::OutOfDomain { .. })));
        assert!(matches!(f_inverse(-0.5), Err(Error::OutOfDomain { .. })));
        assert!(matches!(
            f_inverse(f64::NAN),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn single_qubit_report_consistency() {
        let m = ComplexMatrix::from_rows(&[
            &[C64::new(0.7, 0.0), C64::new(0.1, -0.2)],
            &[C64::new(0.1, 0.2), C64::new(0.3, 0.0)],
        ]);
        let rho = DensityMatrix::new(m).unwrap();
        let rep = EntanglementReport::single_qubit(&rho).unwrap();
        let b = bloch_vector(&rho).unwrap();
        let s = rep.purity_s.unwrap();
        assert_abs_diff_eq!(
            1.0 - s,
            b.iter().map(|x| x * x).sum::<f64>(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            rep.von_neumann,
            f(rep.bloch_length.unwrap()).unwrap(),
            epsilon = 1e-12
        );
    }
}
