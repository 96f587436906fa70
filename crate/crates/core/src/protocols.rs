//! Measurement-driven gate protocols with deviated measurements, the mean gate fidelity, its
//! closed form, the error operators, and the entanglement bounds on the fidelity.
//!
//! Every protocol appends a fresh ancilla in `|+⟩` as the last qubit of the register, runs its
//! interaction sequence, and measures one qubit:
//!
//! | kind                   | interaction                                   | measured  | basis        |
//! |------------------------|-----------------------------------------------|-----------|--------------|
//! | `ONEWAY_ROTATION`      | CZ(t, a)                                      | target    | deviated u   |
//! | `ADQC_ROTATION_CZ`     | E_CZ(t, a)                                    | ancilla   | deviated u   |
//! | `ADQC_ROTATION_CZSWAP` | CZSWAP(t, a)                                  | ancilla   | deviated u   |
//! | `ADQC_CZ_GATE`         | E_CZ(t1, a), E_CZ(t2, a)                      | ancilla   | deviated Z   |
//! | `ADQC_CZSWAP_GATE`     | CZSWAP(a, t1), CZSWAP(a, t2), CZSWAP(a, t1)   | ancilla   | deviated Z   |
//!
//! In the one-way rotation the ancilla takes over the measured qubit's slot, so every protocol
//! returns a register of the input's size.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::entropy::{f_inverse, g_inverse, zz, EntanglementReport};
use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix, C64, MAX_QUBITS};
use crate::qcore::{
    apply_gate, apply_to_vector, deviated_u_basis, deviated_z_basis, measure_branch,
    permute_qubits, Gate, MeasurementBasis, PureState,
};

/// `F` may exceed a bound by at most this much before a violation is recorded.
pub const VIOLATION_TOL: f64 = 1e-9;

const CORRELATOR_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProtocolKind {
    #[serde(rename = "ONEWAY_ROTATION")]
    OneWayRotation,
    AdqcRotationCz,
    #[serde(rename = "ADQC_ROTATION_CZSWAP")]
    AdqcRotationCzSwap,
    AdqcCzGate,
    #[serde(rename = "ADQC_CZSWAP_GATE")]
    AdqcCzSwapGate,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 5] = [
        ProtocolKind::OneWayRotation,
        ProtocolKind::AdqcRotationCz,
        ProtocolKind::AdqcRotationCzSwap,
        ProtocolKind::AdqcCzGate,
        ProtocolKind::AdqcCzSwapGate,
    ];

    pub const ROTATIONS: [ProtocolKind; 3] = [
        ProtocolKind::OneWayRotation,
        ProtocolKind::AdqcRotationCz,
        ProtocolKind::AdqcRotationCzSwap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProtocolKind::OneWayRotation => "ONEWAY_ROTATION",
            ProtocolKind::AdqcRotationCz => "ADQC_ROTATION_CZ",
            ProtocolKind::AdqcRotationCzSwap => "ADQC_ROTATION_CZSWAP",
            ProtocolKind::AdqcCzGate => "ADQC_CZ_GATE",
            ProtocolKind::AdqcCzSwapGate => "ADQC_CZSWAP_GATE",
        }
    }

    pub fn is_rotation(self) -> bool {
        Self::ROTATIONS.contains(&self)
    }

    pub fn target_count(self) -> usize {
        if self.is_rotation() {
            1
        } else {
            2
        }
    }

    pub fn error_kind(self) -> ErrorKind {
        match self {
            ProtocolKind::AdqcCzSwapGate => ErrorKind::ZzType,
            _ => ErrorKind::XType,
        }
    }
}

impl FromStr for ProtocolKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        ProtocolKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown protocol `{s}`")))
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which Pauli error a deviated measurement leaves behind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorKind {
    /// `X` on the first target.
    XType,
    /// `Z ⊗ Z` on the target pair.
    ZzType,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolSpec {
    pub kind: ProtocolKind,
    pub targets: Vec<usize>,
    pub u: Option<f64>,
    pub epsilon: f64,
    pub delta: f64,
}

impl ProtocolSpec {
    pub fn rotation(
        kind: ProtocolKind,
        target: usize,
        u: f64,
        epsilon: f64,
        delta: f64,
    ) -> Result<Self> {
        let spec = ProtocolSpec {
            kind,
            targets: vec![target],
            u: Some(u),
            epsilon,
            delta,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn two_qubit(
        kind: ProtocolKind,
        first: usize,
        second: usize,
        epsilon: f64,
        delta: f64,
    ) -> Result<Self> {
        let spec = ProtocolSpec {
            kind,
            targets: vec![first, second],
            u: None,
            epsilon,
            delta,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let want = self.kind.target_count();
        if self.targets.len() != want {
            return Err(Error::InvalidSpec(format!(
                "{} takes {want} target(s), got {}",
                self.kind,
                self.targets.len()
            )));
        }
        if self.kind.is_rotation() != self.u.is_some() {
            return Err(Error::InvalidSpec(format!(
                "{} {} a rotation angle",
                self.kind,
                if self.kind.is_rotation() {
                    "requires"
                } else {
                    "does not take"
                }
            )));
        }
        if want == 2 && self.targets[0] == self.targets[1] {
            return Err(Error::DuplicateIndex(self.targets[0]));
        }
        Ok(())
    }

    /// The same protocol with different measurement deviation.
    pub fn with_deviation(&self, epsilon: f64, delta: f64) -> Self {
        ProtocolSpec {
            epsilon,
            delta,
            ..self.clone()
        }
    }

    /// The same protocol with an accurate measurement.
    pub fn ideal(&self) -> Self {
        self.with_deviation(0.0, 0.0)
    }

    pub fn measurement_basis(&self) -> MeasurementBasis {
        match self.u {
            Some(u) => deviated_u_basis(u, self.epsilon, self.delta),
            None => deviated_z_basis(self.epsilon, self.delta),
        }
    }

    /// Qubits the byproduct and error operators act on.
    pub fn error_qubits(&self) -> &[usize] {
        match self.kind.error_kind() {
            ErrorKind::XType => &self.targets[..1],
            ErrorKind::ZzType => &self.targets[..2],
        }
    }

    fn check_register(&self, n_qubits: usize) -> Result<()> {
        self.validate()?;
        if n_qubits + 1 > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits + 1, 2, MAX_QUBITS));
        }
        for &t in &self.targets {
            if t >= n_qubits {
                return Err(Error::IndexOutOfRange { index: t, n_qubits });
            }
        }
        Ok(())
    }
}

/// One measurement outcome of a protocol run.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolBranch {
    /// Normalized output for an accurate measurement, byproduct included.
    pub ideal: PureState,
    pub ideal_probability: f64,
    /// Unnormalized output for the deviated measurement; its squared norm is the outcome
    /// probability.
    pub inaccurate: Vec<C64>,
}

impl ProtocolBranch {
    pub fn probability(&self) -> f64 {
        crate::linalg::norm_sqr(&self.inaccurate)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolResult {
    pub kind: ProtocolKind,
    pub branches: [ProtocolBranch; 2],
    pub register_qubits: usize,
}

/// Input register with the `|+⟩` ancilla appended, after the protocol's interactions and before
/// the measurement.
pub fn pre_measurement_state(input: &PureState, spec: &ProtocolSpec) -> Result<PureState> {
    let n = input.n_qubits();
    spec.check_register(n)?;
    let mut state = input.tensor(&PureState::plus())?;
    let a = n;
    let t = &spec.targets;
    let steps: Vec<(Gate, [usize; 2])> = match spec.kind {
        ProtocolKind::OneWayRotation => vec![(Gate::Cz, [t[0], a])],
        ProtocolKind::AdqcRotationCz => vec![(Gate::ECz, [t[0], a])],
        ProtocolKind::AdqcRotationCzSwap => vec![(Gate::CzSwap, [t[0], a])],
        ProtocolKind::AdqcCzGate => vec![(Gate::ECz, [t[0], a]), (Gate::ECz, [t[1], a])],
        ProtocolKind::AdqcCzSwapGate => vec![
            (Gate::CzSwap, [a, t[0]]),
            (Gate::CzSwap, [a, t[1]]),
            (Gate::CzSwap, [a, t[0]]),
        ],
    };
    for (g, qubits) in steps {
        state = apply_gate(&state, &g.matrix(), &qubits)?;
    }
    Ok(state)
}

fn measured_qubit(input_qubits: usize, spec: &ProtocolSpec) -> usize {
    match spec.kind {
        ProtocolKind::OneWayRotation => spec.targets[0],
        _ => input_qubits,
    }
}

/// Runs the protocol with the spec's deviated measurement and with an accurate one.
pub fn run_protocol(input: &PureState, spec: &ProtocolSpec) -> Result<ProtocolResult> {
    let n = input.n_qubits();
    let pre = pre_measurement_state(input, spec)?;
    let q = measured_qubit(n, spec);
    let (d0, d1) = measure_branch(&pre, q, &spec.measurement_basis())?;
    let (i0, i1) = measure_branch(&pre, q, &spec.ideal().measurement_basis())?;

    // One-way: the ancilla (now the last qubit) takes the measured qubit's slot.
    let relabel = |v: Vec<C64>| -> Vec<C64> {
        if spec.kind != ProtocolKind::OneWayRotation {
            return v;
        }
        let t = spec.targets[0];
        let order: Vec<usize> = (0..n)
            .map(|k| match k.cmp(&t) {
                std::cmp::Ordering::Less => k,
                std::cmp::Ordering::Equal => n - 1,
                std::cmp::Ordering::Greater => k - 1,
            })
            .collect();
        permute_qubits(&v, n, &order)
    };

    let branch = |ideal: Vec<C64>, inaccurate: Vec<C64>| -> Result<ProtocolBranch> {
        let ideal = relabel(ideal);
        let ideal_probability = crate::linalg::norm_sqr(&ideal);
        Ok(ProtocolBranch {
            ideal: PureState::normalized(ideal)?,
            ideal_probability,
            inaccurate: relabel(inaccurate),
        })
    };

    Ok(ProtocolResult {
        kind: spec.kind,
        branches: [branch(i0.vector, d0.vector)?, branch(i1.vector, d1.vector)?],
        register_qubits: n,
    })
}

/// `F = Σ_j |⟨φ^j_{0,0}|ξ_j⟩|²`: the outcome-weighted squared overlap between the normalized
/// ideal output and the normalized deviated output of the same outcome.
pub fn mean_gate_fidelity(result: &ProtocolResult) -> f64 {
    result
        .branches
        .iter()
        .map(|b| inner(b.ideal.amplitudes(), &b.inaccurate).norm_sqr())
        .sum()
}

/// `cos²(ε/2) + C² sin²(ε/2)`
pub fn closed_form_fidelity(correlator: f64, epsilon: f64) -> Result<f64> {
    if !(-1.0 - CORRELATOR_SLACK..=1.0 + CORRELATOR_SLACK).contains(&correlator) {
        return Err(Error::OutOfDomain {
            what: "correlator",
            value: correlator,
            domain: "[-1, 1]",
        });
    }
    let (s, c) = (epsilon / 2.0).sin_cos();
    Ok(c * c + correlator * correlator * s * s)
}

/// `cos(ε/2) + (−1)^j P e^{(−1)^j iδ} sin(ε/2)` with `P = X` or `Z ⊗ Z`.
pub fn error_operator(kind: ErrorKind, outcome: usize, epsilon: f64, delta: f64) -> ComplexMatrix {
    let pauli = match kind {
        ErrorKind::XType => Gate::X.matrix(),
        ErrorKind::ZzType => zz(),
    };
    let sign = if outcome == 0 { 1.0 } else { -1.0 };
    let (s, c) = (epsilon / 2.0).sin_cos();
    let weight = C64::from_polar(sign * s, sign * delta);
    ComplexMatrix::identity(pauli.rows())
        .scale(C64::new(c, 0.0))
        .add(&pauli.scale(weight))
}

/// `√p_j · A_j |φ^j_{0,0}⟩`, the deviated branch predicted by the error operator.
pub fn predicted_inaccurate_branch(
    result: &ProtocolResult,
    spec: &ProtocolSpec,
    outcome: usize,
) -> Result<Vec<C64>> {
    let branch = &result.branches[outcome];
    let op = error_operator(spec.kind.error_kind(), outcome, spec.epsilon, spec.delta);
    let out = apply_to_vector(
        branch.ideal.amplitudes(),
        result.register_qubits,
        &op,
        spec.error_qubits(),
    )?;
    let scale = branch.ideal_probability.sqrt();
    Ok(out.into_iter().map(|x| x * scale).collect())
}

/// The ideal output `X^j J(u)`, `X₁^j H₁H₂ CZ₁₂` or `(Z₁Z₂)^j SWAP₁₂ CZ₁₂` applied to the input.
pub fn target_output(input: &PureState, spec: &ProtocolSpec, outcome: usize) -> Result<PureState> {
    spec.check_register(input.n_qubits())?;
    let t = &spec.targets;
    let mut s = match spec.kind {
        k if k.is_rotation() => {
            apply_gate(input, &crate::qcore::j_gate(spec.u.unwrap_or(0.0)), &t[..1])?
        }
        ProtocolKind::AdqcCzGate => {
            let s = apply_gate(input, &Gate::Cz.matrix(), &t[..2])?;
            let s = apply_gate(&s, &Gate::H.matrix(), &t[..1])?;
            apply_gate(&s, &Gate::H.matrix(), &t[1..2])?
        }
        _ => {
            let s = apply_gate(input, &Gate::Cz.matrix(), &t[..2])?;
            apply_gate(&s, &Gate::Swap.matrix(), &t[..2])?
        }
    };
    if outcome == 1 {
        s = match spec.kind.error_kind() {
            ErrorKind::XType => apply_gate(&s, &Gate::X.matrix(), &t[..1])?,
            ErrorKind::ZzType => apply_gate(&s, &zz(), &t[..2])?,
        };
    }
    Ok(s)
}

fn sin_sq_half(epsilon: f64) -> f64 {
    let s = (epsilon / 2.0).sin();
    s * s
}

fn check_range(what: &'static str, x: f64, lo: f64, hi: f64, domain: &'static str) -> Result<f64> {
    if !(lo - CORRELATOR_SLACK..=hi + CORRELATOR_SLACK).contains(&x) {
        return Err(Error::OutOfDomain {
            what,
            value: x,
            domain,
        });
    }
    Ok(x.clamp(lo, hi))
}

/// `1 − S sin²(ε/2)`
pub fn bound_purity(s: f64, epsilon: f64) -> Result<f64> {
    let s = check_range("S", s, 0.0, 1.0, "[0, 1]")?;
    Ok(1.0 - s * sin_sq_half(epsilon))
}

/// `1 − [1 − f⁻¹(S_v)²] sin²(ε/2)`
pub fn bound_sv(sv: f64, epsilon: f64) -> Result<f64> {
    let c = f_inverse(sv)?;
    Ok(1.0 - (1.0 - c * c) * sin_sq_half(epsilon))
}

/// `1 − [1 − g⁻¹(S_v2)²] sin²(ε/2)`, defined only for `1 ≤ S_v2 ≤ 2`.
pub fn bound_sv2(sv2: f64, epsilon: f64) -> Result<f64> {
    let c = g_inverse(sv2)?;
    Ok(1.0 - (1.0 - c * c) * sin_sq_half(epsilon))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub bound: String,
    /// `F − bound`
    pub excess: f64,
}

/// Everything [`analyze`] computes for one protocol run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub protocol: ProtocolKind,
    pub targets: Vec<usize>,
    pub u: Option<f64>,
    pub epsilon: f64,
    pub delta: f64,
    pub branch_probabilities: [f64; 2],
    pub simulated_f: f64,
    pub closed_form_f: f64,
    /// `"C_z"` or `"C_zz"`.
    pub correlator_name: String,
    pub correlator_used: f64,
    /// Input qubits whose reduced state feeds the entanglement measures.
    pub attributed_qubits: Vec<usize>,
    pub entanglement: EntanglementReport,
    pub bounds: BTreeMap<String, f64>,
    /// Bounds that could not be evaluated, with the reason.
    pub unavailable_bounds: BTreeMap<String, String>,
    pub violations: Vec<Violation>,
    /// Bounds met with equality (within the violation tolerance).
    pub saturated: Vec<String>,
}

/// Runs the protocol and evaluates fidelity, correlator, entanglement measures and bounds on the
/// input register's reduced state.
pub fn analyze(input: &PureState, spec: &ProtocolSpec) -> Result<FidelityReport> {
    let result = run_protocol(input, spec)?;
    let simulated_f = mean_gate_fidelity(&result);
    let eps = spec.epsilon;
    let attributed = spec.error_qubits().to_vec();
    let rho = DensityMatrix::reduced(input, &attributed)?;

    let mut bounds = BTreeMap::new();
    let mut unavailable = BTreeMap::new();
    let (entanglement, correlator_name) = match spec.kind.error_kind() {
        ErrorKind::XType => {
            let rep = EntanglementReport::single_qubit(&rho)?;
            bounds.insert(
                "purity_bound".to_string(),
                bound_purity(rep.purity_s.unwrap_or(0.0), eps)?,
            );
            bounds.insert("sv_bound".to_string(), bound_sv(rep.von_neumann, eps)?);
            (rep, "C_z")
        }
        ErrorKind::ZzType => {
            let rep = EntanglementReport::pair(&rho)?;
            match bound_sv2(rep.von_neumann, eps) {
                Ok(b) => {
                    bounds.insert("sv2_bound".to_string(), b);
                }
                Err(Error::BelowBoundDomain(v)) => {
                    unavailable.insert(
                        "sv2_bound".to_string(),
                        format!("below bound domain (S_v2 = {v} < 1)"),
                    );
                }
                Err(e) => return Err(e),
            }
            (rep, "C_zz")
        }
    };
    let closed_form_f = closed_form_fidelity(entanglement.correlator, eps)?;

    let violations = bounds
        .iter()
        .filter(|(_, &b)| simulated_f - b > VIOLATION_TOL)
        .map(|(name, &b)| Violation {
            bound: name.clone(),
            excess: simulated_f - b,
        })
        .collect();
    let saturated = bounds
        .iter()
        .filter(|(_, &b)| (simulated_f - b).abs() <= VIOLATION_TOL)
        .map(|(name, _)| name.clone())
        .collect();

    Ok(FidelityReport {
        protocol: spec.kind,
        targets: spec.targets.clone(),
        u: spec.u,
        epsilon: spec.epsilon,
        delta: spec.delta,
        branch_probabilities: [
            result.branches[0].probability(),
            result.branches[1].probability(),
        ],
        simulated_f,
        closed_form_f,
        correlator_name: correlator_name.to_string(),
        correlator_used: entanglement.correlator,
        attributed_qubits: attributed,
        entanglement,
        bounds,
        unavailable_bounds: unavailable,
        violations,
        saturated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{phase_aligned_distance, ONE, ZERO};
    use crate::qcore::random_pure_state;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, PI};

    fn bell() -> PureState {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        PureState::new(vec![h, ZERO, ZERO, h]).unwrap()
    }

    /// Brute-force fidelity: normalize both branches and weight by the deviated outcome
    /// probability. Independent of [`mean_gate_fidelity`]'s unnormalized shortcut.
    fn brute_force_fidelity(result: &ProtocolResult) -> f64 {
        result
            .branches
            .iter()
            .map(|b| {
                let p = b.probability();
                if p == 0.0 {
                    return 0.0;
                }
                let normalized: Vec<C64> = b.inaccurate.iter().map(|x| x / p.sqrt()).collect();
                p * inner(b.ideal.amplitudes(), &normalized).norm_sqr()
            })
            .sum()
    }

    #[test]
    fn rotation_on_zero_gives_plus() {
        let spec = ProtocolSpec::rotation(ProtocolKind::AdqcRotationCz, 0, 0.0, 0.0, 0.0).unwrap();
        let r = run_protocol(&PureState::zeros(1).unwrap(), &spec).unwrap();
        assert!(
            phase_aligned_distance(
                r.branches[0].ideal.amplitudes(),
                PureState::plus().amplitudes()
            ) < 1e-15
        );
    }

    #[test]
    fn cz_gate_on_00_gives_plus_plus() {
        let spec = ProtocolSpec::two_qubit(ProtocolKind::AdqcCzGate, 0, 1, 0.0, 0.0).unwrap();
        let r = run_protocol(&PureState::zeros(2).unwrap(), &spec).unwrap();
        let pp = PureState::plus().tensor(&PureState::plus()).unwrap();
        assert!(phase_aligned_distance(r.branches[0].ideal.amplitudes(), pp.amplitudes()) < 1e-15);
    }

    #[test]
    fn czswap_gate_on_10_gives_01() {
        let spec = ProtocolSpec::two_qubit(ProtocolKind::AdqcCzSwapGate, 0, 1, 0.0, 0.0).unwrap();
        let r = run_protocol(&PureState::basis(2, 0b10).unwrap(), &spec).unwrap();
        let expected = PureState::basis(2, 0b01).unwrap();
        assert!(
            phase_aligned_distance(r.branches[0].ideal.amplitudes(), expected.amplitudes()) < 1e-15
        );
    }

    #[test]
    fn ideal_branches_match_target_outputs() {
        let input = random_pure_state(4, 5).unwrap();
        for kind in ProtocolKind::ALL {
            let spec = if kind.is_rotation() {
                ProtocolSpec::rotation(kind, 2, 0.77, 0.4, 0.2).unwrap()
            } else {
                ProtocolSpec::two_qubit(kind, 3, 1, 0.4, 0.2).unwrap()
            };
            let r = run_protocol(&input, &spec).unwrap();
            for j in 0..2 {
                let expected = target_output(&input, &spec, j).unwrap();
                let d =
                    phase_aligned_distance(r.branches[j].ideal.amplitudes(), expected.amplitudes());
                assert!(d < 1e-12, "{kind} j={j}: {d}");
                assert_abs_diff_eq!(r.branches[j].ideal_probability, 0.5, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn fidelity_is_one_without_deviation() {
        let input = random_pure_state(3, 8).unwrap();
        for kind in ProtocolKind::ALL {
            let spec = if kind.is_rotation() {
                ProtocolSpec::rotation(kind, 1, 1.3, 0.0, 0.9).unwrap()
            } else {
                ProtocolSpec::two_qubit(kind, 0, 2, 0.0, 0.9).unwrap()
            };
            let r = run_protocol(&input, &spec).unwrap();
            assert_abs_diff_eq!(mean_gate_fidelity(&r), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn maximally_entangled_target_at_half_pi() {
        for kind in ProtocolKind::ROTATIONS {
            let spec = ProtocolSpec::rotation(kind, 0, 0.6, FRAC_PI_2, 0.3).unwrap();
            let r = run_protocol(&bell(), &spec).unwrap();
            assert_abs_diff_eq!(brute_force_fidelity(&r), 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(mean_gate_fidelity(&r), 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn product_input_keeps_full_fidelity() {
        for (eps, delta) in [(0.3, 0.0), (PI, 2.0), (2.0, -1.0)] {
            let spec =
                ProtocolSpec::rotation(ProtocolKind::OneWayRotation, 0, 0.2, eps, delta).unwrap();
            let r = run_protocol(&PureState::zeros(1).unwrap(), &spec).unwrap();
            assert_abs_diff_eq!(brute_force_fidelity(&r), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(mean_gate_fidelity(&r), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_fidelity(0.3, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            closed_form_fidelity(0.6, FRAC_PI_3).unwrap(),
            0.84,
            epsilon = 1e-12
        );
        for eps in [0.1, 1.0, PI] {
            assert_abs_diff_eq!(
                closed_form_fidelity(1.0, eps).unwrap(),
                1.0,
                epsilon = 1e-15
            );
        }
        assert!(closed_form_fidelity(1.5, 0.1).is_err());
    }

    #[test]
    fn error_operator_examples() {
        for j in 0..2 {
            let op = error_operator(ErrorKind::XType, j, 0.0, 0.8);
            assert!(op.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        }
        let op = error_operator(ErrorKind::XType, 0, PI, 0.0);
        assert!(op.max_abs_diff(&Gate::X.matrix()) < 1e-15);
        let op = error_operator(ErrorKind::ZzType, 1, PI, 0.0);
        assert!(op.max_abs_diff(&zz().scale(-ONE)) < 1e-15);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(bound_purity(0.4, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(bound_purity(1.0, PI).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bound_purity(0.8, FRAC_PI_3).unwrap(), 0.8, epsilon = 1e-12);
        assert!(bound_purity(1.2, 0.1).is_err());

        for eps in [0.0, 0.5, PI] {
            assert_eq!(bound_sv(0.0, eps).unwrap(), 1.0);
            assert_eq!(bound_sv2(1.0, eps).unwrap(), 1.0);
            let c = (eps / 2.0).cos();
            assert_abs_diff_eq!(bound_sv2(2.0, eps).unwrap(), c * c, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(bound_sv(1.0, PI).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bound_sv(0.4690, FRAC_PI_2).unwrap(), 0.82, epsilon = 1e-3);
        assert_abs_diff_eq!(bound_sv2(1.8113, FRAC_PI_2).unwrap(), 0.625, epsilon = 1e-3);
        assert_eq!(bound_sv2(0.5, 1.0), Err(Error::BelowBoundDomain(0.5)));
    }

    #[test]
    fn spec_validation() {
        assert!(ProtocolSpec::two_qubit(ProtocolKind::AdqcCzGate, 1, 1, 0.0, 0.0).is_err());
        assert!(ProtocolSpec::two_qubit(ProtocolKind::OneWayRotation, 0, 1, 0.0, 0.0).is_err());
        assert!(ProtocolSpec::rotation(ProtocolKind::AdqcCzSwapGate, 0, 0.1, 0.0, 0.0).is_err());
        let spec = ProtocolSpec::rotation(ProtocolKind::AdqcRotationCz, 3, 0.1, 0.0, 0.0).unwrap();
        assert!(matches!(
            run_protocol(&PureState::zeros(2).unwrap(), &spec),
            Err(Error::IndexOutOfRange { .. })
        ));
        let spec = ProtocolSpec::rotation(ProtocolKind::AdqcRotationCz, 0, 0.1, 0.0, 0.0).unwrap();
        assert!(matches!(
            run_protocol(&PureState::zeros(8).unwrap(), &spec),
            Err(Error::QubitCount(9, _, _))
        ));
        assert_eq!(
            "adqc_cz_gate".parse::<ProtocolKind>().unwrap(),
            ProtocolKind::AdqcCzGate
        );
        assert!("nope".parse::<ProtocolKind>().is_err());
    }

    #[test]
    fn analyze_bell_rotation_saturates() {
        let eps = 1.1;
        let spec = ProtocolSpec::rotation(ProtocolKind::AdqcRotationCz, 0, 0.4, eps, 0.5).unwrap();
        let rep = analyze(&bell(), &spec).unwrap();
        let c2 = (eps / 2.0).cos().powi(2);
        assert_abs_diff_eq!(rep.simulated_f, c2, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.closed_form_f, c2, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.bounds["purity_bound"], c2, epsilon = 1e-12);
        assert!(rep.saturated.contains(&"purity_bound".to_string()));
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn analyze_product_input() {
        let spec = ProtocolSpec::rotation(ProtocolKind::OneWayRotation, 1, 0.4, 2.0, 0.5).unwrap();
        let rep = analyze(&PureState::zeros(3).unwrap(), &spec).unwrap();
        assert_abs_diff_eq!(rep.entanglement.purity_s.unwrap(), 0.0, epsilon = 1e-15);
        assert_eq!(rep.bounds["purity_bound"], 1.0);
        assert!(rep.simulated_f <= 1.0 + 1e-12);
    }

    #[test]
    fn analyze_pair_maximally_mixed() {
        // qubits (0,1) each Bell-paired with (2,3)
        let b = bell();
        let psi = b.tensor(&b).unwrap().permute(&[0, 2, 1, 3]).unwrap();
        let eps = 2.2;
        let spec = ProtocolSpec::two_qubit(ProtocolKind::AdqcCzSwapGate, 0, 1, eps, 0.1).unwrap();
        let rep = analyze(&psi, &spec).unwrap();
        let c2 = (eps / 2.0).cos().powi(2);
        assert_abs_diff_eq!(rep.simulated_f, c2, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.bounds["sv2_bound"], c2, epsilon = 1e-9);
        assert_abs_diff_eq!(rep.entanglement.von_neumann, 2.0, epsilon = 1e-12);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn analyze_pair_below_domain() {
        let spec = ProtocolSpec::two_qubit(ProtocolKind::AdqcCzSwapGate, 0, 1, 1.0, 0.1).unwrap();
        let rep = analyze(&PureState::zeros(2).unwrap(), &spec).unwrap();
        assert!(rep.bounds.is_empty());
        assert!(rep.unavailable_bounds.contains_key("sv2_bound"));
    }
}
