//! Qubit registers, the gate set used by the protocols, deviated measurement bases,
//! and branch extraction for single-qubit projective measurements.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{
    check_qubit_list, norm_sqr, partial_trace_pure, ComplexMatrix, C64, I, MAX_QUBITS, ONE, ZERO,
};

/// Squared-norm tolerance for a [`PureState`].
pub const NORM_TOL: f64 = 1e-12;

/// A normalized state of `n_qubits` qubits, qubit 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let n_qubits = check_register_dim(amplitudes.len())?;
        let ns = norm_sqr(&amplitudes);
        if (ns - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(ns));
        }
        Ok(PureState {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let n_qubits = check_register_dim(amplitudes.len())?;
        let ns = norm_sqr(&amplitudes);
        if ns == 0.0 || !ns.is_finite() {
            return Err(Error::NotNormalized(ns));
        }
        let inv = 1.0 / ns.sqrt();
        amplitudes.iter_mut().for_each(|a| *a *= inv);
        Ok(PureState {
            n_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits, 1, MAX_QUBITS));
        }
        let mut amps = vec![ZERO; 1 << n_qubits];
        *amps.get_mut(index).ok_or(Error::IndexOutOfRange {
            index,
            n_qubits: 1 << n_qubits,
        })? = ONE;
        Ok(PureState {
            n_qubits,
            amplitudes: amps,
        })
    }

    /// `|0…0⟩`
    pub fn zeros(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn plus() -> Self {
        PureState {
            n_qubits: 1,
            amplitudes: vec![C64::new(FRAC_1_SQRT_2, 0.0); 2],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    /// `self ⊗ other`
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let n = self.n_qubits + other.n_qubits;
        if n > MAX_QUBITS {
            return Err(Error::QubitCount(n, 1, MAX_QUBITS));
        }
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(PureState {
            n_qubits: n,
            amplitudes,
        })
    }

    /// Reduced density matrix on `keep`, in the order given.
    pub fn reduced(&self, keep: &[usize]) -> Result<ComplexMatrix> {
        partial_trace_pure(&self.amplitudes, keep)
    }

    /// Reorders qubits so that new qubit `k` is old qubit `order[k]`.
    pub fn permute(&self, order: &[usize]) -> Result<PureState> {
        if order.len() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: order.len(),
            });
        }
        check_qubit_list(order, self.n_qubits)?;
        Ok(PureState {
            n_qubits: self.n_qubits,
            amplitudes: permute_qubits(&self.amplitudes, self.n_qubits, order),
        })
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &PureState) -> C64 {
        crate::linalg::inner(&self.amplitudes, &other.amplitudes)
    }
}

fn check_register_dim(dim: usize) -> Result<usize> {
    let n = crate::linalg::qubits_for_dim(dim).ok_or(Error::DimensionMismatch {
        expected: dim.next_power_of_two(),
        found: dim,
    })?;
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount(n, 1, MAX_QUBITS));
    }
    Ok(n)
}

pub(crate) fn permute_qubits(amps: &[C64], n: usize, order: &[usize]) -> Vec<C64> {
    let mut out = vec![ZERO; amps.len()];
    for (new_idx, slot) in out.iter_mut().enumerate() {
        let mut old_idx = 0;
        for (k, &old_q) in order.iter().enumerate() {
            if new_idx >> (n - 1 - k) & 1 == 1 {
                old_idx |= 1 << (n - 1 - old_q);
            }
        }
        *slot = amps[old_idx];
    }
    out
}

/// The fixed gates used by the protocols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    X,
    Y,
    Z,
    H,
    Identity,
    Cz,
    Swap,
    /// `|00⟩⟨00| + |01⟩⟨10| + |10⟩⟨01| − |11⟩⟨11|`
    CzSwap,
    /// `(H ⊗ H)·CZ`, the ancilla-driven CZ interaction.
    ECz,
}

impl Gate {
    pub const ALL: [Gate; 9] = [
        Gate::X,
        Gate::Y,
        Gate::Z,
        Gate::H,
        Gate::Identity,
        Gate::Cz,
        Gate::Swap,
        Gate::CzSwap,
        Gate::ECz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::H => "H",
            Gate::Identity => "1",
            Gate::Cz => "CZ",
            Gate::Swap => "SWAP",
            Gate::CzSwap => "CZSWAP",
            Gate::ECz => "E_CZ",
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        let h = FRAC_1_SQRT_2;
        match self {
            Gate::X => ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]),
            Gate::Y => ComplexMatrix::from_rows(&[&[ZERO, -I], &[I, ZERO]]),
            Gate::Z => ComplexMatrix::real_diagonal(&[1.0, -1.0]),
            Gate::H => ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]]),
            Gate::Identity => ComplexMatrix::identity(2),
            Gate::Cz => ComplexMatrix::real_diagonal(&[1.0, 1.0, 1.0, -1.0]),
            Gate::Swap => ComplexMatrix::from_real_rows(&[
                &[1.0, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 1.0, 0.0],
                &[0.0, 1.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, 1.0],
            ]),
            Gate::CzSwap => ComplexMatrix::from_real_rows(&[
                &[1.0, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 1.0, 0.0],
                &[0.0, 1.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, -1.0],
            ]),
            Gate::ECz => {
                let hh = crate::linalg::kron(&Gate::H.matrix(), &Gate::H.matrix());
                hh.matmul(&Gate::Cz.matrix())
            }
        }
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Gate::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownGate(s.to_string()))
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Looks a gate up by name (`X`, `Y`, `Z`, `H`, `1`, `CZ`, `SWAP`, `CZSWAP`, `E_CZ`).
pub fn gate(name: &str) -> Result<ComplexMatrix> {
    name.parse::<Gate>().map(Gate::matrix)
}

/// `J(u) = H·e^{i(u/2)Z}`
pub fn j_gate(u: f64) -> ComplexMatrix {
    let diag = ComplexMatrix::diagonal(&[
        C64::from_polar(1.0, u / 2.0),
        C64::from_polar(1.0, -u / 2.0),
    ]);
    Gate::H.matrix().matmul(&diag)
}

/// `e^{iθ P}` for a Pauli matrix `P` (uses `P² = 1`).
pub fn pauli_exponential(theta: f64, pauli: Gate) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2).scale(C64::new(theta.cos(), 0.0));
    id.add(&pauli.matrix().scale(I * theta.sin()))
}

/// Parameters of a (possibly deviated) single-qubit measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisParams {
    pub u: Option<f64>,
    pub epsilon: f64,
    pub delta: f64,
}

/// An ordered orthonormal pair; outcome `j = 0` projects onto `plus`, `j = 1` onto `minus`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementBasis {
    pub plus: [C64; 2],
    pub minus: [C64; 2],
    pub params: BasisParams,
}

impl MeasurementBasis {
    pub fn vector(&self, outcome: usize) -> &[C64; 2] {
        if outcome == 0 {
            &self.plus
        } else {
            &self.minus
        }
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let pp = crate::linalg::inner(&self.plus, &self.plus);
        let mm = crate::linalg::inner(&self.minus, &self.minus);
        let pm = crate::linalg::inner(&self.plus, &self.minus);
        [(pp - ONE).norm(), (mm - ONE).norm(), pm.norm()]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// `|u±⟩ = (|0⟩ ± e^{iu}|1⟩)/√2`
pub fn u_states(u: f64) -> ([C64; 2], [C64; 2]) {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let e = C64::from_polar(FRAC_1_SQRT_2, u);
    ([h, e], [h, -e])
}

/// Deviated equatorial basis:
/// `|ũ+⟩ = cos(ε/2)|u+⟩ + e^{−iδ} sin(ε/2)|u−⟩`,
/// `|ũ−⟩ = sin(ε/2)|u+⟩ − e^{−iδ} cos(ε/2)|u−⟩`.
pub fn deviated_u_basis(u: f64, epsilon: f64, delta: f64) -> MeasurementBasis {
    let (up, um) = u_states(u);
    let (plus, minus) = tilt(&up, &um, epsilon, delta);
    MeasurementBasis {
        plus,
        minus,
        params: BasisParams {
            u: Some(u),
            epsilon,
            delta,
        },
    }
}

/// Deviated computational basis:
/// `|0̃⟩ = cos(ε/2)|0⟩ + sin(ε/2)e^{−iδ}|1⟩`, `|1̃⟩ = sin(ε/2)|0⟩ − cos(ε/2)e^{−iδ}|1⟩`.
pub fn deviated_z_basis(epsilon: f64, delta: f64) -> MeasurementBasis {
    let (plus, minus) = tilt(&[ONE, ZERO], &[ZERO, ONE], epsilon, delta);
    MeasurementBasis {
        plus,
        minus,
        params: BasisParams {
            u: None,
            epsilon,
            delta,
        },
    }
}

fn tilt(a: &[C64; 2], b: &[C64; 2], epsilon: f64, delta: f64) -> ([C64; 2], [C64; 2]) {
    let (s, c) = (epsilon / 2.0).sin_cos();
    let phase = C64::from_polar(1.0, -delta);
    let plus = [a[0] * c + phase * s * b[0], a[1] * c + phase * s * b[1]];
    let minus = [a[0] * s - phase * c * b[0], a[1] * s - phase * c * b[1]];
    (plus, minus)
}

/// Post-measurement branch for one outcome. The vector is left unnormalized; its squared norm is
/// the outcome probability.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchState {
    pub outcome: usize,
    pub vector: Vec<C64>,
    pub probability: f64,
}

/// Applies `op` to `targets`; the first target is the most significant qubit of `op`.
pub fn apply_gate(state: &PureState, op: &ComplexMatrix, targets: &[usize]) -> Result<PureState> {
    let amplitudes = apply_to_vector(&state.amplitudes, state.n_qubits, op, targets)?;
    Ok(PureState {
        n_qubits: state.n_qubits,
        amplitudes,
    })
}

/// Same as [`apply_gate`] on a raw (possibly unnormalized) amplitude vector.
pub fn apply_to_vector(
    amps: &[C64],
    n_qubits: usize,
    op: &ComplexMatrix,
    targets: &[usize],
) -> Result<Vec<C64>> {
    check_qubit_list(targets, n_qubits)?;
    let k = targets.len();
    let dim = 1usize << k;
    if op.rows() != dim || op.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: op.rows(),
        });
    }
    if amps.len() != 1 << n_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << n_qubits,
            found: amps.len(),
        });
    }
    let masks: Vec<usize> = targets.iter().map(|&q| 1 << (n_qubits - 1 - q)).collect();
    let target_mask: usize = masks.iter().sum();
    let offsets: Vec<usize> = (0..dim)
        .map(|local| {
            masks
                .iter()
                .enumerate()
                .filter(|(pos, _)| local >> (k - 1 - pos) & 1 == 1)
                .map(|(_, m)| m)
                .sum()
        })
        .collect();
    let mut out = vec![ZERO; amps.len()];
    let mut local_in = vec![ZERO; dim];
    for base in (0..amps.len()).filter(|i| i & target_mask == 0) {
        for (slot, off) in local_in.iter_mut().zip(&offsets) {
            *slot = amps[base | off];
        }
        let local_out = op.apply(&local_in);
        for (v, off) in local_out.into_iter().zip(&offsets) {
            out[base | off] = v;
        }
    }
    Ok(out)
}

/// Projects `qubit` onto each basis vector; the measured qubit is removed and higher-numbered
/// qubits shift down by one.
pub fn measure_branch(
    state: &PureState,
    qubit: usize,
    basis: &MeasurementBasis,
) -> Result<(BranchState, BranchState)> {
    let b0 = project_qubit(&state.amplitudes, state.n_qubits, qubit, &basis.plus)?;
    let b1 = project_qubit(&state.amplitudes, state.n_qubits, qubit, &basis.minus)?;
    let branch = |outcome, vector: Vec<C64>| BranchState {
        outcome,
        probability: norm_sqr(&vector),
        vector,
    };
    Ok((branch(0, b0), branch(1, b1)))
}

/// `(⟨v| on qubit) ⊗ 1` applied to `amps`.
pub(crate) fn project_qubit(
    amps: &[C64],
    n_qubits: usize,
    qubit: usize,
    v: &[C64; 2],
) -> Result<Vec<C64>> {
    if qubit >= n_qubits {
        return Err(Error::IndexOutOfRange {
            index: qubit,
            n_qubits,
        });
    }
    let bit = n_qubits - 1 - qubit;
    let low_mask = (1usize << bit) - 1;
    let bra = [v[0].conj(), v[1].conj()];
    Ok((0..amps.len() / 2)
        .map(|r| {
            let i0 = ((r & !low_mask) << 1) | (r & low_mask);
            bra[0] * amps[i0] + bra[1] * amps[i0 | 1 << bit]
        })
        .collect())
}

/// Re-inserts a measured qubit: `Σ_j |basis_j⟩_qubit ⊗ branch_j`.
pub fn reconstruct(
    branches: &(BranchState, BranchState),
    qubit: usize,
    basis: &MeasurementBasis,
) -> Vec<C64> {
    let half = branches.0.vector.len();
    let n_rest = half.trailing_zeros() as usize;
    let bit = n_rest - qubit;
    let low_mask = (1usize << bit) - 1;
    let mut out = vec![ZERO; 2 * half];
    for (branch, v) in [(&branches.0, &basis.plus), (&branches.1, &basis.minus)] {
        for (r, &a) in branch.vector.iter().enumerate() {
            let i0 = ((r & !low_mask) << 1) | (r & low_mask);
            out[i0] += v[0] * a;
            out[i0 | 1 << bit] += v[1] * a;
        }
    }
    out
}

/// The generator behind every randomized routine: ChaCha8, one stream per sample.
pub type SampleRng = ChaCha8Rng;

/// Generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar-random pure state drawn from `rng`: independent standard complex Gaussian amplitudes,
/// normalized.
pub fn random_pure_state_from(n_qubits: usize, rng: &mut SampleRng) -> Result<PureState> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::QubitCount(n_qubits, 1, MAX_QUBITS));
    }
    let amps = (0..1usize << n_qubits)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect();
    PureState::normalized(amps)
}

/// Haar-random pure state, deterministic in `seed`.
pub fn random_pure_state(n_qubits: usize, seed: u64) -> Result<PureState> {
    random_pure_state_from(n_qubits, &mut sample_rng(seed, 0))
}
