//! Named input registers: `bell`, `ghz:n`, `product:n`, `saturate:S`, `rho_lambda:λ`,
//! `mixed_pair`.

use crate::error::{Error, Result};
use crate::linalg::{C64, MAX_QUBITS, ZERO};
use crate::qcore::PureState;

/// `√w0 |0…0⟩ + √w1 |1…1⟩`
fn two_string_state(n: usize, w0: f64, w1: f64) -> Result<PureState> {
    let mut amps = vec![ZERO; 1 << n];
    amps[0] = C64::new(w0.sqrt(), 0.0);
    amps[(1 << n) - 1] += C64::new(w1.sqrt(), 0.0);
    PureState::new(amps)
}

fn check_size(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_QUBITS {
        return Err(Error::QubitCount(n, min, MAX_QUBITS));
    }
    Ok(())
}

pub fn bell() -> PureState {
    two_string_state(2, 0.5, 0.5).expect("valid")
}

pub fn ghz(n: usize) -> Result<PureState> {
    check_size(n, 2)?;
    two_string_state(n, 0.5, 0.5)
}

/// `|0…0⟩`
pub fn product(n: usize) -> Result<PureState> {
    PureState::zeros(n)
}

/// A register whose qubit 0 has reduced state `(√(1−S)/2) Z + 1/2`, purified by qubit 1; the
/// remaining qubits are `|0⟩`.
pub fn saturating_single_qubit_register(s: f64, total_qubits: usize) -> Result<PureState> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfDomain {
            what: "S",
            value: s,
            domain: "[0, 1]",
        });
    }
    check_size(total_qubits, 2)?;
    let r = (1.0 - s).sqrt();
    let pair = two_string_state(2, (1.0 + r) / 2.0, (1.0 - r) / 2.0)?;
    if total_qubits == 2 {
        return Ok(pair);
    }
    pair.tensor(&PureState::zeros(total_qubits - 2)?)
}

/// Qubits 0 and 1 each maximally entangled with partners 2 and 3, so the reduced state of
/// (0, 1) is `1/4`; further qubits are `|0⟩`.
pub fn maximally_mixed_pair_register(total_qubits: usize) -> Result<PureState> {
    check_size(total_qubits, 4)?;
    let b = bell();
    let four = b.tensor(&b)?.permute(&[0, 2, 1, 3])?;
    if total_qubits == 4 {
        return Ok(four);
    }
    four.tensor(&PureState::zeros(total_qubits - 4)?)
}

/// `√λ|0000⟩ + √(1−λ)|1111⟩`: the reduced state of qubits (0, 1) is
/// `λ|00⟩⟨00| + (1−λ)|11⟩⟨11|`.
pub fn purified_rho_lambda(lambda: f64) -> Result<PureState> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::OutOfDomain {
            what: "lambda",
            value: lambda,
            domain: "[0, 1]",
        });
    }
    two_string_state(4, lambda, 1.0 - lambda)
}

/// Resolves a preset name such as `ghz:3` or `saturate:0.36`.
pub fn preset(spec: &str) -> Result<PureState> {
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (spec.trim(), None),
    };
    let bad = |what: &str| Error::InvalidSpec(format!("preset `{spec}`: {what}"));
    let int_arg = || -> Result<usize> {
        arg.ok_or_else(|| bad("missing qubit count"))?
            .parse()
            .map_err(|_| bad("qubit count is not an integer"))
    };
    let real_arg = || -> Result<f64> {
        arg.ok_or_else(|| bad("missing parameter"))?
            .parse()
            .map_err(|_| bad("parameter is not a number"))
    };
    match name {
        "bell" => Ok(bell()),
        "ghz" => ghz(int_arg()?),
        "product" => product(int_arg()?),
        "saturate" => saturating_single_qubit_register(real_arg()?, 2),
        "rho_lambda" => purified_rho_lambda(real_arg()?),
        "mixed_pair" => maximally_mixed_pair_register(4),
        _ => Err(bad("unknown preset (expected bell, ghz:n, product:n, saturate:S, rho_lambda:λ, mixed_pair)")),
    }
}
