//! Plain-text register state format.
//!
//! ```text
//! # comments start with '#'
//! qubits: 2
//! label: bell
//! 0 0.70710678118654757 0
//! 3 0.70710678118654757 0
//! ```
//!
//! The first non-comment line declares the qubit count. Each amplitude line holds
//! `index real imag`; indices not listed are zero. An optional `label:` line names the state.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{norm_sqr, C64, MAX_QUBITS, ZERO};
use crate::qcore::PureState;

/// Loaded states must have norm within this distance of one.
pub const LOAD_NORM_TOL: f64 = 1e-9;

/// Norm drift below this is decimal round-off and is left alone, so written states read back
/// bit for bit.
const ROUNDOFF: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct StateFile {
    pub state: PureState,
    pub label: Option<String>,
    /// Norm of the amplitudes as written, before renormalization.
    pub original_norm: f64,
}

impl StateFile {
    /// Whether the loader had to rescale the amplitudes.
    pub fn was_renormalized(&self) -> bool {
        (self.original_norm - 1.0).abs() > ROUNDOFF
    }
}

pub fn parse(text: &str) -> Result<StateFile> {
    let mut n_qubits: Option<usize> = None;
    let mut label = None;
    let mut amps: Vec<C64> = Vec::new();
    let mut seen: Vec<bool> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            match (key.trim(), n_qubits) {
                ("qubits", None) => {
                    let n: usize = value
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("bad qubit count `{}`", value.trim())))?;
                    if n == 0 || n > MAX_QUBITS {
                        return Err(err(format!("qubit count {n} outside 1..={MAX_QUBITS}")));
                    }
                    n_qubits = Some(n);
                    amps = vec![ZERO; 1 << n];
                    seen = vec![false; 1 << n];
                }
                ("qubits", Some(_)) => return Err(err("qubit count declared twice".into())),
                ("label", Some(_)) => label = Some(value.trim().to_string()),
                (_, None) => return Err(err("first line must be `qubits: n`".into())),
                (other, _) => return Err(err(format!("unknown key `{other}`"))),
            }
            continue;
        }
        if n_qubits.is_none() {
            return Err(err("first line must be `qubits: n`".into()));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(format!(
                "expected `index real imag`, got {} fields",
                fields.len()
            )));
        }
        let index: usize = fields[0]
            .parse()
            .map_err(|_| err(format!("bad index `{}`", fields[0])))?;
        let re: f64 = fields[1]
            .parse()
            .map_err(|_| err(format!("bad real part `{}`", fields[1])))?;
        let im: f64 = fields[2]
            .parse()
            .map_err(|_| err(format!("bad imaginary part `{}`", fields[2])))?;
        if !re.is_finite() || !im.is_finite() {
            return Err(err("amplitude is not finite".into()));
        }
        if index >= amps.len() {
            return Err(err(format!("index {index} out of range 0..{}", amps.len())));
        }
        if std::mem::replace(&mut seen[index], true) {
            return Err(err(format!("index {index} listed twice")));
        }
        amps[index] = C64::new(re, im);
    }

    if n_qubits.is_none() {
        return Err(Error::Parse {
            line: 0,
            msg: "missing `qubits: n` declaration".into(),
        });
    }
    let norm = norm_sqr(&amps).sqrt();
    if (norm - 1.0).abs() > LOAD_NORM_TOL {
        return Err(Error::NotNormalized(norm * norm));
    }
    let state = if (norm - 1.0).abs() <= ROUNDOFF {
        PureState::new(amps)?
    } else {
        PureState::normalized(amps)?
    };
    Ok(StateFile {
        state,
        label,
        original_norm: norm,
    })
}

/// Writes nonzero amplitudes with 17 significant digits, so `parse(to_text(s))` reproduces `s`.
pub fn to_text(state: &PureState, label: Option<&str>) -> String {
    let mut out = format!("qubits: {}\n", state.n_qubits());
    if let Some(l) = label {
        let _ = writeln!(out, "label: {l}");
    }
    for (i, a) in state.amplitudes().iter().enumerate() {
        if *a != ZERO {
            let _ = writeln!(out, "{i} {} {}", format_sig17(a.re), format_sig17(a.im));
        }
    }
    out
}

pub fn read(path: impl AsRef<Path>) -> Result<StateFile> {
    parse(&fs::read_to_string(path)?)
}

pub fn write(path: impl AsRef<Path>, state: &PureState, label: Option<&str>) -> Result<()> {
    fs::write(path, to_text(state, label))?;
    Ok(())
}

/// Scientific notation with 17 significant digits; enough to round-trip any `f64`.
pub fn format_sig17(x: f64) -> String {
    format!("{x:.16e}")
}
