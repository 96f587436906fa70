//! Statevector simulation of one-way and ancilla-driven gates under inaccurate measurements.
//!
//! A protocol couples input qubits to a `|+⟩` ancilla and measures one qubit in a basis tilted
//! by `(ε, δ)` away from the intended one. The mean gate fidelity then depends only on how
//! entangled the target qubits are with the rest of the register; [`protocols::analyze`]
//! computes it along with the entropy bounds that limit it.
//!
//! ```
//! use adqc_fidelity::{presets, protocols::*};
//!
//! let input = presets::bell();
//! let spec = ProtocolSpec::rotation(ProtocolKind::AdqcRotationCz, 0, 0.3, 0.5, 0.0).unwrap();
//! let report = analyze(&input, &spec).unwrap();
//! assert!((report.simulated_f - report.closed_form_f).abs() < 1e-12);
//! ```

pub mod curves;
pub mod density;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod presets;
pub mod protocols;
pub mod qcore;
pub mod state_file;
pub mod verify;

pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use protocols::{analyze, run_protocol, FidelityReport, ProtocolKind, ProtocolSpec};
pub use qcore::PureState;
