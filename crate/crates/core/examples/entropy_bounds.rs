//! Fidelity against the entanglement bounds as a target qubit becomes more entangled.

use std::f64::consts::FRAC_PI_2;

use adqc_fidelity::presets::saturating_single_qubit_register;
use adqc_fidelity::protocols::{analyze, ProtocolKind, ProtocolSpec};

fn main() -> adqc_fidelity::Result<()> {
    let spec = ProtocolSpec::rotation(ProtocolKind::OneWayRotation, 0, 0.0, FRAC_PI_2, 0.0)?;
    println!(
        "{:>5} {:>8} {:>8} {:>13} {:>9}",
        "S", "S_v", "F", "purity bound", "sv bound"
    );
    for s in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0] {
        let input = saturating_single_qubit_register(s, 3)?;
        let r = analyze(&input, &spec)?;
        println!(
            "{s:>5.2} {:>8.4} {:>8.4} {:>13.4} {:>9.4}",
            r.entanglement.von_neumann,
            r.simulated_f,
            r.bounds["purity_bound"],
            r.bounds["sv_bound"]
        );
    }
    Ok(())
}
