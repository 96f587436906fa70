//! Runs all five protocols on one random register and compares simulated and closed-form fidelity.

use adqc_fidelity::protocols::{analyze, ProtocolKind, ProtocolSpec};
use adqc_fidelity::qcore::random_pure_state;

fn main() -> adqc_fidelity::Result<()> {
    let input = random_pure_state(4, 2024)?;
    let (eps, delta) = (0.9, 1.3);
    println!(
        "{:<22} {:>10} {:>12} {:>10}",
        "protocol", "F", "closed form", "C"
    );
    for kind in ProtocolKind::ALL {
        let spec = if kind.is_rotation() {
            ProtocolSpec::rotation(kind, 2, 0.6, eps, delta)?
        } else {
            ProtocolSpec::two_qubit(kind, 2, 0, eps, delta)?
        };
        let r = analyze(&input, &spec)?;
        println!(
            "{:<22} {:>10.6} {:>12.6} {:>10.6}",
            kind.name(),
            r.simulated_f,
            r.closed_form_f,
            r.correlator_used
        );
    }
    Ok(())
}
