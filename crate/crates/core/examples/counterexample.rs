//! A pair whose Z⊗Z correlator is always 1 while its entropy sweeps [0, 1]; the gate stays perfect.

use adqc_fidelity::entropy::{correlator, von_neumann, zz};
use adqc_fidelity::presets::purified_rho_lambda;
use adqc_fidelity::protocols::{analyze, ProtocolKind, ProtocolSpec};
use adqc_fidelity::verify::rho_lambda;

fn main() -> adqc_fidelity::Result<()> {
    let spec = ProtocolSpec::two_qubit(ProtocolKind::AdqcCzSwapGate, 0, 1, 1.2, 0.4)?;
    println!(
        "{:>6} {:>6} {:>8} {:>8}  sv2 bound",
        "λ", "C_zz", "S_v2", "F"
    );
    for k in 0..=10 {
        let lambda = k as f64 / 10.0;
        let rho = rho_lambda(lambda)?;
        let r = analyze(&purified_rho_lambda(lambda)?, &spec)?;
        let bound = match r.bounds.get("sv2_bound") {
            Some(b) => format!("{b:.4}"),
            None => "n/a".into(),
        };
        println!(
            "{lambda:>6.2} {:>6.3} {:>8.4} {:>8.4}  {bound}",
            correlator(&rho, &zz())?,
            von_neumann(&rho)?,
            r.simulated_f
        );
    }
    Ok(())
}
