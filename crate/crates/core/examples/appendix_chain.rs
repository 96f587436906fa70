//! Slack of each inequality in the chain that bounds S_v2 by the Z⊗Z correlator.

use adqc_fidelity::density::DensityMatrix;
use adqc_fidelity::verify::{check_interm, check_jonas, check_monotonicity, random_density_matrix};

fn main() -> adqc_fidelity::Result<()> {
    let quarter = DensityMatrix::maximally_mixed(2)?;
    println!(
        "{:>4} {:>12} {:>12} {:>12}",
        "seed", "monotone", "interm", "jonas"
    );
    for seed in 0..8 {
        let rho = random_density_matrix(2, seed)?;
        println!(
            "{seed:>4} {:>12.6} {:>12.6} {:>12.6}",
            check_monotonicity(&rho, &quarter)?,
            check_interm(&rho)?,
            check_jonas(&rho)?
        );
    }
    Ok(())
}
