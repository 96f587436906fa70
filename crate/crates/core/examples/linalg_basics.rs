//! Kronecker products, partial traces and Hermitian eigenvalues on small registers.

use adqc_fidelity::linalg::{hermitian_eigen, kron, partial_trace_pure, ComplexMatrix};
use adqc_fidelity::presets::ghz;
use adqc_fidelity::qcore::Gate;

fn main() -> adqc_fidelity::Result<()> {
    let zz = kron(&Gate::Z.matrix(), &Gate::Z.matrix());
    println!(
        "Z⊗Z diagonal: {:?}",
        (0..4).map(|i| zz[(i, i)].re).collect::<Vec<_>>()
    );

    let psi = ghz(3)?;
    let rho = partial_trace_pure(psi.amplitudes(), &[0])?;
    println!("GHZ₃ reduced to qubit 0:");
    for r in 0..2 {
        println!("  [{:.3} {:.3}]", rho[(r, 0)].re, rho[(r, 1)].re);
    }

    let m = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
    let eig = hermitian_eigen(&m)?;
    println!("eigenvalues of [[2,1],[1,2]]: {:?}", eig.values);
    Ok(())
}
