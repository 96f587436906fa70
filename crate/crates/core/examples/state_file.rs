//! Writes a register to the text state format and reads it back.

use adqc_fidelity::qcore::random_pure_state;
use adqc_fidelity::state_file;

fn main() -> adqc_fidelity::Result<()> {
    let psi = random_pure_state(2, 99)?;
    let text = state_file::to_text(&psi, Some("random pair"));
    print!("{text}");
    let loaded = state_file::parse(&text)?;
    println!(
        "label: {:?}, identical: {}",
        loaded.label,
        loaded.state == psi
    );
    Ok(())
}
