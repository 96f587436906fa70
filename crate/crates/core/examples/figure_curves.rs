//! Prints a coarse version of each bound curve as CSV.

use adqc_fidelity::curves::{curve_table, CurveRequest, Figure};

fn main() -> adqc_fidelity::Result<()> {
    for figure in [Figure::Fig5, Figure::Fig6, Figure::Fig7] {
        let mut request = CurveRequest::new(figure);
        request.resolution = 5;
        println!("# {figure}");
        print!("{}", curve_table(&request)?.to_csv());
    }
    Ok(())
}
