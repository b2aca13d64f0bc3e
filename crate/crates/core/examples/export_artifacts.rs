//! JSON documents for matrices, weight tables and verification reports.

use spin_rmatrix::export;
use spin_rmatrix::moduli::{patch_weights, Variant};
use spin_rmatrix::rmatrix::{assemble_full, rblock_closed};
use spin_rmatrix::stablebasis::{s_matrix, verify_inverse};

fn main() -> spin_rmatrix::Result<()> {
    print!("{}", export::to_string(&export::full_r_json(&assemble_full(1)?)));
    print!("{}", export::to_string(&export::rblock_json(&rblock_closed(1))));
    print!("{}", export::to_string(&export::matrix_json(&s_matrix(1), "s")));
    let t = patch_weights(2, 1, 1, Variant::Stab)?;
    print!("{}", export::to_string(&export::weights_json(2, 1, 1, "stab", &t)));
    print!("{}", export::to_string(&export::reports_json(&[verify_inverse(3)])));
    Ok(())
}
