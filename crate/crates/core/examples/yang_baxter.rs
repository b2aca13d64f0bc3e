//! Yang-Baxter equation at seeded random rational points.

use spin_rmatrix::exactalg::rat;
use spin_rmatrix::rmatrix::{verify_ybe, verify_ybe_random};

fn main() -> spin_rmatrix::Result<()> {
    println!("{}", verify_ybe(2, &rat(5, 1), &rat(2, 1), &rat(-3, 7))?.summary());
    for ell in 1..=4 {
        println!("{}", verify_ybe_random(ell, 10, 42)?.summary());
    }
    Ok(())
}
