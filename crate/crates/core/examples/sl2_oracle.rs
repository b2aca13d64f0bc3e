//! Equivariance under sl2 and the spectral decomposition over Casimir
//! projectors.

use spin_rmatrix::oracle::{spectral_decompose, verify_mobius_ratios, verify_projectors};
use spin_rmatrix::rmatrix::assemble_full;

fn main() -> spin_rmatrix::Result<()> {
    for ell in 1..=3 {
        println!("{}", verify_projectors(ell).summary());
        let s = spectral_decompose(&assemble_full(ell)?)?;
        println!("ell={ell} gauge {}", s.gauge.name);
        for (i, rho) in s.rho_text().iter().enumerate() {
            println!("  rho_{i} = {rho}");
        }
        let m = verify_mobius_ratios(&s.rho);
        println!("  {} ratios {}", m.summary(), m.data.unwrap()["ratios"]);
    }
    Ok(())
}
