//! Attracting classes, the stable basis matrix and the linear relations
//! between them.

use spin_rmatrix::stablebasis::{class_zbar, linrel_coefficients, s_matrix};

fn main() -> spin_rmatrix::Result<()> {
    let k = 2;
    for jp in 0..=k {
        let c: Vec<String> = class_zbar(k, jp)?.iter().map(|f| f.to_string()).collect();
        println!("[Zbar_{jp}] = {}", c.join(" ; "));
    }
    println!("S({k}):");
    for row in s_matrix(k).text_grid() {
        println!("  {}", row.join("  |  "));
    }
    println!("S_j' = sum_i c_ij' Zbar_i with c =");
    for row in linrel_coefficients(k)? {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  [{}]", r.join(", "));
    }
    Ok(())
}
