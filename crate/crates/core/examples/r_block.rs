//! A sector block of `R` by the closed formula and as a triangular product.

use spin_rmatrix::rmatrix::{rblock_closed, verify_equal_constructions, verify_lu, verify_unitarity_block};

fn main() {
    let b = rblock_closed(2);
    println!("R block k=2, eps generic:");
    for row in b.entries.text_grid() {
        println!("  {}", row.join("  |  "));
    }
    for k in 0..=5 {
        println!("{}", verify_equal_constructions(k).summary());
        println!("{}", verify_lu(k).summary());
        println!("{}", verify_unitarity_block(k).summary());
    }
}
