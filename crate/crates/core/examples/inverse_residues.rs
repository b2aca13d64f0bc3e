//! The closed-form inverse of `S` and the residue argument behind it.

use spin_rmatrix::stablebasis::{s_inverse, s_matrix, verify_inverse, verify_residues};

fn main() {
    let k = 3;
    println!("S^-1({k}):");
    for row in s_inverse(k).text_grid() {
        println!("  {}", row.join("  |  "));
    }
    let id = s_inverse(k).mul(&s_matrix(k));
    println!("S^-1 S is the identity: {}", id.first_non_identity().is_none());
    for k in 0..=5 {
        println!("{}", verify_inverse(k).summary());
    }
    let r = verify_residues(4, 1, 3);
    println!("{} poles checked {}", r.summary(), r.data.unwrap()["poles"]);
}
