//! Weights of a patch and the localization coefficient they give.

use spin_rmatrix::moduli::{complete_intersection_coeff, patch_weights, Variant};

fn main() -> spin_rmatrix::Result<()> {
    let (k, j, jp) = (2, 1, 2);
    for variant in [Variant::Zbar, Variant::Stab] {
        let t = patch_weights(k, j, jp, variant)?;
        println!("{variant:?} at p_{{{},{}}} within class {jp}:", k - j, j);
        for v in &t.variables {
            println!("  variable {:<28} weight {}", v.tag, v.form);
        }
        for e in &t.equations {
            println!("  equation weight {e}");
        }
        println!("  coefficient {}", complete_intersection_coeff(&t)?);
    }
    Ok(())
}
