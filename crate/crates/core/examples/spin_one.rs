//! The assembled spin-1 R-matrix, as text, LaTeX and evaluated at a point.

use spin_rmatrix::exactalg::parse_rational;
use spin_rmatrix::export;
use spin_rmatrix::rmatrix::assemble_full;

fn main() -> spin_rmatrix::Result<()> {
    let r = assemble_full(2)?;
    print!("{}", export::text(&r.text_grid()));
    print!("{}", export::full_r_latex(&r));
    let z = parse_rational("3/5").unwrap();
    println!("at z = {z}:");
    print!("{}", export::csv(&export::numeric_cells(&r.eval_at(&z)?)));
    match r.eval_at(&parse_rational("-1").unwrap()) {
        Ok(_) => println!("no pole at z = -1"),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
