//! Fixed points of the quiver varieties and the dimension profile.

use spin_rmatrix::moduli::{dim_m1, duality_involution, fixed_points, weight_space_dim};

fn main() {
    let (n, ell) = (2, 2);
    for k in 0..=n as u32 * ell {
        let pts = fixed_points(k, n, ell);
        let shown: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
        let dim = dim_m1(k, n, ell).map_or("-".into(), |d| d.to_string());
        println!("k={k} dim={dim} weights={} points: {}", weight_space_dim(k, n, ell), shown.join(" "));
    }
    let p = &fixed_points(3, 3, 2)[0];
    println!("dual of {p} is {}", duality_involution(p));
}
