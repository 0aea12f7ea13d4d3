//! Pseudoconvexity classification of a rigid hypersurface v = P(z, zbar):
//! Laplacian of P, angular profile, sector decomposition and Levi forms.

use crdiscs::hypersurface::{HomogeneousPolynomial, RigidHypersurface};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() {
    // P = (z^3 zbar + z zbar^3) / 2 = r^4 cos(2 theta)
    let p = HomogeneousPolynomial::from_terms(4, &[(3, 1, Complex64::new(0.5, 0.0))]).unwrap();
    let m = RigidHypersurface::new(p);

    println!("Delta P along the unit circle:");
    for k in 0..8 {
        let th = k as f64 * PI / 4.0;
        let z = Complex64::from_polar(1.0, th);
        println!(
            "  theta = {:5.3}: Delta P = {:8.3}  ->  {:?}",
            th,
            m.polynomial().laplacian(z),
            m.classify_point(z, m.default_tol()).unwrap()
        );
    }

    let map = m.sector_decomposition(m.default_tol()).unwrap();
    println!("\nflat rays: {:?}", map.flat_rays());
    for s in map.sectors() {
        println!(
            "sector ({:.4}, {:.4}): {}",
            s.theta_lo, s.theta_hi, s.label
        );
    }

    // raw Levi form on the graph, compared against Delta P / 16
    let g = m.graph();
    println!("\nLevi form vs Delta P on graph points:");
    for th in [0.0, PI / 3.0, PI / 2.0] {
        let z = Complex64::from_polar(0.8, th);
        let w = Complex64::new(0.1, m.polynomial().eval(z));
        let levi = g.levi_form(z, w).unwrap();
        let lap = m.polynomial().laplacian(z);
        println!(
            "  theta = {th:5.3}: levi = {levi:9.5}, Delta P / 16 = {:9.5}",
            lap / 16.0
        );
    }
}
