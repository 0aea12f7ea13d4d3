//! Exit slopes of the attached disc family and the translation experiment:
//! moving each vertex to the origin changes the slope by an amount that
//! shrinks linearly with the translation size.

use crdiscs::families::{
    family_exit_slopes, make_egg_family, translation_experiment, SectorSpec,
};
use crdiscs::hypersurface::{HomogeneousPolynomial, RigidHypersurface};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() {
    let m = RigidHypersurface::new(
        HomogeneousPolynomial::from_terms(4, &[(3, 1, Complex64::new(0.5, 0.0))]).unwrap(),
    );
    let sector = SectorSpec::new(PI / 4.0, 3.0 * PI / 4.0, Complex64::new(0.0, 1.0)).unwrap();
    let family = make_egg_family(&sector, 8, 0.4, 2048).unwrap();

    let exit = family_exit_slopes(&m, &family, 0.0).unwrap();
    println!("exit slopes dU_n/dtheta(0):");
    for (i, s) in exit.slopes.iter().enumerate() {
        println!("  n = {}: {s:+.6}", i + 1);
    }
    println!("empirical floor epsilon0 = {:.6}", exit.epsilon0);

    let report = translation_experiment(&m, &family, exit.epsilon0).unwrap();
    println!("\n   n   |c_n|        diff_n       diff/|c_n|   holder diff");
    for r in &report.rows {
        println!(
            "  {:2}   {:.6}   {:10.6}   {:9.4}    {:9.4}",
            r.n,
            r.c_n.norm(),
            r.diff_n,
            r.ratio,
            r.holder_diff
        );
    }
    println!("\nfitted K*C = {:.4}", report.fitted_kc);
    println!(
        "selected n0 = {} (first index with diff <= epsilon0/2 = {:.4})",
        report.n0.unwrap(),
        report.epsilon0 / 2.0
    );
}
