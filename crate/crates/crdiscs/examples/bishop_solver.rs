//! The fixed-point Bishop solver on a non-rigid graph hypersurface, with
//! contraction diagnostics and residual audit.

use crdiscs::discs::{attachment_residual, solve_bishop, BishopOptions, DiscGenerator};
use crdiscs::hypersurface::{GraphHypersurface, GraphJet};
use num_complex::Complex64;

fn main() {
    // rho(z, zbar, u) = u |z|^2: the graph leans with u
    let g = GraphHypersurface::new(Box::new(|z: Complex64, u: f64| GraphJet {
        value: u * z.norm_sqr(),
        d_z: u * z.conj(),
        d_u: z.norm_sqr(),
        d_zzbar: u,
        d_zu: z.conj(),
        d_uu: 0.0,
    }))
    .unwrap();

    let z = DiscGenerator::from_fn(1024, |zeta| 0.1 * zeta).unwrap();
    let sol = solve_bishop(&g, &z, 0.2, &BishopOptions::default()).unwrap();

    println!("Bishop solve for rho = u |z|^2, Z = 0.1 zeta, c = 0.2:");
    println!("  iterations       = {}", sol.iterations);
    println!("  step norms       = {:?}", sol.step_norms);
    println!("  damping used     = {}", sol.damping_used);
    println!("  negative energy  = {:.3e}", sol.negative_energy);
    println!("  residual         = {:.3e}", attachment_residual(&sol.disc, &g));
    println!("  U(1)             = {:.9}", sol.disc.w().value_at_one().re);

    // divergent regime: the solver reports non-contraction instead of looping
    let strong = GraphHypersurface::new(Box::new(|z: Complex64, u: f64| {
        let x = z.re;
        GraphJet {
            value: 1e3 * u * x * x,
            d_z: 1e3 * u * Complex64::new(x, 0.0),
            d_u: 1e3 * x * x,
            d_zzbar: 1e3 * u / 2.0,
            d_zu: 1e3 * Complex64::new(x, 0.0),
            d_uu: 0.0,
        }
    }))
    .unwrap();
    let z = DiscGenerator::from_fn(1024, |zeta| 0.5 * zeta).unwrap();
    match solve_bishop(&strong, &z, 0.1, &BishopOptions::default()) {
        Err(e) => println!("\nstrong coupling: {e}"),
        Ok(_) => println!("\nstrong coupling unexpectedly converged"),
    }
}
