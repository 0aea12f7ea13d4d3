//! Closed-form attachment of an analytic disc to a rigid hypersurface, with
//! residual audit, exit vector and boundary derivative.

use crdiscs::discs::{attach_disc, attachment_residual, du_dtheta, exit_vector, DiscGenerator};
use crdiscs::hypersurface::{HomogeneousPolynomial, RigidHypersurface};
use num_complex::Complex64;

fn main() {
    let m = RigidHypersurface::new(
        HomogeneousPolynomial::from_terms(4, &[(3, 1, Complex64::new(0.5, 0.0))]).unwrap(),
    );

    let eps = 0.1;
    let z = DiscGenerator::from_fn(1024, |zeta| eps * zeta).unwrap();
    let disc = attach_disc(&m, &z, 0.0).unwrap();

    // for this surface and generator, W = i eps^4 zeta^2 exactly
    println!("attached disc for Z = {eps} zeta on v = (z^3 zbar + z zbar^3)/2:");
    println!("  W(1)        = {:?}", disc.w().value_at_one());
    println!("  residual    = {:.3e}", attachment_residual(&disc, &m.graph()));
    let (e1, e2) = exit_vector(&disc);
    println!("  exit vector = ({e1}, {e2})");
    println!("  dU/dtheta(0) = {:.6e} (expected {:.6e})", du_dtheta(&disc), -2.0 * eps.powi(4));
}
