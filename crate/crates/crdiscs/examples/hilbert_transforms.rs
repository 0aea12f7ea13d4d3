//! Hilbert and modified Hilbert transforms on the unit circle, with the
//! principal-value quadrature used as an independent oracle.

use crdiscs::circle::{
    hilbert_kernel, hilbert_transform, modified_hilbert, poisson_extend, pv_hilbert,
    BoundaryFunction,
};

fn main() {
    let n = 2048;

    println!("Hilbert kernel K_r(t):");
    for (r, t) in [(0.3, 0.5), (0.5, std::f64::consts::FRAC_PI_2), (0.9, 2.0)] {
        println!("  K_{r}({t:.4}) = {:.6}", hilbert_kernel(r, t).unwrap());
    }

    // T cos = sin, checked spectrally and by PV quadrature
    let u = BoundaryFunction::from_real_fn(n, f64::cos).unwrap();
    let spectral = hilbert_transform(&u).unwrap();
    let quadrature = pv_hilbert(&u).unwrap();
    println!("\nT(cos theta) vs sin theta:");
    let expect = BoundaryFunction::from_real_fn(n, f64::sin).unwrap();
    println!("  spectral error   {:.3e}", spectral.sup_diff(&expect));
    println!("  quadrature error {:.3e}", quadrature.sup_diff(&expect));

    // cross-oracle agreement on a non-polynomial function
    let u = BoundaryFunction::from_real_fn(n, |t| t.cos().exp()).unwrap();
    let s = hilbert_transform(&u).unwrap();
    let q = pv_hilbert(&u).unwrap();
    println!("\nexp(cos theta): spectral vs PV quadrature = {:.3e}", s.sup_diff(&q));

    // T1 = T - T(1): value at theta = 0 is pinned to zero
    let t1 = modified_hilbert(&u).unwrap();
    println!("T1 u at zeta = 1: {:?}", t1.samples()[0]);

    // the Poisson extensions of (u, Tu) form a holomorphic pair
    let f_center = poisson_extend(&s, 0.0, 0.0).unwrap();
    println!("Im F(0) = mean of Tu = {f_center:.3e}");
}
