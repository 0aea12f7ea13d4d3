//! The egg-shaped disc family: corners, vertex schedule, Möbius calibration
//! and the boundary-arc property.

use crdiscs::families::{make_egg_family, mobius_precompose, SectorSpec};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() {
    let sector = SectorSpec::new(PI / 4.0, 3.0 * PI / 4.0, Complex64::new(0.0, 1.0)).unwrap();
    let family = make_egg_family(&sector, 8, 0.4, 2048).unwrap();

    println!(
        "egg family in the sector ({:.4}, {:.4}), anchor q = {}:",
        sector.theta_lo(),
        sector.theta_hi(),
        sector.q_point()
    );
    println!("  corner opening beta*pi = {:.4}", family.beta() * PI);
    println!("  arc bounds t1 = {:.4}, t2 = {:.4}", family.t1(), family.t2());
    println!("\n   n   |v_n|        alpha_n   neg-freq energy");
    for n in 1..=family.len() {
        println!(
            "  {:2}   {:.6}   {:+.2}      {:.3e}",
            n,
            family.vertex(n).norm(),
            family.alpha(n),
            family.generator(n).negative_energy()
        );
    }

    // Moebius precomposition keeps the pinned endpoints
    let g = family.generator(3);
    let moved = mobius_precompose(g, 0.4).unwrap();
    println!(
        "\nprecomposition with phi_0.4: Z(1) moves by {:.3e}, Z(-1) by {:.3e}",
        (moved.value_at_one() - g.value_at_one()).norm(),
        (moved.boundary().samples()[g.len() / 2] - g.boundary().samples()[g.len() / 2]).norm()
    );
}
