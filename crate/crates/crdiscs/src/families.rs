//! Disc-family experiments: egg-shaped analytic disc families shrinking
//! toward the origin inside a pseudoconvex sector, Möbius reparametrization,
//! smooth bump perturbations supported near the family's outer corner, the
//! uniform negative slope bound, and the translation experiment.

use crate::circle::{
    holder_norm, modified_hilbert, spectral_derivative, BoundaryFunction, CircleError, HolderIndex,
};
use crate::discs::{attach_disc, du_dtheta, DiscError, DiscGenerator};
use crate::hypersurface::{HypersurfaceError, PointClass, RigidHypersurface};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error(transparent)]
    Hypersurface(#[from] HypersurfaceError),
    #[error("invalid sector: {0}")]
    InvalidSector(String),
    #[error("corner opening beta*pi = {opening:.4} does not fit in sector width {width:.4}")]
    SectorOverflow { opening: f64, width: f64 },
    #[error("no Moebius parameter with |alpha| <= 0.99 achieves the boundary-arc property for member {n}")]
    CalibrationFailure { n: usize },
    #[error("perturbation regions are not properly nested or contain the origin")]
    RegionNesting,
    #[error("perturbation support reaches the vertex arc (gap {gap:.3e} <= grid spacing {spacing:.3e})")]
    SupportTouchesVertex { gap: f64, spacing: f64 },
    #[error("the anchor point is not strongly pseudoconvex for this hypersurface (class {0:?})")]
    NotPseudoconvex(PointClass),
    #[error("no family index achieves the slope-difference target {target:.6e}")]
    NoQualifyingIndex { target: f64, report: Box<TranslationReport> },
}

/// Relaxed analyticity tolerance for generators with a boundary corner: the
/// Fourier tail decays like n^(-1-beta), so a small amount of energy aliases
/// into negative bins at finite grid size.
pub const EGG_NEG_ENERGY_TOL: f64 = 1e-4;

/// One pseudoconvex angular sector with its anchor point q on the bisector.
#[derive(Debug, Clone, Copy)]
pub struct SectorSpec {
    theta_lo: f64,
    theta_hi: f64,
    q_point: Complex64,
}

impl SectorSpec {
    pub fn new(theta_lo: f64, theta_hi: f64, q_point: Complex64) -> Result<Self, FamilyError> {
        if !(theta_lo < theta_hi) {
            return Err(FamilyError::InvalidSector(format!(
                "theta_lo {theta_lo} must be below theta_hi {theta_hi}"
            )));
        }
        if theta_hi - theta_lo >= PI {
            return Err(FamilyError::InvalidSector(format!(
                "sector width {} must be below pi",
                theta_hi - theta_lo
            )));
        }
        if q_point.norm() == 0.0 {
            return Err(FamilyError::InvalidSector("anchor point is zero".into()));
        }
        let bis = 0.5 * (theta_lo + theta_hi);
        let dev = (q_point.arg() - bis + PI).rem_euclid(2.0 * PI) - PI;
        if dev.abs() > 1e-12 {
            return Err(FamilyError::InvalidSector(format!(
                "anchor argument deviates from the bisector by {dev:.3e}"
            )));
        }
        Ok(Self {
            theta_lo,
            theta_hi,
            q_point,
        })
    }

    pub fn theta_lo(&self) -> f64 {
        self.theta_lo
    }

    pub fn theta_hi(&self) -> f64 {
        self.theta_hi
    }

    pub fn q_point(&self) -> Complex64 {
        self.q_point
    }

    pub fn bisector(&self) -> f64 {
        0.5 * (self.theta_lo + self.theta_hi)
    }

    pub fn width(&self) -> f64 {
        self.theta_hi - self.theta_lo
    }
}

/// Closed round disc region in the z-plane.
#[derive(Debug, Clone, Copy)]
pub struct DiscRegion {
    pub center: Complex64,
    pub radius: f64,
}

impl DiscRegion {
    pub fn new(center: Complex64, radius: f64) -> Self {
        Self { center, radius }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }

    /// Smallest |z| over the region (0 if the region contains the origin).
    pub fn min_abs(&self) -> f64 {
        (self.center.norm() - self.radius).max(0.0)
    }
}

/// Boundary-arc bounds for the family: generators map `[t1, pi)` and
/// `(-pi, t2]` into the inner region around the anchor.
pub const T1_DEFAULT: f64 = 3.0 * PI / 4.0;
pub const T2_DEFAULT: f64 = -3.0 * PI / 4.0;

/// Family of egg-shaped analytic disc generators `Z_n` with a corner of
/// opening `beta*pi` at the shrinking vertex `v_n = Z_n(1)`, `|v_n| = |q|/2^n`,
/// and the outer end pinned at `Z_n(-1) = q`.
#[derive(Debug)]
pub struct EggFamily {
    sector: SectorSpec,
    beta: f64,
    t1: f64,
    t2: f64,
    p_region: DiscRegion,
    q_region: DiscRegion,
    generators: Vec<DiscGenerator>,
    vertices: Vec<Complex64>,
    alphas: Vec<f64>,
}

impl EggFamily {
    pub fn sector(&self) -> &SectorSpec {
        &self.sector
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    pub fn p_region(&self) -> DiscRegion {
        self.p_region
    }

    pub fn q_region(&self) -> DiscRegion {
        self.q_region
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generator `Z_n` (1-based index n).
    pub fn generator(&self, n: usize) -> &DiscGenerator {
        &self.generators[n - 1]
    }

    pub fn generators(&self) -> &[DiscGenerator] {
        &self.generators
    }

    /// Vertex `v_n = Z_n(1)`.
    pub fn vertex(&self, n: usize) -> Complex64 {
        self.vertices[n - 1]
    }

    pub fn alpha(&self, n: usize) -> f64 {
        self.alphas[n - 1]
    }
}

/// Boundary values of the corner map `H(zeta) = ((1 - zeta)/2)^beta`, which
/// sends the closed unit disc into the cone `|arg| <= beta*pi/2` with
/// `H(1) = 0` and `H(-1) = 1`.
fn corner_map(zeta: Complex64, beta: f64) -> Complex64 {
    let w = (1.0 - zeta) / 2.0;
    if w.norm() == 0.0 {
        Complex64::ZERO
    } else {
        w.powf(beta)
    }
}

/// phi_alpha(zeta) = (zeta - alpha)/(1 - alpha zeta), a disc automorphism
/// fixing +/-1 for real alpha.
fn mobius(zeta: Complex64, alpha: f64) -> Complex64 {
    (zeta - alpha) / (1.0 - alpha * zeta)
}

fn egg_value(
    t: f64,
    alpha: f64,
    beta: f64,
    bis: f64,
    rho_n: f64,
    rho_q: f64,
) -> Complex64 {
    let zeta = mobius(Complex64::from_polar(1.0, t), alpha);
    let h = corner_map(zeta, beta);
    Complex64::from_polar(1.0, bis) * (rho_n + (rho_q - rho_n) * h)
}

/// Builds the egg family on a grid of size `n_grid`. Inner/outer regions
/// around the anchor default to radii `0.16 |q|` and `0.20 |q|`; the Möbius
/// parameter of each member is calibrated by grid search so that the arcs
/// `[t1, pi)` and `(-pi, t2]` land inside the inner region while `zeta = +/-i`
/// stays outside the outer region.
pub fn make_egg_family(
    sector: &SectorSpec,
    n_max: usize,
    beta: f64,
    n_grid: usize,
) -> Result<EggFamily, FamilyError> {
    if n_max < 2 {
        return Err(FamilyError::InvalidSector(
            "family needs at least 2 members".into(),
        ));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(FamilyError::InvalidSector(format!(
            "corner parameter beta {beta} outside (0,1)"
        )));
    }
    if beta * PI >= sector.width() {
        return Err(FamilyError::SectorOverflow {
            opening: beta * PI,
            width: sector.width(),
        });
    }
    let bis = sector.bisector();
    let rho_q = sector.q_point().norm();
    let q = sector.q_point();
    let p_region = DiscRegion::new(q, 0.16 * rho_q);
    let q_region = DiscRegion::new(q, 0.20 * rho_q);
    let (t1, t2) = (T1_DEFAULT, T2_DEFAULT);

    let mut generators = Vec::with_capacity(n_max);
    let mut vertices = Vec::with_capacity(n_max);
    let mut alphas = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let rho_n = rho_q / 2f64.powi(n as i32);

        // calibrate alpha by maximizing the worst-case margin of the
        // boundary-arc property
        let margin = |alpha: f64| -> f64 {
            let mut m = f64::INFINITY;
            const ARC_SAMPLES: usize = 256;
            for i in 0..ARC_SAMPLES {
                let s = (i as f64 + 0.5) / ARC_SAMPLES as f64;
                for t in [t1 + s * (PI - t1), -PI + s * (t2 + PI)] {
                    let z = egg_value(t, alpha, beta, bis, rho_n, rho_q);
                    m = m.min(p_region.radius - (z - p_region.center).norm());
                }
            }
            for t in [PI / 2.0, -PI / 2.0] {
                let z = egg_value(t, alpha, beta, bis, rho_n, rho_q);
                m = m.min((z - q_region.center).norm() - q_region.radius);
            }
            m
        };
        let mut best = (f64::NEG_INFINITY, 0.0);
        for k in -90..=90 {
            let alpha = k as f64 / 100.0;
            let m = margin(alpha);
            if m > best.0 {
                best = (m, alpha);
            }
        }
        if best.0 <= 0.0 {
            return Err(FamilyError::CalibrationFailure { n });
        }
        let alpha = best.1;

        let bf = BoundaryFunction::from_fn(n_grid, |t| {
            egg_value(t, alpha, beta, bis, rho_n, rho_q)
        })?;
        let gen = DiscGenerator::with_max_negative_energy(bf, EGG_NEG_ENERGY_TOL)?;
        let vertex = gen.value_at_one();

        // construction invariants
        let at_minus_one = gen.boundary().samples()[n_grid / 2];
        debug_assert!((at_minus_one - q).norm() <= 1e-10);
        let half = sector.width() / 2.0;
        for &z in gen.boundary().samples() {
            let dev = (z * Complex64::from_polar(1.0, -bis)).arg();
            debug_assert!(dev.abs() <= half + 1e-9, "arg deviation {dev}");
        }

        generators.push(gen);
        vertices.push(vertex);
        alphas.push(alpha);
    }
    Ok(EggFamily {
        sector: *sector,
        beta,
        t1,
        t2,
        p_region,
        q_region,
        generators,
        vertices,
        alphas,
    })
}

/// Precomposes a generator with the disc automorphism `phi_alpha` (real
/// alpha), resampling its boundary Fourier series at the warped angles. The
/// image set is unchanged and the values at `zeta = +/-1` are fixed.
pub fn mobius_precompose(z: &DiscGenerator, alpha: f64) -> Result<DiscGenerator, FamilyError> {
    assert!(alpha.abs() < 1.0, "alpha must be in (-1, 1)");
    if alpha == 0.0 {
        return Ok(z.clone());
    }
    let coeffs = z.boundary().fourier();
    let n = z.len();
    let samples: Vec<Complex64> = (0..n)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n as f64;
            let psi = mobius(Complex64::from_polar(1.0, t), alpha).arg();
            let mut acc = Complex64::ZERO;
            for i in 0..n {
                let freq = coeffs.bin_frequency(i) as f64;
                acc += coeffs.bins()[i] * Complex64::from_polar(1.0, freq * psi);
            }
            acc
        })
        .collect();
    let bf = BoundaryFunction::from_samples(samples)?;
    let tol = (10.0 * z.negative_energy()).max(crate::discs::GENERATOR_NEG_ENERGY_TOL);
    Ok(DiscGenerator::with_max_negative_energy(bf, tol)?)
}

/// Smooth bump `tau(z) = chi(z) * eps * |z|^2` with `chi = 1` on the inner
/// region and `chi = 0` outside the outer region; `floor` is the minimum of
/// `tau` over the inner region.
#[derive(Debug, Clone, Copy)]
pub struct Perturbation {
    p_region: DiscRegion,
    q_region: DiscRegion,
    eps: f64,
    floor: f64,
}

/// The standard smooth transition: h(x) = e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)}),
/// extended by 0 for x <= 0 and 1 for x >= 1.
fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / x).exp();
        let b = (-1.0 / (1.0 - x)).exp();
        a / (a + b)
    }
}

impl Perturbation {
    pub fn p_region(&self) -> DiscRegion {
        self.p_region
    }

    pub fn q_region(&self) -> DiscRegion {
        self.q_region
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// The uniform lower bound of tau over the inner region.
    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn chi(&self, z: Complex64) -> f64 {
        let r_in = (self.p_region.center - self.q_region.center).norm() + self.p_region.radius;
        let d = (z - self.q_region.center).norm();
        smooth_step((self.q_region.radius - d) / (self.q_region.radius - r_in))
    }

    pub fn tau(&self, z: Complex64) -> f64 {
        if !self.q_region.contains(z) {
            return 0.0;
        }
        self.chi(z) * self.eps * z.norm_sqr()
    }
}

/// Builds the bump perturbation; the regions must be strictly nested
/// (inner region plus its offset inside the outer radius) and keep away
/// from the origin. `eps = 0` is allowed and yields the zero perturbation.
pub fn make_perturbation(
    p_region: DiscRegion,
    q_region: DiscRegion,
    eps: f64,
) -> Result<Perturbation, FamilyError> {
    let offset = (p_region.center - q_region.center).norm();
    let nested = offset + p_region.radius < q_region.radius;
    let origin_free = q_region.center.norm() > q_region.radius;
    if !nested || !origin_free || eps < 0.0 || p_region.radius <= 0.0 {
        return Err(FamilyError::RegionNesting);
    }
    let floor = eps * p_region.min_abs().powi(2);
    Ok(Perturbation {
        p_region,
        q_region,
        eps,
        floor,
    })
}

/// Per-member record of the perturbation slope experiment.
#[derive(Debug, Clone)]
pub struct PerturbationTrace {
    pub n: usize,
    /// Support gap below theta = 0: tau_n = 0 on (-delta, 0].
    pub delta: f64,
    /// Support gap above theta = 0: tau_n = 0 on [0, delta_prime).
    pub delta_prime: f64,
    /// d T1(tau_n) / dtheta at 0, in the 2-pi (integral) normalization,
    /// evaluated spectrally.
    pub slope: f64,
    /// The same quantity from direct quadrature of tau_n against the
    /// derivative kernel -1/(2 sin^2(t/2)).
    pub slope_quadrature: f64,
    /// The uniform negative bound -(t2 - t1 + 2 pi) * floor / 2.
    pub bound: f64,
    /// Quadrature of tau_n / sin^2(t/2) over (0, pi] and [-pi, 0).
    pub integral_pos: f64,
    pub integral_neg: f64,
    /// Whether slope <= bound < 0.
    pub bound_holds: bool,
}

impl PerturbationTrace {
    pub fn route_agreement(&self) -> f64 {
        (self.slope - self.slope_quadrature).abs()
    }
}

/// Wrapped angle of grid index j in (-pi, pi].
fn wrapped_angle(j: usize, n: usize) -> f64 {
    let t = 2.0 * PI * j as f64 / n as f64;
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

/// Measures the pulled-back bump `tau_n = tau o Z_n` on the circle and
/// evaluates its slope `d T1(tau_n)/dtheta (0)` two independent ways,
/// together with the uniform negative bound.
pub fn perturbation_slope(
    family: &EggFamily,
    tau: &Perturbation,
    n: usize,
) -> Result<PerturbationTrace, FamilyError> {
    let gen = family.generator(n);
    let grid = gen.len();
    let tau_n: Vec<f64> = gen.boundary().samples().iter().map(|&z| tau.tau(z)).collect();
    let spacing = 2.0 * PI / grid as f64;

    // support gaps around theta = 0
    let first_pos = (1..grid / 2).find(|&j| tau_n[j] != 0.0);
    let first_neg = (1..grid / 2).find(|&j| tau_n[grid - j] != 0.0);
    let (delta_prime, delta) = match (first_pos, first_neg) {
        (Some(p), Some(q)) => ((p - 1) as f64 * spacing, (q - 1) as f64 * spacing),
        // tau_n identically zero on the half-circle: no support at all
        _ => (PI, PI),
    };
    if tau_n[0] != 0.0 || delta <= spacing || delta_prime <= spacing {
        return Err(FamilyError::SupportTouchesVertex {
            gap: delta.min(delta_prime),
            spacing,
        });
    }

    let bound = -0.5 * (family.t2() - family.t1() + 2.0 * PI) * tau.floor();

    // route (a): spectral T1 + spectral derivative, scaled to the integral
    // normalization
    let tf = BoundaryFunction::from_real_samples(tau_n.clone())?;
    let t1f = modified_hilbert(&tf)?;
    let slope = 2.0 * PI * spectral_derivative(&t1f).value_at_one().re;

    // route (b): periodic trapezoid of -tau_n / (2 sin^2(t/2)); the
    // integrand vanishes identically near the singular point
    let mut slope_quadrature = 0.0;
    let mut integral_pos = 0.0;
    let mut integral_neg = 0.0;
    for (j, &v) in tau_n.iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let t = wrapped_angle(j, grid);
        let kern = v / (0.5 * t).sin().powi(2);
        slope_quadrature -= 0.5 * kern * spacing;
        if t > 0.0 {
            integral_pos += kern * spacing;
        } else {
            integral_neg += kern * spacing;
        }
    }

    let bound_holds = tau.eps() == 0.0 || (slope <= bound && bound < 0.0);
    Ok(PerturbationTrace {
        n,
        delta,
        delta_prime,
        slope,
        slope_quadrature,
        bound,
        integral_pos,
        integral_neg,
        bound_holds,
    })
}

/// Exit-slope survey of the family attached to a rigid hypersurface.
#[derive(Debug, Clone)]
pub struct FamilyExitSlopes {
    /// dU_n/dtheta(0) per member, in index order.
    pub slopes: Vec<f64>,
    /// min_n |slope_n|: the empirical uniform floor.
    pub epsilon0: f64,
}

/// Attaches a disc to M for every family member and reports dU/dtheta(0).
/// The anchor point of the family's sector must be strongly pseudoconvex
/// for M.
pub fn family_exit_slopes(
    m: &RigidHypersurface,
    family: &EggFamily,
    c: f64,
) -> Result<FamilyExitSlopes, FamilyError> {
    let class = m.classify_point(family.sector().q_point(), m.default_tol())?;
    if class != PointClass::StronglyPseudoconvex {
        return Err(FamilyError::NotPseudoconvex(class));
    }
    let mut slopes = Vec::with_capacity(family.len());
    for gen in family.generators() {
        let disc = attach_disc(m, gen, c)?;
        slopes.push(du_dtheta(&disc));
    }
    let epsilon0 = slopes.iter().map(|s| s.abs()).fold(f64::INFINITY, f64::min);
    Ok(FamilyExitSlopes { slopes, epsilon0 })
}

/// Per-member record of the translation experiment.
#[derive(Debug, Clone)]
pub struct TranslationRow {
    pub n: usize,
    /// Translation moving the vertex to the origin: c_n = -Z_n(1).
    pub c_n: Complex64,
    /// |slope(Z_n + c_n) - slope(Z_n)| where slope(Z) = d T1(P(Z, Zbar))/dtheta (0).
    pub diff_n: f64,
    /// diff_n / |c_n| (empirical operator-bound estimate).
    pub ratio: f64,
    /// C^{1,0.9} norm of P(Z_n + c_n, .) - P(Z_n, .) on the circle.
    pub holder_diff: f64,
}

/// Result of the translation experiment over the whole family.
#[derive(Debug, Clone)]
pub struct TranslationReport {
    pub rows: Vec<TranslationRow>,
    /// Least n with diff_n <= epsilon0 / 2, if any.
    pub n0: Option<usize>,
    /// Least-squares fit through the origin of diff_n against |c_n|,
    /// over n >= 2.
    pub fitted_kc: f64,
    pub epsilon0: f64,
}

/// slope(Z) = d T1(P(Z, Zbar)) / dtheta at theta = 0 (spectral).
pub fn generator_slope(m: &RigidHypersurface, z: &DiscGenerator) -> Result<f64, FamilyError> {
    let rho: Vec<f64> = z
        .boundary()
        .samples()
        .iter()
        .map(|&zj| m.polynomial().eval(zj))
        .collect();
    let t1 = modified_hilbert(&BoundaryFunction::from_real_samples(rho)?)?;
    Ok(spectral_derivative(&t1).value_at_one().re)
}

fn translate_generator(z: &DiscGenerator, c: Complex64) -> Result<DiscGenerator, FamilyError> {
    let bf = BoundaryFunction::from_samples(z.boundary().samples().iter().map(|s| s + c).collect())?;
    let tol = (10.0 * z.negative_energy()).max(crate::discs::GENERATOR_NEG_ENERGY_TOL);
    Ok(DiscGenerator::with_max_negative_energy(bf, tol)?)
}

/// Translates each family member so its vertex hits the origin and measures
/// how much the attached-disc slope moves; selects the least index whose
/// slope change is at most `epsilon0 / 2`.
pub fn translation_experiment(
    m: &RigidHypersurface,
    family: &EggFamily,
    epsilon0: f64,
) -> Result<TranslationReport, FamilyError> {
    assert!(epsilon0 > 0.0, "epsilon0 must be positive");
    let idx = HolderIndex::new(1, 0.9).expect("valid index");
    let mut rows = Vec::with_capacity(family.len());
    for (i, gen) in family.generators().iter().enumerate() {
        let n = i + 1;
        let c_n = -family.vertex(n);
        let shifted = translate_generator(gen, c_n)?;
        let base = generator_slope(m, gen)?;
        let moved = generator_slope(m, &shifted)?;
        let diff_n = (moved - base).abs();
        let rho_diff: Vec<f64> = gen
            .boundary()
            .samples()
            .iter()
            .zip(shifted.boundary().samples())
            .map(|(&a, &b)| m.polynomial().eval(b) - m.polynomial().eval(a))
            .collect();
        let holder_diff = holder_norm(&BoundaryFunction::from_real_samples(rho_diff)?, idx);
        rows.push(TranslationRow {
            n,
            c_n,
            diff_n,
            ratio: diff_n / c_n.norm(),
            holder_diff,
        });
    }
    let (mut num, mut den) = (0.0, 0.0);
    for r in rows.iter().skip(1) {
        num += r.diff_n * r.c_n.norm();
        den += r.c_n.norm_sqr();
    }
    let fitted_kc = if den > 0.0 { num / den } else { 0.0 };
    let n0 = rows.iter().find(|r| r.diff_n <= epsilon0 / 2.0).map(|r| r.n);
    let report = TranslationReport {
        rows,
        n0,
        fitted_kc,
        epsilon0,
    };
    match report.n0 {
        Some(_) => Ok(report),
        None => Err(FamilyError::NoQualifyingIndex {
            target: epsilon0 / 2.0,
            report: Box::new(report),
        }),
    }
}
