//! Analytic discs attached to graph hypersurfaces: closed-form attachment
//! for rigid graphs via harmonic conjugation, the fixed-point Bishop solver,
//! attachment residual audits, exit vectors and boundary derivatives.

use crate::circle::{modified_hilbert, spectral_derivative, BoundaryFunction, CircleError};
use crate::hypersurface::{GraphHypersurface, RigidHypersurface};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiscError {
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error("negative-frequency energy {energy:.3e} exceeds tolerance {tol:.3e}")]
    NotAnalytic { energy: f64, tol: f64 },
    #[error("real part at zeta = 1 is {got:.6e}, expected {want:.6e}")]
    RealPartMismatch { got: f64, want: f64 },
    #[error("invalid solver options: {0}")]
    InvalidOptions(String),
    #[error(
        "fixed-point iteration is not contracting (step norms non-decreasing for {} iterations)",
        history.len()
    )]
    NonContraction {
        history: Vec<f64>,
        last_iterate: BoundaryFunction,
    },
    #[error("no convergence within {max_iter} iterations (last step {})", history.last().unwrap())]
    NoConvergence {
        max_iter: usize,
        history: Vec<f64>,
        last_iterate: BoundaryFunction,
    },
}

/// Default relative bound on negative-frequency energy for disc generators.
pub const GENERATOR_NEG_ENERGY_TOL: f64 = 1e-9;

/// Boundary values of the z-component of an analytic disc; constructors
/// verify that the samples extend analytically (negative-frequency Fourier
/// energy below tolerance).
#[derive(Debug, Clone)]
pub struct DiscGenerator {
    z: BoundaryFunction,
    negative_energy: f64,
}

impl DiscGenerator {
    pub fn new(z: BoundaryFunction) -> Result<Self, DiscError> {
        Self::with_max_negative_energy(z, GENERATOR_NEG_ENERGY_TOL)
    }

    /// Constructor with a caller-chosen analyticity tolerance, for boundary
    /// data whose Fourier tail decays slowly (e.g. maps with corners) and
    /// aliases a small amount of energy into negative bins at finite N.
    pub fn with_max_negative_energy(z: BoundaryFunction, tol: f64) -> Result<Self, DiscError> {
        let energy = z.fourier().negative_energy_relative();
        if energy > tol {
            return Err(DiscError::NotAnalytic { energy, tol });
        }
        Ok(Self {
            z,
            negative_energy: energy,
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self, DiscError> {
        let z = BoundaryFunction::from_fn(n, |t| f(Complex64::from_polar(1.0, t)))?;
        Self::new(z)
    }

    pub fn boundary(&self) -> &BoundaryFunction {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Z(1), the value at the distinguished boundary point.
    pub fn value_at_one(&self) -> Complex64 {
        self.z.value_at_one()
    }

    pub fn negative_energy(&self) -> f64 {
        self.negative_energy
    }
}

/// Attached analytic disc `A(zeta) = (Z(zeta), W(zeta))` with `Re W(1) = c`.
#[derive(Debug, Clone)]
pub struct AnalyticDisc {
    z: DiscGenerator,
    w: BoundaryFunction,
    c: f64,
}

/// Default relative bound on negative-frequency energy of the W component.
pub const DISC_NEG_ENERGY_TOL: f64 = 1e-8;

impl AnalyticDisc {
    pub fn new(z: DiscGenerator, w: BoundaryFunction, c: f64) -> Result<Self, DiscError> {
        Self::with_tolerance(z, w, c, DISC_NEG_ENERGY_TOL)
    }

    pub fn with_tolerance(
        z: DiscGenerator,
        w: BoundaryFunction,
        c: f64,
        neg_tol: f64,
    ) -> Result<Self, DiscError> {
        let energy = w.fourier().negative_energy_relative();
        if energy > neg_tol {
            return Err(DiscError::NotAnalytic {
                energy,
                tol: neg_tol,
            });
        }
        let got = w.value_at_one().re;
        if (got - c).abs() > 1e-10 {
            return Err(DiscError::RealPartMismatch { got, want: c });
        }
        Ok(Self { z, w, c })
    }

    pub fn z(&self) -> &DiscGenerator {
        &self.z
    }

    pub fn w(&self) -> &BoundaryFunction {
        &self.w
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// U = Re W as a real boundary function.
    pub fn u(&self) -> BoundaryFunction {
        BoundaryFunction::from_real_samples(self.w.real_parts()).expect("same grid")
    }

    /// V = Im W as a real boundary function.
    pub fn v(&self) -> BoundaryFunction {
        BoundaryFunction::from_real_samples(self.w.imag_parts()).expect("same grid")
    }
}

/// Options for the Bishop fixed-point solver.
#[derive(Debug, Clone, Copy)]
pub struct BishopOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub damping: f64,
}

impl Default for BishopOptions {
    fn default() -> Self {
        Self {
            tol: 1e-11,
            max_iter: 50,
            damping: 1.0,
        }
    }
}

impl BishopOptions {
    fn validate(&self) -> Result<(), DiscError> {
        if !(self.tol > 0.0) {
            return Err(DiscError::InvalidOptions(format!(
                "tol {} must be positive",
                self.tol
            )));
        }
        if self.max_iter < 1 {
            return Err(DiscError::InvalidOptions("max_iter must be >= 1".into()));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(DiscError::InvalidOptions(format!(
                "damping {} outside (0, 1]",
                self.damping
            )));
        }
        Ok(())
    }
}

/// Result of a converged Bishop solve, with contraction diagnostics.
#[derive(Debug, Clone)]
pub struct BishopSolution {
    pub disc: AnalyticDisc,
    pub iterations: usize,
    pub step_norms: Vec<f64>,
    /// Negative-frequency energy of W, reported (not removed).
    pub negative_energy: f64,
    pub damping_used: f64,
}

/// The unique complex boundary function W with `Im W = V` on the grid and
/// `Re W(1) = c`, built spectrally from one-sided Fourier coefficients.
pub fn analytic_completion(v: &BoundaryFunction, c: f64) -> Result<BoundaryFunction, CircleError> {
    let n = v.len();
    let mut coeffs = v.fourier();
    // w_0 = i v_0, w_m = 2 i v_m for 0 < m < N/2, Nyquist kept so that
    // Im W reproduces V exactly on the grid
    let v0 = coeffs.bins()[0];
    coeffs.bins_mut()[0] = Complex64::new(0.0, 1.0) * v0;
    for i in 1..n {
        let b = coeffs.bins()[i];
        coeffs.bins_mut()[i] = if i < n / 2 {
            Complex64::new(0.0, 2.0) * b
        } else if i == n / 2 {
            Complex64::new(0.0, 1.0) * b
        } else {
            Complex64::ZERO
        };
    }
    let w = coeffs.to_samples();
    let shift = c - w.value_at_one().re;
    Ok(w.map(|s| s + shift))
}

/// Closed-form attachment of a disc to a rigid hypersurface: V = P(Z, Zbar)
/// on the grid, W its analytic completion with `Re W(1) = c`.
pub fn attach_disc(
    m: &RigidHypersurface,
    z: &DiscGenerator,
    c: f64,
) -> Result<AnalyticDisc, DiscError> {
    let v_samples: Vec<f64> = z
        .boundary()
        .samples()
        .iter()
        .map(|&zj| m.polynomial().eval(zj))
        .collect();
    let v = BoundaryFunction::from_real_samples(v_samples)?;
    let w = analytic_completion(&v, c)?;
    // completion is one-sided by construction; tolerance only guards rounding
    AnalyticDisc::with_tolerance(z.clone(), w, c, 1e-8)
}

fn rho_on_grid(
    m: &GraphHypersurface,
    z: &DiscGenerator,
    u: &BoundaryFunction,
) -> Result<BoundaryFunction, CircleError> {
    let vals: Vec<f64> = z
        .boundary()
        .samples()
        .iter()
        .zip(u.samples())
        .map(|(&zj, uj)| m.rho(zj, uj.re))
        .collect();
    BoundaryFunction::from_real_samples(vals)
}

/// Solves the Bishop equation `U = -T1(rho(Z, Zbar, U)) + c` by damped
/// fixed-point iteration from `U = c`, then assembles `W = U + i rho`.
pub fn solve_bishop(
    m: &GraphHypersurface,
    z: &DiscGenerator,
    c: f64,
    opts: &BishopOptions,
) -> Result<BishopSolution, DiscError> {
    opts.validate()?;
    let n = z.len();
    let mut u = BoundaryFunction::constant(n, Complex64::new(c, 0.0))?;
    let mut damping = opts.damping;
    let mut damping_reduced = false;
    let mut history: Vec<f64> = Vec::new();
    let mut nondecreasing = 0usize;
    let mut iterations = 0usize;
    let mut converged = false;

    while iterations < opts.max_iter {
        iterations += 1;
        let rho = rho_on_grid(m, z, &u)?;
        let t1 = modified_hilbert(&rho)?;
        let target = t1.map(|s| Complex64::new(c - s.re, 0.0));
        let next = BoundaryFunction::from_samples(
            u.samples()
                .iter()
                .zip(target.samples())
                .map(|(a, b)| (1.0 - damping) * a + damping * b)
                .collect(),
        )?;
        let step = next.sup_diff(&u);
        u = next;
        if let Some(&prev) = history.last() {
            if step >= prev {
                nondecreasing += 1;
                if !damping_reduced {
                    damping = 0.5;
                    damping_reduced = true;
                }
            } else {
                nondecreasing = 0;
            }
        }
        history.push(step);
        if nondecreasing >= 5 {
            return Err(DiscError::NonContraction {
                history,
                last_iterate: u,
            });
        }
        if step < opts.tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(DiscError::NoConvergence {
            max_iter: opts.max_iter,
            history,
            last_iterate: u,
        });
    }

    let v = rho_on_grid(m, z, &u)?;
    let w = BoundaryFunction::from_samples(
        u.samples()
            .iter()
            .zip(v.samples())
            .map(|(a, b)| Complex64::new(a.re, b.re))
            .collect(),
    )?;
    let negative_energy = w.fourier().negative_energy_relative();
    let disc = AnalyticDisc::with_tolerance(z.clone(), w, c, 1e-7)?;
    Ok(BishopSolution {
        disc,
        iterations,
        step_norms: history,
        negative_energy,
        damping_used: damping,
    })
}

/// Sup over the grid of `|Im W - rho(Z, Zbar, Re W)|`.
pub fn attachment_residual(a: &AnalyticDisc, m: &GraphHypersurface) -> f64 {
    a.z()
        .boundary()
        .samples()
        .iter()
        .zip(a.w().samples())
        .map(|(&zj, wj)| (wj.im - m.rho(zj, wj.re)).abs())
        .fold(0.0, f64::max)
}

/// Exit vector `-dA/dzeta at zeta = 1 = i dA/dtheta at theta = 0`, per
/// component, via spectral differentiation.
pub fn exit_vector(a: &AnalyticDisc) -> (Complex64, Complex64) {
    let i = Complex64::new(0.0, 1.0);
    let dz = spectral_derivative(a.z().boundary()).value_at_one();
    let dw = spectral_derivative(a.w()).value_at_one();
    (i * dz, i * dw)
}

/// `d(Re W)/dtheta` at `theta = 0`, via spectral differentiation.
pub fn du_dtheta(a: &AnalyticDisc) -> f64 {
    spectral_derivative(a.w()).value_at_one().re
}
