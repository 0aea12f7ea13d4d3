//! Numerical toolkit for CR geometry of rigid hypersurfaces in C^2.
//!
//! The crate computes Hilbert and modified Hilbert transforms on the unit
//! circle, attaches analytic discs to graph hypersurfaces by solving the
//! Bishop equation, classifies pseudoconvexity of rigid hypersurfaces
//! `v = P(z, zbar)` by sector decomposition of the Laplacian of P, and runs
//! disc-family, perturbation and translation experiments at desk scale.
//!
//! Modules:
//! - [`circle`]: boundary functions, Fourier analysis, Hilbert transforms,
//!   Poisson extension and Hölder norms;
//! - [`hypersurface`]: homogeneous polynomials, Levi forms, point
//!   classification and sector decomposition;
//! - [`discs`]: analytic disc attachment and the Bishop fixed-point solver;
//! - [`families`]: egg-shaped disc families, bump perturbations, slope
//!   bounds and the translation experiment;
//! - [`cli`]: configuration parsing and the command implementations behind
//!   the `crdiscs` binary.

pub mod circle;
pub mod cli;
pub mod discs;
pub mod families;
pub mod hypersurface;
