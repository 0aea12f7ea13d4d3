//! Scenario configuration: a single TOML file with a polynomial block and
//! per-command blocks. Unknown keys are hard errors.

use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub polynomial: PolynomialConfig,
    /// Grid size (power of two, >= 16). Overridable with --grid.
    pub grid: Option<usize>,
    pub classify: Option<ClassifyConfig>,
    pub attach: Option<AttachConfig>,
    pub family: Option<FamilyConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialConfig {
    pub degree: u32,
    /// Terms as records (j, k, re, im); the Hermitian mirror is implied.
    pub terms: Vec<(u32, u32, f64, f64)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyConfig {
    /// Flat tolerance; defaults to the scale-invariant hypersurface default.
    pub tol: Option<f64>,
}

fn default_method() -> String {
    "closed-form".to_string()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttachConfig {
    /// Power-series coefficients of the generator: Z = sum coeff_k zeta^k,
    /// entries [re, im] for powers 1, 2, ...
    pub z_coeffs: Vec<[f64; 2]>,
    #[serde(default)]
    pub c: f64,
    /// "closed-form" (rigid attachment) or "bishop" (fixed-point solver).
    #[serde(default = "default_method")]
    pub method: String,
    /// Optional non-rigid coupling gamma: rho = P + gamma * u * (Re z)^2.
    /// Forces the Bishop solver.
    #[serde(default)]
    pub u_coupling: f64,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub damping: Option<f64>,
}

fn default_q_radius() -> f64 {
    1.0
}

fn default_beta() -> f64 {
    0.4
}

fn default_n_max() -> usize {
    8
}

fn default_eps() -> f64 {
    0.01
}

fn default_inner_factor() -> f64 {
    0.16
}

fn default_outer_factor() -> f64 {
    0.20
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub theta_lo: f64,
    pub theta_hi: f64,
    /// |q|: the anchor sits on the sector bisector at this radius.
    #[serde(default = "default_q_radius")]
    pub q_radius: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    /// Perturbation strength; 0 is the degenerate (zero) perturbation.
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// Re W(1) of the attached discs.
    #[serde(default)]
    pub c: f64,
    /// Inner/outer bump region radii as multiples of |q|.
    #[serde(default = "default_inner_factor")]
    pub inner_factor: f64,
    #[serde(default = "default_outer_factor")]
    pub outer_factor: f64,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let cfg: ScenarioConfig =
            toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if cfg.polynomial.terms.is_empty() {
            return Err("empty polynomial".to_string());
        }
        if let Some(g) = cfg.grid {
            if g < 16 || !g.is_power_of_two() {
                return Err(format!("grid {g} must be a power of two and at least 16"));
            }
        }
        Ok(cfg)
    }
}
