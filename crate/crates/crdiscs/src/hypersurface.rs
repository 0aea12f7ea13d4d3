//! Rigid hypersurfaces `M = {v = P(z, zbar)}` with homogeneous polynomial P:
//! evaluation, the Laplacian of P and its angular profile, pseudoconvexity
//! classification of points, sector decomposition of the circle, and Levi
//! forms of general graph hypersurfaces `v = rho(z, zbar, u)`.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HypersurfaceError {
    #[error("empty polynomial")]
    EmptyPolynomial,
    #[error("term ({j},{k}) has total degree {} but the polynomial has degree {d}", j + k)]
    DegreeMismatch { j: u32, k: u32, d: u32 },
    #[error("coefficients at ({j},{k}) conflict with Hermitian symmetry: {a} vs {b}")]
    HermitianConflict {
        j: u32,
        k: u32,
        a: Complex64,
        b: Complex64,
    },
    #[error("diagonal coefficient ({j},{j}) has imaginary part {im:.3e}")]
    NonRealDiagonal { j: u32, im: f64 },
    #[error("tolerance {0} must be positive")]
    InvalidTolerance(f64),
    #[error("angular profile within +/-{tol:.3e} everywhere but not identically zero; offending midpoints: {midpoints:?}")]
    AmbiguousProfile { tol: f64, midpoints: Vec<f64> },
    #[error("gradient of the defining function vanishes at the probe point")]
    DegeneratePoint,
    #[error("point is off the hypersurface: |rho| = {0:.3e}")]
    PointOffSurface(f64),
    #[error("supplied derivatives disagree with finite differences (max deviation {0:.3e})")]
    InconsistentJet(f64),
}

/// Real-valued homogeneous polynomial `P(z, zbar) = sum_{j+k=d} a_jk z^j zbar^k`
/// with Hermitian coefficient symmetry `a_kj = conj(a_jk)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPolynomial {
    degree: u32,
    /// coeffs[j] = a_{j, d-j}
    coeffs: Vec<Complex64>,
}

impl HomogeneousPolynomial {
    /// Builds P from a term list `(j, k, a_jk)`; the Hermitian mirror term
    /// `(k, j, conj(a_jk))` is filled in automatically, and re-stated terms
    /// must agree to 1e-12.
    pub fn from_terms(
        degree: u32,
        terms: &[(u32, u32, Complex64)],
    ) -> Result<Self, HypersurfaceError> {
        if terms.is_empty() {
            return Err(HypersurfaceError::EmptyPolynomial);
        }
        let mut coeffs = vec![None::<Complex64>; degree as usize + 1];
        let mut put = |j: u32, k: u32, a: Complex64| -> Result<(), HypersurfaceError> {
            if j + k != degree {
                return Err(HypersurfaceError::DegreeMismatch { j, k, d: degree });
            }
            match coeffs[j as usize] {
                None => {
                    coeffs[j as usize] = Some(a);
                    Ok(())
                }
                Some(b) if (a - b).norm() <= 1e-12 => Ok(()),
                Some(b) => Err(HypersurfaceError::HermitianConflict { j, k, a, b }),
            }
        };
        for &(j, k, a) in terms {
            if j == k && a.im.abs() > 1e-12 {
                return Err(HypersurfaceError::NonRealDiagonal { j, im: a.im });
            }
            put(j, k, a)?;
            put(k, j, a.conj())?;
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.unwrap_or(Complex64::ZERO))
            .collect();
        Ok(Self { degree, coeffs })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient `a_jk` (with `k = d - j`).
    pub fn coeff(&self, j: u32) -> Complex64 {
        self.coeffs[j as usize]
    }

    /// Evaluates `P(z, zbar)`; the imaginary residue (zero up to rounding by
    /// Hermitian symmetry) is discarded.
    pub fn eval(&self, z: Complex64) -> f64 {
        let zb = z.conj();
        let mut acc = Complex64::ZERO;
        for (j, &a) in self.coeffs.iter().enumerate() {
            let k = self.degree as usize - j;
            acc += a * z.powu(j as u32) * zb.powu(k as u32);
        }
        acc.re
    }

    /// Evaluates `Delta P(z) = 4 sum j k a_jk z^{j-1} zbar^{k-1}`.
    pub fn laplacian(&self, z: Complex64) -> f64 {
        let zb = z.conj();
        let mut acc = Complex64::ZERO;
        for (j, &a) in self.coeffs.iter().enumerate() {
            let k = self.degree as usize - j;
            if j == 0 || k == 0 {
                continue;
            }
            acc += a * (j * k) as f64 * z.powu(j as u32 - 1) * zb.powu(k as u32 - 1);
        }
        4.0 * acc.re
    }

    /// First complex partial `dP/dz = sum j a_jk z^{j-1} zbar^k`.
    pub fn d_dz(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        let mut acc = Complex64::ZERO;
        for (j, &a) in self.coeffs.iter().enumerate() {
            let k = self.degree as usize - j;
            if j == 0 {
                continue;
            }
            acc += a * j as f64 * z.powu(j as u32 - 1) * zb.powu(k as u32);
        }
        acc
    }

    /// Mixed second partial `d^2 P / dz dzbar` (real by Hermitian symmetry).
    pub fn d_dz_dzbar(&self, z: Complex64) -> f64 {
        self.laplacian(z) / 4.0
    }

    /// Angular profile q of the Laplacian: `Delta P(r e^{i theta}) = r^{d-2} q(theta)`.
    pub fn angular_profile(&self) -> TrigPolynomial {
        let d = self.degree as i64;
        if d < 2 {
            return TrigPolynomial::zero(0);
        }
        let m_max = (d - 2) as usize;
        let mut coeffs = vec![Complex64::ZERO; 2 * m_max + 1];
        for (j, &a) in self.coeffs.iter().enumerate() {
            let k = self.degree as usize - j;
            if j == 0 || k == 0 {
                continue;
            }
            let m = j as i64 - k as i64; // frequency of z^{j-1} zbar^{k-1} on the circle
            coeffs[(m + m_max as i64) as usize] += a * (4 * j * k) as f64;
        }
        TrigPolynomial { m_max, coeffs }
    }
}

/// Real trigonometric polynomial `q(theta) = sum_{|m| <= m_max} q_m e^{i m theta}`
/// with `q_{-m} = conj(q_m)`.
#[derive(Debug, Clone)]
pub struct TrigPolynomial {
    m_max: usize,
    /// coeffs[i] holds frequency `i - m_max`
    coeffs: Vec<Complex64>,
}

impl TrigPolynomial {
    fn zero(m_max: usize) -> Self {
        Self {
            m_max,
            coeffs: vec![Complex64::ZERO; 2 * m_max + 1],
        }
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn coeff(&self, m: i64) -> Complex64 {
        if m.unsigned_abs() as usize > self.m_max {
            Complex64::ZERO
        } else {
            self.coeffs[(m + self.m_max as i64) as usize]
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut acc = Complex64::ZERO;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let m = i as i64 - self.m_max as i64;
            acc += c * Complex64::new(0.0, m as f64 * theta).exp();
        }
        acc.re
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_machine_zero(&self) -> bool {
        self.max_coeff_norm() <= 1e-13
    }
}

/// Classification of a single hypersurface point by the sign of `Delta P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    StronglyPseudoconvex,
    StronglyPseudoconcave,
    LeviFlat,
}

/// Label of an angular sector of the circle by the sign of the angular
/// profile q: `Pseudoconvex` where q < 0, `Pseudoconcave` where q > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorLabel {
    Pseudoconvex,
    Pseudoconcave,
    Flat,
}

impl std::fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SectorLabel::Pseudoconvex => "pseudoconvex",
            SectorLabel::Pseudoconcave => "pseudoconcave",
            SectorLabel::Flat => "flat",
        };
        f.write_str(s)
    }
}

/// One open angular sector `(theta_lo, theta_hi)` with its sign label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub label: SectorLabel,
}

/// Decomposition of `[0, 2pi)` into Levi-flat rays and labeled open sectors.
#[derive(Debug, Clone)]
pub struct SectorMap {
    flat_rays: Vec<f64>,
    sectors: Vec<Sector>,
}

impl SectorMap {
    pub fn flat_rays(&self) -> &[f64] {
        &self.flat_rays
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    /// Label of the sector containing `theta` (normalized mod 2pi), or `None`
    /// if `theta` lies on a flat ray (within `ray_tol`).
    pub fn label_at(&self, theta: f64, ray_tol: f64) -> Option<SectorLabel> {
        let t = theta.rem_euclid(2.0 * PI);
        for &r in &self.flat_rays {
            let d = (t - r).abs();
            if d.min(2.0 * PI - d) <= ray_tol {
                return None;
            }
        }
        for s in &self.sectors {
            let lo = s.theta_lo;
            let hi = s.theta_hi;
            let inside = if hi <= 2.0 * PI {
                t > lo && t < hi
            } else {
                // wrapped sector
                t > lo || t < hi - 2.0 * PI
            };
            if inside {
                return Some(s.label);
            }
        }
        None
    }
}

/// Rigid hypersurface `{v = P(z, zbar)}`. The classification convention is
/// fixed: points with `Delta P < 0` are strongly pseudoconvex.
#[derive(Debug, Clone)]
pub struct RigidHypersurface {
    poly: HomogeneousPolynomial,
}

/// Side naming for the two components of the complement of a rigid graph.
/// `Above` is `{v > P}` and `Below` is `{v < P}`. By the convention adopted
/// here, the pseudoconvex side of a strongly pseudoconvex boundary piece is
/// `Above`; this is a fixed documented choice, not a derived fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphSide {
    Above,
    Below,
}

impl RigidHypersurface {
    pub fn new(poly: HomogeneousPolynomial) -> Self {
        Self { poly }
    }

    pub fn polynomial(&self) -> &HomogeneousPolynomial {
        &self.poly
    }

    /// The side designated as pseudoconvex under the fixed convention.
    pub fn pseudoconvex_side(&self) -> GraphSide {
        GraphSide::Above
    }

    /// Scale-invariant default tolerance for flat detection.
    pub fn default_tol(&self) -> f64 {
        1e-9 * self.poly.angular_profile().max_coeff_norm().max(1.0)
    }

    /// Classifies z by the sign of `Delta P(z)` against `tol`.
    pub fn classify_point(&self, z: Complex64, tol: f64) -> Result<PointClass, HypersurfaceError> {
        if tol <= 0.0 {
            return Err(HypersurfaceError::InvalidTolerance(tol));
        }
        let lap = self.poly.laplacian(z);
        Ok(if lap < -tol {
            PointClass::StronglyPseudoconvex
        } else if lap > tol {
            PointClass::StronglyPseudoconcave
        } else {
            PointClass::LeviFlat
        })
    }

    /// Decomposes the circle of arguments into flat rays (zeros of the
    /// angular profile q) and open sectors labeled by the sign of q.
    pub fn sector_decomposition(&self, tol: f64) -> Result<SectorMap, HypersurfaceError> {
        if tol <= 0.0 {
            return Err(HypersurfaceError::InvalidTolerance(tol));
        }
        let q = self.poly.angular_profile();
        if q.is_machine_zero() {
            return Ok(SectorMap {
                flat_rays: vec![],
                sectors: vec![Sector {
                    theta_lo: 0.0,
                    theta_hi: 2.0 * PI,
                    label: SectorLabel::Flat,
                }],
            });
        }

        const SAMPLES: usize = 4096;
        let vals: Vec<f64> = (0..SAMPLES)
            .map(|i| q.eval(2.0 * PI * i as f64 / SAMPLES as f64))
            .collect();
        if vals.iter().all(|v| v.abs() <= tol) {
            let midpoints = (0..8)
                .map(|i| 2.0 * PI * i as f64 / 8.0)
                .collect();
            return Err(HypersurfaceError::AmbiguousProfile { tol, midpoints });
        }

        let mut rays: Vec<f64> = Vec::new();
        // sign-change zeros, bisected to 1e-10
        for i in 0..SAMPLES {
            let a = vals[i];
            let b = vals[(i + 1) % SAMPLES];
            if a == 0.0 {
                rays.push(2.0 * PI * i as f64 / SAMPLES as f64);
            } else if a * b < 0.0 {
                let mut lo = 2.0 * PI * i as f64 / SAMPLES as f64;
                let mut hi = 2.0 * PI * (i + 1) as f64 / SAMPLES as f64;
                let mut flo = a;
                while hi - lo > 1e-12 {
                    let mid = 0.5 * (lo + hi);
                    let fm = q.eval(mid);
                    if flo * fm <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                rays.push((0.5 * (lo + hi)).rem_euclid(2.0 * PI));
            }
        }
        // tangential zeros: |q| dips below tol without a sign change
        let mut i = 0;
        while i < SAMPLES {
            if vals[i].abs() <= tol && vals[i] != 0.0 {
                let start = i;
                while i < SAMPLES && vals[i].abs() <= tol {
                    i += 1;
                }
                let cluster = start..i;
                let has_change = cluster
                    .clone()
                    .any(|j| vals[j] * vals[(j + 1) % SAMPLES] < 0.0)
                    || (start > 0 && vals[start - 1] * vals[start] < 0.0);
                if !has_change {
                    let best = cluster
                        .min_by(|&a, &b| vals[a].abs().total_cmp(&vals[b].abs()))
                        .unwrap();
                    rays.push(2.0 * PI * best as f64 / SAMPLES as f64);
                }
            } else {
                i += 1;
            }
        }
        rays.sort_by(f64::total_cmp);
        rays.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
        if rays.len() > 1 && (rays[rays.len() - 1] - rays[0] - 2.0 * PI).abs() <= 1e-9 {
            rays.pop();
        }

        let mut sectors = Vec::new();
        if rays.is_empty() {
            let v = q.eval(1.0);
            let label = if v > tol {
                SectorLabel::Pseudoconcave
            } else if v < -tol {
                SectorLabel::Pseudoconvex
            } else {
                SectorLabel::Flat
            };
            sectors.push(Sector {
                theta_lo: 0.0,
                theta_hi: 2.0 * PI,
                label,
            });
        } else {
            for w in 0..rays.len() {
                let lo = rays[w];
                let hi = if w + 1 < rays.len() {
                    rays[w + 1]
                } else {
                    rays[0] + 2.0 * PI
                };
                let mid = q.eval(0.5 * (lo + hi));
                let label = if mid > tol {
                    SectorLabel::Pseudoconcave
                } else if mid < -tol {
                    SectorLabel::Pseudoconvex
                } else {
                    SectorLabel::Flat
                };
                sectors.push(Sector {
                    theta_lo: lo,
                    theta_hi: hi,
                    label,
                });
            }
        }
        Ok(SectorMap {
            flat_rays: rays,
            sectors,
        })
    }
}

/// Second-order jet of a graph defining profile `rho(z, zbar, u)` at a point:
/// the value and the partial derivatives entering the Levi form. `d_zzbar`
/// and `d_uu` are real because rho is real-valued.
#[derive(Debug, Clone, Copy)]
pub struct GraphJet {
    pub value: f64,
    pub d_z: Complex64,
    pub d_u: f64,
    pub d_zzbar: f64,
    pub d_zu: Complex64,
    pub d_uu: f64,
}

/// Second-order jet of a general defining function `rho(z, w)` at a point.
#[derive(Debug, Clone, Copy)]
pub struct DefiningJet {
    pub value: f64,
    pub d_z: Complex64,
    pub d_w: Complex64,
    pub d_zzbar: f64,
    pub d_zwbar: Complex64,
    pub d_wwbar: f64,
}

/// Levi form of a defining function at a point, evaluated from its jet:
/// `rho_zzbar |rho_w|^2 - 2 Re(rho_zwbar rho_zbar rho_w) + rho_wwbar |rho_z|^2`.
pub fn levi_form_raw(jet: &DefiningJet) -> Result<f64, HypersurfaceError> {
    let grad = jet.d_z.norm_sqr() + jet.d_w.norm_sqr();
    if grad <= 1e-20 {
        return Err(HypersurfaceError::DegeneratePoint);
    }
    let cross = jet.d_zwbar * jet.d_z.conj() * jet.d_w;
    Ok(jet.d_zzbar * jet.d_w.norm_sqr() - 2.0 * cross.re + jet.d_wwbar * jet.d_z.norm_sqr())
}

type GraphJetFn = dyn Fn(Complex64, f64) -> GraphJet + Send + Sync;

/// Graph hypersurface `{v = rho(z, zbar, u)}` given by a black-box jet
/// evaluator. Construction probes the supplied derivatives against centered
/// finite differences at fixed points and rejects inconsistent jets.
pub struct GraphHypersurface {
    jet: Box<GraphJetFn>,
}

impl std::fmt::Debug for GraphHypersurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("GraphHypersurface { jet: <fn> }")
    }
}

/// Deterministic probe points in the unit bidisc-like region (golden-angle
/// spiral in z, ladder in u).
fn probe_points(count: usize) -> Vec<(Complex64, f64)> {
    let golden = PI * (3.0 - 5.0f64.sqrt());
    (0..count)
        .map(|i| {
            let r = 0.2 + 0.6 * (i as f64 + 0.5) / count as f64;
            let th = golden * i as f64;
            let u = -0.5 + (i as f64 * 0.37).fract();
            (Complex64::from_polar(r, th), u)
        })
        .collect()
}

impl GraphHypersurface {
    pub fn new(jet: Box<GraphJetFn>) -> Result<Self, HypersurfaceError> {
        let s = Self { jet };
        let mut worst = 0.0f64;
        let h = 1e-4;
        for (z, u) in probe_points(12) {
            let j0 = s.jet(z, u);
            let f = |z: Complex64, u: f64| s.jet(z, u).value;
            let fd_x = (f(z + h, u) - f(z - h, u)) / (2.0 * h);
            let fd_y =
                (f(z + Complex64::new(0.0, h), u) - f(z - Complex64::new(0.0, h), u)) / (2.0 * h);
            // rho_z = (rho_x - i rho_y)/2
            let fd_z = Complex64::new(fd_x, -fd_y) / 2.0;
            worst = worst.max((fd_z - j0.d_z).norm());
            let fd_u = (f(z, u + h) - f(z, u - h)) / (2.0 * h);
            worst = worst.max((fd_u - j0.d_u).abs());
            // rho_zzbar = (rho_xx + rho_yy)/4
            let lap = (f(z + h, u) + f(z - h, u) + f(z + Complex64::new(0.0, h), u)
                + f(z - Complex64::new(0.0, h), u)
                - 4.0 * f(z, u))
                / (h * h);
            worst = worst.max((lap / 4.0 - j0.d_zzbar).abs());
            let g = |z: Complex64, u: f64| s.jet(z, u).d_u;
            let fd_zu_x = (g(z + h, u) - g(z - h, u)) / (2.0 * h);
            let fd_zu_y =
                (g(z + Complex64::new(0.0, h), u) - g(z - Complex64::new(0.0, h), u)) / (2.0 * h);
            let fd_zu = Complex64::new(fd_zu_x, -fd_zu_y) / 2.0;
            worst = worst.max((fd_zu - j0.d_zu).norm());
            let fd_uu = (f(z, u + h) - 2.0 * f(z, u) + f(z, u - h)) / (h * h);
            worst = worst.max((fd_uu - j0.d_uu).abs());
        }
        if worst > 1e-5 {
            return Err(HypersurfaceError::InconsistentJet(worst));
        }
        Ok(s)
    }

    pub fn jet(&self, z: Complex64, u: f64) -> GraphJet {
        (self.jet)(z, u)
    }

    /// rho(z, zbar, u).
    pub fn rho(&self, z: Complex64, u: f64) -> f64 {
        self.jet(z, u).value
    }

    /// Whether rho depends on u anywhere on the probe set (rigid graphs do not).
    pub fn is_rigid_on_probes(&self) -> bool {
        probe_points(12)
            .iter()
            .all(|&(z, u)| self.jet(z, u).d_u.abs() <= 1e-13 && self.jet(z, u).d_uu.abs() <= 1e-13)
    }

    /// Jet of the defining function `F(z, w) = v - rho(z, zbar, u)` at (z, w).
    pub fn defining_jet(&self, z: Complex64, w: Complex64) -> DefiningJet {
        let u = w.re;
        let j = self.jet(z, u);
        DefiningJet {
            value: w.im - j.value,
            d_z: -j.d_z,
            d_w: Complex64::new(-j.d_u, -1.0) / 2.0,
            d_zzbar: -j.d_zzbar,
            d_zwbar: -j.d_zu / 2.0,
            d_wwbar: -j.d_uu / 4.0,
        }
    }

    /// Levi form of `v - rho` at a point of the graph. Errors if the point
    /// is off the graph (|v - rho| > 1e-8) or the gradient vanishes.
    pub fn levi_form(&self, z: Complex64, w: Complex64) -> Result<f64, HypersurfaceError> {
        let jet = self.defining_jet(z, w);
        if jet.value.abs() > 1e-8 {
            return Err(HypersurfaceError::PointOffSurface(jet.value.abs()));
        }
        levi_form_raw(&jet)
    }
}

impl RigidHypersurface {
    /// The graph form of the rigid hypersurface, with jet derived from the
    /// polynomial coefficients (independent of u).
    pub fn graph(&self) -> GraphHypersurface {
        let p = self.poly.clone();
        GraphHypersurface::new(Box::new(move |z, _u| GraphJet {
            value: p.eval(z),
            d_z: p.d_dz(z),
            d_u: 0.0,
            d_zzbar: p.d_dz_dzbar(z),
            d_zu: Complex64::ZERO,
            d_uu: 0.0,
        }))
        .expect("polynomial jet is self-consistent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// P = 1/2 (z^3 zbar + z zbar^3) = r^4 cos 2theta.
    fn p_cos2() -> HomogeneousPolynomial {
        HomogeneousPolynomial::from_terms(4, &[(3, 1, c(0.5, 0.0))]).unwrap()
    }

    fn p_zzbar() -> HomogeneousPolynomial {
        HomogeneousPolynomial::from_terms(2, &[(1, 1, c(1.0, 0.0))]).unwrap()
    }

    /// P = Re z^3 (harmonic).
    fn p_re_z3() -> HomogeneousPolynomial {
        HomogeneousPolynomial::from_terms(3, &[(3, 0, c(0.5, 0.0))]).unwrap()
    }

    #[test]
    fn construction_validation() {
        assert!(matches!(
            HomogeneousPolynomial::from_terms(2, &[]),
            Err(HypersurfaceError::EmptyPolynomial)
        ));
        assert!(matches!(
            HomogeneousPolynomial::from_terms(2, &[(1, 2, c(1.0, 0.0))]),
            Err(HypersurfaceError::DegreeMismatch { .. })
        ));
        assert!(matches!(
            HomogeneousPolynomial::from_terms(2, &[(1, 1, c(1.0, 0.5))]),
            Err(HypersurfaceError::NonRealDiagonal { .. })
        ));
        // conflicting restatement of the mirror term
        assert!(matches!(
            HomogeneousPolynomial::from_terms(
                4,
                &[(3, 1, c(0.5, 0.2)), (1, 3, c(0.5, 0.2))]
            ),
            Err(HypersurfaceError::HermitianConflict { .. })
        ));
        // consistent restatement is fine
        assert!(HomogeneousPolynomial::from_terms(
            4,
            &[(3, 1, c(0.5, 0.2)), (1, 3, c(0.5, -0.2))]
        )
        .is_ok());
    }

    #[test]
    fn eval_examples() {
        assert!((p_zzbar().eval(c(2.0, 0.0)) - 4.0).abs() <= 1e-14);
        assert_eq!(p_cos2().eval(Complex64::ZERO), 0.0);
        let z = Complex64::from_polar(1.0, PI / 8.0);
        assert!((p_cos2().eval(z) - (PI / 4.0).cos()).abs() <= 1e-12);
    }

    #[test]
    fn eval_is_real_and_homogeneous() {
        let p = HomogeneousPolynomial::from_terms(
            5,
            &[(3, 2, c(0.7, -0.4)), (5, 0, c(0.1, 0.2)), (4, 1, c(-0.3, 0.9))],
        )
        .unwrap();
        // real-valuedness via the complex accumulator
        let zb = |z: Complex64| {
            let mut acc = Complex64::ZERO;
            for j in 0..=5u32 {
                acc += p.coeff(j) * z.powu(j) * z.conj().powu(5 - j);
            }
            acc
        };
        for i in 0..100 {
            let z = Complex64::from_polar(0.3 + 0.01 * i as f64, 0.13 * i as f64);
            assert!(zb(z).im.abs() <= 1e-12 * zb(z).norm().max(1.0));
        }
        // homogeneity P(lambda z) = lambda^d P(z)
        for i in 0..50 {
            let z = Complex64::from_polar(1.0, 0.41 * i as f64);
            let lam = 0.5 + 0.04 * i as f64;
            let lhs = p.eval(lam * z);
            let rhs = lam.powi(5) * p.eval(z);
            assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn laplacian_examples() {
        for i in 0..20 {
            let z = Complex64::from_polar(0.2 + 0.1 * i as f64, 0.7 * i as f64);
            assert!((p_zzbar().laplacian(z) - 4.0).abs() <= 1e-12);
            assert!(p_re_z3().laplacian(z).abs() <= 1e-12);
            let (r, th) = z.to_polar();
            let expect = 12.0 * r * r * (2.0 * th).cos();
            assert!((p_cos2().laplacian(z) - expect).abs() <= 1e-10 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn laplacian_homogeneity() {
        let p = p_cos2();
        for i in 0..1000 {
            let z = Complex64::from_polar(0.5 + (i as f64 * 0.618).fract(), 0.0739 * i as f64);
            let lam = 0.3 + (i as f64 * 0.414).fract() * 2.0;
            let lhs = p.laplacian(lam * z);
            let rhs = lam.powi(2) * p.laplacian(z);
            assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn angular_profile_examples() {
        let q = p_zzbar().angular_profile();
        for i in 0..10 {
            assert!((q.eval(0.63 * i as f64) - 4.0).abs() <= 1e-12);
        }
        let q = p_cos2().angular_profile();
        for i in 0..10 {
            let th = 0.63 * i as f64;
            assert!((q.eval(th) - 12.0 * (2.0 * th).cos()).abs() <= 1e-10);
        }
        assert!(p_re_z3().angular_profile().is_machine_zero());
        // cross-check Delta P(r e^{i th}) = r^{d-2} q(th)
        let p = p_cos2();
        let q = p.angular_profile();
        for i in 0..100 {
            let r = 0.2 + 0.03 * i as f64;
            let th = 0.21 * i as f64;
            let lhs = p.laplacian(Complex64::from_polar(r, th));
            let rhs = r.powi(2) * q.eval(th);
            assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
        }
        // Hermitian symmetry of profile coefficients
        for m in 0..=q.m_max() as i64 {
            assert!((q.coeff(-m) - q.coeff(m).conj()).norm() <= 1e-12);
        }
    }

    #[test]
    fn sector_decomposition_cos2() {
        let m = RigidHypersurface::new(p_cos2());
        let map = m.sector_decomposition(m.default_tol()).unwrap();
        let rays = map.flat_rays();
        assert_eq!(rays.len(), 4);
        for (got, want) in rays.iter().zip([PI / 4.0, 3.0 * PI / 4.0, 5.0 * PI / 4.0, 7.0 * PI / 4.0]) {
            assert!((got - want).abs() <= 1e-6, "ray {got} vs {want}");
        }
        let sectors = map.sectors();
        assert_eq!(sectors.len(), 4);
        // q = 12 cos 2theta < 0 on (pi/4, 3pi/4) -> pseudoconvex, alternating
        assert_eq!(sectors[0].label, SectorLabel::Pseudoconvex);
        assert_eq!(sectors[1].label, SectorLabel::Pseudoconcave);
        assert_eq!(sectors[2].label, SectorLabel::Pseudoconvex);
        assert_eq!(sectors[3].label, SectorLabel::Pseudoconcave);
        // the wrapped sector covers theta = 0 where q > 0
        assert_eq!(map.label_at(0.0, 1e-9), Some(SectorLabel::Pseudoconcave));
        assert_eq!(map.label_at(PI / 2.0, 1e-9), Some(SectorLabel::Pseudoconvex));
        assert_eq!(map.label_at(PI / 4.0, 1e-9), None);
        // ray count bound for a degree-d profile
        assert!(rays.len() <= 2 * (m.polynomial().degree() as usize - 2));
    }

    #[test]
    fn sector_decomposition_constant_and_flat() {
        let m = RigidHypersurface::new(p_zzbar());
        let map = m.sector_decomposition(m.default_tol()).unwrap();
        assert!(map.flat_rays().is_empty());
        assert_eq!(map.sectors().len(), 1);
        assert_eq!(map.sectors()[0].label, SectorLabel::Pseudoconcave);

        let m = RigidHypersurface::new(p_re_z3());
        let map = m.sector_decomposition(m.default_tol()).unwrap();
        assert!(map.flat_rays().is_empty());
        assert_eq!(map.sectors()[0].label, SectorLabel::Flat);
    }

    #[test]
    fn sector_decomposition_ambiguous() {
        // tiny but machine-nonzero profile with a huge tolerance
        let p = HomogeneousPolynomial::from_terms(2, &[(1, 1, c(1e-11, 0.0))]).unwrap();
        let m = RigidHypersurface::new(p);
        assert!(matches!(
            m.sector_decomposition(1.0),
            Err(HypersurfaceError::AmbiguousProfile { .. })
        ));
    }

    #[test]
    fn classify_point_examples() {
        let m = RigidHypersurface::new(p_cos2());
        let tol = m.default_tol();
        assert_eq!(
            m.classify_point(c(1.0, 0.0), tol).unwrap(),
            PointClass::StronglyPseudoconcave
        );
        assert_eq!(
            m.classify_point(c(0.0, 1.0), tol).unwrap(),
            PointClass::StronglyPseudoconvex
        );
        let z = Complex64::from_polar(1.0, PI / 4.0);
        assert_eq!(m.classify_point(z, tol).unwrap(), PointClass::LeviFlat);
        // radial invariance off the flat rays
        for i in 0..100 {
            let th = 0.0611 * i as f64;
            if ((2.0 * th).cos()).abs() < 1e-3 {
                continue;
            }
            let a = m.classify_point(Complex64::from_polar(1.0, th), tol).unwrap();
            let b = m.classify_point(Complex64::from_polar(3.7, th), tol).unwrap();
            assert_eq!(a, b);
        }
        assert!(m.classify_point(c(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn sector_labels_match_laplacian_sign() {
        let m = RigidHypersurface::new(p_cos2());
        let map = m.sector_decomposition(m.default_tol()).unwrap();
        for i in 0..1000 {
            let th = (i as f64 * 0.618_033_988_75).fract() * 2.0 * PI;
            if ((2.0 * th).cos()).abs() < 1e-3 {
                continue; // skip near rays
            }
            let lap = m.polynomial().laplacian(Complex64::from_polar(1.3, th));
            let want = if lap < 0.0 {
                SectorLabel::Pseudoconvex
            } else {
                SectorLabel::Pseudoconcave
            };
            assert_eq!(map.label_at(th, 1e-6), Some(want), "theta {th}");
        }
    }

    #[test]
    fn levi_form_hyperplane_and_sphere() {
        // rho = v: all second derivatives vanish
        let jet = DefiningJet {
            value: 0.0,
            d_z: Complex64::ZERO,
            d_w: c(0.0, -0.5),
            d_zzbar: 0.0,
            d_zwbar: Complex64::ZERO,
            d_wwbar: 0.0,
        };
        assert_eq!(levi_form_raw(&jet).unwrap(), 0.0);

        // rho = |z|^2 + |w|^2 - 1 on the unit sphere: Levi form = |w|^2 + |z|^2 = 1
        let sphere = |z: Complex64, w: Complex64| DefiningJet {
            value: z.norm_sqr() + w.norm_sqr() - 1.0,
            d_z: z.conj(),
            d_w: w.conj(),
            d_zzbar: 1.0,
            d_zwbar: Complex64::ZERO,
            d_wwbar: 1.0,
        };
        for &(a, b) in &[(0.6, 0.8), (1.0, 0.0), (0.0, 1.0), (0.5, 0.75f64.sqrt())] {
            let z = c(a, 0.1).unscale(c(a, 0.1).norm()) * a;
            let w = c(0.0, b);
            let jet = sphere(z, w);
            assert!((levi_form_raw(&jet).unwrap() - 1.0).abs() <= 1e-12);
        }

        // degenerate gradient
        let jet = DefiningJet {
            value: 0.0,
            d_z: Complex64::ZERO,
            d_w: Complex64::ZERO,
            d_zzbar: 1.0,
            d_zwbar: Complex64::ZERO,
            d_wwbar: 0.0,
        };
        assert!(matches!(
            levi_form_raw(&jet),
            Err(HypersurfaceError::DegeneratePoint)
        ));
    }

    #[test]
    fn levi_form_rigid_graph() {
        // rho = zzbar: at the origin levi = -1/4 with the literal formula
        let m = RigidHypersurface::new(p_zzbar());
        let g = m.graph();
        let levi = g.levi_form(Complex64::ZERO, Complex64::ZERO).unwrap();
        assert!((levi - (-0.25)).abs() <= 1e-12);

        // |levi| = |Delta P| / 16 on graph points, sign opposite to Delta P
        let m = RigidHypersurface::new(p_cos2());
        let g = m.graph();
        for i in 0..50 {
            let z = Complex64::from_polar(0.3 + 0.02 * i as f64, 0.37 * i as f64);
            let w = c(0.1 * i as f64, m.polynomial().eval(z));
            let levi = g.levi_form(z, w).unwrap();
            let lap = m.polynomial().laplacian(z);
            assert!((levi.abs() - lap.abs() / 16.0).abs() <= 1e-9 * lap.abs().max(1.0));
            if lap.abs() > 1e-10 {
                assert!(levi * lap < 0.0);
            }
        }

        // off-surface point rejected
        assert!(matches!(
            g.levi_form(c(1.0, 0.0), c(0.0, 5.0)),
            Err(HypersurfaceError::PointOffSurface(_))
        ));
    }

    #[test]
    fn graph_jet_consistency_check() {
        // consistent non-rigid jet: rho = u * |z|^2
        let ok = GraphHypersurface::new(Box::new(|z, u| GraphJet {
            value: u * z.norm_sqr(),
            d_z: u * z.conj(),
            d_u: z.norm_sqr(),
            d_zzbar: u,
            d_zu: z.conj(),
            d_uu: 0.0,
        }));
        let ok = ok.unwrap();
        assert!(!ok.is_rigid_on_probes());

        // wrong derivative rejected
        let bad = GraphHypersurface::new(Box::new(|z, u| GraphJet {
            value: u * z.norm_sqr(),
            d_z: u * z.conj() * 2.0,
            d_u: z.norm_sqr(),
            d_zzbar: u,
            d_zu: z.conj(),
            d_uu: 0.0,
        }));
        assert!(matches!(bad, Err(HypersurfaceError::InconsistentJet(_))));

        // rigid graph detection
        let m = RigidHypersurface::new(p_zzbar());
        assert!(m.graph().is_rigid_on_probes());
    }
}
