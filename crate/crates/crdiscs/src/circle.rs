//! Functions on the unit circle boundary: uniform-grid sampling, Fourier
//! analysis, the Hilbert kernel, classical and modified Hilbert transforms,
//! a principal-value quadrature oracle, Poisson extension and Hölder norms.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;
use thiserror::Error;

/// Absolute tolerance below which a sampled function counts as real-valued.
pub const REAL_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum CircleError {
    #[error("grid size {0} must be a power of two and at least 16")]
    InvalidGridSize(usize),
    #[error("input is not real-valued (max imaginary part {0:.3e})")]
    NonRealInput(f64),
    #[error("radius {0} outside [0, 1)")]
    RadiusOutOfRange(f64),
    #[error("grid sizes differ: {0} vs {1}")]
    GridMismatch(usize, usize),
    #[error("Hölder exponent {0} outside (0, 1)")]
    InvalidHolderExponent(f64),
}

/// Samples of a function on the uniform grid `theta_j = 2*pi*j/N` of the
/// unit circle. Index 0 is the point `zeta = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction {
    samples: Vec<Complex64>,
}

fn valid_grid(n: usize) -> bool {
    n >= 16 && n.is_power_of_two()
}

impl BoundaryFunction {
    pub fn from_samples(samples: Vec<Complex64>) -> Result<Self, CircleError> {
        if !valid_grid(samples.len()) {
            return Err(CircleError::InvalidGridSize(samples.len()));
        }
        Ok(Self { samples })
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self, CircleError> {
        if !valid_grid(n) {
            return Err(CircleError::InvalidGridSize(n));
        }
        let samples = (0..n).map(|j| f(2.0 * PI * j as f64 / n as f64)).collect();
        Ok(Self { samples })
    }

    pub fn from_real_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self, CircleError> {
        Self::from_fn(n, |t| Complex64::new(f(t), 0.0))
    }

    pub fn from_real_samples(values: Vec<f64>) -> Result<Self, CircleError> {
        Self::from_samples(values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    pub fn constant(n: usize, value: Complex64) -> Result<Self, CircleError> {
        Self::from_fn(n, |_| value)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid angle of sample `j`.
    pub fn theta(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.len() as f64
    }

    /// Grid point `e^{i theta_j}`.
    pub fn zeta(&self, j: usize) -> Complex64 {
        let t = self.theta(j);
        Complex64::new(t.cos(), t.sin())
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Value at the distinguished boundary point `zeta = 1`.
    pub fn value_at_one(&self) -> Complex64 {
        self.samples[0]
    }

    pub fn max_imag(&self) -> f64 {
        self.samples.iter().map(|s| s.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.max_imag() <= REAL_TOL
    }

    fn require_real(&self) -> Result<(), CircleError> {
        if self.is_real() {
            Ok(())
        } else {
            Err(CircleError::NonRealInput(self.max_imag()))
        }
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.re).collect()
    }

    pub fn imag_parts(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.im).collect()
    }

    pub fn mean(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.len() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    pub fn sup_diff(&self, other: &BoundaryFunction) -> f64 {
        assert_eq!(self.len(), other.len());
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> BoundaryFunction {
        BoundaryFunction {
            samples: self.samples.iter().map(|&s| f(s)).collect(),
        }
    }

    pub fn fourier(&self) -> FourierCoefficients {
        let n = self.len();
        let mut buf = self.samples.clone();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        for c in &mut buf {
            *c /= n as f64;
        }
        FourierCoefficients { coeffs: buf }
    }
}

/// Fourier coefficients of a [`BoundaryFunction`], stored in FFT bin order
/// (bin `i` holds frequency `i` for `i < N/2` and `i - N` otherwise).
#[derive(Debug, Clone)]
pub struct FourierCoefficients {
    coeffs: Vec<Complex64>,
}

impl FourierCoefficients {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coefficient for frequency `freq` in `-N/2 ..= N/2-1`.
    pub fn coeff(&self, freq: i64) -> Complex64 {
        let n = self.len() as i64;
        assert!(freq >= -n / 2 && freq < n / 2, "frequency out of range");
        let i = if freq >= 0 { freq } else { freq + n } as usize;
        self.coeffs[i]
    }

    /// Frequency represented by FFT bin `i`.
    pub fn bin_frequency(&self, i: usize) -> i64 {
        let n = self.len();
        if i < n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        }
    }

    pub fn bins(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn bins_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn to_samples(&self) -> BoundaryFunction {
        let n = self.len();
        let mut buf = self.coeffs.clone();
        FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
        BoundaryFunction { samples: buf }
    }

    /// Energy in strictly negative frequencies relative to total energy.
    /// Zero for boundary values of functions analytic in the disc that are
    /// resolved by the grid.
    pub fn negative_energy_relative(&self) -> f64 {
        let n = self.len();
        let neg: f64 = (n / 2 + 1..n).map(|i| self.coeffs[i].norm_sqr()).sum();
        let total: f64 = (0..n).map(|i| self.coeffs[i].norm_sqr()).sum();
        if total == 0.0 {
            0.0
        } else {
            neg / total
        }
    }
}

/// The Hilbert kernel `K_r(t) = 2 r sin t / (1 - 2 r cos t + r^2)`.
pub fn hilbert_kernel(r: f64, t: f64) -> Result<f64, CircleError> {
    if !(0.0..1.0).contains(&r) {
        return Err(CircleError::RadiusOutOfRange(r));
    }
    Ok(2.0 * r * t.sin() / (1.0 - 2.0 * r * t.cos() + r * r))
}

/// Classical Hilbert transform of a real boundary function, acting as the
/// Fourier multiplier `-i sgn(n)` (zero at `n = 0` and at the Nyquist bin).
/// Returns the boundary values of the harmonic conjugate vanishing at 0.
pub fn hilbert_transform(u: &BoundaryFunction) -> Result<BoundaryFunction, CircleError> {
    u.require_real()?;
    let n = u.len();
    let mut c = u.fourier();
    c.bins_mut()[0] = Complex64::ZERO;
    c.bins_mut()[n / 2] = Complex64::ZERO;
    for i in 1..n {
        if i == n / 2 {
            continue;
        }
        let sgn = if i < n / 2 { 1.0 } else { -1.0 };
        let v = c.bins()[i];
        c.bins_mut()[i] = Complex64::new(0.0, -sgn) * v;
    }
    let out = c.to_samples();
    Ok(out.map(|s| Complex64::new(s.re, 0.0)))
}

/// Principal-value quadrature of
/// `(1/2pi) PV int u(e^{i(theta-t)}) / tan(t/2) dt`
/// on the symmetric grid omitting `t = 0`: the composite rule with spacing
/// `2h` over the odd offsets, whose even-error cancellation makes it exact
/// for trigonometric polynomials below the Nyquist frequency. Serves as the
/// independent oracle for [`hilbert_transform`].
pub fn pv_hilbert(u: &BoundaryFunction) -> Result<BoundaryFunction, CircleError> {
    u.require_real()?;
    let n = u.len();
    let vals = u.real_parts();
    // weights 2/(N tan(theta_k/2)) on odd offsets, 0 on even offsets
    let mut w = vec![0.0; n];
    for (k, wk) in w.iter_mut().enumerate().skip(1) {
        if k % 2 == 1 {
            *wk = 2.0 / (n as f64 * (PI * k as f64 / n as f64).tan());
        }
    }
    let mut out = vec![0.0; n];
    for (j, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (k, &wk) in w.iter().enumerate().skip(1).step_by(2) {
            let idx = (j + n - k) % n;
            acc += vals[idx] * wk;
        }
        *o = acc;
    }
    BoundaryFunction::from_real_samples(out)
}

/// Modified Hilbert transform `T1 u = T u - T u(1)`; the output value at
/// `theta = 0` is exactly zero.
pub fn modified_hilbert(u: &BoundaryFunction) -> Result<BoundaryFunction, CircleError> {
    let t = hilbert_transform(u)?;
    let t0 = t.samples()[0];
    let mut out = t.map(|s| s - t0);
    out.samples[0] = Complex64::ZERO;
    Ok(out)
}

/// Poisson (harmonic) extension of a real boundary function evaluated at
/// `r e^{i theta}`, computed spectrally as `sum c_n r^{|n|} e^{i n theta}`.
pub fn poisson_extend(u: &BoundaryFunction, r: f64, theta: f64) -> Result<f64, CircleError> {
    u.require_real()?;
    if !(0.0..1.0).contains(&r) {
        return Err(CircleError::RadiusOutOfRange(r));
    }
    let c = u.fourier();
    let n = c.len();
    let mut acc = Complex64::ZERO;
    for i in 0..n {
        let freq = c.bin_frequency(i);
        let phase = Complex64::new(0.0, freq as f64 * theta).exp();
        acc += c.bins()[i] * r.powi(freq.unsigned_abs() as i32) * phase;
    }
    Ok(acc.re)
}

/// Spectral derivative `du/dtheta` via the multiplier `i n` (Nyquist zeroed).
pub fn spectral_derivative(u: &BoundaryFunction) -> BoundaryFunction {
    let n = u.len();
    let mut c = u.fourier();
    for i in 0..n {
        let freq = if i == n / 2 { 0 } else { c.bin_frequency(i) };
        let v = c.bins()[i];
        c.bins_mut()[i] = Complex64::new(0.0, freq as f64) * v;
    }
    c.to_samples()
}

/// Hölder index `(k, alpha)` for the norm of `C^{k,alpha}(S^1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderIndex {
    k: u32,
    alpha: f64,
}

impl HolderIndex {
    pub fn new(k: u32, alpha: f64) -> Result<Self, CircleError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(CircleError::InvalidHolderExponent(alpha));
        }
        Ok(Self { k, alpha })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Arc distance between two grid angles.
fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % (2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Discrete `C^{k,alpha}` norm: sup norms of the spectral derivatives of
/// order `0..=k`, plus the grid Hölder seminorm of the order-`k` derivative.
/// The grid seminorm is a lower bound of the true seminorm.
pub fn holder_norm(u: &BoundaryFunction, idx: HolderIndex) -> f64 {
    let n = u.len();
    let mut total = 0.0;
    let mut d = u.clone();
    for order in 0..=idx.k {
        total += d.sup_norm();
        if order < idx.k {
            d = spectral_derivative(&d);
        }
    }
    // Hölder seminorm of the top derivative
    let s = d.samples();
    let mut semi = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let dist = circle_dist(d.theta(i), d.theta(j));
            let q = (s[i] - s[j]).norm() / dist.powf(idx.alpha);
            if q > semi {
                semi = q;
            }
        }
    }
    total + semi
}
