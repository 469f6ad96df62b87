//! Gaussian states of bosonic modes and their von Neumann entropies.
//!
//! A Gaussian state is fixed by its mean quadrature vector and its real
//! symmetric correlation matrix `α`. Quadratures are ordered
//! `(q_1..q_s, p_1..p_s)` and the commutation form is
//!
//! ```text
//! Δ = [  0   ħI ]
//!     [ -ħI   0 ]
//! ```
//!
//! Entropies are returned in nats.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::entropy::xlnx;
use crate::error::{check_finite, Error, Result};

/// Relative slack on the uncertainty bound. Squeezed-state purity only
/// holds to rounding.
pub const UNCERTAINTY_REL_TOL: f64 = 1e-9;

/// Reduced Planck constant and mode frequency. Defaults to `ħ = ω = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
    omega: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, omega: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("omega", omega)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "must be positive and finite",
                });
            }
        }
        Ok(Self { hbar, omega })
    }

    #[inline]
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    #[inline]
    pub fn omega(&self) -> f64 {
        self.omega
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            omega: 1.0,
        }
    }
}

/// One-mode Gaussian state: mean `(q, p)` and correlation matrix entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneModeGaussianState {
    mean: [f64; 2],
    alpha_qq: f64,
    alpha_pp: f64,
    alpha_qp: f64,
    consts: PhysicalConstants,
}

impl OneModeGaussianState {
    /// Builds a state, rejecting correlation matrices that violate the
    /// uncertainty bound `det α ≥ ħ²/4`.
    pub fn new(
        mean: [f64; 2],
        alpha_qq: f64,
        alpha_pp: f64,
        alpha_qp: f64,
        consts: PhysicalConstants,
    ) -> Result<Self> {
        check_finite("mean.q", mean[0])?;
        check_finite("mean.p", mean[1])?;
        check_finite("alpha_qp", alpha_qp)?;
        if !(alpha_qq.is_finite() && alpha_qq > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha_qq",
                value: alpha_qq,
                reason: "must be positive",
            });
        }
        if !(alpha_pp.is_finite() && alpha_pp > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha_pp",
                value: alpha_pp,
                reason: "must be positive",
            });
        }
        let det = alpha_qq * alpha_pp - alpha_qp * alpha_qp;
        let bound = consts.hbar * consts.hbar / 4.0;
        if det < bound * (1.0 - UNCERTAINTY_REL_TOL) {
            return Err(Error::Domain {
                what: "det α (uncertainty bound)",
                value: det,
                bound: ">= ħ²/4",
            });
        }
        Ok(Self {
            mean,
            alpha_qq,
            alpha_pp,
            alpha_qp,
            consts,
        })
    }

    pub fn vacuum(consts: PhysicalConstants) -> Self {
        Self::thermal(0.0, consts).expect("vacuum is valid")
    }

    /// Coherent state: vacuum correlations around the given mean.
    pub fn coherent(mean: [f64; 2], consts: PhysicalConstants) -> Result<Self> {
        let v = Self::vacuum(consts);
        Self::new(mean, v.alpha_qq, v.alpha_pp, 0.0, consts)
    }

    /// Thermal state with `n_bar` mean quanta: `α = ħ(n̄+1/2)·diag(1/ω, ω)`.
    pub fn thermal(n_bar: f64, consts: PhysicalConstants) -> Result<Self> {
        if !(n_bar.is_finite() && n_bar >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "n_bar",
                value: n_bar,
                reason: "must be nonnegative",
            });
        }
        let scale = consts.hbar * (n_bar + 0.5);
        Self::new(
            [0.0, 0.0],
            scale / consts.omega,
            scale * consts.omega,
            0.0,
            consts,
        )
    }

    #[inline]
    pub fn mean(&self) -> [f64; 2] {
        self.mean
    }
    #[inline]
    pub fn alpha_qq(&self) -> f64 {
        self.alpha_qq
    }
    #[inline]
    pub fn alpha_pp(&self) -> f64 {
        self.alpha_pp
    }
    #[inline]
    pub fn alpha_qp(&self) -> f64 {
        self.alpha_qp
    }
    #[inline]
    pub fn consts(&self) -> PhysicalConstants {
        self.consts
    }

    #[inline]
    pub fn det_alpha(&self) -> f64 {
        self.alpha_qq * self.alpha_pp - self.alpha_qp * self.alpha_qp
    }

    /// `Sp εα = (ω²α_qq + α_pp)/2`, the mean energy carried by the
    /// fluctuations.
    #[inline]
    pub fn energy_trace(&self) -> f64 {
        let w = self.consts.omega;
        (w * w * self.alpha_qq + self.alpha_pp) / 2.0
    }

    /// Same correlations, new mean.
    pub fn with_mean(&self, mean: [f64; 2]) -> Result<Self> {
        Self::new(mean, self.alpha_qq, self.alpha_pp, self.alpha_qp, self.consts)
    }

    /// Adds a positive semidefinite prior covariance `β` to `α`.
    pub fn with_added_covariance(&self, beta_qq: f64, beta_pp: f64, beta_qp: f64) -> Result<Self> {
        Self::new(
            self.mean,
            self.alpha_qq + beta_qq,
            self.alpha_pp + beta_pp,
            self.alpha_qp + beta_qp,
            self.consts,
        )
    }

    /// Phase-space rotation by `phi` (a passive, energy-preserving
    /// symplectic map in ω-scaled quadratures).
    pub fn rotated(&self, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        let rw = self.consts.omega.sqrt();
        // S = diag(1/√ω, √ω) · R(φ) · diag(√ω, 1/√ω)
        let m = [[c, -s / (rw * rw)], [s * rw * rw, c]];
        let a = [[self.alpha_qq, self.alpha_qp], [self.alpha_qp, self.alpha_pp]];
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = 0.0;
                for k in 0..2 {
                    for l in 0..2 {
                        acc += m[i][k] * a[k][l] * m[j][l];
                    }
                }
                out[i][j] = acc;
            }
        }
        let mean = [
            m[0][0] * self.mean[0] + m[0][1] * self.mean[1],
            m[1][0] * self.mean[0] + m[1][1] * self.mean[1],
        ];
        Self {
            mean,
            alpha_qq: out[0][0],
            alpha_pp: out[1][1],
            alpha_qp: 0.5 * (out[0][1] + out[1][0]),
            consts: self.consts,
        }
    }
}

/// Correlation matrix of an `s`-mode Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct MultimodeCorrelation {
    alpha: DMatrix<f64>,
    modes: usize,
    consts: PhysicalConstants,
}

impl MultimodeCorrelation {
    pub fn new(alpha: DMatrix<f64>, consts: PhysicalConstants) -> Result<Self> {
        let n = alpha.nrows();
        if n == 0 || !n.is_multiple_of(2) || alpha.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: 2 * (n / 2).max(1),
                got: alpha.ncols(),
            });
        }
        let scale = alpha.amax().max(f64::MIN_POSITIVE);
        for i in 0..n {
            for j in 0..i {
                if (alpha[(i, j)] - alpha[(j, i)]).abs() > 1e-12 * scale {
                    return Err(Error::InvalidParameter {
                        name: "alpha",
                        value: alpha[(i, j)] - alpha[(j, i)],
                        reason: "must be symmetric",
                    });
                }
            }
        }
        let corr = Self {
            alpha,
            modes: n / 2,
            consts,
        };
        // Validates positivity and the uncertainty bound.
        corr.symplectic_spectrum()?;
        Ok(corr)
    }

    /// Block-diagonal correlation of independent one-mode states.
    pub fn from_modes(states: &[OneModeGaussianState]) -> Result<Self> {
        let s = states.len();
        let consts = states.first().map(|st| st.consts).unwrap_or_default();
        let mut a = DMatrix::zeros(2 * s, 2 * s);
        for (j, st) in states.iter().enumerate() {
            a[(j, j)] = st.alpha_qq;
            a[(s + j, s + j)] = st.alpha_pp;
            a[(j, s + j)] = st.alpha_qp;
            a[(s + j, j)] = st.alpha_qp;
        }
        Self::new(a, consts)
    }

    #[inline]
    pub fn modes(&self) -> usize {
        self.modes
    }

    #[inline]
    pub fn alpha(&self) -> &DMatrix<f64> {
        &self.alpha
    }

    /// Eigenvalues of `-(Δ⁻¹α)²` (dimensionless; each symplectic
    /// eigenvalue appears twice), ascending.
    ///
    /// Computed as the spectrum of `MᵀM` with `M = α^{1/2} Δ⁻¹ α^{1/2}`,
    /// which is similar to `-(Δ⁻¹α)²` and symmetric.
    pub fn symplectic_spectrum(&self) -> Result<Vec<f64>> {
        let n = 2 * self.modes;
        let s = self.modes;
        let eig = SymmetricEigen::new(self.alpha.clone());
        let min_eig = eig.eigenvalues.min();
        if min_eig <= 0.0 {
            return Err(Error::Domain {
                what: "eigenvalue of α",
                value: min_eig,
                bound: "> 0",
            });
        }
        let sqrt_vals = eig.eigenvalues.map(f64::sqrt);
        let root =
            &eig.eigenvectors * DMatrix::from_diagonal(&sqrt_vals) * eig.eigenvectors.transpose();
        let hbar = self.consts.hbar;
        let mut delta_inv = DMatrix::zeros(n, n);
        for j in 0..s {
            delta_inv[(j, s + j)] = -1.0 / hbar;
            delta_inv[(s + j, j)] = 1.0 / hbar;
        }
        let m = &root * delta_inv * &root;
        let mtm = m.transpose() * &m;
        let mtm = (&mtm + mtm.transpose()) * 0.5;
        let mut vals: Vec<f64> = SymmetricEigen::new(mtm).eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.total_cmp(b));
        if let Some(&lowest) = vals.first() {
            if lowest < 0.25 * (1.0 - UNCERTAINTY_REL_TOL) {
                return Err(Error::Domain {
                    what: "eigenvalue of -(Δ⁻¹α)²",
                    value: lowest,
                    bound: ">= 1/4",
                });
            }
        }
        Ok(vals)
    }
}

/// `G(d²) = (d+½)ln(d+½) − (d−½)ln(d−½)` in nats, `d = √d²`.
///
/// Inputs within the relative tolerance below `1/4` are treated as `1/4`
/// and give 0.
pub fn g_function(d_squared: f64) -> Result<f64> {
    if d_squared.is_nan() || d_squared < 0.25 * (1.0 - UNCERTAINTY_REL_TOL) {
        return Err(Error::Domain {
            what: "G-function argument",
            value: d_squared,
            bound: ">= 1/4",
        });
    }
    if d_squared.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let d = d_squared.sqrt().max(0.5);
    let upper = d + 0.5;
    Ok(upper * upper.ln() - xlnx(d - 0.5))
}

/// Von Neumann entropy of a one-mode Gaussian state, `G(det α / ħ²)`.
pub fn entropy_one_mode(state: &OneModeGaussianState) -> Result<f64> {
    let h = state.consts.hbar;
    g_function(state.det_alpha() / (h * h))
}

/// Von Neumann entropy `½ Sp G(−(Δ⁻¹α)²)` of a multimode Gaussian state.
pub fn entropy_multimode(corr: &MultimodeCorrelation) -> Result<f64> {
    let spectrum = corr.symplectic_spectrum()?;
    let mut total = 0.0;
    for x in spectrum {
        total += g_function(x)?;
    }
    Ok(0.5 * total)
}

/// Mean photon number of the zero-mean state with the same correlations,
/// `(ω²α_qq + α_pp)/(2ħω) − ½`.
pub fn mean_photon_number(state: &OneModeGaussianState) -> f64 {
    let c = state.consts;
    state.energy_trace() / (c.hbar * c.omega) - 0.5
}

/// Pure squeezed vacuum with squeezing amplitude `gamma` and angle `theta`.
pub fn squeezed_state(gamma: f64, theta: f64, consts: PhysicalConstants) -> Result<OneModeGaussianState> {
    check_finite("gamma", gamma)?;
    check_finite("theta", theta)?;
    let (h, w) = (consts.hbar, consts.omega);
    let ch = (2.0 * gamma).cosh();
    let sh = (2.0 * gamma).sinh();
    let (sin_t, cos_t) = theta.sin_cos();
    OneModeGaussianState::new(
        [0.0, 0.0],
        h / (2.0 * w) * (ch - sh * cos_t),
        h * w / 2.0 * (ch + sh * cos_t),
        h / 2.0 * sh * sin_t,
        consts,
    )
}
