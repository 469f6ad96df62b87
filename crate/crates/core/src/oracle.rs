//! Brute-force checks for the closed forms.
//!
//! Nothing in here calls the closed-form capacity routines. Each oracle
//! computes the same quantity along an independent route:
//!
//! * [`fock_thermal_entropy`] sums the photon-number spectrum of a thermal
//!   state directly;
//! * [`gram_mixture_entropy`] diagonalizes the weighted Gram matrix of a
//!   finite coherent-state ensemble;
//! * [`brute_force_constellation_capacity`] maximizes the Holevo quantity of
//!   a fixed ring constellation over its prior;
//! * [`beta_maximization`] searches the prior covariance numerically.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::capacity_gaussian::{InputConstraint, TransmitterConstraint};
use crate::channels::{apply_attenuation, AttenuationChannel};
use crate::discretization::EnergyBudget;
use crate::entropy::xlnx;
use crate::error::{Error, Result};
use crate::gaussian::{entropy_one_mode, OneModeGaussianState};
use crate::optim::{cost_constrained_ascent, golden_section_max, scan_then_golden_max, Divergences, OptimizerSettings};

/// Smallest eigenvalue of an average state trusted when taking logarithms.
const EIGEN_FLOOR: f64 = 1e-14;

/// Escaped mass above which Fock-space results are flagged.
pub const FOCK_ESCAPE_WARN: f64 = 1e-10;

/// Finite-support prior over coherent states `|α_i⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentEnsemble {
    amplitudes: Vec<Complex64>,
    priors: Vec<f64>,
}

impl CoherentEnsemble {
    pub fn new(amplitudes: Vec<Complex64>, priors: Vec<f64>) -> Result<Self> {
        if amplitudes.len() != priors.len() || amplitudes.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: amplitudes.len(),
                got: priors.len(),
            });
        }
        if priors.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::InvalidParameter {
                name: "priors",
                value: priors.iter().copied().fold(f64::NAN, f64::min),
                reason: "entries must be nonnegative",
            });
        }
        let total: f64 = priors.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "priors",
                value: total,
                reason: "must sum to 1",
            });
        }
        Ok(Self { amplitudes, priors })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    /// Mean photon number `Σ π_i |α_i|²`.
    pub fn mean_energy(&self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&self.priors)
            .map(|(a, p)| p * a.norm_sqr())
            .sum()
    }
}

/// `⟨α|β⟩ = exp[−(|α|² + |β|²)/2 + ᾱβ]`.
pub fn coherent_overlap(a: Complex64, b: Complex64) -> Complex64 {
    (-(a.norm_sqr() + b.norm_sqr()) / 2.0 + a.conj() * b).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockTruncation {
    pub n_max: usize,
    /// Probability mass above `n_max` before renormalization.
    pub escaped_mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockEntropy {
    pub entropy: f64,
    pub truncation: FockTruncation,
}

/// Entropy of a thermal state summed over its Fock-basis eigenvalues
/// `(1−r) rⁿ`, `r = n̄/(1+n̄)`, truncated at `n_max` and renormalized.
pub fn fock_thermal_entropy(n_bar: f64, n_max: usize) -> Result<FockEntropy> {
    if !(n_bar.is_finite() && n_bar >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "n_bar",
            value: n_bar,
            reason: "must be nonnegative",
        });
    }
    let r = n_bar / (1.0 + n_bar);
    let mut probs = Vec::with_capacity(n_max + 1);
    let mut p = 1.0 / (1.0 + n_bar);
    for _ in 0..=n_max {
        probs.push(p);
        p *= r;
    }
    let captured: f64 = probs.iter().sum();
    let escaped_mass = (1.0 - captured).max(0.0).max(r.powi(n_max as i32 + 1));
    if escaped_mass > FOCK_ESCAPE_WARN {
        log::warn!("thermal state n̄={n_bar} truncated at {n_max}: escaped mass {escaped_mass:e}");
    }
    let entropy = -probs.iter().map(|&q| xlnx(q / captured)).sum::<f64>();
    Ok(FockEntropy {
        entropy,
        truncation: FockTruncation {
            n_max,
            escaped_mass,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramEntropy {
    /// Holevo quantity of the ensemble.
    pub chi: f64,
    /// Entropy of the average state; equal to `chi` for pure letters.
    pub mixture_entropy: f64,
}

fn hermitian_eigen(m: DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = SymmetricEigen::new(m);
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

fn clamped_entropy(eigenvalues: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &l in eigenvalues {
        if l < -1e-8 {
            return Err(Error::Spectrum(l));
        }
        total -= xlnx(l.max(0.0));
    }
    Ok(total)
}

/// Entropy of `Σ π_i |α_i⟩⟨α_i|` from the spectrum of the weighted Gram
/// matrix `√(π_i π_j)⟨α_i|α_j⟩`.
pub fn gram_mixture_entropy(ens: &CoherentEnsemble) -> Result<GramEntropy> {
    let n = ens.amplitudes.len();
    let w: Vec<f64> = ens.priors.iter().map(|p| p.sqrt()).collect();
    let gram = DMatrix::from_fn(n, n, |i, j| {
        coherent_overlap(ens.amplitudes[i], ens.amplitudes[j]) * (w[i] * w[j])
    });
    let (vals, _) = hermitian_eigen(gram);
    let s = clamped_entropy(&vals)?;
    Ok(GramEntropy {
        chi: s,
        mixture_entropy: s,
    })
}

/// Rings of coherent amplitudes: `radii` rings at radii
/// `max_radius·i/radii`, each carrying `phases` equally spaced points
/// starting at phase 0, plus optionally the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingGrid {
    pub radii: usize,
    pub phases: usize,
    pub max_radius: f64,
    pub include_origin: bool,
}

impl RingGrid {
    pub fn points(&self) -> Vec<Complex64> {
        let mut pts = Vec::new();
        if self.include_origin {
            pts.push(Complex64::new(0.0, 0.0));
        }
        if self.phases > 0 {
            for i in 1..=self.radii {
                let r = self.max_radius * i as f64 / self.radii as f64;
                for j in 0..self.phases {
                    let phi = 2.0 * PI * j as f64 / self.phases as f64;
                    pts.push(Complex64::from_polar(r, phi));
                }
            }
        }
        pts
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstellationResult {
    /// Holevo quantity at the returned prior (nats).
    pub capacity: f64,
    pub amplitudes: Vec<Complex64>,
    pub priors: Vec<f64>,
    pub mean_energy: f64,
    /// Lagrange multiplier on the energy constraint (0 if slack).
    pub multiplier: f64,
}

/// Pure-letter classical-quantum channel represented in the span of its
/// letters: column `i` of `K^{1/2}` is `|α_i⟩` in an orthonormal basis.
struct PureLetterChannel {
    vectors: DMatrix<Complex64>,
    energies: Vec<f64>,
}

impl PureLetterChannel {
    fn new(points: &[Complex64]) -> Self {
        let n = points.len();
        let gram = DMatrix::from_fn(n, n, |i, j| coherent_overlap(points[i], points[j]));
        let (vals, vecs) = hermitian_eigen(gram);
        let roots: Vec<Complex64> = vals.iter().map(|v| Complex64::new(v.max(0.0).sqrt(), 0.0)).collect();
        let scaled = DMatrix::from_fn(n, n, |i, j| vecs[(i, j)] * roots[j]);
        let vectors = &scaled * vecs.adjoint();
        Self {
            vectors,
            energies: points.iter().map(|a| a.norm_sqr()).collect(),
        }
    }

    /// Returns `(χ, D_i)` where `D_i = −⟨α_i| ln ρ̄ |α_i⟩`.
    fn divergences(&self, priors: &[f64]) -> (f64, Vec<f64>) {
        let n = priors.len();
        let weighted = DMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * priors[j]);
        let rho = &weighted * self.vectors.adjoint();
        let rho = (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
        let (vals, vecs) = hermitian_eigen(rho);
        let chi = -vals.iter().map(|&l| xlnx(l.max(0.0))).sum::<f64>();
        // eigenvalues below the floor are roundoff of a trace-one matrix
        let logs: Vec<f64> = vals.iter().map(|&l| l.max(EIGEN_FLOOR).ln()).collect();
        // projections |w_l† c_i|²
        let proj = vecs.adjoint() * &self.vectors;
        let d = (0..n)
            .map(|i| {
                -(0..n)
                    .map(|l| proj[(l, i)].norm_sqr() * logs[l])
                    .sum::<f64>()
            })
            .collect();
        (chi, d)
    }

    fn mean_energy(&self, priors: &[f64]) -> f64 {
        priors.iter().zip(&self.energies).map(|(p, e)| p * e).sum()
    }
}

/// Largest Holevo quantity of a fixed coherent constellation over priors
/// with mean photon number at most `budget`.
///
/// The Holevo quantity is concave in the prior, so the multiplicative
/// ascent converges to the global optimum for the given constellation.
pub fn brute_force_constellation_capacity(
    grid: &RingGrid,
    budget: EnergyBudget,
    settings: &OptimizerSettings,
) -> Result<ConstellationResult> {
    let points = grid.points();
    if points.is_empty() {
        return Err(Error::InvalidParameter {
            name: "grid",
            value: 0.0,
            reason: "constellation is empty",
        });
    }
    let channel = PureLetterChannel::new(&points);
    let eval = |p: &[f64]| {
        let (value, scores) = channel.divergences(p);
        Divergences { value, scores }
    };
    let r = cost_constrained_ascent(eval, &channel.energies, budget.m(), settings)?;
    let mean_energy = channel.mean_energy(&r.prior);
    Ok(ConstellationResult {
        capacity: r.value,
        amplitudes: points,
        priors: r.prior,
        mean_energy,
        multiplier: r.multiplier,
    })
}

/// Budget used by [`beta_maximization`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaConstraint {
    /// `Sp εβ ≤ E` on the prior after the channel.
    Input(InputConstraint),
    /// `Sp ε(α̃ + β) ≤ ħω(N_tr + ½)` at the transmitter.
    Transmitter(TransmitterConstraint),
}

/// Numerically maximizes `H(α+β) − H(α)` over diagonal prior covariances
/// `β ≥ 0` saturating the energy budget.
///
/// With [`BetaConstraint::Transmitter`], `state0` is the carrier before the
/// channel and the budget on `β` becomes `k²[ħω(N_tr+½) − Sp εα̃]`. With
/// [`BetaConstraint::Input`] the budget applies directly to the prior of the
/// channel output. `grid` is the number of scan points along the budget
/// split before golden-section refinement.
pub fn beta_maximization(
    state0: &OneModeGaussianState,
    channel: Option<&AttenuationChannel>,
    constraint: BetaConstraint,
    grid: usize,
) -> Result<f64> {
    let identity = AttenuationChannel::identity();
    let ch = channel.unwrap_or(&identity);
    let output = apply_attenuation(state0, ch)?;
    let consts = state0.consts();
    let (h, w) = (consts.hbar(), consts.omega());
    let energy = match constraint {
        BetaConstraint::Input(c) => c.energy(),
        BetaConstraint::Transmitter(c) => {
            let e = ch.k() * ch.k() * (h * w * (c.n_tr() + 0.5) - state0.energy_trace());
            if e < -1e-12 * h * w {
                return Err(Error::Infeasible(format!(
                    "transmitter budget {} below carrier energy",
                    c.n_tr()
                )));
            }
            e.max(0.0)
        }
    };
    let base = entropy_one_mode(&output)?;
    if energy == 0.0 {
        return Ok(0.0);
    }
    // β_qq = 2E t/ω², β_pp = 2E(1−t) so that Sp εβ = E.
    let objective = |t: f64| -> f64 {
        let t = t.clamp(0.0, 1.0);
        output
            .with_added_covariance(2.0 * energy * t / (w * w), 2.0 * energy * (1.0 - t), 0.0)
            .and_then(|mixed| entropy_one_mode(&mixed))
            .map(|s| s - base)
            .unwrap_or(f64::NEG_INFINITY)
    };
    let (t, _) = scan_then_golden_max(objective, 0.0, 1.0, grid.max(2), 1e-13);
    // polish on the full interval in case the scan cell was too coarse
    let (t2, v2) = golden_section_max(objective, (t - 0.1).max(0.0), (t + 0.1).min(1.0), 1e-14, 500);
    Ok(v2.max(objective(t)).max(objective(t2)))
}
