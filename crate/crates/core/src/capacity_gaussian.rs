//! Closed-form classical capacity of the one-mode Gaussian channel.
//!
//! Two constraints are covered:
//!
//! * an *input* constraint `Sp εβ ≤ E` on the prior covariance `β` of the
//!   displacement, for an arbitrary zero-mean carrier `ρ(0)`;
//! * a *transmitter* constraint `Sp ε(α̃ + β) ≤ ħω(N_tr + ½)` on the state
//!   leaving the transmitter, followed by an [`AttenuationChannel`]. The
//!   carrier is a pure squeezed state with `α̃_qp = 0` and `ω = 1`.
//!
//! Both capacities split into a thermal-output regime ([`Regime::A`]) and a
//! single-quadrature regime ([`Regime::B`]). Values are in nats.

use crate::channels::{apply_attenuation, lambda_noise, AttenuationChannel};
use crate::entropy::bose_einstein_entropy;
use crate::error::{Error, Result};
use crate::gaussian::{
    g_function, mean_photon_number, squeezed_state, OneModeGaussianState, PhysicalConstants,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputConstraint {
    energy_e: f64,
}

impl InputConstraint {
    pub fn new(energy_e: f64) -> Result<Self> {
        if !(energy_e.is_finite() && energy_e >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "energy_e",
                value: energy_e,
                reason: "must be nonnegative",
            });
        }
        Ok(Self { energy_e })
    }

    /// Budget of `n_s` signal photons, `E = ħω·n_s`.
    pub fn from_photons(n_s: f64, consts: PhysicalConstants) -> Result<Self> {
        Self::new(consts.hbar() * consts.omega() * n_s)
    }

    #[inline]
    pub fn energy(&self) -> f64 {
        self.energy_e
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmitterConstraint {
    n_tr: f64,
}

impl TransmitterConstraint {
    pub fn new(n_tr: f64) -> Result<Self> {
        if !(n_tr.is_finite() && n_tr >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "n_tr",
                value: n_tr,
                reason: "must be nonnegative",
            });
        }
        Ok(Self { n_tr })
    }

    #[inline]
    pub fn n_tr(&self) -> f64 {
        self.n_tr
    }
}

/// Which branch of the closed form applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// The optimal output mixture is thermal.
    A,
    /// The budget is too small to equalize the quadratures; all signal
    /// power goes into the quieter one.
    B,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::A => f.write_str("A"),
            Regime::B => f.write_str("B"),
        }
    }
}

/// 2×2 real symmetric matrix `[[qq, qp], [qp, pp]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Covariance2 {
    pub qq: f64,
    pub pp: f64,
    pub qp: f64,
}

impl Covariance2 {
    pub fn is_psd(&self, tol: f64) -> bool {
        let scale = self.qq.abs().max(self.pp.abs()).max(1.0);
        self.qq >= -tol * scale
            && self.pp >= -tol * scale
            && self.qq * self.pp - self.qp * self.qp >= -tol * scale * scale
    }

    /// `Sp εβ = (ω²β_qq + β_pp)/2`.
    pub fn energy_trace(&self, omega: f64) -> f64 {
        (omega * omega * self.qq + self.pp) / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult {
    /// Capacity in nats.
    pub value: f64,
    pub regime: Regime,
    /// RHS − LHS of the regime inequality; nonnegative iff regime A.
    pub condition_margin: f64,
    /// Covariance of the optimal Gaussian prior over displacements.
    pub optimal_beta: Covariance2,
}

/// Regime test for the input-constrained channel:
/// `[½(ωα_qq − α_pp/ω)]² + α_qp² ≤ (E/ω)²`.
///
/// Only the correlations of `state0` are used.
pub fn regime_condition_input(state0: &OneModeGaussianState, c: &InputConstraint) -> (bool, f64) {
    let w = state0.consts().omega();
    let half_diff = 0.5 * (w * state0.alpha_qq() - state0.alpha_pp() / w);
    let lhs = half_diff * half_diff + state0.alpha_qp() * state0.alpha_qp();
    let rhs = (c.energy_e / w).powi(2);
    let margin = rhs - lhs;
    (margin >= 0.0, margin)
}

/// Capacity of the quantum Gaussian channel `μ ↦ D(μ)ρ(0)` under the input
/// constraint.
pub fn capacity_input_constrained(
    state0: &OneModeGaussianState,
    c: &InputConstraint,
) -> Result<CapacityResult> {
    let (in_a, margin) = regime_condition_input(state0, c);
    let regime = if in_a { Regime::A } else { Regime::B };
    let consts = state0.consts();
    let (h, w) = (consts.hbar(), consts.omega());
    let e = c.energy_e;
    let total = e + state0.energy_trace();
    let noise_entropy = g_function(state0.det_alpha() / (h * h))?;
    let signal_arg = match regime {
        Regime::A => total * total / (h * h * w * w),
        Regime::B => {
            let spread = ((w * w * state0.alpha_qq() - state0.alpha_pp()).powi(2) / 4.0
                + w * w * state0.alpha_qp().powi(2))
            .sqrt();
            (total * total - (spread - e).powi(2)) / (h * h * w * w)
        }
    };
    let value = (g_function(signal_arg)? - noise_entropy).max(0.0);
    Ok(CapacityResult {
        value,
        regime,
        condition_margin: margin,
        optimal_beta: optimal_prior(state0, e, regime),
    })
}

/// Optimal prior covariance, obtained by water-filling in ω-scaled
/// quadratures (`q' = √ω q`, `p' = p/√ω`), where the constraint becomes
/// `tr β' ≤ 2E/ω`.
fn optimal_prior(state0: &OneModeGaussianState, e: f64, regime: Regime) -> Covariance2 {
    let w = state0.consts().omega();
    let (aq, ap, ax) = (w * state0.alpha_qq(), state0.alpha_pp() / w, state0.alpha_qp());
    let budget = e / w;
    let scaled = match regime {
        Regime::A => {
            let level = 0.5 * (aq + ap) + budget;
            Covariance2 {
                qq: level - aq,
                pp: level - ap,
                qp: -ax,
            }
        }
        Regime::B => {
            // Unit eigenvector of α' for its smaller eigenvalue.
            let theta = 0.5 * (2.0 * ax).atan2(aq - ap);
            let (s, c) = theta.sin_cos();
            // (c, s) spans the larger eigenvalue; (-s, c) the smaller.
            let v = [-s, c];
            Covariance2 {
                qq: 2.0 * budget * v[0] * v[0],
                pp: 2.0 * budget * v[1] * v[1],
                qp: 2.0 * budget * v[0] * v[1],
            }
        }
    };
    Covariance2 {
        qq: scaled.qq / w,
        pp: scaled.pp * w,
        qp: scaled.qp,
    }
}

/// Regime test for the transmitter-constrained channel with a squeezed
/// carrier: `max{α̃_qq, α̃_pp} ≤ ħ(N_tr + ½)`.
pub fn regime_condition_transmitter(
    carrier: &OneModeGaussianState,
    c: &TransmitterConstraint,
) -> (bool, f64) {
    let h = carrier.consts().hbar();
    let widest = carrier.alpha_qq().max(carrier.alpha_pp());
    let margin = h * (c.n_tr + 0.5) - widest;
    (margin >= 0.0, margin)
}

/// Energy bound on the prior after the channel,
/// `k²[ħω(N_tr + ½) − Sp εα̃]`. Negative when the budget cannot even pay
/// for the carrier.
pub fn effective_energy(
    carrier: &OneModeGaussianState,
    channel: &AttenuationChannel,
    c: &TransmitterConstraint,
) -> f64 {
    let consts = carrier.consts();
    let k2 = channel.k() * channel.k();
    k2 * (consts.hbar() * consts.omega() * (c.n_tr + 0.5) - carrier.energy_trace())
}

/// Capacity of the attenuated noisy channel under the transmitter
/// constraint, for a squeezed carrier `S(γ)|0⟩` with angle `theta`.
///
/// Requires `ω = 1` and `θ ∈ {0, π}` (so that `α̃_qp = 0`); other carriers
/// are rejected with [`Error::Unsupported`]. A budget below the carrier's
/// own photon number is [`Error::Infeasible`].
pub fn capacity_transmitter_constrained(
    gamma: f64,
    theta: f64,
    channel: &AttenuationChannel,
    c: &TransmitterConstraint,
    consts: PhysicalConstants,
) -> Result<CapacityResult> {
    if (consts.omega() - 1.0).abs() > 1e-12 {
        return Err(Error::Unsupported(format!(
            "closed form needs omega = 1 (got {})",
            consts.omega()
        )));
    }
    let carrier = squeezed_state(gamma, theta, consts)?;
    let h = consts.hbar();
    let widest = carrier.alpha_qq().max(carrier.alpha_pp());
    if carrier.alpha_qp().abs() > 1e-12 * widest {
        return Err(Error::Unsupported(format!(
            "closed form needs alpha_qp = 0 (theta in {{0, pi}}); got alpha_qp = {:e}",
            carrier.alpha_qp()
        )));
    }
    let n_sq = mean_photon_number(&carrier);
    let n_tr = c.n_tr;
    if n_tr + 1e-12 * (1.0 + n_sq) < n_sq {
        return Err(Error::Infeasible(format!(
            "transmitter budget N_tr = {n_tr} is below the squeezed carrier's photon number {n_sq}"
        )));
    }
    let (in_a, margin) = regime_condition_transmitter(&carrier, c);
    let regime = if in_a { Regime::A } else { Regime::B };

    let k = channel.k();
    let k2 = k * k;
    let n_c = channel.n_c();
    let lambda = lambda_noise(channel);
    let noise_entropy =
        g_function((n_c + 0.5).powi(2) + k2 * n_sq * ((1.0 - k2) + 2.0 * n_c))?;
    let signal_entropy = match regime {
        Regime::A => bose_einstein_entropy(k2 * n_tr + n_c),
        Regime::B => {
            let m = widest / h;
            g_function(
                k2 * (2.0 * n_tr + 1.0) * (lambda + k2 * m) + lambda * lambda - k2 * k2 * m * m,
            )?
        }
    };
    let value = (signal_entropy - noise_entropy).max(0.0);

    let output = apply_attenuation(&carrier, channel)?;
    let e = effective_energy(&carrier, channel, c).max(0.0);
    Ok(CapacityResult {
        value,
        regime,
        condition_margin: margin,
        optimal_beta: optimal_prior(&output, e, regime),
    })
}
