//! Photon-number-state channels.
//!
//! Number states pass through binomial thinning as number-diagonal states,
//! so every von Neumann entropy here reduces to a Shannon entropy and the
//! Holevo quantity of an input distribution is the classical mutual
//! information of the binomial channel.

use crate::channels::{binomial_row, PhotonChannel};
use crate::entropy::{bose_einstein_entropy, shannon_nats, xlnx, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::optim::{cost_constrained_ascent, Divergences, OptimizerSettings};

/// Escaped mass above which a truncated distribution is flagged.
pub const ESCAPE_WARN: f64 = 1e-6;

/// Probabilities over Fock numbers `0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    probs: Vec<f64>,
    escaped_mass: f64,
}

impl PhotonDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidParameter {
                name: "probs",
                value: probs.len() as f64,
                reason: "need n_max >= 1",
            });
        }
        if let Some(&p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::InvalidParameter {
                name: "probs",
                value: p,
                reason: "entries must be nonnegative",
            });
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter {
                name: "probs",
                value: total,
                reason: "must sum to 1",
            });
        }
        Ok(Self {
            probs,
            escaped_mass: 0.0,
        })
    }

    /// Point mass on the vacuum.
    pub fn vacuum(n_max: usize) -> Self {
        let mut probs = vec![0.0; n_max.max(1) + 1];
        probs[0] = 1.0;
        Self {
            probs,
            escaped_mass: 0.0,
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn n_max(&self) -> usize {
        self.probs.len() - 1
    }

    /// Mass that fell above `n_max` before renormalization.
    pub fn escaped_mass(&self) -> f64 {
        self.escaped_mass
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }

    pub fn entropy(&self) -> f64 {
        shannon_nats(&self.probs)
    }
}

/// Geometric (thermal) distribution with mean `n_bar`, truncated at
/// `n_max` and renormalized.
pub fn bose_einstein(n_bar: f64, n_max: usize) -> Result<PhotonDistribution> {
    if !(n_bar.is_finite() && n_bar >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "n_bar",
            value: n_bar,
            reason: "must be nonnegative",
        });
    }
    if n_max == 0 {
        return Err(Error::InvalidParameter {
            name: "n_max",
            value: 0.0,
            reason: "must be positive",
        });
    }
    let r = n_bar / (1.0 + n_bar);
    let mut probs = Vec::with_capacity(n_max + 1);
    let mut p = 1.0 / (1.0 + n_bar);
    for _ in 0..=n_max {
        probs.push(p);
        p *= r;
    }
    // the tail above n_max is exactly r^(n_max+1)
    let escaped_mass = r.powf((n_max + 1) as f64);
    if escaped_mass > ESCAPE_WARN {
        log::warn!("Bose-Einstein n̄={n_bar} truncated at {n_max}: escaped mass {escaped_mass:e}");
    }
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    Ok(PhotonDistribution {
        probs,
        escaped_mass,
    })
}

/// `ln(1+n̄) + n̄ ln(1 + 1/n̄)`, the entropy of the Bose–Einstein
/// distribution; 0 at `n̄ = 0`.
pub fn noiseless_number_capacity(n_bar: f64) -> f64 {
    bose_einstein_entropy(n_bar)
}

/// Holevo quantity `H(output) − Σ_x P(x) H(row_x)` of a fixed input
/// through binomial thinning.
///
/// Rows are generated one at a time, so memory stays linear in `n_max`.
pub fn attenuated_number_holevo(input: &PhotonDistribution, ch: &PhotonChannel) -> Result<f64> {
    if input.n_max() != ch.n_max() {
        return Err(Error::DimensionMismatch {
            expected: ch.n_max(),
            got: input.n_max(),
        });
    }
    if input.escaped_mass > ESCAPE_WARN {
        log::warn!("input distribution escaped mass {:e}", input.escaped_mass);
    }
    let mut output = vec![0.0; input.n_max() + 1];
    let mut conditional = 0.0;
    for (n_x, &p) in input.probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let row = binomial_row(n_x, ch.eta());
        conditional += p * shannon_nats(&row);
        for (o, w) in output.iter_mut().zip(&row) {
            *o += p * w;
        }
    }
    Ok((shannon_nats(&output) - conditional).max(0.0))
}

/// Result of [`optimize_number_capacity`].
#[derive(Debug, Clone, PartialEq)]
pub struct NumberCapacity {
    /// Mutual information at the returned distribution (nats).
    pub capacity: f64,
    pub optimum: PhotonDistribution,
    /// Lagrange multiplier on the mean photon number (0 if slack).
    pub multiplier: f64,
    /// Capacity after each accepted update; non-decreasing.
    pub trace: Vec<f64>,
}

/// `n_max` used when the caller does not choose one.
pub fn default_n_max(budget: f64) -> usize {
    (budget * 20.0 + 50.0).ceil() as usize
}

/// Dense binomial channel, rows `n_x`, columns `n_y`, with precomputed
/// row entropies.
struct DenseBinomial {
    rows: Vec<Vec<f64>>,
    row_entropy: Vec<f64>,
    n: usize,
}

impl DenseBinomial {
    fn new(eta: f64, n_max: usize) -> Self {
        let rows: Vec<Vec<f64>> = (0..=n_max).map(|x| binomial_row(x, eta)).collect();
        let row_entropy = rows.iter().map(|r| shannon_nats(r)).collect();
        Self {
            rows,
            row_entropy,
            n: n_max + 1,
        }
    }

    fn output(&self, p: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (row, &px) in self.rows.iter().zip(p) {
            if px > 0.0 {
                for (o, w) in out.iter_mut().zip(row) {
                    *o += px * w;
                }
            }
        }
        out
    }

    /// Returns `(I, D_x)` with `D_x = Σ_y W(y|x) ln[W(y|x)/q(y)]`.
    fn divergences(&self, p: &[f64]) -> (f64, Vec<f64>) {
        let q = self.output(p);
        let ln_q: Vec<f64> = q.iter().map(|&v| if v > 0.0 { v.ln() } else { 0.0 }).collect();
        let d: Vec<f64> = self
            .rows
            .iter()
            .zip(&self.row_entropy)
            .map(|(row, h)| {
                let cross: f64 = row.iter().zip(&ln_q).map(|(w, l)| w * l).sum();
                -h - cross
            })
            .collect();
        let info = -q.iter().map(|&v| xlnx(v)).sum::<f64>()
            - p.iter().zip(&self.row_entropy).map(|(a, h)| a * h).sum::<f64>();
        (info.max(0.0), d)
    }
}

/// Maximizes the Holevo quantity of the binomial channel over input
/// distributions on `0..=n_max` with mean photon number at most
/// `n_bar_budget`.
///
/// Every iterate meets the budget, and the capacity recorded in `trace`
/// never decreases. The multiplier is capped by
/// `settings.multiplier_bracket.1`.
pub fn optimize_number_capacity(
    eta: f64,
    n_bar_budget: f64,
    n_max: usize,
    settings: &OptimizerSettings,
) -> Result<NumberCapacity> {
    let probe = PhotonChannel::new(eta, n_max)?;
    if !(n_bar_budget.is_finite() && n_bar_budget >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "n_bar_budget",
            value: n_bar_budget,
            reason: "must be nonnegative",
        });
    }
    if n_bar_budget == 0.0 {
        return Ok(NumberCapacity {
            capacity: 0.0,
            optimum: PhotonDistribution::vacuum(n_max),
            multiplier: 0.0,
            trace: vec![0.0],
        });
    }
    let ch = DenseBinomial::new(probe.eta(), n_max);
    let costs: Vec<f64> = (0..=n_max).map(|n| n as f64).collect();
    let eval = |p: &[f64]| {
        let (value, scores) = ch.divergences(p);
        Divergences { value, scores }
    };
    let r = cost_constrained_ascent(eval, &costs, n_bar_budget, settings)?;
    let escaped_mass = *r.prior.last().unwrap_or(&0.0);
    if escaped_mass > 1e-8 {
        log::warn!("optimum puts mass {escaped_mass:e} on the truncation edge; raise n_max");
    }
    Ok(NumberCapacity {
        capacity: r.value,
        optimum: PhotonDistribution {
            probs: r.prior,
            escaped_mass,
        },
        multiplier: r.multiplier,
        trace: r.trace,
    })
}

/// Which limit of the number-state capacity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyoRegime {
    /// `⟨n_y⟩ ≫ 1`.
    Large,
    /// `⟨n_y⟩ ≪ 1`.
    Small,
}

/// Asymptotic Holevo quantity of a thinned Bose–Einstein input as a
/// function of the output mean `n_y_bar`:
/// `½(ln n̄_y − ln 2π + 1 + γ)` for large means and `(1 − γ) n̄_y` for small
/// ones, with `γ` the Euler–Mascheroni constant. Both are limits of weak
/// transmission (`η → 0` at fixed output mean).
pub fn hyo_asymptote(n_y_bar: f64, regime: HyoRegime) -> f64 {
    match regime {
        HyoRegime::Large => 0.5 * (n_y_bar.ln() - (2.0 * std::f64::consts::PI).ln() + 1.0 + EULER_GAMMA),
        HyoRegime::Small => (1.0 - EULER_GAMMA) * n_y_bar,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::LN_2;

    #[test]
    fn bose_einstein_examples() {
        let vac = bose_einstein(0.0, 10).unwrap();
        assert_eq!(vac.probs()[0], 1.0);
        assert_eq!(vac.mean(), 0.0);

        let one = bose_einstein(1.0, 200).unwrap();
        for (n, expected) in [(0, 0.5), (1, 0.25), (2, 0.125)] {
            assert_relative_eq!(one.probs()[n], expected, max_relative = 1e-14);
        }
        assert_relative_eq!(one.entropy(), noiseless_number_capacity(1.0), max_relative = 1e-12);
        assert!(one.escaped_mass() < 1e-60);
    }

    #[test]
    fn bose_einstein_flags_truncation() {
        let short = bose_einstein(10.0, 20).unwrap();
        assert!(short.escaped_mass() > ESCAPE_WARN);
        assert_relative_eq!(short.probs().iter().sum::<f64>(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn noiseless_capacity_examples() {
        assert_eq!(noiseless_number_capacity(0.0), 0.0);
        assert!(noiseless_number_capacity(1e-300) < 1e-290);
        assert_relative_eq!(noiseless_number_capacity(1.0), 2.0 * LN_2, max_relative = 1e-15);
    }

    #[test]
    fn holevo_at_unit_transmission_is_input_entropy() {
        let be = bose_einstein(2.0, 120).unwrap();
        let ch = PhotonChannel::new(1.0, 120).unwrap();
        assert_relative_eq!(attenuated_number_holevo(&be, &ch).unwrap(), be.entropy(), max_relative = 1e-12);
    }

    #[test]
    fn holevo_rejects_mismatched_truncation() {
        let be = bose_einstein(1.0, 50).unwrap();
        let ch = PhotonChannel::new(0.5, 60).unwrap();
        assert!(matches!(attenuated_number_holevo(&be, &ch), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn holevo_monotone_in_eta() {
        let be = bose_einstein(3.0, 150).unwrap();
        let mut prev = 0.0;
        for i in 1..=20 {
            let ch = PhotonChannel::new(i as f64 / 20.0, 150).unwrap();
            let v = attenuated_number_holevo(&be, &ch).unwrap();
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn holevo_small_output_mean_approaches_asymptote() {
        // η = 1e-4, ⟨n_x⟩ = 100 → ⟨n_y⟩ = 0.01
        let n_max = 3000;
        let be = bose_einstein(100.0, n_max).unwrap();
        let ch = PhotonChannel::new(1e-4, n_max).unwrap();
        let v = attenuated_number_holevo(&be, &ch).unwrap();
        let a = hyo_asymptote(0.01, HyoRegime::Small);
        assert!((v - a).abs() / a < 0.01, "{v} vs {a}");
    }

    #[test]
    fn hyo_examples() {
        assert_relative_eq!(hyo_asymptote(0.01, HyoRegime::Small), 0.004_228, epsilon = 1e-6);
        assert!((hyo_asymptote(100.0, HyoRegime::Large) - 2.1719).abs() < 5e-3);
        assert_eq!(hyo_asymptote(0.0, HyoRegime::Small), 0.0);
    }

    #[test]
    fn optimizer_recovers_bose_einstein_at_unit_transmission() {
        let s = OptimizerSettings::default();
        let r = optimize_number_capacity(1.0, 1.0, default_n_max(1.0), &s).unwrap();
        assert!((r.capacity - 2.0 * LN_2).abs() < 1e-5);
        let be = bose_einstein(1.0, default_n_max(1.0)).unwrap();
        for (a, b) in r.optimum.probs().iter().zip(be.probs()) {
            assert!((a - b).abs() < 1e-5);
        }
        assert!((r.optimum.mean() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn optimizer_beats_bose_einstein_when_attenuated() {
        let s = OptimizerSettings::default();
        let n_max = default_n_max(1.0);
        let r = optimize_number_capacity(0.5, 1.0, n_max, &s).unwrap();
        let be = bose_einstein(1.0, n_max).unwrap();
        let ch = PhotonChannel::new(0.5, n_max).unwrap();
        let be_value = attenuated_number_holevo(&be, &ch).unwrap();
        assert!(r.capacity >= be_value - 1e-6);
        // independent long-run Blahut-Arimoto in double precision
        assert!((r.capacity - 0.537_955).abs() < 2e-5, "{}", r.capacity);
        assert!((r.optimum.mean() - 1.0).abs() < 1e-6);
        assert!(r.trace.windows(2).all(|w| w[1] >= w[0] - 1e-12));
    }

    #[test]
    fn optimizer_zero_budget_is_vacuum() {
        let r = optimize_number_capacity(0.7, 0.0, 10, &OptimizerSettings::default()).unwrap();
        assert_eq!(r.capacity, 0.0);
        assert_eq!(r.optimum.probs()[0], 1.0);
    }

    #[test]
    fn optimizer_validates_inputs() {
        let s = OptimizerSettings::default();
        assert!(optimize_number_capacity(0.0, 1.0, 10, &s).is_err());
        assert!(optimize_number_capacity(1.5, 1.0, 10, &s).is_err());
        assert!(optimize_number_capacity(0.5, -1.0, 10, &s).is_err());
    }

    #[test]
    fn distribution_validation() {
        assert!(PhotonDistribution::new(vec![1.0]).is_err());
        assert!(PhotonDistribution::new(vec![0.5, 0.4]).is_err());
        assert!(PhotonDistribution::new(vec![1.5, -0.5]).is_err());
        assert_eq!(PhotonDistribution::new(vec![0.25, 0.75]).unwrap().mean(), 0.75);
    }
}
