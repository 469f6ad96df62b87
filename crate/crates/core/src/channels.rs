//! Attenuation with additive classical Gaussian noise, acting on Gaussian
//! states, and the binomial photon-loss (thinning) channel acting on
//! photon-number distributions.
//!
//! The two channels carry different loss parameters. [`AttenuationChannel`]
//! uses the amplitude transmission `k`; [`PhotonChannel`] uses the
//! per-photon survival probability `eta`. Physically `eta = k²`, but
//! nothing here converts between them implicitly.

use crate::error::{Error, Result};
use crate::gaussian::OneModeGaussianState;

/// Linear attenuator with amplitude coefficient `k` and classical noise
/// variance `n_c` (in photons).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttenuationChannel {
    k: f64,
    n_c: f64,
}

impl AttenuationChannel {
    pub fn new(k: f64, n_c: f64) -> Result<Self> {
        if !(k > 0.0 && k <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "k",
                value: k,
                reason: "must lie in (0, 1]",
            });
        }
        if !(n_c.is_finite() && n_c >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "n_c",
                value: n_c,
                reason: "must be nonnegative",
            });
        }
        Ok(Self { k, n_c })
    }

    pub fn identity() -> Self {
        Self { k: 1.0, n_c: 0.0 }
    }

    #[inline]
    pub fn k(&self) -> f64 {
        self.k
    }

    #[inline]
    pub fn n_c(&self) -> f64 {
        self.n_c
    }
}

/// Added noise `λ(k, N_c) = (1 − k²)/2 + N_c`.
pub fn lambda_noise(channel: &AttenuationChannel) -> f64 {
    (1.0 - channel.k * channel.k) / 2.0 + channel.n_c
}

/// Pushes a one-mode state through the channel: the mean scales by `k`
/// and `α ↦ k²α + ħλ(k, N_c)·I`.
pub fn apply_attenuation(
    state: &OneModeGaussianState,
    channel: &AttenuationChannel,
) -> Result<OneModeGaussianState> {
    let k2 = channel.k * channel.k;
    let noise = state.consts().hbar() * lambda_noise(channel);
    let m = state.mean();
    OneModeGaussianState::new(
        [channel.k * m[0], channel.k * m[1]],
        k2 * state.alpha_qq() + noise,
        k2 * state.alpha_pp() + noise,
        k2 * state.alpha_qp(),
        state.consts(),
    )
}

/// Binomial thinning of photon numbers `0..=n_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonChannel {
    eta: f64,
    n_max: usize,
}

impl PhotonChannel {
    pub fn new(eta: f64, n_max: usize) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "eta",
                value: eta,
                reason: "must lie in (0, 1]",
            });
        }
        if n_max == 0 {
            return Err(Error::InvalidParameter {
                name: "n_max",
                value: 0.0,
                reason: "must be positive",
            });
        }
        Ok(Self { eta, n_max })
    }

    #[inline]
    pub fn eta(&self) -> f64 {
        self.eta
    }

    #[inline]
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Output distribution `P(n_y | n_x)` for `n_y = 0..=n_x`.
    ///
    /// Evaluated by the ratio recurrence outward from the mode and then
    /// normalized, so large `n_x` neither overflows nor loses the row sum.
    pub fn row(&self, n_x: usize) -> Vec<f64> {
        binomial_row(n_x, self.eta)
    }
}

pub(crate) fn binomial_row(n: usize, eta: f64) -> Vec<f64> {
    let mut row = vec![0.0; n + 1];
    if eta >= 1.0 {
        row[n] = 1.0;
        return row;
    }
    if eta <= 0.0 {
        row[0] = 1.0;
        return row;
    }
    let odds = eta / (1.0 - eta);
    let mode = (((n + 1) as f64) * eta).floor().min(n as f64) as usize;
    row[mode] = 1.0;
    for y in mode..n {
        // P(y+1)/P(y) = (n-y)/(y+1) · η/(1-η)
        row[y + 1] = row[y] * ((n - y) as f64) / ((y + 1) as f64) * odds;
    }
    for y in (0..mode).rev() {
        row[y] = row[y + 1] * ((y + 1) as f64) / ((n - y) as f64) / odds;
    }
    let total: f64 = row.iter().sum();
    row.iter_mut().for_each(|p| *p /= total);
    row
}

/// Dense lower-triangular stochastic matrix indexed `(n_x, n_y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n_max: usize,
    entries: Vec<f64>,
}

impl TransitionMatrix {
    #[inline]
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    #[inline]
    pub fn get(&self, n_x: usize, n_y: usize) -> f64 {
        self.entries[n_x * (self.n_max + 1) + n_y]
    }

    pub fn row(&self, n_x: usize) -> &[f64] {
        let w = self.n_max + 1;
        &self.entries[n_x * w..(n_x + 1) * w]
    }

    /// Matrix product `self · other` (apply `self`, then `other`).
    pub fn then(&self, other: &TransitionMatrix) -> Result<TransitionMatrix> {
        if self.n_max != other.n_max {
            return Err(Error::DimensionMismatch {
                expected: self.n_max,
                got: other.n_max,
            });
        }
        let w = self.n_max + 1;
        let mut entries = vec![0.0; w * w];
        for x in 0..w {
            for m in 0..=x {
                let a = self.get(x, m);
                if a == 0.0 {
                    continue;
                }
                for y in 0..=m {
                    entries[x * w + y] += a * other.get(m, y);
                }
            }
        }
        Ok(TransitionMatrix {
            n_max: self.n_max,
            entries,
        })
    }

    /// Pushes a distribution over inputs `0..=n_max` through the channel.
    pub fn apply(&self, input: &[f64]) -> Result<Vec<f64>> {
        let w = self.n_max + 1;
        if input.len() != w {
            return Err(Error::DimensionMismatch {
                expected: w,
                got: input.len(),
            });
        }
        let mut out = vec![0.0; w];
        for (x, &p) in input.iter().enumerate() {
            for (y, &t) in self.row(x)[..=x].iter().enumerate() {
                out[y] += p * t;
            }
        }
        Ok(out)
    }
}

/// Materializes the thinning channel as a matrix. Memory is
/// `(n_max + 1)²` doubles; use [`PhotonChannel::row`] to stream rows for
/// very large truncations.
pub fn binomial_transition(channel: &PhotonChannel) -> TransitionMatrix {
    let w = channel.n_max + 1;
    let mut entries = vec![0.0; w * w];
    for x in 0..w {
        let row = channel.row(x);
        entries[x * w..x * w + x + 1].copy_from_slice(&row);
    }
    TransitionMatrix {
        n_max: channel.n_max,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{PhysicalConstants, squeezed_state};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn lambda_noise_examples() {
        assert_eq!(lambda_noise(&AttenuationChannel::identity()), 0.0);
        let tiny = AttenuationChannel::new(1e-12, 0.3).unwrap();
        assert_relative_eq!(lambda_noise(&tiny), 0.8, epsilon = 1e-12);
        let ch = AttenuationChannel::new(0.9, 0.1).unwrap();
        assert_relative_eq!(lambda_noise(&ch), 0.195, epsilon = 1e-15);
    }

    #[test]
    fn channel_parameter_validation() {
        assert!(AttenuationChannel::new(0.0, 0.0).is_err());
        assert!(AttenuationChannel::new(1.1, 0.0).is_err());
        assert!(AttenuationChannel::new(0.5, -0.1).is_err());
        assert!(PhotonChannel::new(0.0, 10).is_err());
        assert!(PhotonChannel::new(0.5, 0).is_err());
    }

    #[test]
    fn attenuation_examples() {
        let c = PhysicalConstants::default();
        let st = squeezed_state(0.7, 0.4, c).unwrap().with_mean([0.3, -2.0]).unwrap();
        assert_eq!(apply_attenuation(&st, &AttenuationChannel::identity()).unwrap(), st);

        let vac = OneModeGaussianState::vacuum(c);
        for k in [0.1, 0.5, 0.93] {
            let out = apply_attenuation(&vac, &AttenuationChannel::new(k, 0.0).unwrap()).unwrap();
            assert_relative_eq!(out.alpha_qq(), 0.5, epsilon = 1e-15);
            assert_relative_eq!(out.alpha_pp(), 0.5, epsilon = 1e-15);
        }

        let coh = OneModeGaussianState::coherent([2.0, 0.0], c).unwrap();
        let out = apply_attenuation(&coh, &AttenuationChannel::new(0.5, 0.0).unwrap()).unwrap();
        assert_eq!(out.mean(), [1.0, 0.0]);
        assert_relative_eq!(out.alpha_qq(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(out.alpha_pp(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn binomial_examples() {
        let id = binomial_transition(&PhotonChannel::new(1.0, 6).unwrap());
        for x in 0..=6 {
            for y in 0..=6 {
                assert_eq!(id.get(x, y), if x == y { 1.0 } else { 0.0 });
            }
        }
        let half = binomial_transition(&PhotonChannel::new(0.5, 4).unwrap());
        assert_relative_eq!(half.get(2, 0), 0.25, epsilon = 1e-15);
        assert_relative_eq!(half.get(2, 1), 0.5, epsilon = 1e-15);
        assert_relative_eq!(half.get(2, 2), 0.25, epsilon = 1e-15);
        assert_eq!(half.get(2, 3), 0.0);
        for eta in [0.01, 0.3, 0.99] {
            let t = binomial_transition(&PhotonChannel::new(eta, 5).unwrap());
            assert_eq!(t.get(0, 0), 1.0);
        }
    }

    #[test]
    fn binomial_rows_stay_normalized_for_large_n() {
        for eta in [1e-4, 0.2, 0.5, 0.97] {
            let ch = PhotonChannel::new(eta, 2000).unwrap();
            for x in [0, 1, 17, 500, 1999, 2000] {
                let row = ch.row(x);
                assert!(row.iter().all(|p| p.is_finite() && *p >= 0.0));
                assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
            // mean of Bin(n, η)
            let row = ch.row(2000);
            let mean: f64 = row.iter().enumerate().map(|(y, p)| y as f64 * p).sum();
            assert_relative_eq!(mean, 2000.0 * eta, max_relative = 1e-10);
        }
    }

    #[test]
    fn thinning_is_a_semigroup() {
        let n = 100;
        let (e1, e2) = (0.7, 0.45);
        let a = binomial_transition(&PhotonChannel::new(e1, n).unwrap());
        let b = binomial_transition(&PhotonChannel::new(e2, n).unwrap());
        let ab = binomial_transition(&PhotonChannel::new(e1 * e2, n).unwrap());
        let prod = a.then(&b).unwrap();
        for x in 0..=n {
            for y in 0..=n {
                assert!((prod.get(x, y) - ab.get(x, y)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn bose_einstein_is_stable_under_thinning() {
        let n = 400;
        let (nbar, eta) = (3.0, 0.35);
        let geo = |m: f64| -> Vec<f64> {
            let r = m / (1.0 + m);
            (0..=n).map(|k| r.powi(k as i32) / (1.0 + m)).collect()
        };
        let t = binomial_transition(&PhotonChannel::new(eta, n).unwrap());
        let out = t.apply(&geo(nbar)).unwrap();
        let expected = geo(eta * nbar);
        for (a, b) in out.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn attenuation_composes(k1 in 0.01..1.0f64, k2 in 0.01..1.0f64,
                                gamma in 0.0..2.0f64, theta in 0.0..6.3f64, n in 0.0..3.0f64) {
            let c = PhysicalConstants::default();
            let st = squeezed_state(gamma, theta, c).unwrap().with_added_covariance(n, n, 0.0).unwrap();
            let a = AttenuationChannel::new(k1, 0.0).unwrap();
            let b = AttenuationChannel::new(k2, 0.0).unwrap();
            let ab = AttenuationChannel::new(k1 * k2, 0.0).unwrap();
            let two = apply_attenuation(&apply_attenuation(&st, &a).unwrap(), &b).unwrap();
            let one = apply_attenuation(&st, &ab).unwrap();
            let scale = st.alpha_qq().max(st.alpha_pp());
            prop_assert!((two.alpha_qq() - one.alpha_qq()).abs() < 1e-12 * scale);
            prop_assert!((two.alpha_pp() - one.alpha_pp()).abs() < 1e-12 * scale);
            prop_assert!((two.alpha_qp() - one.alpha_qp()).abs() < 1e-12 * scale);
        }

        #[test]
        fn attenuation_preserves_uncertainty(k in 0.001..1.0f64, n_c in 0.0..5.0f64,
                                             gamma in -3.0..3.0f64, theta in 0.0..6.3f64,
                                             hbar in 0.1..3.0f64) {
            let c = PhysicalConstants::new(hbar, 1.0).unwrap();
            let st = squeezed_state(gamma, theta, c).unwrap();
            let ch = AttenuationChannel::new(k, n_c).unwrap();
            let out = apply_attenuation(&st, &ch);
            prop_assert!(out.is_ok());
            prop_assert!(out.unwrap().det_alpha() >= hbar * hbar / 4.0 * (1.0 - 1e-9));
        }

        #[test]
        fn binomial_rows_sum_to_one(eta in 0.0001..1.0f64, x in 0usize..3000) {
            let row = binomial_row(x, eta);
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
