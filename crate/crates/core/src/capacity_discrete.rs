//! Finite-alphabet information quantities: Shannon mutual information of a
//! measured channel, the Holevo capacity of a group-covariant pure-state
//! ensemble, and binary pure-state detection.
//!
//! Internal entropies are nats. The binary-detection functions report bits
//! so that two orthogonal letters carry exactly one unit.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::entropy::{binary_entropy_bits, xlnx};
use crate::error::{Error, Result};

/// Value reported in the literature for the trine ensemble with prior
/// `(½, ½, 0)`, in bits.
pub const TRINE_C1_REPORTED_BITS: f64 = 0.6698;

/// Pairwise overlap magnitude of three equal-angle real states in a plane.
pub const TRINE_OVERLAP: f64 = 0.5;

const SUM_TOL: f64 = 1e-12;

fn validate_distribution(name: &'static str, p: &[f64]) -> Result<()> {
    if let Some(&bad) = p.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidParameter {
            name,
            value: bad,
            reason: "entries must be nonnegative",
        });
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidParameter {
            name,
            value: total,
            reason: "must sum to 1",
        });
    }
    Ok(())
}

/// Classical channel induced by measuring letter states: prior `π_i` and
/// conditional `P(j|i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalChannel {
    prior: Vec<f64>,
    conditional: Vec<Vec<f64>>,
}

impl ClassicalChannel {
    pub fn new(prior: Vec<f64>, conditional: Vec<Vec<f64>>) -> Result<Self> {
        validate_distribution("prior", &prior)?;
        if conditional.len() != prior.len() {
            return Err(Error::DimensionMismatch {
                expected: prior.len(),
                got: conditional.len(),
            });
        }
        let outputs = conditional.first().map_or(0, Vec::len);
        for row in &conditional {
            if row.len() != outputs {
                return Err(Error::DimensionMismatch {
                    expected: outputs,
                    got: row.len(),
                });
            }
            validate_distribution("conditional row", row)?;
        }
        Ok(Self { prior, conditional })
    }

    pub fn prior(&self) -> &[f64] {
        &self.prior
    }

    pub fn conditional(&self) -> &[Vec<f64>] {
        &self.conditional
    }

    /// Output distribution `Σ_i π_i P(j|i)`.
    pub fn output(&self) -> Vec<f64> {
        let outputs = self.conditional.first().map_or(0, Vec::len);
        let mut out = vec![0.0; outputs];
        for (p, row) in self.prior.iter().zip(&self.conditional) {
            for (o, t) in out.iter_mut().zip(row) {
                *o += p * t;
            }
        }
        out
    }
}

/// Shannon mutual information `Σ π_i P(j|i) ln[P(j|i) / P(j)]` in nats.
pub fn mutual_information(ch: &ClassicalChannel) -> f64 {
    let out = ch.output();
    let mut info = 0.0;
    for (p, row) in ch.prior.iter().zip(&ch.conditional) {
        for (&t, &o) in row.iter().zip(&out) {
            if *p > 0.0 && t > 0.0 {
                info += p * t * (t / o).ln();
            }
        }
    }
    info.max(0.0)
}

/// Orbit `ρ_i = V^{i−1} ρ_1 V^{†(i−1)}` of a pure state under a unitary
/// with `V^M = I`, described by the overlaps `c_k = ⟨ψ|V^{k−1}|ψ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariantEnsemble {
    overlaps: Vec<Complex64>,
}

impl CovariantEnsemble {
    pub fn new(overlaps: Vec<Complex64>) -> Result<Self> {
        let m = overlaps.len();
        if m == 0 {
            return Err(Error::InvalidParameter {
                name: "overlaps",
                value: 0.0,
                reason: "need at least one letter",
            });
        }
        if (overlaps[0] - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "overlaps[0]",
                value: overlaps[0].re,
                reason: "must equal 1 (normalized state)",
            });
        }
        // V^{-(k-1)} = V^{M-(k-1)} forces c_{M-k+2} = conj(c_k).
        for k in 1..m {
            if (overlaps[m - k] - overlaps[k].conj()).norm() > 1e-10 {
                return Err(Error::InvalidParameter {
                    name: "overlaps",
                    value: (overlaps[m - k] - overlaps[k].conj()).norm(),
                    reason: "circulant Gram matrix must be Hermitian",
                });
            }
        }
        Ok(Self { overlaps })
    }

    /// Ensemble of two pure states with real overlap `kappa`.
    pub fn pair(kappa: f64) -> Result<Self> {
        Self::new(vec![Complex64::new(1.0, 0.0), Complex64::new(kappa, 0.0)])
    }

    pub fn size(&self) -> usize {
        self.overlaps.len()
    }

    /// Eigenvalues `λ_j = (1/M) Σ_k c_k e^{−2πi j(k−1)/M}` of the uniformly
    /// weighted Gram matrix, clamped and renormalized.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let m = self.overlaps.len();
        let mut lambdas = Vec::with_capacity(m);
        for j in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, c) in self.overlaps.iter().enumerate() {
                let phase = -2.0 * PI * ((j * k) % m) as f64 / m as f64;
                acc += c * Complex64::from_polar(1.0, phase);
            }
            let lambda = acc.re / m as f64;
            if lambda < -1e-8 {
                return Err(Error::Spectrum(lambda));
            }
            lambdas.push(lambda.max(0.0));
        }
        let total: f64 = lambdas.iter().sum();
        lambdas.iter_mut().for_each(|l| *l /= total);
        Ok(lambdas)
    }
}

/// Holevo capacity `−Σ λ_j ln λ_j` of a covariant pure-state ensemble,
/// attained by the uniform prior.
pub fn covariant_pure_capacity(ens: &CovariantEnsemble) -> Result<f64> {
    Ok(-ens.spectrum()?.into_iter().map(xlnx).sum::<f64>())
}

fn check_unit_interval(name: &'static str, v: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must lie in [0, 1]",
        })
    }
}

/// Minimum error probability for discriminating two equiprobable pure
/// states with overlap `kappa`: `[1 − √(1 − κ²)]/2`.
pub fn binary_error_probability(kappa: f64) -> Result<f64> {
    let kappa = check_unit_interval("kappa", kappa)?;
    let k2 = kappa * kappa;
    // cancellation-free form of (1 - sqrt(1 - k2)) / 2
    Ok(k2 / (2.0 * (1.0 + (1.0 - k2).sqrt())))
}

/// `C₁ = 1 − H₂(P_e)` for a binary pure-state alphabet, in bits.
pub fn binary_c1(kappa: f64) -> Result<f64> {
    Ok(1.0 - binary_entropy_bits(binary_error_probability(kappa)?))
}

/// Two pure letters with overlap magnitude `kappa` and prior `q` on the
/// first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryEnsemble {
    kappa: f64,
    q: f64,
}

impl BinaryEnsemble {
    pub fn new(kappa: f64, q: f64) -> Result<Self> {
        Ok(Self {
            kappa: check_unit_interval("kappa", kappa)?,
            q: check_unit_interval("q", q)?,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Accessible information `H(Q) − H(f)` of a binary pure-state ensemble in
/// bits, with `f = ½(1 − √(1 − 4κ²Q(1−Q)))`.
pub fn accessible_info_binary(ens: &BinaryEnsemble) -> f64 {
    let q = ens.q;
    let x = 4.0 * ens.kappa * ens.kappa * q * (1.0 - q);
    let f = x / (2.0 * (1.0 + (1.0 - x).max(0.0).sqrt()));
    (binary_entropy_bits(q) - binary_entropy_bits(f)).max(0.0)
}
