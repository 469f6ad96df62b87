//! Two-letter discretizations of the noiseless coherent-state channel.
//!
//! Three quantities are compared against the continuous capacity
//! [`c_be`]: the Holevo capacity [`c2_binary`] of the best binary
//! ensemble, and the one-shot (accessible information) capacity
//! [`c12_binary`] of the best binary ensemble.
//!
//! The overlap of two coherent states is `κ = exp(−|α − β|²/2)` throughout.

use num_complex::Complex64;
use std::f64::consts::LN_2;

use crate::capacity_discrete::{accessible_info_binary, BinaryEnsemble};
use crate::entropy::{binary_entropy_nats, bose_einstein_entropy, nats_to_bits};
use crate::error::{Error, Result};
use crate::optim::{golden_section_max, OptimizerSettings};
use crate::oracle::{gram_mixture_entropy, CoherentEnsemble};

/// Mean photon number allowed per letter.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EnergyBudget {
    m: f64,
}

impl EnergyBudget {
    pub fn new(m: f64) -> Result<Self> {
        if !(m.is_finite() && m >= 0.0) {
            return Err(Error::Domain {
                what: "photon budget",
                value: m,
                bound: "a finite nonnegative number",
            });
        }
        Ok(Self { m })
    }

    #[inline]
    pub fn m(&self) -> f64 {
        self.m
    }
}

/// Two coherent letters with prior `q` on `amp_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinarySolution {
    pub amp_a: Complex64,
    pub amp_b: Complex64,
    pub q: f64,
    pub value_nats: f64,
}

impl BinarySolution {
    pub fn value_bits(&self) -> f64 {
        nats_to_bits(self.value_nats)
    }

    pub fn mean_energy(&self) -> f64 {
        self.q * self.amp_a.norm_sqr() + (1.0 - self.q) * self.amp_b.norm_sqr()
    }

    pub fn kappa(&self) -> f64 {
        (-(self.amp_a - self.amp_b).norm_sqr() / 2.0).exp()
    }
}

/// Capacity of the noiseless channel with unrestricted input alphabet,
/// `(m+1) ln(m+1) − m ln m`.
pub fn c_be(budget: EnergyBudget) -> f64 {
    bose_einstein_entropy(budget.m)
}

/// Holevo capacity over binary ensembles, attained by `±√m` with equal
/// priors: the binary entropy of `(1 − e^{−2m})/2`.
pub fn c2_binary(budget: EnergyBudget) -> BinarySolution {
    let m = budget.m;
    let p = -(-2.0 * m).exp_m1() / 2.0;
    let a = m.sqrt();
    BinarySolution {
        amp_a: Complex64::new(a, 0.0),
        amp_b: Complex64::new(-a, 0.0),
        q: 0.5,
        value_nats: binary_entropy_nats(p),
    }
}

/// Grid search for the best binary Holevo quantity under the budget.
///
/// Scans the prior `q`, the share of the budget spent on `amp_a`, and
/// whether the two amplitudes point the same or opposite ways. With
/// `grid = 1` only the symmetric antipodal pair is evaluated.
pub fn verify_c2_optimality(budget: EnergyBudget, grid: usize) -> Result<BinarySolution> {
    let m = budget.m;
    if m <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m,
            reason: "must be positive",
        });
    }
    let grid = grid.max(1);
    let mut best: Option<BinarySolution> = None;
    for i in 0..grid {
        let q = (i as f64 + 0.5) / grid as f64;
        for j in 0..grid {
            let t = (j as f64 + 0.5) / grid as f64;
            let ra = (t * m / q).sqrt();
            let rb = ((1.0 - t) * m / (1.0 - q)).sqrt();
            for sign in [-1.0, 1.0] {
                let (a, b) = (Complex64::new(ra, 0.0), Complex64::new(sign * rb, 0.0));
                let ens = CoherentEnsemble::new(vec![a, b], vec![q, 1.0 - q])?;
                let chi = gram_mixture_entropy(&ens)?.chi;
                if best.is_none_or(|s| chi > s.value_nats) {
                    best = Some(BinarySolution {
                        amp_a: a,
                        amp_b: b,
                        q,
                        value_nats: chi,
                    });
                }
            }
        }
    }
    Ok(best.expect("grid is nonempty"))
}

/// Starting prior for the one-shot optimizer, `(−m ln m − m)/3`.
pub fn approx_q_opt(m: f64) -> f64 {
    (-m * m.ln() - m) / 3.0
}

/// Collinear opposite-sign pair with prior `q` and budget share `t` on
/// `amp_a`; saturates the budget for every `t`.
fn collinear_pair(m: f64, q: f64, t: f64) -> (f64, f64) {
    ((t * m / q).sqrt(), ((1.0 - t) * m / (1.0 - q)).sqrt())
}

fn one_shot_info_nats(m: f64, q: f64, t: f64) -> f64 {
    let (ra, rb) = collinear_pair(m, q, t);
    let kappa = (-(ra + rb) * (ra + rb) / 2.0).exp();
    BinaryEnsemble::new(kappa, q)
        .map(|e| accessible_info_binary(&e) * LN_2)
        .unwrap_or(f64::NEG_INFINITY)
}

fn best_split(m: f64, q: f64, x_tol: f64, max_iters: usize) -> (f64, f64) {
    golden_section_max(|t| one_shot_info_nats(m, q, t), 0.0, 1.0, x_tol, max_iters)
}

/// Largest accessible information of a binary coherent ensemble under the
/// budget, measured with the optimal binary detector.
///
/// The outer search runs over `ln q` (with `q ≤ ½` by symmetry), seeded at
/// [`approx_q_opt`] and widened whenever the optimum lands on a bracket
/// edge; the inner search runs over the budget split between the two
/// letters of a collinear opposite-sign pair. Returns the value in bits
/// together with the attaining ensemble.
pub fn c12_binary(budget: EnergyBudget, settings: &OptimizerSettings) -> Result<(f64, BinarySolution)> {
    let m = budget.m;
    if m <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m,
            reason: "must be positive",
        });
    }
    let seed = approx_q_opt(m);
    let seed = if seed > 0.0 && seed < 0.5 { seed } else { 0.25 };
    let ln_half = 0.5f64.ln();
    let outer = |lq: f64| best_split(m, lq.exp(), 1e-12, settings.max_iters).1;

    let mut width = 2.0;
    let mut lo = seed.ln() - width;
    let mut hi = (seed.ln() + width).min(ln_half);
    let mut attempts = 0;
    let (lq, _) = loop {
        let (x, v) = golden_section_max(outer, lo, hi, 1e-12, settings.max_iters);
        let at_lo = x - lo < 1e-6;
        let at_hi = hi - x < 1e-6 && hi < ln_half;
        if !(at_lo || at_hi) {
            break (x, v);
        }
        attempts += 1;
        if attempts > 40 || lo < -700.0 {
            return Err(Error::NonConvergence {
                iters: attempts,
                last_change: hi - lo,
            });
        }
        width *= 2.0;
        lo = x - width;
        hi = (x + width).min(ln_half);
    };
    let q = lq.exp();
    let (t, value_nats) = best_split(m, q, 1e-14, settings.max_iters);
    let (ra, rb) = collinear_pair(m, q, t);
    let sol = BinarySolution {
        amp_a: Complex64::new(ra, 0.0),
        amp_b: Complex64::new(-rb, 0.0),
        q,
        value_nats,
    };
    Ok((sol.value_bits(), sol))
}
