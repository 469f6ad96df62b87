//! Scalar entropy helpers shared across modules. Everything here is in nats;
//! [`nats_to_bits`] is the single conversion point.

use std::f64::consts::LN_2;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `x ln x` with the continuous extension `0 ln 0 = 0`.
#[inline]
pub fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

#[inline]
pub fn nats_to_bits(nats: f64) -> f64 {
    nats / LN_2
}

#[inline]
pub fn bits_to_nats(bits: f64) -> f64 {
    bits * LN_2
}

/// Shannon entropy of a (not necessarily normalized) nonnegative vector,
/// taken as-is.
pub fn shannon_nats(probs: &[f64]) -> f64 {
    -probs.iter().map(|&p| xlnx(p)).sum::<f64>()
}

/// Binary entropy `-p ln p - (1-p) ln(1-p)`, accurate for tiny `p`.
pub fn binary_entropy_nats(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.ln() - (1.0 - p) * (-p).ln_1p()
}

pub fn binary_entropy_bits(p: f64) -> f64 {
    nats_to_bits(binary_entropy_nats(p))
}

/// Entropy of a Bose–Einstein distribution with mean `n`:
/// `(n+1) ln(n+1) - n ln n`, with value 0 at `n = 0`.
pub fn bose_einstein_entropy(n: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    (n + 1.0) * n.ln_1p() - n * n.ln()
}
