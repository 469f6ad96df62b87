//! Small derivative-free search helpers and shared optimizer settings.

use crate::error::{Error, Result};

/// Settings for the iterative optimizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    /// Convergence threshold on capacity increments (nats).
    pub tol: f64,
    pub max_iters: usize,
    /// Search interval for the energy Lagrange multiplier.
    pub multiplier_bracket: (f64, f64),
}

impl OptimizerSettings {
    pub fn new(tol: f64, max_iters: usize, multiplier_bracket: (f64, f64)) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "tol",
                value: tol,
                reason: "must be positive",
            });
        }
        if max_iters == 0 {
            return Err(Error::InvalidParameter {
                name: "max_iters",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        let (lo, hi) = multiplier_bracket;
        if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo < hi) {
            return Err(Error::InvalidParameter {
                name: "multiplier_bracket",
                value: hi - lo,
                reason: "need 0 <= lo < hi",
            });
        }
        Ok(Self {
            tol,
            max_iters,
            multiplier_bracket,
        })
    }
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iters: 100_000,
            multiplier_bracket: (0.0, 60.0),
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal `f` on `[a, b]` by golden-section search. Returns
/// `(argmax, max)`; the best endpoint wins if it beats the interior.
pub fn golden_section_max<F>(mut f: F, a: f64, b: f64, x_tol: f64, max_iters: usize) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iters = 0;
    while hi - lo > x_tol && iters < max_iters {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        iters += 1;
    }
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for x in [a, b] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Grid scan followed by golden-section refinement around the best cell.
pub fn scan_then_golden_max<F>(mut f: F, a: f64, b: f64, points: usize, x_tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let points = points.max(2);
    let step = (b - a) / (points - 1) as f64;
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..points {
        let v = f(a + step * i as f64);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = a + step * best_i.saturating_sub(1) as f64;
    let hi = (a + step * (best_i + 1) as f64).min(b);
    let (x, v) = golden_section_max(&mut f, lo, hi, x_tol, 500);
    if v >= best_v {
        (x, v)
    } else {
        (a + step * best_i as f64, best_v)
    }
}

/// Information carried by each input letter at a given prior.
pub(crate) struct Divergences {
    /// Mutual information (or Holevo quantity) of the prior.
    pub value: f64,
    /// Divergence of each letter's output from the average output.
    pub scores: Vec<f64>,
}

/// Result of [`cost_constrained_ascent`].
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct CostConstrainedOptimum {
    pub value: f64,
    pub prior: Vec<f64>,
    /// Lagrange multiplier on the cost (0 if the budget is slack).
    pub multiplier: f64,
    /// Value after every accepted step; non-decreasing.
    pub trace: Vec<f64>,
    /// Weak-duality upper bound on the optimum at the final iterate.
    pub upper_bound: f64,
}

const MAX_STEP: f64 = 1e4;

fn mean_cost(p: &[f64], costs: &[f64]) -> f64 {
    p.iter().zip(costs).map(|(a, c)| a * c).sum()
}

/// Normalized `exp(log_w − t·cost)`, floored so no letter is lost for good.
fn tilt(log_w: &[f64], costs: &[f64], t: f64) -> Vec<f64> {
    let shifted: Vec<f64> = log_w.iter().zip(costs).map(|(a, c)| a - t * c).collect();
    let top = shifted.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut p: Vec<f64> = shifted.iter().map(|v| (v - top).exp()).collect();
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v = (*v / total).max(f64::MIN_POSITIVE));
    p
}

/// Smallest `t ≥ 0` (up to bisection accuracy, on the feasible side) such
/// that the tilted prior meets the budget.
fn tilt_to_budget(log_w: &[f64], costs: &[f64], budget: f64, t_max: f64) -> Result<(Vec<f64>, f64)> {
    let p = tilt(log_w, costs, 0.0);
    if mean_cost(&p, costs) <= budget {
        return Ok((p, 0.0));
    }
    let mut hi = 1.0f64.min(t_max);
    let mut p_hi = tilt(log_w, costs, hi);
    while mean_cost(&p_hi, costs) > budget {
        if hi >= t_max {
            return Err(Error::InfeasibleBracket {
                lo: 0.0,
                hi: t_max,
                budget,
                mean_at_hi: mean_cost(&p_hi, costs),
            });
        }
        hi = (hi * 2.0).min(t_max);
        p_hi = tilt(log_w, costs, hi);
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let p_mid = tilt(log_w, costs, mid);
        if mean_cost(&p_mid, costs) > budget {
            lo = mid;
        } else {
            hi = mid;
            p_hi = p_mid;
        }
    }
    Ok((p_hi, hi))
}

/// Maximizes a channel's information over priors on its input letters
/// subject to `Σ p_i cost_i ≤ budget`.
///
/// Each step is the Blahut–Arimoto update `p_i ∝ p_i exp[λ(D_i − s·cost_i)]`
/// with the multiplier `s` chosen afresh so the new prior meets the budget.
/// At `λ = 1` the step never lowers the value; larger `λ` are tried first
/// and halved back toward 1 when they fail, which speeds up the decay of
/// letters that drop out of the optimum. Stops when an accepted step gains
/// less than `settings.tol` or the duality gap closes below it.
/// `settings.multiplier_bracket.1` caps the multiplier.
pub(crate) fn cost_constrained_ascent<F>(
    mut eval: F,
    costs: &[f64],
    budget: f64,
    settings: &OptimizerSettings,
) -> Result<CostConstrainedOptimum>
where
    F: FnMut(&[f64]) -> Divergences,
{
    let n = costs.len();
    let s_max = settings.multiplier_bracket.1;
    let cheapest = costs.iter().copied().fold(f64::INFINITY, f64::min);
    if budget < cheapest * (1.0 + 1e-12) {
        if budget < cheapest * (1.0 - 1e-12) {
            return Err(Error::Infeasible(format!(
                "budget {budget} is below the cheapest letter {cheapest}"
            )));
        }
        let hits = costs.iter().filter(|&&c| c <= cheapest).count() as f64;
        let prior: Vec<f64> = costs.iter().map(|&c| if c <= cheapest { 1.0 / hits } else { 0.0 }).collect();
        let value = eval(&prior).value;
        return Ok(CostConstrainedOptimum {
            value,
            prior,
            multiplier: 0.0,
            trace: vec![value],
            upper_bound: value,
        });
    }

    // start from the most spread-out prior that meets the budget
    let (mut p, t0) = tilt_to_budget(&vec![0.0; n], costs, budget, s_max)?;
    let mut cur = eval(&p);
    let mut s = t0;
    let mut trace = vec![cur.value];
    let mut step: f64 = 1.0;
    let bound = |d: &Divergences, s: f64| {
        d.scores
            .iter()
            .zip(costs)
            .map(|(d, c)| d - s * c)
            .fold(f64::NEG_INFINITY, f64::max)
            + s * budget
    };
    for _ in 0..settings.max_iters {
        let upper_bound = bound(&cur, s);
        if upper_bound - cur.value < settings.tol {
            return Ok(CostConstrainedOptimum {
                value: cur.value,
                prior: p,
                multiplier: s,
                trace,
                upper_bound,
            });
        }
        loop {
            let log_w: Vec<f64> = p.iter().zip(&cur.scores).map(|(pi, d)| pi.ln() + step * d).collect();
            let (next, t) = tilt_to_budget(&log_w, costs, budget, step * s_max)?;
            let cand = eval(&next);
            if cand.value >= cur.value || step <= 1.0 {
                let gain = cand.value - cur.value;
                p = next;
                cur = cand;
                s = t / step;
                trace.push(cur.value);
                if gain < settings.tol {
                    let upper_bound = bound(&cur, s);
                    return Ok(CostConstrainedOptimum {
                        value: cur.value,
                        prior: p,
                        multiplier: s,
                        trace,
                        upper_bound,
                    });
                }
                step = (step * 2.0).min(MAX_STEP);
                break;
            }
            step = (step / 4.0).max(1.0);
        }
    }
    Err(Error::NonConvergence {
        iters: settings.max_iters,
        last_change: bound(&cur, s) - cur.value,
    })
}
