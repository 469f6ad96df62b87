use std::f64::consts::LN_2;

use bosecap_core::capacity_discrete::{binary_c1, TRINE_C1_REPORTED_BITS, TRINE_OVERLAP};
use bosecap_core::capacity_gaussian::{capacity_input_constrained, capacity_transmitter_constrained};
use bosecap_core::discretization::{c12_binary, c2_binary, c_be};
use bosecap_core::entropy::bits_to_nats;
use bosecap_core::gaussian::{g_function, squeezed_state};
use bosecap_core::number_channel::{
    attenuated_number_holevo, bose_einstein, default_n_max, noiseless_number_capacity,
    optimize_number_capacity,
};
use bosecap_core::oracle::{
    beta_maximization, brute_force_constellation_capacity, fock_thermal_entropy, gram_mixture_entropy,
    BetaConstraint, CoherentEnsemble,
};
use bosecap_core::{
    AttenuationChannel, EnergyBudget, InputConstraint, PhotonChannel, Regime, RingGrid,
    TransmitterConstraint,
};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::args::{
    Check, DiscretizeArgs, GaussianArgs, InputArgs, NumberArgs, NumberMode, Scale, SweepArgs, Variable,
    VerifyArgs,
};
use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{self, fmt_num};

pub const GAUSSIAN_HEADER: [&str; 7] = ["gamma", "theta", "k", "n_c", "n_tr", "regime", "capacity"];
pub const INPUT_HEADER: [&str; 5] = ["gamma", "theta", "energy", "regime", "capacity"];
pub const NUMBER_HEADER: [&str; 6] = ["eta", "budget", "n_max", "mode", "capacity", "mean_photons"];
pub const FIGURE3_HEADER: [&str; 6] = ["m", "c_be", "c2", "c2_ratio", "c12", "c12_ratio"];
pub const VERIFY_HEADER: [&str; 5] = ["check", "value", "target", "tolerance", "status"];

/// Transmitter budget used by the `--figure 2` preset.
pub const FIGURE2_NTR: f64 = 5.0;
/// Channels `(k, N_c)` drawn in the `--figure 2` preset.
pub const FIGURE2_CHANNELS: [(f64, f64); 3] = [(1.0, 0.0), (0.9, 0.0), (0.9, 0.1)];

const ERROR_CELL: &str = "error";

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::A => "A",
        Regime::B => "B",
    }
}

fn write_rows(cfg: &RunConfig, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = output::open(cfg.output_path.as_deref())?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn gaussian_row(cfg: &RunConfig, a: &GaussianArgs) -> std::result::Result<Vec<String>, (Vec<String>, CliError)> {
    let lead = vec![fmt_num(a.gamma), fmt_num(a.theta), fmt_num(a.k), fmt_num(a.n_c), fmt_num(a.n_tr)];
    let result = (|| -> Result<_> {
        let ch = AttenuationChannel::new(a.k, a.n_c)?;
        let c = TransmitterConstraint::new(a.n_tr)?;
        Ok(capacity_transmitter_constrained(a.gamma, a.theta, &ch, &c, cfg.consts())?)
    })();
    match result {
        Ok(r) => {
            let mut row = lead;
            row.push(regime_name(r.regime).into());
            row.push(fmt_num(cfg.log_base.convert(r.value)));
            Ok(row)
        }
        Err(e) => {
            let mut row = lead;
            row.extend([ERROR_CELL.to_string(), ERROR_CELL.to_string()]);
            Err((row, e))
        }
    }
}

pub fn capacity_gaussian(cfg: &RunConfig, a: &GaussianArgs) -> Result<()> {
    let row = gaussian_row(cfg, a).map_err(|(_, e)| e)?;
    write_rows(cfg, &GAUSSIAN_HEADER, &[row])
}

pub fn capacity_input(cfg: &RunConfig, a: &InputArgs) -> Result<()> {
    let consts = cfg.consts();
    let c = match (a.energy, a.photons) {
        (Some(e), _) => InputConstraint::new(e)?,
        (None, Some(n)) => InputConstraint::from_photons(n, consts)?,
        (None, None) => unreachable!("clap requires one of --energy/--photons"),
    };
    let state = squeezed_state(a.gamma, a.theta, consts)?;
    let r = capacity_input_constrained(&state, &c)?;
    let row = vec![
        fmt_num(a.gamma),
        fmt_num(a.theta),
        fmt_num(c.energy()),
        regime_name(r.regime).into(),
        fmt_num(cfg.log_base.convert(r.value)),
    ];
    write_rows(cfg, &INPUT_HEADER, &[row])
}

fn number_row(cfg: &RunConfig, eta: f64, budget: f64, mode: NumberMode) -> std::result::Result<Vec<String>, (Vec<String>, CliError)> {
    let n_max = cfg.n_max.unwrap_or_else(|| default_n_max(budget.max(0.0)));
    let mode_name = match mode {
        NumberMode::Optimize => "optimize",
        NumberMode::BoseEinstein => "bose-einstein",
    };
    let lead = vec![fmt_num(eta), fmt_num(budget), n_max.to_string(), mode_name.to_string()];
    let result = (|| -> Result<(f64, f64)> {
        match mode {
            NumberMode::Optimize => {
                let r = optimize_number_capacity(eta, budget, n_max, &cfg.settings())?;
                Ok((r.capacity, r.optimum.mean()))
            }
            NumberMode::BoseEinstein => {
                let ch = PhotonChannel::new(eta, n_max)?;
                let input = bose_einstein(budget, n_max)?;
                Ok((attenuated_number_holevo(&input, &ch)?, input.mean()))
            }
        }
    })();
    match result {
        Ok((cap, mean)) => {
            let mut row = lead;
            row.push(fmt_num(cfg.log_base.convert(cap)));
            row.push(fmt_num(mean));
            Ok(row)
        }
        Err(e) => {
            let mut row = lead;
            row.extend([ERROR_CELL.to_string(), ERROR_CELL.to_string()]);
            Err((row, e))
        }
    }
}

pub fn capacity_number(cfg: &RunConfig, a: &NumberArgs) -> Result<()> {
    let row = number_row(cfg, a.eta, a.budget, a.mode).map_err(|(_, e)| e)?;
    write_rows(cfg, &NUMBER_HEADER, &[row])
}

fn figure3_row(cfg: &RunConfig, m: f64) -> std::result::Result<Vec<String>, (Vec<String>, CliError)> {
    let lead = vec![fmt_num(m)];
    let result = (|| -> Result<[f64; 3]> {
        let b = EnergyBudget::new(m)?;
        let (_, sol) = c12_binary(b, &cfg.settings())?;
        Ok([c_be(b), c2_binary(b).value_nats, sol.value_nats])
    })();
    match result {
        Ok([cbe, c2, c12]) => {
            let base = cfg.log_base;
            let mut row = lead;
            row.extend([
                fmt_num(base.convert(cbe)),
                fmt_num(base.convert(c2)),
                fmt_num(c2 / cbe),
                fmt_num(base.convert(c12)),
                fmt_num(c12 / cbe),
            ]);
            Ok(row)
        }
        Err(e) => {
            let mut row = lead;
            row.extend(std::iter::repeat_n(ERROR_CELL.to_string(), 5));
            Err((row, e))
        }
    }
}

pub fn discretize(cfg: &RunConfig, a: &DiscretizeArgs) -> Result<()> {
    let row = figure3_row(cfg, a.m).map_err(|(_, e)| e)?;
    write_rows(cfg, &FIGURE3_HEADER, &[row])
}

/// Sweep abscissae, validated.
pub fn sweep_points(start: f64, stop: f64, points: usize, scale: Scale) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(CliError::Usage(format!("--points must be at least 2, got {points}")));
    }
    if !(start.is_finite() && stop.is_finite() && start < stop) {
        return Err(CliError::Usage(format!("need --start < --stop, got {start} and {stop}")));
    }
    let last = (points - 1) as f64;
    let interior: Box<dyn Fn(f64) -> f64> = match scale {
        Scale::Linear => Box::new(move |t| start + (stop - start) * t),
        Scale::Log => {
            if start <= 0.0 {
                return Err(CliError::Usage(format!("--scale log needs --start > 0, got {start}")));
            }
            let (a, b) = (start.ln(), stop.ln());
            Box::new(move |t| (a + (b - a) * t).exp())
        }
    };
    // endpoints exactly as given so that bounds such as k = 1 stay valid
    Ok((0..points)
        .map(|i| match i {
            0 => start,
            i if i == points - 1 => stop,
            i => interior(i as f64 / last),
        })
        .collect())
}

enum SweepKind {
    Gaussian,
    Figure3,
    Number,
}

pub fn sweep(cfg: &RunConfig, a: &SweepArgs) -> Result<()> {
    let xs = sweep_points(a.start, a.stop, a.points, a.scale)?;
    let (kind, tasks): (SweepKind, Vec<Task>) = match (a.figure, a.variable) {
        (Some(2), _) => {
            let n_tr = a.n_tr.unwrap_or(FIGURE2_NTR);
            let tasks = FIGURE2_CHANNELS
                .iter()
                .flat_map(|&(k, n_c)| {
                    xs.iter().map(move |&gamma| Task::Gaussian(GaussianArgs { gamma, theta: a.theta, k, n_c, n_tr }))
                })
                .collect();
            (SweepKind::Gaussian, tasks)
        }
        (Some(_), _) | (None, Some(Variable::M)) => {
            (SweepKind::Figure3, xs.iter().map(|&m| Task::Figure3(m)).collect())
        }
        (None, Some(v @ (Variable::Gamma | Variable::K | Variable::NC | Variable::NTr))) => {
            let base = GaussianArgs {
                gamma: a.gamma,
                theta: a.theta,
                k: a.k,
                n_c: a.n_c,
                n_tr: a.n_tr.unwrap_or(1.0),
            };
            let tasks = xs
                .iter()
                .map(|&x| {
                    let mut g = base.clone();
                    match v {
                        Variable::Gamma => g.gamma = x,
                        Variable::K => g.k = x,
                        Variable::NC => g.n_c = x,
                        _ => g.n_tr = x,
                    }
                    Task::Gaussian(g)
                })
                .collect();
            (SweepKind::Gaussian, tasks)
        }
        (None, Some(v @ (Variable::Eta | Variable::Budget))) => {
            let tasks = xs
                .iter()
                .map(|&x| match v {
                    Variable::Eta => Task::Number(x, a.budget, a.mode),
                    _ => Task::Number(a.eta, x, a.mode),
                })
                .collect();
            (SweepKind::Number, tasks)
        }
        (None, None) => unreachable!("clap requires --figure or --variable"),
    };

    let results: Vec<_> = tasks
        .par_iter()
        .map(|t| match t {
            Task::Gaussian(g) => gaussian_row(cfg, g),
            Task::Figure3(m) => figure3_row(cfg, *m),
            Task::Number(eta, budget, mode) => number_row(cfg, *eta, *budget, *mode),
        })
        .collect();
    let total = results.len();
    let mut failed = 0;
    let rows: Vec<Vec<String>> = results
        .into_iter()
        .enumerate()
        .map(|(i, r)| match r {
            Ok(row) => row,
            Err((row, e)) => {
                failed += 1;
                log::error!("sweep row {}: {e}", i + 1);
                row
            }
        })
        .collect();
    let header: &[&str] = match kind {
        SweepKind::Gaussian => &GAUSSIAN_HEADER,
        SweepKind::Figure3 => &FIGURE3_HEADER,
        SweepKind::Number => &NUMBER_HEADER,
    };
    write_rows(cfg, header, &rows)?;
    if failed > 0 {
        return Err(CliError::PartialSweep { failed, total });
    }
    Ok(())
}

enum Task {
    Gaussian(GaussianArgs),
    Figure3(f64),
    Number(f64, f64, NumberMode),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    /// Informational; never fails the run.
    Note,
}

struct CheckRow {
    name: String,
    value: f64,
    target: f64,
    tolerance: f64,
    status: Status,
    /// Whether value, target and tolerance are information quantities.
    information: bool,
}

fn checked(name: impl Into<String>, value: f64, target: f64, tolerance: f64, information: bool) -> CheckRow {
    let ok = (value - target).abs() <= tolerance;
    CheckRow {
        name: name.into(),
        value,
        target,
        tolerance,
        status: if ok { Status::Pass } else { Status::Fail },
        information,
    }
}

fn thermal_checks(nbars: &[f64]) -> Result<Vec<CheckRow>> {
    nbars
        .iter()
        .map(|&n| {
            let fock = fock_thermal_entropy(n, 200)?.entropy;
            let closed = g_function((n + 0.5) * (n + 0.5))?;
            Ok(checked(format!("thermal-entropy nbar={}", fmt_num(n)), fock, closed, 1e-8, true))
        })
        .collect()
}

fn gram_checks(ms: &[f64]) -> Result<Vec<CheckRow>> {
    ms.iter()
        .map(|&m| {
            let a = m.sqrt();
            let ens = CoherentEnsemble::new(vec![Complex64::new(a, 0.0), Complex64::new(-a, 0.0)], vec![0.5, 0.5])?;
            let gram = gram_mixture_entropy(&ens)?.chi;
            let c2 = c2_binary(EnergyBudget::new(m)?).value_nats;
            Ok(checked(format!("gram-c2 m={}", fmt_num(m)), gram, c2, 1e-10, true))
        })
        .collect()
}

fn beta_checks(cfg: &RunConfig) -> Result<Vec<CheckRow>> {
    let consts = cfg.consts();
    let mut rows = Vec::new();
    for (gamma, k, n_c, n_tr) in [(0.0, 1.0, 0.0, 1.0), (0.5, 0.9, 0.1, 2.0), (1.2, 0.5, 0.0, 3.0)] {
        let ch = AttenuationChannel::new(k, n_c)?;
        let c = TransmitterConstraint::new(n_tr)?;
        let closed = capacity_transmitter_constrained(gamma, 0.0, &ch, &c, consts)?.value;
        let carrier = squeezed_state(gamma, 0.0, consts)?;
        let oracle = beta_maximization(&carrier, Some(&ch), BetaConstraint::Transmitter(c), 200)?;
        rows.push(checked(
            format!("beta-oracle transmitter gamma={gamma} k={k} n_c={n_c} n_tr={n_tr}"),
            oracle,
            closed,
            1e-4,
            true,
        ));
    }
    for (gamma, e) in [(0.3, 0.2), (1.2, 0.05)] {
        let state = squeezed_state(gamma, 0.0, consts)?;
        let c = InputConstraint::new(e)?;
        let closed = capacity_input_constrained(&state, &c)?.value;
        let oracle = beta_maximization(&state, None, BetaConstraint::Input(c), 200)?;
        rows.push(checked(format!("beta-oracle input gamma={gamma} E={e}"), oracle, closed, 1e-4, true));
    }
    Ok(rows)
}

fn constellation_checks(cfg: &RunConfig) -> Result<Vec<CheckRow>> {
    let m = 0.5;
    let b = EnergyBudget::new(m)?;
    let gordon = c_be(b);
    let mut prev = 0.0;
    let mut monotone = true;
    let mut last = 0.0;
    for (radii, phases) in [(1, 4), (2, 4), (4, 8)] {
        let grid = RingGrid {
            radii,
            phases,
            max_radius: 2.0,
            include_origin: true,
        };
        last = brute_force_constellation_capacity(&grid, b, &cfg.settings())?.capacity;
        monotone &= last >= prev - 1e-8 && last <= gordon + 1e-9;
        prev = last;
    }
    let mut row = checked("constellation m=0.5 ratio to c_be", last / gordon, 1.0, 0.05, false);
    if !monotone {
        row.status = Status::Fail;
    }
    Ok(vec![row])
}

fn number_checks(cfg: &RunConfig) -> Result<Vec<CheckRow>> {
    let n_max = cfg.n_max.unwrap_or_else(|| default_n_max(1.0));
    let r = optimize_number_capacity(1.0, 1.0, n_max, &cfg.settings())?;
    Ok(vec![checked(
        "number-channel eta=1 budget=1",
        r.capacity,
        noiseless_number_capacity(1.0),
        1e-5,
        true,
    )])
}

fn trine_note() -> Result<Vec<CheckRow>> {
    let value = bits_to_nats(binary_c1(TRINE_OVERLAP)?);
    let reported = bits_to_nats(TRINE_C1_REPORTED_BITS);
    Ok(vec![CheckRow {
        name: "trine binary C1 at overlap 1/2 vs reported value".into(),
        value,
        target: reported,
        tolerance: 0.0,
        status: Status::Note,
        information: true,
    }])
}

pub fn verify(cfg: &RunConfig, a: &VerifyArgs) -> Result<()> {
    let nbars = a.nbar.map_or_else(|| vec![0.1, 0.5, 1.0, 2.0], |n| vec![n]);
    let ms = a.m.map_or_else(|| vec![1e-4, 0.01, 0.25, 1.0, 5.0], |m| vec![m]);
    let mut rows = Vec::new();
    let all = a.check == Check::All;
    if all || a.check == Check::ThermalEntropy {
        rows.extend(thermal_checks(&nbars)?);
    }
    if all || a.check == Check::GramC2 {
        rows.extend(gram_checks(&ms)?);
    }
    if all || a.check == Check::BetaOracle {
        rows.extend(beta_checks(cfg)?);
    }
    if all || a.check == Check::Constellation {
        rows.extend(constellation_checks(cfg)?);
    }
    if all || a.check == Check::NumberChannel {
        rows.extend(number_checks(cfg)?);
    }
    if all || a.check == Check::Trine {
        rows.extend(trine_note()?);
    }

    let failed = rows.iter().filter(|r| r.status == Status::Fail).count();
    let records: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let conv = |x: f64| if r.information { cfg.log_base.convert(x) } else { x };
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Note => "note",
            };
            vec![r.name.clone(), fmt_num(conv(r.value)), fmt_num(conv(r.target)), fmt_num(conv(r.tolerance)), status.into()]
        })
        .collect();
    write_rows(cfg, &VERIFY_HEADER, &records)?;
    for r in rows.iter().filter(|r| r.status == Status::Note) {
        log::warn!(
            "{}: recomputed {:.4} bits, reported {:.4} bits",
            r.name,
            r.value / LN_2,
            r.target / LN_2
        );
    }
    if failed > 0 {
        return Err(CliError::VerifyFailed { failed });
    }
    Ok(())
}
