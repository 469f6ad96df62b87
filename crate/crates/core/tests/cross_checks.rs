//! Closed forms checked against the brute-force routes in `oracle`.

use bosecap_core::capacity_discrete::{
    accessible_info_binary, covariant_pure_capacity, BinaryEnsemble, CovariantEnsemble,
};
use bosecap_core::capacity_gaussian::{
    capacity_input_constrained, capacity_transmitter_constrained, InputConstraint, Regime,
    TransmitterConstraint,
};
use bosecap_core::channels::{apply_attenuation, AttenuationChannel};
use bosecap_core::discretization::{c12_binary, c2_binary, c_be, EnergyBudget};
use bosecap_core::entropy::nats_to_bits;
use bosecap_core::gaussian::{entropy_one_mode, squeezed_state, OneModeGaussianState, PhysicalConstants};
use bosecap_core::number_channel::{default_n_max, noiseless_number_capacity, optimize_number_capacity};
use bosecap_core::optim::OptimizerSettings;
use bosecap_core::oracle::{
    beta_maximization, brute_force_constellation_capacity, fock_thermal_entropy, gram_mixture_entropy,
    BetaConstraint, CoherentEnsemble, RingGrid,
};
use num_complex::Complex64;
use std::f64::consts::PI;

fn budget(m: f64) -> EnergyBudget {
    EnergyBudget::new(m).unwrap()
}

#[test]
fn thermal_gaussian_entropy_matches_fock_sum() {
    let consts = PhysicalConstants::default();
    for n_bar in [0.0, 0.05, 0.5, 1.0, 3.0, 10.0] {
        let state = OneModeGaussianState::thermal(n_bar, consts).unwrap();
        let closed = entropy_one_mode(&state).unwrap();
        let fock = fock_thermal_entropy(n_bar, 2000).unwrap();
        assert!(fock.truncation.escaped_mass < 1e-12);
        assert!((closed - fock.entropy).abs() < 1e-9, "n̄={n_bar}");
    }
}

#[test]
fn thermal_entropy_independent_of_hbar() {
    for hbar in [0.5, 1.0, 2.0] {
        let consts = PhysicalConstants::new(hbar, 1.3).unwrap();
        let state = OneModeGaussianState::thermal(0.8, consts).unwrap();
        let fock = fock_thermal_entropy(0.8, 500).unwrap();
        assert!((entropy_one_mode(&state).unwrap() - fock.entropy).abs() < 1e-10);
    }
}

#[test]
fn symmetric_pair_gram_matches_closed_form_and_covariant_capacity() {
    for m in [1e-4, 0.01, 0.3, 2.0] {
        let a = f64::sqrt(m);
        let ens = CoherentEnsemble::new(
            vec![Complex64::new(a, 0.0), Complex64::new(-a, 0.0)],
            vec![0.5, 0.5],
        )
        .unwrap();
        let gram = gram_mixture_entropy(&ens).unwrap().chi;
        let c2 = c2_binary(budget(m)).value_nats;
        assert!((gram - c2).abs() < 1e-10, "m={m}");
        let kappa = (-2.0 * m).exp();
        let cov = covariant_pure_capacity(&CovariantEnsemble::pair(kappa).unwrap()).unwrap();
        assert!((cov - c2).abs() < 1e-10);
    }
}

#[test]
fn c2_invariant_under_global_phase() {
    let m: f64 = 0.4;
    let c2 = c2_binary(budget(m)).value_nats;
    for k in 0..8 {
        let phase = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 8.0);
        let a = Complex64::new(m.sqrt(), 0.0) * phase;
        let ens = CoherentEnsemble::new(vec![a, -a], vec![0.5, 0.5]).unwrap();
        assert!((gram_mixture_entropy(&ens).unwrap().chi - c2).abs() < 1e-10);
    }
}

#[test]
fn accessible_information_below_holevo() {
    for kappa in [0.0, 0.1, 0.5, 0.9, 0.999] {
        let holevo_bits = nats_to_bits(covariant_pure_capacity(&CovariantEnsemble::pair(kappa).unwrap()).unwrap());
        let acc = accessible_info_binary(&BinaryEnsemble::new(kappa, 0.5).unwrap());
        assert!(acc <= holevo_bits + 1e-12, "κ={kappa}");
    }
}

#[test]
fn discretization_chain() {
    let settings = OptimizerSettings::default();
    for m in [1e-10, 1e-6, 1e-2, 0.5, 3.0] {
        let (bits, sol) = c12_binary(budget(m), &settings).unwrap();
        let c2 = c2_binary(budget(m));
        let cbe = c_be(budget(m));
        assert!(nats_to_bits(c2.value_nats) - bits >= -1e-9, "m={m}");
        assert!(cbe - c2.value_nats >= -1e-9);
        assert!((sol.mean_energy() - m).abs() <= 1e-6 * m.max(1.0));
    }
}

#[test]
fn constellation_oracle_dominated_by_gordon_and_monotone() {
    let settings = OptimizerSettings::new(1e-9, 100_000, (0.0, 60.0)).unwrap();
    for m in [0.1, 0.5] {
        let mut prev = 0.0;
        for (rings, phases) in [(1, 2), (1, 4), (2, 4), (2, 8), (4, 8)] {
            let grid = RingGrid {
                radii: rings,
                phases,
                max_radius: 2.0,
                include_origin: true,
            };
            let r = brute_force_constellation_capacity(&grid, budget(m), &settings).unwrap();
            assert!(r.capacity <= c_be(budget(m)) + 1e-9);
            assert!(r.capacity >= prev - 1e-8, "m={m} {rings}x{phases}");
            assert!(r.mean_energy <= m + 1e-12);
            prev = r.capacity;
        }
        // a rich constellation gets close to the continuous capacity
        assert!(prev > 0.95 * c_be(budget(m)));
    }
}

#[test]
fn constellation_regression_fixture() {
    // 4 rings of 8 phases out to radius 2, plus the origin, at m = 0.5
    let grid = RingGrid {
        radii: 4,
        phases: 8,
        max_radius: 2.0,
        include_origin: true,
    };
    let r = brute_force_constellation_capacity(&grid, budget(0.5), &OptimizerSettings::default()).unwrap();
    assert!((r.capacity - 0.954_732_5).abs() < 1e-6, "{}", r.capacity);
    assert!((r.capacity / c_be(budget(0.5)) - 1.0).abs() < 0.05);
}

#[test]
fn number_states_reach_coherent_capacity_without_loss() {
    let settings = OptimizerSettings::default();
    for n_bar in [0.1, 1.0, 4.0] {
        let r = optimize_number_capacity(1.0, n_bar, default_n_max(n_bar), &settings).unwrap();
        assert!((r.capacity - noiseless_number_capacity(n_bar)).abs() < 1e-6);
        assert!((noiseless_number_capacity(n_bar) - c_be(budget(n_bar))).abs() < 1e-14);
    }
}

#[test]
fn beta_oracle_matches_input_constrained_closed_form() {
    let consts = PhysicalConstants::default();
    let cases = [(0.0, 1.0), (0.3, 0.2), (0.3, 2.0), (0.8, 0.1), (1.2, 0.05), (1.2, 5.0)];
    let mut seen = [false, false];
    for (gamma, e) in cases {
        let state = squeezed_state(gamma, 0.0, consts).unwrap();
        let c = InputConstraint::new(e).unwrap();
        let closed = capacity_input_constrained(&state, &c).unwrap();
        seen[matches!(closed.regime, Regime::B) as usize] = true;
        let oracle = beta_maximization(&state, None, BetaConstraint::Input(c), 200).unwrap();
        assert!((closed.value - oracle).abs() < 1e-7, "γ={gamma} E={e}: {} vs {oracle}", closed.value);
    }
    assert!(seen[0] && seen[1], "both regimes exercised");
}

#[test]
fn beta_oracle_matches_input_constrained_with_other_constants() {
    let consts = PhysicalConstants::new(0.7, 1.9).unwrap();
    for (gamma, e) in [(0.2, 0.5), (1.0, 0.1)] {
        let state = squeezed_state(gamma, PI, consts).unwrap();
        let c = InputConstraint::new(e).unwrap();
        let closed = capacity_input_constrained(&state, &c).unwrap().value;
        let oracle = beta_maximization(&state, None, BetaConstraint::Input(c), 200).unwrap();
        assert!((closed - oracle).abs() < 1e-7, "{closed} vs {oracle}");
    }
}

#[test]
fn beta_oracle_matches_transmitter_closed_form() {
    let consts = PhysicalConstants::default();
    for (gamma, k, n_c, n_tr) in [(0.0, 1.0, 0.0, 1.0), (0.4, 0.9, 0.0, 1.0), (0.4, 0.9, 0.1, 1.0), (1.2, 0.8, 0.3, 2.5), (0.2, 0.5, 1.0, 0.3)] {
        let ch = AttenuationChannel::new(k, n_c).unwrap();
        let c = TransmitterConstraint::new(n_tr).unwrap();
        let closed = capacity_transmitter_constrained(gamma, 0.0, &ch, &c, consts).unwrap();
        let carrier = squeezed_state(gamma, 0.0, consts).unwrap();
        let oracle = beta_maximization(&carrier, Some(&ch), BetaConstraint::Transmitter(c), 200).unwrap();
        assert!((closed.value - oracle).abs() < 1e-7, "γ={gamma} k={k}: {} vs {oracle}", closed.value);
        // the attenuated carrier stays a physical state
        let out = apply_attenuation(&carrier, &ch).unwrap();
        assert!(out.det_alpha() > 0.0);
    }
}
