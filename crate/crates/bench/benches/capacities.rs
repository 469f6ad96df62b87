use bosecap_core::capacity_gaussian::capacity_transmitter_constrained;
use bosecap_core::discretization::c12_binary;
use bosecap_core::number_channel::{default_n_max, optimize_number_capacity};
use bosecap_core::oracle::{beta_maximization, brute_force_constellation_capacity, BetaConstraint};
use bosecap_core::gaussian::squeezed_state;
use bosecap_core::{
    AttenuationChannel, EnergyBudget, OptimizerSettings, PhysicalConstants, RingGrid, TransmitterConstraint,
};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn closed_forms(c: &mut Criterion) {
    let consts = PhysicalConstants::default();
    let ch = AttenuationChannel::new(0.9, 0.1).unwrap();
    let budget = TransmitterConstraint::new(5.0).unwrap();
    c.bench_function("transmitter-constrained capacity", |b| {
        b.iter(|| capacity_transmitter_constrained(black_box(0.5), 0.0, &ch, &budget, consts))
    });
    let carrier = squeezed_state(0.5, 0.0, consts).unwrap();
    c.bench_function("beta oracle", |b| {
        b.iter(|| beta_maximization(black_box(&carrier), Some(&ch), BetaConstraint::Transmitter(budget), 200))
    });
}

fn optimizers(c: &mut Criterion) {
    let settings = OptimizerSettings::default();
    c.bench_function("binary discretization m=1e-10", |b| {
        b.iter(|| c12_binary(black_box(EnergyBudget::new(1e-10).unwrap()), &settings))
    });
    c.bench_function("number capacity eta=0.5 budget=1", |b| {
        b.iter(|| optimize_number_capacity(black_box(0.5), 1.0, default_n_max(1.0), &settings))
    });

    let mut slow = c.benchmark_group("constellation");
    slow.sample_size(10);
    let grid = RingGrid {
        radii: 4,
        phases: 8,
        max_radius: 2.0,
        include_origin: true,
    };
    slow.bench_function("33 letters m=0.5", |b| {
        b.iter(|| brute_force_constellation_capacity(black_box(&grid), EnergyBudget::new(0.5).unwrap(), &settings))
    });
    slow.finish();
}

criterion_group!(benches, closed_forms, optimizers);
criterion_main!(benches);
