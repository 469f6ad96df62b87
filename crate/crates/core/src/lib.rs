//! Classical information capacities of bosonic optical channels.
//!
//! The crate covers closed-form Gaussian-channel capacities (input and
//! transmitter constrained, attenuated and noisy), photon-number channel
//! capacities, and binary discretizations of the coherent-state channel.
//! Every closed form has an independent brute-force check in [`oracle`].
//!
//! All entropies are in nats unless a function says otherwise.

#![forbid(unsafe_code)]

pub mod capacity_discrete;
pub mod capacity_gaussian;
pub mod channels;
pub mod discretization;
pub mod entropy;
pub mod error;
pub mod gaussian;
pub mod number_channel;
pub mod optim;
pub mod oracle;

pub use capacity_gaussian::{CapacityResult, InputConstraint, Regime, TransmitterConstraint};
pub use channels::{AttenuationChannel, PhotonChannel};
pub use discretization::{BinarySolution, EnergyBudget};
pub use error::{Error, Result};
pub use gaussian::{OneModeGaussianState, PhysicalConstants};
pub use number_channel::{HyoRegime, PhotonDistribution};
pub use optim::OptimizerSettings;
pub use oracle::RingGrid;
