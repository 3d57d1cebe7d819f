//! Coverage analysis for a macrocell overlaid with closed-access femtocells.
//!
//! Modules, bottom up:
//! - [`specfun`]: gamma/beta special functions and the distributions on them.
//! - [`linkmodel`]: parameters, path loss, per-location coefficients.
//! - [`analytic`]: closed-form coverage radii and contention densities.
//! - [`sensing`]: power-ratio bounds, sensing radius, energy detection.
//! - [`simulator`]: Poisson-drop Monte Carlo with ZF precoding.

// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod config;
pub mod error;
pub mod linkmodel;
pub mod sensing;
pub mod simulator;
pub mod specfun;

pub use analytic::{CoverageSolution, FemtoDensity, KfChoice, Regime, ShotNoiseConstants};
pub use config::{load_config, parse_config, Config, ConfigError};
pub use error::{CoreError, Result};
pub use linkmodel::{LinkBudget, LinkType, LocationCoefficients, SystemParams};
pub use sensing::{PowerRatioBounds, SensingPlan};
pub use simulator::{
    ChannelDraw, ChannelMode, Drop, OutageEstimate, PowerPolicy, RateCdf, Receiver, Scenario, ScenarioConfig,
};
pub use specfun::{Accuracy, SpecFunError};
