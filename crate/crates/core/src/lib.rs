//! Dynamic coverage of Poisson-deployed mobile sensor networks.
//!
//! [`analytic`] evaluates the closed forms for area and interval coverage,
//! detection times with and without a minimum sensing time, and the
//! effective sensor speed seen by a moving intruder. [`sim`] is an
//! event-driven Monte Carlo engine that estimates the same quantities from
//! sampled sensor trajectories, [`stats`] turns its output into comparable
//! estimates, and [`game`] evaluates the sensor-versus-intruder mobility game.

pub mod analytic;
pub mod game;
pub mod model;
pub mod quadrature;
pub mod replicate;
pub mod sim;
pub mod stats;

pub use model::{
    DirectionDistribution, IntruderMotion, IntruderSpec, Mobility, NetworkConfig, SensorTrack,
    SpeedDistribution, Vec2,
};
