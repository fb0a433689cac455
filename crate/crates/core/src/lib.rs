//! Secrecy capacity of wiretap transmission over Rayleigh fading with
//! reconfigurable antennas.
//!
//! Four schemes are covered:
//!
//! * conventional single-antenna transmission (closed-form ε-outage capacity),
//! * radiation-state switching without CSI (ergodic secrecy capacity),
//! * state selection with main-channel CSI only (root-solved ε-outage capacity),
//! * state selection with full CSI (Monte Carlo only).
//!
//! SNRs are linear power ratios throughout this crate; rates are in bits per
//! channel use.

pub mod analytic;
pub mod channel;
mod dd;
pub mod error;
pub mod monte_carlo;
pub mod root;
pub mod special;

pub use analytic::{OutageQuery, RateResult};
pub use channel::{AntennaConfig, ChannelBlock, ChannelParams, ChannelStream};
pub use error::{Error, Result};
pub use monte_carlo::{ErgodicEstimate, OutageEstimate, QuantileEstimate, Scheme, SimulationSpec};
pub use special::PositiveReal;
