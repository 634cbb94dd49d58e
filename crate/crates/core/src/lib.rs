//! Two-sided stable matching where agents only recognise partners inside a
//! distance-bounded social circle of a structured network.
//!
//! The pipeline is: generate a graph ([`netgen`]), compute hop distances and
//! topology metrics ([`topology`]), build a market and run deferred acceptance
//! restricted to social circles ([`market`]), then aggregate utilities over
//! seeded sweeps ([`harness`]). [`oracle`] holds exhaustive reference
//! implementations for small instances.

pub mod error;
pub mod graph;
pub mod harness;
pub mod market;
pub mod netgen;
pub mod oracle;
pub mod rng;
pub mod topology;

pub use error::{Error, Result};
pub use graph::Graph;
pub use market::{Market, Matching, Side, SocialCircle};
pub use rng::RandomSource;
pub use topology::{DistanceMatrix, TopologyReport};
