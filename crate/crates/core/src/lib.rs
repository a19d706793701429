//! Online covering Canadian traveller: route a traveller through every
//! vertex of a metric graph whose blocked edges are revealed only on arrival
//! at an endpoint.
//!
//! The [`env::Environment`] owns the truth and exposes a
//! [`env::TravellerView`]; every algorithm in [`cctp`] moves through it, so a
//! step along a blocked or unrevealed edge is an error rather than a silent
//! advantage.

pub mod batch;
pub mod cctp;
pub mod env;
pub mod error;
pub mod experiment;
pub mod format;
pub mod graph;
pub mod instance;
pub mod lowerbound;
pub mod random;
pub mod trace;
pub mod tsp;

pub use error::{Error, Result};
pub use graph::{CostMatrix, Edge, VertexId, Walk};
pub use instance::{MetricInstance, Scenario};
