//! Compress-and-explore: follow an approximate tour with shortcuts, compress
//! what is left into a small multigraph, explore that online with nearest
//! neighbour.

mod baseline;
mod compress;
mod explore;
mod pipeline;
mod shortcut;

pub use baseline::{repeated_shortcut_baseline, BaselineRun};
pub use compress::{compress, compress_vertices, CompressedGraph, Hop, PathEdge};
pub use explore::{nn_explore, Exploration, TiePolicy};
pub use pipeline::{compress_and_explore, inject_tour, CnnRun};
pub use shortcut::{shortcut, ShortCutResult};
