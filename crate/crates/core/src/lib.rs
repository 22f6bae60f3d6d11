//! Solvers for Close Enough Orienteering and the truck-drone delivery variant.

pub mod geometry;
pub mod instance;
pub mod rszd;
pub mod routing;
pub mod acs;
pub mod arc_search;
pub mod pso;
pub mod oracle;
pub mod pipeline;
pub mod bench;
pub mod generate;
pub mod svg;
