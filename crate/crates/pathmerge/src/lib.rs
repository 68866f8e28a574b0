//! Counting where groups of edge-disjoint paths merge in acyclic networks.

pub mod aa;
pub mod blocks;
pub mod codec;
pub mod constructions;
pub mod dot;
pub mod error;
pub mod flow;
pub mod graph;
pub mod io;
pub mod layout;
pub mod merge;
pub mod network;
pub mod reroute;
pub mod search;

pub use error::{Error, Result};
