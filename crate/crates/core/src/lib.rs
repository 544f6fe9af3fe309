//! Oriented colouring of graphs of bounded Euler genus.

pub mod bounds;
pub mod dipath;
pub mod fixtures;
pub mod full;
pub mod graph;
pub mod oracles;
pub mod params;
pub mod pipeline;
pub mod rng;
pub mod selftest;
