pub mod bps;
pub mod catalog;
pub mod cli;
pub mod dimer;
pub mod iso;
pub mod json;
pub mod quiver;
pub mod symmetry;
