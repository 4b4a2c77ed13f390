//! Right comodules, their factorizations and lifting problems.

pub mod comodule;
pub mod factor;

pub use comodule::*;
pub use factor::*;
