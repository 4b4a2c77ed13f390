//! Exact chain complexes, dg coalgebras and comodules over a field, with
//! executable checks of the model-structure ingredients on comonoids and
//! comodules.

pub mod coalg;
pub mod comod;
pub mod error;
pub mod exactla;
pub mod format;
pub mod homotopy;
pub mod random;
pub mod report;

pub use error::{Error, Result};
pub use exactla::{ChainComplex, ChainMap, Degree, Element, Field, Matrix, Scalar};
pub use report::Report;
