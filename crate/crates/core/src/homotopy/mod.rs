//! Executable checks of the model-structure ingredients and the
//! path-object argument.

pub mod path;
pub mod verify;

pub use path::*;
pub use verify::*;
