pub mod error;
pub mod exactla;
pub mod ffield;
pub mod gcode;
pub mod grassmann;
pub mod quadgeo;
pub mod verify;

pub use error::{Error, Result};
