pub mod algebra;
pub mod campaign;
pub mod encoder;
pub mod error;
pub mod places;
pub mod curve;
pub mod series;
pub mod uniform;

pub use error::{Error, Result};
