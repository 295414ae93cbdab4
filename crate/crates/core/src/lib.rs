pub mod autgroup;
pub mod builders;
pub mod curves;
pub mod error;
pub mod fieldpoly;
pub mod io;
pub mod latcore;
pub mod verify;

pub use error::{Error, Result};
