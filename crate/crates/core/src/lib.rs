pub mod criticality;
pub mod error;
pub mod exec;
pub mod fracpart;
pub mod mellin;
pub mod mpcore;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use exec::Exec;
