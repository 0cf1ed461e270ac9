pub mod arith;
pub mod diagram;
pub mod error;
pub mod skein;

pub use error::{Error, Result};
pub mod fermat;
pub mod harness;
pub mod surgery;
