pub mod error;
pub mod exactnum;
pub mod exec;
pub mod boettcher;
pub mod countkit;
pub mod dynamics;
pub mod factorint;
pub mod galois;
pub mod heights;
pub mod nt;

pub use error::{Error, Result};
pub use exec::Execution;
