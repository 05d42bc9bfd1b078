//! Symbolic perverse-tilt engine for the full-defect blocks of SL2(p^n) in
//! defining characteristic, with an independent finite-field matrix oracle.

pub mod basep;
pub mod error;
pub mod ffmod;
pub mod frob;
pub mod homcount;
pub mod render;
pub mod tilt;
pub mod symbols;

pub use basep::GroupParams;
pub use error::{Error, Result};
pub use symbols::StableSymbol;
