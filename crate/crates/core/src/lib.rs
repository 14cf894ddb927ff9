#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod constants;
pub mod error;
pub mod fermi_dirac;
pub mod heating;
pub mod inelastic;
pub mod numeric;
pub mod species;
pub mod structure;
pub mod thermo;
pub mod trap;

pub use error::{Error, Result};
