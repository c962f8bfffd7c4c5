//! Maximal-class representations of `M_n = <a_1, ..., a_n, b | [a_i, b] = a_{i+1}>`
//! in standard form, their twist-and-shout classes, class counts and the
//! associated zeta function.

pub mod counting;
pub mod error;
pub mod oracle;
pub mod rootlog;
pub mod simplex;
pub mod stability;
pub mod standard_form;
pub mod twistshout;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use rootlog::PrimePower;
pub use standard_form::{build_rep, LambdaSpec, StandardFormRep};
