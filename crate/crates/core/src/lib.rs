//! Quantitative residual finiteness for Chevalley groups.
//!
//! * [`polyarith`]: polynomials, finite fields and residue rings.
//! * [`rootsys`]: root data and Chevalley structure constants.
//! * [`lie`]: Chevalley Lie algebras over finite fields and their subspaces.
//! * [`groups`]: matrix groups over finite rings, closures and filtrations.
//! * [`detect`]: detecting quotients for finitely generated linear groups.
//! * [`harness`]: growth experiments, witnesses and tables.

pub mod detect;
pub mod error;
pub mod groups;
pub mod harness;
pub mod lie;
pub mod par;
pub mod polyarith;
pub mod rootsys;
mod serde_big;

pub use error::{Error, Result};
