//! Projective flows: exact homogeneous series, Dixonian elliptic functions,
//! closed-form flows, and numerical and symbolic verification of their identities.

pub mod closed_forms;
pub mod cnum;
pub mod elliptic;
pub mod error;
pub mod exact;
pub mod expressions;
pub mod finite_fields;
pub mod identities;
pub mod plots;
pub mod series;
pub mod special;
pub mod verifier;

pub use cnum::CNum;
pub use error::{Error, Result};
