//! Exact linear algebra: integer matrices with Smith normal form, and
//! subspace arithmetic over prime fields.

pub mod fp;
pub mod int;
pub mod snf;

pub use int::IntMatrix;
pub use snf::{smith_normal_form, smith_normal_form_diagonal, SnfResult};
