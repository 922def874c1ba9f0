//! Lower bounds on the minimum distance of one-point algebraic geometry
//! codes built from a Weierstrass semigroup and a set of pole orders.
//!
//! The numerical side ([`semigroup`], [`hstar`], [`bounds`]) works purely with
//! integers. The code side ([`gf`], [`evalcode`], [`generic_bound`],
//! [`oracle`]) builds explicit codes over small finite fields to check the
//! numerical bounds against brute force.

pub mod bounds;
pub mod error;
pub mod evalcode;
pub mod generic_bound;
pub mod gf;
pub mod hstar;
pub mod oracle;
pub mod semigroup;

pub use bounds::{
    a_set, bound_table, d_ord, d_ord_direct, d_ord_sequence, d_star, feng_rao_improved_dim, ghw_bound,
    goppa_compare, improved_profile, lambda_profile, lambda_star, BoundRow, BoundTable,
    GhwTable, GoppaRecord, ImprovedProfile, LambdaProfile, DEFAULT_GHW_CAP,
};
pub use error::{Error, Result};
pub use gf::{FieldMatrix, FiniteField};
pub use hstar::{HStar, Mode};
pub use semigroup::NumericalSemigroup;
