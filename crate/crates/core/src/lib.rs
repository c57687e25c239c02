//! Jordan partitions `λ(r, s, p)`: the block sizes of `J_r(1) ⊗ J_s(1)` over
//! a field of characteristic `p`, equivalently the decomposition of
//! `V_r ⊗ V_s` into indecomposable modules for a cyclic `p`-group.
//!
//! Four independent routes compute the same answer:
//!
//! - [`renaud::decompose_renaud`]: recursive reduction on powers of `p`.
//! - [`iima::decompose_iima`]: p-divisibility of binomial determinants.
//! - [`closedform`]: explicit formulas for large `p` and for `|r − s| ≤ 1`, `p = 2`.
//! - [`oracle::decompose_oracle`]: ranks of powers of the nilpotent part over `F_p`.
//!
//! [`verify`] compares them and checks the structural laws every answer obeys.

pub mod closedform;
pub mod error;
pub mod greenring;
pub mod iima;
pub mod numtheory;
pub mod oracle;
pub mod renaud;
pub mod verify;

pub use error::{Error, Result};
pub use greenring::{Decomposition, Part, Partition, VirtualSum};
