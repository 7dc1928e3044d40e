//! Exact Wedderburn decompositions of rational group algebras of abelian,
//! VZ and nested GVZ p-groups.
//!
//! The crate has two halves that never share a code path:
//!
//! * the formula engines ([`abelian`], [`decomp`], [`families`]) which turn
//!   small combinatorial data (abelian invariants, layer quotients) into a
//!   [`WeddDecomp`];
//! * the brute-force [`oracle`], which realizes a group concretely
//!   ([`grouprep`]), computes its complete character table with exact
//!   cyclotomic values and reads the decomposition off the Galois classes.
//!
//! Everything is `no_std` + `alloc`.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod abelian;
pub mod arith;
pub mod decomp;
mod error;
pub mod families;
pub mod grouprep;
pub mod oracle;

pub use abelian::{AbelianPType, RelationMatrix};
pub use decomp::{NestedGvzData, SimpleComponent, WeddDecomp};
pub use error::{Error, Result};
pub use families::{P5Input, TauClass, TwoGenParams};
pub use grouprep::{FiniteGroupRep, GroupKind, Subgroup};
pub use oracle::{CharTable, Cyclotomic, GroupAlgebraElement};
