//! Difference sets, linking systems of difference sets, difference matrices
//! and bent functions over small finite groups, with exact verifiers and
//! exhaustive search engines.

pub mod bent;
pub mod cert;
pub mod designs;
pub mod diffmat;
pub mod error;
pub mod field;
pub mod group;
pub mod group_ring;
pub mod linking;
pub mod search;

pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, GroupSpec, Quotient, Subgroup};
