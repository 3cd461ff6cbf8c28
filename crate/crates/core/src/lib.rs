//! Permutation groups and arc-transitive graphs.
//!
//! The crate has two layers. The engine ([`perm`], [`group`], [`field`])
//! computes with explicit permutation groups through stabilizer chains,
//! with exact arbitrary-precision orders. The toolkit ([`graph`],
//! [`constructions`], [`verify`]) builds Cayley, coset and orbital graphs
//! and produces machine-checked certificates about their symmetry.
//!
//! ```
//! use arcgraph::constructions::{build_alt, build_sym};
//!
//! assert_eq!(build_sym(4).order().to_string(), "24");
//! assert_eq!(build_alt(9).order().to_string(), "181440");
//! ```

pub mod constructions;
pub mod error;
pub mod field;
pub mod graph;
pub mod group;
pub mod io;
pub mod perm;
pub mod verify;
mod util;

pub use error::{Error, Result};
pub use group::{CosetSpace, PermGroup, StabilizerChain};
pub use perm::{Parity, Permutation};
