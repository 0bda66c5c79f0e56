//! Castelnuovo-Mumford regularity of Schubert determinantal ideals,
//! Kazhdan-Lusztig ideals of Grassmannian patches and one-sided mixed ladder
//! determinantal ideals, computed from path statistics on diagrams and checked
//! against Grothendieck polynomials.

pub mod error;
pub mod groth;
pub mod ladder;
pub mod perm;
pub mod poly;
pub mod regularity;
pub mod stats;
pub mod tableaux;

pub use error::{Error, Result};
pub use perm::{Cell, Diagram, Pattern, Permutation};
pub use poly::{SparsePoly, VarId};
pub use stats::Partition;
