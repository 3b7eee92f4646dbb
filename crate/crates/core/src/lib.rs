//! Nested set complexes of matroids, their cubical normal complexes, and the
//! facet orders used to shell them.
//!
//! Everything is exact: flats are bitsets, geometry uses arbitrary-precision
//! rationals.

pub mod building;
pub mod corpus;
pub mod error;
pub mod flat;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod nested;
pub mod orders;
pub mod search;
pub mod shelling;

pub use building::BuildingSet;
pub use error::{Error, Result};
pub use flat::Flat;
pub use geometry::{CubicalFunction, Q};
pub use matroid::Matroid;
pub use nested::{Link, NestedSet};
pub use orders::{FacetOrder, Provenance};
