//! Exact computations on polymatroids over small ground sets.
//!
//! Rank functions are vectors of exact rationals indexed by subsets. On top of
//! them the crate provides flats, modular cuts and filters, excess functions
//! and one-point extensions, the intersectability and linearity tests, linear
//! representations over prime fields, and the extreme rays of the cone of
//! polymatroids together with their classification up to isomorphism.

pub mod catalog;
pub mod cone;
pub mod cuts;
pub mod error;
pub mod extend;
pub mod flats;
pub mod io;
mod linalg;
pub mod linrep;
pub mod perm;
pub mod pipeline;
pub mod setfun;
pub mod subset;

pub use cone::{ExtremeRay, IsoClass};
pub use cuts::{ModularCut, ModularFilter};
pub use error::{Error, Result};
pub use extend::{ExcessFunction, StarReport};
pub use flats::FlatSet;
pub use linrep::LinearRepresentation;
pub use setfun::{RankFunction, Rational, ValidationMode, ValidationReport};
pub use subset::{GroundSet, SubsetId};
