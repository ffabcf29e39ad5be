//! Finite simplicial sets in Eilenberg–Zilber normal form, their maps, and
//! the finite limit, colimit and enumeration machinery built on them.

pub mod format;
pub mod hom;
pub mod iso;
pub mod limit;
pub mod map;
pub mod quotient;
pub mod simplex;
pub mod sset;
pub mod standard;

pub use format::{emit_smap, emit_sset, map_header, parse_smap, parse_sset, MapHeader};
pub use hom::{hom_count, hom_enumerate, HomSearch};
pub use iso::{are_isomorphic, find_isomorphism};
pub use limit::{product, Diagram, Limit};
pub use map::SimplicialMap;
pub use quotient::{pushout, Pushout, Quotient};
pub use simplex::{ops, DegeneracyWord, NdId, Simplex};
pub use sset::SimplicialSet;
pub use standard::{build_standard, Standard, StandardKind};

use std::sync::Arc;

/// The `n`-skeleton of `x` with its inclusion.
pub fn skeleton(x: &Arc<SimplicialSet>, n: usize) -> (Arc<SimplicialSet>, SimplicialMap) {
    x.skeleton(n)
}
