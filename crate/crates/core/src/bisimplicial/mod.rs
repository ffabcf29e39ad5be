//! Bisimplicial sets: rows indexed by the diagram direction, each a finite
//! simplicial set, computed on demand over finite windows.

pub mod format;
pub mod map;
pub mod object;
pub mod rules;
pub mod spaces;
pub mod truncation;
mod virtual_rules;

pub use map::{find_isomorphism, BisimplicialHom, BisimplicialMap};
pub use object::{BisimplicialSet, DiscreteRows, DiscreteSource, RowSource};
pub use rules::cosk0_diag;
pub use spaces::{embed, mapping_space, matching_object, sk_cosk, Direction, Embed, MappingSpace};
pub use truncation::{Presentation, Truncation};
pub use format::{emit_bmap, emit_bss, parse_bmap, parse_bss, parse_segal, BssFlags};
