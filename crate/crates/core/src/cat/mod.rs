//! Finite categories, finite simplicial categories and their nerves.

pub mod category;
pub mod format;
pub mod functor;
pub mod nerve;
pub mod present;
pub mod quiver;
pub mod scat;

pub use category::{Arrow, FiniteCategory};
pub use format::{emit_cat, emit_functor, emit_quiver, emit_scat, emit_sfunctor, parse_cat, CatDocument};
pub use functor::{cat_equiv_check, enumerate_functors, Functor};
pub use nerve::{chains, nerve, nerve_map, nerve_sset, Chain};
pub use present::{tau1, tau1_adjunct, tau1_unit, CategoryPresentation, Decision, RewriteBound};
pub use quiver::{free_category, psi_elements, psi_filtration, Quiver, Words};
pub use scat::{dk_check_sc, pi0_cat, pi0_functor, scat_nerve, FiniteSimplicialCategory, Pi0Category, SimplicialFunctor};
