//! Homotopy invariants of finite simplicial sets and the three-valued
//! weak-equivalence verdict.

pub mod homology;
pub mod kan;
pub mod verdict;
pub mod we;

pub use homology::{homology, pi0, smith_invariants, AbelianGroupPresentation, Components};
pub use kan::is_kan;
pub use verdict::{Certificate, HornStep, State, Verdict};
pub use we::{verify_we, we_verdict};
