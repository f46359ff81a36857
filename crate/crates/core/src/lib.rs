//! Finitely represented inductive invariants for well-structured transition
//! systems, and the regular separators they induce.
//!
//! The crate is organised bottom-up:
//!
//! * [`ideal`]: ω-markings as ideals of `control × ℕ^d` and antichain covers
//!   of downward-closed sets.
//! * [`olts`]: explicit ordered transition systems (upward or downward
//!   compatible) with product, reversal, complement, determinization and
//!   bounded language enumeration.
//! * [`vass`]: labeled VASS with Karp–Miller forward coverability, exact
//!   backward coverability, invariant checking and membership.
//! * [`fa`]: a small finite automaton toolbox.
//! * [`separator`]: separator synthesis from the Karp–Miller cover of a
//!   synchronized product, and exact verification.
//! * [`rado`]: the Rado order, its witness transition system and the
//!   Nerode antichain certificates built on top of it.

pub mod error;
pub mod fa;
pub mod ideal;
pub mod olts;
pub mod rado;
pub mod separator;
pub mod vass;
pub mod word;

pub use error::{Error, Result};
pub use ideal::{Control, IdealCover, OmegaMarking, OmegaNat};
pub use word::{Letter, Word};
