//! A finite-model workbench for distributive quasi relation algebras.
//!
//! * [`relcore`] — bit-matrix relations, posets, self-maps.
//! * [`twisted`] — the twisted order on an equivalence `E` and its up-sets.
//! * [`dq`] — the concrete algebra `Dq(E)` with closed-form operations.
//! * [`algebra`] — table-given algebras: axiom checking, derived algebras,
//!   morphisms.
//! * [`represent`] — embeddings into concrete algebras, representation
//!   search, disjoint unions and block decomposition.
//! * [`catalog`] — small posets up to isomorphism and the build tuples over
//!   them.

pub mod algebra;
pub mod catalog;
pub mod dot;
pub mod dq;
mod error;
pub mod relcore;
pub mod represent;
pub mod twisted;

pub use algebra::{AbstractDqRA, AxiomGroup, AxiomReport};
pub use dq::{build, ConcreteDqRA};
pub use error::{Error, Result};
pub use relcore::{Endomap, FinRel, Poset};
pub use represent::{Embedding, RepresentationSpec};
pub use twisted::{TwistedOrder, UpSetLattice, DEFAULT_CAP};
