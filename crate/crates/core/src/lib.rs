//! Datatype-generic induction and coinduction in the families fibration over
//! finite sets.
//!
//! * [`finset`]: finite indexed sets, maps, predicates, reindexing and
//!   comprehension.
//! * [`container`]: indexed containers and the [`FinitaryFunctor`] interface,
//!   with the finite powerset functors.
//! * [`inductive`]: W-trees, fold, predicate liftings and the induction engine.
//! * [`coinductive`]: relations, quotients, relational liftings, the
//!   coinduction premise and partition refinement.
//! * [`stdlib`]: the standard example types.
//! * [`registry`]: functors and refinement strategies selected by name.
//! * [`format`]: the document format used by the command-line tool.

pub mod coinductive;
pub mod container;
pub mod error;
pub mod finset;
pub mod format;
pub mod inductive;
pub mod registry;
pub mod stdlib;
pub mod term;

pub use container::{FinitaryFunctor, FunctorRef, IndexedContainer};
pub use error::{Error, Result};
pub use finset::{FinIndexedSet, IndexedMap, Predicate};
#[cfg(feature = "testkit")]
pub mod testkit;
