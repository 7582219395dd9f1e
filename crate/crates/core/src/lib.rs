//! Exact entourage algebra, verbal powers and covering invariants of finite
//! topological spaces, with a harness that checks the relations between
//! those invariants on enumerated and random spaces.

pub mod cover;
pub mod entourage;
pub mod invariants;
pub mod pointset;
pub mod solver;
pub mod space;
pub mod verify;
pub mod word;

pub use cover::OpenCover;
pub use entourage::{Entourage, RelationAlgebra, StandardAlgebra};
pub use invariants::{Analyzer, Invariant, InvariantReport};
pub use pointset::PointSet;
pub use space::FiniteSpace;
pub use word::{BinaryWord, Lead, Letter};
