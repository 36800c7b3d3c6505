//! A computational workbench for finite pointless topology.
//!
//! Everything here is desk scale: spaces are finite posets, frames are finite
//! distributive lattices, and "quantales" are finite commutative monoidal
//! posets. At this scale every classical construction of locale theory is an
//! enumeration, so instead of proving theorems we run them: the coidempotent
//! lattice of a quantale is rebuilt element by element and checked to be a
//! frame, sheaf conditions are compared against a sieve-by-sieve gluing
//! oracle, adjunctions are certified by explicit transposition bijections,
//! and spatiality is the literal reconstruction of a lattice from its points.
//!
//! Modules:
//! - [`poset`]: finite posets, monotone maps, downsets, directed subsets.
//! - [`lattice`]: semilattices and distributive lattices, classification,
//!   points, spatial reconstruction, irreducible-element representation,
//!   frame pushouts, hom enumeration.
//! - [`quantale`]: commutative monoidal posets, idempotent and coidempotent
//!   objects, the coidempotent frame, and the two transposition adjunctions.
//! - [`sheaves`]: presheaves on finite frames, covering sieves, the gluing
//!   oracle and the fast sheaf criterion, sheafification, subterminal
//!   sheaves, day products.
//! - [`catloc`]: categorified locales (a frame structured over a quantale)
//!   and their embedding into arrow squares.
//! - [`catalog`]: the named standard structures used throughout the tests.
//! - [`enumerate`]: exhaustive enumeration of posets and distributive
//!   lattices up to isomorphism.
//! - [`suite`]: the executable verification battery.

pub mod catalog;
pub mod catloc;
pub mod enumerate;
pub mod lattice;
pub mod poset;
pub mod quantale;
pub mod sheaves;
pub mod suite;

pub use catloc::{QLocale, QLocaleMorphism};
pub use lattice::{DistLattice, LatticeMorphism, MorphismKind, Semilattice};
pub use poset::{DownSet, FinPoset, MonotoneMap};
pub use quantale::{CIdemPoset, MonoidalPoset, QuantaleFlags};
pub use sheaves::{MatchingFamily, Presheaf, PresheafMorphism, Sieve};
