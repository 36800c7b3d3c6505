//! Batch front end for the finite pointless-topology workbench.
//!
//! The binary reads JSON documents declaring posets, lattices, quantales,
//! morphisms, presheaves, and structured frames, runs one operation from
//! the core library over everything declared, and prints a report — plain
//! text or JSON. JSON reports embed any constructed structures in the same
//! document format the binary reads, so one run's output feeds the next.
//!
//! Exit codes: `0` when every check passed, `1` when a mathematical check
//! failed (the report carries the witness), `2` on input errors.

pub mod ops;
pub mod schema;
