//! Benchmark-only package; see `benches/workbench.rs`.
