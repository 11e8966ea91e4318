//! Benchmark-only crate; see `benches/designs.rs`.
//!
//! Run with `cargo bench -p gdesign-bench`.
