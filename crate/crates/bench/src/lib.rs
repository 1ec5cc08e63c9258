//! Benchmarks for the mindex engine live in `benches/`.
