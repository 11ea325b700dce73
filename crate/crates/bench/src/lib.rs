//! Criterion benchmarks for `bratu-core`; see `benches/`.
