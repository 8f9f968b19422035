//! Criterion benchmarks for rectlab; see `benches/`.
