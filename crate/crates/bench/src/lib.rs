//! Criterion benchmarks for glab-core live under `benches/`.
