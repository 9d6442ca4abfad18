//! Criterion benchmarks for the sigmalaw engine; see `benches/`.
