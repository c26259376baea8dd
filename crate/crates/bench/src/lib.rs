//! Criterion benchmarks for `ecnc-core`; see `benches/`.
