//! Benchmarks for morrey-core live in `benches/`.
