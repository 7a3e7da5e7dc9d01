//! Benchmark harness for `shellgap-core`; see `benches/`.
