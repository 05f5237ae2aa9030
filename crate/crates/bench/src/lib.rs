//! Benchmark harness for the `ar-iet` crate; see `benches/`.
