//! Placeholder library target; the package exists for its benchmarks
//! (`cargo bench -p nccr-bench`).
