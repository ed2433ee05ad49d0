//! Acceptance checks for `mmwpt`. The checks live in `tests/acceptance.rs`
//! and run with `cargo test -p mmwpt-validation`.
