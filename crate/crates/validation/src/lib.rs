//! Holds the `acceptance` integration target; run it with
//! `cargo test -p rabi-validation --test acceptance -- --nocapture`.
