//! Exact calculus for symplectic and linear generator words over commutative
//! rings: elementary matrices and transvections, Steinberg words and symbols,
//! Pfaffians, Witt-type representatives of alternating matrices, excision
//! lifts, unimodular row completion and patching.
//!
//! Everything is exact: no floats, no randomized verification. Arithmetic
//! lives in [`rings`], matrices in [`matrix`], and the generator calculi in
//! the remaining modules.

pub mod commands;
pub mod completion;
pub mod document;
pub mod elementary;
pub mod error;
pub mod lifts;
pub mod matrix;
pub mod rings;
pub mod sample;
pub mod steinberg;
pub mod suites;
pub mod witt;

pub use error::{Error, Result};
