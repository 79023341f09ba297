//! Exact, finitely representable models of countable anti-Urysohn spaces
//! and finite fragments of the combinatorics used to build them.
//!
//! * [`points`]: Cantor-cube points with periodic tails and clopen boxes.
//! * [`glue`]: the space obtained from a dense `Y` by collapsing each
//!   `K_α` to a point, with decidable closures.
//! * [`qroot3`], [`bing`]: Bing's irrational-slope space over `ℚ(√3)`.
//! * [`reaping`]: round-robin reapers and the one-point extension ladder.
//! * [`star`]: partition sequences on `K × M`, dyadicity, strengthening and
//!   the splitting fiber map.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod bing;
pub mod glue;
pub mod points;
pub mod qroot3;
pub mod reaping;
pub mod star;

use core::fmt;

pub use bing::{AxisSystem, BingPoint};
pub use glue::{GlueOpen, GluePoint, Generator};
pub use points::{Class, ClopenBox, CubePoint, Tail};
pub use qroot3::QRoot3;
pub use star::StarFragment;

/// Failure to read one of the textual encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    what: &'static str,
    input: alloc::string::String,
}

impl ParseError {
    pub(crate) fn new(what: &'static str, input: &str) -> Self {
        ParseError { what, input: input.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed {}: {:?}", self.what, self.input)
    }
}

impl core::error::Error for ParseError {}
