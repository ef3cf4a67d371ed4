//! Generalized depolarizing channels: output purity, Holevo capacity
//! certificates, and a reproducible experiment runner.
//!
//! The guide under `book/` walks through the concepts; its code blocks are
//! compiled and run as doctests of this crate.

pub mod capacity;
pub mod channels;
pub mod error;
pub mod experiment;
pub mod matcore;
pub mod measures;
pub mod sample;

pub use error::{Error, Result};

// mdbook can't run snippets that depend on this crate, so the chapters are
// pulled in here and checked by `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/channels.md")]
    mod channels {}
    #[doc = include_str!("../../../book/src/purity.md")]
    mod purity {}
    #[doc = include_str!("../../../book/src/capacity.md")]
    mod capacity {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
