pub mod error;
pub mod experiment;
pub mod fredholm;
pub mod geometry;
pub mod kernels;
pub mod scaling;
pub mod sim;
pub mod special;

pub use error::{Error, Result};

/// Crate version, recorded in every output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

// The guide's code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/fredholm.md")]
    mod fredholm {}
    #[doc = include_str!("../../../book/src/scaling.md")]
    mod scaling {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
