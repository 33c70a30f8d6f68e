//! Each chapter of the book is a module here so that `cargo test --doc`
//! runs its snippets against the real crates.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/canonical.md")]
pub mod canonical {}
#[doc = include_str!("../../../book/src/chains.md")]
pub mod chains {}
#[doc = include_str!("../../../book/src/operators.md")]
pub mod operators {}
#[doc = include_str!("../../../book/src/homology.md")]
pub mod homology {}
#[doc = include_str!("../../../book/src/suite.md")]
pub mod suite {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
