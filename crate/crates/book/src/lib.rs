//! Guide chapters compiled as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/blocks.md")]
pub mod blocks {}

#[doc = include_str!("../../../book/src/recursion.md")]
pub mod recursion {}

#[doc = include_str!("../../../book/src/framework.md")]
pub mod framework {}

#[doc = include_str!("../../../book/src/exham.md")]
pub mod exham {}

#[doc = include_str!("../../../book/src/online.md")]
pub mod online {}

#[doc = include_str!("../../../book/src/simulation.md")]
pub mod simulation {}
