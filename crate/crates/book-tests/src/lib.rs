//! The chapters of the guide, so that `cargo test` runs their snippets.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/programs.md")]
pub mod programs {}
#[doc = include_str!("../../../book/src/rdg.md")]
pub mod rdg {}
#[doc = include_str!("../../../book/src/colorings.md")]
pub mod colorings {}
#[doc = include_str!("../../../book/src/support.md")]
pub mod support {}
#[doc = include_str!("../../../book/src/operators.md")]
pub mod operators {}
#[doc = include_str!("../../../book/src/strategies.md")]
pub mod strategies {}
#[doc = include_str!("../../../book/src/wfs.md")]
pub mod wfs {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
