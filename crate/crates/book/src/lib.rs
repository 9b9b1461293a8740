//! The chapters of the guide in `book/src`, compiled so that every code
//! sample in them runs under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/formulas.md")]
pub mod formulas {}

#[doc = include_str!("../../../book/src/rook.md")]
pub mod rook {}

#[doc = include_str!("../../../book/src/probe.md")]
pub mod probe {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
