//! Guide samples.

#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}

#[doc = include_str!("../../../book/src/arithmetic.md")]
pub mod arithmetic {}

#[doc = include_str!("../../../book/src/classes.md")]
pub mod classes {}

#[doc = include_str!("../../../book/src/chartab.md")]
pub mod chartab {}

#[doc = include_str!("../../../book/src/dl.md")]
pub mod dl {}

#[doc = include_str!("../../../book/src/stability.md")]
pub mod stability {}

#[doc = include_str!("../../../book/src/sl3.md")]
pub mod sl3 {}

#[doc = include_str!("../../../book/src/parahoric.md")]
pub mod parahoric {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
