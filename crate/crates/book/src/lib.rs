//! The guide under `book/src`, one module per chapter, so that every
//! listing runs as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("../../../book/src/higher-derivations.md")]
pub mod higher_derivations {}
#[doc = include_str!("../../../book/src/filters.md")]
pub mod filters {}
#[doc = include_str!("../../../book/src/modules-of-quotients.md")]
pub mod modules_of_quotients {}
#[doc = include_str!("../../../book/src/enveloping-algebra.md")]
pub mod enveloping_algebra {}
#[doc = include_str!("../../../book/src/counterexample.md")]
pub mod counterexample {}
#[doc = include_str!("../../../book/src/running-checks.md")]
pub mod running_checks {}
