//! Exact computations with higher derivations and torsion theories over
//! univariate polynomial rings.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`]: exact polynomials over `Q` and `Z`, affine automorphisms,
//!   principal and colon ideals.
//! * [`operators`]: higher derivations, operator words and the twisted
//!   `(α, β)` Leibniz expansion with its reduction to the classical law.
//! * [`filters`]: Gabriel filters generated by powers of a polynomial,
//!   invariance witnesses and the inductive witness construction trace.
//! * [`quotients`]: finitely generated `Q[x]`-modules, Smith normal form,
//!   torsion submodules, modules of quotients and the extension of
//!   (higher) derivations to them.
//! * [`symmetric`]: finite-dimensional algebras, the enveloping algebra
//!   `R ⊗ R^op` and the lift of higher derivations to it.
//! * [`counterexample`]: a torsion theory on `Z[x]` that is neither
//!   hereditary nor differential.
//! * [`suite`]: seeded verification runs producing JSON reports.

pub mod counterexample;
pub mod error;
pub mod filters;
pub mod operators;
pub mod quotients;
pub mod report;
pub mod ring;
pub mod sampling;
pub mod suite;
pub mod symmetric;

pub use error::{Error, Result};
pub use report::{CheckReport, Status};
pub use ring::{Automorphism, Domain, Poly, PrincipalIdeal, Rational};
