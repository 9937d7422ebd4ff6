//! Exact arithmetic for simply-laced root systems at the even root of unity
//! ζ = exp(2πi / 2(h∨+1)).
//!
//! The crate verifies, in exact cyclotomic/rational arithmetic, two facts and
//! their supporting combinatorics:
//!
//! * quantum dimensions of the l-fundamental modules of the quantum loop
//!   algebra (hence of all standard modules) at ζ are 1 ([`repdata`], [`qdim`]);
//! * the generating function of Euler numbers of Hilbert schemes of points on
//!   a Kleinian singularity C²/Γ equals the root-of-unity specialization of
//!   the level-one Fock-space character ([`fock`]), cross-checked against an
//!   independent staircase count in type A ([`oracle`]) and against a
//!   stratification recursion ([`strata`]).
//!
//! No floating point is used anywhere: integers are `i64`/`BigInt`, rationals
//! are `BigRational`, and root-of-unity arithmetic happens in Q[x]/(Φ_m).

pub mod charlab;
pub mod cyclo;
pub mod error;
pub mod fock;
pub mod oracle;
pub mod qdim;
pub mod repdata;
pub mod rootsys;
pub mod strata;

pub use error::{Error, Result};

/// Default cap on `dim V(λ)` for Freudenthal-style character expansions.
pub const DEFAULT_DIM_GUARD: u64 = 1_000_000;
/// Default cap on the product of total masses in a character convolution.
pub const DEFAULT_MASS_GUARD: u64 = 10_000_000;
