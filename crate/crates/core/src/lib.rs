//! Exact counting of integer compositions under coprimality constraints.
//!
//! Three independent routes are provided for every count so they can be
//! checked against each other:
//!
//! - direct enumeration of compositions ([`counting::brute_count`]),
//! - divisor-sum identities built on multiplicative functions of several
//!   variables ([`counting::mobius_r`], [`counting::identity_a`],
//!   [`counting::identity_b`]),
//! - asymptotic main terms with Euler-product constants
//!   ([`asymptotics`]).
//!
//! Hot loops (enumeration, prime products, scans) run on rayon when the
//! `parallel` feature is enabled; see [`exec::Mode`].

pub mod asymptotics;
pub mod counting;
pub mod error;
pub mod exec;
pub mod multifunc;
pub mod numtheory;
pub mod partitions;
pub mod polynomials;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Mode;
pub use multifunc::{ConstraintKind, CoprimalityConstraint, ExponentTuple, Kernels};
pub use numtheory::{Factorization, PrimeTable};
pub use partitions::WeightVector;
pub use polynomials::IntegerPolynomial;
