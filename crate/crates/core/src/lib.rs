//! Construction, verification, and arithmetic sieving of 2-designs that
//! admit a flag-transitive automorphism group.
//!
//! The crate is organized bottom-up:
//!
//! * [`ff`]: small finite fields GF(p^a) with deterministic defining
//!   polynomials, Frobenius powers, and the characteristic-2 twist used by
//!   Suzuki groups.
//! * [`perm`]: permutations, deterministic stabilizer chains
//!   (base/strong-generating-set), orbit and block-system algorithms, and
//!   flag-transitivity testing.
//! * [`geom`]: projective spaces over GF(q), their point/hyperplane and
//!   line-derived designs, Hermitian unitals, and the [`geom::Design`]
//!   container shared by every family.
//! * [`atlas`]: permutation-group constructors (linear, unitary, Suzuki,
//!   Ree, and a small catalog of named groups), each validated against an
//!   order formula before being returned.
//! * [`families`]: the design families attached to those groups, base-block
//!   searches, and the thirteen-row catalog of small flag-transitive designs
//!   with exceptional automorphism groups.
//! * [`verify`]: exhaustive and sampled design verification with witnesses.
//! * [`sieve`]: exact integer machinery for eliminating candidate parameter
//!   tuples (replication-number divisor analysis, subdegree data, parabolic
//!   indices, and bulk case files).
//!
//! All verification is certificate-based: constructors recompute group
//! orders through the stabilizer chain and compare against closed-form
//! order formulas, and every design constructor re-checks its parameters
//! from the block list rather than trusting the construction.

pub mod atlas;
pub mod error;
pub mod families;
pub mod ff;
pub mod geom;
pub mod perm;
pub mod sieve;
pub mod verify;

pub use error::{Error, Result};
pub use geom::Design;
