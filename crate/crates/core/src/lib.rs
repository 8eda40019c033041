//! Exact computations for split nilpotent Higgs bundles on smooth
//! projective curves.
//!
//! The input is a direct sum of formal stable summands ("atoms") on a curve
//! of known genus, together with a set of arrows describing a nilpotent
//! Higgs field that maps summands into other summands twisted by the
//! canonical bundle. On this data the crate decides:
//!
//! * ordinary and Higgs slope semistability, with explicit destabilizing
//!   subobjects when they exist ([`stability`]);
//! * nefness of divisor classes `a*xi + b*F` on the projectivization
//!   `P(E)`, in particular of `lambda = xi - mu(E) F`, together with nef
//!   and curve cone generators ([`stability`], [`chow`]);
//! * the component decomposition and cycle classes of the scheme of
//!   rank-one Higgs quotients for chain-shaped Higgs fields, and the
//!   restrictions of `lambda` and `theta_s` to its pieces
//!   ([`higgs_grass`]);
//! * the discriminant `Delta(E) = c2 - ((r-1)/2r) c1^2` and the identity
//!   `2r * Delta(E) = c2(E ⊗ E*)` by formal Chern-root expansion
//!   ([`chern`]).
//!
//! All arithmetic is exact: scalars are arbitrary-precision rationals and
//! no floating point is used anywhere.

pub mod chern;
pub mod chow;
pub mod error;
pub mod higgs_grass;
pub mod model;
pub mod rat;
pub mod stability;

pub use error::{Error, Result};
pub use rat::Rat;
