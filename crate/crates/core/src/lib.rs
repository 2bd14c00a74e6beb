//! Computations on simple binary matroids: flats and induced minors,
//! canonical forms, conings, projective targets, spikes, and exhaustive
//! checks of structural characterizations over small ground sets.

pub mod constructs;
pub mod elements;
pub mod error;
pub mod format;
pub mod gf2;
pub mod isomorph;
pub mod matroid;
pub mod minors;
pub mod verify;

pub use elements::ElementSet;
pub use error::{Error, Result};
pub use isomorph::{are_isomorphic, canonical_form, CanonicalForm};
pub use gf2::{Gf2Basis, Gf2Point};
pub use matroid::{BinaryMatroid, ElementFate, ElementMap, Flat, VectorMatroid};
pub use verify::{enumerate_matroids, verify_theorem, EnumerationScope, VerificationReport};
