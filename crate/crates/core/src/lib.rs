//! Certificates for ampleness, global generation and very ampleness of
//! line bundles `dH - sum m_i E_i` on the blow-up of the plane at `r`
//! general points, together with a finite-field interpolation oracle for
//! the dimension of plane curve systems with assigned multiplicities.
//!
//! Every verdict carries the integer inequalities it rests on, so a caller
//! can re-check a certificate without trusting this crate.

pub mod certificate;
pub mod criteria;
pub mod error;
pub mod inequalities;
pub mod interpolation;
pub mod lattice;
pub mod weyl;

pub use certificate::{Conjecture, HypothesisRecord, Outcome, Property, Relation, Verdict};
pub use criteria::{CertifierId, CriteriaConfig, Multiplicities, UniformBundle};
pub use error::{Error, Result};
pub use lattice::{canonical_class, DivisorClass, NumericalProfile, Permutation};

/// Version of the JSON layout produced by [`Verdict`]'s serializer.
pub const SCHEMA_VERSION: u32 = 1;
