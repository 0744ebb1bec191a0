//! Axiom bases: the group families, type classification, the
//! self-referential consistency sentence, the basis builder, consistency
//! probes, and the basis file format.

pub mod basis;
pub mod classify;
pub mod enumerate;
pub mod group0;
pub mod group1;
pub mod hilbert;
pub mod is_builder;
pub mod probe;
pub mod selfref;

pub use basis::{AxiomBasis, AxiomTag, BasisError};
pub use classify::{classify_type, EqStatus, TypeClass, TypeEvidence};
pub use enumerate::enumerate_sentences;
pub use is_builder::{build_is, IsOptions};
pub use probe::{probe_level1, ProbeOutcome, ProbeReport};
pub use selfref::build_selfref;
