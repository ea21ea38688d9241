//! Certificates for the case analysis showing that 15 points span at most 37
//! unit distances.

mod certs;
mod geometry;
mod gn;
mod profile;

pub use certs::{
    certify_case, certify_case_c6, certify_case_p3p3, certify_case_p3p3_with, certify_case_p4p2,
    certify_case_p4p2_with, certify_case_p5p1, neighborhood_label, p3p3_instance, p4p2_instance, p5p1_instance,
    recheck_instance, CaseCertificate, CaseLabel, Fact, FactKind, Instance, NamedPoint, Relation, Verdict,
};
pub use geometry::{hexagon, rotate, sample_offsets};
pub use gn::{enumerate_gn_types, type_label, Component, GnEnumeration, GnType, NeighborhoodConfiguration};
pub use profile::{derive_degree_profile, verify_observation_chain, DegreeProfile, IntegerFact, ObservationReport};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CaseError {
    #[error("rejected: {0}")]
    Rejected(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("unknown case {0:?}; expected C6, P5P1, P4P2 or P3P3")]
    UnknownCase(String),
    #[error("unusable offset: {0}")]
    BadOffset(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
