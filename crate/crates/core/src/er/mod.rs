//! Evidential reasoning aggregation of one general attribute from its
//! weighted basic attributes.

mod aggregate;
mod assessment;
pub mod axioms;

pub use aggregate::{
    aggregate, aggregate_traced, e2r_aggregate, mer_aggregate, oer_aggregate, Algorithm,
    WEIGHT_SUM_TOLERANCE,
};
pub use assessment::{AggregationTrace, Assessment, CombinedAssessment, TraceStep, WeightedAssessment};
pub use axioms::{audit_axioms, check_axiom, AuditReport, Axiom, AxiomTally, AxiomVerdict};
