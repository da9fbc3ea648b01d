//! Evidential reasoning for multiple attribute decision analysis.
//!
//! Belief structures over a frame of evaluation grades are combined with
//! Dempster's rule after reliability discounting, importance discounting,
//! or both. The three aggregation algorithms built on them:
//!
//! * OER, where each attribute's weight acts as a reliability,
//! * MER, where weights are normalised importances,
//! * E2R, which takes reliability and importance as separate inputs.
//!
//! ```
//! use erkit::dst::GradeFrame;
//! use erkit::er::{e2r_aggregate, Assessment, WeightedAssessment};
//!
//! let frame = GradeFrame::five_point();
//! let item = |grades: &[(&str, f64)], alpha, beta| {
//!     WeightedAssessment::new(Assessment::from_grades(frame.clone(), grades).unwrap())
//!         .with_reliability(alpha)
//!         .and_then(|w| w.with_importance(beta))
//!         .unwrap()
//! };
//! let brakes = e2r_aggregate(&[
//!     item(&[("E", 1.0)], 0.9, 0.4),
//!     item(&[("A", 0.4), ("G", 0.6)], 0.7, 0.3),
//!     item(&[("G", 0.5), ("E", 0.3)], 0.2, 0.3),
//! ])
//! .unwrap();
//! assert!(brakes.unassigned() > 0.0);
//! ```
//!
//! Hierarchies of attributes live in [`hierarchy`], ranking in
//! [`decision`], JSON documents and the bundled motorcycle dataset in
//! [`io`].

pub mod commands;
pub mod decision;
pub mod dst;
pub mod er;
mod error;
pub mod hierarchy;
pub mod io;

pub use error::{Error, Result, CONFLICT_TOLERANCE, SUM_TOLERANCE};
