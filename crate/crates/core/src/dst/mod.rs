//! Dempster-Shafer primitives.
//!
//! [`MassFunction`] is the specialised representation used throughout the
//! crate: mass on singleton grades, on the whole frame, and optionally on the
//! indecisiveness element Ω introduced by importance discounting. Its
//! combination rules are closed forms that run in O(N).
//!
//! [`GeneralMassFunction`] covers the whole power set and exists to check the
//! closed forms and to answer belief/plausibility queries on arbitrary subsets.

mod frame;
mod general;
mod mass;

pub use frame::GradeFrame;
pub use general::{GeneralMassFunction, GradeSet, MAX_COMBINE_GRADES, MAX_SET_GRADES};
pub use mass::{MassFunction, MassKind};

pub(crate) use mass::residual;
