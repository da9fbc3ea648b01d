//! From combined assessments to a ranking: spread the unassigned belief
//! evenly over the grades, take expected utilities, sort.

use crate::dst::GradeFrame;
use crate::er::{Algorithm, CombinedAssessment};
use crate::error::{check_unit, Error, Result, SUM_TOLERANCE};
use crate::hierarchy::{EvaluateOptions, Evaluation, EvaluationModel};

/// Utility of each grade, in frame order.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityFunction {
    frame: GradeFrame,
    values: Vec<f64>,
}

impl UtilityFunction {
    pub fn new(frame: GradeFrame, values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.len() {
            return Err(Error::FrameMismatch);
        }
        for (label, &u) in frame.labels().iter().zip(&values) {
            check_unit(format!("u({label})"), u)?;
        }
        Ok(UtilityFunction { frame, values })
    }

    /// u(H_n) = n / N, e.g. 0.2, 0.4, .., 1.0 on five grades.
    pub fn linear(frame: GradeFrame) -> Self {
        let n = frame.len() as f64;
        let values = (1..=frame.len()).map(|i| i as f64 / n).collect();
        UtilityFunction { frame, values }
    }

    pub fn frame(&self) -> &GradeFrame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

/// β'_n = β_n + β_𝓗 / N.
pub fn redistribute_unknown(c: &CombinedAssessment) -> Vec<f64> {
    let share = c.unassigned() / c.frame().len() as f64;
    c.assigned().iter().map(|b| b + share).collect()
}

/// Σ β'_n u(H_n).
pub fn expected_utility(degrees: &[f64], utility: &UtilityFunction) -> Result<f64> {
    if degrees.len() != utility.values.len() {
        return Err(Error::FrameMismatch);
    }
    let sum: f64 = degrees.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::MassSum { sum });
    }
    Ok(degrees.iter().zip(&utility.values).map(|(b, u)| b * u).sum())
}

/// Alternatives by descending utility. Ties keep input order.
pub fn rank(utilities: &[(String, f64)]) -> Result<Vec<String>> {
    if utilities.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut order: Vec<&(String, f64)> = utilities.iter().collect();
    // stable sort keeps declaration order among equal utilities
    order.sort_by(|a, b| b.1.total_cmp(&a.1));
    Ok(order.into_iter().map(|(id, _)| id.clone()).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlternativeOutcome {
    pub alternative: String,
    /// β'_n after redistributing the unassigned belief.
    pub redistributed: Vec<f64>,
    pub utility: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedResult {
    pub algorithm: Algorithm,
    pub outcomes: Vec<AlternativeOutcome>,
    pub ranking: Vec<String>,
}

impl RankedResult {
    pub fn utility_of(&self, alternative: &str) -> Option<f64> {
        self.outcomes
            .iter()
            .find(|o| o.alternative == alternative)
            .map(|o| o.utility)
    }
}

/// Applies the decision layer to root evaluations, one per alternative.
pub fn decide(evaluations: &[Evaluation], utility: &UtilityFunction) -> Result<RankedResult> {
    let algorithm = evaluations.first().ok_or(Error::EmptyInput)?.algorithm;
    let mut outcomes = Vec::with_capacity(evaluations.len());
    for e in evaluations {
        let redistributed = redistribute_unknown(e.root());
        let utility = expected_utility(&redistributed, utility)?;
        outcomes.push(AlternativeOutcome {
            alternative: e.alternative.clone(),
            redistributed,
            utility,
        });
    }
    let utilities: Vec<(String, f64)> = outcomes
        .iter()
        .map(|o| (o.alternative.clone(), o.utility))
        .collect();
    Ok(RankedResult {
        algorithm,
        ranking: rank(&utilities)?,
        outcomes,
    })
}

/// Per-alternative node results plus the decision layer for one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct Run {
    pub evaluations: Vec<Evaluation>,
    pub ranked: RankedResult,
}

pub fn run(model: &EvaluationModel, algorithm: Algorithm, options: EvaluateOptions) -> Result<Run> {
    let evaluations = model.evaluate_all(algorithm, options)?;
    let ranked = decide(&evaluations, &model.utility)?;
    Ok(Run { evaluations, ranked })
}
