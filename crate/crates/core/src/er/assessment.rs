use serde::{Deserialize, Serialize};

use crate::dst::{residual, GradeFrame, MassFunction};
use crate::error::{check_unit, Error, Result, SUM_TOLERANCE};

/// A distributed assessment: belief degrees over the grades of a frame.
///
/// Degrees may sum to less than one; the shortfall is unassigned belief.
#[derive(Debug, Clone, PartialEq)]
pub struct Assessment {
    frame: GradeFrame,
    degrees: Vec<f64>,
}

impl Assessment {
    pub fn new(frame: GradeFrame, degrees: Vec<f64>) -> Result<Self> {
        if degrees.len() != frame.len() {
            return Err(Error::FrameMismatch);
        }
        for (label, &d) in frame.labels().iter().zip(&degrees) {
            check_unit(format!("degree of `{label}`"), d)?;
        }
        residual(degrees.iter().sum())?;
        Ok(Assessment { frame, degrees })
    }

    /// Degrees from `(grade, degree)` pairs; unnamed grades get zero.
    pub fn from_grades(frame: GradeFrame, degrees: &[(&str, f64)]) -> Result<Self> {
        let mut d = vec![0.0; frame.len()];
        for &(label, degree) in degrees {
            d[frame.index_of(label)?] += degree;
        }
        Self::new(frame, d)
    }

    /// Precisely assessed to one grade.
    pub fn certain(frame: GradeFrame, grade: &str) -> Result<Self> {
        Self::from_grades(frame, &[(grade, 1.0)])
    }

    pub fn frame(&self) -> &GradeFrame {
        &self.frame
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn degree(&self, index: usize) -> f64 {
        self.degrees[index]
    }

    pub fn assigned(&self) -> f64 {
        self.degrees.iter().sum()
    }

    pub fn unassigned(&self) -> f64 {
        (1.0 - self.assigned()).max(0.0)
    }

    pub fn is_complete(&self) -> bool {
        self.unassigned() <= SUM_TOLERANCE
    }

    /// Singleton masses are the degrees; the unassigned part goes to the frame.
    pub fn to_bba(&self) -> MassFunction {
        MassFunction::bba(self.frame.clone(), self.degrees.clone(), self.unassigned())
            .expect("a valid assessment maps to a valid BBA")
    }
}

/// An assessment together with the factors the aggregators read.
///
/// OER and MER use `weight`; E²R uses `reliability` and `importance`.
/// All three default to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedAssessment {
    assessment: Assessment,
    weight: f64,
    reliability: f64,
    importance: f64,
}

impl WeightedAssessment {
    pub fn new(assessment: Assessment) -> Self {
        WeightedAssessment {
            assessment,
            weight: 1.0,
            reliability: 1.0,
            importance: 1.0,
        }
    }

    pub fn with_weight(mut self, weight: f64) -> Result<Self> {
        self.weight = check_unit("weight", weight)?;
        Ok(self)
    }

    pub fn with_reliability(mut self, reliability: f64) -> Result<Self> {
        self.reliability = check_unit("reliability", reliability)?;
        Ok(self)
    }

    pub fn with_importance(mut self, importance: f64) -> Result<Self> {
        self.importance = check_unit("importance", importance)?;
        Ok(self)
    }

    pub fn assessment(&self) -> &Assessment {
        &self.assessment
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn reliability(&self) -> f64 {
        self.reliability
    }

    pub fn importance(&self) -> f64 {
        self.importance
    }
}

/// Aggregated belief degrees for a general attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedAssessment {
    frame: GradeFrame,
    assigned: Vec<f64>,
    unassigned: f64,
}

impl CombinedAssessment {
    pub(crate) fn new(frame: GradeFrame, assigned: Vec<f64>, unassigned: f64) -> Self {
        CombinedAssessment {
            frame,
            assigned,
            unassigned,
        }
    }

    /// A basic attribute's own assessment, viewed as a result.
    pub fn from_assessment(a: &Assessment) -> Self {
        Self::new(a.frame().clone(), a.degrees().to_vec(), a.unassigned())
    }

    /// Reads the result off a plain BBA.
    pub fn from_bba(m: &MassFunction) -> Result<Self> {
        if m.omega() != 0.0 {
            return Err(Error::NotPlainBba);
        }
        Ok(Self::new(m.frame().clone(), m.singletons().to_vec(), m.ignorance()))
    }

    pub fn frame(&self) -> &GradeFrame {
        &self.frame
    }

    /// β_n for each grade.
    pub fn assigned(&self) -> &[f64] {
        &self.assigned
    }

    /// β_𝓗, belief left unassigned to any single grade.
    pub fn unassigned(&self) -> f64 {
        self.unassigned
    }

    pub fn total(&self) -> f64 {
        self.assigned.iter().sum::<f64>() + self.unassigned
    }

    pub fn max_abs_diff(&self, other: &CombinedAssessment) -> f64 {
        if self.frame != other.frame {
            return f64::INFINITY;
        }
        self.assigned
            .iter()
            .zip(&other.assigned)
            .map(|(a, b)| (a - b).abs())
            .chain([(self.unassigned - other.unassigned).abs()])
            .fold(0.0, f64::max)
    }

    /// Treats the result as an (possibly incomplete) input assessment one level up.
    pub fn to_assessment(&self) -> Assessment {
        // rounding can push components a hair outside [0, 1]
        let degrees = self.assigned.iter().map(|d| d.clamp(0.0, 1.0)).collect::<Vec<_>>();
        let sum: f64 = degrees.iter().sum();
        let degrees = if sum > 1.0 {
            degrees.into_iter().map(|d| d / sum).collect()
        } else {
            degrees
        };
        Assessment::new(self.frame.clone(), degrees).expect("clamped degrees are valid")
    }
}

/// One step of the recursive aggregation: the masses of the first `i` sources
/// combined, and the normalising factor used to get there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub singletons: Vec<f64>,
    /// m_𝓗 (OER) or the incompleteness part m̃_𝓗 (MER, E²R).
    pub ignorance: f64,
    /// m̄_𝓗 / m(Ω); always zero for OER.
    pub omega: f64,
    /// `None` for the seeding step.
    pub normaliser: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AggregationTrace {
    pub steps: Vec<TraceStep>,
}
