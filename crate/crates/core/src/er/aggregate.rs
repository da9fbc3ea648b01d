//! Flat (two-level) aggregation of weighted assessments.
//!
//! Each algorithm is written out as its own recursion over belief masses
//! rather than as a composition of the [`dst`](crate::dst) operators, so the
//! two routes can be checked against each other.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dst::GradeFrame;
use crate::er::assessment::{AggregationTrace, CombinedAssessment, TraceStep, WeightedAssessment};
use crate::error::{Error, Result, CONFLICT_TOLERANCE};

/// Tolerance on Σw = 1 for the modified algorithm.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Original ER: weights act as reliabilities.
    Oer,
    /// Modified ER: weights act as normalised importances.
    Mer,
    /// Extended ER: separate reliability and importance.
    E2r,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Oer, Algorithm::Mer, Algorithm::E2r];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Oer => "oer",
            Algorithm::Mer => "mer",
            Algorithm::E2r => "e2r",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Algorithm::Oer => "OER",
            Algorithm::Mer => "MER",
            Algorithm::E2r => "E2R",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.display_name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "oer" => Ok(Algorithm::Oer),
            "mer" => Ok(Algorithm::Mer),
            "e2r" => Ok(Algorithm::E2r),
            other => Err(format!("unknown algorithm `{other}` (expected oer, mer or e2r)")),
        }
    }
}

pub fn aggregate(algorithm: Algorithm, items: &[WeightedAssessment]) -> Result<CombinedAssessment> {
    match algorithm {
        Algorithm::Oer => oer(items, None),
        Algorithm::Mer => mer(items, None),
        Algorithm::E2r => e2r(items, None),
    }
}

pub fn aggregate_traced(
    algorithm: Algorithm,
    items: &[WeightedAssessment],
) -> Result<(CombinedAssessment, AggregationTrace)> {
    let mut trace = AggregationTrace::default();
    let out = match algorithm {
        Algorithm::Oer => oer(items, Some(&mut trace)),
        Algorithm::Mer => mer(items, Some(&mut trace)),
        Algorithm::E2r => e2r(items, Some(&mut trace)),
    }?;
    Ok((out, trace))
}

pub fn oer_aggregate(items: &[WeightedAssessment]) -> Result<CombinedAssessment> {
    oer(items, None)
}

pub fn mer_aggregate(items: &[WeightedAssessment]) -> Result<CombinedAssessment> {
    mer(items, None)
}

pub fn e2r_aggregate(items: &[WeightedAssessment]) -> Result<CombinedAssessment> {
    e2r(items, None)
}

fn shared_frame(items: &[WeightedAssessment]) -> Result<&GradeFrame> {
    let first = items.first().ok_or(Error::EmptyInput)?;
    let frame = first.assessment().frame();
    for item in &items[1..] {
        frame.ensure_same(item.assessment().frame())?;
    }
    Ok(frame)
}

/// 1 - Σ_j Σ_{p≠j} a_j b_p
fn agreement(a: &[f64], b: &[f64]) -> f64 {
    let mut conflict = 0.0;
    for (j, aj) in a.iter().enumerate() {
        for (p, bp) in b.iter().enumerate() {
            if p != j {
                conflict += aj * bp;
            }
        }
    }
    1.0 - conflict
}

fn oer(items: &[WeightedAssessment], mut trace: Option<&mut AggregationTrace>) -> Result<CombinedAssessment> {
    let frame = shared_frame(items)?;

    // weighted belief distribution of one source
    let weighted = |item: &WeightedAssessment| {
        let w = item.weight();
        let m: Vec<f64> = item.assessment().degrees().iter().map(|b| w * b).collect();
        let m_h = 1.0 - m.iter().sum::<f64>();
        (m, m_h)
    };

    let (mut m, mut m_h) = weighted(&items[0]);
    if let Some(t) = trace.as_deref_mut() {
        t.steps.push(TraceStep {
            singletons: m.clone(),
            ignorance: m_h,
            omega: 0.0,
            normaliser: None,
        });
    }

    for item in &items[1..] {
        let (next, next_h) = weighted(item);
        let denom = agreement(&m, &next);
        if denom <= CONFLICT_TOLERANCE {
            return Err(Error::CompleteConflict);
        }
        let k = 1.0 / denom;
        m = m
            .iter()
            .zip(&next)
            .map(|(a, b)| k * (a * b + a * next_h + m_h * b))
            .collect();
        m_h = k * m_h * next_h;
        if let Some(t) = trace.as_deref_mut() {
            t.steps.push(TraceStep {
                singletons: m.clone(),
                ignorance: m_h,
                omega: 0.0,
                normaliser: Some(k),
            });
        }
    }

    Ok(CombinedAssessment::new(frame.clone(), m, m_h))
}

/// Masses of one source split three ways: singletons, the incompleteness
/// part of the remainder, and the part left for other sources.
struct Split {
    singletons: Vec<f64>,
    incomplete: f64,
    deferred: f64,
}

fn mer(items: &[WeightedAssessment], trace: Option<&mut AggregationTrace>) -> Result<CombinedAssessment> {
    let frame = shared_frame(items)?;
    let sum: f64 = items.iter().map(WeightedAssessment::weight).sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(Error::WeightSum { sum });
    }
    let splits = items.iter().map(|item| {
        let w = item.weight();
        let a = item.assessment();
        Split {
            singletons: a.degrees().iter().map(|b| w * b).collect(),
            incomplete: w * (1.0 - a.assigned()),
            deferred: 1.0 - w,
        }
    });
    fold_split(frame, splits, trace)
}

fn e2r(items: &[WeightedAssessment], trace: Option<&mut AggregationTrace>) -> Result<CombinedAssessment> {
    let frame = shared_frame(items)?;
    if items.iter().all(|i| i.importance() == 0.0) {
        return Err(Error::DegenerateOmega);
    }
    let splits = items.iter().map(|item| {
        let (alpha, beta) = (item.reliability(), item.importance());
        let a = item.assessment();
        Split {
            singletons: a.degrees().iter().map(|b| alpha * beta * b).collect(),
            incomplete: alpha * beta * (1.0 - a.assigned()) + (1.0 - alpha) * beta,
            deferred: 1.0 - beta,
        }
    });
    fold_split(frame, splits, trace)
}

fn fold_split(
    frame: &GradeFrame,
    mut splits: impl Iterator<Item = Split>,
    mut trace: Option<&mut AggregationTrace>,
) -> Result<CombinedAssessment> {
    let Split {
        singletons: mut m,
        incomplete: mut m_tilde,
        deferred: mut m_bar,
    } = splits.next().ok_or(Error::EmptyInput)?;
    if let Some(t) = trace.as_deref_mut() {
        t.steps.push(TraceStep {
            singletons: m.clone(),
            ignorance: m_tilde,
            omega: m_bar,
            normaliser: None,
        });
    }

    for next in splits {
        let denom = agreement(&m, &next.singletons);
        if denom <= CONFLICT_TOLERANCE {
            return Err(Error::CompleteConflict);
        }
        let k = 1.0 / denom;
        let rest = m_bar + m_tilde;
        let next_rest = next.deferred + next.incomplete;
        m = m
            .iter()
            .zip(&next.singletons)
            .map(|(a, b)| k * (a * b + a * next_rest + rest * b))
            .collect();
        m_tilde = k * (m_tilde * next.incomplete + m_tilde * next.deferred + m_bar * next.incomplete);
        m_bar = k * m_bar * next.deferred;
        if let Some(t) = trace.as_deref_mut() {
            t.steps.push(TraceStep {
                singletons: m.clone(),
                ignorance: m_tilde,
                omega: m_bar,
                normaliser: Some(k),
            });
        }
    }

    let scale = 1.0 - m_bar;
    if scale <= CONFLICT_TOLERANCE {
        return Err(Error::DegenerateOmega);
    }
    Ok(CombinedAssessment::new(
        frame.clone(),
        m.into_iter().map(|x| x / scale).collect(),
        m_tilde / scale,
    ))
}
