//! The four synthesis axioms, a per-instance checker, and a seeded audit
//! harness that generates instances satisfying each axiom's hypothesis.

use std::fmt;

use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dst::GradeFrame;
use crate::er::aggregate::{aggregate, Algorithm};
use crate::er::assessment::{Assessment, WeightedAssessment};
use crate::error::{Error, Result, SUM_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    /// No input touches a grade ⇒ the output does not either.
    Independence,
    /// Every input is precisely one grade ⇒ so is the output.
    Consensus,
    /// Every input is complete on a subset ⇒ the output is complete on it.
    Completeness,
    /// Some input is incomplete ⇒ the output is incomplete.
    Incompleteness,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [
        Axiom::Independence,
        Axiom::Consensus,
        Axiom::Completeness,
        Axiom::Incompleteness,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Axiom::Independence => "independence",
            Axiom::Consensus => "consensus",
            Axiom::Completeness => "completeness",
            Axiom::Incompleteness => "incompleteness",
        })
    }
}

/// Outcome of checking one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    /// Grades the conclusion is about.
    pub grades: Vec<String>,
    /// What the conclusion requires of `observed`.
    pub conclusion: String,
    pub observed: f64,
}

/// Checks `axiom` for `algorithm` on one instance.
///
/// Returns [`Error::Inapplicable`] when the instance does not satisfy the
/// axiom's hypothesis, and propagates aggregation failures unchanged.
pub fn check_axiom(
    axiom: Axiom,
    algorithm: Algorithm,
    instance: &[WeightedAssessment],
) -> Result<AxiomVerdict> {
    let first = instance.first().ok_or(Error::EmptyInput)?;
    let frame = first.assessment().frame().clone();
    let n = frame.len();
    let support = |i: usize| instance.iter().any(|w| w.assessment().degree(i) > 0.0);

    let (grades, conclusion): (Vec<usize>, &str) = match axiom {
        Axiom::Independence => {
            let untouched: Vec<usize> = (0..n).filter(|&i| !support(i)).collect();
            if untouched.is_empty() {
                return Err(Error::Inapplicable("every grade is assessed by some input".into()));
            }
            (untouched, "= 0")
        }
        Axiom::Consensus => {
            let grade = (0..n).find(|&i| {
                instance
                    .iter()
                    .all(|w| (w.assessment().degree(i) - 1.0).abs() <= SUM_TOLERANCE)
            });
            match grade {
                Some(g) => (vec![g], "= 1"),
                None => {
                    return Err(Error::Inapplicable(
                        "inputs are not all precisely the same grade".into(),
                    ))
                }
            }
        }
        Axiom::Completeness => {
            if !instance.iter().all(|w| w.assessment().is_complete()) {
                return Err(Error::Inapplicable("some input is incomplete".into()));
            }
            ((0..n).filter(|&i| support(i)).collect(), "sum = 1")
        }
        Axiom::Incompleteness => {
            if instance.iter().all(|w| w.assessment().is_complete()) {
                return Err(Error::Inapplicable("every input is complete".into()));
            }
            (Vec::new(), "> 0")
        }
    };

    let out = aggregate(algorithm, instance)?;
    let observed = match axiom {
        Axiom::Independence => grades.iter().map(|&i| out.assigned()[i]).fold(0.0, f64::max),
        Axiom::Consensus => out.assigned()[grades[0]],
        Axiom::Completeness => grades.iter().map(|&i| out.assigned()[i]).sum(),
        Axiom::Incompleteness => out.unassigned(),
    };
    let holds = match axiom {
        Axiom::Independence => observed.abs() <= SUM_TOLERANCE,
        Axiom::Consensus | Axiom::Completeness => (observed - 1.0).abs() <= SUM_TOLERANCE,
        Axiom::Incompleteness => observed > SUM_TOLERANCE,
    };
    Ok(AxiomVerdict {
        axiom,
        holds,
        grades: grades.iter().map(|&i| frame.label(i).to_string()).collect(),
        conclusion: conclusion.to_string(),
        observed,
    })
}

/// One input of a serialised instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceItem {
    pub degrees: IndexMap<String, f64>,
    pub weight: f64,
    pub reliability: f64,
    pub importance: f64,
}

impl InstanceItem {
    pub fn from_weighted(w: &WeightedAssessment) -> Self {
        let a = w.assessment();
        InstanceItem {
            degrees: a
                .frame()
                .labels()
                .iter()
                .zip(a.degrees())
                .filter(|(_, &d)| d != 0.0)
                .map(|(l, &d)| (l.clone(), d))
                .collect(),
            weight: w.weight(),
            reliability: w.reliability(),
            importance: w.importance(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub iteration: usize,
    pub frame: Vec<String>,
    pub instance: Vec<InstanceItem>,
    pub verdict: AxiomVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomTally {
    pub axiom: Axiom,
    pub held: usize,
    pub violated: usize,
    pub counterexample: Option<Counterexample>,
}

impl AxiomTally {
    pub fn always_holds(&self) -> bool {
        self.violated == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub iterations: usize,
    pub axioms: Vec<AxiomTally>,
}

impl AuditReport {
    pub fn tally(&self, axiom: Axiom) -> &AxiomTally {
        self.axioms
            .iter()
            .find(|t| t.axiom == axiom)
            .expect("every axiom is audited")
    }
}

/// Runs `iterations` generated instances per axiom through `algorithm`.
///
/// Each axiom draws from its own ChaCha stream of `seed`, so results for
/// one axiom do not depend on how many instances another consumed.
pub fn audit_axioms(algorithm: Algorithm, seed: u64, iterations: usize) -> Result<AuditReport> {
    let mut axioms = Vec::with_capacity(Axiom::ALL.len());
    for (stream, axiom) in Axiom::ALL.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream as u64);
        let mut tally = AxiomTally {
            axiom,
            held: 0,
            violated: 0,
            counterexample: None,
        };
        for iteration in 0..iterations {
            let instance = generate_instance(axiom, algorithm, &mut rng);
            let verdict = check_axiom(axiom, algorithm, &instance)?;
            if verdict.holds {
                tally.held += 1;
            } else {
                tally.violated += 1;
                if tally.counterexample.is_none() {
                    tally.counterexample = Some(Counterexample {
                        iteration,
                        frame: instance[0].assessment().frame().labels().to_vec(),
                        instance: instance.iter().map(InstanceItem::from_weighted).collect(),
                        verdict,
                    });
                }
            }
        }
        axioms.push(tally);
    }
    Ok(AuditReport {
        algorithm,
        seed,
        iterations,
        axioms,
    })
}

/// Builds a random instance satisfying the hypothesis of `axiom`.
///
/// Weights are shaped for `algorithm`: normalised for MER, and for OER at
/// most one source gets full weight so no step can be in total conflict.
/// Importances are always normalised; reliabilities follow the OER rule.
pub fn generate_instance<R: Rng + ?Sized>(
    axiom: Axiom,
    algorithm: Algorithm,
    rng: &mut R,
) -> Vec<WeightedAssessment> {
    let n = rng.random_range(2..=5);
    let len = rng.random_range(2..=6);
    let frame = GradeFrame::numbered(n).expect("n >= 2");

    let assessments: Vec<Assessment> = match axiom {
        Axiom::Independence => {
            let mut grades: Vec<usize> = (0..n).collect();
            grades.shuffle(rng);
            let allowed = &grades[..rng.random_range(1..n)];
            (0..len)
                .map(|_| {
                    let complete = rng.random_bool(0.5);
                    random_assessment(&frame, allowed, complete, rng)
                })
                .collect()
        }
        Axiom::Consensus => {
            let g = rng.random_range(0..n);
            (0..len)
                .map(|_| random_assessment(&frame, &[g], true, rng))
                .collect()
        }
        Axiom::Completeness => {
            let mut grades: Vec<usize> = (0..n).collect();
            grades.shuffle(rng);
            let subset = &grades[..rng.random_range(1..=n)];
            (0..len)
                .map(|_| random_assessment(&frame, subset, true, rng))
                .collect()
        }
        Axiom::Incompleteness => {
            let all: Vec<usize> = (0..n).collect();
            let forced = rng.random_range(0..len);
            (0..len)
                .map(|i| {
                    let complete = i != forced && rng.random_bool(0.6);
                    random_assessment(&frame, &all, complete, rng)
                })
                .collect()
        }
    };

    let full = if rng.random_bool(0.5) {
        Some(rng.random_range(0..len))
    } else {
        None
    };
    let reliabilities: Vec<f64> = (0..len)
        .map(|i| {
            if Some(i) == full {
                1.0
            } else {
                rng.random_range(0.05..0.999)
            }
        })
        .collect();
    let raw: Vec<f64> = (0..len).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let importances: Vec<f64> = raw.iter().map(|r| r / total).collect();

    assessments
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            let weight = match algorithm {
                Algorithm::Mer => importances[i],
                Algorithm::Oer | Algorithm::E2r => reliabilities[i],
            };
            WeightedAssessment::new(a)
                .with_weight(weight)
                .and_then(|w| w.with_reliability(reliabilities[i]))
                .and_then(|w| w.with_importance(importances[i]))
                .expect("generated factors lie in [0, 1]")
        })
        .collect()
}

/// Random degrees over a non-empty random part of `grades`; incomplete
/// assessments keep between 20% and 90% of the belief.
fn random_assessment<R: Rng + ?Sized>(
    frame: &GradeFrame,
    grades: &[usize],
    complete: bool,
    rng: &mut R,
) -> Assessment {
    let mut pool = grades.to_vec();
    pool.shuffle(rng);
    let support = &pool[..rng.random_range(1..=pool.len())];
    let raw: Vec<f64> = support.iter().map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let scale = if complete {
        1.0
    } else {
        rng.random_range(0.2..0.9)
    };
    let mut degrees = vec![0.0; frame.len()];
    for (&g, r) in support.iter().zip(&raw) {
        degrees[g] = scale * r / total;
    }
    if complete && support.len() == 1 {
        degrees[support[0]] = 1.0;
    }
    Assessment::new(frame.clone(), degrees).expect("generated degrees are valid")
}
