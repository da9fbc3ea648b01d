//! Generators and property checks shared by the integration tests and the
//! acceptance suite.

#![allow(dead_code)]

use erkit::dst::{GeneralMassFunction, GradeFrame, GradeSet, MassFunction, MassKind};
use erkit::er::{aggregate, Algorithm, Assessment, CombinedAssessment, WeightedAssessment};
use erkit::Error;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError};
use rand::Rng;

pub const SEED: u64 = 20_240_611;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

/// `n` non-negative numbers summing to one, about a quarter of them zero.
pub fn simplex(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 3 => 0.0f64..1.0], n).prop_map(|mut v| {
        let sum: f64 = v.iter().sum();
        if sum <= 1e-9 {
            let last = v.len() - 1;
            v[last] = 1.0;
        } else {
            v.iter_mut().for_each(|x| *x /= sum);
        }
        v
    })
}

pub fn frame() -> impl Strategy<Value = GradeFrame> {
    (2usize..=5).prop_map(|n| GradeFrame::numbered(n).unwrap())
}

pub fn bba_on(frame: GradeFrame) -> impl Strategy<Value = MassFunction> {
    let n = frame.len();
    simplex(n + 1).prop_map(move |v| MassFunction::bba(frame.clone(), v[..n].to_vec(), v[n]).unwrap())
}

pub fn ibba_on(frame: GradeFrame) -> impl Strategy<Value = MassFunction> {
    let n = frame.len();
    simplex(n + 2).prop_map(move |v| MassFunction::ibba(frame.clone(), v[..n].to_vec(), v[n], v[n + 1]).unwrap())
}

pub fn bbas(count: usize) -> impl Strategy<Value = Vec<MassFunction>> {
    frame().prop_flat_map(move |f| prop::collection::vec(bba_on(f), count))
}

pub fn ibbas(count: usize) -> impl Strategy<Value = Vec<MassFunction>> {
    frame().prop_flat_map(move |f| prop::collection::vec(ibba_on(f), count))
}

/// Up to four arbitrary focal sets.
pub fn general_on(frame: GradeFrame) -> impl Strategy<Value = GeneralMassFunction> {
    let n = frame.len();
    let full = (1u32 << n) - 1;
    prop::collection::vec((1u32..=full, 0.01f64..1.0), 1..=4).prop_map(move |focal| {
        let sum: f64 = focal.iter().map(|(_, m)| m).sum();
        let sets = focal
            .into_iter()
            .map(|(bits, m)| (GradeSet::from_indices((0..n).filter(|i| bits >> i & 1 == 1)), m / sum));
        GeneralMassFunction::new(frame.clone(), sets).unwrap()
    })
}

pub fn subset_of(n: usize) -> impl Strategy<Value = GradeSet> {
    (1u32..(1u32 << n)).prop_map(move |bits| GradeSet::from_indices((0..n).filter(|i| bits >> i & 1 == 1)))
}

/// A flat aggregation problem: assessments with a reliability and an
/// importance each; importances sum to one.
#[derive(Debug, Clone)]
pub struct Instance {
    pub frame: GradeFrame,
    pub sources: Vec<(Vec<f64>, f64, f64)>,
}

impl Instance {
    /// Weights as each algorithm reads them: α for OER, β for MER.
    pub fn items(&self, algorithm: Algorithm) -> Vec<WeightedAssessment> {
        self.sources
            .iter()
            .map(|(degrees, alpha, beta)| {
                let weight = if algorithm == Algorithm::Mer { *beta } else { *alpha };
                WeightedAssessment::new(Assessment::new(self.frame.clone(), degrees.clone()).unwrap())
                    .with_weight(weight)
                    .and_then(|w| w.with_reliability(*alpha))
                    .and_then(|w| w.with_importance(*beta))
                    .unwrap()
            })
            .collect()
    }

    pub fn permuted(&self, order: &[usize]) -> Instance {
        Instance {
            frame: self.frame.clone(),
            sources: order.iter().map(|&i| self.sources[i].clone()).collect(),
        }
    }
}

pub fn instance() -> impl Strategy<Value = Instance> {
    (2usize..=5, 1usize..=6).prop_flat_map(|(n, l)| {
        let source = (simplex(n + 1), 0.0f64..0.999, 0.01f64..1.0);
        prop::collection::vec(source, l).prop_map(move |raw| {
            let total: f64 = raw.iter().map(|s| s.2).sum();
            Instance {
                frame: GradeFrame::numbered(n).unwrap(),
                sources: raw
                    .into_iter()
                    .map(|(d, alpha, beta)| (d[..n].to_vec(), alpha, beta / total))
                    .collect(),
            }
        })
    })
}

/// The same instance generator driven by a plain seeded RNG.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let n = rng.random_range(2..=5);
    let l = rng.random_range(2..=6);
    let mut sources = Vec::with_capacity(l);
    for _ in 0..l {
        let mut d: Vec<f64> = (0..=n)
            .map(|_| if rng.random_bool(0.25) { 0.0 } else { rng.random::<f64>() })
            .collect();
        let sum: f64 = d.iter().sum();
        if sum <= 1e-9 {
            d[n] = 1.0;
        } else {
            d.iter_mut().for_each(|x| *x /= sum);
        }
        d.truncate(n);
        sources.push((d, rng.random_range(0.0..0.999), rng.random_range(0.01..1.0)));
    }
    let total: f64 = sources.iter().map(|s| s.2).sum();
    sources.iter_mut().for_each(|s| s.2 /= total);
    Instance {
        frame: GradeFrame::numbered(n).unwrap(),
        sources,
    }
}

pub fn close(a: &MassFunction, b: &MassFunction, tol: f64) -> Result<(), TestCaseError> {
    let d = a.max_abs_diff(b);
    prop_assert!(d <= tol, "differ by {d:e}: {a:?} vs {b:?}");
    Ok(())
}

fn skip_conflict<T>(r: erkit::Result<T>) -> Result<T, TestCaseError> {
    match r {
        Err(Error::CompleteConflict) => Err(TestCaseError::reject("complete conflict")),
        other => Ok(other.unwrap()),
    }
}

pub fn check_commutative(ms: &[MassFunction]) -> Result<(), TestCaseError> {
    let (a, b) = (&ms[0], &ms[1]);
    if a.kind() == MassKind::Bba && b.kind() == MassKind::Bba {
        let ab = skip_conflict(a.combine(b))?;
        close(&ab, &b.combine(a).unwrap(), 1e-9)?;
    }
    let ab = skip_conflict(a.combine_extended(b))?;
    close(&ab, &b.combine_extended(a).unwrap(), 1e-9)
}

pub fn check_associative(ms: &[MassFunction]) -> Result<(), TestCaseError> {
    let (a, b, c) = (&ms[0], &ms[1], &ms[2]);
    let plain = ms.iter().all(|m| m.kind() == MassKind::Bba);
    let step = |x: &MassFunction, y: &MassFunction| {
        if plain {
            x.combine(y)
        } else {
            x.combine_extended(y)
        }
    };
    let left = skip_conflict(step(a, b).and_then(|ab| step(&ab, c)))?;
    let right = skip_conflict(step(b, c).and_then(|bc| step(a, &bc)))?;
    close(&left, &right, 1e-9)
}

pub fn check_neutral(m: &MassFunction) -> Result<(), TestCaseError> {
    let frame = m.frame().clone();
    let omega = MassFunction::pure_omega(frame.clone());
    close(&m.combine_extended(&omega).unwrap(), m, 1e-12)?;
    close(&omega.combine_extended(m).unwrap(), m, 1e-12)?;
    if m.omega() == 0.0 {
        let plain = MassFunction::bba(frame.clone(), m.singletons().to_vec(), m.ignorance()).unwrap();
        let vacuous = MassFunction::vacuous(frame);
        close(&plain.combine(&vacuous).unwrap(), &plain, 1e-12)?;
        close(&vacuous.combine(&plain).unwrap(), &plain, 1e-12)?;
    }
    Ok(())
}

pub fn check_discount_composition(m: &MassFunction, alpha: f64, beta: f64) -> Result<(), TestCaseError> {
    let both = m.reliability_importance_discount(alpha, beta).unwrap();
    let chained = m.reliability_discount(alpha).unwrap().importance_discount(beta).unwrap();
    close(&both, &chained, 1e-12)?;
    prop_assert!((both.total() - 1.0).abs() <= 1e-12);
    close(&m.reliability_discount(1.0).unwrap(), m, 0.0)?;
    Ok(())
}

pub fn check_fast_path(ms: &[MassFunction]) -> Result<(), TestCaseError> {
    let (a, b) = (&ms[0], &ms[1]);
    let fast = skip_conflict(a.combine(b))?;
    let generic = a.to_general().unwrap().combine(&b.to_general().unwrap()).unwrap();
    let fast = fast.to_general().unwrap();
    for (set, m) in generic.focal_sets() {
        prop_assert!((fast.mass(set) - m).abs() <= 1e-12, "{set:?}: {} vs {m}", fast.mass(set));
    }
    for (set, m) in fast.focal_sets() {
        prop_assert!((generic.mass(set) - m).abs() <= 1e-12, "{set:?}: {m} vs {}", generic.mass(set));
    }
    Ok(())
}

pub fn check_pignistic(m: &GeneralMassFunction, subset: GradeSet) -> Result<(), TestCaseError> {
    let p = m.pignistic();
    prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    prop_assert!(p.iter().all(|&x| x >= 0.0));
    let bel = m.belief(subset).unwrap();
    let bet = m.pignistic_of(subset).unwrap();
    let pl = m.plausibility(subset).unwrap();
    prop_assert!(bel <= bet + 1e-12 && bet <= pl + 1e-12, "{bel} {bet} {pl}");
    Ok(())
}

pub fn check_permutation(inst: &Instance, order: &[usize]) -> Result<(), TestCaseError> {
    let shuffled = inst.permuted(order);
    for algorithm in Algorithm::ALL {
        let a = aggregate(algorithm, &inst.items(algorithm)).unwrap();
        let b = aggregate(algorithm, &shuffled.items(algorithm)).unwrap();
        let d = a.max_abs_diff(&b);
        prop_assert!(d <= 1e-12, "{algorithm}: {d:e}");
    }
    Ok(())
}

pub fn instance_with_order() -> impl Strategy<Value = (Instance, Vec<usize>)> {
    instance().prop_flat_map(|inst| {
        let order: Vec<usize> = (0..inst.sources.len()).collect();
        (Just(inst), Just(order).prop_shuffle())
    })
}

pub fn max_diff(a: &CombinedAssessment, b: &CombinedAssessment) -> f64 {
    a.max_abs_diff(b)
}
