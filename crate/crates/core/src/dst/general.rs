use std::collections::BTreeMap;
use std::fmt;

use crate::dst::frame::GradeFrame;
use crate::error::{check_unit, Error, Result, CONFLICT_TOLERANCE, SUM_TOLERANCE};

/// Largest frame a [`GradeSet`] can address.
pub const MAX_SET_GRADES: usize = 32;

/// Largest frame accepted by [`GeneralMassFunction::combine`].
pub const MAX_COMBINE_GRADES: usize = 20;

/// A subset of grades, as a bitset over grade indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GradeSet(u32);

impl GradeSet {
    pub const EMPTY: GradeSet = GradeSet(0);

    pub fn singleton(index: usize) -> Self {
        assert!(index < MAX_SET_GRADES, "grade index {index} out of range");
        GradeSet(1 << index)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_SET_GRADES, "frame of {n} grades too large");
        if n == MAX_SET_GRADES {
            GradeSet(u32::MAX)
        } else {
            GradeSet((1u32 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(GradeSet::EMPTY, |acc, i| acc.union(GradeSet::singleton(i)))
    }

    pub fn from_labels(frame: &GradeFrame, labels: &[&str]) -> Result<Self> {
        let mut set = GradeSet::EMPTY;
        for label in labels {
            set = set.union(GradeSet::singleton(frame.index_of(label)?));
        }
        Ok(set)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_SET_GRADES && self.0 & (1 << index) != 0
    }

    pub fn intersection(self, other: GradeSet) -> GradeSet {
        GradeSet(self.0 & other.0)
    }

    pub fn union(self, other: GradeSet) -> GradeSet {
        GradeSet(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: GradeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: GradeSet) -> bool {
        self.0 & other.0 != 0
    }

    fn fits(self, n: usize) -> bool {
        self.is_subset_of(GradeSet::full(n))
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..MAX_SET_GRADES).filter(move |&i| self.contains(i))
    }
}

impl fmt::Debug for GradeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// A mass function over the full power set of a frame.
///
/// Combination here enumerates every pair of focal sets, so it is used to
/// cross-check the specialised closed forms on [`MassFunction`](crate::MassFunction).
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralMassFunction {
    frame: GradeFrame,
    focal: BTreeMap<GradeSet, f64>,
}

impl GeneralMassFunction {
    /// Masses given for the same subset are added. Zero masses are dropped.
    pub fn new<I>(frame: GradeFrame, masses: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GradeSet, f64)>,
    {
        if frame.len() > MAX_SET_GRADES {
            return Err(Error::FrameTooLarge {
                grades: frame.len(),
                max: MAX_SET_GRADES,
            });
        }
        let mut focal = BTreeMap::new();
        for (set, mass) in masses {
            check_unit(format!("m({set:?})"), mass)?;
            if !set.fits(frame.len()) {
                return Err(Error::FrameMismatch);
            }
            if mass == 0.0 {
                continue;
            }
            if set.is_empty() {
                return Err(Error::OutOfRange {
                    what: "m(∅)".into(),
                    value: mass,
                });
            }
            *focal.entry(set).or_insert(0.0) += mass;
        }
        let sum: f64 = focal.values().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::MassSum { sum });
        }
        Ok(GeneralMassFunction { frame, focal })
    }

    pub fn vacuous(frame: GradeFrame) -> Self {
        let full = GradeSet::full(frame.len());
        GeneralMassFunction {
            frame,
            focal: BTreeMap::from([(full, 1.0)]),
        }
    }

    pub fn frame(&self) -> &GradeFrame {
        &self.frame
    }

    pub fn mass(&self, set: GradeSet) -> f64 {
        self.focal.get(&set).copied().unwrap_or(0.0)
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = (GradeSet, f64)> + '_ {
        self.focal.iter().map(|(&s, &m)| (s, m))
    }

    fn check_subset(&self, set: GradeSet) -> Result<()> {
        if set.fits(self.frame.len()) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// Total mass of focal sets contained in `subset`.
    pub fn belief(&self, subset: GradeSet) -> Result<f64> {
        self.check_subset(subset)?;
        Ok(self
            .focal_sets()
            .filter(|(s, _)| s.is_subset_of(subset))
            .map(|(_, m)| m)
            .sum())
    }

    /// Total mass of focal sets meeting `subset`.
    pub fn plausibility(&self, subset: GradeSet) -> Result<f64> {
        self.check_subset(subset)?;
        Ok(self
            .focal_sets()
            .filter(|(s, _)| s.intersects(subset))
            .map(|(_, m)| m)
            .sum())
    }

    /// Pignistic probability of every singleton grade.
    pub fn pignistic(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.frame.len()];
        for (set, mass) in self.focal_sets() {
            let share = mass / set.len() as f64;
            for i in set.indices() {
                p[i] += share;
            }
        }
        p
    }

    /// Pignistic probability of an arbitrary subset.
    pub fn pignistic_of(&self, subset: GradeSet) -> Result<f64> {
        self.check_subset(subset)?;
        Ok(self
            .focal_sets()
            .map(|(s, m)| m * s.intersection(subset).len() as f64 / s.len() as f64)
            .sum())
    }

    /// Dempster's rule by enumeration of all focal-set pairs.
    pub fn combine(&self, other: &GeneralMassFunction) -> Result<Self> {
        self.frame.ensure_same(&other.frame)?;
        if self.frame.len() > MAX_COMBINE_GRADES {
            return Err(Error::FrameTooLarge {
                grades: self.frame.len(),
                max: MAX_COMBINE_GRADES,
            });
        }
        let mut focal = BTreeMap::new();
        let mut conflict = 0.0;
        for (a, ma) in self.focal_sets() {
            for (b, mb) in other.focal_sets() {
                let c = a.intersection(b);
                if c.is_empty() {
                    conflict += ma * mb;
                } else {
                    *focal.entry(c).or_insert(0.0) += ma * mb;
                }
            }
        }
        let agreeing = 1.0 - conflict;
        if agreeing <= CONFLICT_TOLERANCE {
            return Err(Error::CompleteConflict);
        }
        focal.values_mut().for_each(|m| *m /= agreeing);
        Ok(GeneralMassFunction {
            frame: self.frame.clone(),
            focal,
        })
    }
}
