use crate::dst::frame::GradeFrame;
use crate::dst::general::{GeneralMassFunction, GradeSet};
use crate::error::{check_unit, Error, Result, CONFLICT_TOLERANCE, SUM_TOLERANCE};

/// Whether a mass function may carry mass on the indecisiveness element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassKind {
    /// Ordinary basic belief assignment. No mass on Ω.
    Bba,
    /// Importance-discounted BBA, defined on 2^Θ ∪ {Ω}.
    Ibba,
}

/// A mass function whose focal elements are restricted to the singleton
/// grades, the whole frame, and (for IBBAs) the indecisiveness element Ω.
///
/// Every distributed assessment and every intermediate result of the ER
/// family of algorithms has this shape, which keeps combination linear in
/// the number of grades. Use [`GeneralMassFunction`] for arbitrary focal sets.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: GradeFrame,
    singletons: Vec<f64>,
    ignorance: f64,
    omega: f64,
    kind: MassKind,
}

impl MassFunction {
    /// A plain BBA with the given singleton masses and mass on the full frame.
    pub fn bba(frame: GradeFrame, singletons: Vec<f64>, ignorance: f64) -> Result<Self> {
        Self::checked(frame, singletons, ignorance, 0.0, MassKind::Bba)
    }

    /// An importance BBA; `omega` is the mass on Ω.
    pub fn ibba(frame: GradeFrame, singletons: Vec<f64>, ignorance: f64, omega: f64) -> Result<Self> {
        Self::checked(frame, singletons, ignorance, omega, MassKind::Ibba)
    }

    /// Builds a plain BBA from `(grade, mass)` pairs, putting the remainder on the frame.
    pub fn from_grades(frame: GradeFrame, masses: &[(&str, f64)]) -> Result<Self> {
        let mut singletons = vec![0.0; frame.len()];
        for &(label, mass) in masses {
            singletons[frame.index_of(label)?] += mass;
        }
        let assigned: f64 = singletons.iter().sum();
        let ignorance = residual(assigned)?;
        Self::bba(frame, singletons, ignorance)
    }

    /// Total ignorance: all mass on the frame.
    pub fn vacuous(frame: GradeFrame) -> Self {
        let n = frame.len();
        Self::raw(frame, vec![0.0; n], 1.0, 0.0, MassKind::Bba)
    }

    /// All mass on Ω. Neutral element of the extended rule.
    pub fn pure_omega(frame: GradeFrame) -> Self {
        let n = frame.len();
        Self::raw(frame, vec![0.0; n], 0.0, 1.0, MassKind::Ibba)
    }

    fn checked(
        frame: GradeFrame,
        singletons: Vec<f64>,
        ignorance: f64,
        omega: f64,
        kind: MassKind,
    ) -> Result<Self> {
        if singletons.len() != frame.len() {
            return Err(Error::FrameMismatch);
        }
        for (label, &m) in frame.labels().iter().zip(&singletons) {
            check_unit(format!("m({{{label}}})"), m)?;
        }
        check_unit("m(frame)", ignorance)?;
        check_unit("m(Ω)", omega)?;
        if kind == MassKind::Bba && omega != 0.0 {
            return Err(Error::NotPlainBba);
        }
        let sum = singletons.iter().sum::<f64>() + ignorance + omega;
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::MassSum { sum });
        }
        Ok(Self::raw(frame, singletons, ignorance, omega, kind))
    }

    pub(crate) fn raw(
        frame: GradeFrame,
        singletons: Vec<f64>,
        ignorance: f64,
        omega: f64,
        kind: MassKind,
    ) -> Self {
        MassFunction {
            frame,
            singletons,
            ignorance,
            omega,
            kind,
        }
    }

    pub fn frame(&self) -> &GradeFrame {
        &self.frame
    }

    pub fn kind(&self) -> MassKind {
        self.kind
    }

    /// Mass on each singleton grade, in frame order.
    pub fn singletons(&self) -> &[f64] {
        &self.singletons
    }

    pub fn singleton(&self, index: usize) -> f64 {
        self.singletons[index]
    }

    /// Mass on the full frame (global ignorance).
    pub fn ignorance(&self) -> f64 {
        self.ignorance
    }

    /// Mass on Ω.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn total(&self) -> f64 {
        self.singletons.iter().sum::<f64>() + self.ignorance + self.omega
    }

    /// Largest componentwise difference, including Ω. Infinite on frame mismatch.
    pub fn max_abs_diff(&self, other: &MassFunction) -> f64 {
        if self.frame != other.frame {
            return f64::INFINITY;
        }
        self.singletons
            .iter()
            .zip(&other.singletons)
            .map(|(a, b)| (a - b).abs())
            .chain([
                (self.ignorance - other.ignorance).abs(),
                (self.omega - other.omega).abs(),
            ])
            .fold(0.0, f64::max)
    }

    fn require_plain(&self) -> Result<()> {
        match self.kind {
            MassKind::Bba => Ok(()),
            MassKind::Ibba => Err(Error::NotPlainBba),
        }
    }

    /// Shafer discounting by reliability `alpha`: scales focal masses and moves
    /// the remainder `1 - alpha` onto the frame.
    pub fn reliability_discount(&self, alpha: f64) -> Result<Self> {
        check_unit("reliability", alpha)?;
        self.require_plain()?;
        Ok(Self::raw(
            self.frame.clone(),
            self.singletons.iter().map(|m| alpha * m).collect(),
            alpha * self.ignorance + (1.0 - alpha),
            0.0,
            MassKind::Bba,
        ))
    }

    /// Importance discounting by `beta`: scales every mass on 2^Θ and puts
    /// `1 - beta` on Ω.
    pub fn importance_discount(&self, beta: f64) -> Result<Self> {
        check_unit("importance", beta)?;
        self.require_plain()?;
        Ok(Self::raw(
            self.frame.clone(),
            self.singletons.iter().map(|m| beta * m).collect(),
            beta * self.ignorance,
            1.0 - beta,
            MassKind::Ibba,
        ))
    }

    /// Reliability discounting followed by importance discounting, in closed form.
    pub fn reliability_importance_discount(&self, alpha: f64, beta: f64) -> Result<Self> {
        check_unit("reliability", alpha)?;
        check_unit("importance", beta)?;
        self.require_plain()?;
        let scale = alpha * beta;
        Ok(Self::raw(
            self.frame.clone(),
            self.singletons.iter().map(|m| scale * m).collect(),
            scale * self.ignorance + (1.0 - alpha) * beta,
            1.0 - beta,
            MassKind::Ibba,
        ))
    }

    /// Dempster's rule for two plain BBAs.
    pub fn combine(&self, other: &MassFunction) -> Result<Self> {
        self.require_plain()?;
        other.require_plain()?;
        self.frame.ensure_same(&other.frame)?;
        let singletons: Vec<f64> = self
            .singletons
            .iter()
            .zip(&other.singletons)
            .map(|(a, b)| a * b + a * other.ignorance + self.ignorance * b)
            .collect();
        let ignorance = self.ignorance * other.ignorance;
        let (singletons, ignorance, _) = normalise(singletons, ignorance, 0.0)?;
        Ok(Self::raw(
            self.frame.clone(),
            singletons,
            ignorance,
            0.0,
            MassKind::Bba,
        ))
    }

    /// The extended rule over 2^Θ ∪ {Ω}, where Ω intersects every non-empty set.
    /// Plain BBAs are accepted as IBBAs with no mass on Ω.
    pub fn combine_extended(&self, other: &MassFunction) -> Result<Self> {
        self.frame.ensure_same(&other.frame)?;
        let (h1, o1) = (self.ignorance, self.omega);
        let (h2, o2) = (other.ignorance, other.omega);
        let singletons: Vec<f64> = self
            .singletons
            .iter()
            .zip(&other.singletons)
            .map(|(a, b)| a * b + a * (h2 + o2) + (h1 + o1) * b)
            .collect();
        let ignorance = h1 * h2 + h1 * o2 + o1 * h2;
        let omega = o1 * o2;
        let (singletons, ignorance, omega) = normalise(singletons, ignorance, omega)?;
        Ok(Self::raw(
            self.frame.clone(),
            singletons,
            ignorance,
            omega,
            MassKind::Ibba,
        ))
    }

    /// Redistributes the mass on Ω proportionally over 2^Θ, giving a plain BBA.
    pub fn normalize_omega(&self) -> Result<Self> {
        let rest = 1.0 - self.omega;
        if rest <= CONFLICT_TOLERANCE {
            return Err(Error::DegenerateOmega);
        }
        Ok(Self::raw(
            self.frame.clone(),
            self.singletons.iter().map(|m| m / rest).collect(),
            self.ignorance / rest,
            0.0,
            MassKind::Bba,
        ))
    }

    /// Pignistic probability of each singleton grade. Plain BBAs only.
    pub fn pignistic(&self) -> Result<Vec<f64>> {
        self.require_plain()?;
        let share = self.ignorance / self.frame.len() as f64;
        Ok(self.singletons.iter().map(|m| m + share).collect())
    }

    /// The same mass function in power-set form. Plain BBAs only.
    pub fn to_general(&self) -> Result<GeneralMassFunction> {
        self.require_plain()?;
        let n = self.frame.len();
        let mut focal: Vec<(GradeSet, f64)> = self
            .singletons
            .iter()
            .enumerate()
            .map(|(i, &m)| (GradeSet::singleton(i), m))
            .collect();
        focal.push((GradeSet::full(n), self.ignorance));
        GeneralMassFunction::new(self.frame.clone(), focal)
    }
}

/// Divides by the total non-conflicting mass.
fn normalise(mut singletons: Vec<f64>, ignorance: f64, omega: f64) -> Result<(Vec<f64>, f64, f64)> {
    let agreeing = singletons.iter().sum::<f64>() + ignorance + omega;
    if agreeing <= CONFLICT_TOLERANCE {
        return Err(Error::CompleteConflict);
    }
    singletons.iter_mut().for_each(|m| *m /= agreeing);
    Ok((singletons, ignorance / agreeing, omega / agreeing))
}

/// `1 - assigned`, clamped at zero when within tolerance.
pub(crate) fn residual(assigned: f64) -> Result<f64> {
    if assigned > 1.0 + SUM_TOLERANCE {
        return Err(Error::DegreeSum { sum: assigned });
    }
    Ok((1.0 - assigned).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five() -> GradeFrame {
        GradeFrame::five_point()
    }

    fn feel_at_control() -> MassFunction {
        MassFunction::from_grades(five(), &[("G", 0.5), ("E", 0.3)]).unwrap()
    }

    fn assert_masses(m: &MassFunction, singletons: &[f64], ignorance: f64, omega: f64) {
        for (got, want) in m.singletons().iter().zip(singletons) {
            assert!((got - want).abs() < 1e-12, "{:?} vs {:?}", m.singletons(), singletons);
        }
        assert!((m.ignorance() - ignorance).abs() < 1e-12, "ignorance {}", m.ignorance());
        assert!((m.omega() - omega).abs() < 1e-12, "omega {}", m.omega());
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(
            MassFunction::bba(five(), vec![0.5, 0.0, 0.0, 0.0, 0.0], 0.4),
            Err(Error::MassSum { .. })
        ));
        assert!(matches!(
            MassFunction::bba(five(), vec![1.2, 0.0, 0.0, 0.0, 0.0], -0.2),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            MassFunction::bba(five(), vec![0.5; 2], 0.0),
            Err(Error::FrameMismatch)
        ));
        assert!(MassFunction::ibba(five(), vec![0.0; 5], 0.5, 0.5).is_ok());
    }

    #[test]
    fn reliability_discount_examples() {
        let m = feel_at_control();
        assert_eq!(m.reliability_discount(1.0).unwrap(), m);
        assert_masses(&m.reliability_discount(0.0).unwrap(), &[0.0; 5], 1.0, 0.0);
        assert_masses(
            &m.reliability_discount(0.2).unwrap(),
            &[0.0, 0.0, 0.0, 0.1, 0.06],
            0.84,
            0.0,
        );
        assert!(m.reliability_discount(1.5).is_err());
        let ibba = m.importance_discount(0.5).unwrap();
        assert_eq!(ibba.reliability_discount(0.5), Err(Error::NotPlainBba));
    }

    #[test]
    fn importance_discount_examples() {
        let m = feel_at_control();
        let full = m.importance_discount(1.0).unwrap();
        assert_masses(&full, m.singletons(), m.ignorance(), 0.0);
        assert_masses(&m.importance_discount(0.0).unwrap(), &[0.0; 5], 0.0, 1.0);
        assert_masses(
            &m.importance_discount(0.3).unwrap(),
            &[0.0, 0.0, 0.0, 0.15, 0.09],
            0.06,
            0.7,
        );
        assert!(m.importance_discount(-0.1).is_err());
    }

    #[test]
    fn reliability_importance_discount_examples() {
        let m = feel_at_control();
        assert_masses(
            &m.reliability_importance_discount(1.0, 1.0).unwrap(),
            m.singletons(),
            m.ignorance(),
            0.0,
        );
        let half = m.reliability_importance_discount(0.5, 1.0).unwrap();
        let reference = m.reliability_discount(0.5).unwrap();
        assert_masses(&half, reference.singletons(), reference.ignorance(), 0.0);

        // Kawasaki responsiveness: E(0.8) with reliability 0.6, importance 0.2
        let responsiveness = MassFunction::from_grades(five(), &[("E", 0.8)]).unwrap();
        assert_masses(
            &responsiveness.reliability_importance_discount(0.6, 0.2).unwrap(),
            &[0.0, 0.0, 0.0, 0.0, 0.096],
            0.104,
            0.8,
        );
    }

    #[test]
    fn dempster_examples() {
        let m = feel_at_control();
        let vac = MassFunction::vacuous(five());
        assert!(m.combine(&vac).unwrap().max_abs_diff(&m) < 1e-12);

        let f = GradeFrame::numbered(3).unwrap();
        let h1 = MassFunction::from_grades(f.clone(), &[("H1", 1.0)]).unwrap();
        let h2 = MassFunction::from_grades(f.clone(), &[("H2", 1.0)]).unwrap();
        assert_masses(&h1.combine(&h1).unwrap(), &[1.0, 0.0, 0.0], 0.0, 0.0);
        assert_eq!(h1.combine(&h2), Err(Error::CompleteConflict));
        assert_eq!(
            h1.combine(&MassFunction::vacuous(five())),
            Err(Error::FrameMismatch)
        );
        assert_eq!(
            h1.combine(&MassFunction::pure_omega(f)),
            Err(Error::NotPlainBba)
        );
    }

    #[test]
    fn extended_combination_examples() {
        let f = GradeFrame::numbered(3).unwrap();
        let m1 = MassFunction::ibba(f.clone(), vec![0.3, 0.0, 0.0], 0.0, 0.7).unwrap();
        let m2 = MassFunction::ibba(f.clone(), vec![0.0, 0.4, 0.0], 0.0, 0.6).unwrap();
        let k = 1.0 / (1.0 - 0.12);
        let c = m1.combine_extended(&m2).unwrap();
        assert_masses(&c, &[0.18 * k, 0.28 * k, 0.0], 0.0, 0.42 * k);

        let n = c.normalize_omega().unwrap();
        let rest = 1.0 - 0.42 * k;
        assert_masses(&n, &[0.18 * k / rest, 0.28 * k / rest, 0.0], 0.0, 0.0);
        assert_masses(&n, &[0.18 / 0.46, 0.28 / 0.46, 0.0], 0.0, 0.0);
        assert_eq!(n.kind(), MassKind::Bba);

        let omega = MassFunction::pure_omega(f.clone());
        assert!(m1.combine_extended(&omega).unwrap().max_abs_diff(&m1) < 1e-12);

        let a = MassFunction::from_grades(f.clone(), &[("H1", 0.6), ("H2", 0.1)]).unwrap();
        let b = MassFunction::from_grades(f, &[("H2", 0.5), ("H3", 0.2)]).unwrap();
        let plain = a.combine(&b).unwrap();
        let extended = a.combine_extended(&b).unwrap();
        assert!(plain.max_abs_diff(&extended) < 1e-15);
    }

    #[test]
    fn normalize_omega_examples() {
        let f = GradeFrame::numbered(2).unwrap();
        let m = MassFunction::ibba(f.clone(), vec![0.25, 0.0], 0.25, 0.5).unwrap();
        assert_masses(&m.normalize_omega().unwrap(), &[0.5, 0.0], 0.5, 0.0);
        let plain = MassFunction::from_grades(f.clone(), &[("H1", 0.3)]).unwrap();
        assert!(plain.normalize_omega().unwrap().max_abs_diff(&plain) < 1e-15);
        assert_eq!(
            MassFunction::pure_omega(f).normalize_omega(),
            Err(Error::DegenerateOmega)
        );
    }

    #[test]
    fn singleton_pignistic() {
        let m = MassFunction::from_grades(five(), &[("P", 0.5)]).unwrap();
        let p = m.pignistic().unwrap();
        assert!((p[0] - 0.6).abs() < 1e-12);
        assert!(p[1..].iter().all(|x| (x - 0.1).abs() < 1e-12));
    }
}
