//! The recursive ER algorithms against their Dempster-Shafer readings:
//! OER is reliability discounting followed by Dempster's rule, MER is
//! importance discounting, the extended rule and removal of Ω.
//!
//! ```bash
//! cargo run --example theorem_equivalence
//! ```

use erkit::dst::{GradeFrame, MassFunction};
use erkit::er::{mer_aggregate, oer_aggregate, Assessment, CombinedAssessment, WeightedAssessment};

fn fold(ms: Vec<MassFunction>, step: impl Fn(&MassFunction, &MassFunction) -> erkit::Result<MassFunction>) -> erkit::Result<MassFunction> {
    let mut it = ms.into_iter();
    let first = it.next().ok_or(erkit::Error::EmptyInput)?;
    it.try_fold(first, |acc, m| step(&acc, &m))
}

fn main() -> erkit::Result<()> {
    let frame = GradeFrame::five_point();
    let sources = [
        (vec![0.0, 0.0, 0.0, 0.3, 0.6], 0.35),
        (vec![0.0, 0.2, 0.5, 0.3, 0.0], 0.25),
        (vec![0.0, 0.0, 0.0, 0.5, 0.3], 0.40),
    ];
    let items = sources
        .iter()
        .map(|(d, w)| WeightedAssessment::new(Assessment::new(frame.clone(), d.clone())?).with_weight(*w))
        .collect::<erkit::Result<Vec<_>>>()?;

    let recursive = oer_aggregate(&items)?;
    let discounted = items
        .iter()
        .map(|i| i.assessment().to_bba().reliability_discount(i.weight()))
        .collect::<erkit::Result<Vec<_>>>()?;
    let pipeline = CombinedAssessment::from_bba(&fold(discounted, MassFunction::combine)?)?;
    println!("OER       {:.6?} H {:.6}", recursive.assigned(), recursive.unassigned());
    println!("pipeline  {:.6?} H {:.6}", pipeline.assigned(), pipeline.unassigned());
    println!("max difference {:.2e}\n", recursive.max_abs_diff(&pipeline));

    let recursive = mer_aggregate(&items)?;
    let discounted = items
        .iter()
        .map(|i| i.assessment().to_bba().importance_discount(i.weight()))
        .collect::<erkit::Result<Vec<_>>>()?;
    let joint = fold(discounted, MassFunction::combine_extended)?;
    println!("before removing Ω: m(Ω) = {:.6}", joint.omega());
    let pipeline = CombinedAssessment::from_bba(&joint.normalize_omega()?)?;
    println!("MER       {:.6?} H {:.6}", recursive.assigned(), recursive.unassigned());
    println!("pipeline  {:.6?} H {:.6}", pipeline.assigned(), pipeline.unassigned());
    println!("max difference {:.2e}", recursive.max_abs_diff(&pipeline));
    Ok(())
}
