//! Belief structures on a grade frame: discounting, Dempster's rule, the
//! extended rule with an indecisiveness element, and the pignistic
//! transformation.
//!
//! ```bash
//! cargo run --example mass_functions
//! ```

use erkit::dst::{GeneralMassFunction, GradeFrame, GradeSet, MassFunction};

fn show(label: &str, m: &MassFunction) {
    let frame = m.frame();
    let parts: Vec<String> = (0..frame.len())
        .filter(|&i| m.singleton(i) != 0.0)
        .map(|i| format!("{}: {:.4}", frame.label(i), m.singleton(i)))
        .collect();
    println!(
        "{label:<28} {{{}}}  H: {:.4}  Ω: {:.4}",
        parts.join(", "),
        m.ignorance(),
        m.omega()
    );
}

fn main() -> erkit::Result<()> {
    let frame = GradeFrame::five_point();

    // "feel at control" judged good 0.5, excellent 0.3; the rest is unknown
    let feel = MassFunction::from_grades(frame.clone(), &[("G", 0.5), ("E", 0.3)])?;
    show("feel at control", &feel);
    show("  reliability 0.2", &feel.reliability_discount(0.2)?);
    show("  importance 0.3", &feel.importance_discount(0.3)?);
    show("  both", &feel.reliability_importance_discount(0.2, 0.3)?);

    let braking = MassFunction::from_grades(frame.clone(), &[("A", 0.4), ("G", 0.6)])?;
    show("braking stability", &braking);
    show("Dempster", &feel.combine(&braking)?);

    let a = feel.importance_discount(0.4)?;
    let b = braking.importance_discount(0.6)?;
    let joint = a.combine_extended(&b)?;
    show("extended rule", &joint);
    show("  Ω removed", &joint.normalize_omega()?);

    // arbitrary focal sets
    let hml = GradeFrame::new(["L", "M", "H"])?;
    let m = GeneralMassFunction::new(
        hml.clone(),
        [
            (GradeSet::from_labels(&hml, &["H"])?, 0.5),
            (GradeSet::from_labels(&hml, &["M", "H"])?, 0.3),
            (GradeSet::full(3), 0.2),
        ],
    )?;
    let at_least_m = GradeSet::from_labels(&hml, &["M", "H"])?;
    println!(
        "\nBel(M ∪ H) = {:.3}  BetP(M ∪ H) = {:.3}  Pl(M ∪ H) = {:.3}",
        m.belief(at_least_m)?,
        m.pignistic_of(at_least_m)?,
        m.plausibility(at_least_m)?
    );
    let p = m.pignistic();
    for (label, p) in hml.labels().iter().zip(&p) {
        println!("BetP({label}) = {p:.4}");
    }
    Ok(())
}
