//! One general attribute, three basic attributes: the brakes of a
//! motorcycle aggregated with OER, MER and E2R, with the recursion traced.
//!
//! ```bash
//! cargo run --example flat_aggregation
//! ```

use erkit::decision::{expected_utility, redistribute_unknown, UtilityFunction};
use erkit::dst::GradeFrame;
use erkit::er::{aggregate_traced, Algorithm, Assessment, WeightedAssessment};

/// Grades, reliability, importance.
type Source = (&'static [(&'static str, f64)], f64, f64);

fn main() -> erkit::Result<()> {
    let frame = GradeFrame::five_point();
    let utility = UtilityFunction::linear(frame.clone());

    let inputs: [Source; 3] = [
        (&[("E", 1.0)], 0.9, 0.4),              // stopping power
        (&[("A", 0.4), ("G", 0.6)], 0.7, 0.3),  // braking stability
        (&[("G", 0.5), ("E", 0.3)], 0.2, 0.3),  // feel at control
    ];

    for algorithm in Algorithm::ALL {
        let items = inputs
            .iter()
            .map(|&(grades, alpha, beta)| {
                // OER reads the weight as a reliability, MER as an importance
                let weight = if algorithm == Algorithm::Mer { beta } else { alpha };
                WeightedAssessment::new(Assessment::from_grades(frame.clone(), grades)?)
                    .with_weight(weight)?
                    .with_reliability(alpha)?
                    .with_importance(beta)
            })
            .collect::<erkit::Result<Vec<_>>>()?;

        let (brakes, trace) = aggregate_traced(algorithm, &items)?;
        println!("{algorithm}");
        for (i, step) in trace.steps.iter().enumerate() {
            let k = step.normaliser.map_or("      -".to_string(), |k| format!("{k:.5}"));
            println!(
                "  step {} K={k}  m={:.4?}  H={:.4}  Ω={:.4}",
                i + 1,
                step.singletons,
                step.ignorance,
                step.omega
            );
        }
        let spread = redistribute_unknown(&brakes);
        println!(
            "  result {:.4?}  unknown {:.4}  utility {:.4}\n",
            brakes.assigned(),
            brakes.unassigned(),
            expected_utility(&spread, &utility)?
        );
    }
    Ok(())
}
