//! Checks the four synthesis axioms on randomly generated instances that
//! satisfy each axiom's hypothesis.
//!
//! MER satisfies all four. OER keeps independence only: discounting by
//! reliability leaves belief on the whole frame, so a consensus of
//! unreliable sources is no longer a certain result.
//!
//! ```bash
//! cargo run --example axiom_audit -- 7 500
//! ```

use erkit::er::{audit_axioms, check_axiom, Algorithm, Axiom};

fn main() -> erkit::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let iterations = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);

    for algorithm in Algorithm::ALL {
        let report = audit_axioms(algorithm, seed, iterations)?;
        println!("{algorithm}");
        for tally in &report.axioms {
            println!("  {:<15} {:>5} held {:>5} violated", tally.axiom, tally.held, tally.violated);
        }
    }

    // replay the first OER consensus counterexample
    let report = audit_axioms(Algorithm::Oer, seed, iterations)?;
    if let Some(c) = &report.tally(Axiom::Consensus).counterexample {
        println!("\nOER consensus counterexample (instance {}):", c.iteration);
        for item in &c.instance {
            println!("  {:?} with weight {:.3}", item.degrees, item.weight);
        }
        println!(
            "  needs β({}) {}, observed {:.6}",
            c.verdict.grades.join(", "),
            c.verdict.conclusion,
            c.verdict.observed
        );
    }

    // a single hand-made check
    let frame = erkit::dst::GradeFrame::five_point();
    let items: Vec<_> = [0.5, 0.5]
        .iter()
        .map(|&w| {
            erkit::er::WeightedAssessment::new(erkit::er::Assessment::certain(frame.clone(), "G")?).with_weight(w)
        })
        .collect::<erkit::Result<_>>()?;
    let verdict = check_axiom(Axiom::Consensus, Algorithm::Mer, &items)?;
    println!("\nMER, two sources both certain of G: holds = {}", verdict.holds);
    Ok(())
}
