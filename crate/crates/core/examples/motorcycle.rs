//! The bundled motorcycle performance assessment: four alternatives,
//! 19 basic attributes, each with a reliability and an importance.
//!
//! Prints the expected utilities and rankings of all three algorithms, once
//! with general attributes discounted by their reliability (the default) and
//! once with only basic attributes discounted.
//!
//! ```bash
//! cargo run --example motorcycle
//! ```

use erkit::decision::run;
use erkit::er::Algorithm;
use erkit::hierarchy::{EvaluateOptions, GeneralReliability};
use erkit::io::motorcycle;

fn main() -> erkit::Result<()> {
    let model = motorcycle();
    println!(
        "{} alternatives, {} basic attributes\n",
        model.alternatives.len(),
        model.root.basic_count()
    );

    for (title, general_reliability) in [
        ("general attributes discounted", GeneralReliability::Discount),
        ("basic attributes only", GeneralReliability::Ignore),
    ] {
        println!("{title}");
        print!("{:<6}", "");
        for alt in &model.alternatives {
            print!("{alt:>10}");
        }
        println!();
        let options = EvaluateOptions {
            general_reliability,
            trace: false,
        };
        let mut rankings = Vec::new();
        for algorithm in Algorithm::ALL {
            let result = run(&model, algorithm, options)?;
            print!("{:<6}", algorithm.to_string());
            for o in &result.ranked.outcomes {
                print!("{:>10.4}", o.utility);
            }
            println!();
            rankings.push((algorithm, result.ranked.ranking));
        }
        for (algorithm, ranking) in rankings {
            println!("{algorithm:<6}{}", ranking.join(" ≻ "));
        }
        println!();
    }

    // per-grade view of the E2R result, including what stays unknown
    let e2r = run(&model, Algorithm::E2r, EvaluateOptions::default())?;
    println!("E2R distributions ({})", model.frame.labels().join(" "));
    for e in &e2r.evaluations {
        let root = e.root();
        println!("{:<10} {:.3?} unknown {:.3}", e.alternative, root.assigned(), root.unassigned());
    }
    Ok(())
}
