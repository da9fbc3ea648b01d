//! Builds a small hierarchy in code, validates it, writes it as JSON, reads
//! it back and ranks the alternatives under a custom utility function.
//!
//! ```bash
//! cargo run --example custom_model
//! ```

use erkit::decision::{run, UtilityFunction};
use erkit::dst::GradeFrame;
use erkit::er::{Algorithm, Assessment};
use erkit::hierarchy::{AttributeNode, EvaluateOptions, EvaluationModel};
use erkit::io::{load_model_str, save_model, LoadOptions};

fn leaf(name: &str, alpha: f64, beta: f64, scores: [&[(&str, f64)]; 2]) -> erkit::Result<AttributeNode> {
    let frame = GradeFrame::new(["poor", "fair", "good"])?;
    Ok(AttributeNode::basic(name)
        .with_reliability(alpha)
        .with_importance(beta)
        .with_assessment("laptop A", Assessment::from_grades(frame.clone(), scores[0])?)
        .with_assessment("laptop B", Assessment::from_grades(frame, scores[1])?))
}

fn main() -> anyhow::Result<()> {
    let frame = GradeFrame::new(["poor", "fair", "good"])?;
    let hardware = AttributeNode::general(
        "hardware",
        vec![
            leaf("screen", 0.9, 0.5, [&[("good", 1.0)], &[("fair", 0.6), ("good", 0.4)]])?,
            leaf("battery", 0.6, 0.5, [&[("poor", 0.7)], &[("good", 0.8)]])?,
        ],
    )
    .with_importance(0.7);
    let price = leaf("price", 1.0, 0.3, [&[("fair", 1.0)], &[("good", 1.0)]])?;
    let root = AttributeNode::general("laptop", vec![hardware, price]);

    let model = EvaluationModel::new(frame.clone(), vec!["laptop A".into(), "laptop B".into()], root)
        .with_utility(UtilityFunction::new(frame, vec![0.0, 0.6, 1.0])?)
        .derive_reliabilities(false)?;
    for d in model.validate() {
        eprintln!("{d}");
    }

    let json = save_model(&model);
    println!("{json}");
    let reloaded = load_model_str(&json, LoadOptions::default())?.model;
    assert_eq!(reloaded, model);

    for algorithm in Algorithm::ALL {
        let result = run(&reloaded, algorithm, EvaluateOptions::default())?;
        let utilities: Vec<String> = result
            .ranked
            .outcomes
            .iter()
            .map(|o| format!("{} {:.4}", o.alternative, o.utility))
            .collect();
        println!("{algorithm}: {}  =>  {}", utilities.join(", "), result.ranked.ranking.join(" ≻ "));
    }
    Ok(())
}
