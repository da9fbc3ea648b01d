//! JSON model documents, result documents and their plain renderings.
//!
//! A model document looks like
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "frame": ["P", "I", "A", "G", "E"],
//!   "utilities": { "P": 0.2, "I": 0.4, "A": 0.6, "G": 0.8, "E": 1.0 },
//!   "alternatives": ["Kawasaki", "Honda"],
//!   "tree": {
//!     "name": "brakes",
//!     "reliability": 0.6,
//!     "children": [
//!       {
//!         "name": "stopping power",
//!         "reliability": 0.9,
//!         "importance": 0.4,
//!         "assessments": { "Kawasaki": { "G": 1.0 }, "Honda": { "G": 0.6 } }
//!       }
//!     ]
//!   }
//! }
//! ```
//!
//! `utilities` is optional (default `n / N`). Grades left out of an
//! assessment get zero; whatever the degrees do not cover is unassigned.
//! General-node reliabilities may be omitted and are then derived as the mean
//! of the children.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::decision::{Run, UtilityFunction};
use crate::dst::GradeFrame;
use crate::er::{Algorithm, Assessment, TraceStep};
use crate::hierarchy::{AttributeNode, Diagnostic, EvaluationModel, Severity, PATH_SEPARATOR};

pub const SCHEMA_VERSION: u32 = 1;

/// The motorcycle performance assessment: four alternatives, 19 basic
/// attributes under engine, operation and general.
pub const MOTORCYCLE_JSON: &str = include_str!("../data/motorcycle.json");

pub fn motorcycle() -> EvaluationModel {
    load_model_str(MOTORCYCLE_JSON, LoadOptions::default())
        .expect("bundled dataset is valid")
        .model
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub schema_version: u32,
    pub frame: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utilities: Option<IndexMap<String, f64>>,
    pub alternatives: Vec<String>,
    pub tree: NodeDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeDocument {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reliability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub importance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<NodeDocument>,
    /// Alternative → grade → degree.
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub assessments: IndexMap<String, IndexMap<String, f64>>,
}

const MODEL_KEYS: &[&str] = &["schema_version", "frame", "utilities", "alternatives", "tree"];
const NODE_KEYS: &[&str] = &["name", "reliability", "importance", "weight", "children", "assessments"];

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Reject unknown keys, require explicit general-node reliabilities to
    /// match the mean of their children, and treat warnings as errors.
    pub strict: bool,
    /// Rescale each sibling group's importances to sum to one instead of
    /// reporting them.
    pub renormalize_importance: bool,
}

#[derive(Debug)]
pub struct LoadedModel {
    pub model: EvaluationModel,
    pub warnings: Vec<Diagnostic>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{}", DiagnosticList(.0))]
    Invalid(Vec<Diagnostic>),
}

struct DiagnosticList<'a>(&'a [Diagnostic]);

impl fmt::Display for DiagnosticList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl From<serde_json::Error> for LoadError {
    fn from(e: serde_json::Error) -> Self {
        LoadError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub fn load_model_path(path: impl AsRef<Path>, options: LoadOptions) -> Result<LoadedModel, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_model_str(&text, options)
}

pub fn load_model_str(text: &str, options: LoadOptions) -> Result<LoadedModel, LoadError> {
    let doc: ModelDocument = serde_json::from_str(text)?;
    let mut diagnostics = Vec::new();
    if options.strict {
        let value: Value = serde_json::from_str(text)?;
        unknown_keys(&value, &mut diagnostics);
    }
    let model = from_document(&doc, &mut diagnostics);

    let Some(mut model) = model.filter(|_| !has_errors(&diagnostics)) else {
        return Err(LoadError::Invalid(diagnostics));
    };
    if options.renormalize_importance {
        model.renormalize_importances();
    }
    // derive general-node reliabilities when every leaf has one
    if leaves_have_reliability(&model.root) {
        match model.derive_reliabilities(options.strict) {
            Ok(derived) => model = derived,
            Err(e) => diagnostics.push(Diagnostic::error("", e.to_string())),
        }
    }
    diagnostics.extend(model.validate());
    if options.strict {
        for d in &mut diagnostics {
            d.severity = Severity::Error;
        }
    }
    if has_errors(&diagnostics) {
        return Err(LoadError::Invalid(diagnostics));
    }
    Ok(LoadedModel {
        model,
        warnings: diagnostics,
    })
}

fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(|d| d.severity == Severity::Error)
}

fn leaves_have_reliability(node: &AttributeNode) -> bool {
    if node.is_basic() {
        node.reliability.is_some()
    } else {
        node.children.iter().all(leaves_have_reliability)
    }
}

fn unknown_keys(value: &Value, out: &mut Vec<Diagnostic>) {
    let Value::Object(top) = value else { return };
    for key in top.keys().filter(|k| !MODEL_KEYS.contains(&k.as_str())) {
        out.push(Diagnostic::error("", format!("unknown key `{key}`")));
    }
    fn node(value: &Value, path: &str, out: &mut Vec<Diagnostic>) {
        let Value::Object(map) = value else { return };
        for key in map.keys().filter(|k| !NODE_KEYS.contains(&k.as_str())) {
            out.push(Diagnostic::error(path, format!("unknown key `{key}`")));
        }
        if let Some(Value::Array(children)) = map.get("children") {
            for child in children {
                let name = child.get("name").and_then(Value::as_str).unwrap_or("?");
                node(child, &format!("{path}{PATH_SEPARATOR}{name}"), out);
            }
        }
    }
    if let Some(tree) = top.get("tree") {
        let name = tree.get("name").and_then(Value::as_str).unwrap_or("?");
        node(tree, name, out);
    }
}

fn from_document(doc: &ModelDocument, out: &mut Vec<Diagnostic>) -> Option<EvaluationModel> {
    if doc.schema_version != SCHEMA_VERSION {
        out.push(Diagnostic::error(
            "",
            format!("unsupported schema_version {} (expected {SCHEMA_VERSION})", doc.schema_version),
        ));
    }
    let frame = match GradeFrame::new(doc.frame.iter().cloned()) {
        Ok(f) => f,
        Err(e) => {
            out.push(Diagnostic::error("", e.to_string()));
            return None;
        }
    };
    let utility = match &doc.utilities {
        None => UtilityFunction::linear(frame.clone()),
        Some(map) => utility_from_map(&frame, map, out)?,
    };
    let root = node_from_document(&doc.tree, &doc.tree.name, &frame, out);
    Some(EvaluationModel::new(frame, doc.alternatives.clone(), root).with_utility(utility))
}

fn utility_from_map(
    frame: &GradeFrame,
    map: &IndexMap<String, f64>,
    out: &mut Vec<Diagnostic>,
) -> Option<UtilityFunction> {
    let mut ok = true;
    for key in map.keys() {
        if frame.index_of(key).is_err() {
            out.push(Diagnostic::error("", format!("utility given for unknown grade `{key}`")));
            ok = false;
        }
    }
    let mut values = Vec::with_capacity(frame.len());
    for label in frame.labels() {
        match map.get(label) {
            Some(&u) => values.push(u),
            None => {
                out.push(Diagnostic::error("", format!("grade `{label}` missing from utilities")));
                ok = false;
            }
        }
    }
    if !ok {
        return None;
    }
    UtilityFunction::new(frame.clone(), values)
        .map_err(|e| out.push(Diagnostic::error("", e.to_string())))
        .ok()
}

fn node_from_document(
    doc: &NodeDocument,
    path: &str,
    frame: &GradeFrame,
    out: &mut Vec<Diagnostic>,
) -> AttributeNode {
    let children = doc
        .children
        .iter()
        .map(|c| node_from_document(c, &format!("{path}{PATH_SEPARATOR}{}", c.name), frame, out))
        .collect();
    let mut node = AttributeNode::general(doc.name.clone(), children);
    node.reliability = doc.reliability;
    node.importance = doc.importance;
    node.weight = doc.weight;
    for (alt, degrees) in &doc.assessments {
        let pairs: Vec<(&str, f64)> = degrees.iter().map(|(g, d)| (g.as_str(), *d)).collect();
        match Assessment::from_grades(frame.clone(), &pairs) {
            Ok(a) => {
                node.assessments.insert(alt.clone(), a);
            }
            Err(e) => out.push(Diagnostic::error(path, format!("assessment for `{alt}`: {e}"))),
        }
    }
    node
}

pub fn to_document(model: &EvaluationModel) -> ModelDocument {
    fn node(n: &AttributeNode, labels: &[String]) -> NodeDocument {
        NodeDocument {
            name: n.name.clone(),
            reliability: n.reliability,
            importance: n.importance,
            weight: n.weight,
            children: n.children.iter().map(|c| node(c, labels)).collect(),
            assessments: n
                .assessments
                .iter()
                .map(|(alt, a)| {
                    let degrees = labels
                        .iter()
                        .zip(a.degrees())
                        .filter(|(_, d)| **d != 0.0)
                        .map(|(l, d)| (l.clone(), *d))
                        .collect();
                    (alt.clone(), degrees)
                })
                .collect(),
        }
    }
    let labels = model.frame.labels();
    ModelDocument {
        schema_version: SCHEMA_VERSION,
        frame: labels.to_vec(),
        utilities: Some(labels.iter().cloned().zip(model.utility.values().iter().copied()).collect()),
        alternatives: model.alternatives.clone(),
        tree: node(&model.root, labels),
    }
}

pub fn save_model(model: &EvaluationModel) -> String {
    let mut text = serde_json::to_string_pretty(&to_document(model)).expect("model documents always serialize");
    text.push('\n');
    text
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

/// Everything computed for a set of algorithm runs over one model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub frame: Vec<String>,
    pub runs: Vec<RunDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Vec<ComparisonEntry>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunDocument {
    pub algorithm: Algorithm,
    pub alternatives: Vec<AlternativeDocument>,
    pub ranking: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternativeDocument {
    pub alternative: String,
    /// Post-order, root last.
    pub nodes: Vec<NodeResultDocument>,
    /// Root degrees after spreading the unassigned belief.
    pub redistributed: IndexMap<String, f64>,
    pub expected_utility: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeResultDocument {
    pub path: String,
    pub assigned: IndexMap<String, f64>,
    pub unassigned: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
}

/// How the three algorithms differ on one alternative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub alternative: String,
    /// Unassigned root belief per algorithm id.
    pub unknown: IndexMap<String, f64>,
    /// Root degrees of OER and MER minus those of E2R, per grade and Unknown.
    pub delta_vs_e2r: IndexMap<String, IndexMap<String, f64>>,
    pub e2r_unknown_at_least_mer: bool,
}

impl RunDocument {
    pub fn from_run(run: &Run, frame: &GradeFrame) -> Self {
        let labels = frame.labels();
        let by_grade = |values: &[f64]| -> IndexMap<String, f64> {
            labels.iter().cloned().zip(values.iter().copied()).collect()
        };
        let alternatives = run
            .evaluations
            .iter()
            .zip(&run.ranked.outcomes)
            .map(|(e, o)| AlternativeDocument {
                alternative: e.alternative.clone(),
                nodes: e
                    .nodes
                    .iter()
                    .map(|n| NodeResultDocument {
                        path: n.path.clone(),
                        assigned: by_grade(n.combined.assigned()),
                        unassigned: n.combined.unassigned(),
                        trace: n.trace.as_ref().map(|t| t.steps.clone()),
                    })
                    .collect(),
                redistributed: by_grade(&o.redistributed),
                expected_utility: o.utility,
            })
            .collect();
        RunDocument {
            algorithm: run.ranked.algorithm,
            alternatives,
            ranking: run.ranked.ranking.clone(),
        }
    }

    pub fn utility_of(&self, alternative: &str) -> Option<f64> {
        self.alternative(alternative).map(|a| a.expected_utility)
    }

    pub fn alternative(&self, alternative: &str) -> Option<&AlternativeDocument> {
        self.alternatives.iter().find(|a| a.alternative == alternative)
    }
}

impl AlternativeDocument {
    pub fn root(&self) -> &NodeResultDocument {
        self.nodes.last().expect("at least the root node")
    }
}

impl ResultDocument {
    pub fn new(frame: &GradeFrame, runs: &[Run]) -> Self {
        ResultDocument {
            schema_version: SCHEMA_VERSION,
            frame: frame.labels().to_vec(),
            runs: runs.iter().map(|r| RunDocument::from_run(r, frame)).collect(),
            comparison: None,
        }
    }

    pub fn run(&self, algorithm: Algorithm) -> Option<&RunDocument> {
        self.runs.iter().find(|r| r.algorithm == algorithm)
    }

    /// Fills in `comparison`; needs runs of all three algorithms.
    pub fn with_comparison(mut self) -> Self {
        let (Some(oer), Some(mer), Some(e2r)) = (
            self.run(Algorithm::Oer),
            self.run(Algorithm::Mer),
            self.run(Algorithm::E2r),
        ) else {
            return self;
        };
        let entries = e2r
            .alternatives
            .iter()
            .map(|base| {
                let name = &base.alternative;
                let root_of = |r: &RunDocument| r.alternative(name).expect("same alternatives").root().clone();
                let e = base.root();
                let mut unknown = IndexMap::new();
                let mut delta = IndexMap::new();
                for run in [oer, mer, e2r] {
                    let root = root_of(run);
                    unknown.insert(run.algorithm.id().to_string(), root.unassigned);
                    if run.algorithm != Algorithm::E2r {
                        let mut d: IndexMap<String, f64> = root
                            .assigned
                            .iter()
                            .map(|(g, v)| (g.clone(), v - e.assigned[g]))
                            .collect();
                        d.insert("Unknown".into(), root.unassigned - e.unassigned);
                        delta.insert(run.algorithm.id().to_string(), d);
                    }
                }
                ComparisonEntry {
                    alternative: name.clone(),
                    e2r_unknown_at_least_mer: unknown["e2r"] >= unknown["mer"],
                    unknown,
                    delta_vs_e2r: delta,
                }
            })
            .collect();
        self.comparison = Some(entries);
        self
    }
}

pub fn load_results_str(text: &str) -> Result<ResultDocument, LoadError> {
    Ok(serde_json::from_str(text)?)
}

pub fn save_results(doc: &ResultDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(doc).expect("result documents always serialize");
            text.push('\n');
            text
        }
        OutputFormat::Table => render_table(doc),
        OutputFormat::Csv => render_csv(doc),
    }
}

/// Aligned text: root distributions per algorithm, then the utility and
/// ranking tables.
fn render_table(doc: &ResultDocument) -> String {
    let mut s = String::new();
    let alternatives: Vec<&str> = doc
        .runs
        .first()
        .map(|r| r.alternatives.iter().map(|a| a.alternative.as_str()).collect())
        .unwrap_or_default();
    let name_width = alternatives.iter().map(|a| a.chars().count()).max().unwrap_or(0).max(11);

    for run in &doc.runs {
        let _ = writeln!(s, "{} belief distributions", run.algorithm);
        let _ = write!(s, "{:<name_width$}", "");
        for g in doc.frame.iter().map(String::as_str).chain(["Unknown"]) {
            let _ = write!(s, " {g:>8}");
        }
        s.push('\n');
        for alt in &run.alternatives {
            let root = alt.root();
            let _ = write!(s, "{:<name_width$}", alt.alternative);
            for v in root.assigned.values().chain([&root.unassigned]) {
                let _ = write!(s, " {v:>8.4}");
            }
            s.push('\n');
        }
        if run.alternatives.iter().any(|a| a.nodes.iter().any(|n| n.trace.is_some())) {
            render_trace(&mut s, run);
        }
        s.push('\n');
    }

    let col = alternatives.iter().map(|a| a.chars().count()).max().unwrap_or(0).max(8);
    let _ = writeln!(s, "Expected utilities");
    let _ = write!(s, "{:<9}", "");
    for a in &alternatives {
        let _ = write!(s, " {a:>col$}");
    }
    s.push('\n');
    for run in &doc.runs {
        let _ = write!(s, "{:<9}", run.algorithm.display_name());
        for alt in &run.alternatives {
            let _ = write!(s, " {:>col$.4}", alt.expected_utility);
        }
        s.push('\n');
    }

    let _ = writeln!(s, "\nRanking");
    for run in &doc.runs {
        let _ = writeln!(s, "{:<9} {}", run.algorithm.display_name(), run.ranking.join(" ≻ "));
    }

    if let Some(comparison) = &doc.comparison {
        let _ = writeln!(s, "\nUnknown mass");
        let _ = writeln!(
            s,
            "{:<name_width$} {:>8} {:>8} {:>8}  E2R ≥ MER",
            "", "OER", "MER", "E2R"
        );
        for c in comparison {
            let _ = writeln!(
                s,
                "{:<name_width$} {:>8.4} {:>8.4} {:>8.4}  {}",
                c.alternative,
                c.unknown["oer"],
                c.unknown["mer"],
                c.unknown["e2r"],
                if c.e2r_unknown_at_least_mer { "yes" } else { "no" }
            );
        }
        let _ = writeln!(s, "\nDifference from E2R");
        let _ = write!(s, "{:<name_width$} {:<4}", "", "");
        for g in doc.frame.iter().map(String::as_str).chain(["Unknown"]) {
            let _ = write!(s, " {g:>8}");
        }
        s.push('\n');
        for c in comparison {
            for (algo, delta) in &c.delta_vs_e2r {
                let _ = write!(s, "{:<name_width$} {:<4}", c.alternative, algo.to_uppercase());
                for v in delta.values() {
                    let _ = write!(s, " {v:>+8.4}");
                }
                s.push('\n');
            }
        }
    }
    s
}

fn render_trace(s: &mut String, run: &RunDocument) {
    for alt in &run.alternatives {
        for node in alt.nodes.iter().filter(|n| n.trace.is_some()) {
            let _ = writeln!(s, "  {} / {}", alt.alternative, node.path);
            for (i, step) in node.trace.iter().flatten().enumerate() {
                let k = step.normaliser.map_or_else(|| "-".to_string(), |k| format!("{k:.6}"));
                let masses: Vec<String> = step.singletons.iter().map(|m| format!("{m:.4}")).collect();
                let _ = writeln!(
                    s,
                    "    {:>2}  K={k:<10} m=[{}]  H={:.4}  Ω={:.4}",
                    i + 1,
                    masses.join(", "),
                    step.ignorance,
                    step.omega
                );
            }
        }
    }
}

/// Plot data: one row per algorithm, alternative and grade (plus Unknown)
/// with the root belief degree.
fn render_csv(doc: &ResultDocument) -> String {
    let mut s = String::from("algorithm,alternative,grade,belief\n");
    for run in &doc.runs {
        for alt in &run.alternatives {
            let root = alt.root();
            let rows = root
                .assigned
                .iter()
                .map(|(g, v)| (g.as_str(), *v))
                .chain([("Unknown", root.unassigned)]);
            for (grade, v) in rows {
                let _ = writeln!(s, "{},{},{},{}", run.algorithm.id(), csv_field(&alt.alternative), csv_field(grade), v);
            }
        }
    }
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
