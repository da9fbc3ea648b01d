//! Multi-level evaluation hierarchies.
//!
//! Each general attribute is assessed by aggregating its children with one of
//! the flat algorithms; its combined assessment, unassigned belief included,
//! is then an ordinary incomplete assessment for the level above.

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;

use crate::decision::UtilityFunction;
use crate::dst::GradeFrame;
use crate::er::{aggregate, aggregate_traced, AggregationTrace, Algorithm, Assessment, CombinedAssessment, WeightedAssessment};
use crate::error::{Error, Result};

/// Tolerance on sibling importance sums.
pub const IMPORTANCE_SUM_TOLERANCE: f64 = 1e-6;

/// Tolerance when comparing an explicit general-node reliability with the
/// mean of its children.
pub const RELIABILITY_MATCH_TOLERANCE: f64 = 1e-6;

pub const PATH_SEPARATOR: char = '/';

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeNode {
    pub name: String,
    /// α; derived as the mean of the children when absent on a general node.
    pub reliability: Option<f64>,
    /// β, relative to siblings.
    pub importance: Option<f64>,
    /// Explicit OER/MER weight. Falls back to α for OER and β for MER.
    pub weight: Option<f64>,
    pub children: Vec<AttributeNode>,
    /// Alternative id → assessment. Basic attributes only.
    pub assessments: IndexMap<String, Assessment>,
}

impl AttributeNode {
    pub fn basic(name: impl Into<String>) -> Self {
        AttributeNode {
            name: name.into(),
            reliability: None,
            importance: None,
            weight: None,
            children: Vec::new(),
            assessments: IndexMap::new(),
        }
    }

    pub fn general(name: impl Into<String>, children: Vec<AttributeNode>) -> Self {
        AttributeNode {
            children,
            ..Self::basic(name)
        }
    }

    pub fn with_reliability(mut self, alpha: f64) -> Self {
        self.reliability = Some(alpha);
        self
    }

    pub fn with_importance(mut self, beta: f64) -> Self {
        self.importance = Some(beta);
        self
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = Some(weight);
        self
    }

    pub fn with_assessment(mut self, alternative: impl Into<String>, assessment: Assessment) -> Self {
        self.assessments.insert(alternative.into(), assessment);
        self
    }

    pub fn is_basic(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of basic attributes in this subtree.
    pub fn basic_count(&self) -> usize {
        if self.is_basic() {
            1
        } else {
            self.children.iter().map(AttributeNode::basic_count).sum()
        }
    }

    /// The explicit reliability, or the mean over children, recursively.
    pub fn effective_reliability(&self) -> Option<f64> {
        if let Some(alpha) = self.reliability {
            return Some(alpha);
        }
        if self.is_basic() {
            return None;
        }
        let mut sum = 0.0;
        for child in &self.children {
            sum += child.effective_reliability()?;
        }
        Some(sum / self.children.len() as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    pub fn error(path: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn warning(path: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        if self.path.is_empty() {
            write!(f, "{level}: {}", self.message)
        } else {
            write!(f, "{level}: {}: {}", self.path, self.message)
        }
    }
}

/// How general-node reliabilities enter the combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeneralReliability {
    /// A general node's (possibly derived) α discounts its result when it is
    /// combined with its siblings, as for basic attributes.
    #[default]
    Discount,
    /// Only basic attributes are reliability-discounted; general nodes enter
    /// their parent with α = 1.
    Ignore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvaluateOptions {
    pub general_reliability: GeneralReliability,
    pub trace: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeResult {
    pub path: String,
    pub combined: CombinedAssessment,
    /// Present for general nodes when tracing was requested.
    pub trace: Option<AggregationTrace>,
}

/// Results for every node of one alternative, in post-order (root last).
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub algorithm: Algorithm,
    pub alternative: String,
    pub nodes: Vec<NodeResult>,
}

impl Evaluation {
    pub fn root(&self) -> &CombinedAssessment {
        &self.nodes.last().expect("an evaluation covers at least the root").combined
    }

    pub fn node(&self, path: &str) -> Option<&NodeResult> {
        self.nodes.iter().find(|n| n.path == path)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationModel {
    pub frame: GradeFrame,
    pub alternatives: Vec<String>,
    pub root: AttributeNode,
    pub utility: UtilityFunction,
}

impl EvaluationModel {
    pub fn new(frame: GradeFrame, alternatives: Vec<String>, root: AttributeNode) -> Self {
        let utility = UtilityFunction::linear(frame.clone());
        EvaluationModel {
            frame,
            alternatives,
            root,
            utility,
        }
    }

    pub fn with_utility(mut self, utility: UtilityFunction) -> Self {
        self.utility = utility;
        self
    }

    /// Every problem found, with node paths. No error-severity entries means
    /// the model is well-formed; warnings do not block evaluation.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.alternatives.is_empty() {
            out.push(Diagnostic::error("", "no alternatives declared"));
        }
        let mut seen = HashSet::new();
        for alt in &self.alternatives {
            if !seen.insert(alt.as_str()) {
                out.push(Diagnostic::error("", format!("duplicate alternative `{alt}`")));
            }
        }
        if self.utility.frame() != &self.frame {
            out.push(Diagnostic::error("", "utility function is defined on a different frame"));
        } else if !self.utility.is_monotone() {
            out.push(Diagnostic::warning(
                "",
                "utilities decrease along the grade order",
            ));
        }
        self.validate_node(&self.root, &self.root.name, true, &mut out);
        out
    }

    pub fn is_well_formed(&self) -> bool {
        self.validate().iter().all(|d| d.severity < Severity::Error)
    }

    fn validate_node(&self, node: &AttributeNode, path: &str, is_root: bool, out: &mut Vec<Diagnostic>) {
        if node.name.trim().is_empty() {
            out.push(Diagnostic::error(path, "attribute has an empty name"));
        }
        for (what, value) in [
            ("reliability", node.reliability),
            ("importance", node.importance),
            ("weight", node.weight),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
                    out.push(Diagnostic::error(path, format!("{what} {v} is outside [0, 1]")));
                }
            }
        }

        if node.is_basic() {
            if node.reliability.is_none() && node.weight.is_none() && !is_root {
                out.push(Diagnostic::warning(
                    path,
                    "basic attribute has no reliability; OER and E2R cannot evaluate it",
                ));
            }
            for alt in &self.alternatives {
                match node.assessments.get(alt) {
                    None => out.push(Diagnostic::error(path, format!("no assessment for `{alt}`"))),
                    Some(a) if a.frame() != &self.frame => {
                        out.push(Diagnostic::error(path, format!("assessment for `{alt}` uses another frame")))
                    }
                    Some(_) => {}
                }
            }
            for alt in node.assessments.keys() {
                if !self.alternatives.contains(alt) {
                    out.push(Diagnostic::error(path, format!("assessment for undeclared alternative `{alt}`")));
                }
            }
            return;
        }

        if !node.assessments.is_empty() {
            out.push(Diagnostic::error(path, "general attribute carries assessments"));
        }
        let mut names = HashSet::new();
        for child in &node.children {
            if !names.insert(child.name.as_str()) {
                out.push(Diagnostic::error(path, format!("duplicate child `{}`", child.name)));
            }
        }
        let with_importance = node.children.iter().filter(|c| c.importance.is_some()).count();
        if with_importance == node.children.len() {
            let sum: f64 = node.children.iter().filter_map(|c| c.importance).sum();
            if (sum - 1.0).abs() > IMPORTANCE_SUM_TOLERANCE {
                out.push(Diagnostic::error(path, format!("child importances sum to {sum}, expected 1")));
            }
        } else if with_importance > 0 {
            out.push(Diagnostic::error(path, "some children have an importance and some do not"));
        }
        for child in &node.children {
            let child_path = format!("{path}{PATH_SEPARATOR}{}", child.name);
            self.validate_node(child, &child_path, false, out);
        }
    }

    /// Fills in missing general-node reliabilities with the mean of their
    /// children, bottom-up. With `strict`, explicit general-node values must
    /// also agree with that mean.
    pub fn derive_reliabilities(&self, strict: bool) -> Result<EvaluationModel> {
        fn walk(node: &mut AttributeNode, path: &str, strict: bool) -> Result<f64> {
            if node.is_basic() {
                return node.reliability.ok_or_else(|| Error::MissingParameter {
                    path: path.to_string(),
                    what: "reliability",
                });
            }
            let mut sum = 0.0;
            for child in &mut node.children {
                let child_path = format!("{path}{PATH_SEPARATOR}{}", child.name);
                sum += walk(child, &child_path, strict)?;
            }
            let derived = sum / node.children.len() as f64;
            match node.reliability {
                Some(explicit) => {
                    if strict && (explicit - derived).abs() > RELIABILITY_MATCH_TOLERANCE {
                        return Err(Error::ReliabilityMismatch {
                            path: path.to_string(),
                            explicit,
                            derived,
                        });
                    }
                    Ok(explicit)
                }
                None => {
                    node.reliability = Some(derived);
                    Ok(derived)
                }
            }
        }
        let mut model = self.clone();
        let path = model.root.name.clone();
        walk(&mut model.root, &path, strict)?;
        Ok(model)
    }

    /// Rescales every sibling group's importances to sum to one.
    pub fn renormalize_importances(&mut self) {
        fn walk(node: &mut AttributeNode) {
            let sum: f64 = node.children.iter().filter_map(|c| c.importance).sum();
            if sum > 0.0 && node.children.iter().all(|c| c.importance.is_some()) {
                for child in &mut node.children {
                    child.importance = child.importance.map(|b| b / sum);
                }
            }
            node.children.iter_mut().for_each(walk);
        }
        walk(&mut self.root);
    }

    /// Aggregates the whole hierarchy for one alternative.
    pub fn evaluate(
        &self,
        algorithm: Algorithm,
        alternative: &str,
        options: EvaluateOptions,
    ) -> Result<Evaluation> {
        if !self.alternatives.iter().any(|a| a == alternative) {
            return Err(Error::UnknownAlternative(alternative.to_string()));
        }
        let mut nodes = Vec::new();
        let ctx = Context {
            algorithm,
            alternative,
            options,
        };
        ctx.visit(&self.root, &self.root.name, &mut nodes)?;
        Ok(Evaluation {
            algorithm,
            alternative: alternative.to_string(),
            nodes,
        })
    }

    /// Root assessments for every alternative, in declaration order.
    pub fn evaluate_all(&self, algorithm: Algorithm, options: EvaluateOptions) -> Result<Vec<Evaluation>> {
        self.alternatives
            .iter()
            .map(|alt| self.evaluate(algorithm, alt, options))
            .collect()
    }
}

struct Context<'a> {
    algorithm: Algorithm,
    alternative: &'a str,
    options: EvaluateOptions,
}

impl Context<'_> {
    fn visit(&self, node: &AttributeNode, path: &str, out: &mut Vec<NodeResult>) -> Result<CombinedAssessment> {
        if node.is_basic() {
            let assessment = node.assessments.get(self.alternative).ok_or_else(|| Error::MissingAssessment {
                path: path.to_string(),
                alternative: self.alternative.to_string(),
            })?;
            let combined = CombinedAssessment::from_assessment(assessment);
            out.push(NodeResult {
                path: path.to_string(),
                combined: combined.clone(),
                trace: None,
            });
            return Ok(combined);
        }

        let mut items = Vec::with_capacity(node.children.len());
        for child in &node.children {
            let child_path = format!("{path}{PATH_SEPARATOR}{}", child.name);
            let result = self.visit(child, &child_path, out)?;
            let item = self
                .weighted(child, &child_path, result.to_assessment())
                .map_err(|e| e.at(&child_path))?;
            items.push(item);
        }

        let (combined, trace) = if self.options.trace {
            let (c, t) = aggregate_traced(self.algorithm, &items).map_err(|e| e.at(path))?;
            (c, Some(t))
        } else {
            (aggregate(self.algorithm, &items).map_err(|e| e.at(path))?, None)
        };
        out.push(NodeResult {
            path: path.to_string(),
            combined: combined.clone(),
            trace,
        });
        Ok(combined)
    }

    fn weighted(&self, node: &AttributeNode, path: &str, assessment: Assessment) -> Result<WeightedAssessment> {
        let missing = |what| Error::MissingParameter {
            path: path.to_string(),
            what,
        };
        let reliability = || -> Result<f64> {
            if !node.is_basic() && self.options.general_reliability == GeneralReliability::Ignore {
                return Ok(1.0);
            }
            node.effective_reliability().ok_or_else(|| missing("reliability"))
        };
        let item = WeightedAssessment::new(assessment);
        match self.algorithm {
            Algorithm::Oer => {
                let w = match node.weight {
                    Some(w) => w,
                    None => reliability()?,
                };
                item.with_weight(w)
            }
            Algorithm::Mer => {
                let w = node.weight.or(node.importance).ok_or_else(|| missing("importance"))?;
                item.with_weight(w)
            }
            Algorithm::E2r => {
                let beta = node.importance.ok_or_else(|| missing("importance"))?;
                item.with_reliability(reliability()?)?.with_importance(beta)
            }
        }
    }
}
