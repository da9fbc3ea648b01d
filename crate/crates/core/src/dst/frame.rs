use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered set of evaluation grades, worst first.
///
/// Cloning is cheap; all clones share the label storage.
#[derive(Clone)]
pub struct GradeFrame {
    labels: Arc<[String]>,
}

impl GradeFrame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::InvalidFrame(format!(
                "need at least 2 grades, got {}",
                labels.len()
            )));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.trim().is_empty() {
                return Err(Error::InvalidFrame(format!("grade {i} has an empty label")));
            }
            if labels[..i].contains(label) {
                return Err(Error::InvalidFrame(format!("duplicate grade `{label}`")));
            }
        }
        Ok(GradeFrame {
            labels: labels.into(),
        })
    }

    /// Generic labels `H1`..`Hn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("H{i}")))
    }

    /// The five-grade poor/indifferent/average/good/excellent scale, abbreviated.
    pub fn five_point() -> Self {
        Self::new(["P", "I", "A", "G", "E"]).expect("static frame is valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownGrade(label.to_string()))
    }

    pub(crate) fn ensure_same(&self, other: &GradeFrame) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

impl PartialEq for GradeFrame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for GradeFrame {}

impl fmt::Debug for GradeFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

impl fmt::Display for GradeFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(", "))
    }
}
