use std::collections::HashSet;

use crate::error::{Error, Result};

/// A finite-dimensional vector space identified with `κ^dim` through labelled basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VecSpace {
    labels: Vec<String>,
}

impl VecSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Invalid(format!("duplicate basis label `{l}`")));
            }
        }
        Ok(VecSpace { labels })
    }

    /// Basis labelled `0..n`.
    pub fn indexed(n: usize) -> Self {
        VecSpace {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `self ⊗ other` with labels `(x⊗y)` in lexicographic index order.
    pub fn tensor(&self, other: &VecSpace) -> VecSpace {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("({a}⊗{b})"));
            }
        }
        VecSpace { labels }
    }
}
