use std::collections::HashMap;
use std::sync::Arc;

use super::RingError;

/// An ordered list of variable names with their cohomological degrees.
///
/// The declaration order fixes the lexicographic tie-break of the canonical
/// term order. A variable declared with degree `None` is ungraded
/// bookkeeping (the Chern-series parameter `t`) and contributes nothing to
/// [`super::Polynomial::graded_degree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    degrees: Vec<Option<i64>>,
    index: HashMap<String, usize>,
}

impl VarSet {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, Option<i64>)>) -> Result<Arc<Self>, RingError> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        for (name, degree) in vars {
            let name = name.into();
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(RingError::DuplicateVariable(name));
            }
            names.push(name);
            degrees.push(degree);
        }
        Ok(Arc::new(VarSet { names, degrees, index }))
    }

    /// Shorthand for a set where every variable has the same degree.
    pub fn uniform<S: Into<String>>(names: impl IntoIterator<Item = S>, degree: i64) -> Result<Arc<Self>, RingError> {
        Self::new(names.into_iter().map(|n| (n, Some(degree))))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, var: usize) -> Option<i64> {
        self.degrees[var]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, RingError> {
        self.position(name)
            .ok_or_else(|| RingError::UnknownVariable(name.to_string()))
    }
}

pub(crate) fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
