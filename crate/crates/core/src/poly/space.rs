use std::collections::HashSet;
use std::sync::Arc;

use super::PolyError;

/// Ordered variable names: the x-block, the dual y-block and auxiliary variables.
///
/// Variables are indexed x first, then y, then aux.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSpace {
    x_vars: Vec<String>,
    y_vars: Vec<String>,
    aux_vars: Vec<String>,
}

impl VarSpace {
    pub fn new(
        x_vars: Vec<String>,
        y_vars: Vec<String>,
        aux_vars: Vec<String>,
    ) -> Result<Arc<VarSpace>, PolyError> {
        if !y_vars.is_empty() && y_vars.len() != x_vars.len() {
            return Err(PolyError::InvalidSpace(
                "y-block must be empty or match the x-block".into(),
            ));
        }
        let mut seen = HashSet::new();
        for v in x_vars.iter().chain(&y_vars).chain(&aux_vars) {
            if !seen.insert(v.as_str()) {
                return Err(PolyError::InvalidSpace(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(VarSpace {
            x_vars,
            y_vars,
            aux_vars,
        }))
    }

    /// x1 … xn
    pub fn affine(n: usize) -> Arc<VarSpace> {
        Arc::new(VarSpace {
            x_vars: (1..=n).map(|i| format!("x{i}")).collect(),
            y_vars: Vec::new(),
            aux_vars: Vec::new(),
        })
    }

    /// x1 … xn, y1 … yn: coordinates on the cotangent space.
    pub fn phase(n: usize) -> Arc<VarSpace> {
        Arc::new(VarSpace {
            x_vars: (1..=n).map(|i| format!("x{i}")).collect(),
            y_vars: (1..=n).map(|i| format!("y{i}")).collect(),
            aux_vars: Vec::new(),
        })
    }

    pub fn aux_only(names: Vec<String>) -> Result<Arc<VarSpace>, PolyError> {
        VarSpace::new(Vec::new(), Vec::new(), names)
    }

    /// Same space with extra auxiliary variables appended.
    pub fn with_aux(&self, names: &[String]) -> Result<Arc<VarSpace>, PolyError> {
        let mut aux = self.aux_vars.clone();
        aux.extend(names.iter().cloned());
        VarSpace::new(self.x_vars.clone(), self.y_vars.clone(), aux)
    }

    /// The x-block alone.
    pub fn base(&self) -> Arc<VarSpace> {
        Arc::new(VarSpace {
            x_vars: self.x_vars.clone(),
            y_vars: Vec::new(),
            aux_vars: Vec::new(),
        })
    }

    /// Number of x-variables.
    pub fn n(&self) -> usize {
        self.x_vars.len()
    }

    pub fn len(&self) -> usize {
        self.x_vars.len() + self.y_vars.len() + self.aux_vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn has_y(&self) -> bool {
        !self.y_vars.is_empty()
    }

    pub fn x_vars(&self) -> &[String] {
        &self.x_vars
    }

    pub fn y_vars(&self) -> &[String] {
        &self.y_vars
    }

    pub fn aux_vars(&self) -> &[String] {
        &self.aux_vars
    }

    pub fn name(&self, i: usize) -> &str {
        let nx = self.x_vars.len();
        let ny = self.y_vars.len();
        if i < nx {
            &self.x_vars[i]
        } else if i < nx + ny {
            &self.y_vars[i - nx]
        } else {
            &self.aux_vars[i - nx - ny]
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.x_vars
            .iter()
            .chain(&self.y_vars)
            .chain(&self.aux_vars)
            .map(|s| s.as_str())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names().position(|v| v == name)
    }

    /// Index of x_{i+1}.
    pub fn x(&self, i: usize) -> usize {
        assert!(i < self.x_vars.len());
        i
    }

    /// Index of y_{i+1}.
    pub fn y(&self, i: usize) -> usize {
        assert!(i < self.y_vars.len());
        self.x_vars.len() + i
    }

    /// Index of the i-th auxiliary variable.
    pub fn aux(&self, i: usize) -> usize {
        assert!(i < self.aux_vars.len());
        self.x_vars.len() + self.y_vars.len() + i
    }

    pub fn x_indices(&self) -> std::ops::Range<usize> {
        0..self.x_vars.len()
    }

    pub fn y_indices(&self) -> std::ops::Range<usize> {
        self.x_vars.len()..self.x_vars.len() + self.y_vars.len()
    }
}

pub(crate) fn same_space(a: &Arc<VarSpace>, b: &Arc<VarSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
