//! Basis-indexed graded vector spaces and degree-homogeneous linear maps.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::Result;

/// One graded component: a dimension and its basis labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub dim: usize,
    pub labels: Vec<String>,
}

impl Component {
    pub fn new(labels: Vec<String>) -> Self {
        Component { dim: labels.len(), labels }
    }

    pub fn anon(dim: usize, prefix: &str) -> Self {
        let labels = (0..dim).map(|i| alloc::format!("{prefix}{i}")).collect();
        Component { dim, labels }
    }
}

/// A finite-window graded vector space, one component per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVectorSpace {
    components: BTreeMap<i64, Component>,
}

impl GradedVectorSpace {
    pub fn new(components: BTreeMap<i64, Component>) -> Result<Self> {
        for c in components.values() {
            let mut seen = alloc::collections::BTreeSet::new();
            for l in &c.labels {
                if !seen.insert(l) {
                    return Err(Error::Precondition(alloc::format!(
                        "duplicate basis label `{l}` within a component"
                    )));
                }
            }
        }
        Ok(GradedVectorSpace { components })
    }

    pub fn single(degree: i64, component: Component) -> Self {
        let mut m = BTreeMap::new();
        m.insert(degree, component);
        GradedVectorSpace { components: m }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.components.get(&degree).map_or(0, |c| c.dim)
    }

    pub fn component(&self, degree: i64) -> Option<&Component> {
        self.components.get(&degree)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.components.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(|c| c.dim).sum()
    }
}

/// A degree-`d` linear map between graded spaces, stored as one exact matrix
/// per source degree; the block at `i` maps degree `i` into degree `i + d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLinearMap {
    pub degree: i64,
    pub source: GradedVectorSpace,
    pub target: GradedVectorSpace,
    blocks: BTreeMap<i64, Mat>,
}

impl GradedLinearMap {
    pub fn new(
        degree: i64,
        source: GradedVectorSpace,
        target: GradedVectorSpace,
        blocks: BTreeMap<i64, Mat>,
    ) -> Result<Self> {
        for (&i, m) in &blocks {
            if m.cols != source.dim(i) || m.rows != target.dim(i + degree) {
                return Err(Error::ShapeMismatch(alloc::format!(
                    "block at degree {i} is {}x{}, expected {}x{}",
                    m.rows,
                    m.cols,
                    target.dim(i + degree),
                    source.dim(i)
                )));
            }
        }
        Ok(GradedLinearMap { degree, source, target, blocks })
    }

    pub fn zero(degree: i64, source: GradedVectorSpace, target: GradedVectorSpace) -> Self {
        GradedLinearMap { degree, source, target, blocks: BTreeMap::new() }
    }

    pub fn block(&self, source_degree: i64) -> Option<&Mat> {
        self.blocks.get(&source_degree)
    }

    pub fn apply(&self, source_degree: i64, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.source.dim(source_degree) {
            return Err(Error::DimensionMismatch(
                "vector length does not match source component".to_string(),
            ));
        }
        match self.blocks.get(&source_degree) {
            Some(m) => Ok(m.apply(v)),
            None => Ok(alloc::vec![crate::scalar::zero(); self.target.dim(source_degree + self.degree)]),
        }
    }

    /// Composition `self ∘ other` (degrees add).
    pub fn compose(&self, other: &GradedLinearMap) -> Result<GradedLinearMap> {
        if other.target != self.source {
            return Err(Error::ShapeMismatch("composition source/target".to_string()));
        }
        let degree = self.degree + other.degree;
        let mut blocks = BTreeMap::new();
        for (&i, m) in &other.blocks {
            if let Some(n) = self.blocks.get(&(i + other.degree)) {
                blocks.insert(i, n.mul(m));
            }
        }
        GradedLinearMap::new(degree, other.source.clone(), self.target.clone(), blocks)
    }
}
