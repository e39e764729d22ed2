//! The colored multi-quiver used as the exchange format between every module.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

pub type VertexId = String;

/// One arrow record. Parallel arrows are carried by `mult`, never by repeated
/// records with the same `(src, dst, color)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub src: VertexId,
    pub dst: VertexId,
    pub color: Option<u32>,
    pub mult: u32,
}

impl Arrow {
    pub fn new(src: impl Into<VertexId>, dst: impl Into<VertexId>, color: Option<u32>, mult: u32) -> Self {
        Self { src: src.into(), dst: dst.into(), color, mult }
    }

    fn key(&self) -> (&str, &str, Option<u32>) {
        (&self.src, &self.dst, self.color)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("arrow {src} -> {dst} has an undeclared endpoint `{missing}`")]
    DanglingArrow { src: VertexId, dst: VertexId, missing: VertexId },
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(VertexId),
    #[error("arrow record {src} -> {dst} (color {color:?}) appears twice")]
    DuplicateArrowRecord { src: VertexId, dst: VertexId, color: Option<u32> },
    #[error("arrow {src} -> {dst} has multiplicity {mult}, expected at least 1")]
    NonPositiveMult { src: VertexId, dst: VertexId, mult: i64 },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
}

/// A finite multidigraph with optional arrow colors.
///
/// Equality is multiset equality of vertices and arrow records; declaration
/// order is irrelevant.
#[derive(Debug, Clone, Default)]
pub struct ColoredQuiver {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
}

impl ColoredQuiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build a quiver without checking any invariant. Pair with [`validate`](Self::validate).
    pub fn from_parts(vertices: Vec<VertexId>, arrows: Vec<Arrow>) -> Self {
        Self { vertices, arrows }
    }

    /// Build and validate.
    pub fn try_from_parts(vertices: Vec<VertexId>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let q = Self { vertices, arrows };
        q.validate()?;
        Ok(q)
    }

    /// Uncolored quiver from vertex names and `(src, dst, mult)` triples.
    /// Repeated pairs are merged.
    pub fn uncolored<V: AsRef<str>>(vertices: &[V], arrows: &[(V, V, u32)]) -> Result<Self, QuiverError> {
        let mut q = Self::new();
        for v in vertices {
            q.add_vertex(v.as_ref())?;
        }
        for (s, d, m) in arrows {
            q.add_arrow(s.as_ref(), d.as_ref(), None, *m)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, id: impl Into<VertexId>) -> Result<(), QuiverError> {
        let id = id.into();
        if self.contains(&id) {
            return Err(QuiverError::DuplicateVertex(id));
        }
        self.vertices.push(id);
        Ok(())
    }

    /// Add `mult` parallel arrows, merging into an existing record with the same
    /// `(src, dst, color)`. Adding zero arrows is a no-op.
    pub fn add_arrow(
        &mut self,
        src: impl Into<VertexId>,
        dst: impl Into<VertexId>,
        color: Option<u32>,
        mult: u32,
    ) -> Result<(), QuiverError> {
        let (src, dst) = (src.into(), dst.into());
        for end in [&src, &dst] {
            if !self.contains(end) {
                return Err(QuiverError::DanglingArrow { src: src.clone(), dst: dst.clone(), missing: end.clone() });
            }
        }
        if mult == 0 {
            return Ok(());
        }
        if let Some(a) = self.arrows.iter_mut().find(|a| a.src == src && a.dst == dst && a.color == color) {
            a.mult += mult;
        } else {
            self.arrows.push(Arrow { src, dst, color, mult });
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of arrows counted with multiplicity.
    pub fn arrow_count(&self) -> u64 {
        self.arrows.iter().map(|a| u64::from(a.mult)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.vertices.iter().any(|v| v == id)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn index_map(&self) -> HashMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect()
    }

    pub fn is_colored(&self) -> bool {
        self.arrows.iter().any(|a| a.color.is_some())
    }

    /// Total number of arrows `src -> dst` over all colors.
    pub fn mult_between(&self, src: &str, dst: &str) -> u32 {
        self.arrows.iter().filter(|a| a.src == src && a.dst == dst).map(|a| a.mult).sum()
    }

    /// `m[i][j]` = number of arrows from vertex `i` to vertex `j`, colors ignored.
    /// Assumes a valid quiver.
    pub fn mult_matrix(&self) -> Vec<Vec<u32>> {
        let idx = self.index_map();
        let n = self.vertices.len();
        let mut m = vec![vec![0u32; n]; n];
        for a in &self.arrows {
            m[idx[a.src.as_str()]][idx[a.dst.as_str()]] += a.mult;
        }
        m
    }

    pub fn validate(&self) -> Result<(), QuiverError> {
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut records = HashSet::new();
        for a in &self.arrows {
            for end in [&a.src, &a.dst] {
                if !seen.contains(end.as_str()) {
                    return Err(QuiverError::DanglingArrow {
                        src: a.src.clone(),
                        dst: a.dst.clone(),
                        missing: end.clone(),
                    });
                }
            }
            if a.mult == 0 {
                return Err(QuiverError::NonPositiveMult { src: a.src.clone(), dst: a.dst.clone(), mult: 0 });
            }
            if !records.insert(a.key()) {
                return Err(QuiverError::DuplicateArrowRecord {
                    src: a.src.clone(),
                    dst: a.dst.clone(),
                    color: a.color,
                });
            }
        }
        Ok(())
    }

    /// True iff there is no directed cycle (loops count as cycles). Colors are ignored.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm; `None` when a directed cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let m = self.mult_matrix();
        let n = m.len();
        let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| m[i][j] > 0).count()).collect();
        let mut ready: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = ready.pop() {
            order.push(i);
            for j in 0..n {
                if m[i][j] > 0 {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        ready.push(j);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Full subquiver on `keep`, in this quiver's vertex order.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> ColoredQuiver {
        let vertices = self.vertices.iter().filter(|v| keep.contains(*v)).cloned().collect();
        let arrows = self.arrows.iter().filter(|a| keep.contains(&a.src) && keep.contains(&a.dst)).cloned().collect();
        ColoredQuiver { vertices, arrows }
    }

    /// Forget colors, merging records that become equal.
    pub fn decolored(&self) -> ColoredQuiver {
        let mut q = ColoredQuiver { vertices: self.vertices.clone(), arrows: Vec::new() };
        for a in &self.arrows {
            q.add_arrow(a.src.clone(), a.dst.clone(), None, a.mult).expect("endpoints already validated");
        }
        q
    }

    /// Rename every vertex through `f`.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> VertexId) -> ColoredQuiver {
        let vertices = self.vertices.iter().map(|v| f(v)).collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { src: f(&a.src), dst: f(&a.dst), color: a.color, mult: a.mult })
            .collect();
        ColoredQuiver { vertices, arrows }
    }

    fn sorted_parts(&self) -> (Vec<&VertexId>, Vec<&Arrow>) {
        let mut v: Vec<_> = self.vertices.iter().collect();
        v.sort();
        let mut a: Vec<_> = self.arrows.iter().collect();
        a.sort();
        (v, a)
    }
}

impl PartialEq for ColoredQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.sorted_parts() == other.sorted_parts()
    }
}

impl Eq for ColoredQuiver {}
