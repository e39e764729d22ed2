//! Underlying undirected multigraph of a quiver and graph automorphism checks.

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::quiver::{ColoredQuiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("permutation is not a bijection on the vertex set: {0}")]
    NotABijection(String),
}

/// Vertices plus unordered edges with multiplicity. Edge `(i, j)` is stored with
/// `i <= j`; loops are `(i, i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderlyingGraph {
    pub vertices: Vec<VertexId>,
    pub edges: BTreeMap<(usize, usize), u32>,
}

impl UnderlyingGraph {
    pub fn of(q: &ColoredQuiver) -> Self {
        let idx = q.index_map();
        let mut edges = BTreeMap::new();
        for a in q.arrows() {
            let (i, j) = (idx[a.src.as_str()], idx[a.dst.as_str()]);
            *edges.entry((i.min(j), i.max(j))).or_insert(0) += a.mult;
        }
        Self { vertices: q.vertices().to_vec(), edges }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_mult(&self, i: usize, j: usize) -> u32 {
        self.edges.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    /// Neighbours of every vertex, loops excluded, each neighbour listed once.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(i, j) in self.edges.keys() {
            if i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        adj
    }

    /// Connected components as sorted vertex-index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph on the given vertex indices, re-indexed in the given order.
    pub fn restrict(&self, keep: &[usize]) -> UnderlyingGraph {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|(&(i, j), &m)| {
                let (a, b) = (*pos.get(&i)?, *pos.get(&j)?);
                Some(((a.min(b), a.max(b)), m))
            })
            .collect();
        UnderlyingGraph { vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(), edges }
    }
}

/// Check that `perm` (given as vertex-id pairs) is a bijection on the vertices of `q`
/// and return it as an index permutation.
pub fn index_permutation(q: &ColoredQuiver, perm: &BTreeMap<VertexId, VertexId>) -> Result<Vec<usize>, GraphError> {
    let idx = q.index_map();
    if perm.len() != q.vertex_count() {
        return Err(GraphError::NotABijection(format!(
            "{} images given for {} vertices",
            perm.len(),
            q.vertex_count()
        )));
    }
    let mut out = vec![usize::MAX; q.vertex_count()];
    let mut hit = HashSet::new();
    for (from, to) in perm {
        let (Some(&i), Some(&j)) = (idx.get(from.as_str()), idx.get(to.as_str())) else {
            return Err(GraphError::NotABijection(format!("{from} -> {to} leaves the vertex set")));
        };
        if !hit.insert(j) {
            return Err(GraphError::NotABijection(format!("`{to}` is hit twice")));
        }
        out[i] = j;
    }
    Ok(out)
}

/// True iff the edge multiset of the underlying graph of `q` is invariant under `perm`.
pub fn graph_automorphism_extends(q: &ColoredQuiver, perm: &BTreeMap<VertexId, VertexId>) -> Result<bool, GraphError> {
    let p = index_permutation(q, perm)?;
    Ok(is_graph_automorphism(&UnderlyingGraph::of(q), &p))
}

pub fn is_graph_automorphism(g: &UnderlyingGraph, p: &[usize]) -> bool {
    // p is a bijection, so mapping every edge onto an edge of equal multiplicity
    // is enough: the edge count is finite and preserved.
    g.edges.iter().all(|(&(i, j), &m)| g.edge_mult(p[i], p[j]) == m)
}
