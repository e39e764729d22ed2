//! The block normal form of quivers admitting an l-th root of tau^-1:
//! `l` isomorphic blocks `T^(0), ..., T^(l-1)`, extra arrows only from lower to
//! higher blocks, and a block shift that is a symmetry of the underlying graph.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::search::permutations_with_cycle_length;
use super::section::{construct_indexed, powers};
use super::{is_root_indexed, validate_indexed, Generator, IndexedAutom, TQAutomorphism, ZError, ZQVertex};
use crate::graph::{is_graph_automorphism, UnderlyingGraph};
use crate::quiver::{ColoredQuiver, VertexId};

/// Blocks `V_0, ..., V_{l-1}`; the bijection `V_i -> V_{i+1}` is positional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormPartition {
    pub blocks: Vec<Vec<VertexId>>,
}

impl NormalFormPartition {
    pub fn new<S: AsRef<str>>(blocks: &[Vec<S>]) -> Self {
        Self { blocks: blocks.iter().map(|b| b.iter().map(|v| v.as_ref().to_string()).collect()).collect() }
    }
}

/// Vertex positions per block, after checking the partition covers `q` exactly.
fn resolve(q: &ColoredQuiver, l: usize, p: &NormalFormPartition) -> Result<Vec<Vec<usize>>, ZError> {
    if p.blocks.len() != l {
        return Err(ZError::BadPartition(format!("{} blocks for l = {l}", p.blocks.len())));
    }
    let size = p.blocks.first().map_or(0, Vec::len);
    if p.blocks.iter().any(|b| b.len() != size) {
        return Err(ZError::BadPartition("blocks differ in size".into()));
    }
    let idx = q.index_map();
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(l);
    for b in &p.blocks {
        let mut block = Vec::with_capacity(size);
        for v in b {
            let i = *idx.get(v.as_str()).ok_or_else(|| ZError::BadPartition(format!("unknown vertex `{v}`")))?;
            if !seen.insert(i) {
                return Err(ZError::BadPartition(format!("vertex `{v}` listed twice")));
            }
            block.push(i);
        }
        out.push(block);
    }
    if seen.len() != q.vertex_count() {
        return Err(ZError::BadPartition(format!("{} of {} vertices covered", seen.len(), q.vertex_count())));
    }
    Ok(out)
}

/// The block shift `V_i -> V_{i+1}`, `V_{l-1} -> V_0`, as an index permutation.
fn block_shift(blocks: &[Vec<usize>], n: usize) -> Vec<usize> {
    let l = blocks.len();
    let mut perm = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        let next = &blocks[(i + 1) % l];
        for (pos, &v) in b.iter().enumerate() {
            perm[v] = next[pos];
        }
    }
    perm
}

fn normal_form_test(m: &[Vec<u32>], graph: &UnderlyingGraph, blocks: &[Vec<usize>]) -> bool {
    let n = m.len();
    // (a) every block is a copy of block 0 under the positional bijection
    let first = &blocks[0];
    let copies = blocks[1..]
        .iter()
        .all(|b| (0..first.len()).all(|p| (0..first.len()).all(|r| m[b[p]][b[r]] == m[first[p]][first[r]])));
    if !copies {
        return false;
    }
    // (b) arrows between different blocks only go forward
    let mut block_of = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            block_of[v] = i;
        }
    }
    let forward = (0..n).all(|x| (0..n).all(|y| m[x][y] == 0 || block_of[x] <= block_of[y]));
    if !forward {
        return false;
    }
    // (c) the cyclic block shift is a graph symmetry
    is_graph_automorphism(graph, &block_shift(blocks, n))
}

pub fn check_root_normal_form(q: &ColoredQuiver, l: usize, p: &NormalFormPartition) -> Result<bool, ZError> {
    let blocks = resolve(q, l, p)?;
    Ok(normal_form_test(&q.mult_matrix(), &UnderlyingGraph::of(q), &blocks))
}

/// The root taking `T^(i)` to `T^(i+1)` at the same level for `i < l-1` and `T^(l-1)`
/// to `tau^-1 T^(0)`.
pub fn root_from_normal_form(q: &ColoredQuiver, l: usize, p: &NormalFormPartition) -> Result<TQAutomorphism, ZError> {
    let blocks = resolve(q, l, p)?;
    if !normal_form_test(&q.mult_matrix(), &UnderlyingGraph::of(q), &blocks) {
        return Err(ZError::NormalFormViolated("partition fails the block conditions".into()));
    }
    let g = Generator::new(q)?;
    let mut delta = vec![0i64; g.len()];
    for &v in &blocks[l - 1] {
        delta[v] = 1;
    }
    let f = IndexedAutom { sigma: block_shift(&blocks, g.len()), delta };
    validate_indexed(&g, &f).map_err(|e| ZError::NormalFormViolated(e.to_string()))?;
    if !is_root_indexed(&f, l) {
        return Err(ZError::NormalFormViolated(format!("block shift is not an {l}-th root")));
    }
    Ok(TQAutomorphism::from_indexed(&g, &f))
}

/// Brute-force search for a normal-form partition. Only attempted for at most ten
/// vertices; returns `None` above that or when nothing is found.
pub fn find_normal_form_partition(q: &ColoredQuiver, l: usize) -> Option<NormalFormPartition> {
    const LIMIT: usize = 10;
    let n = q.vertex_count();
    if n > LIMIT || l == 0 {
        return None;
    }
    let m = q.mult_matrix();
    let graph = UnderlyingGraph::of(q);
    for shift in permutations_with_cycle_length(n, l) {
        if !is_graph_automorphism(&graph, &shift) {
            continue;
        }
        let probe = IndexedAutom { sigma: shift.clone(), delta: vec![0; n] };
        let orbits = probe.orbits();
        // choose which member of every cycle starts block 0
        let choices = l.pow(orbits.len() as u32);
        for code in 0..choices {
            let mut c = code;
            let reps: Vec<usize> = orbits
                .iter()
                .map(|o| {
                    let r = o[c % l];
                    c /= l;
                    r
                })
                .collect();
            let blocks: Vec<Vec<usize>> =
                (0..l).map(|i| reps.iter().map(|&r| (0..i).fold(r, |v, _| shift[v])).collect()).collect();
            if normal_form_test(&m, &graph, &blocks) {
                let names = q.vertices();
                return Some(NormalFormPartition {
                    blocks: blocks.iter().map(|b| b.iter().map(|&v| names[v].clone()).collect()).collect(),
                });
            }
        }
    }
    None
}

/// For a root `F` of `Q`: the section `Σ = T ∪ ... ∪ F^{l-1}T` built from the
/// constructed F-section, as a quiver with ids `(x,k)`, together with its block
/// partition `F^i T`.
pub fn section_partition(
    q: &ColoredQuiver,
    f: &TQAutomorphism,
    l: usize,
) -> Result<(ColoredQuiver, NormalFormPartition), ZError> {
    let g = Generator::new(q)?;
    let fi = f.indexed(&g)?;
    if !is_root_indexed(&fi, l) {
        return Err(ZError::NotARoot(l));
    }
    let t = construct_indexed(&fi, l);
    let blocks: Vec<Vec<ZQVertex>> =
        powers(&fi, &t, l).into_iter().map(|b| b.into_iter().map(|p| g.vertex(p)).collect()).collect();
    let all: Vec<ZQVertex> = blocks.iter().flatten().cloned().collect();
    let sq = super::section_quiver(q, &all)?;
    let partition =
        NormalFormPartition { blocks: blocks.iter().map(|b| b.iter().map(ZQVertex::id).collect()).collect() };
    Ok((sq, partition))
}
