//! McKay quivers of cyclic groups `G = <1/n(a_0, ..., a_d)>` in `SL_{d+1}`, the
//! hereditary test for `Gamma/(e)`, middle terms of AR `(d+2)`-angles, and the quivers
//! of `End(N ⊕ N[-1])` (d = 3) and `End(N ⊕ N[-1] ⊕ N[-2])` (d = 4).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::ColoredQuiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McKayError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("no weights given")]
    NoWeights,
    #[error("weight {weight} is not a residue mod {n}")]
    WeightOutOfRange { weight: u32, n: u32 },
    #[error("weights sum to {sum}, not 0 mod {n}")]
    NotSL { sum: u64, n: u32 },
    #[error("vertex {vertex} is not a residue mod {n}")]
    KeptOutOfRange { vertex: u32, n: u32 },
    #[error("vertex {0} is not in the kept set")]
    VertexNotKept(u32),
    #[error("quotient is not hereditary")]
    NotHereditary,
    #[error("quotient is not semisimple: arrow {src} -> {dst}")]
    NotSemisimple { src: u32, dst: u32 },
    #[error("expected {expected} + 1 weights, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("no H-quiver builder for dimension {0}")]
    NoBuilder(usize),
}

/// `1/n(a_0, ..., a_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicWeights {
    pub n: u32,
    pub weights: Vec<u32>,
}

impl CyclicWeights {
    pub fn new(n: u32, weights: Vec<u32>) -> Self {
        Self { n, weights }
    }

    /// `d`, one less than the number of weights.
    pub fn dim(&self) -> usize {
        self.weights.len().saturating_sub(1)
    }

    pub fn is_sl(&self) -> bool {
        self.n > 0 && self.weights.iter().map(|&a| a as u64).sum::<u64>() % self.n as u64 == 0
    }

    /// Residues in range and the weights sum to zero.
    pub fn check(&self) -> Result<(), McKayError> {
        if self.n == 0 {
            return Err(McKayError::ZeroModulus);
        }
        if self.weights.is_empty() {
            return Err(McKayError::NoWeights);
        }
        if let Some(&weight) = self.weights.iter().find(|&&a| a >= self.n) {
            return Err(McKayError::WeightOutOfRange { weight, n: self.n });
        }
        if !self.is_sl() {
            let sum = self.weights.iter().map(|&a| a as u64).sum();
            return Err(McKayError::NotSL { sum, n: self.n });
        }
        Ok(())
    }

    fn residue(&self, x: i64) -> u32 {
        x.rem_euclid(self.n as i64) as u32
    }
}

/// The vertices kept in `Gamma/(e)`; the idempotent `e` is the sum over the rest.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSet {
    pub kept: BTreeSet<u32>,
}

impl CutSet {
    pub fn new(kept: impl IntoIterator<Item = u32>) -> Self {
        Self { kept: kept.into_iter().collect() }
    }

    pub fn check(&self, n: u32) -> Result<(), McKayError> {
        match self.kept.iter().find(|&&v| v >= n) {
            Some(&vertex) => Err(McKayError::KeptOutOfRange { vertex, n }),
            None => Ok(()),
        }
    }

    /// Kept residues as McKay vertex ids.
    pub fn ids(&self) -> BTreeSet<String> {
        self.kept.iter().map(u32::to_string).collect()
    }
}

/// Vertices `0..n`, and for every `j` and `i` an arrow `j -> j + a_i` of color `i`.
pub fn mckay_quiver(w: &CyclicWeights) -> Result<ColoredQuiver, McKayError> {
    w.check()?;
    let mut q = ColoredQuiver::new();
    for j in 0..w.n {
        q.add_vertex(j.to_string()).expect("residues are distinct");
    }
    for j in 0..w.n {
        for (i, &a) in w.weights.iter().enumerate() {
            let dst = w.residue(j as i64 + a as i64);
            q.add_arrow(j.to_string(), dst.to_string(), Some(i as u32), 1).expect("both ends declared");
        }
    }
    Ok(q)
}

/// No directed cycle of a single color and no path `a -> b -> c` whose two arrows
/// have different colors, inside the subquiver on the kept vertices.
pub fn is_hereditary_quotient(q: &ColoredQuiver, cut: &CutSet) -> bool {
    let sub = q.induced(&cut.ids());
    let arrows = sub.arrows();
    let composable_mixed = arrows.iter().any(|x| arrows.iter().any(|y| x.dst == y.src && x.color != y.color));
    if composable_mixed {
        return false;
    }
    let colors: BTreeSet<Option<u32>> = arrows.iter().map(|a| a.color).collect();
    colors.into_iter().all(|c| {
        let mut mono = ColoredQuiver::new();
        for v in sub.vertices() {
            mono.add_vertex(v.clone()).expect("distinct");
        }
        for a in arrows.iter().filter(|a| a.color == c) {
            mono.add_arrow(a.src.clone(), a.dst.clone(), None, a.mult).expect("declared");
        }
        mono.is_acyclic()
    })
}

/// Number of `k`-element index subsets `S` with `sum_{i in S} a_i ≡ s (mod n)`.
pub fn subset_sum_count(w: &CyclicWeights, k: usize, s: i64) -> u64 {
    let n = w.n as usize;
    if n == 0 || k > w.weights.len() {
        return 0;
    }
    // table[c][r]: subsets of the weights seen so far with c elements and sum r
    let mut table = vec![vec![0u64; n]; k + 1];
    table[0][0] = 1;
    for &a in &w.weights {
        for c in (1..=k).rev() {
            let (lower, upper) = table.split_at_mut(c);
            for (r, &cnt) in lower[c - 1].iter().enumerate() {
                upper[0][(r + a as usize) % n] += cnt;
            }
        }
    }
    table[k][w.residue(s) as usize]
}

/// Middle terms of the AR `(d+2)`-angle at `N_j`: `terms[0]` collects the `d`-subsets,
/// `terms[d-1]` the single weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ARAngle {
    pub source_vertex: u32,
    pub terms: Vec<BTreeMap<u32, u64>>,
}

impl ARAngle {
    /// Multiplicity of `l` in the term built from `k`-subsets.
    pub fn size_term(&self, k: usize, l: u32) -> u64 {
        let d = self.terms.len();
        if k == 0 || k > d {
            return 0;
        }
        self.terms[d - k].get(&l).copied().unwrap_or(0)
    }
}

pub fn ar_angle(w: &CyclicWeights, cut: &CutSet, j: u32) -> Result<ARAngle, McKayError> {
    w.check()?;
    cut.check(w.n)?;
    if !cut.kept.contains(&j) {
        return Err(McKayError::VertexNotKept(j));
    }
    let d = w.dim();
    let terms = (1..=d)
        .rev()
        .map(|k| {
            cut.kept
                .iter()
                .filter_map(|&l| {
                    let m = subset_sum_count(w, k, j as i64 - l as i64);
                    (m > 0).then_some((l, m))
                })
                .collect()
        })
        .collect();
    Ok(ARAngle { source_vertex: j, terms })
}

fn level_id(j: u32, level: i64) -> String {
    format!("({j},{level})")
}

fn expect_dim(w: &CyclicWeights, d: usize) -> Result<(), McKayError> {
    if w.weights.len() != d + 1 {
        return Err(McKayError::WrongDimension { expected: d, found: w.weights.len() });
    }
    Ok(())
}

/// `kept x {0, -1, ...}` with the quotient quiver copied on every level.
fn levels(w: &CyclicWeights, cut: &CutSet, count: i64) -> Result<ColoredQuiver, McKayError> {
    let quotient = mckay_quiver(w)?.induced(&cut.ids()).decolored();
    let mut h = ColoredQuiver::new();
    for level in 0..count {
        for &j in &cut.kept {
            h.add_vertex(level_id(j, -level)).expect("distinct");
        }
    }
    for level in 0..count {
        for a in quotient.arrows() {
            let (s, t) = (a.src.parse().expect("residue id"), a.dst.parse().expect("residue id"));
            h.add_arrow(level_id(s, -level), level_id(t, -level), None, a.mult).expect("declared");
        }
    }
    Ok(h)
}

/// `m_{jl}`: pairs of weights summing to `l - j`.
fn pair_count(w: &CyclicWeights, j: u32, l: u32) -> u32 {
    subset_sum_count(w, 2, l as i64 - j as i64) as u32
}

/// Quiver of `End(N ⊕ N[-1])` for `d = 3`: two copies of the quotient quiver and
/// `m_{jl}` arrows `(j,0) -> (l,-1)`.
pub fn h_quiver_d3(w: &CyclicWeights, cut: &CutSet) -> Result<ColoredQuiver, McKayError> {
    expect_dim(w, 3)?;
    w.check()?;
    cut.check(w.n)?;
    if !is_hereditary_quotient(&mckay_quiver(w)?, cut) {
        return Err(McKayError::NotHereditary);
    }
    let mut h = levels(w, cut, 2)?;
    for &j in &cut.kept {
        for &l in &cut.kept {
            h.add_arrow(level_id(j, 0), level_id(l, -1), None, pair_count(w, j, l)).expect("declared");
        }
    }
    Ok(h)
}

/// Quiver of `End(N ⊕ N[-1] ⊕ N[-2])` for `d = 4` and semisimple `Gamma/(e)`:
/// `m_{jl}` arrows `(j,0) -> (l,-1)` and `(j,-1) -> (l,-2)`, `m_{lj}` arrows
/// `(j,0) -> (l,-2)`.
pub fn h_quiver_d4(w: &CyclicWeights, cut: &CutSet) -> Result<ColoredQuiver, McKayError> {
    expect_dim(w, 4)?;
    w.check()?;
    cut.check(w.n)?;
    let quotient = mckay_quiver(w)?.induced(&cut.ids());
    if let Some(a) = quotient.arrows().first() {
        let (src, dst) = (a.src.parse().expect("residue id"), a.dst.parse().expect("residue id"));
        return Err(McKayError::NotSemisimple { src, dst });
    }
    let mut h = levels(w, cut, 3)?;
    for &j in &cut.kept {
        for &l in &cut.kept {
            let m = pair_count(w, j, l);
            h.add_arrow(level_id(j, 0), level_id(l, -1), None, m).expect("declared");
            h.add_arrow(level_id(j, -1), level_id(l, -2), None, m).expect("declared");
            h.add_arrow(level_id(j, 0), level_id(l, -2), None, pair_count(w, l, j)).expect("declared");
        }
    }
    Ok(h)
}

/// One way of building the H-quiver for a fixed `d`.
pub trait HQuiverBuilder: Sync {
    fn dim(&self) -> usize;
    fn build(&self, w: &CyclicWeights, cut: &CutSet) -> Result<ColoredQuiver, McKayError>;
}

pub struct ThreeCy;
pub struct FourCy;

impl HQuiverBuilder for ThreeCy {
    fn dim(&self) -> usize {
        3
    }

    fn build(&self, w: &CyclicWeights, cut: &CutSet) -> Result<ColoredQuiver, McKayError> {
        h_quiver_d3(w, cut)
    }
}

impl HQuiverBuilder for FourCy {
    fn dim(&self) -> usize {
        4
    }

    fn build(&self, w: &CyclicWeights, cut: &CutSet) -> Result<ColoredQuiver, McKayError> {
        h_quiver_d4(w, cut)
    }
}

static BUILDERS: [&dyn HQuiverBuilder; 2] = [&ThreeCy, &FourCy];

pub fn h_quiver_builders() -> &'static [&'static dyn HQuiverBuilder] {
    &BUILDERS
}

pub fn h_quiver_builder(dim: usize) -> Option<&'static dyn HQuiverBuilder> {
    BUILDERS.iter().copied().find(|b| b.dim() == dim)
}

/// Dispatch on `dim` through the registered builders.
pub fn h_quiver(w: &CyclicWeights, cut: &CutSet, dim: usize) -> Result<ColoredQuiver, McKayError> {
    h_quiver_builder(dim).ok_or(McKayError::NoBuilder(dim))?.build(w, cut)
}
