//! Finite windows of the translation quiver ZQ and its automorphisms.
//!
//! Convention: for every arrow `x -> y` of `Q` and every level `k`, ZQ has arrows
//! `(x,k) -> (y,k)` and `(y,k) -> (x,k+1)`. The translation lowers the level:
//! `tau(x,k) = (x,k-1)`.
//!
//! An automorphism commuting with `tau` is stored as a pair `(sigma, delta)` acting by
//! `F(x,k) = (sigma(x), k + delta(x))`.

mod normal_form;
mod search;
mod section;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{ColoredQuiver, VertexId};

pub use normal_form::{
    check_root_normal_form, find_normal_form_partition, root_from_normal_form, section_partition, NormalFormPartition,
};
pub use search::{find_tau_roots, find_tau_roots_indexed};
pub use section::{
    construct_f_section, has_no_backward_arrows, is_f_section, is_section, section_from, section_quiver,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZError {
    #[error("generator quiver has a directed cycle")]
    CyclicGenerator,
    #[error("generator quiver must be uncolored")]
    ColoredGenerator,
    #[error("empty level range [{0}, {1}]")]
    BadRange(i64, i64),
    #[error("sigma is not a bijection: {0}")]
    SigmaNotBijective(String),
    #[error("delta is missing or has extra entries: {0}")]
    DeltaMismatch(String),
    #[error("arrow {src} -> {dst} is not preserved: {reason}")]
    ArrowNotPreserved { src: String, dst: String, reason: String },
    #[error("vertex set lies too close to the window edge (levels {lo}..={hi}, window [{k_min}, {k_max}])")]
    MarginTooSmall { lo: i64, hi: i64, k_min: i64, k_max: i64 },
    #[error("vertex ({0},{1}) is not in ZQ")]
    UnknownVertex(String, i64),
    #[error("automorphism is not an l-th root of tau^-1 for l = {0}")]
    NotARoot(usize),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("normal form violated: {0}")]
    NormalFormViolated(String),
}

/// A vertex `(base, level)` of ZQ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZQVertex {
    pub base: VertexId,
    pub level: i64,
}

impl ZQVertex {
    pub fn new(base: impl Into<VertexId>, level: i64) -> Self {
        Self { base: base.into(), level }
    }

    /// Vertex id used when a set of ZQ vertices is turned into a quiver.
    pub fn id(&self) -> String {
        format!("({},{})", self.base, self.level)
    }
}

impl fmt::Display for ZQVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.base, self.level)
    }
}

/// Index form of a ZQ vertex: position of the base in the generator, and level.
pub type Point = (usize, i64);

/// An acyclic, uncolored quiver `Q` prepared for ZQ computations.
#[derive(Debug, Clone)]
pub struct Generator {
    quiver: ColoredQuiver,
    mult: Vec<Vec<u32>>,
}

impl Generator {
    pub fn new(q: &ColoredQuiver) -> Result<Self, ZError> {
        if q.is_colored() {
            return Err(ZError::ColoredGenerator);
        }
        if !q.is_acyclic() {
            return Err(ZError::CyclicGenerator);
        }
        Ok(Self { quiver: q.clone(), mult: q.mult_matrix() })
    }

    pub fn quiver(&self) -> &ColoredQuiver {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.mult.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.quiver.vertices()[i]
    }

    /// `m[x][y]`, the number of arrows `x -> y` of `Q`.
    pub fn q_mult(&self, x: usize, y: usize) -> u32 {
        self.mult[x][y]
    }

    /// Pairs `(x, y)` with at least one arrow `x -> y`, and that multiplicity.
    pub fn arrow_pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |x| (0..n).filter(move |&y| self.mult[x][y] > 0).map(move |y| (x, y, self.mult[x][y])))
    }

    /// Number of ZQ arrows from `u` to `v`.
    pub fn zq_mult(&self, u: Point, v: Point) -> u32 {
        match v.1 - u.1 {
            0 => self.mult[u.0][v.0],
            1 => self.mult[v.0][u.0],
            _ => 0,
        }
    }

    /// ZQ arrows leaving `u`, with multiplicity.
    pub fn out_arrows(&self, u: Point) -> Vec<(Point, u32)> {
        let (x, k) = u;
        let mut out = Vec::new();
        for y in 0..self.len() {
            if self.mult[x][y] > 0 {
                out.push(((y, k), self.mult[x][y]));
            }
            if self.mult[y][x] > 0 {
                out.push(((y, k + 1), self.mult[y][x]));
            }
        }
        out
    }

    /// ZQ arrows entering `v`, with multiplicity.
    pub fn in_arrows(&self, v: Point) -> Vec<(Point, u32)> {
        let (y, k) = v;
        let mut out = Vec::new();
        for x in 0..self.len() {
            if self.mult[x][y] > 0 {
                out.push(((x, k), self.mult[x][y]));
            }
            if self.mult[y][x] > 0 {
                out.push(((x, k - 1), self.mult[y][x]));
            }
        }
        out
    }

    pub fn point(&self, v: &ZQVertex) -> Result<Point, ZError> {
        self.quiver
            .position(&v.base)
            .map(|i| (i, v.level))
            .ok_or_else(|| ZError::UnknownVertex(v.base.clone(), v.level))
    }

    pub fn vertex(&self, p: Point) -> ZQVertex {
        ZQVertex::new(self.name(p.0), p.1)
    }
}

/// The full subquiver of ZQ on `Q_0 x [k_min, k_max]`.
#[derive(Debug, Clone)]
pub struct ZWindow {
    generator: Generator,
    pub k_min: i64,
    pub k_max: i64,
    pub vertices: Vec<ZQVertex>,
    pub arrows: Vec<(ZQVertex, ZQVertex, u32)>,
}

impl ZWindow {
    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn contains_level(&self, k: i64) -> bool {
        (self.k_min..=self.k_max).contains(&k)
    }

    /// The window as a quiver with vertex ids `(x,k)`.
    pub fn to_quiver(&self) -> ColoredQuiver {
        let mut q = ColoredQuiver::new();
        for v in &self.vertices {
            q.add_vertex(v.id()).expect("window vertices are distinct");
        }
        for (s, d, m) in &self.arrows {
            q.add_arrow(s.id(), d.id(), None, *m).expect("window arrows stay inside the window");
        }
        q
    }
}

pub fn build_window(q: &ColoredQuiver, k_min: i64, k_max: i64) -> Result<ZWindow, ZError> {
    let generator = Generator::new(q)?;
    window_of(&generator, k_min, k_max)
}

pub(crate) fn window_of(generator: &Generator, k_min: i64, k_max: i64) -> Result<ZWindow, ZError> {
    if k_min > k_max {
        return Err(ZError::BadRange(k_min, k_max));
    }
    let n = generator.len();
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    for k in k_min..=k_max {
        for x in 0..n {
            vertices.push(generator.vertex((x, k)));
        }
        for (x, y, m) in generator.arrow_pairs() {
            arrows.push((generator.vertex((x, k)), generator.vertex((y, k)), m));
            if k < k_max {
                arrows.push((generator.vertex((y, k)), generator.vertex((x, k + 1)), m));
            }
        }
    }
    Ok(ZWindow { generator: generator.clone(), k_min, k_max, vertices, arrows })
}

/// An automorphism of ZQ commuting with `tau`, keyed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TQAutomorphism {
    pub sigma: BTreeMap<VertexId, VertexId>,
    pub delta: BTreeMap<VertexId, i64>,
}

impl TQAutomorphism {
    /// `tau^-1` itself: identity on `Q_0`, every level raised by one.
    pub fn tau_inverse(q: &ColoredQuiver) -> Self {
        Self {
            sigma: q.vertices().iter().map(|v| (v.clone(), v.clone())).collect(),
            delta: q.vertices().iter().map(|v| (v.clone(), 1)).collect(),
        }
    }

    pub fn from_pairs<S: AsRef<str>>(sigma: &[(S, S)], delta: &[(S, i64)]) -> Self {
        Self {
            sigma: sigma.iter().map(|(a, b)| (a.as_ref().to_string(), b.as_ref().to_string())).collect(),
            delta: delta.iter().map(|(a, d)| (a.as_ref().to_string(), *d)).collect(),
        }
    }

    pub fn from_indexed(g: &Generator, f: &IndexedAutom) -> Self {
        Self {
            sigma: (0..g.len()).map(|i| (g.name(i).to_string(), g.name(f.sigma[i]).to_string())).collect(),
            delta: (0..g.len()).map(|i| (g.name(i).to_string(), f.delta[i])).collect(),
        }
    }

    /// Resolve against `g`, checking that sigma is a bijection and delta is total.
    pub fn indexed(&self, g: &Generator) -> Result<IndexedAutom, ZError> {
        let n = g.len();
        let idx = g.quiver().index_map();
        if self.sigma.len() != n {
            return Err(ZError::SigmaNotBijective(format!("{} images for {} vertices", self.sigma.len(), n)));
        }
        let mut sigma = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        for (from, to) in &self.sigma {
            let (Some(&i), Some(&j)) = (idx.get(from.as_str()), idx.get(to.as_str())) else {
                return Err(ZError::SigmaNotBijective(format!("{from} -> {to} leaves Q_0")));
            };
            if std::mem::replace(&mut hit[j], true) {
                return Err(ZError::SigmaNotBijective(format!("`{to}` is hit twice")));
            }
            sigma[i] = j;
        }
        if self.delta.len() != n {
            return Err(ZError::DeltaMismatch(format!("{} offsets for {} vertices", self.delta.len(), n)));
        }
        let mut delta = vec![0; n];
        for (v, d) in &self.delta {
            let i = *idx.get(v.as_str()).ok_or_else(|| ZError::DeltaMismatch(format!("unknown vertex `{v}`")))?;
            delta[i] = *d;
        }
        Ok(IndexedAutom { sigma, delta })
    }
}

/// `(sigma, delta)` over vertex positions of a [`Generator`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexedAutom {
    pub sigma: Vec<usize>,
    pub delta: Vec<i64>,
}

impl IndexedAutom {
    pub fn apply(&self, p: Point) -> Point {
        (self.sigma[p.0], p.1 + self.delta[p.0])
    }

    /// `F^a(p)` for any integer `a`.
    pub fn apply_pow(&self, p: Point, a: i64) -> Point {
        let mut p = p;
        if a >= 0 {
            for _ in 0..a {
                p = self.apply(p);
            }
        } else {
            let inv = self.inverse();
            for _ in 0..(-a) {
                p = inv.apply(p);
            }
        }
        p
    }

    pub fn inverse(&self) -> IndexedAutom {
        let n = self.sigma.len();
        let mut sigma = vec![0; n];
        let mut delta = vec![0; n];
        for x in 0..n {
            sigma[self.sigma[x]] = x;
            delta[self.sigma[x]] = -self.delta[x];
        }
        IndexedAutom { sigma, delta }
    }

    /// Cycles of sigma, each starting at its smallest member, ordered by that member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.sigma.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = self.sigma[x];
            }
            out.push(orbit);
        }
        out
    }

    pub fn max_abs_delta(&self) -> i64 {
        self.delta.iter().map(|d| d.abs()).max().unwrap_or(0)
    }
}

/// The per-arrow characterization of a translation-quiver automorphism. Returns the
/// first offending arrow of `Q`.
pub(crate) fn algebraic_autom_check(g: &Generator, f: &IndexedAutom) -> Result<(), ZError> {
    for (x, y, m) in g.arrow_pairs() {
        let (sx, sy) = (f.sigma[x], f.sigma[y]);
        let reason = match f.delta[y] - f.delta[x] {
            0 if g.q_mult(sx, sy) == m => continue,
            1 if g.q_mult(sy, sx) == m => continue,
            0 => format!("delta equal but Q has {} arrows {} -> {}", g.q_mult(sx, sy), g.name(sx), g.name(sy)),
            1 => format!("delta steps by one but Q has {} arrows {} -> {}", g.q_mult(sy, sx), g.name(sy), g.name(sx)),
            d => format!("delta difference {d} is neither 0 nor 1"),
        };
        return Err(ZError::ArrowNotPreserved { src: g.name(x).to_string(), dst: g.name(y).to_string(), reason });
    }
    Ok(())
}

/// Checks on `Q_0 x [-radius, radius]` that `F` maps every ZQ arrow onto arrows of
/// the same multiplicity and that `F^-1` does too.
pub(crate) fn pointwise_autom_check(g: &Generator, f: &IndexedAutom, radius: i64) -> Result<(), ZError> {
    let inv = f.inverse();
    for k in -radius..=radius {
        for x in 0..g.len() {
            let u = (x, k);
            let fu = f.apply(u);
            for (v, m) in g.out_arrows(u) {
                let got = g.zq_mult(fu, f.apply(v));
                if got != m {
                    return Err(ZError::ArrowNotPreserved {
                        src: g.vertex(u).to_string(),
                        dst: g.vertex(v).to_string(),
                        reason: format!("image carries {got} arrows instead of {m}"),
                    });
                }
            }
            for (w, m) in g.out_arrows(fu) {
                let got = g.zq_mult(u, inv.apply(w));
                if got != m {
                    return Err(ZError::ArrowNotPreserved {
                        src: g.vertex(fu).to_string(),
                        dst: g.vertex(w).to_string(),
                        reason: format!("preimage carries {got} arrows instead of {m}"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Validates `F` as an automorphism of ZQ: sigma bijective, the per-arrow rule, and a
/// pointwise check on the window `[-2l, 2l]` where `l` is the longest sigma-orbit.
pub fn validate_autom(q: &ColoredQuiver, f: &TQAutomorphism) -> Result<(), ZError> {
    let g = Generator::new(q)?;
    let fi = f.indexed(&g)?;
    validate_indexed(&g, &fi)
}

pub(crate) fn validate_indexed(g: &Generator, f: &IndexedAutom) -> Result<(), ZError> {
    algebraic_autom_check(g, f)?;
    let l = f.orbits().iter().map(Vec::len).max().unwrap_or(1) as i64;
    pointwise_autom_check(g, f, 2 * l)
}

/// sigma-orbits all of length exactly `l` and delta summing to 1 on each.
pub fn root_test_algebraic(f: &IndexedAutom, l: usize) -> bool {
    l >= 1 && f.orbits().iter().all(|o| o.len() == l && o.iter().map(|&x| f.delta[x]).sum::<i64>() == 1)
}

/// `F^l(v) = tau^-1(v)` for every `v` in `Q_0 x [-l, l]`.
pub fn root_test_pointwise(f: &IndexedAutom, l: usize) -> bool {
    let r = l as i64;
    (-r..=r).all(|k| (0..f.sigma.len()).all(|x| f.apply_pow((x, k), r) == (x, k + 1)))
}

/// Whether `F` is an `l`-th root of `tau^-1`. The orbit characterization and the
/// pointwise window test are both run; a disagreement is a bug and panics in debug
/// builds.
pub fn is_root_of_tau(q: &ColoredQuiver, f: &TQAutomorphism, l: usize) -> Result<bool, ZError> {
    let g = Generator::new(q)?;
    let fi = f.indexed(&g)?;
    Ok(is_root_indexed(&fi, l))
}

pub(crate) fn is_root_indexed(f: &IndexedAutom, l: usize) -> bool {
    let algebraic = root_test_algebraic(f, l);
    let pointwise = l >= 1 && root_test_pointwise(f, l);
    debug_assert_eq!(algebraic, pointwise, "root tests disagree for {f:?}, l = {l}");
    algebraic && pointwise
}
