//! Quivers of `End(T ⊕ T[-1] ⊕ ... ⊕ T[-(d-2)])` assembled from the summand counts of
//! the AR `(d+2)`-angles at the summands `T_a`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{ColoredQuiver, QuiverError, VertexId};

/// `counts[a][b]`: how often `T_b` occurs in the term attached to `T_a`.
pub type SummandCounts = BTreeMap<VertexId, BTreeMap<VertexId, u32>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftedSumError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("base quiver must be uncolored and acyclic")]
    BadBase,
    #[error("summand data mentions unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("counts at ({a}, {b}) disagree: {left} vs {right}")]
    SymmetryViolated { a: String, b: String, left: u32, right: u32 },
    #[error("even dimension needs the B counts")]
    MissingB,
    #[error("need at least one copy")]
    ZeroCopies,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ARSummandData {
    pub base: ColoredQuiver,
    #[serde(rename = "A")]
    pub a: SummandCounts,
    #[serde(rename = "B", default)]
    pub b: Option<SummandCounts>,
}

fn count(c: &SummandCounts, x: &str, y: &str) -> u32 {
    c.get(x).and_then(|row| row.get(y)).copied().unwrap_or(0)
}

impl ARSummandData {
    pub fn new(base: ColoredQuiver, a: SummandCounts, b: Option<SummandCounts>) -> Self {
        Self { base, a, b }
    }

    /// `A[x][y]`.
    pub fn a_count(&self, x: &str, y: &str) -> u32 {
        count(&self.a, x, y)
    }

    /// `B[x][y]`, zero when `B` is absent.
    pub fn b_count(&self, x: &str, y: &str) -> u32 {
        self.b.as_ref().map_or(0, |b| count(b, x, y))
    }

    fn check_base(&self) -> Result<(), ShiftedSumError> {
        self.base.validate()?;
        if self.base.is_colored() || !self.base.is_acyclic() {
            return Err(ShiftedSumError::BadBase);
        }
        for c in std::iter::once(&self.a).chain(self.b.as_ref()) {
            for (x, row) in c {
                if let Some(v) = std::iter::once(x).chain(row.keys()).find(|v| !self.base.contains(v)) {
                    return Err(ShiftedSumError::UnknownVertex(v.clone()));
                }
            }
        }
        Ok(())
    }
}

/// Odd: `A[a][b] = A[b][a]`. Even: `B` present and `A[b][a] = B[a][b]`.
pub fn validate_ar_symmetry(data: &ARSummandData, parity: Parity) -> Result<(), ShiftedSumError> {
    data.check_base()?;
    let vs = data.base.vertices();
    for x in vs {
        for y in vs {
            let (left, right) = match parity {
                Parity::Odd => (data.a_count(x, y), data.a_count(y, x)),
                Parity::Even => {
                    if data.b.is_none() {
                        return Err(ShiftedSumError::MissingB);
                    }
                    (data.a_count(y, x), data.b_count(x, y))
                }
            };
            if left != right {
                return Err(ShiftedSumError::SymmetryViolated { a: x.clone(), b: y.clone(), left, right });
            }
        }
    }
    Ok(())
}

/// Vertex `T_a[-level]`.
pub fn shifted_id(a: &str, level: usize) -> String {
    if level == 0 {
        format!("({a},0)")
    } else {
        format!("({a},-{level})")
    }
}

/// A quiver whose vertices are `(a,-i)`, with the shift levels grouped into its
/// connected blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelledQuiver {
    pub quiver: ColoredQuiver,
    pub groups: Vec<Vec<usize>>,
}

fn copies(base: &ColoredQuiver, levels: usize) -> Result<ColoredQuiver, ShiftedSumError> {
    let mut q = ColoredQuiver::new();
    for i in 0..levels {
        for v in base.vertices() {
            q.add_vertex(shifted_id(v, i))?;
        }
    }
    for i in 0..levels {
        for a in base.arrows() {
            q.add_arrow(shifted_id(&a.src, i), shifted_id(&a.dst, i), None, a.mult)?;
        }
    }
    Ok(q)
}

/// `End(T ⊕ ... ⊕ T[-(2n-1)])` for a `(2n+1)`-CY category: levels `i` and `i+n` form
/// one copy of `End(T ⊕ T[-n])`, with `A[a][b]` arrows `(b,-i) -> (a,-i-n)`.
pub fn build_odd_quiver(data: &ARSummandData, n: usize) -> Result<LevelledQuiver, ShiftedSumError> {
    if n == 0 {
        return Err(ShiftedSumError::ZeroCopies);
    }
    validate_ar_symmetry(data, Parity::Odd)?;
    let mut q = copies(&data.base, 2 * n)?;
    for i in 0..n {
        for a in data.base.vertices() {
            for b in data.base.vertices() {
                q.add_arrow(shifted_id(b, i), shifted_id(a, i + n), None, data.a_count(a, b))?;
            }
        }
    }
    Ok(LevelledQuiver { quiver: q, groups: (0..n).map(|i| vec![i, i + n]).collect() })
}

/// `End(T ⊕ ... ⊕ T[-2n])` for a `(2n+2)`-CY category: `A[b][a]` arrows
/// `(a,-i) -> (b,-i-n)` for `0 <= i <= n` and `B[a][b]` arrows `(b,-i) -> (a,-i-n-1)`
/// for `0 <= i < n`. For `n = 1` the second family already joins level 0 to level 2.
pub fn build_even_quiver(data: &ARSummandData, n: usize) -> Result<LevelledQuiver, ShiftedSumError> {
    if n == 0 {
        return Err(ShiftedSumError::ZeroCopies);
    }
    validate_ar_symmetry(data, Parity::Even)?;
    let mut q = copies(&data.base, 2 * n + 1)?;
    let vs = data.base.vertices();
    for i in 0..=n {
        for a in vs {
            for b in vs {
                q.add_arrow(shifted_id(a, i), shifted_id(b, i + n), None, data.a_count(b, a))?;
            }
        }
    }
    for i in 0..n {
        for a in vs {
            for b in vs {
                q.add_arrow(shifted_id(b, i), shifted_id(a, i + n + 1), None, data.b_count(a, b))?;
            }
        }
    }
    Ok(LevelledQuiver { quiver: q, groups: vec![(0..=2 * n).collect()] })
}

/// `End(T) = k` with `m = dim Hom(T, T[-n])`.
pub fn star_data(m: u32) -> ARSummandData {
    let counts: SummandCounts = BTreeMap::from([("T".to_string(), BTreeMap::from([("T".to_string(), m)]))]);
    let base = ColoredQuiver::uncolored(&["T"], &[]).expect("one vertex");
    ARSummandData { base, a: counts.clone(), b: Some(counts) }
}

pub fn star_quiver(n: usize, m: u32) -> Result<ColoredQuiver, ShiftedSumError> {
    build_even_quiver(&star_data(m), n).map(|l| l.quiver)
}
