//! ADE and extended-ADE recognition of underlying graphs, plus standard
//! orientations of the Dynkin quivers used by the root survey.

use std::fmt;
use std::str::FromStr;

use crate::graph::UnderlyingGraph;
use crate::quiver::ColoredQuiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinLabel {
    A(usize),
    D(usize),
    E(usize),
    ExtendedA(usize),
    ExtendedD(usize),
    ExtendedE(usize),
    Other,
}

impl DynkinLabel {
    pub fn is_dynkin(self) -> bool {
        matches!(self, DynkinLabel::A(_) | DynkinLabel::D(_) | DynkinLabel::E(_))
    }
}

impl fmt::Display for DynkinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinLabel::A(n) => write!(f, "A{n}"),
            DynkinLabel::D(n) => write!(f, "D{n}"),
            DynkinLabel::E(n) => write!(f, "E{n}"),
            DynkinLabel::ExtendedA(n) => write!(f, "~A{n}"),
            DynkinLabel::ExtendedD(n) => write!(f, "~D{n}"),
            DynkinLabel::ExtendedE(n) => write!(f, "~E{n}"),
            DynkinLabel::Other => f.write_str("other"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown Dynkin type `{0}` (expected A<n>, D<n> or E6/E7/E8)")]
pub struct UnknownDynkinType(pub String);

impl FromStr for DynkinLabel {
    type Err = UnknownDynkinType;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || UnknownDynkinType(s.to_string());
        let (extended, rest) = match s.strip_prefix('~') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let mut chars = rest.chars();
        let kind = chars.next().ok_or_else(err)?;
        let n: usize = chars.as_str().parse().map_err(|_| err())?;
        let label = match (kind.to_ascii_uppercase(), extended) {
            ('A', false) if n >= 1 => DynkinLabel::A(n),
            ('D', false) if n >= 4 => DynkinLabel::D(n),
            ('E', false) if (6..=8).contains(&n) => DynkinLabel::E(n),
            ('A', true) => DynkinLabel::ExtendedA(n),
            ('D', true) if n >= 4 => DynkinLabel::ExtendedD(n),
            ('E', true) if (6..=8).contains(&n) => DynkinLabel::ExtendedE(n),
            _ => return Err(err()),
        };
        Ok(label)
    }
}

/// One label per connected component, in component order (see
/// [`UnderlyingGraph::components`]).
pub fn dynkin_classify(g: &UnderlyingGraph) -> Vec<DynkinLabel> {
    g.components().iter().map(|c| classify_connected(&g.restrict(c))).collect()
}

fn classify_connected(g: &UnderlyingGraph) -> DynkinLabel {
    let n = g.len();
    let loops: u32 = g.edges.iter().filter(|(&(i, j), _)| i == j).map(|(_, &m)| m).sum();
    if loops > 0 {
        return if n == 1 && loops == 1 { DynkinLabel::ExtendedA(0) } else { DynkinLabel::Other };
    }
    if g.edges.values().any(|&m| m > 1) {
        let kronecker = n == 2 && g.edges.len() == 1 && g.edges.values().all(|&m| m == 2);
        return if kronecker { DynkinLabel::ExtendedA(1) } else { DynkinLabel::Other };
    }
    let adj = g.adjacency();
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let edge_count = g.edges.len();

    if edge_count == n && n >= 3 && deg.iter().all(|&d| d == 2) {
        return DynkinLabel::ExtendedA(n - 1);
    }
    if edge_count + 1 != n {
        return DynkinLabel::Other;
    }
    // Trees from here on.
    let branches: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    match branches.as_slice() {
        [] => DynkinLabel::A(n),
        [b] => {
            let mut arms: Vec<usize> = adj[*b].iter().map(|&w| arm_length(&adj, *b, w)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => DynkinLabel::D(n),
                [1, 2, 2] => DynkinLabel::E(6),
                [1, 2, 3] => DynkinLabel::E(7),
                [1, 2, 4] => DynkinLabel::E(8),
                [2, 2, 2] => DynkinLabel::ExtendedE(6),
                [1, 3, 3] => DynkinLabel::ExtendedE(7),
                [1, 2, 5] => DynkinLabel::ExtendedE(8),
                [1, 1, 1, 1] => DynkinLabel::ExtendedD(4),
                _ => DynkinLabel::Other,
            }
        }
        [b1, b2] => {
            let leafy = |b: usize| deg[b] == 3 && adj[b].iter().filter(|&&w| deg[w] == 1).count() == 2;
            if leafy(*b1) && leafy(*b2) {
                DynkinLabel::ExtendedD(n - 1)
            } else {
                DynkinLabel::Other
            }
        }
        _ => DynkinLabel::Other,
    }
}

/// Number of vertices on the path starting at `first` and walking away from `from`
/// until a leaf or another branch vertex is reached.
fn arm_length(adj: &[Vec<usize>], from: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, first, 1);
    while adj[cur].len() == 2 {
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
        len += 1;
    }
    if adj[cur].len() > 2 {
        // ran into another branch vertex; not a simple arm
        return usize::MAX;
    }
    len
}

/// A fixed orientation of a Dynkin diagram with vertices named `1..=n`:
/// `A_n` is linear `1 -> 2 -> ... -> n`; `D_n` is linear on `1..n-1` with the extra
/// arrow `n-2 -> n`; `E_n` is linear on `1..n-1` with the extra arrow `3 -> n`.
pub fn standard_quiver(label: DynkinLabel) -> Option<ColoredQuiver> {
    let (n, extra) = match label {
        DynkinLabel::A(n) => (n, None),
        DynkinLabel::D(n) if n >= 4 => (n, Some((n - 2, n))),
        DynkinLabel::E(n) if (6..=8).contains(&n) => (n, Some((3, n))),
        _ => return None,
    };
    let chain_end = if extra.is_some() { n - 1 } else { n };
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut arrows: Vec<(String, String, u32)> =
        (1..chain_end).map(|i| (i.to_string(), (i + 1).to_string(), 1)).collect();
    if let Some((s, t)) = extra {
        arrows.push((s.to_string(), t.to_string(), 1));
    }
    Some(ColoredQuiver::uncolored(&names, &arrows).expect("well-formed by construction"))
}
