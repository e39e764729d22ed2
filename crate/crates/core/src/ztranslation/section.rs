//! Sections and F-sections of ZQ.

use std::collections::HashSet;

use super::{is_root_indexed, Generator, IndexedAutom, Point, TQAutomorphism, ZError, ZQVertex, ZWindow};
use crate::quiver::ColoredQuiver;

/// A section: one vertex per tau-orbit, and for every arrow `x -> y` with `x` in the
/// set, `y` or `tau y` is in the set. The set must sit at least one level inside the
/// window on both sides.
pub fn is_section(w: &ZWindow, s: &[ZQVertex]) -> Result<bool, ZError> {
    let g = w.generator();
    let pts = s.iter().map(|v| g.point(v)).collect::<Result<Vec<_>, _>>()?;
    if let (Some(lo), Some(hi)) = (pts.iter().map(|p| p.1).min(), pts.iter().map(|p| p.1).max()) {
        if lo - 1 < w.k_min || hi + 1 > w.k_max {
            return Err(ZError::MarginTooSmall { lo, hi, k_min: w.k_min, k_max: w.k_max });
        }
    }
    Ok(section_test(g, &pts))
}

pub(crate) fn section_test(g: &Generator, pts: &[Point]) -> bool {
    let mut per_base = vec![0usize; g.len()];
    for p in pts {
        per_base[p.0] += 1;
    }
    if per_base.iter().any(|&c| c != 1) {
        return false;
    }
    let set: HashSet<Point> = pts.iter().copied().collect();
    pts.iter()
        .all(|&u| g.out_arrows(u).into_iter().all(|((y, k), _)| set.contains(&(y, k)) || set.contains(&(y, k - 1))))
}

/// `T ∪ F T ∪ ... ∪ F^{l-1} T`.
pub(crate) fn orbit_union(f: &IndexedAutom, t: &[Point], l: usize) -> Vec<Point> {
    let mut out = Vec::with_capacity(t.len() * l);
    for &p in t {
        let mut q = p;
        for _ in 0..l {
            out.push(q);
            q = f.apply(q);
        }
    }
    out
}

pub(crate) fn f_section_test(g: &Generator, f: &IndexedAutom, l: usize, t: &[Point]) -> bool {
    // (a) one vertex per F-orbit; F-orbits of ZQ are exactly (sigma-orbit) x Z.
    let orbits = f.orbits();
    let mut orbit_of = vec![0; g.len()];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x] = i;
        }
    }
    let mut hits = vec![0usize; orbits.len()];
    for p in t {
        hits[orbit_of[p.0]] += 1;
    }
    if hits.iter().any(|&h| h != 1) {
        return false;
    }
    // (b) successors land in T ∪ ... ∪ F^{l-1} T, or their tau lands in T.
    let union: HashSet<Point> = orbit_union(f, t, l).into_iter().collect();
    let tset: HashSet<Point> = t.iter().copied().collect();
    t.iter()
        .all(|&u| g.out_arrows(u).into_iter().all(|((y, k), _)| union.contains(&(y, k)) || tset.contains(&(y, k - 1))))
}

fn checked_root(q: &ColoredQuiver, f: &TQAutomorphism, l: usize) -> Result<(Generator, IndexedAutom), ZError> {
    let g = Generator::new(q)?;
    let fi = f.indexed(&g)?;
    if !is_root_indexed(&fi, l) {
        return Err(ZError::NotARoot(l));
    }
    Ok((g, fi))
}

pub fn is_f_section(q: &ColoredQuiver, f: &TQAutomorphism, l: usize, t: &[ZQVertex]) -> Result<bool, ZError> {
    let (g, fi) = checked_root(q, f, l)?;
    let pts = t.iter().map(|v| g.point(v)).collect::<Result<Vec<_>, _>>()?;
    Ok(f_section_test(&g, &fi, l, &pts))
}

/// For each sigma-orbit `t, sigma t, ...`, the slice-0 vertex `(sigma^a t, 0)` equals
/// `F^{e_a}(t, 0)` with `e_a = a - l * (delta(t) + ... + delta(sigma^{a-1} t))`. The
/// vertex with the smallest exponent is kept; every other vertex of the orbit is a
/// non-negative power of `F` applied to it.
pub(crate) fn construct_indexed(f: &IndexedAutom, l: usize) -> Vec<Point> {
    let mut out = Vec::new();
    for orbit in f.orbits() {
        let mut partial = 0i64;
        let mut best = (i64::MAX, orbit[0]);
        for (a, &x) in orbit.iter().enumerate() {
            let e = a as i64 - l as i64 * partial;
            if e < best.0 {
                best = (e, x);
            }
            partial += f.delta[x];
        }
        out.push((best.1, 0));
    }
    out.sort_unstable();
    out
}

pub fn construct_f_section(q: &ColoredQuiver, f: &TQAutomorphism, l: usize) -> Result<Vec<ZQVertex>, ZError> {
    let (g, fi) = checked_root(q, f, l)?;
    Ok(construct_indexed(&fi, l).into_iter().map(|p| g.vertex(p)).collect())
}

/// `Σ = T ∪ F T ∪ ... ∪ F^{l-1} T`, grouped by power of `F`.
pub fn section_from(
    q: &ColoredQuiver,
    f: &TQAutomorphism,
    l: usize,
    t: &[ZQVertex],
) -> Result<Vec<Vec<ZQVertex>>, ZError> {
    let (g, fi) = checked_root(q, f, l)?;
    let pts = t.iter().map(|v| g.point(v)).collect::<Result<Vec<_>, _>>()?;
    Ok(powers(&fi, &pts, l).into_iter().map(|b| b.into_iter().map(|p| g.vertex(p)).collect()).collect())
}

pub(crate) fn powers(f: &IndexedAutom, t: &[Point], l: usize) -> Vec<Vec<Point>> {
    let mut blocks = vec![t.to_vec()];
    for _ in 1..l {
        let next = blocks.last().unwrap().iter().map(|&p| f.apply(p)).collect();
        blocks.push(next);
    }
    blocks
}

/// No arrow `F^a s -> t` with `s, t` in `T` and `a > 0`.
pub fn has_no_backward_arrows(q: &ColoredQuiver, f: &TQAutomorphism, l: usize, t: &[ZQVertex]) -> Result<bool, ZError> {
    let (g, fi) = checked_root(q, f, l)?;
    let pts = t.iter().map(|v| g.point(v)).collect::<Result<Vec<_>, _>>()?;
    Ok(no_backward_test(&g, &fi, l, &pts))
}

pub(crate) fn no_backward_test(g: &Generator, f: &IndexedAutom, l: usize, t: &[Point]) -> bool {
    if t.is_empty() {
        return true;
    }
    // F^{ql+r} = tau^{-q} F^r, so levels grow by one per l steps up to a bounded
    // wobble; past this bound F^a s sits above every level an arrow into T can start at.
    let lo = t.iter().map(|p| p.1).min().unwrap();
    let hi = t.iter().map(|p| p.1).max().unwrap();
    let wobble = (l as i64) * f.max_abs_delta();
    let steps = (l as i64) * (hi - lo + wobble + 2);
    t.iter().all(|&s| {
        let mut p = s;
        (1..=steps).all(|_| {
            p = f.apply(p);
            t.iter().all(|&u| g.zq_mult(p, u) == 0)
        })
    })
}

/// The full subquiver of ZQ on the given vertices, ids `(x,k)`.
pub fn section_quiver(q: &ColoredQuiver, vertices: &[ZQVertex]) -> Result<ColoredQuiver, ZError> {
    let g = Generator::new(q)?;
    let pts = vertices.iter().map(|v| g.point(v)).collect::<Result<Vec<_>, _>>()?;
    let mut out = ColoredQuiver::new();
    for v in vertices {
        out.add_vertex(v.id()).map_err(|e| ZError::BadPartition(e.to_string()))?;
    }
    for (i, &u) in pts.iter().enumerate() {
        for (j, &v) in pts.iter().enumerate() {
            let m = g.zq_mult(u, v);
            if m > 0 {
                out.add_arrow(vertices[i].id(), vertices[j].id(), None, m).expect("declared above");
            }
        }
    }
    Ok(out)
}
