#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use tauroot::ztranslation::TQAutomorphism;
use tauroot::ColoredQuiver;

pub fn linear(n: usize) -> ColoredQuiver {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, u32)> = (1..n).map(|i| (i.to_string(), (i + 1).to_string(), 1)).collect();
    ColoredQuiver::uncolored(&names, &arrows).unwrap()
}

/// Acyclic quiver on `v0..v{n-1}`: arrows follow a shuffled order, so vertex names
/// carry no orientation hint.
pub fn random_acyclic<R: Rng>(rng: &mut R, max_n: usize) -> ColoredQuiver {
    let n = rng.gen_range(0..=max_n);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let m = match rng.gen_range(0..10) {
                0..=5 => 0,
                6..=8 => 1,
                _ => 2,
            };
            if m > 0 {
                arrows.push((names[order[a]].clone(), names[order[b]].clone(), m));
            }
        }
    }
    ColoredQuiver::uncolored(&names, &arrows).unwrap()
}

/// Any quiver, cycles and colors allowed.
pub fn random_quiver<R: Rng>(rng: &mut R, max_n: usize, max_arrows: usize) -> ColoredQuiver {
    let n = rng.gen_range(0..=max_n);
    let mut q = ColoredQuiver::new();
    for i in 0..n {
        q.add_vertex(format!("x{i}")).unwrap();
    }
    if n > 0 {
        for _ in 0..rng.gen_range(0..=max_arrows) {
            let s = format!("x{}", rng.gen_range(0..n));
            let d = format!("x{}", rng.gen_range(0..n));
            let color = if rng.gen_bool(0.5) { Some(rng.gen_range(0..4)) } else { None };
            q.add_arrow(s, d, color, rng.gen_range(1..4)).unwrap();
        }
    }
    q
}

pub fn acyclic_strategy(max_n: usize) -> impl Strategy<Value = ColoredQuiver> {
    any::<u64>().prop_map(move |seed| {
        use rand::SeedableRng;
        random_acyclic(&mut rand::rngs::StdRng::seed_from_u64(seed), max_n)
    })
}

/// Number of arrows `(x,k) -> (y,j)` of ZQ, straight from the definition.
pub fn zq_arrows(q: &ColoredQuiver, u: (&str, i64), v: (&str, i64)) -> u32 {
    match v.1 - u.1 {
        0 => q.mult_between(u.0, v.0),
        1 => q.mult_between(v.0, u.0),
        _ => 0,
    }
}

pub fn apply(f: &TQAutomorphism, v: (&str, i64)) -> (String, i64) {
    (f.sigma[v.0].clone(), v.1 + f.delta[v.0])
}

/// `F` preserves arrow multiplicities between all pairs of vertices in levels
/// `[-radius, radius]`.
pub fn preserves_arrows(q: &ColoredQuiver, f: &TQAutomorphism, radius: i64) -> bool {
    let pts: Vec<(&str, i64)> =
        (-radius..=radius).flat_map(|k| q.vertices().iter().map(move |v| (v.as_str(), k))).collect();
    pts.iter().all(|&u| {
        pts.iter().all(|&v| {
            let (fu, fv) = (apply(f, u), apply(f, v));
            zq_arrows(q, u, v) == zq_arrows(q, (&fu.0, fu.1), (&fv.0, fv.1))
        })
    })
}

/// `F^l(x, 0) = (x, 1)` for every `x`, by repeated application.
pub fn is_root_pointwise(q: &ColoredQuiver, f: &TQAutomorphism, l: usize) -> bool {
    q.vertices().iter().all(|x| {
        let mut p = (x.clone(), 0);
        for _ in 0..l {
            p = apply(f, (&p.0, p.1));
        }
        p == (x.clone(), 1)
    })
}

/// Bijection given as id pairs.
pub fn perm<S: AsRef<str>>(pairs: &[(S, S)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.as_ref().to_string(), b.as_ref().to_string())).collect()
}
