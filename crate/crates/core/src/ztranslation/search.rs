//! Exhaustive search for l-th roots of tau^-1 in (sigma, delta) form.

use rayon::prelude::*;

use super::{validate_indexed, Generator, IndexedAutom, TQAutomorphism, ZError};
use crate::quiver::ColoredQuiver;

/// All permutations of `0..n` whose cycles all have length exactly `l`.
pub(crate) fn permutations_with_cycle_length(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(l: usize, sigma: &mut Vec<usize>, free: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let Some(head) = free.iter().position(|&f| f) else {
            out.push(sigma.clone());
            return;
        };
        free[head] = false;
        let mut cycle = vec![head];
        extend(l, head, &mut cycle, sigma, free, out);
        free[head] = true;
    }

    fn extend(
        l: usize,
        head: usize,
        cycle: &mut Vec<usize>,
        sigma: &mut Vec<usize>,
        free: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cycle.len() == l {
            for w in cycle.windows(2) {
                sigma[w[0]] = w[1];
            }
            sigma[*cycle.last().unwrap()] = head;
            rec(l, sigma, free, out);
            return;
        }
        for next in 0..free.len() {
            if free[next] {
                free[next] = false;
                cycle.push(next);
                extend(l, head, cycle, sigma, free, out);
                cycle.pop();
                free[next] = true;
            }
        }
    }

    let mut out = Vec::new();
    if l == 0 || !n.is_multiple_of(l) {
        return out;
    }
    rec(l, &mut vec![usize::MAX; n], &mut vec![true; n], &mut out);
    out
}

/// Allowed values of `delta(y) - delta(x)` for one arrow pair `x -> y` under `sigma`.
#[derive(Clone, Copy)]
struct StepRule {
    x: usize,
    y: usize,
    same_level: bool,
    next_level: bool,
}

fn step_rules(g: &Generator, sigma: &[usize]) -> Option<Vec<StepRule>> {
    let mut rules = Vec::new();
    for (x, y, m) in g.arrow_pairs() {
        let same_level = g.q_mult(sigma[x], sigma[y]) == m;
        let next_level = g.q_mult(sigma[y], sigma[x]) == m;
        if !same_level && !next_level {
            return None;
        }
        rules.push(StepRule { x, y, same_level, next_level });
    }
    Some(rules)
}

/// Backtracking over delta in `[-bound, bound]`, vertex by vertex, checking each arrow
/// rule as soon as both endpoints are assigned and each orbit sum as soon as it can no
/// longer reach 1.
fn deltas_for(g: &Generator, sigma: &[usize], bound: i64) -> Vec<Vec<i64>> {
    let Some(rules) = step_rules(g, sigma) else { return Vec::new() };
    let n = g.len();
    let probe = IndexedAutom { sigma: sigma.to_vec(), delta: vec![0; n] };
    let orbits = probe.orbits();
    let mut orbit_of = vec![0; n];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x] = i;
        }
    }
    // rules checked once the later endpoint (in vertex order) is assigned
    let mut rules_at: Vec<Vec<StepRule>> = vec![Vec::new(); n];
    for r in rules {
        rules_at[r.x.max(r.y)].push(r);
    }
    // remaining unassigned members of each orbit after assigning vertex v
    let mut remaining_after = vec![0usize; n];
    for v in 0..n {
        remaining_after[v] = orbits[orbit_of[v]].iter().filter(|&&w| w > v).count();
    }

    struct State<'a> {
        bound: i64,
        rules_at: &'a [Vec<StepRule>],
        orbit_of: &'a [usize],
        remaining_after: &'a [usize],
        delta: Vec<i64>,
        sums: Vec<i64>,
        out: Vec<Vec<i64>>,
    }

    fn go(s: &mut State<'_>, v: usize) {
        if v == s.delta.len() {
            s.out.push(s.delta.clone());
            return;
        }
        let o = s.orbit_of[v];
        let rest = s.remaining_after[v] as i64;
        for d in -s.bound..=s.bound {
            let sum = s.sums[o] + d;
            let need = 1 - sum;
            if need.abs() > rest * s.bound || (rest == 0 && need != 0) {
                continue;
            }
            s.delta[v] = d;
            let ok = s.rules_at[v].iter().all(|r| match s.delta[r.y] - s.delta[r.x] {
                0 => r.same_level,
                1 => r.next_level,
                _ => false,
            });
            if ok {
                s.sums[o] = sum;
                go(s, v + 1);
                s.sums[o] -= d;
            }
        }
    }

    let mut state = State {
        bound,
        rules_at: &rules_at,
        orbit_of: &orbit_of,
        remaining_after: &remaining_after,
        delta: vec![0; n],
        sums: vec![0; orbits.len()],
        out: Vec::new(),
    };
    go(&mut state, 0);
    state.out
}

/// Every `(sigma, delta)` with all sigma-orbits of length `l`, `|delta| <= bound`,
/// delta summing to 1 on each orbit, that is an automorphism of ZQ. Sorted
/// lexicographically by (sigma, delta) in vertex-position order.
pub fn find_tau_roots_indexed(g: &Generator, l: usize, bound: i64) -> Vec<IndexedAutom> {
    let sigmas = permutations_with_cycle_length(g.len(), l);
    let mut roots: Vec<IndexedAutom> = sigmas
        .par_iter()
        .flat_map_iter(|sigma| {
            deltas_for(g, sigma, bound)
                .into_iter()
                .map(|delta| IndexedAutom { sigma: sigma.clone(), delta })
                .filter(|f| validate_indexed(g, f).is_ok())
                .collect::<Vec<_>>()
        })
        .collect();
    roots.sort();
    roots
}

/// Search with offset bound `bound` (the number of vertices when `None`).
pub fn find_tau_roots(q: &ColoredQuiver, l: usize, bound: Option<i64>) -> Result<Vec<TQAutomorphism>, ZError> {
    let g = Generator::new(q)?;
    let bound = bound.unwrap_or(g.len() as i64);
    Ok(find_tau_roots_indexed(&g, l, bound).iter().map(|f| TQAutomorphism::from_indexed(&g, f)).collect())
}
