//! The invariants `z(Ψ)` and `z′(Ψ)` of a complete subset.
//!
//! A family of roots summing to zero can be reordered so that its partial sums
//! stay in `Φ ∪ {0}`, so zero-sum families are closed walks in the digraph on
//! `Φ ∪ {0}` with an edge `γ → γ+α` labelled `α`. Weighting each edge by
//! `ε_α`, `z(Ψ)` is the maximum mean weight of a cycle using labels in `Ψ`
//! and `z′(Ψ)` the minimum mean weight of a cycle using labels outside `Ψ`.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::complete::RootSet;
use crate::rational::{matrix_rank, qi, Q};
use crate::rootsys::{RootSum, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error(
        "brute-force search is limited to root systems with at most {limit} roots (got {got})"
    )]
    TooLarge { limit: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Largest root system the brute-force oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 30;

/// `z(Ψ)` and `z′(Ψ)` with witnessing families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaCertificate {
    pub z_low: Q,
    pub z_high: Q,
    pub low_witness: Option<Vec<usize>>,
    pub high_witness: Option<Vec<usize>>,
}

impl ZetaCertificate {
    pub fn is_degenerate(&self) -> bool {
        self.z_low == self.z_high
    }
}

/// An optimal cycle: its mean weight and the labels along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanCycle {
    pub value: Q,
    pub labels: Vec<usize>,
}

const NEG_INF: i64 = i64::MIN / 4;

struct WalkGraph {
    zero: usize,
    /// `(target node, label)` for every node.
    out: Vec<Vec<(usize, usize)>>,
}

impl WalkGraph {
    fn new(rs: &RootSystem, allowed: &RootSet) -> Self {
        let zero = rs.len();
        let mut out = vec![Vec::new(); zero + 1];
        let labels: Vec<usize> = allowed.iter().collect();
        for &a in &labels {
            out[zero].push((a, a));
        }
        for u in rs.roots() {
            for &a in &labels {
                match rs.sum(u, a) {
                    RootSum::Root(v) => out[u].push((v, a)),
                    RootSum::Zero => out[u].push((zero, a)),
                    RootSum::None => {}
                }
            }
        }
        Self { zero, out }
    }

    fn nodes(&self) -> usize {
        self.out.len()
    }
}

fn weight(rs: &RootSystem, label: usize, sign: i64) -> i64 {
    sign * rs.epsilon(label)
}

/// Maximum (or minimum) mean of `ε` over cycles whose labels lie in `allowed`.
/// The witness is a shortest optimal cycle, so its length is the denominator
/// of the optimum whenever some optimal cycle has that length.
pub fn mean_cycle(rs: &RootSystem, allowed: &RootSet, maximize: bool) -> Option<MeanCycle> {
    let g = WalkGraph::new(rs, allowed);
    let sign = if maximize { 1 } else { -1 };
    let value = karp(rs, &g, sign)?;
    let labels = tight_shortest_cycle(rs, &g, sign, &value);
    Some(MeanCycle {
        value: value * qi(sign),
        labels,
    })
}

fn karp(rs: &RootSystem, g: &WalkGraph, sign: i64) -> Option<Q> {
    let n = g.nodes();
    let mut d = vec![vec![NEG_INF; n]; n + 1];
    d[0].iter_mut().for_each(|x| *x = 0);
    for k in 1..=n {
        for u in 0..n {
            let du = d[k - 1][u];
            if du == NEG_INF {
                continue;
            }
            for &(v, a) in &g.out[u] {
                let cand = du + weight(rs, a, sign);
                if cand > d[k][v] {
                    d[k][v] = cand;
                }
            }
        }
    }
    let mut best: Option<Q> = None;
    for v in 0..n {
        if d[n][v] == NEG_INF {
            continue;
        }
        let mut worst: Option<Q> = None;
        for k in 0..n {
            if d[k][v] == NEG_INF {
                continue;
            }
            let m = Q::new(d[n][v] - d[k][v], (n - k) as i64);
            if worst.is_none_or(|w| m < w) {
                worst = Some(m);
            }
        }
        if let Some(w) = worst {
            if best.is_none_or(|b| w > b) {
                best = Some(w);
            }
        }
    }
    best
}

/// Potentials for the reweighting `q·w − p`, which has no positive cycle.
fn potentials(rs: &RootSystem, g: &WalkGraph, sign: i64, value: &Q) -> Vec<i64> {
    let (p, q) = (*value.numer(), *value.denom());
    let n = g.nodes();
    let mut pi = vec![0i64; n];
    for _ in 0..=n {
        let mut changed = false;
        for u in 0..n {
            for &(v, a) in &g.out[u] {
                let cand = pi[u] + q * weight(rs, a, sign) - p;
                if cand > pi[v] {
                    pi[v] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    pi
}

fn tight_edges(rs: &RootSystem, g: &WalkGraph, sign: i64, value: &Q) -> Vec<Vec<(usize, usize)>> {
    let (p, q) = (*value.numer(), *value.denom());
    let pi = potentials(rs, g, sign, value);
    g.out
        .iter()
        .enumerate()
        .map(|(u, es)| {
            es.iter()
                .copied()
                .filter(|&(v, a)| pi[u] + q * weight(rs, a, sign) - p == pi[v])
                .collect()
        })
        .collect()
}

fn tight_shortest_cycle(rs: &RootSystem, g: &WalkGraph, sign: i64, value: &Q) -> Vec<usize> {
    let tight = tight_edges(rs, g, sign, value);
    let n = g.nodes();
    let mut best: Option<(usize, Vec<usize>)> = None;
    // The zero node first, then roots in index order.
    let starts = std::iter::once(g.zero).chain(0..g.zero);
    for s in starts {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        let mut closing: Option<(usize, usize)> = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &(v, a) in &tight[u] {
                if v == s {
                    closing = Some((u, a));
                    break 'bfs;
                }
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    prev[v] = Some((u, a));
                    queue.push_back(v);
                }
            }
        }
        if let Some((u, a)) = closing {
            let len = dist[u] + 1;
            if best.as_ref().is_none_or(|(l, _)| len < *l) {
                let mut labels = vec![a];
                let mut cur = u;
                while cur != s {
                    let (pu, pa) = prev[cur].expect("bfs tree");
                    labels.push(pa);
                    cur = pu;
                }
                labels.reverse();
                best = Some((len, labels));
            }
        }
    }
    best.expect("an optimal cycle is tight").1
}

/// `z(Ψ)` and `z′(Ψ)` via maximum and minimum mean cycles.
pub fn zeta(rs: &RootSystem, psi: &RootSet) -> ZetaCertificate {
    zeta_of_sets(rs, psi, &psi.complement())
}

/// `z` computed over `low` and `z′` computed over `high`, with the conventions
/// `z = 0` and `z′ = 1` when no zero-sum family exists.
pub fn zeta_of_sets(rs: &RootSystem, low: &RootSet, high: &RootSet) -> ZetaCertificate {
    let lo = mean_cycle(rs, low, true);
    let hi = mean_cycle(rs, high, false);
    ZetaCertificate {
        z_low: lo.as_ref().map_or(qi(0), |c| c.value),
        z_high: hi.as_ref().map_or(qi(1), |c| c.value),
        low_witness: lo.map(|c| c.labels),
        high_witness: hi.map(|c| c.labels),
    }
}

/// Exhaustive oracle: for every length `t ≤ |Φ|+1`, the best `ε`-sum over
/// all zero-sum families of size `t` whose partial sums stay in `Φ ∪ {0}`,
/// computed by dynamic programming over partial sums.
pub fn zeta_bruteforce(rs: &RootSystem, psi: &RootSet) -> Result<ZetaCertificate, ZetaError> {
    if rs.len() > BRUTE_FORCE_LIMIT {
        return Err(ZetaError::TooLarge {
            limit: BRUTE_FORCE_LIMIT,
            got: rs.len(),
        });
    }
    let lo = best_closed_walk(rs, psi, true);
    let hi = best_closed_walk(rs, &psi.complement(), false);
    Ok(ZetaCertificate {
        z_low: lo.as_ref().map_or(qi(0), |c| c.value),
        z_high: hi.as_ref().map_or(qi(1), |c| c.value),
        low_witness: lo.map(|c| c.labels),
        high_witness: hi.map(|c| c.labels),
    })
}

fn best_closed_walk(rs: &RootSystem, allowed: &RootSet, maximize: bool) -> Option<MeanCycle> {
    let g = WalkGraph::new(rs, allowed);
    let n = g.nodes();
    let sign = if maximize { 1 } else { -1 };
    let max_len = rs.len() + 1;
    let mut best = vec![vec![NEG_INF; n]; max_len + 1];
    let mut parent = vec![vec![(usize::MAX, usize::MAX); n]; max_len + 1];
    best[0][g.zero] = 0;
    for t in 1..=max_len {
        for u in 0..n {
            let bu = best[t - 1][u];
            if bu == NEG_INF {
                continue;
            }
            for &(v, a) in &g.out[u] {
                let cand = bu + weight(rs, a, sign);
                if cand > best[t][v] {
                    best[t][v] = cand;
                    parent[t][v] = (u, a);
                }
            }
        }
    }
    let mut result: Option<(Q, usize)> = None;
    for t in 1..=max_len {
        if best[t][g.zero] == NEG_INF {
            continue;
        }
        let m = Q::new(best[t][g.zero], t as i64);
        if result.is_none_or(|(b, _)| m > b) {
            result = Some((m, t));
        }
    }
    let (value, t) = result?;
    let mut labels = Vec::with_capacity(t);
    let mut v = g.zero;
    for k in (1..=t).rev() {
        let (u, a) = parent[k][v];
        labels.push(a);
        v = u;
    }
    labels.reverse();
    Some(MeanCycle {
        value: value * qi(sign),
        labels,
    })
}

/// Neither `a+b` nor `a−b` lies in `Φ ∪ {0}`.
pub fn strongly_orthogonal(rs: &RootSystem, a: usize, b: usize) -> bool {
    rs.sum(a, b) == RootSum::None && rs.sum(a, rs.neg(b)) == RootSum::None
}

/// Every elementary zero-sum family in `Φ ∖ Ψ` whose mean equals `z′(Ψ)`,
/// each sorted, in lexicographic order. Longer optimal families are unions of
/// these, so the union of their roots is the union over all optimal families.
pub fn zprime_families(rs: &RootSystem, psi: &RootSet) -> Vec<Vec<usize>> {
    optimal_families(rs, &psi.complement(), false)
}

/// Elementary optimal families over `allowed` for the max or min mean.
pub fn optimal_families(rs: &RootSystem, allowed: &RootSet, maximize: bool) -> Vec<Vec<usize>> {
    let g = WalkGraph::new(rs, allowed);
    let sign = if maximize { 1 } else { -1 };
    let Some(value) = karp(rs, &g, sign) else {
        return Vec::new();
    };
    let tight = tight_edges(rs, &g, sign, &value);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let n = g.nodes();
    for s in 0..n {
        let mut on_path = vec![false; n];
        let mut labels = Vec::new();
        on_path[s] = true;
        simple_cycles_from(&tight, s, s, &mut on_path, &mut labels, &mut found);
    }
    found.into_iter().collect()
}

fn simple_cycles_from(
    tight: &[Vec<(usize, usize)>],
    start: usize,
    u: usize,
    on_path: &mut [bool],
    labels: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<usize>>,
) {
    for &(v, a) in &tight[u] {
        if v == start {
            let mut fam = labels.clone();
            fam.push(a);
            fam.sort_unstable();
            found.insert(fam);
        } else if v > start && !on_path[v] {
            on_path[v] = true;
            labels.push(a);
            simple_cycles_from(tight, start, v, on_path, labels, found);
            labels.pop();
            on_path[v] = false;
        }
    }
}

/// `Φ ∩ span_Q(roots)`.
pub fn span_subsystem(rs: &RootSystem, roots: &[usize]) -> RootSet {
    let rows: Vec<Vec<Q>> = roots
        .iter()
        .map(|&r| rs.coeffs(r).iter().map(|&c| qi(c as i64)).collect())
        .collect();
    let base = matrix_rank(&rows);
    let mut out = RootSet::empty(rs.len());
    for a in rs.roots() {
        let mut ext = rows.clone();
        ext.push(rs.coeffs(a).iter().map(|&c| qi(c as i64)).collect());
        if matrix_rank(&ext) == base {
            out.insert(a);
        }
    }
    out
}

/// Rank of the span of a set of roots.
pub fn span_rank(rs: &RootSystem, roots: &RootSet) -> usize {
    let rows: Vec<Vec<Q>> = roots
        .iter()
        .map(|r| rs.coeffs(r).iter().map(|&c| qi(c as i64)).collect())
        .collect();
    matrix_rank(&rows)
}

/// `Ψ` together with every root occurring in an optimal family for `z′(Ψ)`.
pub fn psi_prime(rs: &RootSystem, psi: &RootSet) -> RootSet {
    let mut out = psi.clone();
    for fam in zprime_families(rs, psi) {
        for a in fam {
            out.insert(a);
        }
    }
    out
}

/// Sum of `ε` over a family.
pub fn epsilon_sum(rs: &RootSystem, family: &[usize]) -> i64 {
    family.iter().map(|&a| rs.epsilon(a)).sum()
}

/// Whether a family of roots sums to zero.
pub fn sums_to_zero(rs: &RootSystem, family: &[usize]) -> bool {
    let mut s = vec![0i64; rs.rank()];
    for &a in family {
        for (t, &c) in s.iter_mut().zip(rs.coeffs(a)) {
            *t += c as i64;
        }
    }
    s.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn empty_and_full_conventions() {
        let r = rs("A2");
        let z = zeta(&r, &RootSet::empty(r.len()));
        assert_eq!(z.z_low, qi(0));
        assert_eq!(z.z_high, q(1, 3));
        assert_eq!(z.high_witness.as_ref().unwrap().len(), 3);
        let f = zeta(&r, &RootSet::full(r.len()));
        assert_eq!(f.z_low, q(2, 3));
        assert_eq!(f.z_high, qi(1));
        assert!(f.high_witness.is_none());
    }

    #[test]
    fn a1_single_positive_root() {
        let r = rs("A1");
        let z = zeta(&r, &RootSet::from_indices(r.len(), [0]));
        assert_eq!((z.z_low, z.z_high), (qi(0), qi(1)));
    }

    #[test]
    fn empty_set_families_of_a2() {
        let r = rs("A2");
        let fams = zprime_families(&r, &RootSet::empty(r.len()));
        let m = r.neg(r.highest_root());
        assert!(fams.contains(&vec![0, 1, m]));
    }

    #[test]
    fn brute_force_agrees_on_a2_extremes() {
        let r = rs("A2");
        for s in [RootSet::empty(r.len()), RootSet::full(r.len())] {
            let a = zeta(&r, &s);
            let b = zeta_bruteforce(&r, &s).unwrap();
            assert_eq!((a.z_low, a.z_high), (b.z_low, b.z_high));
        }
    }

    #[test]
    fn span_of_one_root() {
        let r = rs("A3");
        let s = span_subsystem(&r, &[0]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, r.neg(0)]);
    }

    #[test]
    fn orthogonality_in_a3() {
        let r = rs("A3");
        assert!(strongly_orthogonal(&r, 0, 2));
        assert!(!strongly_orthogonal(&r, 0, 1));
    }
}
