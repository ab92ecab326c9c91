//! Exact linear feasibility with strict and non-strict inequalities, by
//! Fourier-Motzkin elimination, and the convex sets `E_{Ψ,z}`.
//!
//! Points of the apartment are given by their values `α_i(x)` on the simple
//! roots, so every root is an integer linear form in these coordinates.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::complete::{frontier, RootSet};
use crate::rational::{qi, Q};
use crate::rootsys::RootSystem;

/// `Σ coeffs[j]·v_j + constant ≥ 0`, or `> 0` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineInequality {
    pub coeffs: Vec<Q>,
    pub constant: Q,
    pub strict: bool,
}

impl AffineInequality {
    pub fn new(coeffs: Vec<Q>, constant: Q, strict: bool) -> Self {
        Self {
            coeffs,
            constant,
            strict,
        }
    }

    /// Value of the left-hand side at `v`.
    pub fn eval(&self, v: &[Q]) -> Q {
        self.coeffs.iter().zip(v).map(|(a, x)| a * x).sum::<Q>() + self.constant
    }

    pub fn holds(&self, v: &[Q]) -> bool {
        let s = self.eval(v);
        if self.strict {
            s > qi(0)
        } else {
            s >= qi(0)
        }
    }
}

/// A conjunction of inequalities over named unknowns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearSystem {
    pub names: Vec<String>,
    pub rows: Vec<AffineInequality>,
}

impl LinearSystem {
    pub fn new(names: Vec<String>) -> Self {
        Self {
            names,
            rows: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.names.len()
    }

    pub fn push(&mut self, row: AffineInequality) {
        debug_assert_eq!(row.coeffs.len(), self.vars());
        self.rows.push(row);
    }

    /// `Σ terms + constant ≥ 0` (or `> 0`), with terms given sparsely.
    pub fn add(&mut self, terms: &[(usize, Q)], constant: Q, strict: bool) {
        let mut coeffs = vec![qi(0); self.vars()];
        for &(j, c) in terms {
            coeffs[j] += c;
        }
        self.push(AffineInequality::new(coeffs, constant, strict));
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = AffineInequality>) {
        for r in rows {
            self.push(r);
        }
    }

    pub fn satisfied_by(&self, v: &[Q]) -> bool {
        self.rows.iter().all(|r| r.holds(v))
    }

    /// Every inequality holds strictly at `v`.
    pub fn interior_at(&self, v: &[Q]) -> bool {
        self.rows.iter().all(|r| r.eval(v) > qi(0))
    }

    /// The same system with every inequality strict.
    pub fn strictified(&self) -> Self {
        let mut s = self.clone();
        for r in &mut s.rows {
            r.strict = true;
        }
        s
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.names.join(" "))?;
        for r in &self.rows {
            let mut terms = Vec::new();
            for (c, n) in r.coeffs.iter().zip(&self.names) {
                if !c.is_zero() {
                    terms.push(format!("{c} {n}"));
                }
            }
            if terms.is_empty() {
                terms.push("0".into());
            }
            let op = if r.strict { ">" } else { ">=" };
            writeln!(f, "{} {op} {}", terms.join(" + "), -r.constant)?;
        }
        Ok(())
    }
}

/// Outcome of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityResult {
    /// A solution, when the system is feasible.
    pub witness: Option<Vec<Q>>,
    /// Whether the witness satisfies every inequality strictly.
    pub strict: bool,
}

impl FeasibilityResult {
    pub fn feasible(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Row {
    coeffs: Vec<i64>,
    constant: Q,
    strict: bool,
}

impl Row {
    fn from_inequality(r: &AffineInequality) -> Self {
        let l = r
            .coeffs
            .iter()
            .chain(std::iter::once(&r.constant))
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        let coeffs = r.coeffs.iter().map(|c| (c * qi(l)).to_integer()).collect();
        Self {
            coeffs,
            constant: r.constant * qi(l),
            strict: r.strict,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        let g = self.coeffs.iter().fold(0i64, |acc, &c| acc.gcd(&c));
        if g > 1 {
            for c in &mut self.coeffs {
                *c /= g;
            }
            self.constant /= qi(g);
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn constant_ok(&self) -> bool {
        if self.strict {
            self.constant > qi(0)
        } else {
            self.constant >= qi(0)
        }
    }
}

/// Removes satisfied constant rows and keeps the tightest of parallel rows.
/// Returns `None` when a constant row is violated.
fn simplify(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: HashMap<Vec<i64>, (Q, bool)> = HashMap::new();
    let mut order: Vec<Vec<i64>> = Vec::new();
    for r in rows {
        if r.is_constant() {
            if !r.constant_ok() {
                return None;
            }
            continue;
        }
        match best.get_mut(&r.coeffs) {
            Some(entry) => {
                if r.constant < entry.0 || (r.constant == entry.0 && r.strict) {
                    *entry = (r.constant, r.strict);
                }
            }
            None => {
                order.push(r.coeffs.clone());
                best.insert(r.coeffs, (r.constant, r.strict));
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|c| {
                let (constant, strict) = best[&c];
                Row {
                    coeffs: c,
                    constant,
                    strict,
                }
            })
            .collect(),
    )
}

fn eliminate(rows: &[Row], k: usize) -> Option<Vec<Row>> {
    let mut out = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for r in rows {
        match r.coeffs[k].signum() {
            0 => out.push(r.clone()),
            1 => pos.push(r),
            _ => neg.push(r),
        }
    }
    for p in &pos {
        for n in &neg {
            let (a, b) = (p.coeffs[k], -n.coeffs[k]);
            let coeffs = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(x, y)| b * x + a * y)
                .collect();
            out.push(
                Row {
                    coeffs,
                    constant: p.constant * qi(b) + n.constant * qi(a),
                    strict: p.strict || n.strict,
                }
                .normalized(),
            );
        }
    }
    simplify(out)
}

/// Feasibility of a system, with a deterministic witness: unknowns are fixed
/// in order, each at the midpoint of its feasible interval (or one unit inside
/// a half-line, or 0 when unconstrained).
pub fn solve(system: &LinearSystem) -> FeasibilityResult {
    let n = system.vars();
    let infeasible = FeasibilityResult {
        witness: None,
        strict: false,
    };
    let Some(start) = simplify(system.rows.iter().map(Row::from_inequality).collect()) else {
        return infeasible;
    };
    // stages[k] mentions only unknowns 0..k.
    let mut stages: Vec<Vec<Row>> = vec![Vec::new(); n + 1];
    stages[n] = start;
    for k in (0..n).rev() {
        match eliminate(&stages[k + 1], k) {
            Some(rows) => stages[k] = rows,
            None => return infeasible,
        }
    }
    let mut v = vec![qi(0); n];
    for k in 0..n {
        let mut lo: Option<(Q, bool)> = None;
        let mut hi: Option<(Q, bool)> = None;
        for r in &stages[k + 1] {
            let a = r.coeffs[k];
            if a == 0 {
                continue;
            }
            let rest: Q = (0..k).map(|j| qi(r.coeffs[j]) * v[j]).sum::<Q>() + r.constant;
            let bound = -rest / qi(a);
            if a > 0 {
                if lo.is_none_or(|(b, s)| bound > b || (bound == b && r.strict && !s)) {
                    lo = Some((bound, r.strict));
                }
            } else if hi.is_none_or(|(b, s)| bound < b || (bound == b && r.strict && !s)) {
                hi = Some((bound, r.strict));
            }
        }
        v[k] = match (lo, hi) {
            (Some((l, _)), Some((h, _))) => (l + h) / qi(2),
            (Some((l, _)), None) => l + qi(1),
            (None, Some((h, _))) => h - qi(1),
            (None, None) => qi(0),
        };
    }
    if !system.satisfied_by(&v) {
        return infeasible;
    }
    FeasibilityResult {
        strict: system.interior_at(&v),
        witness: Some(v),
    }
}

/// The value of `z` in an `E`-system: a constant or an unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZTerm {
    Fixed(Q),
    Var(usize),
}

fn root_terms(rs: &RootSystem, a: usize, sign: i64) -> Vec<(usize, Q)> {
    rs.form(a)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(j, c)| (j, qi(sign * c)))
        .collect()
}

fn with_z(mut terms: Vec<(usize, Q)>, z: ZTerm, sign: i64, constant: Q) -> (Vec<(usize, Q)>, Q) {
    match z {
        ZTerm::Fixed(v) => (terms, constant + qi(sign) * v),
        ZTerm::Var(j) => {
            terms.push((j, qi(sign)));
            (terms, constant)
        }
    }
}

/// The closed alcove: `γ(x) ≥ −ε_γ` for `γ` in the extended basis.
pub fn alcove_rows(rs: &RootSystem, system: &mut LinearSystem) {
    for &g in rs.extended_basis() {
        system.add(&root_terms(rs, g, 1), qi(rs.epsilon(g)), false);
    }
}

/// Appends the rows of `E_{Ψ,z}`: the alcove, `α(x) ≤ z − ε_α` for maximal
/// `α ∈ Ψ`, and `α(x) ≥ z − ε_α` for minimal `α ∉ Ψ`.
pub fn e_rows(rs: &RootSystem, psi: &RootSet, z: ZTerm, strict: bool, system: &mut LinearSystem) {
    for &g in rs.extended_basis() {
        system.add(&root_terms(rs, g, 1), qi(rs.epsilon(g)), strict);
    }
    let fr = frontier(rs, psi);
    for &a in &fr.maximal {
        let (t, c) = with_z(root_terms(rs, a, -1), z, 1, qi(-rs.epsilon(a)));
        system.add(&t, c, strict);
    }
    for &a in &fr.minimal_outside {
        let (t, c) = with_z(root_terms(rs, a, 1), z, -1, qi(rs.epsilon(a)));
        system.add(&t, c, strict);
    }
}

fn x_names(rs: &RootSystem) -> Vec<String> {
    (1..=rs.rank()).map(|i| format!("x{i}")).collect()
}

/// `E_{Ψ,z}` for a fixed `z`, over the unknowns `x1..xn`.
pub fn build_e(rs: &RootSystem, psi: &RootSet, z: Q) -> LinearSystem {
    let mut s = LinearSystem::new(x_names(rs));
    e_rows(rs, psi, ZTerm::Fixed(z), false, &mut s);
    s
}

/// `E_{Ψ,z}` with `z` an unknown placed after `x1..xn`.
pub fn build_e_symbolic(rs: &RootSystem, psi: &RootSet) -> LinearSystem {
    let mut names = x_names(rs);
    names.push("z".into());
    let mut s = LinearSystem::new(names);
    e_rows(rs, psi, ZTerm::Var(rs.rank()), false, &mut s);
    s
}

/// The open version of `E_{Ψ,z}`: every defining inequality strict.
pub fn build_e_strict(rs: &RootSystem, psi: &RootSet, z: Q) -> LinearSystem {
    let mut s = LinearSystem::new(x_names(rs));
    e_rows(rs, psi, ZTerm::Fixed(z), true, &mut s);
    s
}

/// Unknowns `x1..xn, z, z′` for the joint searches.
pub fn joint_system(rs: &RootSystem) -> LinearSystem {
    let mut names = x_names(rs);
    names.push("z".into());
    names.push("z'".into());
    LinearSystem::new(names)
}

/// For families `α_i ∈ Ψ`, `β_j ∉ Ψ` with equal sums, `tz + s(1−z) ≥ c₀` where
/// `c₀ = Σ ε_{α_i} + Σ ε_{−β_j}`. Returns `None` when the sums differ.
pub fn family_inequality_holds(
    rs: &RootSystem,
    alphas: &[usize],
    betas: &[usize],
    z: &Q,
) -> Option<bool> {
    let sum = |fam: &[usize]| {
        let mut s = vec![0i64; rs.rank()];
        for &a in fam {
            for (t, &c) in s.iter_mut().zip(rs.coeffs(a)) {
                *t += c as i64;
            }
        }
        s
    };
    if sum(alphas) != sum(betas) {
        return None;
    }
    let c0: i64 = alphas.iter().map(|&a| rs.epsilon(a)).sum::<i64>()
        + betas.iter().map(|&b| rs.epsilon(rs.neg(b))).sum::<i64>();
    let t = qi(alphas.len() as i64);
    let s = qi(betas.len() as i64);
    Some(t * z + s * (qi(1) - z) >= qi(c0))
}
