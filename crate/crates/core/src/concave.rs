//! Concave functions on a root system, normal functions relative to the
//! standard Iwahori subgroup, and Moy-Prasad filtration functions.

use serde::Serialize;
use thiserror::Error;

use crate::complete::RootSet;
use crate::rational::{ceil_q, floor_q, is_integer, qi, Q};
use crate::rootsys::{RootSum, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConcaveError {
    #[error("function has {got} values but the root system has {want} roots")]
    WrongLength { got: usize, want: usize },
    #[error("function is not integer-valued at {0}")]
    NotInteger(String),
    #[error("not a normal function: {0}")]
    NotNormal(NormalityViolation),
    #[error("f - f_I takes values from {lo} to {hi}, more than three consecutive values")]
    ImageTooWide { lo: i64, hi: i64 },
}

/// A function `Φ → Q`, indexed like the roots of its root system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConcaveFn {
    values: Vec<Q>,
}

impl ConcaveFn {
    pub fn new(values: Vec<Q>) -> Self {
        Self { values }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(it: I) -> Self {
        Self {
            values: it.into_iter().map(qi).collect(),
        }
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn get(&self, i: usize) -> Q {
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn int_values(&self) -> Option<Vec<i64>> {
        self.values
            .iter()
            .map(|v| is_integer(v).then(|| v.to_integer()))
            .collect()
    }

    pub fn check_len(&self, rs: &RootSystem) -> Result<(), ConcaveError> {
        if self.len() == rs.len() {
            Ok(())
        } else {
            Err(ConcaveError::WrongLength {
                got: self.len(),
                want: rs.len(),
            })
        }
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }
}

/// `f_I = ε`: 0 on positive roots and 1 on negative roots.
pub fn iwahori_fn(rs: &RootSystem) -> ConcaveFn {
    ConcaveFn::from_integers(rs.roots().map(|a| rs.epsilon(a)))
}

/// `f(α+β) ≤ f(α)+f(β)` whenever `α+β ∈ Φ`, and `f(α)+f(−α) ≥ 0`.
pub fn is_concave(rs: &RootSystem, f: &ConcaveFn) -> bool {
    is_subadditive(rs, f) && rs.roots().all(|a| f.get(a) + f.get(rs.neg(a)) >= qi(0))
}

/// The part of concavity concerning sums that are roots.
pub fn is_subadditive(rs: &RootSystem, f: &ConcaveFn) -> bool {
    rs.roots().all(|a| {
        rs.roots().all(|b| match rs.sum(a, b) {
            RootSum::Root(c) => f.get(c) <= f.get(a) + f.get(b),
            _ => true,
        })
    })
}

pub fn is_pro_unipotent(rs: &RootSystem, f: &ConcaveFn) -> bool {
    rs.roots().all(|a| f.get(a) + f.get(rs.neg(a)) > qi(0))
}

pub fn is_parahoric(rs: &RootSystem, f: &ConcaveFn) -> bool {
    is_concave(rs, f) && rs.roots().all(|a| f.get(a) + f.get(rs.neg(a)) <= qi(1))
}

pub fn is_iwahori(rs: &RootSystem, f: &ConcaveFn) -> bool {
    is_concave(rs, f) && rs.roots().all(|a| f.get(a) + f.get(rs.neg(a)) == qi(1))
}

/// First condition of [`is_normal_fn`] that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NormalityViolation {
    /// `f(α+β) > f_I(α) + f(β)`.
    Sum { alpha: String, beta: String },
    /// `f(α) > f(−α) + 2 f_I(α)`.
    Opposite { alpha: String },
    /// `f(α) + f(−α) ≤ 0`.
    NotProUnipotent { alpha: String },
    /// `f(α) < f_I(α)`.
    BelowIwahori { alpha: String },
}

impl std::fmt::Display for NormalityViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Sum { alpha, beta } => {
                write!(f, "f({alpha} + {beta}) > f_I({alpha}) + f({beta})")
            }
            Self::Opposite { alpha } => write!(f, "f({alpha}) > f(-({alpha})) + 2 f_I({alpha})"),
            Self::NotProUnipotent { alpha } => write!(f, "f({alpha}) + f(-({alpha})) <= 0"),
            Self::BelowIwahori { alpha } => write!(f, "f({alpha}) < f_I({alpha})"),
        }
    }
}

/// Normality of the subgroup attached to `f` in the standard Iwahori subgroup:
///
/// * `f(α+β) ≤ f_I(α) + f(β)` for all `α, β` with `α+β ∈ Φ`;
/// * `f(α) ≤ f(−α) + 2 f_I(α)`, the condition coming from conjugating a root
///   subgroup by the opposite one;
/// * `f(α) + f(−α) > 0` and `f ≥ f_I`.
pub fn check_normal(rs: &RootSystem, f: &ConcaveFn) -> Result<(), NormalityViolation> {
    let eps = |a: usize| qi(rs.epsilon(a));
    for a in rs.roots() {
        if f.get(a) < eps(a) {
            return Err(NormalityViolation::BelowIwahori { alpha: rs.label(a) });
        }
        if f.get(a) + f.get(rs.neg(a)) <= qi(0) {
            return Err(NormalityViolation::NotProUnipotent { alpha: rs.label(a) });
        }
    }
    for a in rs.roots() {
        for b in rs.roots() {
            if let RootSum::Root(c) = rs.sum(a, b) {
                if f.get(c) > eps(a) + f.get(b) {
                    return Err(NormalityViolation::Sum {
                        alpha: rs.label(a),
                        beta: rs.label(b),
                    });
                }
            }
        }
        if f.get(a) > f.get(rs.neg(a)) + qi(2) * eps(a) {
            return Err(NormalityViolation::Opposite { alpha: rs.label(a) });
        }
    }
    Ok(())
}

pub fn is_normal_fn(rs: &RootSystem, f: &ConcaveFn) -> bool {
    check_normal(rs, f).is_ok()
}

/// Normality without the opposite-root condition.
pub fn is_normal_fn_sums_only(rs: &RootSystem, f: &ConcaveFn) -> bool {
    rs.roots().all(|a| {
        f.get(a) >= qi(rs.epsilon(a))
            && f.get(a) + f.get(rs.neg(a)) > qi(0)
            && rs.roots().all(|b| match rs.sum(a, b) {
                RootSum::Root(c) => f.get(c) <= qi(rs.epsilon(a)) + f.get(b),
                _ => true,
            })
    })
}

/// `f − f_I`, for integer-valued `f`.
pub fn f_eps(rs: &RootSystem, f: &ConcaveFn) -> Result<Vec<i64>, ConcaveError> {
    f.check_len(rs)?;
    rs.roots()
        .map(|a| {
            let v = f.get(a);
            if is_integer(&v) {
                Ok(v.to_integer() - rs.epsilon(a))
            } else {
                Err(ConcaveError::NotInteger(rs.label(a)))
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NormalKind {
    /// `f − f_I` takes at most two consecutive values.
    Type1,
    /// `f − f_I` takes three consecutive values.
    Type2,
}

/// Shape of a normal function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalType {
    pub kind: NormalKind,
    /// Minimum of `f − f_I`.
    pub v_min: i64,
    /// Where `f − f_I` is maximal.
    pub psi: RootSet,
    /// `r` is reassembled as `base + z`: the maximum of `f − f_I` minus one.
    pub base: i64,
}

/// Classifies a normal function as type 1 or type 2.
pub fn type_of(rs: &RootSystem, f: &ConcaveFn) -> Result<NormalType, ConcaveError> {
    check_normal(rs, f).map_err(ConcaveError::NotNormal)?;
    let e = f_eps(rs, f)?;
    let lo = *e.iter().min().expect("non-empty");
    let hi = *e.iter().max().expect("non-empty");
    let kind = match hi - lo {
        0 | 1 => NormalKind::Type1,
        2 => NormalKind::Type2,
        _ => return Err(ConcaveError::ImageTooWide { lo, hi }),
    };
    let psi = RootSet::from_indices(rs.len(), rs.roots().filter(|&a| e[a] == hi));
    Ok(NormalType {
        kind,
        v_min: lo,
        psi,
        base: hi - 1,
    })
}

/// `α ↦ ⌈−α(x) + r⌉`, the function of the filtration subgroup `G_{x,r}`.
pub fn filtration_fn(rs: &RootSystem, x: &[Q], r: &Q) -> ConcaveFn {
    ConcaveFn::from_integers(rs.roots().map(|a| ceil_q(&(r - rs.pairing(a, x)))))
}

/// `α ↦ ⌊−α(x) + r + 1⌋`, the function of `G_{x,r+}`.
pub fn filtration_fn_plus(rs: &RootSystem, x: &[Q], r: &Q) -> ConcaveFn {
    ConcaveFn::from_integers(rs.roots().map(|a| floor_q(&(r - rs.pairing(a, x) + qi(1)))))
}

/// Bounds attached to a Levi datum. Pointwise `upper ≤ f ≤ lower` expresses
/// that the subgroup of `f` lies between the smaller group (function `lower`)
/// and the larger group (function `upper`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviBounds {
    pub lower: ConcaveFn,
    pub upper: ConcaveFn,
}

/// On `levi` the `r` functions, elsewhere the `r_prime` functions.
pub fn levi_filtration_fns(
    rs: &RootSystem,
    x: &[Q],
    r: &Q,
    r_prime: &Q,
    levi: &RootSet,
) -> LeviBounds {
    let pick = |a: usize| if levi.contains(a) { r } else { r_prime };
    LeviBounds {
        lower: ConcaveFn::from_integers(
            rs.roots()
                .map(|a| floor_q(&(pick(a) - rs.pairing(a, x) + qi(1)))),
        ),
        upper: ConcaveFn::from_integers(rs.roots().map(|a| ceil_q(&(pick(a) - rs.pairing(a, x))))),
    }
}

/// `f(α) = base + ε_α + [α ∈ Ψ]`.
pub fn fn_from_psi(rs: &RootSystem, psi: &RootSet, base: i64) -> ConcaveFn {
    ConcaveFn::from_integers(
        rs.roots()
            .map(|a| base + rs.epsilon(a) + i64::from(psi.contains(a))),
    )
}

enum Constraint {
    /// `f(sum) ≤ eps + f(base)`.
    Sum { sum: usize, base: usize, eps: i64 },
    /// `f(a) ≤ f(−a) + 2 ε_a`.
    Opposite { a: usize },
}

/// Every normal function with `f_I ≤ f ≤ f_I + fmax`, as `f − f_I` vectors, by
/// backtracking along a linear extension of the root order.
pub fn enumerate_normal_fns(rs: &RootSystem, fmax: i64) -> Vec<Vec<i64>> {
    let order = rs.linear_extension();
    let mut pos = vec![0usize; rs.len()];
    for (k, &a) in order.iter().enumerate() {
        pos[a] = k;
    }
    let mut at: Vec<Vec<Constraint>> = (0..rs.len()).map(|_| Vec::new()).collect();
    for a in rs.roots() {
        for b in rs.roots() {
            if let RootSum::Root(c) = rs.sum(a, b) {
                let k = pos[b].max(pos[c]);
                at[k].push(Constraint::Sum {
                    sum: c,
                    base: b,
                    eps: rs.epsilon(a),
                });
            }
        }
        at[pos[a].max(pos[rs.neg(a)])].push(Constraint::Opposite { a });
    }
    let mut f = vec![0i64; rs.len()];
    let mut out = Vec::new();
    backtrack(rs, &order, &at, fmax, 0, &mut f, &mut out);
    out.into_iter()
        .map(|fv: Vec<i64>| rs.roots().map(|a| fv[a] - rs.epsilon(a)).collect())
        .collect()
}

fn backtrack(
    rs: &RootSystem,
    order: &[usize],
    at: &[Vec<Constraint>],
    fmax: i64,
    k: usize,
    f: &mut [i64],
    out: &mut Vec<Vec<i64>>,
) {
    if k == order.len() {
        out.push(f.to_vec());
        return;
    }
    let a = order[k];
    for v in 0..=fmax {
        f[a] = rs.epsilon(a) + v;
        let ok = at[k].iter().all(|c| match *c {
            Constraint::Sum { sum, base, eps } => f[sum] <= eps + f[base],
            Constraint::Opposite { a } => f[a] <= f[rs.neg(a)] + 2 * rs.epsilon(a),
        });
        if ok {
            backtrack(rs, order, at, fmax, k + 1, f, out);
        }
    }
}

/// Lift of `f − f_I` values to a function.
pub fn from_f_eps(rs: &RootSystem, e: &[i64]) -> ConcaveFn {
    ConcaveFn::from_integers(rs.roots().map(|a| e[a] + rs.epsilon(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn iwahori_function_is_normal_and_iwahori() {
        let r = rs("A2");
        let f = iwahori_fn(&r);
        assert!(is_iwahori(&r, &f));
        assert!(is_normal_fn(&r, &f));
        let t = type_of(&r, &f).unwrap();
        assert_eq!(t.kind, NormalKind::Type1);
        assert_eq!(t.psi, RootSet::full(r.len()));
    }

    #[test]
    fn zero_function_is_parahoric_not_pro_unipotent() {
        let r = rs("A2");
        let f = ConcaveFn::from_integers(vec![0; r.len()]);
        assert!(is_parahoric(&r, &f));
        assert!(!is_pro_unipotent(&r, &f));
    }

    #[test]
    fn opposite_condition_matters_in_a1() {
        let r = rs("A1");
        let f = from_f_eps(&r, &[2, 0]);
        assert!(is_normal_fn_sums_only(&r, &f));
        assert!(matches!(
            check_normal(&r, &f),
            Err(NormalityViolation::Opposite { .. })
        ));
    }

    #[test]
    fn filtration_at_origin() {
        let r = rs("A2");
        let x = vec![qi(0), qi(0)];
        let f = filtration_fn(&r, &x, &q(1, 2));
        assert!(f.values().iter().all(|v| *v == qi(1)));
        let g = filtration_fn_plus(&r, &x, &q(1, 2));
        assert!(g.values().iter().all(|v| *v == qi(1)));
    }

    #[test]
    fn levi_bounds_split_on_subsystem() {
        let r = rs("A3");
        let levi = RootSet::from_indices(r.len(), [0, r.neg(0)]);
        let x = vec![qi(0); 3];
        let b = levi_filtration_fns(&r, &x, &q(1, 2), &q(3, 2), &levi);
        assert_eq!(b.lower.get(0), qi(1));
        assert_eq!(b.lower.get(1), qi(2));
    }
}
