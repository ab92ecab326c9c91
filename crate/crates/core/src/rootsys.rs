//! Root data with exact coordinates, heights relative to the extended basis,
//! the induced partial order and chains between comparable roots.
//!
//! Roots are indexed `0..len()`. Positive roots come first, ordered by height
//! and then by descending coefficient vector; the negative of root `i` is
//! `i ± n_positive()`. Indices `0..rank()` are the simple roots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{q, qi, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("rank {rank} is out of range for type {family}")]
    RankOutOfRange { family: Family, rank: usize },
    #[error("not a root of {ty}: {what}")]
    NotARoot { ty: RootSystemType, what: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no adjusted family exists for the requested target")]
    NoAdjustment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        };
        f.write_str(s)
    }
}

/// Cartan-Killing type of an irreducible root system, e.g. `A3` or `BC2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A | Family::BC => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(RootSystemError::RankOutOfRange { family, rank })
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.family != Family::BC
    }

    /// Coxeter number from the classical table (`2n+1` for `BC_n`).
    pub fn classical_coxeter_number(&self) -> i64 {
        let n = self.rank as i64;
        match self.family {
            Family::A => n + 1,
            Family::B | Family::C => 2 * n,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Family::F => 12,
            Family::G => 6,
            Family::BC => 2 * n + 1,
        }
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let upper = t.to_ascii_uppercase();
        let split = upper
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| RootSystemError::UnknownType(t.to_string()))?;
        let (fam, num) = upper.split_at(split);
        let family = match fam {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            "BC" => Family::BC,
            _ => return Err(RootSystemError::UnknownType(t.to_string())),
        };
        let rank: usize = num
            .parse()
            .map_err(|_| RootSystemError::UnknownType(t.to_string()))?;
        RootSystemType::new(family, rank)
    }
}

impl Serialize for RootSystemType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootSystemType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Result of adding two roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSum {
    Root(usize),
    Zero,
    None,
}

const SUM_NONE: i32 = -1;
const SUM_ZERO: i32 = -2;

/// An element `(root, level)` of the affine root system, where `root == None`
/// stands for the zero vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: Option<usize>,
    pub level: i64,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: RootSystemType,
    dim: usize,
    coeffs: Vec<Vec<i32>>,
    coords: Vec<Vec<Q>>,
    gram: Vec<Vec<Q>>,
    by_coeffs: HashMap<Vec<i32>, usize>,
    by_coords: HashMap<Vec<Q>, usize>,
    n_pos: usize,
    highest: usize,
    marks: Vec<i32>,
    extended: Vec<usize>,
    sums: Vec<i32>,
}

fn unit(dim: usize, i: usize, v: Q) -> Vec<Q> {
    let mut e = vec![qi(0); dim];
    e[i] = v;
    e
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<Q> {
    let mut e = vec![qi(0); dim];
    e[i] = qi(1);
    e[j] = qi(-1);
    e
}

fn simple_realization(ty: RootSystemType) -> (usize, Vec<Vec<Q>>) {
    let n = ty.rank;
    match ty.family {
        Family::A => {
            let dim = n + 1;
            (dim, (0..n).map(|i| diff(dim, i, i + 1)).collect())
        }
        Family::B | Family::C | Family::D | Family::BC => {
            let dim = n;
            let mut s: Vec<Vec<Q>> = (0..n - 1).map(|i| diff(dim, i, i + 1)).collect();
            let last = match ty.family {
                Family::C => unit(dim, n - 1, qi(2)),
                Family::D => {
                    let mut v = unit(dim, n - 2, qi(1));
                    v[n - 1] = qi(1);
                    v
                }
                _ => unit(dim, n - 1, qi(1)),
            };
            s.push(last);
            (dim, s)
        }
        Family::E => {
            let dim = 8;
            let h = q(1, 2);
            let mut a1 = vec![-h; 8];
            a1[0] = h;
            a1[7] = h;
            let mut a2 = unit(dim, 0, qi(1));
            a2[1] = qi(1);
            let mut s = vec![a1, a2];
            for i in 0..6 {
                s.push(diff(dim, i + 1, i));
            }
            s.truncate(n);
            (dim, s)
        }
        Family::F => {
            let dim = 4;
            let h = q(1, 2);
            (
                dim,
                vec![
                    diff(dim, 1, 2),
                    diff(dim, 2, 3),
                    unit(dim, 3, qi(1)),
                    vec![h, -h, -h, -h],
                ],
            )
        }
        Family::G => (
            3,
            vec![vec![qi(1), qi(-1), qi(0)], vec![qi(-2), qi(1), qi(1)]],
        ),
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Positive roots in simple-root coordinates via root strings.
fn positive_roots(gram: &[Vec<Q>]) -> Vec<Vec<i32>> {
    let n = gram.len();
    let mut known: HashSet<Vec<i32>> = HashSet::new();
    let mut layer: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut c = vec![0; n];
            c[i] = 1;
            c
        })
        .collect();
    let mut out = Vec::new();
    while !layer.is_empty() {
        for r in &layer {
            known.insert(r.clone());
        }
        out.extend(layer.iter().cloned());
        let mut next: Vec<Vec<i32>> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let ip: Q = (0..n).map(|j| qi(beta[j] as i64) * gram[j][i]).sum();
                let cartan = (qi(2) * ip / gram[i][i]).to_integer();
                let mut p = 0i64;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - cartan > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    out
}

impl RootSystem {
    pub fn new(ty: RootSystemType) -> Self {
        let n = ty.rank;
        let (dim, simple) = simple_realization(ty);
        let raw: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| dot(&simple[i], &simple[j])).collect())
            .collect();
        let mut pos = positive_roots(&raw);
        if ty.family == Family::BC {
            let short: Vec<Vec<i32>> = pos
                .iter()
                .filter(|c| {
                    let v = combine(&simple, dim, c);
                    dot(&v, &v) == qi(1)
                })
                .map(|c| c.iter().map(|x| 2 * x).collect())
                .collect();
            pos.extend(short);
        }
        pos.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = pos.len();
        let mut coeffs = pos.clone();
        coeffs.extend(pos.iter().map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()));
        let coords: Vec<Vec<Q>> = coeffs.iter().map(|c| combine(&simple, dim, c)).collect();
        let max_norm = coords
            .iter()
            .map(|v| dot(v, v))
            .max()
            .expect("root system is non-empty");
        let scale = qi(2) / max_norm;
        let gram: Vec<Vec<Q>> = raw
            .iter()
            .map(|row| row.iter().map(|x| x * scale).collect())
            .collect();
        let by_coeffs: HashMap<Vec<i32>, usize> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let by_coords: HashMap<Vec<Q>, usize> = coords
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let highest = n_pos - 1;
        let marks = coeffs[highest].clone();
        let mut extended: Vec<usize> = (0..n).collect();
        extended.push(highest + n_pos);
        let total = 2 * n_pos;
        let mut sums = vec![SUM_NONE; total * total];
        for a in 0..total {
            for b in 0..total {
                let s: Vec<i32> = coeffs[a]
                    .iter()
                    .zip(&coeffs[b])
                    .map(|(x, y)| x + y)
                    .collect();
                sums[a * total + b] = if s.iter().all(|&x| x == 0) {
                    SUM_ZERO
                } else {
                    by_coeffs.get(&s).map(|&i| i as i32).unwrap_or(SUM_NONE)
                };
            }
        }
        Self {
            ty,
            dim,
            coeffs,
            coords,
            gram,
            by_coeffs,
            by_coords,
            n_pos,
            highest,
            marks,
            extended,
            sums,
        }
    }

    pub fn ty(&self) -> RootSystemType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// Dimension of the ambient space of the coordinate realization.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Number of roots.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn n_positive(&self) -> usize {
        self.n_pos
    }

    pub fn roots(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// Coefficients in the basis of simple roots.
    pub fn coeffs(&self, i: usize) -> &[i32] {
        &self.coeffs[i]
    }

    /// Coordinates in the standard realization.
    pub fn coords(&self, i: usize) -> &[Q] {
        &self.coords[i]
    }

    /// Normalized inner products of simple roots; long roots have square length 2.
    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn inner(&self, a: usize, b: usize) -> Q {
        let n = self.rank();
        let (ca, cb) = (&self.coeffs[a], &self.coeffs[b]);
        let mut s = qi(0);
        for i in 0..n {
            for j in 0..n {
                s += qi((ca[i] * cb[j]) as i64) * self.gram[i][j];
            }
        }
        s
    }

    pub fn neg(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    /// 0 for positive roots, 1 for negative roots.
    pub fn epsilon(&self, i: usize) -> i64 {
        if self.is_positive(i) {
            0
        } else {
            1
        }
    }

    pub fn simple_roots(&self) -> std::ops::Range<usize> {
        0..self.rank()
    }

    /// Simple roots followed by the negative of the highest root.
    pub fn extended_basis(&self) -> &[usize] {
        &self.extended
    }

    pub fn is_extended_basis(&self, i: usize) -> bool {
        self.extended.contains(&i)
    }

    pub fn highest_root(&self) -> usize {
        self.highest
    }

    /// Coefficients of the highest root.
    pub fn marks(&self) -> &[i32] {
        &self.marks
    }

    /// Height of the highest root plus one.
    pub fn coxeter_number(&self) -> i64 {
        1 + self.marks.iter().map(|&m| m as i64).sum::<i64>()
    }

    pub fn sum(&self, a: usize, b: usize) -> RootSum {
        match self.sums[a * self.len() + b] {
            SUM_NONE => RootSum::None,
            SUM_ZERO => RootSum::Zero,
            i => RootSum::Root(i as usize),
        }
    }

    /// The root `a + b`, if it is one.
    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        match self.sum(a, b) {
            RootSum::Root(i) => Some(i),
            _ => None,
        }
    }

    pub fn lookup_coeffs(&self, c: &[i32]) -> Option<usize> {
        self.by_coeffs.get(c).copied()
    }

    pub fn lookup_coords(&self, c: &[Q]) -> Option<usize> {
        self.by_coords.get(c).copied()
    }

    pub fn root_from_coords(&self, c: &[Q]) -> Result<usize, RootSystemError> {
        self.lookup_coords(c)
            .ok_or_else(|| RootSystemError::NotARoot {
                ty: self.ty,
                what: format!(
                    "[{}]",
                    c.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            })
    }

    /// Coefficients of `(root, level)` over the affine simple roots
    /// `(α_1,0), …, (α_n,0), (−α_M,1)`; the last entry belongs to `(−α_M,1)`.
    pub fn affine_coeffs_at(&self, root: Option<usize>, level: i64) -> Vec<i64> {
        let n = self.rank();
        let mut a: Vec<i64> = (0..n)
            .map(|i| level * self.marks[i] as i64 + root.map_or(0, |r| self.coeffs[r][i] as i64))
            .collect();
        a.push(level);
        a
    }

    /// Affine coefficients of `(α, ε_α)`.
    pub fn affine_coeffs(&self, i: usize) -> Vec<i64> {
        self.affine_coeffs_at(Some(i), self.epsilon(i))
    }

    /// Multiplicities of the extended-basis elements, in the order of
    /// [`RootSystem::extended_basis`], in the decomposition of `α`.
    pub fn decomposition(&self, i: usize) -> Vec<i64> {
        self.affine_coeffs(i)
    }

    /// Sum of the coefficients of `(α, ε_α)` over the affine simple roots.
    pub fn height(&self, i: usize) -> i64 {
        let base: i64 = self.coeffs[i].iter().map(|&c| c as i64).sum();
        if self.is_positive(i) {
            base
        } else {
            base + self.coxeter_number()
        }
    }

    /// The extended-basis order: `(α,ε_α) ≤ (β,ε_β)` coefficientwise.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        let (ea, eb) = (self.epsilon(a), self.epsilon(b));
        let n = self.rank();
        if ea > eb {
            return false;
        }
        (0..n).all(|i| {
            let x = self.coeffs[a][i] as i64 + ea * self.marks[i] as i64;
            let y = self.coeffs[b][i] as i64 + eb * self.marks[i] as i64;
            x <= y
        })
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Extended-basis elements `g_1, …, g_k` such that `a + g_1 + … + g_i` is a
    /// root for every `i` and the full sum is `b`, or `None` if there is no
    /// such chain.
    pub fn chain_between(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut prev = vec![(usize::MAX, usize::MAX); self.len()];
        let mut queue = VecDeque::from([a]);
        prev[a] = (a, usize::MAX);
        while let Some(u) = queue.pop_front() {
            if u == b {
                let mut steps = Vec::new();
                let mut cur = b;
                while cur != a {
                    let (p, g) = prev[cur];
                    steps.push(g);
                    cur = p;
                }
                steps.reverse();
                return Some(steps);
            }
            for &g in &self.extended {
                if let Some(v) = self.add(u, g) {
                    if prev[v].0 == usize::MAX {
                        prev[v] = (u, g);
                        queue.push_back(v);
                    }
                }
            }
        }
        None
    }

    /// Roots ordered by height, a linear extension of [`RootSystem::leq`].
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.roots().collect();
        order.sort_by_key(|&i| (self.height(i), i));
        order
    }

    /// `α(x)` for a point given by its values on the simple roots.
    pub fn pairing(&self, i: usize, x: &[Q]) -> Q {
        self.coeffs[i]
            .iter()
            .zip(x)
            .map(|(&c, v)| qi(c as i64) * v)
            .sum()
    }

    /// Integer coefficients of the linear form `x ↦ α(x)`.
    pub fn form(&self, i: usize) -> Vec<i64> {
        self.coeffs[i].iter().map(|&c| c as i64).collect()
    }

    /// Human-readable label such as `a1+2a2` or `-a1-a2`.
    pub fn label(&self, i: usize) -> String {
        let mut s = String::new();
        for (k, &c) in self.coeffs[i].iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&format!("a{}", k + 1));
        }
        s
    }

    /// Decodes an affine coefficient vector into an element `(root, level)`.
    pub fn decode_affine(&self, a: &[i64]) -> Option<AffineRoot> {
        let n = self.rank();
        let level = a[n];
        let c: Vec<i32> = (0..n)
            .map(|i| (a[i] - level * self.marks[i] as i64) as i32)
            .collect();
        if c.iter().all(|&x| x == 0) {
            return Some(AffineRoot { root: None, level });
        }
        self.lookup_coeffs(&c).map(|r| AffineRoot {
            root: Some(r),
            level,
        })
    }

    /// Whether `(root, level)` is a positive affine root or `(0, v)` with `v > 0`.
    pub fn is_positive_affine(&self, x: AffineRoot) -> bool {
        match x.root {
            Some(r) => x.level >= self.epsilon(r),
            None => x.level > 0,
        }
    }

    fn affine_vec(&self, x: AffineRoot) -> Vec<i64> {
        self.affine_coeffs_at(x.root, x.level)
    }

    fn affine_leq(&self, x: AffineRoot, y: AffineRoot) -> bool {
        self.affine_vec(x)
            .iter()
            .zip(self.affine_vec(y))
            .all(|(a, b)| *a <= b)
    }

    fn affine_sum(&self, xs: &[AffineRoot]) -> Vec<i64> {
        let mut s = vec![0i64; self.rank() + 1];
        for x in xs {
            for (t, v) in s.iter_mut().zip(self.affine_vec(*x)) {
                *t += v;
            }
        }
        s
    }

    /// Given positive affine roots summing to `(α, c+ε_α)` with `α ∈ Φ`, and a
    /// target `y` with `(α,c+ε_α) ≤ y ≤ (0,c+1)` (or `(0,c) ≤ y ≤ (α,c+ε_α)`),
    /// finds members `y_i` summing to `y` with each `y_i` between the original
    /// member and `(0, c_i+1)` (respectively between `(0, c_i)` and the member).
    pub fn infsum_adjust(
        &self,
        family: &[AffineRoot],
        target: AffineRoot,
    ) -> Result<Vec<AffineRoot>, RootSystemError> {
        if family.is_empty() || family.iter().any(|&x| !self.is_positive_affine(x)) {
            return Err(RootSystemError::Precondition(
                "family must be non-empty and consist of positive affine roots".into(),
            ));
        }
        let total = self.affine_sum(family);
        let sum = self
            .decode_affine(&total)
            .ok_or_else(|| RootSystemError::Precondition("sum is not an affine root".into()))?;
        let alpha = sum.root.ok_or_else(|| {
            RootSystemError::Precondition("sum of the family must be a non-zero root".into())
        })?;
        let c = sum.level - self.epsilon(alpha);
        let eps_t = target.root.map_or(0, |r| self.epsilon(r));
        let c_prime = target.level - eps_t;
        if c_prime != c && c_prime != c + 1 {
            return Err(RootSystemError::Precondition(
                "target level must be c or c+1".into(),
            ));
        }
        let zero = |v: i64| AffineRoot {
            root: None,
            level: v,
        };
        let upward = self.affine_leq(sum, target) && self.affine_leq(target, zero(c + 1));
        let downward = self.affine_leq(zero(c), target) && self.affine_leq(target, sum);
        if !upward && !downward {
            return Err(RootSystemError::Precondition(
                "target is not in an admissible interval".into(),
            ));
        }
        let bounds: Vec<(AffineRoot, AffineRoot)> = family
            .iter()
            .map(|&x| {
                let ci = x.level - x.root.map_or(0, |r| self.epsilon(r));
                if upward {
                    (x, zero(ci + 1))
                } else {
                    (zero(ci), x)
                }
            })
            .collect();
        let start: Vec<Vec<i64>> = family.iter().map(|&x| self.affine_vec(x)).collect();
        let goal = self.affine_vec(target);
        let mut seen = HashSet::new();
        let found = self.adjust_search(&start, &goal, &bounds, upward, &mut seen);
        found
            .map(|v| {
                v.iter()
                    .map(|a| self.decode_affine(a).expect("search keeps valid elements"))
                    .collect()
            })
            .ok_or(RootSystemError::NoAdjustment)
    }

    fn adjust_search(
        &self,
        cur: &[Vec<i64>],
        goal: &[i64],
        bounds: &[(AffineRoot, AffineRoot)],
        upward: bool,
        seen: &mut HashSet<Vec<Vec<i64>>>,
    ) -> Option<Vec<Vec<i64>>> {
        let m = goal.len();
        let mut total = vec![0i64; m];
        for v in cur {
            for (t, x) in total.iter_mut().zip(v) {
                *t += x;
            }
        }
        let rem: Vec<i64> = if upward {
            goal.iter().zip(&total).map(|(g, t)| g - t).collect()
        } else {
            total.iter().zip(goal).map(|(t, g)| t - g).collect()
        };
        if rem.iter().all(|&r| r == 0) {
            return Some(cur.to_vec());
        }
        if !seen.insert(cur.to_vec()) {
            return None;
        }
        let step = if upward { 1 } else { -1 };
        for j in 0..m {
            if rem[j] <= 0 {
                continue;
            }
            for i in 0..cur.len() {
                let mut next = cur.to_vec();
                next[i][j] += step;
                let Some(x) = self.decode_affine(&next[i]) else {
                    continue;
                };
                let (lo, hi) = bounds[i];
                if !self.is_positive_affine(x) || !self.affine_leq(lo, x) || !self.affine_leq(x, hi)
                {
                    continue;
                }
                if let Some(sol) = self.adjust_search(&next, goal, bounds, upward, seen) {
                    return Some(sol);
                }
            }
        }
        None
    }
}

fn combine(simple: &[Vec<Q>], dim: usize, c: &[i32]) -> Vec<Q> {
    let mut v = vec![qi(0); dim];
    for (k, &ck) in c.iter().enumerate() {
        if ck != 0 {
            for (t, s) in v.iter_mut().zip(&simple[k]) {
                *t += qi(ck as i64) * s;
            }
        }
    }
    v
}

/// Every irreducible type of rank at most `max_rank`, reduced types only.
pub fn irreducible_types_up_to(max_rank: usize) -> Vec<RootSystemType> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push(RootSystemType {
            family: Family::A,
            rank: n,
        });
        if n >= 2 {
            out.push(RootSystemType {
                family: Family::B,
                rank: n,
            });
            out.push(RootSystemType {
                family: Family::C,
                rank: n,
            });
        }
        if n >= 4 {
            out.push(RootSystemType {
                family: Family::D,
                rank: n,
            });
        }
        if n == 2 {
            out.push(RootSystemType {
                family: Family::G,
                rank: 2,
            });
        }
        if n == 4 {
            out.push(RootSystemType {
                family: Family::F,
                rank: 4,
            });
        }
        if (6..=8).contains(&n) {
            out.push(RootSystemType {
                family: Family::E,
                rank: n,
            });
        }
    }
    out
}
