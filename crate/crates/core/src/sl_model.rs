//! Valuation patterns of subgroups of `SL_n` over a local field: entry `(i,j)`
//! of every element has valuation at least `m_ij`, and diagonal entries lie in
//! `1 + p^{d_i}`.
//!
//! Text format: `n` lines of `n` whitespace-separated tokens; off-diagonal
//! tokens are integers `m_ij`, diagonal tokens are `*d_i`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::concave::ConcaveFn;
use crate::rational::qi;
use crate::rootsys::{Family, RootSystem, RootSystemType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("pattern must be at least 2x2")]
    TooSmall,
    #[error("m[{i}][{j}] = {mij} exceeds m[{i}][{k}] + m[{k}][{j}] = {bound}")]
    NotConcave {
        i: usize,
        j: usize,
        k: usize,
        mij: i64,
        bound: i64,
    },
    #[error("m[{i}][{j}] + m[{j}][{i}] = {sum} must be at least 1")]
    NotProNilpotent { i: usize, j: usize, sum: i64 },
    #[error("function does not come from a type A root system")]
    WrongRootSystem,
}

/// Lower bounds on valuations of matrix entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValuationPattern {
    n: usize,
    m: Vec<Vec<i64>>,
    depths: Vec<i64>,
}

impl ValuationPattern {
    /// Checks `m_ij ≤ m_ik + m_kj` and `m_ij + m_ji ≥ 1`. Diagonal entries of
    /// `m` are ignored.
    pub fn new(m: Vec<Vec<i64>>, depths: Vec<i64>) -> Result<Self, PatternError> {
        let n = m.len();
        if n < 2 {
            return Err(PatternError::TooSmall);
        }
        let p = Self { n, m, depths };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<(), PatternError> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let sum = self.m[i][j] + self.m[j][i];
                if sum < 1 {
                    return Err(PatternError::NotProNilpotent { i, j, sum });
                }
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    let bound = self.m[i][k] + self.m[k][j];
                    if self.m[i][j] > bound {
                        return Err(PatternError::NotConcave {
                            i,
                            j,
                            k,
                            mij: self.m[i][j],
                            bound,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.m[i][j]
    }

    pub fn depths(&self) -> &[i64] {
        &self.depths
    }

    /// Root system `A_{n−1}` of the pattern.
    pub fn root_system(&self) -> RootSystem {
        type_a(self.n)
    }
}

fn type_a(n: usize) -> RootSystem {
    RootSystem::new(RootSystemType {
        family: Family::A,
        rank: n - 1,
    })
}

/// Index of the root `e_i − e_j` of `A_{n−1}`.
pub fn root_index(rs: &RootSystem, i: usize, j: usize) -> usize {
    let mut c = vec![qi(0); rs.ambient_dim()];
    c[i] = qi(1);
    c[j] = qi(-1);
    rs.lookup_coords(&c).expect("e_i - e_j is a root")
}

fn eps(i: usize, j: usize) -> i64 {
    i64::from(i > j)
}

/// The pro-unipotent radical of the standard Iwahori subgroup.
pub fn iwahori_pattern(n: usize) -> ValuationPattern {
    let m = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0 } else { eps(i, j) }).collect())
        .collect();
    ValuationPattern::new(m, vec![1; n]).expect("valid pattern")
}

/// `f(e_i − e_j) = m_ij` on `A_{n−1}`.
pub fn to_concave_fn(p: &ValuationPattern) -> (RootSystem, ConcaveFn) {
    let rs = p.root_system();
    let mut vals = vec![qi(0); rs.len()];
    for i in 0..p.n {
        for j in 0..p.n {
            if i != j {
                vals[root_index(&rs, i, j)] = qi(p.m[i][j]);
            }
        }
    }
    (rs, ConcaveFn::new(vals))
}

/// Inverse of [`to_concave_fn`] for integer-valued functions on `A_{n−1}`.
pub fn from_concave_fn(
    rs: &RootSystem,
    f: &ConcaveFn,
    depths: Vec<i64>,
) -> Result<ValuationPattern, PatternError> {
    if rs.ty().family != Family::A {
        return Err(PatternError::WrongRootSystem);
    }
    let n = rs.rank() + 1;
    let vals = f.int_values().ok_or(PatternError::WrongRootSystem)?;
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0
                    } else {
                        vals[root_index(rs, i, j)]
                    }
                })
                .collect()
        })
        .collect();
    ValuationPattern::new(m, depths)
}

/// Conjugation by the Iwahori subgroup preserves the pattern: for all `i ≠ j`,
/// `min_{k≠l} ε_ik + m_kl + ε_lj ≥ m_ij`, where `ε_ik = [i > k]` is the
/// valuation bound of the Iwahori subgroup (so `ε_ii = 0`).
pub fn is_normal_in_iwahori(p: &ValuationPattern) -> bool {
    let n = p.n;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    if k != l && eps(i, k) + p.m[k][l] + eps(l, j) < p.m[i][j] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `m_ij ≤ m_ik + m_kj` for distinct `i, j, k`.
pub fn is_tropically_concave(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    (0..n).all(|i| {
        (0..n).all(|j| i == j || (0..n).all(|k| k == i || k == j || m[i][j] <= m[i][k] + m[k][j]))
    })
}

/// A uniformly random valid pattern with `ε_ij ≤ m_ij ≤ max_entry`, drawn by
/// rejection, and depths in `1..=2`.
pub fn random_pattern<R: Rng>(n: usize, max_entry: i64, rng: &mut R) -> ValuationPattern {
    loop {
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            0
                        } else {
                            rng.gen_range(eps(i, j)..=max_entry)
                        }
                    })
                    .collect()
            })
            .collect();
        let depths = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        if let Ok(p) = ValuationPattern::new(m, depths) {
            return p;
        }
    }
}

/// A random valid pattern with `m_ij = ε_ij + c + δ_ij` for a common shift
/// `c ∈ 0..=2` and `δ_ij ∈ {0, 1}`, drawn by rejection. Half the draws set a
/// single `δ_ij` and leave the rest zero, so normal patterns stay common for
/// larger `n`.
pub fn random_pattern_near_iwahori<R: Rng>(n: usize, rng: &mut R) -> ValuationPattern {
    let c = rng.gen_range(0..=2);
    let sparse = rng.gen_bool(0.5);
    loop {
        let mut m: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            0
                        } else if sparse {
                            eps(i, j) + c
                        } else {
                            eps(i, j) + c + rng.gen_range(0..=1)
                        }
                    })
                    .collect()
            })
            .collect();
        if sparse {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            m[i][j] += 1;
        }
        let depths = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        if let Ok(p) = ValuationPattern::new(m, depths) {
            return p;
        }
    }
}

fn from_rows(rows: [[i64; 4]; 4], depths: [i64; 4]) -> ValuationPattern {
    ValuationPattern::new(rows.iter().map(|r| r.to_vec()).collect(), depths.to_vec())
        .expect("valid pattern")
}

/// A normal subgroup of the Iwahori subgroup of `SL_4` whose function is of
/// type 1 with equal invariants.
pub fn example_type1_degenerate() -> ValuationPattern {
    from_rows(
        [[0, 1, 1, 0], [1, 0, 1, 0], [2, 1, 0, 1], [2, 1, 1, 0]],
        [1, 1, 1, 1],
    )
}

/// A normal subgroup of the Iwahori subgroup of `SL_4` whose function is of
/// type 2.
pub fn example_type2() -> ValuationPattern {
    from_rows(
        [[0, 1, 1, 1], [1, 0, 1, 1], [2, 2, 0, 2], [2, 2, 2, 0]],
        [1, 1, 2, 2],
    )
}

impl fmt::Display for ValuationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    if i == j {
                        format!("*{}", self.depths[i])
                    } else {
                        self.m[i][j].to_string()
                    }
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for ValuationPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lines: Vec<(usize, &str)> = s
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let n = lines.len();
        let mut m = vec![vec![0i64; n]; n];
        let mut depths = vec![0i64; n];
        for (i, (line, text)) in lines.iter().enumerate() {
            let toks: Vec<&str> = text.split_whitespace().collect();
            if toks.len() != n {
                return Err(PatternError::Parse {
                    line: *line,
                    msg: format!("expected {n} entries, found {}", toks.len()),
                });
            }
            for (j, tok) in toks.iter().enumerate() {
                let bad = |what: &str| PatternError::Parse {
                    line: *line,
                    msg: format!("{what} `{tok}`"),
                };
                if i == j {
                    let d = tok
                        .strip_prefix('*')
                        .ok_or_else(|| bad("diagonal entry must look like *d, got"))?;
                    depths[i] = d.parse().map_err(|_| bad("invalid diagonal depth"))?;
                } else {
                    m[i][j] = tok.parse().map_err(|_| bad("invalid entry"))?;
                }
            }
        }
        ValuationPattern::new(m, depths)
    }
}
