//! Exact rational helpers.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Exact rational number used throughout the crate.
pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Formats as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Option<Q> {
    s.trim().parse::<Q>().ok()
}

pub fn ceil_q(x: &Q) -> i64 {
    x.ceil().to_integer()
}

pub fn floor_q(x: &Q) -> i64 {
    x.floor().to_integer()
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Least common multiple of the denominators of `xs`.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Q>>(xs: I) -> i64 {
    xs.into_iter().fold(1i64, |acc, x| acc.lcm(x.denom()))
}

pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / qi(2)
}

pub fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if *x > Q::zero() {
        1
    } else {
        -1
    }
}

/// Rank of a rational matrix given by rows.
pub fn matrix_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c];
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c] / pivot;
                for k in c..cols {
                    let v = m[rank][k] * f;
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}
