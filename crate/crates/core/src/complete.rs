//! Complete subsets: subsets of roots closed downward under the
//! extended-basis order.

use std::fmt;

use crate::rootsys::RootSystem;

/// A set of root indices stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootSet {
    words: Vec<u64>,
    len: usize,
}

impl RootSet {
    pub fn empty(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut s = Self::empty(len);
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Size of the universe.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn complement(&self) -> Self {
        let mut s = Self::empty(self.len);
        for i in 0..self.len {
            if !self.contains(i) {
                s.insert(i);
            }
        }
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
            len: self.len,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Maximal elements of a complete subset and minimal elements of its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    pub maximal: Vec<usize>,
    pub minimal_outside: Vec<usize>,
}

/// Whether `s` is downward closed under the extended-basis order.
pub fn is_complete(rs: &RootSystem, s: &RootSet) -> bool {
    s.iter()
        .all(|b| rs.roots().all(|a| !rs.leq(a, b) || s.contains(a)))
}

/// Smallest complete subset containing `s`.
pub fn downward_closure(rs: &RootSystem, s: &RootSet) -> RootSet {
    let mut out = RootSet::empty(rs.len());
    for a in rs.roots() {
        if s.iter().any(|b| rs.leq(a, b)) {
            out.insert(a);
        }
    }
    out
}

/// For each root, the roots it covers: `α − γ` for `γ` in the extended basis.
pub fn lower_covers(rs: &RootSystem) -> Vec<Vec<usize>> {
    rs.roots()
        .map(|a| {
            rs.extended_basis()
                .iter()
                .filter_map(|&g| rs.add(a, rs.neg(g)))
                .filter(|&b| rs.lt(b, a))
                .collect()
        })
        .collect()
}

/// All complete subsets, in a deterministic order.
pub fn enumerate_complete(rs: &RootSystem) -> Vec<RootSet> {
    let order = rs.linear_extension();
    let covers = lower_covers(rs);
    let mut out = Vec::new();
    let mut cur = RootSet::empty(rs.len());
    extend(&order, &covers, 0, &mut cur, &mut out);
    out
}

fn extend(
    order: &[usize],
    covers: &[Vec<usize>],
    k: usize,
    cur: &mut RootSet,
    out: &mut Vec<RootSet>,
) {
    if k == order.len() {
        out.push(cur.clone());
        return;
    }
    let a = order[k];
    extend(order, covers, k + 1, cur, out);
    if covers[a].iter().all(|&b| cur.contains(b)) {
        cur.insert(a);
        extend(order, covers, k + 1, cur, out);
        cur.remove(a);
    }
}

pub fn frontier(rs: &RootSystem, s: &RootSet) -> Frontier {
    let maximal = s
        .iter()
        .filter(|&a| !s.iter().any(|b| rs.lt(a, b)))
        .collect();
    let rest = s.complement();
    let minimal_outside = rest
        .iter()
        .filter(|&a| !rest.iter().any(|b| rs.lt(b, a)))
        .collect();
    Frontier {
        maximal,
        minimal_outside,
    }
}

/// `−(Φ ∖ s)`.
pub fn negate_complement(rs: &RootSystem, s: &RootSet) -> RootSet {
    RootSet::from_indices(rs.len(), s.complement().iter().map(|a| rs.neg(a)))
}
