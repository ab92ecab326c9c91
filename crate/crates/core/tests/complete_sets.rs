use parahoric::complete::{
    downward_closure, enumerate_complete, frontier, is_complete, negate_complement, RootSet,
};
use parahoric::RootSystem;
use proptest::prelude::*;

fn rs(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap())
}

fn set(r: &RootSystem, coeffs: &[&[i32]]) -> RootSet {
    RootSet::from_indices(r.len(), coeffs.iter().map(|c| r.lookup_coeffs(c).unwrap()))
}

fn worked_psi(r: &RootSystem) -> RootSet {
    set(
        r,
        &[
            &[1, 0, 0],
            &[0, 1, 0],
            &[1, 1, 0],
            &[0, 0, 1],
            &[-1, -1, -1],
            &[-1, -1, 0],
        ],
    )
}

fn by_definition(r: &RootSystem, s: &RootSet) -> bool {
    s.iter()
        .all(|a| r.roots().all(|b| !r.leq(b, a) || s.contains(b)))
}

#[test]
fn completeness_examples() {
    let a2 = rs("A2");
    assert!(is_complete(&a2, &RootSet::from_indices(6, [0])));
    assert!(!is_complete(
        &a2,
        &RootSet::from_indices(6, [a2.highest_root()])
    ));
    let a3 = rs("A3");
    assert!(is_complete(&a3, &worked_psi(&a3)));
}

#[test]
fn enumeration_matches_subset_filter() {
    for t in ["A1", "A2", "B2", "G2", "A3", "BC1", "BC2"] {
        let r = rs(t);
        assert!(r.len() <= 12);
        let mut brute: Vec<RootSet> = (0u32..1 << r.len())
            .map(|mask| RootSet::from_indices(r.len(), r.roots().filter(|&a| mask >> a & 1 == 1)))
            .filter(|s| by_definition(&r, s))
            .collect();
        let mut fast = enumerate_complete(&r);
        assert!(fast.iter().all(|s| is_complete(&r, s)));
        brute.sort_by_key(|s| s.iter().collect::<Vec<_>>());
        fast.sort_by_key(|s| s.iter().collect::<Vec<_>>());
        assert_eq!(fast, brute, "{t}");
    }
    assert_eq!(enumerate_complete(&rs("A1")).len(), 4);
}

#[test]
fn enumeration_contains_extremes_once() {
    for t in ["A2", "A3", "B3", "C3", "G2"] {
        let r = rs(t);
        let sets = enumerate_complete(&r);
        let empty = RootSet::empty(r.len());
        let full = RootSet::full(r.len());
        assert_eq!(sets.iter().filter(|s| **s == empty).count(), 1);
        assert_eq!(sets.iter().filter(|s| **s == full).count(), 1);
        let mut keys: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().collect()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), sets.len(), "{t}");
    }
}

#[test]
fn frontier_examples() {
    let r = rs("A2");
    let mut ext = r.extended_basis().to_vec();
    ext.sort();
    let fr = frontier(&r, &RootSet::empty(r.len()));
    assert!(fr.maximal.is_empty());
    assert_eq!(fr.minimal_outside, ext);
    let fr = frontier(&r, &RootSet::full(r.len()));
    let mut neg: Vec<usize> = ext.iter().map(|&g| r.neg(g)).collect();
    neg.sort();
    assert_eq!(fr.maximal, neg);
    assert!(fr.minimal_outside.is_empty());

    let a3 = rs("A3");
    let fr = frontier(&a3, &worked_psi(&a3));
    for c in [[1, 1, 0], [-1, -1, 0]] {
        assert!(fr.maximal.contains(&a3.lookup_coeffs(&c).unwrap()));
    }
}

#[test]
fn frontier_generates_the_set() {
    for t in ["A2", "B2", "G2", "A3", "B3"] {
        let r = rs(t);
        for s in enumerate_complete(&r) {
            let fr = frontier(&r, &s);
            let gen = RootSet::from_indices(r.len(), fr.maximal.iter().copied());
            assert_eq!(downward_closure(&r, &gen), s);
            for &a in &fr.minimal_outside {
                assert!(!s.contains(a));
                let mut bigger = s.clone();
                bigger.insert(a);
                assert!(is_complete(&r, &bigger), "{t}");
            }
        }
    }
}

#[test]
fn negate_complement_examples() {
    let r = rs("A2");
    let empty = RootSet::empty(r.len());
    let full = RootSet::full(r.len());
    assert_eq!(negate_complement(&r, &empty), full);
    assert_eq!(negate_complement(&r, &full), empty);
}

#[test]
fn negate_complement_is_an_involution_on_complete_sets() {
    for t in ["A2", "B2", "G2", "A3", "B3", "C3"] {
        let r = rs(t);
        for s in enumerate_complete(&r) {
            let n = negate_complement(&r, &s);
            assert!(is_complete(&r, &n), "{t}");
            assert_eq!(negate_complement(&r, &n), s);
        }
    }
}

proptest! {
    #[test]
    fn downward_closure_is_the_least_complete_superset(
        idx in 0usize..5, mask in any::<u64>()
    ) {
        let t = ["A3", "B3", "C3", "G2", "A4"][idx];
        let r = rs(t);
        let s = RootSet::from_indices(r.len(), r.roots().filter(|&a| mask >> (a % 64) & 1 == 1 && a < 64));
        let c = downward_closure(&r, &s);
        prop_assert!(is_complete(&r, &c));
        prop_assert!(s.is_subset(&c));
        for a in c.iter() {
            prop_assert!(s.iter().any(|b| r.leq(a, b)));
        }
    }
}
