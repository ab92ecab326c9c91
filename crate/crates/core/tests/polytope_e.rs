use parahoric::complete::{enumerate_complete, RootSet};
use parahoric::polytope::{
    build_e, build_e_strict, build_e_symbolic, family_inequality_holds, solve, LinearSystem,
};
use parahoric::rational::{midpoint, q, qi};
use parahoric::zeta::zeta;
use parahoric::{RootSystem, Q};
use proptest::prelude::*;

fn rs(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap())
}

const SWEEP: [&str; 6] = ["A2", "A3", "B2", "B3", "C3", "G2"];

#[test]
fn a1_symbolic_rows_describe_the_interval() {
    let r = rs("A1");
    let s = build_e_symbolic(&r, &RootSet::from_indices(2, [0]));
    for un in -8..=16 {
        for zn in 0..=8 {
            let (u, z) = (q(un, 8), q(zn, 8));
            let expected = u >= qi(0) && u <= z.min(qi(1) - z);
            assert_eq!(s.satisfied_by(&[u, z]), expected, "u={u} z={z}");
        }
    }
}

#[test]
fn empty_psi_only_bounds_from_below() {
    let r = rs("A2");
    let s = build_e(&r, &RootSet::empty(r.len()), q(1, 3));
    let forms: Vec<Vec<Q>> = r
        .extended_basis()
        .iter()
        .map(|&g| r.form(g).iter().map(|&c| qi(c)).collect())
        .collect();
    for row in &s.rows {
        assert!(forms.contains(&row.coeffs));
    }
    assert_eq!(s.rows.len(), 2 * r.extended_basis().len());
}

#[test]
fn solver_examples() {
    let s = LinearSystem::new(vec!["u".into()]);
    assert_eq!(solve(&s).witness, Some(vec![qi(0)]));
    let mut s = LinearSystem::new(vec!["u".into()]);
    s.add(&[(0, qi(1))], qi(-1), false);
    s.add(&[(0, qi(-1))], qi(0), false);
    assert!(!solve(&s).feasible());
    let r = rs("A1");
    let e = build_e(&r, &RootSet::from_indices(2, [0]), q(1, 2));
    let w = solve(&e).witness.unwrap();
    assert!(e.satisfied_by(&w));
}

#[test]
fn worked_set_is_feasible_at_one_half() {
    let r = rs("A3");
    let psi = RootSet::from_indices(
        r.len(),
        [
            [1, 0, 0],
            [0, 1, 0],
            [1, 1, 0],
            [0, 0, 1],
            [-1, -1, -1],
            [-1, -1, 0],
        ]
        .iter()
        .map(|c| r.lookup_coeffs(c).unwrap()),
    );
    let e = build_e(&r, &psi, q(1, 2));
    let w = solve(&e).witness.unwrap();
    assert!(e.satisfied_by(&w));
}

#[test]
fn e_is_nonempty_exactly_between_the_values() {
    for t in SWEEP {
        let r = rs(t);
        for psi in enumerate_complete(&r) {
            let z = zeta(&r, &psi);
            let mid = midpoint(&z.z_low, &z.z_high);
            for v in [z.z_low, mid, z.z_high] {
                let e = build_e(&r, &psi, v);
                let res = solve(&e);
                let w = res.witness.unwrap_or_else(|| panic!("{t} {psi:?} at {v}"));
                assert!(e.satisfied_by(&w));
            }
            if z.z_low < z.z_high {
                let e = build_e_strict(&r, &psi, mid);
                let res = solve(&e);
                assert!(res.strict, "{t} {psi:?}");
                assert!(e.interior_at(&res.witness.unwrap()));
            }
            let step = q(1, 1000);
            if z.low_witness.is_some() {
                assert!(!solve(&build_e(&r, &psi, z.z_low - step)).feasible());
            }
            if z.high_witness.is_some() {
                assert!(!solve(&build_e(&r, &psi, z.z_high + step)).feasible());
            }
        }
    }
}

#[test]
fn witness_families_satisfy_the_family_inequality() {
    for t in SWEEP {
        let r = rs(t);
        for psi in enumerate_complete(&r) {
            let z = zeta(&r, &psi);
            let (Some(lo), Some(hi)) = (&z.low_witness, &z.high_witness) else {
                continue;
            };
            for v in [z.z_low, midpoint(&z.z_low, &z.z_high), z.z_high] {
                assert_eq!(family_inequality_holds(&r, lo, &[], &v), Some(true));
                assert_eq!(family_inequality_holds(&r, &[], hi, &v), Some(true));
                assert_eq!(family_inequality_holds(&r, lo, hi, &v), Some(true));
            }
        }
    }
}

/// Feasibility of a bounded non-strict system in the plane: a nonempty
/// polygon has a vertex on two of its boundary lines.
fn planar_oracle(s: &LinearSystem) -> bool {
    let rows = &s.rows;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (a, b) = (&rows[i], &rows[j]);
            let det = a.coeffs[0] * b.coeffs[1] - a.coeffs[1] * b.coeffs[0];
            if det == qi(0) {
                continue;
            }
            let u = (-a.constant * b.coeffs[1] + b.constant * a.coeffs[1]) / det;
            let v = (-a.coeffs[0] * b.constant + b.coeffs[0] * a.constant) / det;
            if s.satisfied_by(&[u, v]) {
                return true;
            }
        }
    }
    false
}

proptest! {
    #[test]
    fn planar_systems_agree_with_vertex_search(
        rows in proptest::collection::vec((-4i64..=4, -4i64..=4, -8i64..=8), 0..7)
    ) {
        let mut s = LinearSystem::new(vec!["u".into(), "v".into()]);
        for (j, sign) in [(0, 1), (0, -1), (1, 1), (1, -1)] {
            s.add(&[(j, qi(sign))], qi(10), false);
        }
        for (a, b, c) in rows {
            s.add(&[(0, qi(a)), (1, qi(b))], qi(c), false);
        }
        let res = solve(&s);
        prop_assert_eq!(res.feasible(), planar_oracle(&s));
        if let Some(w) = res.witness {
            prop_assert!(s.satisfied_by(&w));
            prop_assert_eq!(res.strict, s.interior_at(&w));
        }
    }

    #[test]
    fn mixed_systems_return_valid_witnesses(
        rows in proptest::collection::vec(
            (proptest::collection::vec(-3i64..=3, 3), -6i64..=6, any::<bool>()), 0..9)
    ) {
        let mut s = LinearSystem::new(vec!["a".into(), "b".into(), "c".into()]);
        for (co, c, strict) in rows {
            let terms: Vec<(usize, Q)> = co.iter().enumerate().map(|(j, &v)| (j, qi(v))).collect();
            s.add(&terms, qi(c), strict);
        }
        if let Some(w) = solve(&s).witness {
            prop_assert!(s.satisfied_by(&w));
        } else {
            for a in -6..=6 {
                for b in -6..=6 {
                    for c in -6..=6 {
                        prop_assert!(!s.satisfied_by(&[q(a, 2), q(b, 2), q(c, 2)]));
                    }
                }
            }
        }
    }
}
