use parahoric::rational::qi;
use parahoric::rootsys::{irreducible_types_up_to, AffineRoot, RootSum};
use parahoric::{RootSystem, RootSystemType, Q};
use proptest::prelude::*;

fn rs(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap())
}

fn all_small() -> Vec<RootSystem> {
    let mut v: Vec<RootSystem> = irreducible_types_up_to(4)
        .into_iter()
        .map(RootSystem::new)
        .collect();
    v.extend(["BC1", "BC2", "BC3"].map(rs));
    v
}

#[test]
fn classical_data() {
    let a2 = rs("A2");
    assert_eq!((a2.len(), a2.coxeter_number()), (6, 3));
    let g2 = rs("G2");
    assert_eq!((g2.len(), g2.coxeter_number()), (12, 6));
    let bc2 = rs("BC2");
    assert_eq!((bc2.len(), bc2.coxeter_number()), (12, 5));
    let mut coords: Vec<Vec<Q>> = bc2.roots().map(|a| bc2.coords(a).to_vec()).collect();
    coords.sort();
    let mut expected = Vec::new();
    for (x, y) in [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (1, -1)] {
        expected.push(vec![qi(x), qi(y)]);
        expected.push(vec![qi(-x), qi(-y)]);
    }
    expected.sort();
    assert_eq!(coords, expected);
}

#[test]
fn decompositions_in_a2() {
    let r = rs("A2");
    let top = r.highest_root();
    assert_eq!(r.decomposition(top), [1, 1, 0]);
    assert_eq!(r.decomposition(r.neg(0)), [0, 1, 1]);
    assert_eq!(r.decomposition(0), [1, 0, 0]);
    assert_eq!(r.height(top), 2);
    assert_eq!(r.height(r.neg(0)), 2);
    assert_eq!(r.height(0), 1);
    let g2 = rs("G2");
    assert_eq!(g2.height(g2.neg(g2.highest_root())), 1);
}

#[test]
fn decomposition_reassembles_the_root() {
    for r in all_small() {
        let basis = r.extended_basis().to_vec();
        let n = r.rank();
        for a in r.roots() {
            let d = r.decomposition(a);
            assert!(d.iter().all(|&c| c >= 0), "{} {}", r.ty(), r.label(a));
            let mut sum = vec![0i64; n];
            for (&g, &k) in basis.iter().zip(&d) {
                for (s, &c) in sum.iter_mut().zip(r.coeffs(g)) {
                    *s += k * c as i64;
                }
            }
            let want: Vec<i64> = r.coeffs(a).iter().map(|&c| c as i64).collect();
            assert_eq!(sum, want, "{} {}", r.ty(), r.label(a));
            assert_eq!(d.iter().sum::<i64>(), r.height(a));
        }
    }
}

#[test]
fn height_identities() {
    for r in all_small() {
        let h = r.coxeter_number();
        for a in r.roots() {
            let ha = r.height(a);
            assert!((1..h).contains(&ha), "{} {}", r.ty(), r.label(a));
            assert_eq!(r.height(r.neg(a)), h - ha, "{} {}", r.ty(), r.label(a));
        }
    }
}

#[test]
fn order_examples() {
    let r = rs("A2");
    let top = r.highest_root();
    assert!(r.leq(0, top));
    assert!(!r.leq(r.neg(top), 0));
    assert!(r.roots().all(|a| r.leq(a, a)));
    assert_eq!(r.chain_between(0, top), Some(vec![1]));
    assert_eq!(r.chain_between(0, 0), Some(vec![]));
    assert_eq!(r.chain_between(0, 1), None);
}

#[test]
fn order_matches_chain_criterion() {
    for r in all_small() {
        for a in r.roots() {
            for b in r.roots() {
                let chain = r.chain_between(a, b);
                assert_eq!(
                    r.leq(a, b),
                    chain.is_some(),
                    "{} {} {}",
                    r.ty(),
                    r.label(a),
                    r.label(b)
                );
                if let Some(steps) = chain {
                    let mut cur = a;
                    for g in steps {
                        assert!(r.is_extended_basis(g));
                        cur = r.add(cur, g).expect("partial sums are roots");
                    }
                    assert_eq!(cur, b);
                }
            }
        }
    }
}

#[test]
fn extremes_of_the_order() {
    for r in all_small() {
        let minimal: Vec<usize> = r
            .roots()
            .filter(|&a| r.roots().all(|b| !r.lt(b, a)))
            .collect();
        let mut ext = r.extended_basis().to_vec();
        ext.sort();
        assert_eq!(minimal, ext, "{}", r.ty());
        let maximal: Vec<usize> = r
            .roots()
            .filter(|&a| r.roots().all(|b| !r.lt(a, b)))
            .collect();
        let mut neg: Vec<usize> = ext.iter().map(|&g| r.neg(g)).collect();
        neg.sort();
        assert_eq!(maximal, neg, "{}", r.ty());
    }
}

#[test]
fn order_reverses_under_negation() {
    for r in all_small() {
        for a in r.roots() {
            for b in r.roots() {
                assert_eq!(r.leq(a, b), r.leq(r.neg(b), r.neg(a)));
            }
        }
    }
}

#[test]
fn sums_and_heights_agree_modulo_h() {
    for r in all_small() {
        let h = r.coxeter_number();
        for a in r.roots() {
            for b in r.roots() {
                match r.sum(a, b) {
                    RootSum::Root(c) => {
                        assert_eq!((r.height(a) + r.height(b) - r.height(c)).rem_euclid(h), 0)
                    }
                    RootSum::Zero => assert_eq!(b, r.neg(a)),
                    RootSum::None => {}
                }
            }
        }
    }
}

#[test]
fn linear_extension_respects_order() {
    for r in all_small() {
        let order = r.linear_extension();
        let mut pos = vec![0; r.len()];
        for (k, &a) in order.iter().enumerate() {
            pos[a] = k;
        }
        for a in r.roots() {
            for b in r.roots() {
                if r.lt(a, b) {
                    assert!(pos[a] < pos[b]);
                }
            }
        }
    }
}

fn aff(root: Option<usize>, level: i64) -> AffineRoot {
    AffineRoot { root, level }
}

fn affine_total(r: &RootSystem, fam: &[AffineRoot]) -> Vec<i64> {
    let mut s = vec![0; r.rank() + 1];
    for x in fam {
        for (t, v) in s.iter_mut().zip(r.affine_coeffs_at(x.root, x.level)) {
            *t += v;
        }
    }
    s
}

#[test]
fn infsum_examples() {
    let r = rs("A2");
    let top = r.highest_root();
    let fam = [aff(Some(0), 0), aff(Some(1), 0)];
    let same = r.infsum_adjust(&fam, aff(Some(top), 0)).unwrap();
    assert_eq!(same, fam);
    let single = [aff(Some(top), 0)];
    assert_eq!(r.infsum_adjust(&single, aff(Some(top), 0)).unwrap(), single);

    let up = r.infsum_adjust(&fam, aff(None, 1)).unwrap();
    assert_eq!(affine_total(&r, &up), r.affine_coeffs_at(None, 1));
    for (orig, new) in fam.iter().zip(&up) {
        assert!(r.is_positive_affine(*new));
        let lo = r.affine_coeffs_at(orig.root, orig.level);
        let hi = r.affine_coeffs_at(None, orig.level + 1);
        let v = r.affine_coeffs_at(new.root, new.level);
        assert!(lo.iter().zip(&v).all(|(a, b)| a <= b));
        assert!(v.iter().zip(&hi).all(|(a, b)| a <= b));
    }
}

#[test]
fn infsum_rejects_bad_targets() {
    let r = rs("A2");
    let fam = [aff(Some(0), 0), aff(Some(1), 0)];
    assert!(r.infsum_adjust(&fam, aff(Some(0), 0)).is_err());
    assert!(r.infsum_adjust(&fam, aff(None, 3)).is_err());
    assert!(r.infsum_adjust(&[], aff(None, 1)).is_err());
}

/// Every pair of positive affine roots at levels 0 and 1 in A2 and B2 whose sum
/// is a root can be adjusted to every target between the sum and the next level.
#[test]
fn infsum_succeeds_on_all_admissible_small_families() {
    for t in ["A2", "B2"] {
        let r = rs(t);
        let mut members = Vec::new();
        for a in r.roots() {
            for level in 0..=1 {
                let x = aff(Some(a), level);
                if r.is_positive_affine(x) {
                    members.push(x);
                }
            }
        }
        let leq = |x: &[i64], y: &[i64]| x.iter().zip(y).all(|(a, b)| a <= b);
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i..] {
                let fam = [x, y];
                let Some(sum) = r.decode_affine(&affine_total(&r, &fam)) else {
                    continue;
                };
                let Some(alpha) = sum.root else { continue };
                let c = sum.level - r.epsilon(alpha);
                let s = r.affine_coeffs_at(sum.root, sum.level);
                let top = r.affine_coeffs_at(None, c + 1);
                let targets = r
                    .roots()
                    .flat_map(|b| {
                        [
                            aff(Some(b), c + r.epsilon(b)),
                            aff(Some(b), c + 1 + r.epsilon(b)),
                        ]
                    })
                    .chain([aff(None, c + 1)]);
                for target in targets {
                    let tv = r.affine_coeffs_at(target.root, target.level);
                    if !(leq(&s, &tv) && leq(&tv, &top)) {
                        continue;
                    }
                    let got = r
                        .infsum_adjust(&fam, target)
                        .unwrap_or_else(|e| panic!("{t}: {fam:?} -> {target:?}: {e}"));
                    assert_eq!(affine_total(&r, &got), tv);
                    assert!(got.iter().all(|&g| r.is_positive_affine(g)));
                }
            }
        }
    }
}

#[test]
fn type_labels_round_trip() {
    for t in irreducible_types_up_to(8) {
        let s = t.to_string();
        assert_eq!(s.parse::<RootSystemType>().unwrap(), t);
    }
}

proptest! {
    #[test]
    fn pairing_is_linear(idx in 0usize..4, a in 0usize..24, b in 0usize..24,
                         xs in proptest::collection::vec(-6i64..6, 4)) {
        let t = ["A3", "B3", "C3", "D4"][idx];
        let r = rs(t);
        let (a, b) = (a % r.len(), b % r.len());
        let x: Vec<Q> = xs[..r.rank()].iter().map(|&v| Q::new(v, 4)).collect();
        prop_assert_eq!(r.pairing(r.neg(a), &x), -r.pairing(a, &x));
        if let Some(c) = r.add(a, b) {
            prop_assert_eq!(r.pairing(c, &x), r.pairing(a, &x) + r.pairing(b, &x));
        }
    }
}
