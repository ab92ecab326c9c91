use parahoric::classify::{classify, verify};
use parahoric::concave::{f_eps, is_normal_fn, is_subadditive, iwahori_fn, ConcaveFn};
use parahoric::rational::qi;
use parahoric::sl_model::{
    example_type1_degenerate, example_type2, from_concave_fn, is_normal_in_iwahori,
    is_tropically_concave, iwahori_pattern, random_pattern, random_pattern_near_iwahori,
    root_index, to_concave_fn, PatternError, ValuationPattern,
};
use parahoric::RootSystem;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn eps(i: usize, j: usize) -> i64 {
    i64::from(i > j)
}

#[test]
fn iwahori_pattern_entries() {
    let p = iwahori_pattern(2);
    assert_eq!((p.entry(0, 1), p.entry(1, 0)), (0, 1));
    let p = iwahori_pattern(4);
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                assert_eq!(p.entry(i, j), eps(i, j));
            }
        }
    }
    let (rs, f) = to_concave_fn(&p);
    assert_eq!(f, iwahori_fn(&rs));
}

#[test]
fn worked_example_patterns_are_normal() {
    for p in [example_type1_degenerate(), example_type2()] {
        assert!(is_normal_in_iwahori(&p));
        let (rs, f) = to_concave_fn(&p);
        assert!(is_normal_fn(&rs, &f));
    }
    let (rs, f) = to_concave_fn(&example_type2());
    let e = f_eps(&rs, &f).unwrap();
    assert_eq!((e[rs.neg(0)], e[2]), (0, 2));
}

#[test]
fn single_triple_violation() {
    let mut m: Vec<Vec<i64>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| if i == j { 0 } else { eps(i, j) + 1 })
                .collect()
        })
        .collect();
    m[0][2] = 2;
    m[1][2] = 1;
    let p = ValuationPattern::new(m, vec![1; 3]).unwrap();
    assert!(!is_normal_in_iwahori(&p));
    let (rs, f) = to_concave_fn(&p);
    assert!(!is_normal_fn(&rs, &f));
}

#[test]
fn invalid_patterns_are_rejected() {
    let m = vec![vec![0, 0], vec![0, 0]];
    assert!(matches!(
        ValuationPattern::new(m, vec![1, 1]),
        Err(PatternError::NotProNilpotent { .. })
    ));
    let m = vec![vec![0, 0, 3], vec![1, 0, 0], vec![1, 1, 0]];
    assert!(matches!(
        ValuationPattern::new(m, vec![1; 3]),
        Err(PatternError::NotConcave { .. })
    ));
    let b2 = RootSystem::new("B2".parse().unwrap());
    assert_eq!(
        from_concave_fn(&b2, &iwahori_fn(&b2), vec![1; 3]),
        Err(PatternError::WrongRootSystem)
    );
}

fn equivalence_holds(p: &ValuationPattern) -> bool {
    let (rs, f) = to_concave_fn(p);
    is_normal_in_iwahori(p) == is_normal_fn(&rs, &f)
}

#[test]
fn exhaustive_equivalence_on_small_windows() {
    for (n, width) in [(3usize, 3i64), (4, 2)] {
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let total = width.pow(cells.len() as u32);
        let (mut valid, mut normal) = (0, 0);
        for code in 0..total {
            let mut m = vec![vec![0i64; n]; n];
            let mut c = code;
            for &(i, j) in &cells {
                m[i][j] = eps(i, j) + c % width;
                c /= width;
            }
            let Ok(p) = ValuationPattern::new(m, vec![1; n]) else {
                continue;
            };
            valid += 1;
            assert!(equivalence_holds(&p), "{p}");
            normal += usize::from(is_normal_in_iwahori(&p));
        }
        assert!(valid > 0 && normal > 0 && normal < valid);
    }
}

#[test]
fn seeded_random_patterns_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 3..=5 {
        let mut verdicts = [0usize; 2];
        for _ in 0..300 {
            let p = random_pattern(n, 4, &mut rng);
            assert!(equivalence_holds(&p), "{p}");
            let q = random_pattern_near_iwahori(n, &mut rng);
            assert!(equivalence_holds(&q), "{q}");
            verdicts[usize::from(is_normal_in_iwahori(&q))] += 1;
        }
        assert!(verdicts[0] > 0 && verdicts[1] > 0, "n={n}: {verdicts:?}");
    }
}

#[test]
fn normal_patterns_classify() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = 0;
    for n in 3..=4 {
        for _ in 0..200 {
            let p = random_pattern_near_iwahori(n, &mut rng);
            if !is_normal_in_iwahori(&p) {
                continue;
            }
            seen += 1;
            let (rs, f) = to_concave_fn(&p);
            let cert = classify(&rs, &f).unwrap();
            assert!(verify(&rs, &f, &cert.classification), "{p}");
        }
    }
    assert!(seen > 0);
}

fn raw_fn(m: &[Vec<i64>]) -> (RootSystem, ConcaveFn) {
    let n = m.len();
    let rs = RootSystem::new(format!("A{}", n - 1).parse().unwrap());
    let mut vals = vec![qi(0); rs.len()];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                vals[root_index(&rs, i, j)] = qi(m[i][j]);
            }
        }
    }
    (rs, ConcaveFn::new(vals))
}

proptest! {
    #[test]
    fn tropical_concavity_is_subadditivity(
        n in 3usize..=5,
        entries in proptest::collection::vec(-2i64..=4, 25),
    ) {
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0 } else { entries[i * 5 + j] }).collect())
            .collect();
        let (rs, f) = raw_fn(&m);
        prop_assert_eq!(is_tropically_concave(&m), is_subadditive(&rs, &f));
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_pattern_near_iwahori(n, &mut rng);
        let back: ValuationPattern = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let (rs, f) = to_concave_fn(&p);
        prop_assert_eq!(from_concave_fn(&rs, &f, p.depths().to_vec()).unwrap(), p);
    }
}
