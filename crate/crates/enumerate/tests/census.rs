use emkit_core::{check_effect_algebra, check_effect_monoid, CheckMode, FiniteAlgebra, FiniteMonoid, FiniteStructure};
use emkit_enumerate::{
    enumerate_effect_algebras, enumerate_effect_algebras_with, extend_to_monoids, isomorphic, naive, run_census,
    Config,
};

#[test]
fn counts_match_the_naive_oracle() {
    for n in 1..=naive::NAIVE_MAX {
        let fast = enumerate_effect_algebras(n).unwrap();
        let slow = naive::effect_algebras(n);
        assert_eq!(fast.len(), slow.len(), "effect algebras of size {n}");
        for s in &slow {
            assert_eq!(fast.iter().filter(|f| isomorphic(f, s)).count(), 1);
        }
        let monoids: Vec<FiniteStructure> = fast.iter().flat_map(extend_to_monoids).collect();
        let slow_monoids = naive::effect_monoids(n);
        assert_eq!(monoids.len(), slow_monoids.len(), "effect monoids of size {n}");
        for s in &slow_monoids {
            assert_eq!(monoids.iter().filter(|f| isomorphic(f, s)).count(), 1);
        }
    }
}

#[test]
fn emitted_structures_pass_the_exhaustive_checks() {
    let r = run_census(7).unwrap();
    for c in &r.sizes {
        for s in &c.algebras {
            assert!(naive::is_effect_algebra(s));
            let m = FiniteAlgebra::new(s.clone()).unwrap();
            assert!(check_effect_algebra(&m, CheckMode::Exhaustive).unwrap().passed);
        }
        for s in &c.monoids {
            assert!(naive::is_effect_monoid(s));
            let m = FiniteMonoid::new(s.clone()).unwrap();
            assert!(check_effect_monoid(&m, CheckMode::Exhaustive).unwrap().passed);
        }
    }
}

#[test]
fn representatives_are_pairwise_non_isomorphic() {
    for n in 1..=6 {
        let all = enumerate_effect_algebras(n).unwrap();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(!isomorphic(a, b), "size {n}");
            }
        }
    }
}

#[test]
fn algebra_counts_are_stable() {
    let counts: Vec<usize> = (1..=8).map(|n| enumerate_effect_algebras(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 1, 3, 4, 10, 14, 40]);
}

#[test]
fn monoid_census() {
    let r = run_census(8).unwrap();
    assert_eq!(r.monoid_counts(), vec![1, 1, 0, 1, 0, 0, 0, 1]);
    assert!(r.anomalies().is_empty());
    for c in &r.sizes {
        for (s, f) in c.monoids.iter().zip(&c.facts) {
            assert!(f.commutative && f.all_idempotent);
            assert_eq!(f.zero_divisor_free, s.size <= 2, "size {}", s.size);
            let k = s.size.trailing_zeros();
            assert!(isomorphic(s, &FiniteStructure::boolean(k)));
        }
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let one = enumerate_effect_algebras_with(7, &Config { jobs: Some(1), ..Config::default() }).unwrap();
    let many = enumerate_effect_algebras_with(7, &Config { jobs: Some(4), ..Config::default() }).unwrap();
    assert_eq!(one, many);
}

#[test]
fn product_extension_examples() {
    let boolean4 = FiniteStructure { product: None, ..FiniteStructure::boolean(2) };
    let ms = extend_to_monoids(&boolean4);
    assert_eq!(ms.len(), 1);
    let p = ms[0].product.as_ref().unwrap();
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(p[a][b], a & b);
        }
    }
    assert!(extend_to_monoids(&FiniteStructure::chain(3)).is_empty());
    for n in [4, 5, 8] {
        assert!(extend_to_monoids(&FiniteStructure::chain(n)).is_empty(), "chain {n}");
    }
    assert_eq!(extend_to_monoids(&FiniteStructure::chain(2)).len(), 1);
}
