//! Every product table on the three-element chain, checked two ways.

use emkit_core::{check_effect_algebra, check_effect_monoid, CheckMode, FiniteAlgebra, FiniteMonoid, FiniteStructure};

/// Direct transcription of the unit, associativity and bi-additivity laws on
/// raw tables, independent of the checker.
fn naive_is_monoid(s: &FiniteStructure, p: &[Vec<usize>]) -> bool {
    let n = s.size;
    for a in 0..n {
        if p[a][s.one] != a || p[s.one][a] != a {
            return false;
        }
        for b in 0..n {
            for c in 0..n {
                if p[p[a][b]][c] != p[a][p[b][c]] {
                    return false;
                }
                if let Some(bc) = s.sum[b][c] {
                    let left = s.sum[p[a][b]][p[a][c]];
                    let right = s.sum[p[b][a]][p[c][a]];
                    if left != Some(p[a][bc]) || right != Some(p[bc][a]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn the_three_chain_carries_no_product() {
    let chain = FiniteStructure::chain(3);
    assert!(check_effect_algebra(&FiniteAlgebra::new(chain.clone()).unwrap(), CheckMode::Exhaustive)
        .unwrap()
        .passed);
    let n = chain.size;
    let cells = n * n;
    let mut naive = 0;
    let mut checked = 0;
    for code in 0..n.pow(cells as u32) {
        let mut c = code;
        let table: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let v = c % n;
                        c /= n;
                        v
                    })
                    .collect()
            })
            .collect();
        naive += naive_is_monoid(&chain, &table) as usize;
        let s = FiniteStructure {
            product: Some(table),
            ..chain.clone()
        };
        let m = FiniteMonoid::new(s).unwrap();
        checked += check_effect_monoid(&m, CheckMode::Exhaustive).unwrap().passed as usize;
    }
    assert_eq!(naive, 0);
    assert_eq!(checked, 0);
}

#[test]
fn the_four_element_boolean_algebra_has_its_meet() {
    let s = FiniteStructure::boolean(2);
    let p = s.product.clone().unwrap();
    assert!(naive_is_monoid(&s, &p));
    let mut altered_passing = 0;
    // every table agreeing with the meet off one cell fails
    for a in 0..4 {
        for b in 0..4 {
            for v in 0..4 {
                if v == p[a][b] {
                    continue;
                }
                let mut q = p.clone();
                q[a][b] = v;
                let m = FiniteMonoid::new(FiniteStructure { product: Some(q.clone()), ..s.clone() }).unwrap();
                let passed = check_effect_monoid(&m, CheckMode::Exhaustive).unwrap().passed;
                assert_eq!(passed, naive_is_monoid(&s, &q));
                altered_passing += passed as usize;
            }
        }
    }
    assert_eq!(altered_passing, 0);
}
