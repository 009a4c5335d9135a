//! Generate-and-filter oracle for small sizes.
//!
//! Every sum table on `{0, …, n-1}` with zero `0` and one `n-1` is generated
//! and kept when it satisfies a direct transcription of the axioms; products
//! are generated with only the unit row and column fixed. Survivors are
//! bucketed by brute-force isomorphism over all `n!` bijections.

use emkit_core::FiniteStructure;

pub const NAIVE_MAX: usize = 4;

fn sum_of(s: &FiniteStructure, a: usize, b: usize) -> Option<usize> {
    s.sum[a][b]
}

pub fn is_effect_algebra(s: &FiniteStructure) -> bool {
    let n = s.size;
    for a in 0..n {
        if sum_of(s, s.zero, a) != Some(a) {
            return false;
        }
        let complements: Vec<usize> = (0..n).filter(|&x| sum_of(s, a, x) == Some(s.one)).collect();
        if complements != [s.complement[a]] {
            return false;
        }
        if sum_of(s, a, s.one).is_some() && a != s.zero {
            return false;
        }
        for b in 0..n {
            if sum_of(s, a, b) != sum_of(s, b, a) {
                return false;
            }
            for c in 0..n {
                let left = sum_of(s, a, b).and_then(|ab| sum_of(s, ab, c));
                let right = sum_of(s, b, c).and_then(|bc| sum_of(s, a, bc));
                if left != right {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_effect_monoid(s: &FiniteStructure) -> bool {
    let Some(p) = &s.product else { return false };
    if !is_effect_algebra(s) {
        return false;
    }
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
                if let Some(d) = sum_of(s, b, c) {
                    if sum_of(s, p[a][b], p[a][c]) != Some(p[a][d]) {
                        return false;
                    }
                    if sum_of(s, p[b][a], p[c][a]) != Some(p[d][a]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn bucket(all: Vec<FiniteStructure>) -> Vec<FiniteStructure> {
    let perms = permutations(all.first().map_or(0, |s| s.size));
    let mut classes: Vec<FiniteStructure> = Vec::new();
    for s in all {
        if !classes.iter().any(|c| perms.iter().any(|p| s.permuted(p) == *c)) {
            classes.push(s);
        }
    }
    classes
}

/// Every labelled `n`-element effect algebra with zero `0` and one `n-1`.
pub fn labelled_effect_algebras(n: usize) -> Vec<FiniteStructure> {
    assert!((1..=NAIVE_MAX).contains(&n), "naive oracle covers sizes 1..={NAIVE_MAX}");
    if n == 1 {
        let s = FiniteStructure {
            size: 1,
            zero: 0,
            one: 0,
            complement: vec![0],
            sum: vec![vec![Some(0)]],
            product: None,
        };
        return if is_effect_algebra(&s) { vec![s] } else { vec![] };
    }
    let one = n - 1;
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let choices = n + 1;
    let mut out = Vec::new();
    let total = choices.pow(cells.len() as u32);
    for code in 0..total {
        let mut sum = vec![vec![None; n]; n];
        for x in 0..n {
            sum[0][x] = Some(x);
            sum[x][0] = Some(x);
        }
        let mut c = code;
        for &(a, b) in &cells {
            let v = c % choices;
            c /= choices;
            let v = (v < n).then_some(v);
            sum[a][b] = v;
            sum[b][a] = v;
        }
        let complement: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&x| sum[a][x] == Some(one)).unwrap_or(a))
            .collect();
        let s = FiniteStructure {
            size: n,
            zero: 0,
            one,
            complement,
            sum,
            product: None,
        };
        if is_effect_algebra(&s) {
            out.push(s);
        }
    }
    out
}

/// Effect algebras of size `n`, one per isomorphism class.
pub fn effect_algebras(n: usize) -> Vec<FiniteStructure> {
    bucket(labelled_effect_algebras(n))
}

/// Effect monoids of size `n`, one per isomorphism class.
pub fn effect_monoids(n: usize) -> Vec<FiniteStructure> {
    let mut all = Vec::new();
    for ea in labelled_effect_algebras(n) {
        let free: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != ea.one && b != ea.one)
            .collect();
        for code in 0..n.pow(free.len() as u32) {
            let mut p: Vec<Vec<usize>> = (0..n)
                .map(|a| (0..n).map(|b| if a == ea.one { b } else { a }).collect())
                .collect();
            let mut c = code;
            for &(a, b) in &free {
                p[a][b] = c % n;
                c /= n;
            }
            let s = FiniteStructure {
                product: Some(p),
                ..ea.clone()
            };
            if is_effect_monoid(&s) {
                all.push(s);
            }
        }
    }
    bucket(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcribed_axioms_accept_known_structures() {
        assert!(is_effect_monoid(&FiniteStructure::boolean(2)));
        assert!(is_effect_algebra(&FiniteStructure::chain(5)));
        let mut broken = FiniteStructure::chain(3);
        broken.sum[1][1] = None;
        assert!(!is_effect_algebra(&broken));
    }

    #[test]
    fn oracle_counts() {
        let ea: Vec<usize> = (1..=4).map(|n| effect_algebras(n).len()).collect();
        assert_eq!(ea, vec![1, 1, 1, 3]);
        let em: Vec<usize> = (1..=4).map(|n| effect_monoids(n).len()).collect();
        assert_eq!(em, vec![1, 1, 0, 1]);
    }
}
