//! Canonical forms under relabelings that fix zero and one.
//!
//! A structure is encoded as its complement vector, then the sum table row
//! by row (`UNDEF` for unsummable pairs), then the product table if present.
//! The canonical form is the lexicographically least encoding over all
//! admissible relabelings.

use emkit_core::FiniteStructure;

pub(crate) const UNDEF: u8 = u8::MAX;

/// `perm[old] = new`.
pub(crate) type Perm = Vec<usize>;

/// All permutations of `0..n` fixing `zero` and `one` and commuting with the
/// complement, built position by position so that non-commuting prefixes are
/// abandoned early.
pub(crate) fn complement_centralizer(s: &FiniteStructure) -> Vec<Perm> {
    let n = s.size;
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    perm[s.zero] = s.zero;
    used[s.zero] = true;
    perm[s.one] = s.one;
    used[s.one] = true;
    extend(s, 0, &mut perm, &mut used, &mut out);
    out
}

fn extend(s: &FiniteStructure, i: usize, perm: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
    let n = s.size;
    if i == n {
        out.push(perm.clone());
        return;
    }
    if perm[i] != usize::MAX {
        extend(s, i + 1, perm, used, out);
        return;
    }
    let ci = s.complement[i];
    for v in 0..n {
        if used[v] {
            continue;
        }
        perm[i] = v;
        used[v] = true;
        // π(c(i)) = c(π(i))
        if perm[ci] == usize::MAX || perm[ci] == s.complement[v] {
            extend(s, i + 1, perm, used, out);
        }
        perm[i] = usize::MAX;
        used[v] = false;
    }
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    inv
}

/// The encoding of `s`.
pub(crate) fn encode(s: &FiniteStructure) -> Vec<u8> {
    let id: Perm = (0..s.size).collect();
    encode_permuted(s, &id, &id)
}

fn encode_permuted(s: &FiniteStructure, perm: &[usize], inv: &[usize]) -> Vec<u8> {
    let mut out = Vec::new();
    each_code(s, perm, inv, |v| {
        out.push(v);
        true
    });
    out
}

/// Streams the encoding of the relabeled structure into `f` until it
/// returns false.
fn each_code(s: &FiniteStructure, perm: &[usize], inv: &[usize], mut f: impl FnMut(u8) -> bool) {
    let n = s.size;
    for i in 0..n {
        if !f(perm[s.complement[inv[i]]] as u8) {
            return;
        }
    }
    for i in 0..n {
        for j in 0..n {
            let v = s.sum[inv[i]][inv[j]].map_or(UNDEF, |v| perm[v] as u8);
            if !f(v) {
                return;
            }
        }
    }
    if let Some(p) = &s.product {
        for i in 0..n {
            for j in 0..n {
                if !f(perm[p[inv[i]][inv[j]]] as u8) {
                    return;
                }
            }
        }
    }
}

/// Compares the relabeled encoding against `best`, stopping at the first
/// difference.
fn cmp_permuted(s: &FiniteStructure, perm: &[usize], inv: &[usize], best: &[u8]) -> std::cmp::Ordering {
    let mut k = 0;
    let mut ord = std::cmp::Ordering::Equal;
    each_code(s, perm, inv, |v| {
        ord = v.cmp(&best[k]);
        k += 1;
        ord == std::cmp::Ordering::Equal
    });
    ord
}

/// The least encoding of `s` over `perms`, with the relabeling attaining it.
pub(crate) fn canonical_over(s: &FiniteStructure, perms: &[Perm]) -> (Vec<u8>, Perm) {
    let mut best = encode(s);
    let mut arg: Perm = (0..s.size).collect();
    for p in perms {
        let inv = inverse(p);
        if cmp_permuted(s, p, &inv, &best) == std::cmp::Ordering::Less {
            best = encode_permuted(s, p, &inv);
            arg = p.clone();
        }
    }
    (best, arg)
}

/// Relabelings that fix zero and one and map `s` onto itself, ignoring the
/// product.
pub(crate) fn algebra_automorphisms(s: &FiniteStructure) -> Vec<Perm> {
    let bare = FiniteStructure { product: None, ..s.clone() };
    let own = encode(&bare);
    complement_centralizer(&bare)
        .into_iter()
        .filter(|p| cmp_permuted(&bare, p, &inverse(p), &own) == std::cmp::Ordering::Equal)
        .collect()
}

/// Whether some bijection of the carriers maps `a` onto `b`, tables included.
pub fn isomorphic(a: &FiniteStructure, b: &FiniteStructure) -> bool {
    if a.size != b.size || a.product.is_some() != b.product.is_some() {
        return false;
    }
    let n = a.size;
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    iso_extend(a, b, 0, &mut perm, &mut used)
}

/// Checks the cells between `i` and earlier elements, whose images are known.
fn iso_consistent(a: &FiniteStructure, b: &FiniteStructure, perm: &[usize], i: usize) -> bool {
    let known = |x: usize| perm[x] != usize::MAX;
    if known(a.zero) && perm[a.zero] != b.zero || known(a.one) && perm[a.one] != b.one {
        return false;
    }
    if known(a.complement[i]) && perm[a.complement[i]] != b.complement[perm[i]] {
        return false;
    }
    for j in 0..=i {
        for (x, y) in [(i, j), (j, i)] {
            match a.sum[x][y] {
                Some(v) if known(v) => {
                    if b.sum[perm[x]][perm[y]] != Some(perm[v]) {
                        return false;
                    }
                }
                Some(_) => {
                    if b.sum[perm[x]][perm[y]].is_none() {
                        return false;
                    }
                }
                None => {
                    if b.sum[perm[x]][perm[y]].is_some() {
                        return false;
                    }
                }
            }
            if let (Some(pa), Some(pb)) = (&a.product, &b.product) {
                let v = pa[x][y];
                if known(v) && pb[perm[x]][perm[y]] != perm[v] {
                    return false;
                }
            }
        }
    }
    true
}

fn iso_extend(a: &FiniteStructure, b: &FiniteStructure, i: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
    let n = a.size;
    if i == n {
        return a.permuted(perm) == *b;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        perm[i] = v;
        used[v] = true;
        if iso_consistent(a, b, perm, i) && iso_extend(a, b, i + 1, perm, used) {
            return true;
        }
        perm[i] = usize::MAX;
        used[v] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centralizer_of_the_boolean_square() {
        let s = FiniteStructure::boolean(2);
        // atoms 1 and 2 are swapped by complement: identity and the swap
        assert_eq!(complement_centralizer(&s).len(), 2);
        assert_eq!(algebra_automorphisms(&s).len(), 2);
        let b3 = FiniteStructure::boolean(3);
        assert_eq!(algebra_automorphisms(&b3).len(), 6);
    }

    #[test]
    fn relabeled_copies_share_a_canonical_form() {
        let s = FiniteStructure::boolean(3);
        let perms = complement_centralizer(&s);
        let (c, _) = canonical_over(&s, &perms);
        for p in perms.iter().take(30) {
            let t = s.permuted(p);
            assert_eq!(canonical_over(&t, &perms).0, c);
            assert!(isomorphic(&s, &t));
        }
    }

    #[test]
    fn chains_of_different_shape_are_not_isomorphic() {
        let a = FiniteStructure::chain(4);
        let b = FiniteStructure {
            product: None,
            ..FiniteStructure::boolean(2)
        };
        assert!(!isomorphic(&a, &b));
        assert!(isomorphic(&a, &a.permuted(&[0, 2, 1, 3])));
        assert!(isomorphic(&b, &b.permuted(&[0, 2, 1, 3])));
    }
}
