//! Backtracking search for effect algebras on `{0, …, n-1}` with zero `0`
//! and one `n-1`.
//!
//! Each sum-table cell holds a domain: a bitmask of candidate values, with
//! [`UNDEF_BIT`] standing for "not summable". Assignments are propagated to a
//! fixpoint with these rules:
//!
//! - symmetry of the table;
//! - `a ⊎ b = c` iff `a ⊎ c⊥ = b⊥`;
//! - cancellation: a value occurs at most once per row;
//! - associativity, in both directions, including definedness.

use emkit_core::FiniteStructure;

pub(crate) const UNDEF_BIT: u32 = 1 << 31;

fn single(d: u32) -> Option<u32> {
    (d.count_ones() == 1).then(|| d.trailing_zeros())
}

struct Conflict;

#[derive(Debug, Clone)]
pub(crate) struct SumNode {
    n: usize,
    comp: Vec<usize>,
    dom: Vec<u32>,
}

impl SumNode {
    /// The root for a fixed complement involution, already propagated.
    pub(crate) fn root(comp: &[usize]) -> Option<SumNode> {
        let n = comp.len();
        let top = n - 1;
        let middle: u32 = (1..top).fold(0, |m, v| m | 1 << v);
        let mut dom = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                dom[a * n + b] = if a == 0 {
                    1 << b
                } else if b == 0 {
                    1 << a
                } else if a == top || b == top {
                    UNDEF_BIT
                } else if b == comp[a] {
                    1 << top
                } else {
                    (middle & !(1 << a) & !(1 << b)) | UNDEF_BIT
                };
            }
        }
        let mut node = SumNode { n, comp: comp.to_vec(), dom };
        node.propagate().ok()?;
        Some(node)
    }

    fn get(&self, a: usize, b: usize) -> u32 {
        self.dom[a * self.n + b]
    }

    fn restrict(&mut self, a: usize, b: usize, mask: u32) -> Result<bool, Conflict> {
        let n = self.n;
        let old = self.dom[a * n + b];
        let new = old & mask & self.dom[b * n + a];
        if new == 0 {
            return Err(Conflict);
        }
        self.dom[a * n + b] = new;
        self.dom[b * n + a] = new;
        Ok(new != old)
    }

    fn propagate(&mut self) -> Result<(), Conflict> {
        let n = self.n;
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..n {
                for b in 0..n {
                    changed |= self.cell_rules(a, b)?;
                }
            }
        }
        Ok(())
    }

    fn cell_rules(&mut self, a: usize, b: usize) -> Result<bool, Conflict> {
        let n = self.n;
        let mut changed = false;
        let d = self.get(a, b);
        for c in 0..n {
            if d & 1 << c == 0 {
                let (x, v) = (self.comp[c], self.comp[b]);
                changed |= self.restrict(a, x, !(1u32 << v))?;
            }
        }
        let d = self.get(a, b);
        if d == UNDEF_BIT {
            for x in 0..n {
                if let Some(bx) = single(self.get(b, x)).filter(|&v| v < 31) {
                    changed |= self.restrict(a, bx as usize, UNDEF_BIT)?;
                }
            }
            return Ok(changed);
        }
        let Some(c) = single(d) else {
            return Ok(changed);
        };
        let c = c as usize;
        for x in 0..n {
            if x != b {
                changed |= self.restrict(a, x, !(1u32 << c))?;
            }
            let bx = self.get(b, x);
            if bx == UNDEF_BIT {
                changed |= self.restrict(c, x, UNDEF_BIT)?;
            } else if let Some(e) = single(bx) {
                let e = e as usize;
                let both = self.get(c, x) & self.get(a, e);
                changed |= self.restrict(c, x, both)?;
                changed |= self.restrict(a, e, both)?;
            }
        }
        Ok(changed)
    }

    /// The first undetermined cell of the upper triangle, row by row.
    pub(crate) fn first_open(&self) -> Option<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.get(a, b).count_ones() > 1)
    }

    /// The children obtained by fixing cell `(a, b)` to each candidate.
    pub(crate) fn branch(&self, a: usize, b: usize) -> Vec<SumNode> {
        let d = self.get(a, b);
        (0..32)
            .filter(|bit| d & 1 << bit != 0)
            .filter_map(|bit| {
                let mut child = self.clone();
                child.restrict(a, b, 1 << bit).ok()?;
                child.propagate().ok()?;
                Some(child)
            })
            .collect()
    }

    pub(crate) fn to_structure(&self) -> FiniteStructure {
        let n = self.n;
        let sum = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let d = self.get(a, b);
                        (d != UNDEF_BIT).then(|| d.trailing_zeros() as usize)
                    })
                    .collect()
            })
            .collect();
        FiniteStructure {
            size: n,
            zero: 0,
            one: n - 1,
            complement: self.comp.clone(),
            sum,
            product: None,
        }
    }
}

/// One complement involution per conjugacy class: the first `f` middle
/// elements are fixed, the rest are swapped in adjacent pairs. This is the
/// lexicographically least complement vector of its class.
pub(crate) fn complement_shapes(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let top = n - 1;
    let m = n - 2;
    let mut out = Vec::new();
    for fixed in (0..=m).rev().filter(|f| (m - f).is_multiple_of(2)) {
        let mut comp = vec![0; n];
        comp[0] = top;
        comp[top] = 0;
        for (i, c) in comp.iter_mut().enumerate().take(fixed + 1).skip(1) {
            *c = i;
        }
        let mut i = fixed + 1;
        while i < top {
            comp[i] = i + 1;
            comp[i + 1] = i;
            i += 2;
        }
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(complement_shapes(2), vec![vec![1, 0]]);
        assert_eq!(complement_shapes(4), vec![vec![3, 1, 2, 0], vec![3, 2, 1, 0]]);
        assert_eq!(complement_shapes(8).len(), 4);
    }

    #[test]
    fn two_elements_are_forced() {
        let root = SumNode::root(&[1, 0]).unwrap();
        assert!(root.first_open().is_none());
        let s = root.to_structure();
        assert_eq!(s.sum, vec![vec![Some(0), Some(1)], vec![Some(1), None]]);
    }

    #[test]
    fn the_three_chain_is_forced() {
        let root = SumNode::root(&[2, 1, 0]).unwrap();
        assert!(root.first_open().is_none());
        assert_eq!(root.to_structure(), FiniteStructure::chain(3));
    }
}
