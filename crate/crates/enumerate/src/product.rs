//! Products on a fixed finite effect algebra.
//!
//! Cells start with the candidates below both factors (`a·b ≤ a` and
//! `a·b ≤ b` follow from the unit law and additivity). Atom-by-atom cells are
//! decided first; propagation uses additivity in each argument, the unique
//! differences it implies, and associativity.

use emkit_core::FiniteStructure;

struct Conflict;

fn single(d: u32) -> Option<usize> {
    (d.count_ones() == 1).then(|| d.trailing_zeros() as usize)
}

/// The algebra tables the product search consults.
pub(crate) struct Algebra<'a> {
    s: &'a FiniteStructure,
    /// `diff[e][u]`: the `w` with `u ⊎ w = e`.
    diff: Vec<Vec<Option<usize>>>,
    /// Summable pairs `(b, c, b ⊎ c)`.
    sums: Vec<(usize, usize, usize)>,
    order: Vec<(usize, usize)>,
}

impl<'a> Algebra<'a> {
    pub(crate) fn new(s: &'a FiniteStructure) -> Self {
        let n = s.size;
        let mut diff = vec![vec![None; n]; n];
        let mut sums = Vec::new();
        for u in 0..n {
            for w in 0..n {
                if let Some(e) = s.sum[u][w] {
                    diff[e][u] = Some(w);
                    sums.push((u, w, e));
                }
            }
        }
        let atoms: Vec<usize> = (0..n)
            .filter(|&a| a != s.zero && (0..n).all(|x| x == s.zero || x == a || diff[a][x].is_none()))
            .collect();
        let mut order: Vec<(usize, usize)> = Vec::new();
        for &a in &atoms {
            for &b in &atoms {
                order.push((a, b));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !order.contains(&(a, b)) {
                    order.push((a, b));
                }
            }
        }
        Algebra { s, diff, sums, order }
    }

    fn below(&self, x: usize, y: usize) -> bool {
        self.diff[y][x].is_some()
    }

    pub(crate) fn root(&self) -> Option<ProductNode> {
        let s = self.s;
        let n = s.size;
        let mut dom = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                dom[a * n + b] = if a == s.one {
                    1 << b
                } else if b == s.one {
                    1 << a
                } else {
                    (0..n)
                        .filter(|&v| self.below(v, a) && self.below(v, b))
                        .fold(0, |m, v| m | 1 << v)
                };
            }
        }
        let mut node = ProductNode { n, dom };
        node.propagate(self).ok()?;
        Some(node)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct ProductNode {
    n: usize,
    dom: Vec<u32>,
}

impl ProductNode {
    fn get(&self, a: usize, b: usize) -> u32 {
        self.dom[a * self.n + b]
    }

    fn restrict(&mut self, a: usize, b: usize, mask: u32) -> Result<bool, Conflict> {
        let i = a * self.n + b;
        let old = self.dom[i];
        let new = old & mask;
        if new == 0 {
            return Err(Conflict);
        }
        self.dom[i] = new;
        Ok(new != old)
    }

    /// `x·d = x·b ⊎ x·c`, in either argument.
    fn additive(
        &mut self,
        alg: &Algebra,
        xb: (usize, usize),
        xc: (usize, usize),
        xd: (usize, usize),
    ) -> Result<bool, Conflict> {
        let s = alg.s;
        let mut changed = false;
        let (pb, pc) = (single(self.get(xb.0, xb.1)), single(self.get(xc.0, xc.1)));
        if let (Some(u), Some(w)) = (pb, pc) {
            let e = s.sum[u][w].ok_or(Conflict)?;
            changed |= self.restrict(xd.0, xd.1, 1 << e)?;
        }
        if let (Some(u), Some(e)) = (pb, single(self.get(xd.0, xd.1))) {
            let w = alg.diff[e][u].ok_or(Conflict)?;
            changed |= self.restrict(xc.0, xc.1, 1 << w)?;
        }
        Ok(changed)
    }

    fn propagate(&mut self, alg: &Algebra) -> Result<(), Conflict> {
        let n = self.n;
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                for &(b, c, d) in &alg.sums {
                    changed |= self.additive(alg, (x, b), (x, c), (x, d))?;
                    changed |= self.additive(alg, (b, x), (c, x), (d, x))?;
                }
            }
            for a in 0..n {
                for b in 0..n {
                    let Some(u) = single(self.get(a, b)) else { continue };
                    for c in 0..n {
                        let Some(w) = single(self.get(b, c)) else { continue };
                        let both = self.get(u, c) & self.get(a, w);
                        changed |= self.restrict(u, c, both)?;
                        changed |= self.restrict(a, w, both)?;
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn first_open(&self, alg: &Algebra) -> Option<(usize, usize)> {
        alg.order
            .iter()
            .copied()
            .find(|&(a, b)| self.get(a, b).count_ones() > 1)
    }

    pub(crate) fn branch(&self, alg: &Algebra, a: usize, b: usize) -> Vec<ProductNode> {
        let d = self.get(a, b);
        (0..self.n)
            .filter(|v| d & 1 << v != 0)
            .filter_map(|v| {
                let mut child = self.clone();
                child.restrict(a, b, 1 << v).ok()?;
                child.propagate(alg).ok()?;
                Some(child)
            })
            .collect()
    }

    pub(crate) fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.get(a, b).trailing_zeros() as usize).collect())
            .collect()
    }
}
