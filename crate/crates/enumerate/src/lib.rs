//! Enumeration of finite effect algebras and effect monoids up to isomorphism.
//!
//! Each size is searched once per complement involution shape. Search trees
//! are split at their first undetermined cells and explored in parallel;
//! leaves are reduced to canonical forms and merged by set union.
//!
//! ```
//! let algebras = emkit_enumerate::enumerate_effect_algebras(4).unwrap();
//! assert_eq!(algebras.len(), 3);
//! let monoids: usize = algebras.iter().map(|a| emkit_enumerate::extend_to_monoids(a).len()).sum();
//! assert_eq!(monoids, 1);
//! ```

mod canon;
#[cfg(any(test, feature = "oracle"))]
pub mod naive;
mod product;
mod search;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use emkit_core::decompose::zero_divisor;
use emkit_core::{
    check_effect_algebra, check_effect_monoid, CheckMode, Error, FiniteAlgebra, FiniteMonoid, FiniteStructure,
    Result,
};
use rayon::prelude::*;

pub use canon::isomorphic;

/// Largest size searched unless configured otherwise.
pub const DEFAULT_BOUND: usize = 8;
/// Hard limit of the table encoding.
pub const MAX_SIZE: usize = 30;

/// Subtrees are split until at least this many are available.
const SPLIT_TARGET: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub bound: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bound: DEFAULT_BOUND,
            jobs: None,
        }
    }
}

impl Config {
    fn admit(&self, n: usize) -> Result<()> {
        let bound = self.bound.min(MAX_SIZE);
        if n == 0 || n > bound {
            return Err(Error::BoundExceeded { size: n, bound });
        }
        Ok(())
    }

    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match self.jobs {
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }
}

/// Search tree counters, merged by addition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    /// Leaves failing the exhaustive axiom check.
    pub rejected: u64,
}

impl SearchStats {
    fn merge(self, o: SearchStats) -> SearchStats {
        SearchStats {
            nodes: self.nodes + o.nodes,
            leaves: self.leaves + o.leaves,
            rejected: self.rejected + o.rejected,
        }
    }
}

type Found = (BTreeMap<Vec<u8>, FiniteStructure>, SearchStats);

fn merge_found(mut a: Found, b: Found) -> Found {
    a.0.extend(b.0);
    (a.0, a.1.merge(b.1))
}

/// Breadth-first expansion until `target` open nodes exist or none can be split.
fn frontier<N: Clone>(
    roots: Vec<N>,
    target: usize,
    open: impl Fn(&N) -> Option<Vec<N>>,
    stats: &mut SearchStats,
) -> Vec<N> {
    let mut layer = roots;
    while layer.len() < target {
        let mut next = Vec::new();
        let mut split = false;
        for node in layer {
            match open(&node) {
                Some(children) => {
                    stats.nodes += 1;
                    split = true;
                    next.extend(children);
                }
                None => next.push(node),
            }
        }
        layer = next;
        if !split {
            break;
        }
    }
    layer
}

fn algebra_subtree(node: search::SumNode, perms: &[canon::Perm]) -> Found {
    let mut found = BTreeMap::new();
    let mut stats = SearchStats::default();
    let mut stack = vec![node];
    while let Some(node) = stack.pop() {
        stats.nodes += 1;
        match node.first_open() {
            Some((a, b)) => stack.extend(node.branch(a, b)),
            None => {
                stats.leaves += 1;
                let s = node.to_structure();
                let (code, perm) = canon::canonical_over(&s, perms);
                found.entry(code).or_insert_with(|| s.permuted(&perm));
            }
        }
    }
    (found, stats)
}

/// All `n`-element effect algebras up to isomorphism, in canonical form with
/// zero `0` and one `n-1`, ordered by encoding.
pub fn enumerate_effect_algebras(n: usize) -> Result<Vec<FiniteStructure>> {
    enumerate_effect_algebras_with(n, &Config::default()).map(|(v, _)| v)
}

pub fn enumerate_effect_algebras_with(n: usize, cfg: &Config) -> Result<(Vec<FiniteStructure>, SearchStats)> {
    cfg.admit(n)?;
    let (found, mut stats) = cfg.run(|| {
        search::complement_shapes(n)
            .into_iter()
            .map(|comp| {
                let mut stats = SearchStats::default();
                let Some(root) = search::SumNode::root(&comp) else {
                    stats.nodes += 1;
                    return (BTreeMap::new(), stats);
                };
                let shape = root.to_structure();
                let perms = canon::complement_centralizer(&shape);
                let nodes = frontier(
                    vec![root],
                    SPLIT_TARGET,
                    |n| n.first_open().map(|(a, b)| n.branch(a, b)),
                    &mut stats,
                );
                let found = nodes
                    .into_par_iter()
                    .map(|node| algebra_subtree(node, &perms))
                    .reduce(|| (BTreeMap::new(), SearchStats::default()), merge_found);
                (found.0, found.1.merge(stats))
            })
            .fold((BTreeMap::new(), SearchStats::default()), merge_found)
    });
    let mut out = Vec::with_capacity(found.len());
    for s in found.into_values() {
        let ok = check_effect_algebra(&FiniteAlgebra::new(s.clone())?, CheckMode::Exhaustive)?.passed;
        if ok {
            out.push(s);
        } else {
            stats.rejected += 1;
        }
    }
    Ok((out, stats))
}

/// All products on `ea` making it an effect monoid, one per isomorphism class
/// of the resulting monoid, keeping the labelling of `ea`.
pub fn extend_to_monoids(ea: &FiniteStructure) -> Vec<FiniteStructure> {
    extend_to_monoids_with_stats(ea).0
}

pub fn extend_to_monoids_with_stats(ea: &FiniteStructure) -> (Vec<FiniteStructure>, SearchStats) {
    let alg = product::Algebra::new(ea);
    let mut stats = SearchStats::default();
    let mut found = BTreeMap::new();
    let autos = canon::algebra_automorphisms(ea);
    let mut stack: Vec<product::ProductNode> = Vec::new();
    match alg.root() {
        Some(root) => stack.push(root),
        None => stats.nodes += 1,
    }
    while let Some(node) = stack.pop() {
        stats.nodes += 1;
        if let Some((a, b)) = node.first_open(&alg) {
            stack.extend(node.branch(&alg, a, b));
            continue;
        }
        stats.leaves += 1;
        let s = FiniteStructure {
            product: Some(node.table()),
            ..ea.clone()
        };
        let valid = FiniteMonoid::new(s.clone())
            .and_then(|m| check_effect_monoid(&m, CheckMode::Exhaustive))
            .is_ok_and(|r| r.passed);
        if !valid {
            stats.rejected += 1;
            continue;
        }
        let (code, perm) = canon::canonical_over(&s, &autos);
        found.entry(code).or_insert_with(|| s.permuted(&perm));
    }
    (found.into_values().collect(), stats)
}

/// Properties of one census monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonoidFacts {
    pub commutative: bool,
    pub all_idempotent: bool,
    pub zero_divisor_free: bool,
}

impl MonoidFacts {
    pub fn of(s: &FiniteStructure) -> Result<MonoidFacts> {
        let p = s.product.as_ref().ok_or(Error::MissingProduct)?;
        let n = s.size;
        let m = FiniteMonoid::new(s.clone())?;
        Ok(MonoidFacts {
            commutative: (0..n).all(|a| (0..n).all(|b| p[a][b] == p[b][a])),
            all_idempotent: (0..n).all(|a| p[a][a] == a),
            zero_divisor_free: zero_divisor(&m)?.is_none(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct SizeCensus {
    pub size: usize,
    pub algebras: Vec<FiniteStructure>,
    pub monoids: Vec<FiniteStructure>,
    pub facts: Vec<MonoidFacts>,
    pub algebra_stats: SearchStats,
    pub monoid_stats: SearchStats,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub sizes: Vec<SizeCensus>,
    pub elapsed: Duration,
}

impl EnumerationResult {
    pub fn algebra_counts(&self) -> Vec<usize> {
        self.sizes.iter().map(|s| s.algebras.len()).collect()
    }

    pub fn monoid_counts(&self) -> Vec<usize> {
        self.sizes.iter().map(|s| s.monoids.len()).collect()
    }

    /// Monoids that are not commutative or not Boolean, as `(size, index)`.
    pub fn anomalies(&self) -> Vec<(usize, usize)> {
        self.sizes
            .iter()
            .flat_map(|c| {
                c.facts
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| !(f.commutative && f.all_idempotent))
                    .map(move |(i, _)| (c.size, i))
            })
            .collect()
    }
}

/// Census of every size `1..=max_size` with the default configuration.
pub fn run_census(max_size: usize) -> Result<EnumerationResult> {
    run_census_with(max_size, &Config::default(), false)
}

/// Census with explicit configuration; `algebras_only` skips products.
pub fn run_census_with(max_size: usize, cfg: &Config, algebras_only: bool) -> Result<EnumerationResult> {
    cfg.admit(max_size)?;
    let start = Instant::now();
    let mut sizes = Vec::with_capacity(max_size);
    for n in 1..=max_size {
        let t = Instant::now();
        let (algebras, algebra_stats) = enumerate_effect_algebras_with(n, cfg)?;
        let (monoids, monoid_stats) = if algebras_only {
            (Vec::new(), SearchStats::default())
        } else {
            let per: Vec<(Vec<FiniteStructure>, SearchStats)> =
                cfg.run(|| algebras.par_iter().map(extend_to_monoids_with_stats).collect());
            per.into_iter()
                .fold((Vec::new(), SearchStats::default()), |(mut ms, st), (m, s)| {
                    ms.extend(m);
                    (ms, st.merge(s))
                })
        };
        let facts = monoids.iter().map(MonoidFacts::of).collect::<Result<Vec<_>>>()?;
        sizes.push(SizeCensus {
            size: n,
            algebras,
            monoids,
            facts,
            algebra_stats,
            monoid_stats,
            elapsed: t.elapsed(),
        });
    }
    Ok(EnumerationResult {
        sizes,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes() {
        for (n, count) in [(1, 1), (2, 1), (3, 1)] {
            assert_eq!(enumerate_effect_algebras(n).unwrap().len(), count, "size {n}");
        }
        assert_eq!(enumerate_effect_algebras(3).unwrap()[0], FiniteStructure::chain(3));
    }

    #[test]
    fn bound() {
        assert_eq!(
            enumerate_effect_algebras(9),
            Err(Error::BoundExceeded { size: 9, bound: 8 })
        );
        assert!(enumerate_effect_algebras(0).is_err());
        let cfg = Config { bound: 3, jobs: Some(1) };
        assert!(run_census_with(4, &cfg, false).is_err());
    }

    #[test]
    fn products_on_small_algebras() {
        let b2 = FiniteStructure {
            product: None,
            ..FiniteStructure::boolean(2)
        };
        let ms = extend_to_monoids(&b2);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].product, FiniteStructure::boolean(2).product);
        assert!(extend_to_monoids(&FiniteStructure::chain(3)).is_empty());
        assert_eq!(extend_to_monoids(&FiniteStructure::chain(2)).len(), 1);
    }

    #[test]
    fn census_through_five() {
        let r = run_census(5).unwrap();
        assert_eq!(r.monoid_counts(), vec![1, 1, 0, 1, 0]);
        assert!(r.anomalies().is_empty());
    }
}
