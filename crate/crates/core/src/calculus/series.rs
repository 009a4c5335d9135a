//! Generic truncated-series evaluators.
//!
//! These use nothing but the monoid operations, so they run on every model and
//! serve as the reference the closed forms are certified against. Geometric
//! series `Σ a·rⁿ` are accumulated in blocks of doubling length,
//! `S₂ₙ = Sₙ ⊎ Sₙ·rᴺ`, which needs `log₂ N` steps for `N` terms.

use serde::Serialize;

use super::SeriesConfig;
use crate::model::EffectMonoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesStatus {
    /// Increment fell below the floor, or the iteration stabilized exactly.
    Converged,
    /// `max_terms` steps were taken without convergence.
    TermLimit,
    /// A partial sum was undefined; only possible on tables that violate the axioms.
    Undefined,
}

#[derive(Debug, Clone)]
pub struct SeriesOutcome<E> {
    pub value: E,
    /// Number of series terms (or recursion steps) incorporated.
    pub terms: u64,
    pub steps: u64,
    /// Estimated distance from `value` to the limit.
    pub residual: f64,
    pub status: SeriesStatus,
}

impl<E> SeriesOutcome<E> {
    pub fn converged(&self) -> bool {
        self.status == SeriesStatus::Converged
    }
}

/// Pairs whose coordinates differ by less than this may exhaust the default
/// `max_terms` in [`meet`] before reaching the increment floor: the recursion
/// needs roughly `20/|a-b|` steps.
pub const MEET_DIAGONAL_BAND: f64 = 1e-4;

/// `Σₙ a·rⁿ` by block doubling.
pub fn geometric<M: EffectMonoid + ?Sized>(
    m: &M,
    a: &M::Elem,
    ratio: &M::Elem,
    cfg: &SeriesConfig,
) -> SeriesOutcome<M::Elem> {
    let zero = m.zero();
    let mut partial = a.clone();
    let mut power = ratio.clone();
    let mut terms: u64 = 1;
    let mut steps: u64 = 0;
    loop {
        let increment = m.product(&partial, &power);
        let size = m.distance(&increment, &zero);
        let Some(next) = m.sum(&partial, &increment) else {
            return SeriesOutcome {
                value: partial,
                terms,
                steps,
                residual: size,
                status: SeriesStatus::Undefined,
            };
        };
        partial = next;
        power = m.product(&power, &power);
        terms = terms.saturating_mul(2);
        steps += 1;
        if size < cfg.increment_floor || size == 0.0 {
            // the next block is bounded by this one
            return SeriesOutcome {
                value: partial,
                terms,
                steps,
                residual: size,
                status: SeriesStatus::Converged,
            };
        }
        if steps >= cfg.max_terms || terms == u64::MAX {
            let residual = m.distance(&m.product(&partial, &power), &zero);
            return SeriesOutcome {
                value: partial,
                terms,
                steps,
                residual,
                status: SeriesStatus::TermLimit,
            };
        }
    }
}

/// `⌈a⌉ = ⊎ₙ a·(a⊥)ⁿ`.
pub fn ceil<M: EffectMonoid + ?Sized>(m: &M, a: &M::Elem, cfg: &SeriesConfig) -> SeriesOutcome<M::Elem> {
    geometric(m, a, &m.complement(a), cfg)
}

/// `a/b = ⊎ₙ a·(b⊥)ⁿ`; meaningful for `a ≤ b`.
pub fn divide<M: EffectMonoid + ?Sized>(
    m: &M,
    a: &M::Elem,
    b: &M::Elem,
    cfg: &SeriesConfig,
) -> SeriesOutcome<M::Elem> {
    geometric(m, a, &m.complement(b), cfg)
}

/// `⌊a⌋ = ⋀ₙ aⁿ`, through the cofinal subsequence `a^(2ᵏ)`.
pub fn floor<M: EffectMonoid + ?Sized>(m: &M, a: &M::Elem, cfg: &SeriesConfig) -> SeriesOutcome<M::Elem> {
    let mut power = a.clone();
    let mut terms: u64 = 1;
    let mut steps: u64 = 0;
    loop {
        let next = m.product(&power, &power);
        let step = m.distance(&next, &power);
        power = next;
        terms = terms.saturating_mul(2);
        steps += 1;
        if step < cfg.increment_floor || step == 0.0 {
            return SeriesOutcome {
                value: power,
                terms,
                steps,
                residual: step,
                status: SeriesStatus::Converged,
            };
        }
        if steps >= cfg.max_terms || terms == u64::MAX {
            return SeriesOutcome {
                value: power,
                terms,
                steps,
                residual: step,
                status: SeriesStatus::TermLimit,
            };
        }
    }
}

/// `a ∧ b = ⊎ₙ aₙ·bₙ` with `aₙ₊₁ = aₙ·bₙ⊥`, `bₙ₊₁ = aₙ⊥·bₙ`.
///
/// The distance from a partial sum to the infimum is bounded by both `aₙ₊₁`
/// and `bₙ₊₁`. Where `a` and `b` are not ordered (different coordinates of a
/// function model lean different ways) neither bound vanishes, so the loop
/// also stops once the terms, which never increase, fall below the increment
/// floor; `residual` then reports the geometric tail estimate. On the diagonal
/// `a = b` the residual decays only like `1/N`.
pub fn meet<M: EffectMonoid + ?Sized>(
    m: &M,
    a: &M::Elem,
    b: &M::Elem,
    cfg: &SeriesConfig,
) -> SeriesOutcome<M::Elem> {
    let zero = m.zero();
    let mut acc = m.zero();
    let mut an = a.clone();
    let mut bn = b.clone();
    let mut steps: u64 = 0;
    let mut last_size = f64::INFINITY;
    loop {
        let term = m.product(&an, &bn);
        let size = m.distance(&term, &zero);
        let Some(next) = m.sum(&acc, &term) else {
            return SeriesOutcome {
                value: acc,
                terms: steps,
                steps,
                residual: m.distance(&an, &zero).min(m.distance(&bn, &zero)),
                status: SeriesStatus::Undefined,
            };
        };
        acc = next;
        let a_next = m.product(&an, &m.complement(&bn));
        let b_next = m.product(&m.complement(&an), &bn);
        steps += 1;
        let residual = m.distance(&a_next, &zero).min(m.distance(&b_next, &zero));
        let stable = m.distance(&a_next, &an) == 0.0 && m.distance(&b_next, &bn) == 0.0;
        an = a_next;
        bn = b_next;
        if residual < cfg.increment_floor || residual == 0.0 {
            return SeriesOutcome {
                value: acc,
                terms: steps,
                steps,
                residual,
                status: SeriesStatus::Converged,
            };
        }
        if size < cfg.increment_floor && size < last_size {
            let ratio = size / last_size;
            return SeriesOutcome {
                value: acc,
                terms: steps,
                steps,
                residual: residual.min(size * ratio / (1.0 - ratio)),
                status: SeriesStatus::Converged,
            };
        }
        last_size = size;
        if stable {
            let next_term = m.distance(&m.product(&an, &bn), &zero);
            return SeriesOutcome {
                value: acc,
                terms: steps,
                steps,
                residual: next_term,
                status: if next_term == 0.0 {
                    SeriesStatus::Converged
                } else {
                    SeriesStatus::Undefined
                },
            };
        }
        if steps >= cfg.max_terms {
            return SeriesOutcome {
                value: acc,
                terms: steps,
                steps,
                residual,
                status: SeriesStatus::TermLimit,
            };
        }
    }
}

/// `a ∨ b = (a⊥ ∧ b⊥)⊥`.
pub fn join<M: EffectMonoid + ?Sized>(
    m: &M,
    a: &M::Elem,
    b: &M::Elem,
    cfg: &SeriesConfig,
) -> SeriesOutcome<M::Elem> {
    let mut out = meet(m, &m.complement(a), &m.complement(b), cfg);
    out.value = m.complement(&out.value);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Interval;

    #[test]
    fn geometric_series_of_one_quarter_over_one_half() {
        let m = Interval::new();
        let out = divide(&m, &0.25, &0.5, &SeriesConfig::default());
        assert!(out.converged());
        assert!((out.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn floor_of_point_nine_nine_nine_vanishes() {
        let m = Interval::new();
        let out = floor(&m, &0.999, &SeriesConfig::default());
        assert!(out.converged());
        assert!(out.value < 1e-9);
        assert_eq!(floor(&m, &1.0, &SeriesConfig::default()).value, 1.0);
    }

    #[test]
    fn ceil_partial_sums_approach_one() {
        let m = Interval::new();
        let out = ceil(&m, &0.2, &SeriesConfig::default());
        assert!(out.converged());
        assert!((out.value - 1.0).abs() < 1e-9);
        assert_eq!(ceil(&m, &0.0, &SeriesConfig::default()).value, 0.0);
    }

    #[test]
    fn meet_recursion_matches_min() {
        let m = Interval::new();
        let out = meet(&m, &0.3, &0.5, &SeriesConfig::default());
        assert!(out.converged(), "{out:?}");
        assert!((out.value - 0.3).abs() < 1e-9);
    }

    #[test]
    fn meet_on_the_diagonal_reports_slow_convergence() {
        let m = Interval::new();
        let cfg = SeriesConfig {
            max_terms: 10_000,
            ..SeriesConfig::default()
        };
        let out = meet(&m, &0.4, &0.4, &cfg);
        assert_eq!(out.status, SeriesStatus::TermLimit);
        assert!(out.residual > cfg.tolerance);
        // the residual is an upper bound on the remaining distance
        assert!(0.4 - out.value <= out.residual + 1e-12);
    }
}
