//! Floor, ceiling, division, lattice operations, halving and the convex action.
//!
//! Every operation has two routes: the model's closed form, exposed through
//! [`DerivedOps`], and the generic series evaluator in [`series`]. Models
//! without a closed form fall back to the series.

mod closed;
mod convex;
pub mod series;

use crate::check::{AxiomReport, CheckMode, Recorder};
use crate::model::EffectMonoid;
use crate::{Error, Result};

pub use convex::{ConvexAction, DYADIC_BITS};
pub use crate::model::nfold;
pub use series::{SeriesOutcome, SeriesStatus, MEET_DIAGONAL_BAND};

/// Truncation policy for the series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Maximum evaluator steps. Each step of a geometric series doubles the
    /// number of terms; each step of the meet recursion adds one term.
    pub max_terms: u64,
    /// Halt once an increment is smaller than this.
    pub increment_floor: f64,
    pub tolerance: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            max_terms: 1_000_000,
            increment_floor: 1e-12,
            tolerance: 1e-9,
        }
    }
}

/// Derived operations of an effect monoid. The provided methods evaluate the
/// defining series; models override them with closed forms.
pub trait DerivedOps: EffectMonoid {
    /// Greatest idempotent below `a`.
    fn floor(&self, a: &Self::Elem) -> Self::Elem {
        series::floor(self, a, &SeriesConfig::default()).value
    }

    /// Least idempotent above `a`.
    fn ceil(&self, a: &Self::Elem) -> Self::Elem {
        series::ceil(self, a, &SeriesConfig::default()).value
    }

    /// `a/b`, assuming `a ≤ b`.
    fn quotient(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        series::divide(self, a, b, &SeriesConfig::default()).value
    }

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        series::meet(self, a, b, &SeriesConfig::default()).value
    }

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.complement(&self.meet(&self.complement(a), &self.complement(b)))
    }

    /// Some `b` with `b ⊎ b = a`. The default scans the carrier.
    fn halve(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.elements()?.into_iter().find(|b| {
            self.sum(b, b).is_some_and(|s| self.approx_eq(&s, a))
        })
    }
}

impl<M: DerivedOps + ?Sized> DerivedOps for &M {
    fn floor(&self, a: &Self::Elem) -> Self::Elem {
        (**self).floor(a)
    }
    fn ceil(&self, a: &Self::Elem) -> Self::Elem {
        (**self).ceil(a)
    }
    fn quotient(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).quotient(a, b)
    }
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).meet(a, b)
    }
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).join(a, b)
    }
    fn halve(&self, a: &Self::Elem) -> Option<Self::Elem> {
        (**self).halve(a)
    }
}

pub fn floor<M: DerivedOps>(m: &M, a: &M::Elem) -> M::Elem {
    m.floor(a)
}

pub fn ceil<M: DerivedOps>(m: &M, a: &M::Elem) -> M::Elem {
    m.ceil(a)
}

/// `a/b`, defined when `a ≤ b`.
pub fn divide<M: DerivedOps>(m: &M, a: &M::Elem, b: &M::Elem) -> Result<M::Elem> {
    if !m.leq(a, b) {
        return Err(Error::NotComparable(format!(
            "{} is not below {}",
            m.format_element(a),
            m.format_element(b)
        )));
    }
    Ok(m.quotient(a, b))
}

pub fn meet<M: DerivedOps>(m: &M, a: &M::Elem, b: &M::Elem) -> M::Elem {
    m.meet(a, b)
}

pub fn join<M: DerivedOps>(m: &M, a: &M::Elem, b: &M::Elem) -> M::Elem {
    m.join(a, b)
}

pub fn is_halvable<M: DerivedOps>(m: &M, a: &M::Elem) -> Option<M::Elem> {
    m.halve(a)
}

/// `λ̄·a` for the convex action induced by a half of the unit.
pub fn scalar_action<M: DerivedOps>(m: &M, lambda: f64, a: &M::Elem) -> Result<M::Elem> {
    Ok(ConvexAction::new(m)?.act(lambda, a))
}

/// Checks that `s ↦ b·s·b'` carries the supremum `limit` of an ascending
/// chain to the supremum of the image, and the infimum of the complemented
/// chain to the infimum of its image.
///
/// `limit` is the chain's supremum: the stabilized value on finite models,
/// the pointwise limit on numeric ones.
pub fn normality_check<M: DerivedOps>(
    m: &M,
    chain: &[M::Elem],
    limit: &M::Elem,
    b: &M::Elem,
    b2: &M::Elem,
) -> Result<AxiomReport> {
    for (i, w) in chain.windows(2).enumerate() {
        if !m.leq(&w[0], &w[1]) {
            return Err(Error::NotAscending(i + 1));
        }
    }
    let mut rec = Recorder::new(CheckMode::Exhaustive);
    let Some(last) = chain.last() else {
        return Ok(rec.finish());
    };
    let fmt = |xs: &[&M::Elem]| xs.iter().map(|x| m.format_element(x)).collect::<Vec<_>>();
    let sandwich = |s: &M::Elem| m.product(&m.product(b, s), b2);

    rec.check(
        chain.iter().all(|s| m.leq(s, limit)) && m.approx_eq(last, limit),
        "chain-limit",
        || fmt(&[last, limit]),
    );

    let image: Vec<M::Elem> = chain.iter().map(sandwich).collect();
    let image_limit = sandwich(limit);
    rec.check(
        image.windows(2).all(|w| m.leq(&w[0], &w[1]))
            && image.iter().all(|x| m.leq(x, &image_limit)),
        "image-ascending",
        || fmt(&[b, b2]),
    );
    rec.check(
        m.approx_eq(&image_limit, image.last().expect("non-empty")),
        "supremum",
        || fmt(&[b, b2, limit]),
    );

    let dual: Vec<M::Elem> = chain.iter().map(|s| sandwich(&m.complement(s))).collect();
    let dual_limit = sandwich(&m.complement(limit));
    rec.check(
        dual.windows(2).all(|w| m.leq(&w[1], &w[0]))
            && dual.iter().all(|x| m.leq(&dual_limit, x)),
        "image-descending",
        || fmt(&[b, b2]),
    );
    rec.check(
        m.approx_eq(&dual_limit, dual.last().expect("non-empty")),
        "infimum",
        || fmt(&[b, b2, limit]),
    );
    Ok(rec.finish())
}
