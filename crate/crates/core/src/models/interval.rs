use rand::RngCore;

use crate::model::{EffectAlgebra, EffectMonoid};
use crate::scalar::{clamp_unit, one_minus, Scalar};
use crate::{Error, Result};

/// The real unit interval `[0, 1]` with truncation-free addition.
///
/// `a` and `b` are summable when `a + b ≤ 1 + tolerance`; the sum is clamped
/// to the interval. Exact scalars have zero tolerance and therefore the strict
/// bound `a + b ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalModel<S> {
    tolerance: S,
}

impl<S: Scalar> Default for IntervalModel<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> IntervalModel<S> {
    pub fn new() -> Self {
        IntervalModel {
            tolerance: S::default_tolerance(),
        }
    }

    pub fn with_tolerance(tolerance: S) -> Self {
        IntervalModel { tolerance }
    }

    pub fn tol(&self) -> &S {
        &self.tolerance
    }

    pub fn value(&self, a: f64) -> S {
        S::from_f64(a).expect("representable scalar")
    }
}

impl<S: Scalar> EffectAlgebra for IntervalModel<S> {
    type Elem = S;

    fn zero(&self) -> S {
        S::zero()
    }
    fn one(&self) -> S {
        S::one()
    }
    fn sum(&self, a: &S, b: &S) -> Option<S> {
        let s = a.clone() + b.clone();
        (s <= S::one() + self.tolerance.clone()).then(|| s.min_of(S::one()))
    }
    fn complement(&self, a: &S) -> S {
        clamp_unit(one_minus(a))
    }
    fn leq(&self, a: &S, b: &S) -> bool {
        *a <= b.clone() + self.tolerance.clone()
    }
    fn ominus(&self, a: &S, b: &S) -> Option<S> {
        self.leq(b, a)
            .then(|| (a.clone() - b.clone()).max_of(S::zero()))
    }
    fn distance(&self, a: &S, b: &S) -> f64 {
        a.abs_diff(b).as_f64()
    }
    fn tolerance(&self) -> f64 {
        self.tolerance.as_f64()
    }
    fn approx_eq(&self, a: &S, b: &S) -> bool {
        a.abs_diff(b) <= self.tolerance
    }
    fn sample(&self, rng: &mut dyn RngCore) -> S {
        S::sample_unit(rng)
    }
    fn sample_below(&self, bound: &S, rng: &mut dyn RngCore) -> S {
        bound.clone() * S::sample_unit(rng)
    }
    fn describe(&self) -> String {
        "interval".into()
    }
    fn format_element(&self, a: &S) -> String {
        a.to_string()
    }
    fn parse_element(&self, text: &str) -> Result<S> {
        S::parse_literal(text)
            .filter(|v| *v >= S::zero() && *v <= S::one())
            .ok_or_else(|| Error::ElementLiteral {
                literal: text.to_string(),
                model: self.describe(),
            })
    }
}

impl<S: Scalar> EffectMonoid for IntervalModel<S> {
    fn product(&self, a: &S, b: &S) -> S {
        a.clone() * b.clone()
    }
}
