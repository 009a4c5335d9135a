use rand::RngCore;

use crate::model::{EffectAlgebra, EffectMonoid};
use crate::{Error, Result};

/// The corner `pM = {p·a}` of an idempotent `p`.
///
/// The carrier is never materialized: membership is `p·a = a`, the unit is
/// `p` and the complement of `a` inside the corner is `p·a⊥`.
#[derive(Debug, Clone)]
pub struct CornerModel<M: EffectMonoid> {
    base: M,
    unit: M::Elem,
}

impl<M: EffectMonoid> CornerModel<M> {
    pub fn new(base: M, p: M::Elem) -> Result<Self> {
        if !base.is_idempotent(&p) {
            return Err(Error::NotIdempotent(base.format_element(&p)));
        }
        Ok(CornerModel { base, unit: p })
    }

    pub fn base(&self) -> &M {
        &self.base
    }

    pub fn unit(&self) -> &M::Elem {
        &self.unit
    }

    pub fn contains(&self, a: &M::Elem) -> bool {
        self.base
            .approx_eq(&self.base.product(&self.unit, a), a)
    }

    /// The projection `a ↦ p·a` of the base model onto the corner.
    pub fn project(&self, a: &M::Elem) -> M::Elem {
        self.base.product(&self.unit, a)
    }
}

impl<M: EffectMonoid> EffectAlgebra for CornerModel<M> {
    type Elem = M::Elem;

    fn zero(&self) -> M::Elem {
        self.base.zero()
    }
    fn one(&self) -> M::Elem {
        self.unit.clone()
    }
    fn sum(&self, a: &M::Elem, b: &M::Elem) -> Option<M::Elem> {
        self.base.sum(a, b)
    }
    fn complement(&self, a: &M::Elem) -> M::Elem {
        self.base.product(&self.unit, &self.base.complement(a))
    }
    fn leq(&self, a: &M::Elem, b: &M::Elem) -> bool {
        self.base.leq(a, b)
    }
    fn ominus(&self, a: &M::Elem, b: &M::Elem) -> Option<M::Elem> {
        self.base.ominus(a, b)
    }
    fn distance(&self, a: &M::Elem, b: &M::Elem) -> f64 {
        self.base.distance(a, b)
    }
    fn tolerance(&self) -> f64 {
        self.base.tolerance()
    }
    fn approx_eq(&self, a: &M::Elem, b: &M::Elem) -> bool {
        self.base.approx_eq(a, b)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> M::Elem {
        self.project(&self.base.sample(rng))
    }
    fn sample_below(&self, bound: &M::Elem, rng: &mut dyn RngCore) -> M::Elem {
        self.base.sample_below(bound, rng)
    }
    fn elements(&self) -> Option<Vec<M::Elem>> {
        let all = self.base.elements()?;
        Some(all.into_iter().filter(|a| self.contains(a)).collect())
    }
    fn describe(&self) -> String {
        format!(
            "corner:{}@{}",
            self.base.describe(),
            self.base.format_element(&self.unit)
        )
    }
    fn format_element(&self, a: &M::Elem) -> String {
        self.base.format_element(a)
    }
    fn parse_element(&self, text: &str) -> Result<M::Elem> {
        let a = self.base.parse_element(text)?;
        if !self.contains(&a) {
            return Err(Error::ElementLiteral {
                literal: text.to_string(),
                model: self.describe(),
            });
        }
        Ok(a)
    }
}

impl<M: EffectMonoid> EffectMonoid for CornerModel<M> {
    fn product(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        self.base.product(a, b)
    }
}
