use rand::RngCore;

use super::split_top_level;
use crate::model::{EffectAlgebra, EffectMonoid};
use crate::{Error, Result};

/// Largest carrier a direct sum will list through [`EffectAlgebra::elements`].
const MAX_LISTED: usize = 1 << 16;

/// Cartesian product with componentwise operations. Literals are `[left,right]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectSumModel<L, R> {
    pub left: L,
    pub right: R,
}

impl<L, R> DirectSumModel<L, R> {
    pub fn new(left: L, right: R) -> Self {
        DirectSumModel { left, right }
    }
}

impl<L: EffectAlgebra, R: EffectAlgebra> EffectAlgebra for DirectSumModel<L, R> {
    type Elem = (L::Elem, R::Elem);

    fn zero(&self) -> Self::Elem {
        (self.left.zero(), self.right.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.left.one(), self.right.one())
    }
    fn sum(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some((self.left.sum(&a.0, &b.0)?, self.right.sum(&a.1, &b.1)?))
    }
    fn complement(&self, a: &Self::Elem) -> Self::Elem {
        (self.left.complement(&a.0), self.right.complement(&a.1))
    }
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.left.leq(&a.0, &b.0) && self.right.leq(&a.1, &b.1)
    }
    fn ominus(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some((self.left.ominus(&a.0, &b.0)?, self.right.ominus(&a.1, &b.1)?))
    }
    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64 {
        self.left.distance(&a.0, &b.0).max(self.right.distance(&a.1, &b.1))
    }
    fn tolerance(&self) -> f64 {
        self.left.tolerance().max(self.right.tolerance())
    }
    fn approx_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.left.approx_eq(&a.0, &b.0) && self.right.approx_eq(&a.1, &b.1)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        (self.left.sample(rng), self.right.sample(rng))
    }
    fn sample_below(&self, bound: &Self::Elem, rng: &mut dyn RngCore) -> Self::Elem {
        (
            self.left.sample_below(&bound.0, rng),
            self.right.sample_below(&bound.1, rng),
        )
    }
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let left = self.left.elements()?;
        let right = self.right.elements()?;
        if left.len().saturating_mul(right.len()) > MAX_LISTED {
            return None;
        }
        Some(
            left.iter()
                .flat_map(|l| right.iter().map(move |r| (l.clone(), r.clone())))
                .collect(),
        )
    }
    fn describe(&self) -> String {
        format!("sum:{},{}", self.left.describe(), self.right.describe())
    }
    fn format_element(&self, a: &Self::Elem) -> String {
        format!(
            "[{},{}]",
            self.left.format_element(&a.0),
            self.right.format_element(&a.1)
        )
    }
    fn parse_element(&self, text: &str) -> Result<Self::Elem> {
        let bad = || Error::ElementLiteral {
            literal: text.to_string(),
            model: self.describe(),
        };
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        match split_top_level(inner, ',').as_slice() {
            [l, r] => Ok((self.left.parse_element(l)?, self.right.parse_element(r)?)),
            _ => Err(bad()),
        }
    }
}

impl<L: EffectMonoid, R: EffectMonoid> EffectMonoid for DirectSumModel<L, R> {
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.left.product(&a.0, &b.0), self.right.product(&a.1, &b.1))
    }
}
