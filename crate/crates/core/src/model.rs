//! The uniform contract every model implements.
//!
//! A model is a value describing a carrier set together with its partial sum,
//! complement and order. Elements are plain values owned by the caller; the
//! model itself is immutable. An undefined sum is `None`, never a clamped or
//! otherwise total-ized value.

use std::fmt::Debug;

use rand::RngCore;

/// An effect algebra: partial commutative associative sum, zero, unit and
/// orthocomplement.
pub trait EffectAlgebra {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;

    /// The partial sum; `None` when `a` and `b` are not summable.
    fn sum(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn is_summable(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.sum(a, b).is_some()
    }

    fn complement(&self, a: &Self::Elem) -> Self::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// `a ⊖ b`: the unique `c` with `b ⊎ c = a`, when `b ≤ a`.
    fn ominus(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Distance used for tolerance comparisons and series halting. Discrete
    /// models return 0 or 1.
    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64;

    /// Equality tolerance of the model (0 for discrete and exact models).
    fn tolerance(&self) -> f64;

    fn approx_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.distance(a, b) <= self.tolerance()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// A random element below `bound`.
    fn sample_below(&self, bound: &Self::Elem, rng: &mut dyn RngCore) -> Self::Elem;

    /// Every element, for finite models small enough to list.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Human-readable model descriptor.
    fn describe(&self) -> String;

    /// Renders an element as a literal accepted by [`EffectAlgebra::parse_element`].
    fn format_element(&self, a: &Self::Elem) -> String;

    fn parse_element(&self, text: &str) -> crate::Result<Self::Elem>;
}

/// An effect algebra with a bi-additive, unital, associative product.
pub trait EffectMonoid: EffectAlgebra {
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_idempotent(&self, p: &Self::Elem) -> bool {
        self.approx_eq(&self.product(p, p), p)
    }
}

impl<M: EffectAlgebra + ?Sized> EffectAlgebra for &M {
    type Elem = M::Elem;

    fn zero(&self) -> Self::Elem {
        (**self).zero()
    }
    fn one(&self) -> Self::Elem {
        (**self).one()
    }
    fn sum(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        (**self).sum(a, b)
    }
    fn is_summable(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).is_summable(a, b)
    }
    fn complement(&self, a: &Self::Elem) -> Self::Elem {
        (**self).complement(a)
    }
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).leq(a, b)
    }
    fn ominus(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        (**self).ominus(a, b)
    }
    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64 {
        (**self).distance(a, b)
    }
    fn tolerance(&self) -> f64 {
        (**self).tolerance()
    }
    fn approx_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).approx_eq(a, b)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        (**self).sample(rng)
    }
    fn sample_below(&self, bound: &Self::Elem, rng: &mut dyn RngCore) -> Self::Elem {
        (**self).sample_below(bound, rng)
    }
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        (**self).elements()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
    fn format_element(&self, a: &Self::Elem) -> String {
        (**self).format_element(a)
    }
    fn parse_element(&self, text: &str) -> crate::Result<Self::Elem> {
        (**self).parse_element(text)
    }
}

impl<M: EffectMonoid + ?Sized> EffectMonoid for &M {
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).product(a, b)
    }
    fn is_idempotent(&self, p: &Self::Elem) -> bool {
        (**self).is_idempotent(p)
    }
}

/// `a ⊖ b`, failing when `b ≰ a`.
pub fn ominus<M: EffectAlgebra>(m: &M, a: &M::Elem, b: &M::Elem) -> crate::Result<M::Elem> {
    if !m.leq(b, a) {
        return Err(crate::Error::NotComparable(format!(
            "{} is not below {}",
            m.format_element(b),
            m.format_element(a)
        )));
    }
    m.ominus(a, b).ok_or_else(|| {
        crate::Error::NotComparable(format!(
            "no difference {} ⊖ {}",
            m.format_element(a),
            m.format_element(b)
        ))
    })
}

/// The `n`-fold sum `a ⊎ … ⊎ a`, or `None` as soon as a partial sum is undefined.
pub fn nfold<M: EffectAlgebra>(m: &M, a: &M::Elem, n: u64) -> Option<M::Elem> {
    let mut acc = m.zero();
    for _ in 0..n {
        acc = m.sum(&acc, a)?;
    }
    Some(acc)
}
