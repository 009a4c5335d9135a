use super::DerivedOps;
use crate::model::nfold;
use crate::{Error, Result};

/// Number of binary digits of `λ` the action resolves.
pub const DYADIC_BITS: u32 = 53;

/// The action of the real unit interval induced by an element `h` with
/// `h ⊎ h = 1`.
///
/// The dyadic `m/2ⁿ` acts as `m·hⁿ`; a real `λ` acts through its binary
/// expansion `λ = Σ bᵢ 2⁻ⁱ`, i.e. as the increasing limit of dyadic partial
/// sums `⊎ { hⁱ : bᵢ = 1 }`.
#[derive(Debug, Clone)]
pub struct ConvexAction<'m, M: DerivedOps> {
    model: &'m M,
    // powers[i] = hⁱ for i in 0..=DYADIC_BITS
    powers: Vec<M::Elem>,
}

impl<'m, M: DerivedOps> ConvexAction<'m, M> {
    pub fn new(model: &'m M) -> Result<Self> {
        let one = model.one();
        let half = model.halve(&one).ok_or(Error::NoHalf)?;
        let mut powers = Vec::with_capacity(DYADIC_BITS as usize + 1);
        powers.push(one);
        for i in 1..=DYADIC_BITS as usize {
            powers.push(model.product(&powers[i - 1], &half));
        }
        Ok(ConvexAction { model, powers })
    }

    pub fn half(&self) -> &M::Elem {
        &self.powers[1]
    }

    /// `m·hⁿ`, or `None` if `m/2ⁿ > 1`.
    pub fn dyadic(&self, m: u64, n: u32) -> Option<M::Elem> {
        let unit = self.powers.get(n as usize)?;
        nfold(self.model, unit, m)
    }

    /// The element `λ̄ = λ·1`.
    pub fn scalar(&self, lambda: f64) -> M::Elem {
        let lambda = lambda.clamp(0.0, 1.0);
        let scaled = (lambda * (1u64 << DYADIC_BITS) as f64).floor() as u64;
        if scaled >= 1 << DYADIC_BITS {
            return self.model.one();
        }
        let mut acc = self.model.zero();
        for i in 1..=DYADIC_BITS {
            if scaled >> (DYADIC_BITS - i) & 1 == 1 {
                acc = self
                    .model
                    .sum(&acc, &self.powers[i as usize])
                    .unwrap_or_else(|| acc.clone());
            }
        }
        acc
    }

    /// `λ̄·a`.
    pub fn act(&self, lambda: f64, a: &M::Elem) -> M::Elem {
        self.model.product(&self.scalar(lambda), a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EffectAlgebra;
    use crate::models::{Cx, Interval};

    #[test]
    fn dyadic_representation_independence() {
        let m = Interval::new();
        let act = ConvexAction::new(&m).unwrap();
        assert_eq!(act.dyadic(3, 3), act.dyadic(6, 4));
        assert_eq!(act.dyadic(3, 3), Some(0.375));
        assert_eq!(act.dyadic(9, 3), None);
        assert_eq!(*act.half(), 0.5);
    }

    #[test]
    fn scalar_endpoints() {
        let m = Cx::new(2);
        let act = ConvexAction::new(&m).unwrap();
        assert_eq!(act.scalar(1.0), m.one());
        assert_eq!(act.scalar(0.0), m.zero());
        assert_eq!(act.scalar(0.75), vec![0.75, 0.75]);
    }
}
