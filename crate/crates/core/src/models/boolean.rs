use rand::{Rng, RngCore};

use crate::model::{EffectAlgebra, EffectMonoid};
use crate::{Error, Result};

/// The Boolean algebra of subsets of `atom_count` atoms, as bit-vectors.
///
/// Literals are bit-strings whose `i`-th character is atom `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BooleanModel {
    atoms: u32,
}

/// Largest atom count for which [`EffectAlgebra::elements`] lists the carrier.
pub const ENUMERABLE_ATOMS: u32 = 16;

impl BooleanModel {
    pub fn new(atom_count: u32) -> Result<Self> {
        if atom_count > 63 {
            return Err(Error::Selector {
                selector: format!("boolean:{atom_count}"),
                reason: "at most 63 atoms".into(),
            });
        }
        Ok(BooleanModel { atoms: atom_count })
    }

    pub fn atom_count(&self) -> u32 {
        self.atoms
    }

    pub fn mask(&self) -> u64 {
        (1u64 << self.atoms) - 1
    }

    pub fn atom(&self, i: u32) -> u64 {
        assert!(i < self.atoms);
        1 << i
    }
}

impl EffectAlgebra for BooleanModel {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.mask()
    }
    fn sum(&self, a: &u64, b: &u64) -> Option<u64> {
        (a & b == 0).then_some(a | b)
    }
    fn complement(&self, a: &u64) -> u64 {
        !a & self.mask()
    }
    fn leq(&self, a: &u64, b: &u64) -> bool {
        a & !b == 0
    }
    fn ominus(&self, a: &u64, b: &u64) -> Option<u64> {
        self.leq(b, a).then_some(a & !b)
    }
    fn distance(&self, a: &u64, b: &u64) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen::<u64>() & self.mask()
    }
    fn sample_below(&self, bound: &u64, rng: &mut dyn RngCore) -> u64 {
        rng.gen::<u64>() & bound
    }
    fn elements(&self) -> Option<Vec<u64>> {
        (self.atoms <= ENUMERABLE_ATOMS).then(|| (0..=self.mask()).collect())
    }
    fn describe(&self) -> String {
        format!("boolean:{}", self.atoms)
    }
    fn format_element(&self, a: &u64) -> String {
        (0..self.atoms)
            .map(|i| if a >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
    fn parse_element(&self, text: &str) -> Result<u64> {
        let text = text.trim();
        let bad = || Error::ElementLiteral {
            literal: text.to_string(),
            model: self.describe(),
        };
        if text.len() != self.atoms as usize {
            return Err(bad());
        }
        text.chars().enumerate().try_fold(0u64, |acc, (i, c)| match c {
            '0' => Ok(acc),
            '1' => Ok(acc | 1 << i),
            _ => Err(bad()),
        })
    }
}

impl EffectMonoid for BooleanModel {
    fn product(&self, a: &u64, b: &u64) -> u64 {
        a & b
    }
    fn is_idempotent(&self, _p: &u64) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        let m = BooleanModel::new(3).unwrap();
        assert_eq!(m.parse_element("100").unwrap(), 1);
        assert_eq!(m.format_element(&0b110), "011");
        assert!(m.parse_element("10").is_err());
        assert!(m.parse_element("1x0").is_err());
    }

    #[test]
    fn sums_need_disjoint_support() {
        let m = BooleanModel::new(2).unwrap();
        assert_eq!(m.sum(&0b01, &0b10), Some(0b11));
        assert_eq!(m.sum(&0b01, &0b01), None);
        assert_eq!(m.complement(&0b01), 0b10);
        assert_eq!(m.ominus(&0b11, &0b01), Some(0b10));
    }
}
