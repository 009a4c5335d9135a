//! Concrete effect monoids and the direct-sum and corner constructions.

mod boolean;
mod corner;
mod direct_sum;
mod dynamic;
mod function;
mod interval;
mod selector;

use num_rational::BigRational;

use crate::check::{AxiomReport, CheckMode};
use crate::model::EffectMonoid;
use crate::morphism::check_corner_embedding;
use crate::Result;

pub use boolean::{BooleanModel, ENUMERABLE_ATOMS};
pub use corner::CornerModel;
pub use direct_sum::DirectSumModel;
pub use dynamic::{AnyModel, Selected, Value};
pub use function::FunctionModel;
pub use interval::IntervalModel;
pub use selector::{parse_selector, parse_selector_monoid};

/// `[0,1]` in double precision.
pub type Interval = IntervalModel<f64>;
/// `[0,1]` in single precision.
pub type Interval32 = IntervalModel<f32>;
/// `[0,1] ∩ ℚ` with exact arithmetic.
pub type RationalInterval = IntervalModel<BigRational>;
/// `[0,1]^X` in double precision.
pub type Cx = FunctionModel<f64>;
pub type RationalCx = FunctionModel<BigRational>;

/// The corner `pM`; fails unless `p` is idempotent.
pub fn corner<M: EffectMonoid>(m: M, p: M::Elem) -> Result<CornerModel<M>> {
    CornerModel::new(m, p)
}

/// Verifies that `a ↦ (p·a, p⊥·a)` is an isomorphism onto `pM ⊕ p⊥M`.
pub fn corner_iso_check<M: EffectMonoid>(m: &M, p: &M::Elem, mode: CheckMode) -> Result<AxiomReport> {
    if !m.is_idempotent(p) {
        return Err(crate::Error::NotIdempotent(m.format_element(p)));
    }
    let family = [p.clone(), m.complement(p)];
    check_corner_embedding(m, &family, mode, true)
}

/// Splits on `sep` outside of parentheses and brackets.
pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EffectAlgebra;

    #[test]
    fn split_respects_nesting() {
        assert_eq!(split_top_level("[1,0],(0.5,1)", ','), vec!["[1,0]", "(0.5,1)"]);
        assert_eq!(split_top_level("a", ','), vec!["a"]);
    }

    #[test]
    fn indicator_corner() {
        let m = Cx::new(3);
        let c = corner(m.clone(), m.element(&[1.0, 1.0, 0.0])).unwrap();
        assert_eq!(c.one(), vec![1.0, 1.0, 0.0]);
        assert!(c.contains(&m.element(&[0.2, 0.7, 0.0])));
        assert!(!c.contains(&m.element(&[0.2, 0.7, 0.1])));
        assert_eq!(c.complement(&m.element(&[0.25, 1.0, 0.0])), vec![0.75, 0.0, 0.0]);
        assert!(corner(m.clone(), m.element(&[0.5, 1.0, 0.0])).is_err());
    }

    #[test]
    fn degenerate_corners() {
        let m = BooleanModel::new(2).unwrap();
        let whole = corner(m, m.one()).unwrap();
        assert_eq!(whole.elements().unwrap().len(), 4);
        let trivial = corner(m, 0).unwrap();
        assert_eq!(trivial.elements().unwrap(), vec![0]);
        assert_eq!(trivial.one(), trivial.zero());
    }

    #[test]
    fn boolean_corner_iso() {
        let m = BooleanModel::new(3).unwrap();
        let r = corner_iso_check(&m, &m.atom(1), CheckMode::Exhaustive).unwrap();
        assert!(r.passed, "{r:?}");
        let r = corner_iso_check(&m, &m.one(), CheckMode::Exhaustive).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn function_corner_iso_sampled() {
        let m = Cx::new(4);
        let p = m.element(&[1.0, 0.0, 1.0, 0.0]);
        let r = corner_iso_check(&m, &p, CheckMode::sampled(10_000, 3)).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(corner_iso_check(&m, &m.element(&[0.5, 0.0, 1.0, 0.0]), CheckMode::Exhaustive)
            .is_err());
    }
}
