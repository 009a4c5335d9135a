use rand::RngCore;

use crate::model::{EffectAlgebra, EffectMonoid};
use crate::scalar::{clamp_unit, one_minus, Scalar};
use crate::{Error, Result};

/// `[0,1]^X` for a finite discrete `X`: continuous functions into the unit
/// interval, all operations pointwise.
///
/// Literals are parenthesized, comma-separated coordinates: `(0.5,0,1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionModel<S> {
    points: usize,
    tolerance: S,
}

impl<S: Scalar> FunctionModel<S> {
    pub fn new(points: usize) -> Self {
        FunctionModel {
            points,
            tolerance: S::default_tolerance(),
        }
    }

    pub fn with_tolerance(points: usize, tolerance: S) -> Self {
        FunctionModel { points, tolerance }
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn tol(&self) -> &S {
        &self.tolerance
    }

    /// Builds an element from `f64` coordinates.
    pub fn element(&self, coords: &[f64]) -> Vec<S> {
        assert_eq!(coords.len(), self.points);
        coords
            .iter()
            .map(|c| S::from_f64(*c).expect("representable scalar"))
            .collect()
    }

    /// Indicator of the set of points whose bit is set in `mask`.
    pub fn indicator(&self, mask: u64) -> Vec<S> {
        (0..self.points)
            .map(|i| if mask >> i & 1 == 1 { S::one() } else { S::zero() })
            .collect()
    }

    fn map2(&self, a: &[S], b: &[S], f: impl Fn(&S, &S) -> S) -> Vec<S> {
        a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
    }
}

impl<S: Scalar> EffectAlgebra for FunctionModel<S> {
    type Elem = Vec<S>;

    fn zero(&self) -> Vec<S> {
        vec![S::zero(); self.points]
    }
    fn one(&self) -> Vec<S> {
        vec![S::one(); self.points]
    }
    fn sum(&self, a: &Vec<S>, b: &Vec<S>) -> Option<Vec<S>> {
        let bound = S::one() + self.tolerance.clone();
        let s = self.map2(a, b, |x, y| x.clone() + y.clone());
        s.iter()
            .all(|v| *v <= bound)
            .then(|| s.into_iter().map(|v| v.min_of(S::one())).collect())
    }
    fn complement(&self, a: &Vec<S>) -> Vec<S> {
        a.iter().map(|x| clamp_unit(one_minus(x))).collect()
    }
    fn leq(&self, a: &Vec<S>, b: &Vec<S>) -> bool {
        a.iter()
            .zip(b)
            .all(|(x, y)| *x <= y.clone() + self.tolerance.clone())
    }
    fn ominus(&self, a: &Vec<S>, b: &Vec<S>) -> Option<Vec<S>> {
        self.leq(b, a).then(|| {
            self.map2(a, b, |x, y| (x.clone() - y.clone()).max_of(S::zero()))
        })
    }
    fn distance(&self, a: &Vec<S>, b: &Vec<S>) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.abs_diff(y).as_f64())
            .fold(0.0, f64::max)
    }
    fn tolerance(&self) -> f64 {
        self.tolerance.as_f64()
    }
    fn approx_eq(&self, a: &Vec<S>, b: &Vec<S>) -> bool {
        a.iter().zip(b).all(|(x, y)| x.abs_diff(y) <= self.tolerance)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Vec<S> {
        (0..self.points).map(|_| S::sample_unit(rng)).collect()
    }
    fn sample_below(&self, bound: &Vec<S>, rng: &mut dyn RngCore) -> Vec<S> {
        bound
            .iter()
            .map(|b| b.clone() * S::sample_unit(rng))
            .collect()
    }
    fn describe(&self) -> String {
        format!("cx:{}", self.points)
    }
    fn format_element(&self, a: &Vec<S>) -> String {
        let inner: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        format!("({})", inner.join(","))
    }
    fn parse_element(&self, text: &str) -> Result<Vec<S>> {
        let bad = || Error::ElementLiteral {
            literal: text.to_string(),
            model: self.describe(),
        };
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let coords: Vec<S> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|c| {
                    S::parse_literal(c).filter(|v| *v >= S::zero() && *v <= S::one())
                })
                .collect::<Option<_>>()
                .ok_or_else(bad)?
        };
        if coords.len() != self.points {
            return Err(bad());
        }
        Ok(coords)
    }
}

impl<S: Scalar> EffectMonoid for FunctionModel<S> {
    fn product(&self, a: &Vec<S>, b: &Vec<S>) -> Vec<S> {
        self.map2(a, b, |x, y| x.clone() * y.clone())
    }
}
