//! Closed forms of the derived operations on the concrete models.

use super::DerivedOps;
use crate::finite::FiniteMonoid;
use crate::models::{BooleanModel, CornerModel, DirectSumModel, FunctionModel, IntervalModel};
use crate::scalar::{above_zero, at_one, clamp_unit, Scalar};

impl DerivedOps for BooleanModel {
    fn floor(&self, a: &u64) -> u64 {
        *a
    }
    fn ceil(&self, a: &u64) -> u64 {
        *a
    }
    fn quotient(&self, a: &u64, _b: &u64) -> u64 {
        *a
    }
    fn meet(&self, a: &u64, b: &u64) -> u64 {
        a & b
    }
    fn join(&self, a: &u64, b: &u64) -> u64 {
        a | b
    }
    fn halve(&self, a: &u64) -> Option<u64> {
        (*a == 0).then_some(0)
    }
}

fn scalar_floor<S: Scalar>(a: &S, tol: &S) -> S {
    if at_one(a, tol) {
        S::one()
    } else {
        S::zero()
    }
}

fn scalar_ceil<S: Scalar>(a: &S, tol: &S) -> S {
    if above_zero(a, tol) {
        S::one()
    } else {
        S::zero()
    }
}

fn scalar_quotient<S: Scalar>(a: &S, b: &S, tol: &S) -> S {
    if !above_zero(b, tol) {
        S::zero()
    } else {
        clamp_unit(a.clone() / b.clone())
    }
}

impl<S: Scalar> DerivedOps for IntervalModel<S> {
    fn floor(&self, a: &S) -> S {
        scalar_floor(a, self.tol())
    }
    fn ceil(&self, a: &S) -> S {
        scalar_ceil(a, self.tol())
    }
    fn quotient(&self, a: &S, b: &S) -> S {
        scalar_quotient(a, b, self.tol())
    }
    fn meet(&self, a: &S, b: &S) -> S {
        a.clone().min_of(b.clone())
    }
    fn join(&self, a: &S, b: &S) -> S {
        a.clone().max_of(b.clone())
    }
    fn halve(&self, a: &S) -> Option<S> {
        Some(a.clone() * S::half())
    }
}

impl<S: Scalar> DerivedOps for FunctionModel<S> {
    fn floor(&self, a: &Vec<S>) -> Vec<S> {
        a.iter().map(|x| scalar_floor(x, self.tol())).collect()
    }
    fn ceil(&self, a: &Vec<S>) -> Vec<S> {
        a.iter().map(|x| scalar_ceil(x, self.tol())).collect()
    }
    fn quotient(&self, a: &Vec<S>, b: &Vec<S>) -> Vec<S> {
        a.iter()
            .zip(b)
            .map(|(x, y)| scalar_quotient(x, y, self.tol()))
            .collect()
    }
    fn meet(&self, a: &Vec<S>, b: &Vec<S>) -> Vec<S> {
        a.iter().zip(b).map(|(x, y)| x.clone().min_of(y.clone())).collect()
    }
    fn join(&self, a: &Vec<S>, b: &Vec<S>) -> Vec<S> {
        a.iter().zip(b).map(|(x, y)| x.clone().max_of(y.clone())).collect()
    }
    fn halve(&self, a: &Vec<S>) -> Option<Vec<S>> {
        Some(a.iter().map(|x| x.clone() * S::half()).collect())
    }
}

impl<L: DerivedOps, R: DerivedOps> DerivedOps for DirectSumModel<L, R> {
    fn floor(&self, a: &Self::Elem) -> Self::Elem {
        (self.left.floor(&a.0), self.right.floor(&a.1))
    }
    fn ceil(&self, a: &Self::Elem) -> Self::Elem {
        (self.left.ceil(&a.0), self.right.ceil(&a.1))
    }
    fn quotient(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.left.quotient(&a.0, &b.0), self.right.quotient(&a.1, &b.1))
    }
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.left.meet(&a.0, &b.0), self.right.meet(&a.1, &b.1))
    }
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.left.join(&a.0, &b.0), self.right.join(&a.1, &b.1))
    }
    fn halve(&self, a: &Self::Elem) -> Option<Self::Elem> {
        Some((self.left.halve(&a.0)?, self.right.halve(&a.1)?))
    }
}

/// Inside `pM` every series term `a·(p·b⊥)ⁿ` equals `a·(b⊥)ⁿ`, so the base
/// model's operations restrict to the corner; the meet and join are
/// projected back below `p`.
impl<M: DerivedOps> DerivedOps for CornerModel<M> {
    fn floor(&self, a: &M::Elem) -> M::Elem {
        self.base().floor(a)
    }
    fn ceil(&self, a: &M::Elem) -> M::Elem {
        self.project(&self.base().ceil(a))
    }
    fn quotient(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        self.project(&self.base().quotient(a, b))
    }
    fn meet(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        self.project(&self.base().meet(a, b))
    }
    fn join(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        self.project(&self.base().join(a, b))
    }
    fn halve(&self, a: &M::Elem) -> Option<M::Elem> {
        self.base().halve(a).map(|h| self.project(&h))
    }
}

impl DerivedOps for FiniteMonoid {}
