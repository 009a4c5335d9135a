//! Runtime-selected models with a single element type.

use rand::RngCore;

use super::{BooleanModel, CornerModel, Cx, DirectSumModel, Interval};
use crate::calculus::DerivedOps;
use crate::decompose::{Class, Decomposable};
use crate::finite::{FiniteAlgebra, FiniteMonoid};
use crate::model::{EffectAlgebra, EffectMonoid};
use crate::Result;

/// An element of an [`AnyModel`].
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Bits(u64),
    Num(f64),
    Tuple(Vec<f64>),
    Pair(Box<Value>, Box<Value>),
    Index(usize),
}

impl Value {
    pub fn pair(l: Value, r: Value) -> Value {
        Value::Pair(Box::new(l), Box::new(r))
    }

    fn bits(&self) -> u64 {
        match self {
            Value::Bits(b) => *b,
            _ => mismatch("bit-vector", self),
        }
    }

    fn num(&self) -> f64 {
        match self {
            Value::Num(x) => *x,
            _ => mismatch("number", self),
        }
    }

    fn tuple(&self) -> Vec<f64> {
        match self {
            Value::Tuple(t) => t.clone(),
            _ => mismatch("tuple", self),
        }
    }

    fn index(&self) -> usize {
        match self {
            Value::Index(i) => *i,
            _ => mismatch("index", self),
        }
    }

    fn split(&self) -> (Value, Value) {
        match self {
            Value::Pair(l, r) => ((**l).clone(), (**r).clone()),
            _ => mismatch("pair", self),
        }
    }
}

fn mismatch(expected: &str, got: &Value) -> ! {
    panic!("expected a {expected} element, got {got:?}")
}

fn join_pair((l, r): (Value, Value)) -> Value {
    Value::pair(l, r)
}

/// A model chosen at runtime, e.g. from a selector string.
#[derive(Debug, Clone)]
pub enum AnyModel {
    Boolean(BooleanModel),
    Interval(Interval),
    Function(Cx),
    Finite(FiniteMonoid),
    Sum(Box<DirectSumModel<AnyModel, AnyModel>>),
    Corner(Box<CornerModel<AnyModel>>),
}

/// What a selector resolves to: a full monoid, or a structure file without a
/// product table.
#[derive(Debug, Clone)]
pub enum Selected {
    Monoid(AnyModel),
    Algebra(FiniteAlgebra),
}

// Runs `$body` with `$m` bound to the concrete model, `$to` converting a
// `&Value` into its element and `$from` converting back.
macro_rules! dispatch {
    ($self:expr, $m:ident, $to:ident, $from:ident => $body:expr) => {
        match $self {
            AnyModel::Boolean($m) => {
                let $to = |v: &Value| v.bits();
                let $from = Value::Bits;
                $body
            }
            AnyModel::Interval($m) => {
                let $to = |v: &Value| v.num();
                let $from = Value::Num;
                $body
            }
            AnyModel::Function($m) => {
                let $to = |v: &Value| v.tuple();
                let $from = Value::Tuple;
                $body
            }
            AnyModel::Finite($m) => {
                let $to = |v: &Value| v.index();
                let $from = Value::Index;
                $body
            }
            AnyModel::Sum($m) => {
                let $m = &**$m;
                let $to = |v: &Value| v.split();
                let $from = join_pair;
                $body
            }
            AnyModel::Corner($m) => {
                let $m = &**$m;
                let $to = |v: &Value| v.clone();
                let $from = |v: Value| v;
                $body
            }
        }
    };
}

impl AnyModel {
    /// Rebuilds the model with every numeric component using `eps` as its
    /// equality tolerance.
    pub fn with_tolerance(&self, eps: f64) -> Result<AnyModel> {
        Ok(match self {
            AnyModel::Interval(_) => AnyModel::Interval(Interval::with_tolerance(eps)),
            AnyModel::Function(m) => AnyModel::Function(Cx::with_tolerance(m.point_count(), eps)),
            AnyModel::Sum(s) => AnyModel::Sum(Box::new(DirectSumModel::new(
                s.left.with_tolerance(eps)?,
                s.right.with_tolerance(eps)?,
            ))),
            AnyModel::Corner(c) => AnyModel::Corner(Box::new(CornerModel::new(
                c.base().with_tolerance(eps)?,
                c.unit().clone(),
            )?)),
            other => other.clone(),
        })
    }

    /// Whether every element can be listed.
    pub fn is_enumerable(&self) -> bool {
        match self {
            AnyModel::Boolean(b) => b.atom_count() <= super::ENUMERABLE_ATOMS,
            AnyModel::Finite(_) => true,
            AnyModel::Interval(_) | AnyModel::Function(_) => false,
            AnyModel::Sum(s) => s.left.is_enumerable() && s.right.is_enumerable(),
            AnyModel::Corner(c) => c.base().is_enumerable(),
        }
    }
}

impl EffectAlgebra for AnyModel {
    type Elem = Value;

    fn zero(&self) -> Value {
        dispatch!(self, m, _to, from => from(m.zero()))
    }
    fn one(&self) -> Value {
        dispatch!(self, m, _to, from => from(m.one()))
    }
    fn sum(&self, a: &Value, b: &Value) -> Option<Value> {
        dispatch!(self, m, to, from => m.sum(&to(a), &to(b)).map(from))
    }
    fn is_summable(&self, a: &Value, b: &Value) -> bool {
        dispatch!(self, m, to, _from => m.is_summable(&to(a), &to(b)))
    }
    fn complement(&self, a: &Value) -> Value {
        dispatch!(self, m, to, from => from(m.complement(&to(a))))
    }
    fn leq(&self, a: &Value, b: &Value) -> bool {
        dispatch!(self, m, to, _from => m.leq(&to(a), &to(b)))
    }
    fn ominus(&self, a: &Value, b: &Value) -> Option<Value> {
        dispatch!(self, m, to, from => m.ominus(&to(a), &to(b)).map(from))
    }
    fn distance(&self, a: &Value, b: &Value) -> f64 {
        dispatch!(self, m, to, _from => m.distance(&to(a), &to(b)))
    }
    fn tolerance(&self) -> f64 {
        dispatch!(self, m, _to, _from => m.tolerance())
    }
    fn approx_eq(&self, a: &Value, b: &Value) -> bool {
        dispatch!(self, m, to, _from => m.approx_eq(&to(a), &to(b)))
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        dispatch!(self, m, _to, from => from(m.sample(rng)))
    }
    fn sample_below(&self, bound: &Value, rng: &mut dyn RngCore) -> Value {
        dispatch!(self, m, to, from => from(m.sample_below(&to(bound), rng)))
    }
    fn elements(&self) -> Option<Vec<Value>> {
        dispatch!(self, m, _to, from => m.elements().map(|xs| xs.into_iter().map(from).collect()))
    }
    fn describe(&self) -> String {
        dispatch!(self, m, _to, _from => m.describe())
    }
    fn format_element(&self, a: &Value) -> String {
        dispatch!(self, m, to, _from => m.format_element(&to(a)))
    }
    fn parse_element(&self, text: &str) -> Result<Value> {
        dispatch!(self, m, _to, from => m.parse_element(text).map(from))
    }
}

impl EffectMonoid for AnyModel {
    fn product(&self, a: &Value, b: &Value) -> Value {
        dispatch!(self, m, to, from => from(m.product(&to(a), &to(b))))
    }
    fn is_idempotent(&self, p: &Value) -> bool {
        dispatch!(self, m, to, _from => m.is_idempotent(&to(p)))
    }
}

impl DerivedOps for AnyModel {
    fn floor(&self, a: &Value) -> Value {
        dispatch!(self, m, to, from => from(m.floor(&to(a))))
    }
    fn ceil(&self, a: &Value) -> Value {
        dispatch!(self, m, to, from => from(m.ceil(&to(a))))
    }
    fn quotient(&self, a: &Value, b: &Value) -> Value {
        dispatch!(self, m, to, from => from(m.quotient(&to(a), &to(b))))
    }
    fn meet(&self, a: &Value, b: &Value) -> Value {
        dispatch!(self, m, to, from => from(m.meet(&to(a), &to(b))))
    }
    fn join(&self, a: &Value, b: &Value) -> Value {
        dispatch!(self, m, to, from => from(m.join(&to(a), &to(b))))
    }
    fn halve(&self, a: &Value) -> Option<Value> {
        dispatch!(self, m, to, from => m.halve(&to(a)).map(from))
    }
}

impl Decomposable for AnyModel {
    fn idempotent_elements(&self) -> Option<Vec<Value>> {
        dispatch!(self, m, _to, from => m.idempotent_elements().map(|xs| xs.into_iter().map(from).collect()))
    }
    fn is_boolean_element(&self, p: &Value) -> Option<bool> {
        dispatch!(self, m, to, _from => m.is_boolean_element(&to(p)))
    }
    fn registered_class(&self) -> Option<Class> {
        dispatch!(self, m, _to, _from => m.registered_class())
    }
}
