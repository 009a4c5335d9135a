//! Idempotents, maximal orthogonal families and zero-divisor classification.

use serde::Serialize;

use crate::calculus::DerivedOps;
use crate::check::{AxiomReport, CheckMode, Recorder};
use crate::finite::FiniteMonoid;
use crate::model::EffectAlgebra;
use crate::models::{BooleanModel, CornerModel, DirectSumModel, FunctionModel, IntervalModel};
use crate::morphism::check_corner_embedding;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Largest point count whose `2^k` idempotents a function model lists.
pub const MAX_LISTED_POINTS: usize = 20;

/// Classification of an effect monoid by its zero divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Class {
    /// `0 = 1`.
    Trivial,
    /// `{0, 1}`.
    TwoElementBoolean,
    /// Isomorphic to `[0,1]`.
    UnitInterval,
    /// Some `a, b ≠ 0` with `a·b = 0`.
    HasZeroDivisors,
    /// No zero divisors, yet neither of the above; only tables violating the
    /// axioms end up here.
    Unclassified,
}

impl Class {
    pub fn label(self) -> &'static str {
        match self {
            Class::Trivial => "TRIVIAL",
            Class::TwoElementBoolean => "TWO_ELEMENT_BOOLEAN",
            Class::UnitInterval => "UNIT_INTERVAL",
            Class::HasZeroDivisors => "HAS_ZERO_DIVISORS",
            Class::Unclassified => "UNCLASSIFIED",
        }
    }
}

/// Models whose idempotents can be listed.
pub trait Decomposable: DerivedOps {
    /// Every idempotent. The default filters the listed carrier.
    fn idempotent_elements(&self) -> Option<Vec<Self::Elem>> {
        Some(
            self.elements()?
                .into_iter()
                .filter(|p| self.is_idempotent(p))
                .collect(),
        )
    }

    /// Whether every element below `p` is idempotent.
    fn is_boolean_element(&self, p: &Self::Elem) -> Option<bool> {
        Some(
            self.elements()?
                .iter()
                .filter(|b| self.leq(b, p))
                .all(|b| self.is_idempotent(b)),
        )
    }

    /// Class known from the model's construction, for models that cannot be
    /// searched exhaustively.
    fn registered_class(&self) -> Option<Class> {
        None
    }
}

impl Decomposable for BooleanModel {
    fn is_boolean_element(&self, _p: &u64) -> Option<bool> {
        Some(true)
    }
}

impl Decomposable for FiniteMonoid {}

impl<S: Scalar> Decomposable for IntervalModel<S> {
    fn idempotent_elements(&self) -> Option<Vec<S>> {
        Some(vec![S::zero(), S::one()])
    }
    fn is_boolean_element(&self, p: &S) -> Option<bool> {
        Some(self.approx_eq(p, &S::zero()))
    }
    fn registered_class(&self) -> Option<Class> {
        Some(Class::UnitInterval)
    }
}

impl<S: Scalar> Decomposable for FunctionModel<S> {
    fn idempotent_elements(&self) -> Option<Vec<Vec<S>>> {
        let k = self.point_count();
        (k <= MAX_LISTED_POINTS).then(|| (0..1u64 << k).map(|mask| self.indicator(mask)).collect())
    }
    fn is_boolean_element(&self, p: &Vec<S>) -> Option<bool> {
        // any point in the support carries the whole fibre [0,1]
        Some(self.approx_eq(p, &self.zero()))
    }
    fn registered_class(&self) -> Option<Class> {
        Some(match self.point_count() {
            0 => Class::Trivial,
            1 => Class::UnitInterval,
            _ => Class::HasZeroDivisors,
        })
    }
}

impl<L: Decomposable, R: Decomposable> Decomposable for DirectSumModel<L, R> {
    fn idempotent_elements(&self) -> Option<Vec<Self::Elem>> {
        let left = self.left.idempotent_elements()?;
        let right = self.right.idempotent_elements()?;
        Some(
            left.iter()
                .flat_map(|l| right.iter().map(move |r| (l.clone(), r.clone())))
                .collect(),
        )
    }
    fn is_boolean_element(&self, p: &Self::Elem) -> Option<bool> {
        Some(self.left.is_boolean_element(&p.0)? && self.right.is_boolean_element(&p.1)?)
    }
    fn registered_class(&self) -> Option<Class> {
        match (classify(&self.left).ok()?, classify(&self.right).ok()?) {
            (Class::Trivial, c) | (c, Class::Trivial) => Some(c),
            _ => Some(Class::HasZeroDivisors),
        }
    }
}

impl<M: Decomposable> Decomposable for CornerModel<M> {
    fn idempotent_elements(&self) -> Option<Vec<M::Elem>> {
        Some(
            self.base()
                .idempotent_elements()?
                .into_iter()
                .filter(|p| self.contains(p))
                .collect(),
        )
    }
    fn is_boolean_element(&self, p: &M::Elem) -> Option<bool> {
        self.base().is_boolean_element(p)
    }
}

/// The idempotents with their lattice tables and tags.
#[derive(Debug, Clone, Serialize)]
pub struct IdempotentInventory<E> {
    #[serde(skip)]
    pub elements: Vec<E>,
    pub idempotents: Vec<String>,
    /// Index of `p ∧ q` in `idempotents`, when it is one.
    pub meet: Vec<Vec<Option<usize>>>,
    pub join: Vec<Vec<Option<usize>>>,
    pub boolean: Vec<bool>,
    pub halvable: Vec<bool>,
    /// Distributivity, closure and `p·q = p∧q` over the inventory.
    pub lattice: AxiomReport,
}

fn not_enumerable<M: EffectAlgebra>(m: &M) -> Error {
    Error::NotEnumerable(m.describe())
}

/// Lists the idempotents and verifies that they form a Boolean algebra whose
/// meet is the product.
pub fn idempotents<M: Decomposable>(m: &M) -> Result<IdempotentInventory<M::Elem>> {
    let elements = m.idempotent_elements().ok_or_else(|| not_enumerable(m))?;
    let n = elements.len();
    let find = |x: &M::Elem| elements.iter().position(|p| m.approx_eq(p, x));
    let mut rec = Recorder::new(CheckMode::Exhaustive);
    let fmt = |xs: &[usize]| xs.iter().map(|i| m.format_element(&elements[*i])).collect::<Vec<_>>();

    let mut meet = vec![vec![None; n]; n];
    let mut join = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (&elements[i], &elements[j]);
            let pq = m.meet(p, q);
            rec.check(
                m.approx_eq(&m.product(p, q), &pq),
                "product-is-meet",
                || fmt(&[i, j]),
            );
            meet[i][j] = find(&pq);
            join[i][j] = find(&m.join(p, q));
            rec.check(
                meet[i][j].is_some() && join[i][j].is_some(),
                "lattice-closure",
                || fmt(&[i, j]),
            );
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = join[j][k].and_then(|jk| meet[i][jk]);
                let rhs = match (meet[i][j], meet[i][k]) {
                    (Some(a), Some(b)) => join[a][b],
                    _ => None,
                };
                rec.check(lhs.is_some() && lhs == rhs, "distributivity", || fmt(&[i, j, k]));
            }
        }
        let p = &elements[i];
        let pc = find(&m.complement(p));
        rec.check(
            pc.is_some_and(|c| meet[i][c].and_then(|x| find(&m.zero()).map(|z| x == z)) == Some(true)),
            "complemented",
            || fmt(&[i]),
        );
    }

    let mut boolean = Vec::with_capacity(n);
    let mut halvable = Vec::with_capacity(n);
    let zero = m.zero();
    for (i, p) in elements.iter().enumerate() {
        let b = m.is_boolean_element(p).ok_or_else(|| not_enumerable(m))?;
        let h = m.halve(p).is_some();
        if b && h {
            rec.check(m.approx_eq(p, &zero), "boolean-and-halvable", || fmt(&[i]));
        }
        boolean.push(b);
        halvable.push(h);
    }

    Ok(IdempotentInventory {
        idempotents: elements.iter().map(|p| m.format_element(p)).collect(),
        elements,
        meet,
        join,
        boolean,
        halvable,
        lattice: rec.finish(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Tag {
    Halvable,
    Boolean,
}

/// The element `⊎` of a part of the family, and how many members it has.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartDescriptor {
    pub unit: String,
    pub members: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport<E> {
    #[serde(skip)]
    pub members: Vec<E>,
    pub family: Vec<String>,
    pub tags: Vec<Tag>,
    /// Set by [`decompose`]; [`maximal_family`] alone leaves it `false`.
    pub embedding_verified: bool,
    /// Whether the embedding check also covered surjectivity.
    pub surjectivity_checked: bool,
    pub violations: Vec<crate::check::Violation>,
    pub boolean_part: PartDescriptor,
    pub convex_part: PartDescriptor,
}

/// A maximal set of nonzero pairwise orthogonal idempotents, halvable ones
/// chosen first.
///
/// Candidates are scanned halvable first, then by the number of idempotents
/// below them, then in listing order; the family is reported in listing
/// order.
pub fn maximal_family<M: Decomposable>(m: &M) -> Result<DecompositionReport<M::Elem>> {
    let inv = idempotents(m)?;
    let els = &inv.elements;
    let zero = m.zero();
    let nonzero: Vec<usize> = (0..els.len()).filter(|i| !m.approx_eq(&els[*i], &zero)).collect();
    let rank = |i: usize| nonzero.iter().filter(|j| m.leq(&els[**j], &els[i])).count();
    let mut order = nonzero.clone();
    order.sort_by_key(|i| (!inv.halvable[*i], rank(*i), *i));

    let orthogonal = |i: usize, j: usize| m.approx_eq(&m.product(&els[i], &els[j]), &zero);
    let mut chosen: Vec<usize> = Vec::new();
    for pass_halvable in [true, false] {
        for &i in &order {
            if pass_halvable && !inv.halvable[i] {
                continue;
            }
            if !chosen.contains(&i) && chosen.iter().all(|&j| orthogonal(i, j)) {
                chosen.push(i);
            }
        }
    }
    chosen.sort_unstable();

    let mut rec = Recorder::new(CheckMode::Exhaustive);
    let fmt = |i: usize| vec![m.format_element(&els[i])];
    for (a, &i) in chosen.iter().enumerate() {
        for &j in &chosen[a + 1..] {
            rec.check(orthogonal(i, j), "orthogonality", || vec![fmt(i)[0].clone(), fmt(j)[0].clone()]);
        }
    }
    for &i in &nonzero {
        if !chosen.contains(&i) {
            rec.check(!chosen.iter().all(|&j| orthogonal(i, j)), "maximality", || fmt(i));
        }
    }
    let mut tags = Vec::with_capacity(chosen.len());
    for &i in &chosen {
        if inv.halvable[i] {
            tags.push(Tag::Halvable);
        } else {
            rec.check(inv.boolean[i], "boolean-tag", || fmt(i));
            tags.push(Tag::Boolean);
        }
    }
    let total = chosen
        .iter()
        .try_fold(m.zero(), |acc, &i| m.sum(&acc, &els[i]));
    rec.check(
        total.as_ref().is_some_and(|t| m.approx_eq(t, &m.one())),
        "completeness",
        || chosen.iter().map(|&i| fmt(i)[0].clone()).collect(),
    );
    let mut lattice = inv.lattice.clone();
    lattice.absorb(rec.finish());

    let part = |tag: Tag| {
        let picked: Vec<usize> = chosen
            .iter()
            .zip(&tags)
            .filter(|(_, t)| **t == tag)
            .map(|(i, _)| *i)
            .collect();
        let unit = picked
            .iter()
            .try_fold(m.zero(), |acc, &i| m.sum(&acc, &els[i]))
            .map(|u| m.format_element(&u))
            .unwrap_or_else(|| "undefined".into());
        PartDescriptor {
            unit,
            members: picked.len(),
        }
    };

    Ok(DecompositionReport {
        members: chosen.iter().map(|&i| els[i].clone()).collect(),
        family: chosen.iter().map(|&i| m.format_element(&els[i])).collect(),
        boolean_part: part(Tag::Boolean),
        convex_part: part(Tag::Halvable),
        tags,
        embedding_verified: false,
        surjectivity_checked: false,
        violations: lattice.violations,
    })
}

/// Verifies `a ↦ (a·e)ₑ` for the report's family. Exhaustive checks also
/// verify surjectivity, which finite models are expected to satisfy.
pub fn embed_check<M: Decomposable>(
    m: &M,
    report: &DecompositionReport<M::Elem>,
    mode: CheckMode,
) -> Result<AxiomReport> {
    check_corner_embedding(m, &report.members, mode, mode == CheckMode::Exhaustive)
}

/// [`maximal_family`] followed by [`embed_check`].
pub fn decompose<M: Decomposable>(m: &M, mode: CheckMode) -> Result<DecompositionReport<M::Elem>> {
    let mut report = maximal_family(m)?;
    let family_ok = report.violations.is_empty();
    let emb = embed_check(m, &report, mode)?;
    report.embedding_verified = family_ok && emb.passed;
    report.surjectivity_checked = mode == CheckMode::Exhaustive;
    for v in emb.violations {
        if report.violations.len() < crate::check::VIOLATION_CAP {
            report.violations.push(v);
        }
    }
    Ok(report)
}

/// A pair `a, b ≠ 0` with `a·b = 0`, searched over the listed carrier.
pub fn zero_divisor<M: Decomposable>(m: &M) -> Result<Option<(M::Elem, M::Elem)>> {
    let all = m.elements().ok_or_else(|| not_enumerable(m))?;
    let zero = m.zero();
    let nonzero: Vec<&M::Elem> = all.iter().filter(|a| !m.approx_eq(a, &zero)).collect();
    for a in &nonzero {
        for b in &nonzero {
            if m.approx_eq(&m.product(a, b), &zero) {
                return Ok(Some(((*a).clone(), (*b).clone())));
            }
        }
    }
    Ok(None)
}

/// Exhaustive zero-divisor search on listed models, declared metadata
/// otherwise.
pub fn classify<M: Decomposable>(m: &M) -> Result<Class> {
    let Some(all) = m.elements() else {
        return m.registered_class().ok_or_else(|| not_enumerable(m));
    };
    if zero_divisor(m)?.is_some() {
        return Ok(Class::HasZeroDivisors);
    }
    Ok(match all.len() {
        1 => Class::Trivial,
        2 => Class::TwoElementBoolean,
        _ => Class::Unclassified,
    })
}

/// Whether a finite monoid is a Boolean algebra: all elements idempotent and
/// `2ᵏ` elements for `k` atoms.
pub fn is_finite_boolean<M: Decomposable>(m: &M) -> Result<bool> {
    let all = m.elements().ok_or_else(|| not_enumerable(m))?;
    if !all.iter().all(|a| m.is_idempotent(a)) {
        return Ok(false);
    }
    let idem = m.idempotent_elements().ok_or_else(|| not_enumerable(m))?;
    let zero = m.zero();
    let atoms = idem
        .iter()
        .filter(|p| !m.approx_eq(p, &zero))
        .filter(|p| {
            idem.iter()
                .all(|q| !m.leq(q, p) || m.approx_eq(q, &zero) || m.approx_eq(q, p))
        })
        .count();
    Ok(atoms < usize::BITS as usize && all.len() == 1 << atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteStructure;
    use crate::models::{Cx, Interval};

    #[test]
    fn boolean_inventory() {
        let m = BooleanModel::new(2).unwrap();
        let inv = idempotents(&m).unwrap();
        assert_eq!(inv.elements.len(), 4);
        assert!(inv.boolean.iter().all(|b| *b));
        assert!(inv.lattice.passed, "{:?}", inv.lattice);
    }

    #[test]
    fn function_inventory() {
        let m = Cx::new(2);
        let inv = idempotents(&m).unwrap();
        assert_eq!(inv.idempotents, vec!["(0,0)", "(1,0)", "(0,1)", "(1,1)"]);
        for i in 1..4 {
            assert!(inv.halvable[i] && !inv.boolean[i]);
        }
        assert!(inv.boolean[0] && inv.halvable[0]);
        assert!(inv.lattice.passed);
    }

    #[test]
    fn interval_inventory_and_class() {
        let m = Interval::new();
        assert_eq!(idempotents(&m).unwrap().elements, vec![0.0, 1.0]);
        assert_eq!(classify(&m).unwrap(), Class::UnitInterval);
    }

    #[test]
    fn mixed_direct_sum_family() {
        let m = DirectSumModel::new(BooleanModel::new(1).unwrap(), Cx::new(1));
        let r = maximal_family(&m).unwrap();
        assert_eq!(r.family, vec!["[0,(1)]", "[1,(0)]"]);
        assert_eq!(r.tags, vec![Tag::Halvable, Tag::Boolean]);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn boolean_atoms_family() {
        let m = BooleanModel::new(3).unwrap();
        let r = decompose(&m, CheckMode::Exhaustive).unwrap();
        assert_eq!(r.family, vec!["100", "010", "001"]);
        assert!(r.tags.iter().all(|t| *t == Tag::Boolean));
        assert!(r.embedding_verified);
        assert_eq!(r.boolean_part.unit, "111");
        assert_eq!(r.convex_part.members, 0);
    }

    #[test]
    fn trivial_model() {
        let s = FiniteStructure::boolean(0);
        let m = FiniteMonoid::new(s).unwrap();
        let r = decompose(&m, CheckMode::Exhaustive).unwrap();
        assert!(r.family.is_empty());
        assert!(r.embedding_verified);
        assert_eq!(classify(&m).unwrap(), Class::Trivial);
    }

    #[test]
    fn classification_of_small_boolean_models() {
        assert_eq!(classify(&BooleanModel::new(1).unwrap()).unwrap(), Class::TwoElementBoolean);
        assert_eq!(classify(&BooleanModel::new(2).unwrap()).unwrap(), Class::HasZeroDivisors);
        assert!(is_finite_boolean(&BooleanModel::new(3).unwrap()).unwrap());
    }

    #[test]
    fn function_embedding_sampled() {
        let m = Cx::new(3);
        let r = decompose(&m, CheckMode::sampled(10_000, 0)).unwrap();
        assert_eq!(r.family, vec!["(1,0,0)", "(0,1,0)", "(0,0,1)"]);
        assert!(r.embedding_verified, "{:?}", r.violations);
        let i = decompose(&Interval::new(), CheckMode::sampled(1000, 0)).unwrap();
        assert_eq!(i.family, vec!["1"]);
        assert!(i.embedding_verified);
    }
}
