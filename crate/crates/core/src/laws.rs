//! The law suite: identities every effect monoid satisfies, checked on a
//! model either exhaustively or on sampled tuples.
//!
//! Each law takes a tuple of raw elements and builds the inputs it needs from
//! them, e.g. an idempotent as `⌈x⌉` or a comparable pair as `(x·y, y)`, so
//! conditional laws are exercised on numeric models as well. Every law draws
//! from its own random stream, so adding a law never perturbs the others.

use rand::{Rng, RngCore};
use serde::Serialize;

use crate::calculus::{normality_check, ConvexAction, DerivedOps};
use crate::check::{check_effect_monoid, stream_rng, CheckMode, Recorder, Violation};
use crate::model::EffectAlgebra;

/// Laws are run exhaustively only when they need at most this many tuples.
pub const EXHAUSTIVE_TUPLE_LIMIT: usize = 1 << 21;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawResult {
    pub law: &'static str,
    pub passed: bool,
    /// False when the model lacks what the law needs (e.g. a half of 1).
    pub applicable: bool,
    pub exhaustive: bool,
    pub checks: u64,
    pub violations: u64,
    /// The first violation, naming the failed sub-check.
    pub counterexample: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub model: String,
    pub mode: CheckMode,
    pub tolerance: f64,
    pub passed: bool,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }
}

struct Ctx<'a, M: DerivedOps> {
    m: &'a M,
    rec: Recorder,
    convex: Option<ConvexAction<'a, M>>,
    rng: &'a mut dyn RngCore,
}

impl<M: DerivedOps> Ctx<'_, M> {
    fn check(&mut self, ok: bool, law: &str, xs: &[&M::Elem]) {
        let m = self.m;
        self.rec
            .check(ok, law, || xs.iter().map(|x| m.format_element(x)).collect());
    }

    fn eq(&self, a: &M::Elem, b: &M::Elem) -> bool {
        self.m.approx_eq(a, b)
    }

    /// Zero premises are judged at the square of the tolerance, so that a
    /// product within rounding of zero does not trigger the conclusion.
    fn is_zero_premise(&self, a: &M::Elem) -> bool {
        let t = self.m.tolerance();
        self.m.distance(a, &self.m.zero()) <= t * t
    }

    fn opt_eq(&self, a: &Option<M::Elem>, b: &Option<M::Elem>) -> bool {
        match (a, b) {
            (Some(a), Some(b)) => self.eq(a, b),
            (None, None) => true,
            _ => false,
        }
    }
}

type LawFn<M> = fn(&mut Ctx<'_, M>, &[<M as EffectAlgebra>::Elem]);

struct Law<M: DerivedOps> {
    name: &'static str,
    arity: usize,
    needs_half: bool,
    run: LawFn<M>,
}

fn product_complement_commutes<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    let ac = m.complement(a);
    let ok = c.eq(&m.product(a, &ac), &m.product(&ac, a));
    c.check(ok, "product-complement-commutes", &[a]);
}

fn idempotent_iff_orthogonal_to_complement<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    for p in [x[0].clone(), m.ceil(&x[0]), m.floor(&x[0])] {
        let lhs = m.is_idempotent(&p);
        let rhs = c.eq(&m.product(&p, &m.complement(&p)), &m.zero());
        c.check(lhs == rhs, "idempotent-iff-orthogonal-to-complement", &[&p]);
    }
}

fn idempotent_absorption<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let p = m.ceil(&x[0]);
    for a in [x[1].clone(), m.product(&p, &x[1])] {
        let left = c.eq(&m.product(&p, &a), &a);
        let right = c.eq(&m.product(&a, &p), &a);
        let below = m.leq(&a, &p);
        c.check(left == right && right == below, "idempotent-absorption", &[&p, &a]);
    }
}

fn idempotents_are_central<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    for p in [m.ceil(&x[0]), m.floor(&x[0])] {
        let a = &x[1];
        let ok = c.eq(&m.product(&p, a), &m.product(a, &p));
        c.check(ok, "idempotents-are-central", &[&p, a]);
    }
}

fn sum_below_idempotent<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let p = m.ceil(&x[0]);
    let a = m.product(&p, &x[1]);
    let b = m.product(&p, &m.complement(&x[1]));
    let b2 = m.product(&p, &x[2]);
    for b in [b, b2] {
        if let Some(s) = m.sum(&a, &b) {
            c.check(m.leq(&s, &p), "sum-below-idempotent", &[&p, &a, &b]);
        }
    }
}

fn archimedean<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    let zero = m.zero();
    let nilpotent = c.is_zero_premise(&m.product(a, a));
    c.check(!nilpotent || c.eq(a, &zero), "archimedean", &[a]);
    // On listed carriers every multiple of a defined up to n = size² means
    // all multiples are defined: the partial sums must have cycled.
    if let Some(all) = m.elements() {
        let limit = all.len().saturating_mul(all.len()) as u64;
        let mut seen: Vec<M::Elem> = Vec::new();
        let mut acc = zero.clone();
        let mut unbounded = true;
        for _ in 0..limit {
            if seen.iter().any(|s| c.eq(s, &acc)) {
                break;
            }
            seen.push(acc.clone());
            match m.sum(&acc, a) {
                Some(next) => acc = next,
                None => {
                    unbounded = false;
                    break;
                }
            }
        }
        if unbounded {
            c.check(c.eq(a, &zero), "archimedean", &[a]);
        }
    }
}

fn self_summable_product<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    let t = m.product(a, &m.complement(a));
    c.check(m.is_summable(&t, &t), "self-summable-product", &[a]);
}

fn complement_power_expansion<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    let ac = m.complement(a);
    let mut power = m.one();
    let mut acc = Some(m.zero());
    for _ in 1..=8 {
        acc = acc.and_then(|s| m.sum(&s, &m.product(&ac, &power)));
        power = m.product(&power, a);
        let ok = c.opt_eq(&acc, &Some(m.complement(&power)));
        c.check(ok, "complement-power-expansion", &[a]);
    }
}

fn floor_annihilates_complement<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    let f = m.floor(a);
    let ac = m.complement(a);
    let ok = c.eq(&m.product(&ac, &f), &m.zero()) && c.eq(&m.product(&f, &ac), &m.zero());
    c.check(ok, "floor-annihilates-complement", &[a]);
}

fn floor_absorbs<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    let f = m.floor(a);
    let ok = c.eq(&f, &m.product(&f, a)) && c.eq(&f, &m.product(a, &f));
    c.check(ok, "floor-absorbs", &[a]);
}

fn zero_product_with_sum<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let p = m.ceil(&x[0]);
    let a = m.product(&m.complement(&p), &x[1]);
    let b1 = m.product(&p, &x[2]);
    let b2 = m.product(&p, &m.complement(&x[2]));
    for (u, v) in [(&x[1], &x[2]), (&a, &b1)] {
        for w in [&b1, &b2] {
            if c.is_zero_premise(&m.product(u, v)) && c.is_zero_premise(&m.product(u, w)) {
                if let Some(s) = m.sum(v, w) {
                    let ok = c.eq(&m.product(u, &s), &m.zero());
                    c.check(ok, "zero-product-with-sum", &[u, v, w]);
                }
            }
        }
    }
}

fn zero_product_with_ceiling<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let p = m.ceil(&x[0]);
    let a = m.product(&m.complement(&p), &x[1]);
    let b = m.product(&p, &x[2]);
    for (u, v) in [(&x[1], &x[2]), (&a, &b)] {
        if c.is_zero_premise(&m.product(u, v)) {
            let ok = c.eq(&m.product(u, &m.ceil(v)), &m.zero());
            c.check(ok, "zero-product-with-ceiling", &[u, v]);
        }
    }
}

fn floor_is_greatest_idempotent_below<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    let f = m.floor(a);
    c.check(m.is_idempotent(&f) && m.leq(&f, a), "floor-is-greatest-idempotent-below", &[a]);
    for q in [m.floor(&x[1]), m.ceil(&x[1]), m.floor(&m.product(a, &x[1]))] {
        if m.leq(&q, a) {
            c.check(m.leq(&q, &f), "floor-is-greatest-idempotent-below", &[a, &q]);
        }
    }
}

fn ceil_is_least_idempotent_above<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    let u = m.ceil(a);
    c.check(m.is_idempotent(&u) && m.leq(a, &u), "ceil-is-least-idempotent-above", &[a]);
    let over = m.complement(&m.product(&m.complement(a), &x[1]));
    for q in [m.floor(&x[1]), m.ceil(&x[1]), m.ceil(&over)] {
        if m.leq(a, &q) {
            c.check(m.leq(&u, &q), "ceil-is-least-idempotent-above", &[a, &q]);
        }
    }
}

fn ceil_floor_duality<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    let ac = m.complement(a);
    let ok = c.eq(&m.complement(&m.ceil(a)), &m.floor(&ac))
        && c.eq(&m.complement(&m.floor(a)), &m.ceil(&ac));
    c.check(ok, "ceil-floor-duality", &[a]);
}

fn ceil_of_sum_is_join<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    let b = m.product(&m.complement(a), &x[1]);
    for b in [&x[1], &b] {
        if let Some(s) = m.sum(a, b) {
            let ok = c.eq(&m.ceil(&s), &m.join(&m.ceil(a), &m.ceil(b)));
            c.check(ok, "ceil-of-sum-is-join", &[a, b]);
        }
    }
}

fn meet_is_greatest_lower_bound<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let (a, b, l) = (&x[0], &x[1], &x[2]);
    let w = m.meet(a, b);
    c.check(m.leq(&w, a) && m.leq(&w, b), "meet-is-greatest-lower-bound", &[a, b]);
    for l in [l.clone(), m.product(&m.product(l, a), b)] {
        if m.leq(&l, a) && m.leq(&l, b) {
            c.check(m.leq(&l, &w), "meet-is-greatest-lower-bound", &[a, b, &l]);
        }
    }
    let j = m.join(a, b);
    c.check(m.leq(a, &j) && m.leq(b, &j), "join-is-least-upper-bound", &[a, b]);
    let over = m.complement(&m.product(&m.product(&m.complement(l), &m.complement(a)), &m.complement(b)));
    for u in [l.clone(), over] {
        if m.leq(a, &u) && m.leq(b, &u) {
            c.check(m.leq(&j, &u), "join-is-least-upper-bound", &[a, b, &u]);
        }
    }
}

fn sandwich_preserves_chain_limits<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let a = &x[0];
    // S₁ = a, S₂ₙ = Sₙ ⊎ Sₙ·(a⊥)ⁿ ascends to ⌈a⌉
    let mut chain = vec![a.clone()];
    let mut power = m.complement(a);
    for _ in 0..64 {
        let last = chain.last().expect("non-empty");
        let Some(next) = m.sum(last, &m.product(last, &power)) else {
            break;
        };
        let done = m.distance(&next, last) == 0.0;
        chain.push(next);
        power = m.product(&power, &power);
        if done {
            break;
        }
    }
    let limit = m.ceil(a);
    match normality_check(m, &chain, &limit, &x[1], &x[2]) {
        Ok(report) => c.rec.absorb(report),
        Err(_) => c.check(false, "sandwich-preserves-chain-limits", &[a]),
    }
}

fn division_laws<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let b = &x[1];
    let a = m.product(&x[0], b);
    let d = m.quotient(&a, b);
    c.check(c.eq(&m.product(&d, b), &a), "quotient-times-divisor", &[&a, b]);
    c.check(c.eq(&m.quotient(b, b), &m.ceil(b)), "self-quotient-is-ceiling", &[b]);
    if let Some(rest) = m.ominus(b, &a) {
        let a2 = m.product(&x[2], &rest);
        if let Some(s) = m.sum(&a, &a2) {
            let rhs = m.sum(&d, &m.quotient(&a2, b));
            let ok = c.opt_eq(&Some(m.quotient(&s, b)), &rhs);
            c.check(ok, "quotient-is-additive", &[&a, &a2, b]);
        }
    }
    let ab = m.product(&x[0], b);
    let ok = c.eq(&m.quotient(&ab, b), &m.product(&x[0], &m.ceil(b)));
    c.check(ok, "quotient-of-product", &[&x[0], b]);
}

fn complement_is_antitone<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let (a, b) = (&x[0], &x[1]);
    let lo = m.product(a, b);
    for (u, v) in [(a, b), (&lo, b)] {
        let ok = m.leq(u, v) == m.leq(&m.complement(v), &m.complement(u));
        c.check(ok, "complement-is-antitone", &[u, v]);
        let ok = m.is_summable(u, v) == m.leq(u, &m.complement(v));
        c.check(ok, "summable-iff-below-complement", &[u, v]);
    }
    let b2 = m.product(&m.complement(a), b);
    if let Some(s) = m.sum(a, &b2) {
        let ok = c.opt_eq(&m.ominus(&s, &b2), &Some(a.clone()));
        c.check(ok, "difference-cancels-sum", &[a, &b2]);
    }
}

fn scalar_bilinearity<M: DerivedOps>(c: &mut Ctx<'_, M>, x: &[M::Elem]) {
    let m = c.m;
    let lambda: f64 = c.rng.gen();
    let Some(act) = &c.convex else { return };
    let (a, b) = (&x[0], &x[1]);
    let whole = act.act(lambda, &m.product(a, b));
    let left = m.product(&act.act(lambda, a), b);
    let right = m.product(a, &act.act(lambda, b));
    let ok = c.eq(&whole, &left) && c.eq(&whole, &right);
    let l = m.format_element(&act.scalar(lambda));
    c.rec.check(ok, "scalar-bilinearity", || {
        vec![l, m.format_element(a), m.format_element(b)]
    });
}

fn catalogue<M: DerivedOps>() -> Vec<Law<M>> {
    macro_rules! law {
        ($name:literal, $arity:literal, $f:ident) => {
            Law { name: $name, arity: $arity, needs_half: false, run: $f::<M> as LawFn<M> }
        };
    }
    let mut laws = vec![
        law!("product-complement-commutes", 1, product_complement_commutes),
        law!("idempotent-iff-orthogonal-to-complement", 1, idempotent_iff_orthogonal_to_complement),
        law!("idempotent-absorption", 2, idempotent_absorption),
        law!("idempotents-are-central", 2, idempotents_are_central),
        law!("sum-below-idempotent", 3, sum_below_idempotent),
        law!("archimedean", 1, archimedean),
        law!("self-summable-product", 1, self_summable_product),
        law!("complement-power-expansion", 1, complement_power_expansion),
        law!("floor-annihilates-complement", 1, floor_annihilates_complement),
        law!("floor-absorbs", 1, floor_absorbs),
        law!("zero-product-with-sum", 3, zero_product_with_sum),
        law!("zero-product-with-ceiling", 3, zero_product_with_ceiling),
        law!("floor-is-greatest-idempotent-below", 2, floor_is_greatest_idempotent_below),
        law!("ceil-is-least-idempotent-above", 2, ceil_is_least_idempotent_above),
        law!("ceil-floor-duality", 1, ceil_floor_duality),
        law!("ceil-of-sum-is-join", 2, ceil_of_sum_is_join),
        law!("meet-join-bounds", 3, meet_is_greatest_lower_bound),
        law!("sandwich-preserves-chain-limits", 3, sandwich_preserves_chain_limits),
        law!("division", 3, division_laws),
        law!("order-duality", 2, complement_is_antitone),
    ];
    laws.push(Law {
        name: "scalar-bilinearity",
        arity: 2,
        needs_half: true,
        run: scalar_bilinearity::<M>,
    });
    laws
}

/// Names of the law groups in the order they run.
pub fn law_names<M: DerivedOps>() -> Vec<&'static str> {
    std::iter::once(AXIOMS)
        .chain(catalogue::<M>().iter().map(|l| l.name))
        .collect()
}

const AXIOMS: &str = "effect-monoid-axioms";

/// The effect monoid axioms themselves, which every other law presupposes.
fn axiom_group<M: DerivedOps>(
    m: &M,
    mode: CheckMode,
    listed: Option<usize>,
    fallback_samples: usize,
    seed: u64,
) -> LawResult {
    let small = listed
        .and_then(|n| n.checked_pow(3))
        .is_some_and(|t| t <= EXHAUSTIVE_TUPLE_LIMIT);
    let law_mode = match mode {
        CheckMode::Exhaustive if small => CheckMode::Exhaustive,
        CheckMode::Exhaustive => CheckMode::sampled(fallback_samples, seed),
        sampled => sampled,
    };
    let report = check_effect_monoid(m, law_mode).expect("listed models check exhaustively");
    LawResult {
        law: AXIOMS,
        passed: report.passed,
        applicable: true,
        exhaustive: law_mode == CheckMode::Exhaustive,
        checks: report.checks,
        violations: report.violation_count,
        counterexample: report.violations.first().cloned(),
    }
}

/// Runs every law. In exhaustive mode a law whose tuple count exceeds
/// [`EXHAUSTIVE_TUPLE_LIMIT`] falls back to `fallback_samples` samples.
pub fn laws_suite<M: DerivedOps>(
    m: &M,
    mode: CheckMode,
    fallback_samples: usize,
) -> LawReport {
    let elements = match mode {
        CheckMode::Exhaustive => m.elements(),
        CheckMode::Sampled { .. } => None,
    };
    let seed = match mode {
        CheckMode::Sampled { seed, .. } => seed,
        CheckMode::Exhaustive => 0,
    };
    let mut results = vec![axiom_group(m, mode, elements.as_ref().map(Vec::len), fallback_samples, seed)];
    for (index, law) in catalogue::<M>().into_iter().enumerate() {
        let mut rng = stream_rng(seed, 1000 + index as u64);
        let mut aux = stream_rng(seed, 2000 + index as u64);
        let convex = ConvexAction::new(m).ok();
        let applicable = !law.needs_half || convex.is_some();
        let tuples = elements
            .as_ref()
            .and_then(|els| els.len().checked_pow(law.arity as u32))
            .filter(|t| *t <= EXHAUSTIVE_TUPLE_LIMIT);
        let law_mode = if tuples.is_some() {
            CheckMode::Exhaustive
        } else {
            match mode {
                CheckMode::Sampled { count, seed } => CheckMode::sampled(count, seed),
                CheckMode::Exhaustive => CheckMode::sampled(fallback_samples, seed),
            }
        };
        let mut ctx = Ctx {
            m,
            rec: Recorder::new(law_mode),
            convex,
            rng: &mut aux,
        };
        if applicable {
            match (&elements, law_mode) {
                (Some(els), CheckMode::Exhaustive) => {
                    let mut idx = vec![0usize; law.arity];
                    'tuples: loop {
                        let xs: Vec<M::Elem> = idx.iter().map(|i| els[*i].clone()).collect();
                        (law.run)(&mut ctx, &xs);
                        for i in idx.iter_mut() {
                            *i += 1;
                            if *i < els.len() {
                                continue 'tuples;
                            }
                            *i = 0;
                        }
                        break;
                    }
                }
                (_, CheckMode::Sampled { count, .. }) => {
                    for _ in 0..count {
                        let xs: Vec<M::Elem> = (0..law.arity).map(|_| m.sample(&mut rng)).collect();
                        (law.run)(&mut ctx, &xs);
                    }
                }
                (None, CheckMode::Exhaustive) => unreachable!("exhaustive mode needs elements"),
            }
        }
        let report = ctx.rec.finish();
        results.push(LawResult {
            law: law.name,
            passed: report.passed,
            applicable,
            exhaustive: law_mode == CheckMode::Exhaustive,
            checks: report.checks,
            violations: report.violation_count,
            counterexample: report.violations.first().cloned(),
        });
    }
    LawReport {
        model: m.describe(),
        mode,
        tolerance: m.tolerance(),
        passed: results.iter().all(|r| r.passed),
        laws: results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{FiniteMonoid, FiniteStructure};
    use crate::models::{BooleanModel, Cx, Interval};

    fn assert_all_pass(report: &LawReport) {
        for law in &report.laws {
            assert!(law.passed, "{} failed: {:?}", law.law, law.counterexample);
            assert!(law.checks > 0 || !law.applicable, "{} ran no checks", law.law);
        }
    }

    #[test]
    fn boolean_three_exhaustive() {
        let m = BooleanModel::new(3).unwrap();
        let r = laws_suite(&m, CheckMode::Exhaustive, 0);
        assert_all_pass(&r);
        assert!(r.laws.iter().all(|l| l.exhaustive));
        assert!(!r.law("scalar-bilinearity").unwrap().applicable);
    }

    #[test]
    fn interval_sampled() {
        let r = laws_suite(&Interval::new(), CheckMode::sampled(2000, 1), 0);
        assert_all_pass(&r);
    }

    #[test]
    fn function_sampled() {
        let r = laws_suite(&Cx::new(4), CheckMode::sampled(2000, 1), 0);
        assert_all_pass(&r);
    }

    #[test]
    fn corrupted_associativity_is_caught() {
        let mut s = FiniteStructure::boolean(2);
        // 1·2 = 1 instead of 0 breaks the order of the idempotents
        s.product.as_mut().unwrap()[1][2] = 1;
        let m = FiniteMonoid::new(s).unwrap();
        let r = laws_suite(&m, CheckMode::Exhaustive, 0);
        assert!(!r.passed);
        let failing: Vec<_> = r.laws.iter().filter(|l| !l.passed).collect();
        assert!(failing.iter().all(|l| l.counterexample.is_some()));
    }

    #[test]
    fn deterministic_given_seed() {
        let a = laws_suite(&Cx::new(2), CheckMode::sampled(300, 9), 0);
        let b = laws_suite(&Cx::new(2), CheckMode::sampled(300, 9), 0);
        assert_eq!(a, b);
    }
}
