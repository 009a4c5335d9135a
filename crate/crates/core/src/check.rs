//! Axiom checkers for effect algebras and effect monoids.
//!
//! Finite models are checked exhaustively over all pairs and triples. Numeric
//! models are checked on sampled tuples: every round draws independent
//! elements plus a summable chain built with [`EffectAlgebra::sample_below`],
//! so that the conditional axioms are not vacuous.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::model::{EffectAlgebra, EffectMonoid};
use crate::{Error, Result};

/// How many violations a report keeps verbatim; the total is always counted.
pub const VIOLATION_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum CheckMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl CheckMode {
    pub fn sampled(count: usize, seed: u64) -> Self {
        CheckMode::Sampled { count, seed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub mode: CheckMode,
    pub checks: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    /// Merges another report's findings into this one.
    pub fn absorb(&mut self, other: AxiomReport) {
        self.checks += other.checks;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < VIOLATION_CAP {
                self.violations.push(v);
            }
        }
        self.passed = self.violation_count == 0;
    }
}

/// Accumulates check outcomes into an [`AxiomReport`].
#[derive(Debug)]
pub struct Recorder {
    mode: CheckMode,
    checks: u64,
    violation_count: u64,
    violations: Vec<Violation>,
}

impl Recorder {
    pub fn new(mode: CheckMode) -> Self {
        Recorder {
            mode,
            checks: 0,
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, axiom: &str, witness: impl FnOnce() -> Vec<String>) {
        self.checks += 1;
        if !ok {
            self.fail(axiom, witness());
        }
    }

    pub fn fail(&mut self, axiom: &str, witness: Vec<String>) {
        self.violation_count += 1;
        if self.violations.len() < VIOLATION_CAP {
            self.violations.push(Violation {
                axiom: axiom.to_string(),
                witness,
            });
        }
    }

    /// Folds a finished report into this one.
    pub fn absorb(&mut self, report: AxiomReport) {
        self.checks += report.checks;
        self.violation_count += report.violation_count;
        for v in report.violations {
            if self.violations.len() < VIOLATION_CAP {
                self.violations.push(v);
            }
        }
    }

    pub fn finish(self) -> AxiomReport {
        AxiomReport {
            passed: self.violation_count == 0,
            mode: self.mode,
            checks: self.checks,
            violation_count: self.violation_count,
            violations: self.violations,
        }
    }
}

/// Deterministic generator for a seed and a named stream.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn elements_or_err<M: EffectAlgebra>(m: &M) -> Result<Vec<M::Elem>> {
    m.elements().ok_or_else(|| Error::NotEnumerable(m.describe()))
}

/// Draws a triple `(a, b, c)` with `a ⊎ b` and `(a ⊎ b) ⊎ c` defined, as far
/// as the model's sampler allows.
pub(crate) fn summable_triple<M: EffectAlgebra>(
    m: &M,
    rng: &mut dyn RngCore,
) -> (M::Elem, M::Elem, M::Elem) {
    let a = m.sample(rng);
    let b = m.sample_below(&m.complement(&a), rng);
    let c = match m.sum(&a, &b) {
        Some(ab) => m.sample_below(&m.complement(&ab), rng),
        None => m.zero(),
    };
    (a, b, c)
}

fn fmt<M: EffectAlgebra>(m: &M, xs: &[&M::Elem]) -> Vec<String> {
    xs.iter().map(|x| m.format_element(x)).collect()
}

fn opt_eq<M: EffectAlgebra>(m: &M, a: &Option<M::Elem>, b: &Option<M::Elem>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => m.approx_eq(a, b),
        (None, None) => true,
        _ => false,
    }
}

fn ea_unary<M: EffectAlgebra>(m: &M, a: &M::Elem, rec: &mut Recorder, exhaustive: bool) {
    let zero = m.zero();
    let one = m.one();
    rec.check(
        opt_eq(m, &m.sum(a, &zero), &Some(a.clone())),
        "zero",
        || fmt(m, &[a]),
    );
    let ac = m.complement(a);
    rec.check(
        opt_eq(m, &m.sum(a, &ac), &Some(one.clone())),
        "complement",
        || fmt(m, &[a]),
    );
    rec.check(
        m.approx_eq(&m.complement(&ac), a),
        "complement-involution",
        || fmt(m, &[a]),
    );
    if !exhaustive {
        // uniqueness through the closed form 1 ⊖ a
        let diff = m.ominus(&one, a);
        rec.check(
            opt_eq(m, &diff, &Some(ac.clone())),
            "complement-uniqueness",
            || fmt(m, &[a]),
        );
    }
    if m.is_summable(a, &one) {
        rec.check(m.approx_eq(a, &zero), "positivity", || fmt(m, &[a]));
    }
}

fn ea_binary<M: EffectAlgebra>(m: &M, a: &M::Elem, b: &M::Elem, rec: &mut Recorder) {
    let ab = m.sum(a, b);
    let ba = m.sum(b, a);
    rec.check(opt_eq(m, &ab, &ba), "commutativity", || fmt(m, &[a, b]));
    if let Some(ab) = &ab {
        if m.approx_eq(ab, &m.one()) {
            rec.check(
                m.approx_eq(b, &m.complement(a)),
                "complement-uniqueness",
                || fmt(m, &[a, b]),
            );
        }
    }
}

fn ea_ternary<M: EffectAlgebra>(
    m: &M,
    a: &M::Elem,
    b: &M::Elem,
    c: &M::Elem,
    rec: &mut Recorder,
) {
    let Some(ab) = m.sum(a, b) else { return };
    let Some(ab_c) = m.sum(&ab, c) else { return };
    let ok = match m.sum(b, c) {
        Some(bc) => match m.sum(a, &bc) {
            Some(a_bc) => m.approx_eq(&a_bc, &ab_c),
            None => false,
        },
        None => false,
    };
    rec.check(ok, "associativity", || fmt(m, &[a, b, c]));
}

fn em_unary<M: EffectMonoid>(m: &M, a: &M::Elem, rec: &mut Recorder) {
    let one = m.one();
    rec.check(
        m.approx_eq(&m.product(a, &one), a) && m.approx_eq(&m.product(&one, a), a),
        "unit",
        || fmt(m, &[a]),
    );
}

fn em_ternary<M: EffectMonoid>(
    m: &M,
    a: &M::Elem,
    b: &M::Elem,
    c: &M::Elem,
    rec: &mut Recorder,
) {
    let lhs = m.product(a, &m.product(b, c));
    let rhs = m.product(&m.product(a, b), c);
    rec.check(m.approx_eq(&lhs, &rhs), "product-associativity", || {
        fmt(m, &[a, b, c])
    });

    let Some(bc) = m.sum(b, c) else { return };
    let left = m.sum(&m.product(a, b), &m.product(a, c));
    rec.check(
        left.as_ref()
            .is_some_and(|s| m.approx_eq(s, &m.product(a, &bc))),
        "left-distributivity",
        || fmt(m, &[a, b, c]),
    );
    let right = m.sum(&m.product(b, a), &m.product(c, a));
    rec.check(
        right
            .as_ref()
            .is_some_and(|s| m.approx_eq(s, &m.product(&bc, a))),
        "right-distributivity",
        || fmt(m, &[a, b, c]),
    );
}

fn run_checks<M, U, B, T>(m: &M, mode: CheckMode, mut unary: U, mut binary: B, mut ternary: T) -> Result<AxiomReport>
where
    M: EffectAlgebra,
    U: FnMut(&M::Elem, &mut Recorder, bool),
    B: FnMut(&M::Elem, &M::Elem, &mut Recorder),
    T: FnMut(&M::Elem, &M::Elem, &M::Elem, &mut Recorder),
{
    let mut rec = Recorder::new(mode);
    match mode {
        CheckMode::Exhaustive => {
            let all = elements_or_err(m)?;
            for a in &all {
                unary(a, &mut rec, true);
                for b in &all {
                    binary(a, b, &mut rec);
                    for c in &all {
                        ternary(a, b, c, &mut rec);
                    }
                }
            }
        }
        CheckMode::Sampled { count, seed } => {
            let mut rng = stream_rng(seed, 0);
            for _ in 0..count {
                let (a, b, c) = (m.sample(&mut rng), m.sample(&mut rng), m.sample(&mut rng));
                let (x, y, z) = summable_triple(m, &mut rng);
                for e in [&a, &x] {
                    unary(e, &mut rec, false);
                }
                binary(&a, &b, &mut rec);
                binary(&x, &y, &mut rec);
                // the closed-form complement as a uniqueness probe
                binary(&x, &m.complement(&x), &mut rec);
                ternary(&a, &b, &c, &mut rec);
                ternary(&x, &y, &z, &mut rec);
                ternary(&y, &z, &x, &mut rec);
                ternary(&z, &x, &y, &mut rec);
            }
        }
    }
    Ok(rec.finish())
}

/// Checks commutativity, zero, associativity (with its existence clauses),
/// uniqueness of complements and positivity.
pub fn check_effect_algebra<M: EffectAlgebra>(m: &M, mode: CheckMode) -> Result<AxiomReport> {
    run_checks(
        m,
        mode,
        |a, rec, exhaustive| ea_unary(m, a, rec, exhaustive),
        |a, b, rec| ea_binary(m, a, b, rec),
        |a, b, c, rec| ea_ternary(m, a, b, c, rec),
    )
}

/// The effect algebra axioms plus the unit laws, associativity of the product
/// and bi-additivity including the implied summability.
pub fn check_effect_monoid<M: EffectMonoid>(m: &M, mode: CheckMode) -> Result<AxiomReport> {
    run_checks(
        m,
        mode,
        |a, rec, exhaustive| {
            ea_unary(m, a, rec, exhaustive);
            em_unary(m, a, rec);
        },
        |a, b, rec| ea_binary(m, a, b, rec),
        |a, b, c, rec| {
            ea_ternary(m, a, b, c, rec);
            em_ternary(m, a, b, c, rec);
        },
    )
}

/// Exhaustive checks of a raw structure file, product included when present.
pub fn check_structure(
    s: &crate::finite::FiniteStructure,
) -> Result<(AxiomReport, Option<AxiomReport>)> {
    let algebra = crate::finite::FiniteAlgebra::new(s.clone())?;
    let ea = check_effect_algebra(&algebra, CheckMode::Exhaustive)?;
    let em = match &s.product {
        Some(_) => {
            let monoid = crate::finite::FiniteMonoid::new(s.clone())?;
            Some(check_effect_monoid(&monoid, CheckMode::Exhaustive)?)
        }
        None => None,
    };
    Ok((ea, em))
}
