use std::collections::BTreeMap;
use std::fmt;

use super::Term;
use crate::calculus::{self, DerivedOps};
use crate::model::{self, nfold};

/// Child indices from the root to a subterm.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermPath(pub Vec<usize>);

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalErrorKind {
    UnboundVariable(String),
    UndefinedSum,
    NotComparable,
    NoHalf,
}

/// A failed evaluation, located at the subterm that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub path: TermPath,
    pub subterm: String,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            EvalErrorKind::UnboundVariable(v) => write!(f, "unbound variable `{v}`")?,
            EvalErrorKind::UndefinedSum => f.write_str("undefined sum")?,
            EvalErrorKind::NotComparable => f.write_str("operands are not comparable")?,
            EvalErrorKind::NoHalf => f.write_str("the model has no half of the unit")?,
        }
        write!(f, " in `{}` at {}", self.subterm, self.path)
    }
}

impl std::error::Error for EvalError {}

/// Variable bindings for [`eval`].
#[derive(Debug, Clone)]
pub struct Environment<E> {
    bindings: BTreeMap<String, E>,
}

impl<E> Default for Environment<E> {
    fn default() -> Self {
        Environment { bindings: BTreeMap::new() }
    }
}

impl<E> Environment<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, value: E) -> &mut Self {
        self.bindings.insert(name.into(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&E> {
        self.bindings.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }
}

impl<E, S: Into<String>> FromIterator<(S, E)> for Environment<E> {
    fn from_iter<I: IntoIterator<Item = (S, E)>>(iter: I) -> Self {
        Environment {
            bindings: iter.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

struct Evaluator<'a, M: DerivedOps> {
    m: &'a M,
    env: &'a Environment<M::Elem>,
    path: Vec<usize>,
}

impl<M: DerivedOps> Evaluator<'_, M> {
    fn fail(&self, kind: EvalErrorKind, t: &Term) -> EvalError {
        EvalError {
            kind,
            path: TermPath(self.path.clone()),
            subterm: t.to_string(),
        }
    }

    fn child(&mut self, i: usize, t: &Term) -> Result<M::Elem, EvalError> {
        self.path.push(i);
        let v = self.go(t)?;
        self.path.pop();
        Ok(v)
    }

    fn two(&mut self, t: &Term, u: &Term) -> Result<(M::Elem, M::Elem), EvalError> {
        Ok((self.child(0, t)?, self.child(1, u)?))
    }

    fn go(&mut self, term: &Term) -> Result<M::Elem, EvalError> {
        let m = self.m;
        Ok(match term {
            Term::Var(v) => self
                .env
                .get(v)
                .cloned()
                .ok_or_else(|| self.fail(EvalErrorKind::UnboundVariable(v.clone()), term))?,
            Term::Zero => m.zero(),
            Term::One => m.one(),
            Term::Sum(t, u) => {
                let (a, b) = self.two(t, u)?;
                m.sum(&a, &b)
                    .ok_or_else(|| self.fail(EvalErrorKind::UndefinedSum, term))?
            }
            Term::Ominus(t, u) => {
                let (a, b) = self.two(t, u)?;
                model::ominus(m, &a, &b)
                    .map_err(|_| self.fail(EvalErrorKind::NotComparable, term))?
            }
            Term::Product(t, u) => {
                let (a, b) = self.two(t, u)?;
                m.product(&a, &b)
            }
            Term::Complement(t) => m.complement(&self.child(0, t)?),
            Term::Floor(t) => m.floor(&self.child(0, t)?),
            Term::Ceil(t) => m.ceil(&self.child(0, t)?),
            Term::Div(t, u) => {
                let (a, b) = self.two(t, u)?;
                calculus::divide(m, &a, &b)
                    .map_err(|_| self.fail(EvalErrorKind::NotComparable, term))?
            }
            Term::Meet(t, u) => {
                let (a, b) = self.two(t, u)?;
                m.meet(&a, &b)
            }
            Term::Join(t, u) => {
                let (a, b) = self.two(t, u)?;
                m.join(&a, &b)
            }
            Term::Nfold(t, k) => {
                let a = self.child(0, t)?;
                nfold(m, &a, *k).ok_or_else(|| self.fail(EvalErrorKind::UndefinedSum, term))?
            }
            Term::Scalar(r, t) => {
                let a = self.child(0, t)?;
                calculus::scalar_action(m, *r, &a)
                    .map_err(|_| self.fail(EvalErrorKind::NoHalf, term))?
            }
        })
    }
}

/// Evaluates `term` in `m` under `env`.
pub fn eval<M: DerivedOps>(
    term: &Term,
    env: &Environment<M::Elem>,
    m: &M,
) -> Result<M::Elem, EvalError> {
    Evaluator { m, env, path: Vec::new() }.go(term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::models::{BooleanModel, Interval};

    fn run(text: &str, binds: &[(&str, f64)]) -> Result<f64, EvalError> {
        let env: Environment<f64> = binds.iter().map(|(k, v)| (*k, *v)).collect();
        eval(&parse(text).unwrap(), &env, &Interval::new())
    }

    #[test]
    fn complement_completes_to_one() {
        assert_eq!(run("a + a'", &[("a", 0.3)]).unwrap(), 1.0);
    }

    #[test]
    fn quotient_times_divisor() {
        let v = run("div(a,b) * b", &[("a", 0.25), ("b", 0.5)]).unwrap();
        assert!((v - 0.25).abs() < 1e-12);
        assert!((run("div(a,b)", &[("a", 0.25), ("b", 0.5)]).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn overflowing_sum() {
        let e = run("a + b", &[("a", 0.6), ("b", 0.6)]).unwrap_err();
        assert_eq!(e.kind, EvalErrorKind::UndefinedSum);
        assert_eq!(e.path, TermPath(vec![]));
    }

    #[test]
    fn errors_carry_paths() {
        let e = run("a * (b - a)", &[("a", 0.6), ("b", 0.2)]).unwrap_err();
        assert_eq!(e.kind, EvalErrorKind::NotComparable);
        assert_eq!(e.path.to_string(), "root.1");
        assert_eq!(e.subterm, "b - a");
        let e = run("floor(c)", &[]).unwrap_err();
        assert_eq!(e.kind, EvalErrorKind::UnboundVariable("c".into()));
        assert_eq!(e.path.to_string(), "root.0");
        let e = run("div(a, b)", &[("a", 0.6), ("b", 0.2)]).unwrap_err();
        assert_eq!(e.kind, EvalErrorKind::NotComparable);
    }

    #[test]
    fn nfold_and_scalar() {
        assert!((run("nfold(a, 3)", &[("a", 0.25)]).unwrap() - 0.75).abs() < 1e-12);
        assert_eq!(run("nfold(a, 5)", &[("a", 0.25)]).unwrap_err().kind, EvalErrorKind::UndefinedSum);
        assert!((run("scalar(0.5, a)", &[("a", 0.5)]).unwrap() - 0.25).abs() < 1e-12);
        let b = BooleanModel::new(2).unwrap();
        let env: Environment<u64> = [("a", 1u64)].into_iter().collect();
        let e = eval(&parse("scalar(0.5, a)").unwrap(), &env, &b).unwrap_err();
        assert_eq!(e.kind, EvalErrorKind::NoHalf);
        assert_eq!(eval(&parse("a' * 1").unwrap(), &env, &b).unwrap(), 2);
    }
}
