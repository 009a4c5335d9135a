//! Terms over the effect monoid operations.
//!
//! ```text
//! sum     := product (("+" | "-") product)*
//! product := postfix ("*" postfix)*
//! postfix := atom "'"*
//! atom    := "0" | "1" | name | "(" sum ")"
//!          | ("floor" | "ceil") "(" sum ")"
//!          | ("div" | "meet" | "join") "(" sum "," sum ")"
//!          | "nfold" "(" sum "," integer ")"
//!          | "scalar" "(" decimal "," sum ")"
//! ```
//!
//! `-` is the partial difference `⊖` and `'` the complement.

mod eval;
mod parse;

use std::fmt;

pub use eval::{eval, Environment, EvalError, EvalErrorKind, TermPath};
pub use parse::{parse, ParseError};

/// Names that cannot be used as variables.
pub const KEYWORDS: [&str; 7] = ["floor", "ceil", "div", "meet", "join", "nfold", "scalar"];

#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Sum(Box<Term>, Box<Term>),
    Ominus(Box<Term>, Box<Term>),
    Product(Box<Term>, Box<Term>),
    Complement(Box<Term>),
    Floor(Box<Term>),
    Ceil(Box<Term>),
    Div(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Nfold(Box<Term>, u64),
    Scalar(f64, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    /// Immediate subterms, in the order used by [`TermPath`].
    pub fn children(&self) -> Vec<&Term> {
        use Term::*;
        match self {
            Var(_) | Zero | One => vec![],
            Complement(t) | Floor(t) | Ceil(t) | Nfold(t, _) | Scalar(_, t) => vec![t],
            Sum(t, u) | Ominus(t, u) | Product(t, u) | Div(t, u) | Meet(t, u) | Join(t, u) => {
                vec![t, u]
            }
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Free variables in order of first occurrence.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        if let Term::Var(v) = self {
            if !out.contains(&v.as_str()) {
                out.push(v);
            }
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    fn level(&self) -> u8 {
        match self {
            Term::Sum(..) | Term::Ominus(..) => 0,
            Term::Product(..) => 1,
            Term::Complement(_) => 2,
            _ => 3,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.level() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Term::Var(v) => f.write_str(v)?,
            Term::Zero => f.write_str("0")?,
            Term::One => f.write_str("1")?,
            Term::Sum(t, u) => infix(f, t, " + ", u, 0)?,
            Term::Ominus(t, u) => infix(f, t, " - ", u, 0)?,
            Term::Product(t, u) => infix(f, t, " * ", u, 1)?,
            Term::Complement(t) => {
                t.write(f, 2)?;
                f.write_str("'")?;
            }
            Term::Floor(t) => call(f, "floor", &[t])?,
            Term::Ceil(t) => call(f, "ceil", &[t])?,
            Term::Div(t, u) => call(f, "div", &[t, u])?,
            Term::Meet(t, u) => call(f, "meet", &[t, u])?,
            Term::Join(t, u) => call(f, "join", &[t, u])?,
            Term::Nfold(t, k) => {
                f.write_str("nfold(")?;
                t.write(f, 0)?;
                write!(f, ", {k})")?;
            }
            Term::Scalar(r, t) => {
                write!(f, "scalar({r}, ")?;
                t.write(f, 0)?;
                f.write_str(")")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn infix(f: &mut fmt::Formatter<'_>, t: &Term, op: &str, u: &Term, level: u8) -> fmt::Result {
    t.write(f, level)?;
    f.write_str(op)?;
    u.write(f, level + 1)
}

fn call(f: &mut fmt::Formatter<'_>, name: &str, args: &[&Term]) -> fmt::Result {
    f.write_str(name)?;
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        a.write(f, 0)?;
    }
    f.write_str(")")
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

pub fn pretty_print(t: &Term) -> String {
    t.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(t: Term) -> Box<Term> {
        Box::new(t)
    }

    #[test]
    fn minimal_parentheses() {
        let a = || b(Term::var("a"));
        let c = || b(Term::var("c"));
        let t = Term::Product(b(Term::Sum(a(), c())), c());
        assert_eq!(t.to_string(), "(a + c) * c");
        let t = Term::Sum(a(), b(Term::Sum(a(), c())));
        assert_eq!(t.to_string(), "a + (a + c)");
        let t = Term::Sum(b(Term::Sum(a(), c())), a());
        assert_eq!(t.to_string(), "a + c + a");
        let t = Term::Complement(b(Term::Product(a(), c())));
        assert_eq!(t.to_string(), "(a * c)'");
        let t = Term::Complement(b(Term::Complement(a())));
        assert_eq!(t.to_string(), "a''");
        let t = Term::Scalar(0.25, b(Term::Ominus(a(), c())));
        assert_eq!(t.to_string(), "scalar(0.25, a - c)");
    }

    #[test]
    fn variables_in_order() {
        let t = parse("meet(b, a) + b' * c").unwrap();
        assert_eq!(t.variables(), vec!["b", "a", "c"]);
        assert_eq!(t.depth(), 4);
    }
}
