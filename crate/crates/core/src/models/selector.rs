//! Model selector strings.
//!
//! ```text
//! sel := "boolean:" k | "interval" | "cx:" k | "file:" path
//!      | "sum:" sel "," sel | "corner:" sel "@" literal
//! ```
//!
//! A file path runs up to the next `,` or `@`; a corner literal runs up to
//! the next `,` or `@` outside parentheses and brackets.

use super::{AnyModel, BooleanModel, CornerModel, Cx, DirectSumModel, Interval, Selected};
use crate::finite::{load_structure, FiniteAlgebra, FiniteMonoid};
use crate::{Error, Result};

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Selector {
            selector: self.text.to_string(),
            reason: format!("{} (at offset {})", reason.into(), self.pos),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, prefix: &str) -> bool {
        if self.rest().starts_with(prefix) {
            self.pos += prefix.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn count(&mut self) -> Result<u32> {
        let digits: &str = {
            let r = self.rest();
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            &r[..end]
        };
        let n = digits.parse().map_err(|_| self.err("expected a count"))?;
        self.pos += digits.len();
        Ok(n)
    }

    /// Consumes up to the next `,` or `@`, optionally ignoring nested ones.
    fn token(&mut self, nested: bool) -> &'a str {
        let r = self.rest();
        let mut depth = 0i32;
        let mut end = r.len();
        for (i, c) in r.char_indices() {
            match c {
                '(' | '[' if nested => depth += 1,
                ')' | ']' if nested => depth -= 1,
                ',' | '@' if depth == 0 => {
                    end = i;
                    break;
                }
                _ => {}
            }
        }
        self.pos += end;
        &r[..end]
    }

    fn monoid(&mut self) -> Result<AnyModel> {
        let start = self.pos;
        match self.selected()? {
            Selected::Monoid(m) => Ok(m),
            Selected::Algebra(_) => {
                self.pos = start;
                Err(Error::MissingProduct)
            }
        }
    }

    fn selected(&mut self) -> Result<Selected> {
        if self.eat("boolean:") {
            let k = self.count()?;
            return Ok(Selected::Monoid(AnyModel::Boolean(BooleanModel::new(k)?)));
        }
        if self.eat("interval") {
            return Ok(Selected::Monoid(AnyModel::Interval(Interval::new())));
        }
        if self.eat("cx:") {
            let k = self.count()?;
            return Ok(Selected::Monoid(AnyModel::Function(Cx::new(k as usize))));
        }
        if self.eat("file:") {
            let path = self.token(false);
            if path.is_empty() {
                return Err(self.err("expected a file path"));
            }
            let bytes = std::fs::read(path)
                .map_err(|e| self.err(format!("cannot read `{path}`: {e}")))?;
            let structure = load_structure(&bytes)?;
            return Ok(if structure.product.is_some() {
                Selected::Monoid(AnyModel::Finite(FiniteMonoid::new(structure)?))
            } else {
                Selected::Algebra(FiniteAlgebra::new(structure)?)
            });
        }
        if self.eat("sum:") {
            let left = self.monoid()?;
            self.expect(',')?;
            let right = self.monoid()?;
            return Ok(Selected::Monoid(AnyModel::Sum(Box::new(DirectSumModel::new(
                left, right,
            )))));
        }
        if self.eat("corner:") {
            let base = self.monoid()?;
            self.expect('@')?;
            let literal = self.token(true);
            let p = crate::model::EffectAlgebra::parse_element(&base, literal)?;
            return Ok(Selected::Monoid(AnyModel::Corner(Box::new(CornerModel::new(
                base, p,
            )?))));
        }
        Err(self.err("unknown model"))
    }
}

/// Resolves a selector; structure files without a product give an algebra.
pub fn parse_selector(text: &str) -> Result<Selected> {
    let mut p = Parser { text, pos: 0 };
    let out = p.selected()?;
    if p.pos != text.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Resolves a selector that must denote an effect monoid.
pub fn parse_selector_monoid(text: &str) -> Result<AnyModel> {
    match parse_selector(text)? {
        Selected::Monoid(m) => Ok(m),
        Selected::Algebra(_) => Err(Error::MissingProduct),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EffectAlgebra;
    use crate::models::Value;

    #[test]
    fn simple_selectors() {
        assert_eq!(parse_selector_monoid("boolean:3").unwrap().describe(), "boolean:3");
        assert_eq!(parse_selector_monoid("interval").unwrap().describe(), "interval");
        assert_eq!(parse_selector_monoid("cx:4").unwrap().describe(), "cx:4");
    }

    #[test]
    fn nested_selectors() {
        let m = parse_selector_monoid("sum:boolean:1,cx:1").unwrap();
        assert_eq!(m.describe(), "sum:boolean:1,cx:1");
        let c = parse_selector_monoid("corner:cx:3@(1,1,0)").unwrap();
        assert_eq!(c.one(), Value::Tuple(vec![1.0, 1.0, 0.0]));
        let s = parse_selector_monoid("sum:corner:cx:2@(1,0),boolean:2").unwrap();
        assert_eq!(
            s.one(),
            Value::pair(Value::Tuple(vec![1.0, 0.0]), Value::Bits(3))
        );
    }

    #[test]
    fn selector_errors() {
        assert!(matches!(parse_selector("torus"), Err(Error::Selector { .. })));
        assert!(matches!(parse_selector("boolean:"), Err(Error::Selector { .. })));
        assert!(matches!(parse_selector("interval,"), Err(Error::Selector { .. })));
        assert!(matches!(
            parse_selector("corner:cx:2@(0.5,0)"),
            Err(Error::NotIdempotent(_))
        ));
        assert!(matches!(parse_selector("file:/nonexistent.json"), Err(Error::Selector { .. })));
    }
}
