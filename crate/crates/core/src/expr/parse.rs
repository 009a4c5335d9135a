use std::fmt;

use super::{Term, KEYWORDS};

/// A syntax error at byte `offset`, listing the tokens that would have been
/// accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at offset {}: found {}, expected one of {}",
            self.offset,
            self.found,
            self.expected.join(", ")
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Plus,
    Minus,
    Star,
    Quote,
    LParen,
    RParen,
    Comma,
    Invalid(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Quote => "`'`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Invalid(c) => format!("character `{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Vec<(Tok, usize)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'\'' => Tok::Quote,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'a'..=b'z' => {
                while i < bytes.len() && matches!(bytes[i], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push((Tok::Number(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                out.push((Tok::Invalid(ch), start));
                break;
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    out
}

const ATOM_START: [&str; 4] = ["`(`", "`0`", "`1`", "identifier"];
const CONTINUATION: [&str; 4] = ["`'`", "`*`", "`+`", "`-`"];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let mut expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        expected.sort();
        expected.dedup();
        ParseError {
            offset: self.offset(),
            found: self.peek().describe(),
            expected,
        }
    }

    /// Consumes `tok`, which closes a term; the error also lists the
    /// operators that could have continued it.
    fn close(&mut self, tok: Tok, label: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            let mut exp = CONTINUATION.to_vec();
            exp.push(label);
            Err(self.error(&exp))
        }
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut t = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    t = Term::Sum(Box::new(t), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    t = Term::Ominus(Box::new(t), Box::new(self.product()?));
                }
                _ => return Ok(t),
            }
        }
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut t = self.postfix()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = Term::Product(Box::new(t), Box::new(self.postfix()?));
        }
        Ok(t)
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Quote {
            self.bump();
            t = Term::Complement(Box::new(t));
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Number(n) if n == "0" => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::Number(n) if n == "1" => {
                self.bump();
                Ok(Term::One)
            }
            Tok::LParen => {
                self.bump();
                let t = self.sum()?;
                self.close(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Ident(name) if KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                self.call(&name)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::Var(name))
            }
            _ => Err(self.error(&ATOM_START)),
        }
    }

    fn open(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::LParen {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&["`(`"]))
        }
    }

    fn binary(&mut self) -> Result<(Box<Term>, Box<Term>), ParseError> {
        let t = self.sum()?;
        self.close(Tok::Comma, "`,`")?;
        let u = self.sum()?;
        self.close(Tok::RParen, "`)`")?;
        Ok((Box::new(t), Box::new(u)))
    }

    fn call(&mut self, name: &str) -> Result<Term, ParseError> {
        self.open()?;
        Ok(match name {
            "floor" | "ceil" => {
                let t = Box::new(self.sum()?);
                self.close(Tok::RParen, "`)`")?;
                if name == "floor" {
                    Term::Floor(t)
                } else {
                    Term::Ceil(t)
                }
            }
            "div" => {
                let (t, u) = self.binary()?;
                Term::Div(t, u)
            }
            "meet" => {
                let (t, u) = self.binary()?;
                Term::Meet(t, u)
            }
            "join" => {
                let (t, u) = self.binary()?;
                Term::Join(t, u)
            }
            "nfold" => {
                let t = self.sum()?;
                self.close(Tok::Comma, "`,`")?;
                let k = match self.peek() {
                    Tok::Number(n) => n.parse::<u64>().ok(),
                    _ => None,
                }
                .ok_or_else(|| self.error(&["nonnegative integer"]))?;
                self.bump();
                self.close_args()?;
                Term::Nfold(Box::new(t), k)
            }
            _ => {
                let r = match self.peek() {
                    Tok::Number(n) => n.parse::<f64>().ok().filter(|r| (0.0..=1.0).contains(r)),
                    _ => None,
                }
                .ok_or_else(|| self.error(&["decimal in [0,1]"]))?;
                self.bump();
                if *self.peek() != Tok::Comma {
                    return Err(self.error(&["`,`"]));
                }
                self.bump();
                let t = self.sum()?;
                self.close(Tok::RParen, "`)`")?;
                Term::Scalar(r, Box::new(t))
            }
        })
    }

    fn close_args(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&["`)`"]))
        }
    }
}

/// Parses a term; see the module documentation for the grammar.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(text), pos: 0 };
    let t = p.sum()?;
    p.close(Tok::End, "end of input")?;
    Ok(t)
}
