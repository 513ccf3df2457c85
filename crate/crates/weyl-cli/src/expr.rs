//! Expression parser and evaluator for the algebra grammar:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (prodop factor)*        one product kind per term
//! prodop  := '*' (associative) | '⊛' or '@' (star)
//! factor  := atom ('^' uint)?
//! atom    := rational | 'y'index | 'x'index | '(' expr ')' | '-' atom
//! rational:= uint ('/' uint)?
//! ```
//!
//! Star and associative products may not be mixed inside one term; wrap one
//! side in parentheses. All errors carry a character position.

use std::fmt;

use num_bigint::BigInt;
use weyl_core::homstar::star;
use weyl_core::{Coefficient, TwistVector, WeylPoly};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lit(Coefficient),
    Y(usize),
    X(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Star(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Y(usize),
    X(usize),
    Plus,
    Minus,
    Mul,
    Star,
    Pow,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((pos, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((pos, Tok::Mul));
                i += 1;
            }
            '·' => {
                out.push((pos, Tok::Mul));
                i += 1;
            }
            '⊛' | '@' => {
                out.push((pos, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((pos, Tok::Pow));
                i += 1;
            }
            '/' => {
                out.push((pos, Tok::Slash));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            'x' | 'y' => {
                let mut j = i + 1;
                let mut digits = String::new();
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    digits.push(chars[j].1);
                    j += 1;
                }
                if digits.is_empty() {
                    return Err(ParseError {
                        position: pos,
                        message: format!("generator '{c}' needs an index, e.g. {c}1"),
                    });
                }
                let idx: usize = digits.parse().map_err(|_| ParseError {
                    position: pos,
                    message: "generator index too large".into(),
                })?;
                out.push((pos, if c == 'y' { Tok::Y(idx) } else { Tok::X(idx) }));
                i = j;
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                let mut digits = String::new();
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    digits.push(chars[j].1);
                    j += 1;
                }
                out.push((pos, Tok::Num(digits.parse().unwrap())));
                i = j;
            }
            other => {
                return Err(ParseError {
                    position: pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn err(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            position,
            message: message.into(),
        }
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some((_, t)) = self.peek() {
            let sub = match t {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if sub {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        let mut kind: Option<bool> = None; // Some(true) = star
        while let Some((p, t)) = self.peek() {
            let star = match t {
                Tok::Mul => false,
                Tok::Star => true,
                _ => break,
            };
            let p = *p;
            if let Some(prev) = kind {
                if prev != star {
                    return Err(self.err(
                        p,
                        "star and associative products may not be mixed without parentheses",
                    ));
                }
            }
            kind = Some(star);
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = if star {
                Expr::Star(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some((_, Tok::Pow)) = self.peek() {
            self.pos += 1;
            let here = self.here();
            match self.peek().cloned() {
                Some((_, Tok::Num(e))) => {
                    self.pos += 1;
                    let e: u32 = e
                        .to_string()
                        .parse()
                        .map_err(|_| self.err(here, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(self.err(here, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let here = self.here();
        match self.peek().cloned() {
            Some((_, Tok::Minus)) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            Some((_, Tok::Num(num))) => {
                self.pos += 1;
                // optional '/ uint' continues the rational literal
                if let Some((_, Tok::Slash)) = self.peek() {
                    self.pos += 1;
                    let dpos = self.here();
                    match self.peek().cloned() {
                        Some((_, Tok::Num(den))) => {
                            self.pos += 1;
                            if den == BigInt::from(0) {
                                return Err(self.err(dpos, "zero denominator"));
                            }
                            Ok(Expr::Lit(Coefficient::new(num, den)))
                        }
                        _ => Err(self.err(dpos, "expected a denominator")),
                    }
                } else {
                    Ok(Expr::Lit(Coefficient::from_integer(num)))
                }
            }
            Some((p, Tok::Y(i))) => {
                self.pos += 1;
                if i == 0 || i > self.n {
                    return Err(self.err(p, format!("index {i} out of range 1..={}", self.n)));
                }
                Ok(Expr::Y(i))
            }
            Some((p, Tok::X(i))) => {
                self.pos += 1;
                if i == 0 || i > self.n {
                    return Err(self.err(p, format!("index {i} out of range 1..={}", self.n)));
                }
                Ok(Expr::X(i))
            }
            Some((_, Tok::LParen)) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some((_, Tok::RParen)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err(self.here(), "expected ')'")),
                }
            }
            _ => Err(self.err(here, "expected a literal, generator, or '('")),
        }
    }
}

pub fn parse(text: &str, n: usize) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        n,
    };
    let e = parser.expr()?;
    if let Some((p, _)) = parser.peek() {
        return Err(ParseError {
            position: *p,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(e)
}

/// Evaluate with `*` as the associative product and `⊛` as `star(k, ·, ·)`.
pub fn eval(expr: &Expr, k: &TwistVector) -> weyl_core::Result<WeylPoly> {
    let n = k.n();
    Ok(match expr {
        Expr::Lit(c) => WeylPoly::scalar(n, c.clone()),
        Expr::Y(i) => WeylPoly::gen_y(n, *i)?,
        Expr::X(i) => WeylPoly::gen_x(n, *i)?,
        Expr::Neg(e) => eval(e, k)?.neg(),
        Expr::Add(a, b) => eval(a, k)?.add(&eval(b, k)?)?,
        Expr::Sub(a, b) => eval(a, k)?.sub(&eval(b, k)?)?,
        Expr::Mul(a, b) => eval(a, k)?.mul_assoc(&eval(b, k)?)?,
        Expr::Star(a, b) => star(k, &eval(a, k)?, &eval(b, k)?)?,
        Expr::Pow(a, e) => eval(a, k)?.pow_assoc(*e),
    })
}
