//! Text input for field elements and polynomials.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power ('*' power)*
//! power  := atom ('^' integer)?
//! atom   := integer | 'd' | 'T' | '(' expr ')'
//! ```
//!
//! `d` is the field generator and `T` the polynomial variable. Integers are
//! reduced modulo p.

use crate::gf::{FieldCtx, FieldElement};
use crate::poly::Poly;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("{message} at position {position} (token `{token}`)")]
pub struct ParseError {
    pub message: String,
    pub token: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u128),
    Gen,
    Var,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, String)>,
    at: usize,
}

impl Lexer {
    fn new(src: &str) -> Result<Self, ParseError> {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = src.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (pos, ch) = chars[i];
            let single = |t: Tok| (t, pos, ch.to_string());
            match ch {
                c if c.is_whitespace() => {}
                '0'..='9' => {
                    let start = i;
                    while i + 1 < chars.len() && chars[i + 1].1.is_ascii_digit() {
                        i += 1;
                    }
                    let text: String = chars[start..=i].iter().map(|(_, c)| c).collect();
                    let value = text.parse::<u128>().map_err(|_| ParseError {
                        message: "integer literal too large".into(),
                        token: text.clone(),
                        position: pos,
                    })?;
                    toks.push((Tok::Int(value), pos, text));
                }
                'd' => toks.push(single(Tok::Gen)),
                'T' => toks.push(single(Tok::Var)),
                '+' => toks.push(single(Tok::Plus)),
                '-' => toks.push(single(Tok::Minus)),
                '*' => toks.push(single(Tok::Star)),
                '^' => toks.push(single(Tok::Caret)),
                '(' => toks.push(single(Tok::Open)),
                ')' => toks.push(single(Tok::Close)),
                other => {
                    return Err(ParseError {
                        message: "unexpected character".into(),
                        token: other.to_string(),
                        position: pos,
                    })
                }
            }
            i += 1;
        }
        toks.push((Tok::End, src.len(), "<end>".into()));
        Ok(Lexer { toks, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn bump(&mut self) -> (Tok, usize, String) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, message: &str) -> ParseError {
        let (_, position, token) = &self.toks[self.at];
        ParseError {
            message: message.into(),
            token: token.clone(),
            position: *position,
        }
    }
}

struct Parser<'a> {
    lex: Lexer,
    ctx: &'a FieldCtx,
    allow_var: bool,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut negate = false;
        match self.lex.peek() {
            Tok::Plus => {
                self.lex.bump();
            }
            Tok::Minus => {
                self.lex.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.lex.peek() {
                Tok::Plus => {
                    self.lex.bump();
                    acc = acc.add_(&self.term()?);
                }
                Tok::Minus => {
                    self.lex.bump();
                    acc = acc.sub_(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        while *self.lex.peek() == Tok::Star {
            self.lex.bump();
            acc = acc.mul_(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if *self.lex.peek() != Tok::Caret {
            return Ok(base);
        }
        self.lex.bump();
        let Tok::Int(e) = self.lex.peek().clone() else {
            return Err(self.lex.error("expected an integer exponent"));
        };
        if e > 4096 {
            return Err(self.lex.error("exponent too large"));
        }
        self.lex.bump();
        let mut acc = Poly::one(self.ctx);
        for _ in 0..e {
            acc = acc.mul_(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.lex.peek().clone() {
            Tok::Int(v) => {
                self.lex.bump();
                let r = (v % self.ctx.p() as u128) as i64;
                Ok(Poly::raw(self.ctx, vec![self.ctx.constant(r)]))
            }
            Tok::Gen => {
                if self.ctx.s() == 1 {
                    return Err(self.lex.error("a prime field has no generator `d`"));
                }
                self.lex.bump();
                Ok(Poly::raw(self.ctx, vec![self.ctx.generator()]))
            }
            Tok::Var => {
                if !self.allow_var {
                    return Err(self.lex.error("field elements cannot contain `T`"));
                }
                self.lex.bump();
                Ok(Poly::x(self.ctx))
            }
            Tok::Open => {
                self.lex.bump();
                let inner = self.expr()?;
                if *self.lex.peek() != Tok::Close {
                    return Err(self.lex.error("expected `)`"));
                }
                self.lex.bump();
                Ok(inner)
            }
            _ => Err(self.lex.error("expected a number, `d`, `T` or `(`")),
        }
    }
}

fn parse(ctx: &FieldCtx, src: &str, allow_var: bool) -> Result<Poly, ParseError> {
    let mut parser = Parser {
        lex: Lexer::new(src)?,
        ctx,
        allow_var,
    };
    let out = parser.expr()?;
    if *parser.lex.peek() != Tok::End {
        return Err(parser.lex.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses `2*d^3+2*d^2+1`-style notation.
pub fn parse_element(ctx: &FieldCtx, src: &str) -> Result<FieldElement, ParseError> {
    let p = parse(ctx, src, false)?;
    Ok(p.coeff(0))
}

/// Parses `(d+2)*T + 1`-style notation.
pub fn parse_poly(ctx: &FieldCtx, src: &str) -> Result<Poly, ParseError> {
    parse(ctx, src, true)
}
