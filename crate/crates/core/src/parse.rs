//! Expression parser for polynomials and rational functions.
//!
//! Grammar (explicit `*` is required between factors):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```

use num_traits::ToPrimitive;

use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{MultiPoly, RatFun, UniPoly};

/// Source position of a node, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Integer),
    Var(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Integer),
    Ident(String),
    Op(char),
    End,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn tokenize(src: &str, origin: Pos) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let (mut line, mut col) = (origin.line, origin.column);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            toks.push((Tok::Num(text.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(syntax(pos, format!("unexpected character `{c}`")));
        }
        col += i - start;
    }
    toks.push((Tok::End, Pos { line, column: col }));
    Ok(toks)
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.i]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, op: char) -> Option<Pos> {
        match self.peek() {
            (Tok::Op(c), pos) if *c == op => {
                let pos = *pos;
                self.next();
                Some(pos)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+').is_some() {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-').is_some() {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*').is_some() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if let Some(pos) = self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-').is_some() {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+').is_some() {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^').is_none() {
            return Ok(base);
        }
        match self.next() {
            (Tok::Num(n), pos) => {
                let e = n
                    .to_u32()
                    .ok_or_else(|| syntax(pos, format!("exponent {n} is too large")))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            (_, pos) => Err(syntax(pos, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            (Tok::Num(n), _) => Ok(Expr::Num(n)),
            (Tok::Ident(name), pos) => Ok(Expr::Var(name, pos)),
            (Tok::Op('('), _) => {
                let e = self.expr()?;
                match self.next() {
                    (Tok::Op(')'), _) => Ok(e),
                    (_, pos) => Err(syntax(pos, "expected `)`")),
                }
            }
            (Tok::End, pos) => Err(syntax(pos, "unexpected end of input")),
            (Tok::Op(c), pos) => Err(syntax(pos, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `src`, reporting positions relative to `origin`.
pub fn parse_at(src: &str, origin: Pos) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(src, origin)?,
        i: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        (Tok::End, _) => Ok(e),
        (Tok::Ident(_) | Tok::Num(_) | Tok::Op('('), pos) => {
            Err(syntax(*pos, "expected an operator (use `*` for products)"))
        }
        (_, pos) => Err(syntax(*pos, "unexpected token")),
    }
}

/// Parses a single expression starting at line 1, column 1.
pub fn parse(src: &str) -> Result<Expr> {
    parse_at(src, Pos { line: 1, column: 1 })
}

impl Expr {
    /// Evaluates with any arithmetic supplied by `ops`.
    fn eval<T: Clone>(&self, ops: &dyn Ops<T>) -> Result<T> {
        Ok(match self {
            Expr::Num(n) => ops.number(&Rational::from_integer(n.clone())),
            Expr::Var(name, pos) => ops.var(name, *pos)?,
            Expr::Neg(a) => ops.neg(&a.eval(ops)?),
            Expr::Add(a, b) => ops.add(&a.eval(ops)?, &b.eval(ops)?),
            Expr::Sub(a, b) => ops.add(&a.eval(ops)?, &ops.neg(&b.eval(ops)?)),
            Expr::Mul(a, b) => ops.mul(&a.eval(ops)?, &b.eval(ops)?),
            Expr::Div(a, b, pos) => ops.div(&a.eval(ops)?, &b.eval(ops)?, *pos)?,
            Expr::Pow(a, e) => {
                let mut base = a.eval(ops)?;
                let mut acc = ops.number(&Rational::from_integer(1.into()));
                let mut e = *e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = ops.mul(&acc, &base);
                    }
                    e >>= 1;
                    if e > 0 {
                        base = ops.mul(&base, &base);
                    }
                }
                acc
            }
        })
    }

    /// Evaluates to a polynomial in the variables `names`, over `field`.
    /// Division is only allowed by nonzero constants.
    pub fn to_poly<F: Field>(&self, field: &F, names: &[&str]) -> Result<MultiPoly<F>> {
        self.eval(&PolyOps { field, names })
    }

    /// Evaluates to a rational function in `var` over `field`, with other
    /// identifiers bound to the given constants.
    pub fn to_ratfun<K: Field>(&self, field: &K, var: &str, constants: &[(&str, K::Elem)]) -> Result<RatFun<K>> {
        self.eval(&RatOps { field, var, constants })
    }

    /// Evaluates to an element of `field`, with identifiers bound to the
    /// given constants.
    pub fn to_elem<K: Field>(&self, field: &K, constants: &[(&str, K::Elem)]) -> Result<K::Elem> {
        let r = self.to_ratfun(field, "", constants)?;
        Ok(r.num().coeff(0))
    }
}

trait Ops<T> {
    fn number(&self, q: &Rational) -> T;
    fn var(&self, name: &str, pos: Pos) -> Result<T>;
    fn neg(&self, a: &T) -> T;
    fn add(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn div(&self, a: &T, b: &T, pos: Pos) -> Result<T>;
}

fn unknown(name: &str, pos: Pos) -> Error {
    Error::UnknownVariable {
        name: name.to_string(),
        line: pos.line,
        column: pos.column,
    }
}

struct PolyOps<'a, F: Field> {
    field: &'a F,
    names: &'a [&'a str],
}

impl<F: Field> Ops<MultiPoly<F>> for PolyOps<'_, F> {
    fn number(&self, q: &Rational) -> MultiPoly<F> {
        MultiPoly::constant(self.field, self.names.len(), self.field.from_rational(q))
    }
    fn var(&self, name: &str, pos: Pos) -> Result<MultiPoly<F>> {
        let i = self.names.iter().position(|n| *n == name).ok_or_else(|| unknown(name, pos))?;
        Ok(MultiPoly::var(self.field, self.names.len(), i))
    }
    fn neg(&self, a: &MultiPoly<F>) -> MultiPoly<F> {
        a.neg()
    }
    fn add(&self, a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
        a.add(b)
    }
    fn mul(&self, a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
        a.mul(b)
    }
    fn div(&self, a: &MultiPoly<F>, b: &MultiPoly<F>, pos: Pos) -> Result<MultiPoly<F>> {
        let c = b
            .constant_value()
            .ok_or_else(|| syntax(pos, "division by a non-constant in a polynomial"))?;
        if self.field.is_zero(&c) {
            return Err(syntax(pos, "division by zero"));
        }
        Ok(a.scale(&self.field.inv(&c)?))
    }
}

struct RatOps<'a, K: Field> {
    field: &'a K,
    var: &'a str,
    constants: &'a [(&'a str, K::Elem)],
}

impl<K: Field> Ops<RatFun<K>> for RatOps<'_, K> {
    fn number(&self, q: &Rational) -> RatFun<K> {
        RatFun::from_poly(UniPoly::constant(self.field, self.field.from_rational(q)))
    }
    fn var(&self, name: &str, pos: Pos) -> Result<RatFun<K>> {
        if name == self.var && !name.is_empty() {
            return Ok(RatFun::from_poly(UniPoly::monomial(self.field, self.field.one(), 1)));
        }
        self.constants
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, c)| RatFun::from_poly(UniPoly::constant(self.field, c.clone())))
            .ok_or_else(|| unknown(name, pos))
    }
    fn neg(&self, a: &RatFun<K>) -> RatFun<K> {
        a.neg()
    }
    fn add(&self, a: &RatFun<K>, b: &RatFun<K>) -> RatFun<K> {
        a.add(b)
    }
    fn mul(&self, a: &RatFun<K>, b: &RatFun<K>) -> RatFun<K> {
        a.mul(b)
    }
    fn div(&self, a: &RatFun<K>, b: &RatFun<K>, pos: Pos) -> Result<RatFun<K>> {
        if b.is_zero() {
            return Err(syntax(pos, "division by zero"));
        }
        a.div(b)
    }
}

/// Parses a univariate polynomial in `var` with rational coefficients.
pub fn parse_unipoly<F: Field>(src: &str, field: &F, var: &str) -> Result<UniPoly<F>> {
    let p = parse(src)?.to_poly(field, &[var])?;
    Ok(p.to_unipoly(0).expect("single variable"))
}
