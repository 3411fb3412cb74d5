//! Expression syntax trees, the text grammar, and canonicalization.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' unary)?
//! atom   := number | ident | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! Functions are `sin`, `cos`, `exp`. Numbers are decimal literals; `3/2` is
//! parsed as a division and canonicalizes to the exact rational.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::coeff::Coeff;
use super::poly::{Monomial, Poly, Var};
use super::ratfn::ScalarExpr;

/// Uncanonicalized expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Const(Coeff),
    Sym(Arc<str>),
    Add(Vec<Node>),
    Mul(Vec<Node>),
    Neg(Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
    Sin(Box<Node>),
    Cos(Box<Node>),
    Exp(Box<Node>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at column {col}: {msg}")]
pub struct ParseError {
    pub col: usize,
    pub msg: String,
}

fn err<T>(col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { col, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            out.push((col, Tok::Num(parse_decimal(&text).ok_or(ParseError {
                col,
                msg: format!("malformed number '{text}'"),
            })?)));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((col, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((col, Tok::Op(c)));
            k += 1;
        } else {
            return err(col, format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let (int, frac) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(num, den))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                terms.push(Node::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Node::Add(terms) })
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = match acc {
                    Node::Mul(mut v) => {
                        v.push(rhs);
                        Node::Mul(v)
                    }
                    other => Node::Mul(vec![other, rhs]),
                };
            } else if self.eat('/') {
                let rhs = self.unary()?;
                acc = Node::Div(Box::new(acc), Box::new(rhs));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        let exp = self.unary()?;
        let value = canon(&exp).map_err(|e| ParseError { col, msg: e.msg })?;
        match value.as_constant().and_then(|c| c.as_i64()).and_then(|n| i32::try_from(n).ok()) {
            Some(n) => Ok(Node::Pow(Box::new(base), n)),
            None => err(col, "exponent must be an integer constant"),
        }
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Node::Const(Coeff::real(r)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let func = matches!(name.as_str(), "sin" | "cos" | "exp");
                if func {
                    if !self.eat('(') {
                        return err(self.col(), format!("expected '(' after {name}"));
                    }
                    let arg = Box::new(self.expr()?);
                    if !self.eat(')') {
                        return err(self.col(), "expected ')'");
                    }
                    Ok(match name.as_str() {
                        "sin" => Node::Sin(arg),
                        "cos" => Node::Cos(arg),
                        _ => Node::Exp(arg),
                    })
                } else {
                    Ok(Node::Sym(Arc::from(name.as_str())))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return err(self.col(), "expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => err(col, format!("unexpected '{c}'")),
            None => err(col, "unexpected end of expression"),
        }
    }
}

/// Parse text into an uncanonicalized tree.
pub fn parse_node(src: &str) -> Result<Node, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, end_col: src.chars().count() + 1 };
    let node = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.col(), "trailing input");
    }
    Ok(node)
}

/// Parse and canonicalize.
pub fn parse(src: &str) -> Result<ScalarExpr, ParseError> {
    canon(&parse_node(src)?)
}

/// Canonical form of a tree. Fails only on division by an expression whose
/// canonical form is zero.
pub fn canon(node: &Node) -> Result<ScalarExpr, ParseError> {
    Ok(match node {
        Node::Const(c) => ScalarExpr::constant(c.clone()),
        Node::Sym(s) => ScalarExpr::sym(s),
        Node::Add(v) => {
            let mut acc = ScalarExpr::zero();
            for n in v {
                acc = acc.add(&canon(n)?);
            }
            acc
        }
        Node::Mul(v) => {
            let mut acc = ScalarExpr::one();
            for n in v {
                acc = acc.mul(&canon(n)?);
            }
            acc
        }
        Node::Neg(a) => canon(a)?.neg(),
        Node::Div(a, b) => {
            let den = canon(b)?;
            match canon(a)?.checked_div(&den) {
                Some(q) => q,
                None => return err(0, "division by zero"),
            }
        }
        Node::Pow(a, e) => match canon(a)?.powi(*e) {
            Some(p) => p,
            None => return err(0, "zero raised to a negative power"),
        },
        Node::Sin(a) => ScalarExpr::sin(&canon(a)?),
        Node::Cos(a) => ScalarExpr::cos(&canon(a)?),
        Node::Exp(a) => ScalarExpr::exp(&canon(a)?),
    })
}

fn var_node(v: &Var) -> Node {
    match v {
        Var::Sym(s) => Node::Sym(s.clone()),
        Var::Sin(a) => Node::Sin(Box::new(a.to_node())),
        Var::Cos(a) => Node::Cos(Box::new(a.to_node())),
        Var::Exp(a) => Node::Exp(Box::new(a.to_node())),
    }
}

fn monomial_node(m: &Monomial) -> Vec<Node> {
    m.factors()
        .iter()
        .map(|(v, e)| if *e == 1 { var_node(v) } else { Node::Pow(Box::new(var_node(v)), *e) })
        .collect()
}

fn poly_node(p: &Poly) -> Node {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let mut factors = Vec::new();
        if !c.is_one() || m.is_one() {
            factors.push(Node::Const(c.clone()));
        }
        factors.extend(monomial_node(m));
        terms.push(if factors.len() == 1 { factors.pop().unwrap() } else { Node::Mul(factors) });
    }
    match terms.len() {
        0 => Node::Const(Coeff::zero()),
        1 => terms.pop().unwrap(),
        _ => Node::Add(terms),
    }
}

impl ScalarExpr {
    /// Tree whose canonical form is `self`.
    pub fn to_node(&self) -> Node {
        let num = poly_node(self.numerator());
        let dens: Vec<Node> = self
            .denominator_factors()
            .map(|(f, k)| if k == 1 { poly_node(f) } else { Node::Pow(Box::new(poly_node(f)), k as i32) })
            .collect();
        if dens.is_empty() {
            num
        } else {
            let den = if dens.len() == 1 { dens.into_iter().next().unwrap() } else { Node::Mul(dens) };
            Node::Div(Box::new(num), Box::new(den))
        }
    }
}

impl std::str::FromStr for ScalarExpr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, v: &[Node], sep: &str) -> fmt::Result {
            write!(f, "(")?;
            for (k, n) in v.iter().enumerate() {
                if k > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{n}")?;
            }
            write!(f, ")")
        }
        match self {
            Node::Const(c) => {
                if c.is_real() && c.re() < &BigRational::zero() {
                    write!(f, "({c})")
                } else {
                    write!(f, "{c}")
                }
            }
            Node::Sym(s) => write!(f, "{s}"),
            Node::Add(v) => join(f, v, " + "),
            Node::Mul(v) => join(f, v, "*"),
            Node::Neg(a) => write!(f, "(-{a})"),
            Node::Div(a, b) => write!(f, "({a})/({b})"),
            Node::Pow(a, e) => write!(f, "({a})^({e})"),
            Node::Sin(a) => write!(f, "sin({a})"),
            Node::Cos(a) => write!(f, "cos({a})"),
            Node::Exp(a) => write!(f, "exp({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse("3/2").unwrap(), ScalarExpr::rational(3, 2));
        assert_eq!(parse("0.25").unwrap(), ScalarExpr::rational(1, 4));
        assert_eq!(parse("2 * x - x - x").unwrap(), ScalarExpr::zero());
    }

    #[test]
    fn powers_and_functions() {
        let e = parse("x^2 * y^(-1) * y").unwrap();
        assert_eq!(e, parse("x*x").unwrap());
        let z = parse("exp(z) * exp(-z)").unwrap();
        assert!(z.is_one());
        assert_eq!(parse("sin(-x)").unwrap(), parse("-sin(x)").unwrap());
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse("x + * y").unwrap_err();
        assert_eq!(e.col, 5);
        assert!(parse("x^y").is_err());
        assert!(parse("1/(x - x)").is_err());
        assert!(parse("sin x").is_err());
        assert!(parse("x $ y").is_err());
    }

    #[test]
    fn display_reparses() {
        for src in ["x^2*y - 3/4*sin(x) + 1", "1/(x^2 + 1)", "exp(2*z)*y", "(x + y)/(x - y)^2"] {
            let e = parse(src).unwrap();
            let back = parse(&e.to_string()).unwrap();
            assert_eq!(back, e, "{src} printed as {e}");
        }
    }

    #[test]
    fn canon_of_to_node_is_identity() {
        let e = parse("(x + y)/(x*y - 1)^2 + cos(x/y)").unwrap();
        assert_eq!(canon(&e.to_node()).unwrap(), e);
    }
}
