//! Complex-valued expression trees with exact symbolic differentiation.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' int)?          int := ['-'] digits | '(' ['-'] digits ')'
//! atom    := number ['i'] | 'i' | 'pi' | var | 'exp' '(' expr ')' | '(' expr ')'
//! ```
//!
//! A number immediately followed by `i` is imaginary (`2.5i`). Variable
//! names are supplied by the caller.

use std::fmt;

use crate::algebra::Cplx;
use crate::error::{Error, Result};

/// Magnitude below which a denominator counts as a pole.
pub const POLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(Cplx),
    Var(usize),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Pow(Box<Node>, i32),
    Exp(Box<Node>),
}

fn constant(re: f64, im: f64) -> Node {
    Node::Const(Cplx::new(re, im))
}

fn as_const(n: &Node) -> Option<Cplx> {
    match n {
        Node::Const(c) => Some(*c),
        _ => None,
    }
}

fn is_zero(n: &Node) -> bool {
    as_const(n) == Some(Cplx::new(0.0, 0.0))
}

fn is_one(n: &Node) -> bool {
    as_const(n) == Some(Cplx::new(1.0, 0.0))
}

// Smart constructors fold the trivial identities so derivative trees stay small.

pub(crate) fn add(a: Node, b: Node) -> Node {
    if is_zero(&a) {
        return b;
    }
    if is_zero(&b) {
        return a;
    }
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Node::Const(x + y),
        _ => Node::Add(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn sub(a: Node, b: Node) -> Node {
    if is_zero(&b) {
        return a;
    }
    if is_zero(&a) {
        return neg(b);
    }
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Node::Const(x - y),
        _ => Node::Sub(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn mul(a: Node, b: Node) -> Node {
    if is_zero(&a) || is_zero(&b) {
        return constant(0.0, 0.0);
    }
    if is_one(&a) {
        return b;
    }
    if is_one(&b) {
        return a;
    }
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Node::Const(x * y),
        _ => Node::Mul(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn div(a: Node, b: Node) -> Node {
    if is_zero(&a) {
        return constant(0.0, 0.0);
    }
    if is_one(&b) {
        return a;
    }
    Node::Div(Box::new(a), Box::new(b))
}

pub(crate) fn neg(a: Node) -> Node {
    match a {
        Node::Const(c) => Node::Const(-c),
        Node::Neg(inner) => *inner,
        other => Node::Neg(Box::new(other)),
    }
}

pub(crate) fn pow(a: Node, n: i32) -> Node {
    match n {
        0 => constant(1.0, 0.0),
        1 => a,
        _ => Node::Pow(Box::new(a), n),
    }
}

impl Node {
    pub fn eval(&self, vars: &[Cplx]) -> Result<Cplx> {
        Ok(match self {
            Node::Const(c) => *c,
            Node::Var(i) => vars[*i],
            Node::Add(a, b) => a.eval(vars)? + b.eval(vars)?,
            Node::Sub(a, b) => a.eval(vars)? - b.eval(vars)?,
            Node::Mul(a, b) => a.eval(vars)? * b.eval(vars)?,
            Node::Div(a, b) => {
                let den = b.eval(vars)?;
                if den.norm() < POLE_EPS {
                    return Err(Error::pole(den, POLE_EPS));
                }
                a.eval(vars)? / den
            }
            Node::Neg(a) => -a.eval(vars)?,
            Node::Pow(a, n) => {
                let base = a.eval(vars)?;
                if *n < 0 && base.norm() < POLE_EPS {
                    return Err(Error::pole(base, POLE_EPS));
                }
                base.powi(*n)
            }
            Node::Exp(a) => a.eval(vars)?.exp(),
        })
    }

    /// Symbolic partial derivative with respect to variable `var`.
    pub fn deriv(&self, var: usize) -> Node {
        match self {
            Node::Const(_) => constant(0.0, 0.0),
            Node::Var(i) => constant(if *i == var { 1.0 } else { 0.0 }, 0.0),
            Node::Add(a, b) => add(a.deriv(var), b.deriv(var)),
            Node::Sub(a, b) => sub(a.deriv(var), b.deriv(var)),
            Node::Mul(a, b) => add(mul(a.deriv(var), (**b).clone()), mul((**a).clone(), b.deriv(var))),
            Node::Div(a, b) => {
                // (a'b - ab') / b^2
                let num = sub(mul(a.deriv(var), (**b).clone()), mul((**a).clone(), b.deriv(var)));
                div(num, pow((**b).clone(), 2))
            }
            Node::Neg(a) => neg(a.deriv(var)),
            Node::Pow(a, n) => {
                let outer = mul(Node::Const(Cplx::new(*n as f64, 0.0)), pow((**a).clone(), n - 1));
                mul(outer, a.deriv(var))
            }
            Node::Exp(a) => mul(self.clone(), a.deriv(var)),
        }
    }

    /// Replaces variable `var` by `with`.
    pub fn substitute(&self, var: usize, with: &Node) -> Node {
        let s = |n: &Node| n.substitute(var, with);
        match self {
            Node::Var(i) if *i == var => with.clone(),
            Node::Const(_) | Node::Var(_) => self.clone(),
            Node::Add(a, b) => add(s(a), s(b)),
            Node::Sub(a, b) => sub(s(a), s(b)),
            Node::Mul(a, b) => mul(s(a), s(b)),
            Node::Div(a, b) => div(s(a), s(b)),
            Node::Neg(a) => neg(s(a)),
            Node::Pow(a, n) => pow(s(a), *n),
            Node::Exp(a) => Node::Exp(Box::new(s(a))),
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Node::Const(_) => true,
            Node::Var(_) => false,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => a.is_constant() && b.is_constant(),
            Node::Neg(a) | Node::Pow(a, _) | Node::Exp(a) => a.is_constant(),
        }
    }

    /// Renders the tree with the given variable names; the output parses
    /// back to an equivalent tree.
    pub fn render(&self, names: &[&str]) -> String {
        let mut out = String::new();
        self.write(names, 0, &mut out);
        out
    }

    // precedence: 0 sum, 1 product, 2 unary, 3 power/atom
    fn write(&self, names: &[&str], ctx: u8, out: &mut String) {
        let (prec, text) = match self {
            Node::Const(c) => (if c.im != 0.0 || c.re < 0.0 { 0 } else { 3 }, fmt_cplx(*c)),
            Node::Var(i) => (3, names[*i].to_string()),
            Node::Add(a, b) => (0, format!("{} + {}", a.render_at(names, 0), b.render_at(names, 1))),
            Node::Sub(a, b) => (0, format!("{} - {}", a.render_at(names, 0), b.render_at(names, 1))),
            Node::Mul(a, b) => (1, format!("{}*{}", a.render_at(names, 1), b.render_at(names, 2))),
            Node::Div(a, b) => (1, format!("{}/{}", a.render_at(names, 1), b.render_at(names, 2))),
            Node::Neg(a) => (2, format!("-{}", a.render_at(names, 2))),
            Node::Pow(a, n) => {
                let exp = if *n < 0 { format!("({n})") } else { n.to_string() };
                (3, format!("{}^{}", a.render_at(names, 3), exp))
            }
            Node::Exp(a) => (3, format!("exp({})", a.render_at(names, 0))),
        };
        if prec < ctx {
            out.push('(');
            out.push_str(&text);
            out.push(')');
        } else {
            out.push_str(&text);
        }
    }

    fn render_at(&self, names: &[&str], ctx: u8) -> String {
        let mut s = String::new();
        // atoms in base position of a power must be strictly atomic
        let ctx = if ctx == 3 && !matches!(self, Node::Var(_) | Node::Exp(_)) && !self.is_plain_real() {
            4
        } else {
            ctx
        };
        self.write(names, ctx, &mut s);
        s
    }

    fn is_plain_real(&self) -> bool {
        matches!(self, Node::Const(c) if c.im == 0.0 && c.re >= 0.0)
    }
}

fn fmt_cplx(c: Cplx) -> String {
    let re = fmt_real(c.re);
    match (c.re, c.im) {
        (_, 0.0) => re,
        (0.0, im) => format!("{}i", fmt_real(im)),
        (_, im) if im < 0.0 => format!("{} - {}i", re, fmt_real(-im)),
        (_, im) => format!("{} + {}i", re, fmt_real(im)),
    }
}

fn fmt_real(x: f64) -> String {
    // `{:?}` keeps full precision and always includes a decimal point or exponent
    format!("{x:?}")
}

/// An expression bound to a fixed list of variable names.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    root: Node,
    vars: &'static [&'static str],
}

impl Expr {
    pub fn parse(src: &str, vars: &'static [&'static str]) -> Result<Expr> {
        let root = Parser::new(src, vars).parse_all()?;
        Ok(Expr { root, vars })
    }

    pub fn from_node(root: Node, vars: &'static [&'static str]) -> Expr {
        Expr { root, vars }
    }

    pub fn node(&self) -> &Node {
        &self.root
    }

    pub fn vars(&self) -> &'static [&'static str] {
        self.vars
    }

    pub fn eval(&self, args: &[Cplx]) -> Result<Cplx> {
        debug_assert_eq!(args.len(), self.vars.len());
        self.root.eval(args)
    }

    pub fn deriv(&self, var: usize) -> Expr {
        Expr {
            root: self.root.deriv(var),
            vars: self.vars,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.root.render(self.vars))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64, bool),
    Ident(String),
    Op(char),
    End,
}

struct Parser<'a> {
    src: &'a str,
    vars: &'static [&'static str],
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: &'static [&'static str]) -> Self {
        Parser {
            src,
            vars,
            toks: Vec::new(),
            at: 0,
        }
    }

    fn err<T>(pos: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos,
            message: message.into(),
        })
    }

    fn lex(&mut self) -> Result<()> {
        let bytes = self.src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let ch = bytes[i] as char;
            if ch.is_ascii_whitespace() {
                i += 1;
            } else if ch.is_ascii_digit() || (ch == '.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &self.src[start..i];
                let value: f64 = match text.parse() {
                    Ok(v) => v,
                    Err(_) => return Self::err(start, format!("malformed number `{text}`")),
                };
                let imaginary = i < bytes.len()
                    && bytes[i] == b'i'
                    && !bytes
                        .get(i + 1)
                        .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_');
                if imaginary {
                    i += 1;
                }
                self.toks.push((start, Tok::Num(value, imaginary)));
            } else if ch.is_ascii_alphabetic() || ch == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                self.toks.push((start, Tok::Ident(self.src[start..i].to_string())));
            } else if "+-*/^()".contains(ch) {
                self.toks.push((i, Tok::Op(ch)));
                i += 1;
            } else {
                let c = self.src[i..].chars().next().unwrap_or('?');
                return Self::err(i, format!("unexpected character `{c}`"));
            }
        }
        self.toks.push((self.src.len(), Tok::End));
        Ok(())
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if *self.peek() == Tok::Op(op) {
            self.bump();
            Ok(())
        } else {
            Self::err(self.pos(), format!("expected `{op}`"))
        }
    }

    fn parse_all(mut self) -> Result<Node> {
        self.lex()?;
        if *self.peek() == Tok::End {
            return Self::err(0, "empty expression");
        }
        let node = self.expr()?;
        if *self.peek() != Tok::End {
            return Self::err(self.pos(), "unexpected trailing input");
        }
        Ok(node)
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let paren = *self.peek() == Tok::Op('(');
        if paren {
            self.bump();
        }
        let negative = *self.peek() == Tok::Op('-');
        if negative {
            self.bump();
        }
        let pos = self.pos();
        let n = match self.bump() {
            Tok::Num(v, false) if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 => v as i32,
            _ => return Self::err(pos, "exponent must be an integer"),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(Node::Pow(Box::new(base), if negative { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Node> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v, false) => Ok(constant(v, 0.0)),
            Tok::Num(v, true) => Ok(constant(0.0, v)),
            Tok::Op('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if let Some(idx) = self.vars.iter().position(|v| *v == name) {
                    return Ok(Node::Var(idx));
                }
                match name.as_str() {
                    "i" => Ok(constant(0.0, 1.0)),
                    "pi" => Ok(constant(std::f64::consts::PI, 0.0)),
                    "exp" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        Ok(Node::Exp(Box::new(arg)))
                    }
                    _ => Self::err(
                        pos,
                        format!("unknown identifier `{name}` (variables: {})", self.vars.join(", ")),
                    ),
                }
            }
            Tok::End => Self::err(pos, "unexpected end of input"),
            Tok::Op(c) => Self::err(pos, format!("unexpected `{c}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const XYZ: &[&str] = &["x", "y", "z"];

    fn ev(src: &str, at: [f64; 3]) -> Cplx {
        let e = Expr::parse(src, XYZ).unwrap();
        e.eval(&at.map(|v| Cplx::new(v, 0.0))).unwrap()
    }

    #[test]
    fn precedence_and_literals() {
        assert_eq!(ev("1 + 2*3", [0.; 3]), Cplx::new(7.0, 0.0));
        assert_eq!(ev("-x^2", [3., 0., 0.]), Cplx::new(-9.0, 0.0));
        assert_eq!(ev("(3+1i)*2", [0.; 3]), Cplx::new(6.0, 2.0));
        assert_eq!(ev("2.5i", [0.; 3]), Cplx::new(0.0, 2.5));
        assert_eq!(ev("i*i", [0.; 3]), Cplx::new(-1.0, 0.0));
        assert_eq!(ev("x^(-2)", [2., 0., 0.]), Cplx::new(0.25, 0.0));
        assert_eq!(ev("x^-1", [4., 0., 0.]), Cplx::new(0.25, 0.0));
        assert_eq!(ev("1e-2*y", [0., 100., 0.]), Cplx::new(1.0, 0.0));
        assert_eq!(ev("x - y - z", [1., 2., 3.]), Cplx::new(-4.0, 0.0));
        assert_eq!(ev("x/y/z", [8., 2., 2.]), Cplx::new(2.0, 0.0));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = Expr::parse("x + * y", XYZ).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                pos: 4,
                message: "unexpected `*`".into()
            }
        );
        assert!(matches!(Expr::parse("x + w", XYZ), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(Expr::parse("x^1.5", XYZ), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(Expr::parse("(x", XYZ), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(Expr::parse("", XYZ), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(Expr::parse("x $ y", XYZ), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn partial_derivatives() {
        let e = Expr::parse("x^2*y + exp(z*y)", XYZ).unwrap();
        let at = [1.0, 2.0, 0.5].map(|v| Cplx::new(v, 0.0));
        let dx = e.deriv(0).eval(&at).unwrap();
        let dy = e.deriv(1).eval(&at).unwrap();
        let dz = e.deriv(2).eval(&at).unwrap();
        assert!((dx - Cplx::new(4.0, 0.0)).norm() < 1e-15);
        assert!((dy - Cplx::new(1.0 + 0.5 * 1f64.exp(), 0.0)).norm() < 1e-14);
        assert!((dz - Cplx::new(2.0 * 1f64.exp(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn render_roundtrips() {
        for src in [
            "x^2*y + exp(z*y)",
            "-(x - y)/(z + 2)",
            "(1 - 2i)*x^(-3)",
            "(x + y)^2 - -z",
            "exp(-x)*3.5e-3",
        ] {
            let e = Expr::parse(src, XYZ).unwrap();
            let back = Expr::parse(&e.to_string(), XYZ).unwrap();
            let at = [0.7, -1.3, 0.4].map(|v| Cplx::new(v, 0.1));
            assert_eq!(e.eval(&at).unwrap(), back.eval(&at).unwrap(), "{src} -> {e}");
        }
    }
}
