//! The `.gman` model format.
//!
//! ```text
//! # comment
//! coord x:0; coord p:1;
//! let S : 2 = 1/2*x*p*p;
//! form omega = d(p)*d(x);
//! vector Q { x = p; }
//! lie { [e1,e2] = e3; }
//! algebroid { rho(a1, x) = 1; [a1,a2] = x*a1; }
//! courant { pairing(ξ1,ξ1) = 1; rho(ξ1, x) = 1; [ξ1,ξ2,ξ3] = 1; }
//! poisson { {x1,x2} = x3; }
//! check master S omega;
//! ```
//!
//! Expressions use `+ - * / ^` with rational literals and nonnegative integer
//! exponents; `d(name)` is the form generator of a coordinate or the de Rham
//! differential of an earlier binding. Division is by nonzero constants only.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::courant::CourantStructure;
use crate::derivation::GradedVectorField;
use crate::error::Error;
use crate::forms::{d_name, DoubledContext, Form};
use crate::graded::{Degree, GradingContext, Polynomial, Rational};
use crate::linalg::PolyMatrix;
use crate::structures::{AlgebroidStructure, LieStructure, PoissonStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: Span,
    pub message: String,
    /// The kernel error behind a structure-table rejection.
    pub cause: Option<Error>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.col, self.message)
    }
}

impl std::error::Error for Diagnostic {}

type PResult<T> = std::result::Result<T, Diagnostic>;

fn diag<T>(span: Span, message: impl Into<String>) -> PResult<T> {
    Err(Diagnostic { span, message: message.into(), cause: None })
}

fn lift_err<T>(span: Span, r: crate::error::Result<T>) -> PResult<T> {
    r.map_err(|e| Diagnostic { span, message: e.to_string(), cause: Some(e) })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn lex(text: &str) -> PResult<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), span });
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_continue(chars[i]) {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), span });
        } else if ";:=+-*/^(){}[],".contains(c) {
            i += 1;
            col += 1;
            out.push(Token { tok: Tok::Sym(c), span });
        } else {
            return diag(span, format!("unexpected character `{c}`"));
        }
    }
    out.push(Token { tok: Tok::Eof, span: Span { line, col } });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Ident(String, Span),
    D(String, Span),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Span),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug)]
enum Row {
    /// `[a, b] = e` or `[a, b, c] = e`.
    Bracket(Vec<(String, Span)>, Expr),
    /// `{a, b} = e`.
    Poisson((String, Span), (String, Span), Expr),
    /// `rho(a, x) = e`, `pairing(a, b) = e`.
    Call(String, Vec<(String, Span)>, Expr),
}

#[derive(Clone, Debug)]
enum Stmt {
    Coord(String, i64),
    Let(String, Option<i64>, Expr),
    Form(String, Expr),
    Vector(String, Option<i64>, Vec<((String, Span), Expr)>),
    Block(String, Vec<(Row, Span)>),
    Check(Vec<String>),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> PResult<Span> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(t.span)
        } else {
            diag(t.span, format!("expected `{c}`, found {}", describe(&t.tok)))
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.span)),
            other => diag(t.span, format!("expected an identifier, found {}", describe(&other))),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = if self.is_sym('-') {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        match t.tok {
            Tok::Int(v) => {
                let v = v.to_i64().ok_or_else(|| Diagnostic { span: t.span, message: "integer out of range".into(), cause: None })?;
                Ok(if neg { -v } else { v })
            }
            other => diag(t.span, format!("expected an integer, found {}", describe(&other))),
        }
    }

    fn model(&mut self) -> PResult<Vec<(Stmt, Span)>> {
        let mut out = Vec::new();
        loop {
            let t = self.next();
            let span = t.span;
            let kw = match t.tok {
                Tok::Eof => return Ok(out),
                Tok::Ident(s) => s,
                other => return diag(span, format!("expected a statement, found {}", describe(&other))),
            };
            let stmt = match kw.as_str() {
                "coord" => {
                    let mut list = Vec::new();
                    loop {
                        let (name, s) = self.ident()?;
                        self.expect_sym(':')?;
                        list.push((Stmt::Coord(name, self.int()?), s));
                        if !self.is_sym(',') {
                            break;
                        }
                        self.next();
                    }
                    self.expect_sym(';')?;
                    out.extend(list);
                    continue;
                }
                "let" => {
                    let (name, _) = self.ident()?;
                    let deg = self.annotation()?;
                    self.expect_sym('=')?;
                    let e = self.expr()?;
                    self.expect_sym(';')?;
                    Stmt::Let(name, deg, e)
                }
                "form" => {
                    let (name, _) = self.ident()?;
                    self.expect_sym('=')?;
                    let e = self.expr()?;
                    self.expect_sym(';')?;
                    Stmt::Form(name, e)
                }
                "vector" => {
                    let (name, _) = self.ident()?;
                    let deg = self.annotation()?;
                    self.expect_sym('{')?;
                    let mut comps = Vec::new();
                    while !self.is_sym('}') {
                        let target = self.ident()?;
                        self.expect_sym('=')?;
                        let e = self.expr()?;
                        self.expect_sym(';')?;
                        comps.push((target, e));
                    }
                    self.next();
                    Stmt::Vector(name, deg, comps)
                }
                "lie" | "algebroid" | "courant" | "poisson" => {
                    self.expect_sym('{')?;
                    let mut rows = Vec::new();
                    while !self.is_sym('}') {
                        rows.push(self.row()?);
                    }
                    self.next();
                    Stmt::Block(kw, rows)
                }
                "check" => {
                    let mut words = Vec::new();
                    while !self.is_sym(';') {
                        words.push(self.ident()?.0);
                    }
                    self.next();
                    Stmt::Check(words)
                }
                _ => return diag(span, format!("unknown statement `{kw}`")),
            };
            out.push((stmt, span));
        }
    }

    fn annotation(&mut self) -> PResult<Option<i64>> {
        if self.is_sym(':') {
            self.next();
            Ok(Some(self.int()?))
        } else {
            Ok(None)
        }
    }

    fn names_until(&mut self, close: char) -> PResult<Vec<(String, Span)>> {
        let mut names = vec![self.ident()?];
        while self.is_sym(',') {
            self.next();
            names.push(self.ident()?);
        }
        self.expect_sym(close)?;
        Ok(names)
    }

    fn row(&mut self) -> PResult<(Row, Span)> {
        let t = self.next();
        let span = t.span;
        let row = match t.tok {
            Tok::Sym('[') => {
                let names = self.names_until(']')?;
                self.expect_sym('=')?;
                Row::Bracket(names, self.expr()?)
            }
            Tok::Sym('{') => {
                let names = self.names_until('}')?;
                if names.len() != 2 {
                    return diag(span, "a Poisson row takes exactly two coordinates");
                }
                self.expect_sym('=')?;
                Row::Poisson(names[0].clone(), names[1].clone(), self.expr()?)
            }
            Tok::Ident(head) => {
                self.expect_sym('(')?;
                let names = self.names_until(')')?;
                self.expect_sym('=')?;
                Row::Call(head, names, self.expr()?)
            }
            other => return diag(span, format!("expected a table row, found {}", describe(&other))),
        };
        self.expect_sym(';')?;
        Ok((row, span))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.is_sym('+') {
                self.next();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.next();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.next();
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.is_sym('/') {
                let span = self.next().span;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), span);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.is_sym('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.is_sym('+') {
            self.next();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if self.is_sym('^') {
            self.next();
            let t = self.next();
            return match t.tok {
                Tok::Int(v) => match v.to_u32() {
                    Some(e) => Ok(Expr::Pow(Box::new(base), e)),
                    None => diag(t.span, "exponent out of range"),
                },
                other => diag(t.span, format!("expected a nonnegative integer exponent, found {}", describe(&other))),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let t = self.next();
        match t.tok {
            Tok::Int(v) => Ok(Expr::Num(v)),
            Tok::Ident(s) if s == "d" && self.is_sym('(') => {
                self.next();
                let (name, span) = self.ident()?;
                self.expect_sym(')')?;
                Ok(Expr::D(name, span))
            }
            Tok::Ident(s) => Ok(Expr::Ident(s, t.span)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            other => diag(t.span, format!("expected an expression, found {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(v) => format!("`{v}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

#[derive(Clone, Debug)]
pub enum Binding {
    Function(Polynomial),
    Form(Form),
    Field(GradedVectorField),
}

#[derive(Clone, Debug)]
pub struct Directive {
    pub words: Vec<String>,
    pub span: Span,
}

type Entry<K> = (K, Polynomial, Span);

/// A parsed model. Structure tables are kept as entered and turned into
/// structures on request.
#[derive(Clone, Debug)]
pub struct Model {
    context: GradingContext,
    doubled: DoubledContext,
    bindings: Vec<(String, Binding)>,
    lie: Option<Vec<Entry<(usize, usize)>>>,
    algebroid: Option<(Vec<Entry<(usize, usize)>>, Vec<Entry<(usize, usize)>>)>,
    courant: Option<CourantTable>,
    poisson: Option<Vec<Entry<(usize, usize)>>>,
    directives: Vec<Directive>,
}

#[derive(Clone, Debug, Default)]
struct CourantTable {
    pairing: Vec<Entry<(usize, usize)>>,
    anchor: Vec<Entry<(usize, usize)>>,
    f: Vec<Entry<(usize, usize, usize)>>,
}

pub fn parse_source(text: &str) -> PResult<Model> {
    let toks = lex(text)?;
    let stmts = Parser { toks, pos: 0 }.model()?;
    let mut specs: Vec<(String, i64)> = Vec::new();
    for (s, span) in &stmts {
        if let Stmt::Coord(name, deg) = s {
            if specs.iter().any(|(n, _)| n == name) {
                return diag(*span, format!("coordinate `{name}` declared twice"));
            }
            if name == "d" {
                return diag(*span, "`d` is reserved");
            }
            specs.push((name.clone(), *deg));
        }
    }
    let context = GradingContext::new(&specs).map_err(|e| Diagnostic { span: Span { line: 1, col: 1 }, message: e.to_string(), cause: Some(e) })?;
    let mut ev = Evaluator {
        dc: DoubledContext::new(&context),
        declared: 0,
        bindings: Vec::new(),
    };
    let mut model = Model {
        context: context.clone(),
        doubled: ev.dc.clone(),
        bindings: Vec::new(),
        lie: None,
        algebroid: None,
        courant: None,
        poisson: None,
        directives: Vec::new(),
    };
    for (s, span) in stmts {
        match s {
            Stmt::Coord(..) => ev.declared += 1,
            Stmt::Let(name, deg, e) => {
                ev.fresh(&name, span)?;
                let v = ev.eval(&e)?;
                let f = match ev.dc.lower(&v) {
                    Ok(f) => f,
                    Err(_) => return diag(span, format!("`{name}` contains form generators; declare it with `form`")),
                };
                if let Some(k) = deg {
                    match f.degree() {
                        Degree::Homogeneous(d) if d != k => {
                            return diag(span, format!("`{name}` has degree {d}, annotated {k}"))
                        }
                        Degree::Nonhomogeneous => {
                            return diag(span, format!("`{name}` is not homogeneous, annotated {k}"))
                        }
                        _ => {}
                    }
                }
                ev.bindings.push((name, Binding::Function(f)));
            }
            Stmt::Form(name, e) => {
                ev.fresh(&name, span)?;
                let v = ev.eval(&e)?;
                let form = lift_err(span, Form::new(&ev.dc, v))?;
                ev.bindings.push((name, Binding::Form(form)));
            }
            Stmt::Vector(name, deg, comps) => {
                ev.fresh(&name, span)?;
                let mut parts = vec![Polynomial::zero(&context); context.len()];
                for ((target, tspan), e) in comps {
                    let i = ev.coordinate(&target, tspan)?;
                    let v = ev.eval(&e)?;
                    parts[i] = ev
                        .dc
                        .lower(&v)
                        .map_err(|_| Diagnostic { span: tspan, message: "vector components must be functions".into(), cause: None })?;
                }
                let field = match deg {
                    Some(k) => GradedVectorField::new(&context, parts, k),
                    None => GradedVectorField::infer(&context, parts),
                };
                let field = lift_err(span, field)?;
                ev.bindings.push((name, Binding::Field(field)));
            }
            Stmt::Block(kind, rows) => ev.block(&mut model, &kind, rows, span)?,
            Stmt::Check(words) => model.directives.push(Directive { words, span }),
        }
    }
    model.bindings = ev.bindings;
    Ok(model)
}

/// Parses a single expression against a chart; `d(x)` is allowed when the
/// chart is the doubled chart of some base.
pub fn parse_polynomial(ctx: &GradingContext, text: &str) -> PResult<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return diag(t.span, format!("unexpected {}", describe(&t.tok)));
    }
    eval_plain(ctx, &e)
}

fn eval_plain(ctx: &GradingContext, e: &Expr) -> PResult<Polynomial> {
    let rec = |x: &Expr| eval_plain(ctx, x);
    Ok(match e {
        Expr::Num(v) => Polynomial::constant(ctx, Rational::from_integer(v.clone())),
        Expr::Ident(name, span) => match ctx.index_of(name) {
            Some(i) => Polynomial::var(ctx, i),
            None => return diag(*span, format!("unknown identifier `{name}`")),
        },
        Expr::D(name, span) => match ctx.index_of(&d_name(name)) {
            Some(i) => Polynomial::var(ctx, i),
            None => return diag(*span, format!("unknown identifier `{}`", d_name(name))),
        },
        Expr::Neg(a) => -&rec(a)?,
        Expr::Add(a, b) => &rec(a)? + &rec(b)?,
        Expr::Sub(a, b) => &rec(a)? - &rec(b)?,
        Expr::Mul(a, b) => &rec(a)? * &rec(b)?,
        Expr::Div(a, b, span) => divide(rec(a)?, rec(b)?, *span)?,
        Expr::Pow(a, k) => rec(a)?.pow(*k),
    })
}

fn divide(a: Polynomial, b: Polynomial, span: Span) -> PResult<Polynomial> {
    match b.as_constant() {
        Some(c) if !c.is_zero() => Ok(a.scale(&(Rational::from_integer(1.into()) / c))),
        Some(_) => diag(span, "division by zero"),
        None => diag(span, "division by a non-constant expression"),
    }
}

struct Evaluator {
    dc: DoubledContext,
    /// Number of coordinates declared so far.
    declared: usize,
    bindings: Vec<(String, Binding)>,
}

impl Evaluator {
    fn fresh(&self, name: &str, span: Span) -> PResult<()> {
        if self.dc.base().index_of(name).is_some() || self.bindings.iter().any(|(n, _)| n == name) {
            return diag(span, format!("`{name}` is already defined"));
        }
        Ok(())
    }

    fn coordinate(&self, name: &str, span: Span) -> PResult<usize> {
        match self.dc.base().index_of(name) {
            Some(i) if i < self.declared => Ok(i),
            _ => diag(span, format!("unknown coordinate `{name}`")),
        }
    }

    fn lookup(&self, name: &str) -> Option<&Binding> {
        self.bindings.iter().rev().find(|(n, _)| n == name).map(|(_, b)| b)
    }

    fn eval(&self, e: &Expr) -> PResult<Polynomial> {
        let ctx = self.dc.doubled();
        Ok(match e {
            Expr::Num(v) => Polynomial::constant(ctx, Rational::from_integer(v.clone())),
            Expr::Ident(name, span) => {
                if let Some(b) = self.lookup(name) {
                    match b {
                        Binding::Function(f) => self.dc.lift(f).expect("base chart"),
                        Binding::Form(w) => w.poly().clone(),
                        Binding::Field(_) => return diag(*span, format!("`{name}` is a vector field")),
                    }
                } else {
                    Polynomial::var(ctx, self.coordinate(name, *span).map_err(|_| Diagnostic {
                        span: *span,
                        message: format!("unknown identifier `{name}`"),
                        cause: None,
                    })?)
                }
            }
            Expr::D(name, span) => {
                if let Some(b) = self.lookup(name) {
                    match b {
                        Binding::Function(f) => lift_err(*span, Form::from_function(&self.dc, f))?.de_rham().poly().clone(),
                        Binding::Form(w) => w.de_rham().poly().clone(),
                        Binding::Field(_) => return diag(*span, format!("`{name}` is a vector field")),
                    }
                } else {
                    let i = self.coordinate(name, *span).map_err(|_| Diagnostic {
                        span: *span,
                        message: format!("unknown identifier `{name}`"),
                        cause: None,
                    })?;
                    self.dc.d_generator(i)
                }
            }
            Expr::Neg(a) => -&self.eval(a)?,
            Expr::Add(a, b) => &self.eval(a)? + &self.eval(b)?,
            Expr::Sub(a, b) => &self.eval(a)? - &self.eval(b)?,
            Expr::Mul(a, b) => &self.eval(a)? * &self.eval(b)?,
            Expr::Div(a, b, span) => divide(self.eval(a)?, self.eval(b)?, *span)?,
            Expr::Pow(a, k) => self.eval(a)?.pow(*k),
        })
    }

    fn function(&self, e: &Expr, span: Span) -> PResult<Polynomial> {
        let v = self.eval(e)?;
        self.dc
            .lower(&v)
            .map_err(|_| Diagnostic { span, message: "expected a function, found a form".into(), cause: None })
    }

    fn indices(&self, names: &[(String, Span)]) -> PResult<Vec<usize>> {
        names.iter().map(|(n, s)| self.coordinate(n, *s)).collect()
    }

    fn block(&self, model: &mut Model, kind: &str, rows: Vec<(Row, Span)>, span: Span) -> PResult<()> {
        let taken = match kind {
            "lie" => model.lie.is_some(),
            "algebroid" => model.algebroid.is_some(),
            "courant" => model.courant.is_some(),
            _ => model.poisson.is_some(),
        };
        if taken {
            return diag(span, format!("second `{kind}` block"));
        }
        let arity = |got: usize, want: usize, span: Span| -> PResult<()> {
            if got == want {
                Ok(())
            } else {
                diag(span, format!("expected {want} indices, found {got}"))
            }
        };
        match kind {
            "lie" | "poisson" => {
                let mut entries = Vec::new();
                for (row, s) in rows {
                    let (names, e) = match (kind, row) {
                        ("lie", Row::Bracket(names, e)) => (names, e),
                        ("poisson", Row::Poisson(a, b, e)) => (vec![a, b], e),
                        _ => return diag(s, format!("row not allowed in a `{kind}` block")),
                    };
                    arity(names.len(), 2, s)?;
                    let ix = self.indices(&names)?;
                    entries.push(((ix[0], ix[1]), self.function(&e, s)?, s));
                }
                if kind == "lie" {
                    model.lie = Some(entries);
                } else {
                    model.poisson = Some(entries);
                }
            }
            "algebroid" => {
                let (mut anchor, mut bracket) = (Vec::new(), Vec::new());
                for (row, s) in rows {
                    match row {
                        Row::Call(head, names, e) if head == "rho" => {
                            arity(names.len(), 2, s)?;
                            let ix = self.indices(&names)?;
                            anchor.push(((ix[0], ix[1]), self.function(&e, s)?, s));
                        }
                        Row::Bracket(names, e) => {
                            arity(names.len(), 2, s)?;
                            let ix = self.indices(&names)?;
                            bracket.push(((ix[0], ix[1]), self.function(&e, s)?, s));
                        }
                        _ => return diag(s, "row not allowed in an `algebroid` block"),
                    }
                }
                model.algebroid = Some((anchor, bracket));
            }
            _ => {
                let mut table = CourantTable::default();
                for (row, s) in rows {
                    match row {
                        Row::Call(head, names, e) if head == "rho" || head == "pairing" => {
                            arity(names.len(), 2, s)?;
                            let ix = self.indices(&names)?;
                            let entry = ((ix[0], ix[1]), self.function(&e, s)?, s);
                            if head == "rho" {
                                table.anchor.push(entry);
                            } else {
                                table.pairing.push(entry);
                            }
                        }
                        Row::Bracket(names, e) => {
                            arity(names.len(), 3, s)?;
                            let ix = self.indices(&names)?;
                            table.f.push(((ix[0], ix[1], ix[2]), self.function(&e, s)?, s));
                        }
                        _ => return diag(s, "row not allowed in a `courant` block"),
                    }
                }
                model.courant = Some(table);
            }
        }
        Ok(())
    }
}

fn by_degree(ctx: &GradingContext, d: i64) -> Vec<usize> {
    (0..ctx.len()).filter(|&i| ctx.degree(i) == d).collect()
}

fn position(list: &[usize], i: usize, what: &str, ctx: &GradingContext) -> crate::error::Result<usize> {
    list.iter().position(|&j| j == i).ok_or_else(|| {
        Error::InvalidStructure(format!("`{}` is not a {what} coordinate", ctx.name(i)))
    })
}

fn table_error(span: Span, e: Error) -> Diagnostic {
    Diagnostic { span, message: e.to_string(), cause: Some(e) }
}

impl Model {
    pub fn context(&self) -> &GradingContext {
        &self.context
    }

    pub fn doubled(&self) -> &DoubledContext {
        &self.doubled
    }

    pub fn bindings(&self) -> &[(String, Binding)] {
        &self.bindings
    }

    pub fn binding(&self, name: &str) -> Option<&Binding> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, b)| b)
    }

    pub fn function(&self, name: &str) -> Option<&Polynomial> {
        match self.binding(name)? {
            Binding::Function(f) => Some(f),
            _ => None,
        }
    }

    pub fn form(&self, name: &str) -> Option<&Form> {
        match self.binding(name)? {
            Binding::Form(w) => Some(w),
            _ => None,
        }
    }

    pub fn field(&self, name: &str) -> Option<&GradedVectorField> {
        match self.binding(name)? {
            Binding::Field(x) => Some(x),
            _ => None,
        }
    }

    pub fn directives(&self) -> &[Directive] {
        &self.directives
    }

    pub fn has_lie(&self) -> bool {
        self.lie.is_some()
    }

    pub fn has_algebroid(&self) -> bool {
        self.algebroid.is_some()
    }

    pub fn has_courant(&self) -> bool {
        self.courant.is_some()
    }

    pub fn has_poisson(&self) -> bool {
        self.poisson.is_some()
    }

    /// Right-hand sides must be linear combinations of coordinates with
    /// constant coefficients.
    pub fn lie_structure(&self) -> Option<PResult<LieStructure>> {
        let rows = self.lie.as_ref()?;
        Some((|| {
            let mut brackets = Vec::new();
            for ((i, j), rhs, span) in rows {
                let mut lin = Vec::new();
                for (m, c) in rhs.terms() {
                    match m.iter().position(|&e| e == 1) {
                        Some(k) if m.iter().sum::<u32>() == 1 => lin.push((k, c.clone())),
                        _ => return diag(*span, "bracket must be a constant linear combination of generators"),
                    }
                }
                brackets.push((*i, *j, lin));
            }
            let span = rows.first().map(|r| r.2).unwrap_or(Span { line: 1, col: 1 });
            LieStructure::from_brackets(&self.context, &brackets).map_err(|e| table_error(span, e))
        })())
    }

    /// Base coordinates have degree 0 and fiber coordinates degree 1.
    pub fn algebroid_structure(&self) -> Option<PResult<AlgebroidStructure>> {
        let (anchor_rows, bracket_rows) = self.algebroid.as_ref()?;
        let ctx = &self.context;
        Some((|| {
            let base = by_degree(ctx, 0);
            let fiber = by_degree(ctx, 1);
            let z = Polynomial::zero(ctx);
            let mut anchor = vec![vec![z.clone(); base.len()]; fiber.len()];
            for ((a, x), v, span) in anchor_rows {
                let a = position(&fiber, *a, "fiber", ctx).map_err(|e| table_error(*span, e))?;
                let x = position(&base, *x, "base", ctx).map_err(|e| table_error(*span, e))?;
                anchor[a][x] = v.clone();
            }
            let r = fiber.len();
            let mut bracket = vec![vec![vec![z.clone(); r]; r]; r];
            let mut set = vec![vec![false; r]; r];
            for ((a, b), v, span) in bracket_rows {
                let a = position(&fiber, *a, "fiber", ctx).map_err(|e| table_error(*span, e))?;
                let b = position(&fiber, *b, "fiber", ctx).map_err(|e| table_error(*span, e))?;
                let mut rebuilt = Polynomial::zero(ctx);
                for (g, &fi) in fiber.iter().enumerate() {
                    let c = v.partial(fi);
                    rebuilt = &rebuilt + &(&c * &Polynomial::var(ctx, fi));
                    bracket[a][b][g] = c.clone();
                    if !set[b][a] {
                        bracket[b][a][g] = -&c;
                    }
                }
                if rebuilt != *v {
                    return diag(*span, "bracket must be linear in the fiber generators");
                }
                set[a][b] = true;
            }
            let span = bracket_rows.first().or(anchor_rows.first()).map(|r| r.2).unwrap_or(Span { line: 1, col: 1 });
            AlgebroidStructure::new(ctx, base, fiber, anchor, bracket).map_err(|e| table_error(span, e))
        })())
    }

    /// Degrees 0, 2, 1 for base, momenta (aligned with base in declaration
    /// order) and fiber. The pairing is filled symmetrically and the 3-tensor
    /// by total antisymmetry wherever an entry was not given explicitly.
    pub fn courant_structure(&self) -> Option<PResult<CourantStructure>> {
        let table = self.courant.as_ref()?;
        let ctx = &self.context;
        Some((|| {
            let base = by_degree(ctx, 0);
            let momenta = by_degree(ctx, 2);
            let fiber = by_degree(ctx, 1);
            let r = fiber.len();
            let z = Polynomial::zero(ctx);
            let fix = |list: &[usize], i: usize, what: &str, span: Span| {
                position(list, i, what, ctx).map_err(|e| table_error(span, e))
            };
            let mut pairing: PolyMatrix = vec![vec![z.clone(); r]; r];
            let mut given = vec![vec![false; r]; r];
            for ((a, b), v, span) in &table.pairing {
                let (a, b) = (fix(&fiber, *a, "fiber", *span)?, fix(&fiber, *b, "fiber", *span)?);
                pairing[a][b] = v.clone();
                given[a][b] = true;
                if !given[b][a] {
                    pairing[b][a] = v.clone();
                }
            }
            let mut anchor = vec![vec![z.clone(); base.len()]; r];
            for ((a, x), v, span) in &table.anchor {
                anchor[fix(&fiber, *a, "fiber", *span)?][fix(&base, *x, "base", *span)?] = v.clone();
            }
            let mut f = vec![vec![vec![z.clone(); r]; r]; r];
            let mut given: BTreeMap<(usize, usize, usize), ()> = BTreeMap::new();
            let mut rows = Vec::new();
            for ((a, b, c), v, span) in &table.f {
                let k = (fix(&fiber, *a, "fiber", *span)?, fix(&fiber, *b, "fiber", *span)?, fix(&fiber, *c, "fiber", *span)?);
                given.insert(k, ());
                rows.push((k, v.clone()));
            }
            for ((a, b, c), v) in &rows {
                let perms = [
                    ((*a, *b, *c), 1),
                    ((*b, *c, *a), 1),
                    ((*c, *a, *b), 1),
                    ((*b, *a, *c), -1),
                    ((*a, *c, *b), -1),
                    ((*c, *b, *a), -1),
                ];
                for (k, s) in perms {
                    if k == (*a, *b, *c) || !given.contains_key(&k) {
                        f[k.0][k.1][k.2] = if s > 0 { v.clone() } else { -v };
                    }
                }
            }
            for ((a, b, c), v) in &rows {
                f[*a][*b][*c] = v.clone();
            }
            let span = table.f.first().map(|r| r.2).unwrap_or(Span { line: 1, col: 1 });
            CourantStructure::new(ctx, base, momenta, fiber, pairing, anchor, f).map_err(|e| table_error(span, e))
        })())
    }

    /// `{x, y} = e` sets `π^{xy} = e` and, unless given, `π^{yx} = −e`.
    pub fn poisson_structure(&self) -> Option<PResult<PoissonStructure>> {
        let rows = self.poisson.as_ref()?;
        let ctx = &self.context;
        Some((|| {
            let n = ctx.len();
            let mut pi = vec![vec![Polynomial::zero(ctx); n]; n];
            let mut given = vec![vec![false; n]; n];
            for ((i, j), v, _) in rows {
                pi[*i][*j] = v.clone();
                given[*i][*j] = true;
                if !given[*j][*i] {
                    pi[*j][*i] = -v;
                }
            }
            let span = rows.first().map(|r| r.2).unwrap_or(Span { line: 1, col: 1 });
            PoissonStructure::new(ctx, pi).map_err(|e| table_error(span, e))
        })())
    }
}
