//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors ordered
//! graded-lexicographically on the declared variable order; zero
//! coefficients are never stored. The text form accepted by [`MultiPoly::parse`]
//! is the one produced by `Display`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{FieldContext, Scalar};

/// Variable names the text grammar understands, in canonical order.
pub const ALPHABET: [&str; 18] = [
    "x", "y", "z0", "z1", "z2", "z3", "z4", "s0", "s1", "s2", "c0", "c1", "c2", "t0", "t1", "u", "v", "H",
];

/// Extra names used internally for coordinates on the target space.
const INTERNAL: [&str; 4] = ["p0", "p1", "p2", "p3"];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `n` variables, descending grlex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ctx: FieldContext,
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(ctx: FieldContext, vars: &[&str]) -> Self {
        MultiPoly { ctx, vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    fn empty_like(&self) -> Self {
        MultiPoly { ctx: self.ctx, vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: FieldContext, vars: &[&str], c: Scalar) -> Result<Self> {
        let n = vars.len();
        Self::from_terms(ctx, vars, [(vec![0; n], c)])
    }

    pub fn var(ctx: FieldContext, vars: &[&str], name: &str) -> Result<Self> {
        let idx = vars.iter().position(|v| *v == name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::from_terms(ctx, vars, [(e, ctx.one())])
    }

    /// Builds a polynomial, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(ctx: FieldContext, vars: &[&str], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Self::zero(ctx, vars);
        for (e, c) in terms {
            if c.ctx() != ctx {
                return Err(Error::ContextMismatch);
            }
            if e.len() != vars.len() {
                return Err(Error::InvalidInput(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    vars.len()
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ctx(&self) -> FieldContext {
        self.ctx
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.degree(), self.min_degree()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let mut out = self.empty_like();
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn one_like(&self) -> MultiPoly {
        let mut out = self.empty_like();
        out.terms.insert(Monomial::one(self.nvars()), self.ctx.one());
        out
    }

    fn check_ring(&self, other: &MultiPoly) {
        assert!(
            self.ctx == other.ctx && self.vars == other.vars,
            "polynomials from different rings were combined"
        );
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        if point.iter().any(|s| s.ctx() != self.ctx) {
            return Err(Error::ContextMismatch);
        }
        // Power tables keep evaluation linear in the number of terms.
        let maxdeg: Vec<u32> = (0..self.nvars()).map(|i| self.degree_in(i).unwrap_or(0)).collect();
        let powers: Vec<Vec<Scalar>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = vec![self.ctx.one()];
                for k in 0..d as usize {
                    let next = &v[k] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = self.ctx.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Replace one variable by a polynomial of the same ring.
    pub fn substitute(&self, var: &str, replacement: &MultiPoly) -> Result<MultiPoly> {
        if replacement.ctx != self.ctx {
            return Err(Error::ContextMismatch);
        }
        if replacement.vars != self.vars {
            return Err(Error::InvalidInput("replacement lives in a different ring".into()));
        }
        let idx = self.vars.iter().position(|v| v == var).ok_or_else(|| Error::UnknownVariable(var.into()))?;
        let maxd = self.degree_in(idx).unwrap_or(0);
        let mut pows = vec![self.one_like()];
        for k in 0..maxd as usize {
            let next = &pows[k] * replacement;
            pows.push(next);
        }
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.0[idx];
            rest.0[idx] = 0;
            let mut mono = self.empty_like();
            mono.terms.insert(rest, c.clone());
            out = &out + &(&mono * &pows[e as usize]);
        }
        Ok(out)
    }

    /// Ring map sending the i-th variable to `images[i]`; all images share a ring.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars() {
            return Err(Error::InvalidInput("one image per variable is required".into()));
        }
        let target = images.first().ok_or_else(|| Error::InvalidInput("no images".into()))?;
        for im in images {
            if im.ctx != self.ctx {
                return Err(Error::ContextMismatch);
            }
            if im.vars != target.vars {
                return Err(Error::InvalidInput("images live in different rings".into()));
            }
        }
        let mut cache: Vec<Vec<MultiPoly>> = images.iter().map(|im| vec![im.one_like()]).collect();
        let mut out = target.empty_like();
        for (m, c) in &self.terms {
            let mut t = target.one_like().scale(c);
            for (i, &e) in m.0.iter().enumerate() {
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                if e > 0 {
                    t = &t * &cache[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[var] -= 1;
            out.add_term(d, c * &self.ctx.from_i64(e as i64));
        }
        out
    }

    /// Parse text over `ctx`; the variable list is every alphabet variable
    /// that occurs, in canonical order.
    pub fn parse(text: &str, ctx: FieldContext) -> Result<MultiPoly> {
        let tokens = tokenize(text)?;
        let mut used = Vec::new();
        for t in &tokens {
            if let Tok::Ident(name) = &t.tok {
                if !ALPHABET.contains(&name.as_str()) && !INTERNAL.contains(&name.as_str()) {
                    return Err(Error::UnknownVariable(name.clone()));
                }
                used.push(name.clone());
            }
        }
        let vars: Vec<&str> =
            ALPHABET.iter().chain(INTERNAL.iter()).copied().filter(|v| used.iter().any(|u| u == v)).collect();
        Parser { tokens, idx: 0, ctx, vars: &vars }.parse_all()
    }

    /// Parse text over `ctx` in a fixed variable list.
    pub fn parse_in(text: &str, ctx: FieldContext, vars: &[&str]) -> Result<MultiPoly> {
        let tokens = tokenize(text)?;
        Parser { tokens, idx: 0, ctx, vars }.parse_all()
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = self.empty_like();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-&self.ctx.one())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative_literal();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token { tok: Tok::Num(text[start..i].parse().expect("digits")), pos: start });
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(text[start..i].to_string()), pos: start });
                continue;
            }
            _ => {
                return Err(Error::Syntax { pos: start, msg: format!("unexpected character {:?}", b as char) })
            }
        };
        out.push(Token { tok, pos: start });
        i += 1;
    }
    out.push(Token { tok: Tok::End, pos: text.len() });
    Ok(out)
}

struct Parser<'v> {
    tokens: Vec<Token>,
    idx: usize,
    ctx: FieldContext,
    vars: &'v [&'v str],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.idx].tok
    }

    fn pos(&self) -> usize {
        self.tokens[self.idx].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.idx].clone();
        if self.idx + 1 < self.tokens.len() {
            self.idx += 1;
        }
        t
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn parse_all(mut self) -> Result<MultiPoly> {
        let p = self.expr()?;
        if *self.peek() != Tok::End {
            return self.err("unexpected trailing input");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.factor()?;
                    let c = match d.degree() {
                        Some(0) => d.coefficient(&vec![0; d.nvars()]),
                        None => return Err(Error::DivisionByZero),
                        _ => return Err(Error::Syntax { pos, msg: "divisor must be a constant".into() }),
                    };
                    acc = acc.scale(&c.inv().ok_or(Error::DivisionByZero)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.factor()?)
            }
            Tok::Plus => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let t = self.bump();
            match t.tok {
                Tok::Num(n) => {
                    let e = n
                        .to_u32()
                        .ok_or(Error::Syntax { pos: t.pos, msg: "exponent too large".into() })?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Syntax { pos: t.pos, msg: "expected a non-negative integer exponent".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let t = self.bump();
        match t.tok {
            Tok::Num(n) => MultiPoly::constant(self.ctx, self.vars, self.ctx.from_bigint(&n)),
            Tok::Ident(name) => {
                if !self.vars.contains(&name.as_str()) {
                    return Err(Error::UnknownVariable(name));
                }
                MultiPoly::var(self.ctx, self.vars, &name)
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax { pos: t.pos, msg: "unexpected end of input".into() }),
            _ => Err(Error::Syntax { pos: t.pos, msg: "expected a number, variable or `(`".into() }),
        }
    }
}
