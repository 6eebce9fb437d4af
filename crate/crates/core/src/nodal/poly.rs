//! Homogeneous quartics in `x0..x4`: parsing, evaluation and derivatives.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := coefficient | var ('^' int)? | '(' expr ')'
//! coefficient := int | int '/' int
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Eisenstein;

pub type Exponent = [u32; 5];

/// Polynomial with rational coefficients in five variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Exponent, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 5], c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 5];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, BigRational::one());
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    /// Total degree of the highest term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = std::array::from_fn(|i| e1[i] + e2[i]);
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = *e;
            d[i] -= 1;
            out.add_term(d, c * BigRational::from_integer(BigInt::from(e[i])));
        }
        out
    }

    pub fn gradient(&self) -> [Polynomial; 5] {
        std::array::from_fn(|i| self.derivative(i))
    }

    pub fn hessian(&self) -> [[Polynomial; 5]; 5] {
        let g = self.gradient();
        std::array::from_fn(|i| std::array::from_fn(|j| g[i].derivative(j)))
    }

    pub fn eval_exact(&self, x: &[Eisenstein; 5]) -> Eisenstein {
        let mut total = Eisenstein::zero();
        for (e, c) in &self.terms {
            let mut m = Eisenstein::rational(c.clone());
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    m = &m * xi;
                }
            }
            total = &total + &m;
        }
        total
    }

    pub fn eval_complex(&self, x: &[Complex64; 5]) -> Complex64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(e, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                x.iter().zip(e).fold(Complex64::new(c, 0.0), |acc, (xi, &k)| acc * xi.powu(k))
            })
            .sum()
    }

    /// Sum of absolute values of coefficients, a scale for float tolerances.
    pub fn coefficient_mass(&self) -> f64 {
        use num_traits::{Signed, ToPrimitive};
        self.terms.values().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// A syntax or validation error at a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Var(i) => format!("x{i}"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn err<T>(pos: Pos, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line: pos.line, col: pos.col, message: message.into() })
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut pos = Pos { line: 1, col: 1 };
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let here = pos;
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                pos.line += 1;
                pos.col = 1;
            } else {
                pos.col += 1;
            }
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                bump(&mut chars);
            }
            out.push((Tok::Int(digits.parse().expect("ascii digits")), here));
            continue;
        }
        if c == 'x' {
            bump(&mut chars);
            match chars.peek().and_then(|d| d.to_digit(10)) {
                Some(i) if i < 5 => {
                    bump(&mut chars);
                    if chars.peek().is_some_and(|d| d.is_ascii_alphanumeric()) {
                        return err(here, "unknown variable (expected x0..x4)");
                    }
                    out.push((Tok::Var(i as usize), here));
                }
                _ => return err(here, "unknown variable (expected x0..x4)"),
            }
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return err(here, format!("unexpected character `{other}`")),
        };
        bump(&mut chars);
        out.push((tok, here));
    }
    out.push((Tok::End, pos));
    Ok(out)
}

const MAX_DEGREE: u32 = 4;

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.i]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if t.0 != Tok::End {
            self.i += 1;
        }
        t
    }

    /// Parses an expression as a list of signed terms with their start.
    fn terms(&mut self) -> Result<Vec<(Polynomial, Pos)>, ParseError> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let (tok, pos) = self.peek().clone();
            let negate = match tok {
                Tok::Plus | Tok::Minus => {
                    self.next();
                    tok == Tok::Minus
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            out.push((if negate { t.neg() } else { t }, pos));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().0 == Tok::Star {
            self.next();
            let pos = self.peek().1;
            acc = acc.mul(&self.factor()?);
            if acc.degree().unwrap_or(0) > MAX_DEGREE {
                return err(pos, format!("degree exceeds {MAX_DEGREE}"));
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Int(p) => {
                if self.peek().0 == Tok::Slash {
                    self.next();
                    let (t, qpos) = self.next();
                    let Tok::Int(q) = t else {
                        return err(qpos, format!("expected denominator, found {}", describe(&t)));
                    };
                    if q.is_zero() {
                        return err(qpos, "zero denominator");
                    }
                    Ok(Polynomial::constant(BigRational::new(p, q)))
                } else {
                    Ok(Polynomial::constant(BigRational::from_integer(p)))
                }
            }
            Tok::Var(i) => {
                let mut k = 1u32;
                if self.peek().0 == Tok::Caret {
                    self.next();
                    let (t, epos) = self.next();
                    let Tok::Int(n) = t else {
                        return err(epos, format!("expected exponent, found {}", describe(&t)));
                    };
                    k = match u32::try_from(n) {
                        Ok(k) if k <= MAX_DEGREE => k,
                        _ => return err(epos, format!("exponent exceeds {MAX_DEGREE}")),
                    };
                }
                let mut e = [0; 5];
                e[i] = k;
                let mut p = Polynomial::zero();
                p.add_term(e, BigRational::one());
                Ok(p)
            }
            Tok::LParen => {
                let inner = self.terms()?;
                if inner.is_empty() {
                    return err(self.peek().1, "empty parentheses");
                }
                let (t, cpos) = self.next();
                if t != Tok::RParen {
                    return err(cpos, format!("expected `)`, found {}", describe(&t)));
                }
                Ok(inner.iter().fold(Polynomial::zero(), |acc, (p, _)| acc.add(p)))
            }
            other => err(pos, format!("expected coefficient, variable or `(`, found {}", describe(&other))),
        }
    }
}

/// Parses a homogeneous quartic. A top-level term of any other degree is
/// reported at the position where it starts.
pub fn parse_quartic(src: &str) -> Result<Polynomial, ParseError> {
    let mut parser = Parser { toks: tokenize(src)?, i: 0 };
    let terms = parser.terms()?;
    let (tok, pos) = parser.peek().clone();
    if tok != Tok::End {
        return err(pos, format!("unexpected {}", describe(&tok)));
    }
    if terms.is_empty() {
        return err(pos, "empty polynomial");
    }
    let mut total = Polynomial::zero();
    for (p, start) in &terms {
        if !p.is_zero() && p.homogeneous_degree() != Some(MAX_DEGREE) {
            return err(*start, format!("term is not homogeneous of degree {MAX_DEGREE}"));
        }
        total = total.add(p);
    }
    if total.is_zero() {
        return err(Pos { line: 1, col: 1 }, "polynomial is identically zero");
    }
    Ok(total)
}
