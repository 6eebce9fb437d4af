//! Scalars for node coordinates: `Q`, `Q(ω)` with `ω² + ω + 1 = 0`, and
//! complex floats.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldMode {
    Rational,
    Eisenstein,
    Float,
}

impl FromStr for FieldMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "rational" => Ok(FieldMode::Rational),
            "eisenstein" => Ok(FieldMode::Eisenstein),
            "float" => Ok(FieldMode::Float),
            other => Err(format!("unknown field `{other}` (expected rational, eisenstein or float)")),
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldMode::Rational => "rational",
            FieldMode::Eisenstein => "eisenstein",
            FieldMode::Float => "float",
        })
    }
}

/// `a + bω` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub a: BigRational,
    pub b: BigRational,
}

impl Eisenstein {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn omega() -> Self {
        Self { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate `a + bω̄ = (a - b) - bω`.
    pub fn conj(&self) -> Self {
        Self { a: &self.a - &self.b, b: -&self.b }
    }

    /// `a² - ab + b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Self { a: c.a / &n, b: c.b / n })
    }

    /// Least common multiple of the two denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    pub fn to_complex(&self) -> Complex64 {
        let a = ratio_to_f64(&self.a);
        let b = ratio_to_f64(&self.b);
        Complex64::new(a - b / 2.0, b * 3f64.sqrt() / 2.0)
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for &Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: &Eisenstein) -> Eisenstein {
        Eisenstein { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: &Eisenstein) -> Eisenstein {
        Eisenstein { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: &Eisenstein) -> Eisenstein {
        let bd = &self.b * &o.b;
        Eisenstein { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a - bd }
    }
}

impl Neg for &Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein { a: -&self.a, b: -&self.b }
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*w", self.b),
            (false, false) if self.b.is_negative() => write!(f, "{}{}*w", self.a, self.b),
            (false, false) => write!(f, "{}+{}*w", self.a, self.b),
        }
    }
}

/// A node coordinate as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldElement {
    Rational(BigRational),
    Eisenstein(Eisenstein),
    Float(Complex64),
}

impl FieldElement {
    pub fn parse(mode: FieldMode, s: &str) -> Result<Self, String> {
        match mode {
            FieldMode::Rational => parse_rational(s).map(FieldElement::Rational),
            FieldMode::Eisenstein => parse_eisenstein(s).map(FieldElement::Eisenstein),
            FieldMode::Float => parse_float(s).map(FieldElement::Float),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Eisenstein(e) => e.is_zero(),
            FieldElement::Float(z) => *z == Complex64::new(0.0, 0.0),
        }
    }

    /// Exact value, `None` in float mode.
    pub fn exact(&self) -> Option<Eisenstein> {
        match self {
            FieldElement::Rational(r) => Some(Eisenstein::rational(r.clone())),
            FieldElement::Eisenstein(e) => Some(e.clone()),
            FieldElement::Float(_) => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            FieldElement::Rational(r) => Complex64::new(ratio_to_f64(r), 0.0),
            FieldElement::Eisenstein(e) => e.to_complex(),
            FieldElement::Float(z) => *z,
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let r: BigRational = t.parse().map_err(|_| format!("`{s}` is not an integer or p/q"))?;
    Ok(r)
}

/// Splits `a+b*w` style input into signed summands.
fn summands(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        let prev = bytes[i - 1];
        if matches!(bytes[i], b'+' | b'-') && !matches!(prev, b'e' | b'E' | b'*' | b'/') {
            out.push(&s[start..i]);
            start = i;
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses `a`, `b*w` or `a±b*w` with the coefficient parser `coef`.
fn parse_pair<T, F>(s: &str, zero: T, one: T, neg: fn(T) -> T, coef: F) -> Result<(T, T), String>
where
    T: Clone,
    F: Fn(&str) -> Result<T, String>,
{
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty value".to_string());
    }
    let parts = summands(&compact);
    if parts.len() > 2 {
        return Err(format!("`{s}` has more than two summands"));
    }
    let (mut re, mut im) = (None, None);
    for part in parts {
        let (sign, body) = match part.as_bytes()[0] {
            b'-' => (true, &part[1..]),
            b'+' => (false, &part[1..]),
            _ => (false, part),
        };
        let (slot, value) = if body == "w" {
            (&mut im, one.clone())
        } else if let Some(c) = body.strip_suffix("*w") {
            (&mut im, coef(c)?)
        } else {
            (&mut re, coef(body)?)
        };
        if slot.is_some() {
            return Err(format!("`{s}` repeats a summand"));
        }
        *slot = Some(if sign { neg(value) } else { value });
    }
    Ok((re.unwrap_or(zero.clone()), im.unwrap_or(zero)))
}

pub fn parse_eisenstein(s: &str) -> Result<Eisenstein, String> {
    let zero = BigRational::zero();
    let (a, b) = parse_pair(s, zero, BigRational::one(), |x| -x, parse_rational)?;
    Ok(Eisenstein::new(a, b))
}

/// Decimal, optionally `a+b*w` with `ω = -1/2 + i√3/2`.
pub fn parse_float(s: &str) -> Result<Complex64, String> {
    let (a, b) = parse_pair(
        s,
        0.0,
        1.0,
        |x: f64| -x,
        |c| c.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| format!("`{c}` is not a finite decimal")),
    )?;
    Ok(Complex64::new(a - b / 2.0, b * 3f64.sqrt() / 2.0))
}
