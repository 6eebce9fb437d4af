//! Matrix rank, exactly over `Z` and `Z[ω]` by fraction-free elimination,
//! or numerically by singular values.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::Eisenstein;

/// Integral domain with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    /// `self / o`, where `o` is known to divide `self`.
    fn div_exact(&self, o: &Self) -> Self;
    fn unit() -> Self;
    fn zero_element() -> Self;
}

impl ExactRing for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(Zero::is_zero(&r), "inexact division");
        q
    }
    fn unit() -> Self {
        One::one()
    }
    fn zero_element() -> Self {
        Zero::zero()
    }
}

/// `a + bω` with integer `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl ExactRing for EisensteinInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn mul(&self, o: &Self) -> Self {
        let bd = &self.b * &o.b;
        Self { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a - bd }
    }
    fn sub(&self, o: &Self) -> Self {
        Self { a: &self.a - &o.a, b: &self.b - &o.b }
    }
    fn div_exact(&self, o: &Self) -> Self {
        // x / (c + dω) = x (c - d - dω) / (c² - cd + d²)
        let conj = Self { a: &o.a - &o.b, b: -&o.b };
        let norm = &o.a * &o.a - &o.a * &o.b + &o.b * &o.b;
        let num = self.mul(&conj);
        Self { a: ExactRing::div_exact(&num.a, &norm), b: ExactRing::div_exact(&num.b, &norm) }
    }
    fn unit() -> Self {
        Self { a: One::one(), b: Zero::zero() }
    }
    fn zero_element() -> Self {
        Self { a: Zero::zero(), b: Zero::zero() }
    }
}

/// Rank by Bareiss elimination with row pivoting. Every intermediate entry
/// is a minor of the input, so all divisions are exact.
pub fn bareiss_rank<R: ExactRing>(mut m: Vec<Vec<R>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = R::unit();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let v = pivot.mul(&row[j]).sub(&factor.mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev);
            }
            row[c] = R::zero_element();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Exact rank of a matrix over `Q(ω)`.
pub fn exact_rank(rows: &[Vec<Eisenstein>]) -> usize {
    let rational = rows.iter().flatten().all(|x| x.b.is_zero());
    let scaled: Vec<(BigInt, &Vec<Eisenstein>)> =
        rows.iter().map(|row| (row.iter().fold(BigInt::one(), |l, x| l.lcm(&x.denominator_lcm())), row)).collect();
    let integral = |x: &num_rational::BigRational, l: &BigInt| (x * l).to_integer();
    if rational {
        bareiss_rank(scaled.iter().map(|(l, row)| row.iter().map(|x| integral(&x.a, l)).collect()).collect())
    } else {
        bareiss_rank(
            scaled
                .iter()
                .map(|(l, row)| {
                    row.iter().map(|x| EisensteinInt { a: integral(&x.a, l), b: integral(&x.b, l) }).collect()
                })
                .collect(),
        )
    }
}

/// Number of singular values above `tol` times the largest one.
pub fn float_rank(m: &DMatrix<Complex64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}
