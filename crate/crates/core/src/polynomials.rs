//! Exact integer polynomials and the constraint polynomials `F_{k,s}` and
//! `G_{k,t}` whose values at primes drive every Euler factor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::binomial;

/// Dense polynomial with exact integer coefficients, ascending degree.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntegerPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IntegerPolynomial { coeffs }
    }

    /// `(x + c)^n`.
    pub fn shifted_power(c: i64, n: usize) -> Self {
        let coeffs = (0..=n as u64)
            .map(|i| binomial(n as u64, i) * num_traits::pow(BigInt::from(c), n - i as usize))
            .collect();
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division by `x`; fails unless the constant term is zero.
    pub fn div_x(&self) -> Option<Self> {
        match self.coeffs.first() {
            None => Some(Self::zero()),
            Some(c) if c.is_zero() => Some(Self::new(self.coeffs[1..].to_vec())),
            Some(_) => None,
        }
    }

    /// Sum of absolute values of the coefficients.
    pub fn abs_coeff_sum(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_u64(&self, x: u64) -> BigInt {
        self.eval(&BigInt::from(x))
    }
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn add(self, rhs: Self) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntegerPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn sub(self, rhs: Self) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntegerPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn mul(self, rhs: Self) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(out)
    }
}

impl Neg for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn neg(self) -> IntegerPolynomial {
        IntegerPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            match (show_mag, i) {
                (true, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}x")?,
                (true, _) => write!(f, "{mag}x^{i}")?,
                (false, 1) => write!(f, "x")?,
                (false, _) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `F_{k,s}(x) = (x^k + (x-1)^k - x^s (x-1)^{k-s} - x^{k-s} (x-1)^s + (-1)^{k-1}) / x`.
///
/// The bracket is expanded symbolically; its constant term must vanish.
pub fn build_f(k: usize, s: usize) -> Result<IntegerPolynomial> {
    if k < 3 || s < 1 || s >= k {
        return Err(Error::InvalidArgument(format!(
            "F_(k,s) needs k >= 3 and 1 <= s <= k-1, got k={k}, s={s}"
        )));
    }
    let x = |n| IntegerPolynomial::monomial(n);
    let xm1 = |n| IntegerPolynomial::shifted_power(-1, n);
    let mut bracket = &x(k) + &xm1(k);
    bracket = &bracket - &(&x(s) * &xm1(k - s));
    bracket = &bracket - &(&x(k - s) * &xm1(s));
    bracket = &bracket + &IntegerPolynomial::constant(sign(k - 1));
    bracket.div_x().ok_or_else(|| {
        Error::Consistency(format!("F_({k},{s}) bracket has nonzero constant term"))
    })
}

/// `G_{k,t}`, built from both of its closed forms; they must agree
/// coefficient by coefficient.
pub fn build_g(k: usize, t: usize) -> Result<IntegerPolynomial> {
    if k < 3 || t < 2 || t > k {
        return Err(Error::InvalidArgument(format!(
            "G_(k,t) needs k >= 3 and 2 <= t <= k, got k={k}, t={t}"
        )));
    }
    let (first, second) = g_forms(k, t);
    let first = first.div_x().ok_or_else(|| {
        Error::Consistency(format!("G_({k},{t}) first form not divisible by x"))
    })?;
    let second = second.div_x().ok_or_else(|| {
        Error::Consistency(format!("G_({k},{t}) second form not divisible by x"))
    })?;
    if first != second {
        return Err(Error::Consistency(format!(
            "G_({k},{t}) forms disagree: {first} vs {second}"
        )));
    }
    Ok(first)
}

/// The two brackets (before division by `x`) defining `G_{k,t}`:
/// `Σ_{j<t} C(k,j)(x-1)^{k-j} + (-1)^{k-t} C(k-1,t-1)` and
/// `x^k - Σ_{j=t}^{k-1} (-1)^{j-t} C(k,j) C(j-1,t-1) x^{k-j}`.
pub fn g_forms(k: usize, t: usize) -> (IntegerPolynomial, IntegerPolynomial) {
    let (k64, t64) = (k as u64, t as u64);
    let mut first = IntegerPolynomial::constant(sign(k - t) * binomial(k64 - 1, t64 - 1));
    for j in 0..t {
        let term = IntegerPolynomial::shifted_power(-1, k - j).scale(&binomial(k64, j as u64));
        first = &first + &term;
    }
    let mut second = IntegerPolynomial::monomial(k);
    for j in t..k {
        let c = sign(j - t) * binomial(k64, j as u64) * binomial(j as u64 - 1, t64 - 1);
        second = &second - &IntegerPolynomial::monomial(k - j).scale(&c);
    }
    (first, second)
}

pub fn eval_poly(p: &IntegerPolynomial, x: &BigInt) -> BigInt {
    p.eval(x)
}

/// `e_j(values)`; `e_0 = 1` and `e_j = 0` for `j > len`.
pub fn elementary_symmetric(j: usize, values: &[BigRational]) -> BigRational {
    if j > values.len() {
        return BigRational::zero();
    }
    // e[i] holds e_i of the values consumed so far.
    let mut e = vec![BigRational::zero(); j + 1];
    e[0] = BigRational::one();
    for v in values {
        for i in (1..=j).rev() {
            let add = &e[i - 1] * v;
            e[i] += add;
        }
    }
    e.swap_remove(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Naive evaluation of the defining bracket of F at an integer point.
    fn f_bracket_at(k: u32, s: u32, x: i64) -> i64 {
        let x1 = x - 1;
        x.pow(k) + x1.pow(k) - x.pow(s) * x1.pow(k - s) - x.pow(k - s) * x1.pow(s)
            + if k % 2 == 1 { 1 } else { -1 }
    }

    #[test]
    fn f_examples() {
        assert_eq!(build_f(3, 1).unwrap(), IntegerPolynomial::from_i64(&[2]));
        assert_eq!(build_f(3, 2).unwrap(), IntegerPolynomial::from_i64(&[2]));
        assert_eq!(build_f(4, 1).unwrap(), IntegerPolynomial::from_i64(&[-3, 3]));
        assert!(build_f(2, 1).is_err());
        assert!(build_f(4, 4).is_err());
    }

    #[test]
    fn f_matches_pointwise_bracket() {
        for k in 3..=9u32 {
            for s in 1..k {
                let f = build_f(k as usize, s as usize).unwrap();
                for x in 1..=12i64 {
                    let lhs = f.eval(&BigInt::from(x)) * x;
                    assert_eq!(lhs, BigInt::from(f_bracket_at(k, s, x)), "k={k} s={s} x={x}");
                }
            }
        }
    }

    #[test]
    fn g_examples() {
        assert_eq!(build_g(3, 2).unwrap(), IntegerPolynomial::from_i64(&[-3, 0, 1]));
        assert_eq!(build_g(4, 2).unwrap(), IntegerPolynomial::from_i64(&[8, -6, 0, 1]));
        assert_eq!(build_g(4, 3).unwrap(), IntegerPolynomial::from_i64(&[-4, 0, 0, 1]));
        for k in 3..=12 {
            assert_eq!(build_g(k, k).unwrap(), IntegerPolynomial::monomial(k - 1));
        }
        assert!(build_g(3, 1).is_err());
        assert!(build_g(3, 4).is_err());
    }

    #[test]
    fn g_first_form_pointwise() {
        // Direct integer evaluation of the first bracket.
        for k in 3..=8u64 {
            for t in 2..=k {
                let g = build_g(k as usize, t as usize).unwrap();
                for x in 2..=9i64 {
                    let mut b = BigInt::zero();
                    for j in 0..t {
                        b += binomial(k, j) * num_traits::pow(BigInt::from(x - 1), (k - j) as usize);
                    }
                    b += sign((k - t) as usize) * binomial(k - 1, t - 1);
                    assert_eq!(g.eval(&BigInt::from(x)) * x, b);
                }
            }
        }
    }

    #[test]
    fn degrees_and_symmetry() {
        for k in 3..=12 {
            for s in 1..k {
                let f = build_f(k, s).unwrap();
                assert_eq!(f.degree(), Some(k - 3), "F({k},{s})");
                assert_eq!(f, build_f(k, k - s).unwrap());
            }
            for t in 2..=k {
                assert_eq!(build_g(k, t).unwrap().degree(), Some(k - 1), "G({k},{t})");
            }
        }
    }

    #[test]
    fn eval_examples() {
        let p = IntegerPolynomial::from_i64(&[-3, 0, 1]);
        assert_eq!(eval_poly(&p, &BigInt::from(2)), BigInt::one());
        let c = IntegerPolynomial::constant(2);
        assert_eq!(eval_poly(&c, &BigInt::from(1_000_000)), BigInt::from(2));
        let l = IntegerPolynomial::from_i64(&[-3, 3]);
        assert_eq!(eval_poly(&l, &BigInt::from(5)), BigInt::from(12));
    }

    #[test]
    fn display() {
        assert_eq!(IntegerPolynomial::from_i64(&[8, -6, 0, 1]).to_string(), "x^3 - 6x + 8");
        assert_eq!(IntegerPolynomial::from_i64(&[-3, 3]).to_string(), "3x - 3");
        assert_eq!(IntegerPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn elementary_symmetric_examples() {
        let v = [r(1, 2), r(1, 3), r(1, 5)];
        assert_eq!(elementary_symmetric(0, &v), BigRational::one());
        assert_eq!(elementary_symmetric(0, &[]), BigRational::one());
        let pairs = r(1, 6) + r(1, 10) + r(1, 15);
        assert_eq!(elementary_symmetric(2, &v), pairs);
        assert_eq!(elementary_symmetric(2, &v), r(1, 3));
        assert_eq!(elementary_symmetric(3, &v), r(1, 30));
        assert_eq!(elementary_symmetric(4, &v), BigRational::zero());
    }

    #[test]
    fn elementary_symmetric_of_equal_values_is_binomial() {
        let p = r(1, 7);
        for k in 1..=8usize {
            let vals = vec![p.clone(); k];
            for j in 0..=k {
                let expect = BigRational::from_integer(binomial(k as u64, j as u64))
                    * num_traits::pow(p.clone(), j);
                assert_eq!(elementary_symmetric(j, &vals), expect);
            }
        }
    }
}
