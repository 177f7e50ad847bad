//! Restricted partition functions.
//!
//! `P(n; a)` counts nonnegative solutions of `a_1 x_1 + ... + a_k x_k = n`,
//! `N(n; a)` counts positive ones, and `N(n; a) = P(n - Σa; a)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::binomial;

/// Positive integer weights `(a_1, ..., a_k)`, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    a: Vec<u64>,
    gcd: u64,
}

impl WeightVector {
    pub fn new(a: Vec<u64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidArgument("weight vector must be nonempty".into()));
        }
        if a.contains(&0) {
            return Err(Error::InvalidArgument("weights must be positive".into()));
        }
        let gcd = a.iter().fold(0u64, |g, &x| g.gcd(&x));
        Ok(WeightVector { a, gcd })
    }

    pub fn weights(&self) -> &[u64] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn sum(&self) -> u64 {
        self.a.iter().sum()
    }

    pub fn product(&self) -> BigInt {
        self.a.iter().map(|&x| BigInt::from(x)).product()
    }

    pub fn lcm(&self) -> u64 {
        self.a.iter().fold(1u64, |l, &x| l.lcm(&x))
    }

    fn require_coprime(&self) -> Result<()> {
        if self.gcd == 1 {
            Ok(())
        } else {
            Err(Error::NonCoprimeWeights(self.gcd))
        }
    }
}

/// DP table `P(0..=n; a)`, filled weight by weight in unbounded-knapsack
/// order.
pub fn nonneg_table(n: u64, a: &WeightVector) -> Vec<BigInt> {
    let n = n as usize;
    let mut table = vec![BigInt::zero(); n + 1];
    table[0] = BigInt::one();
    for &w in a.weights() {
        let w = w as usize;
        for m in w..=n {
            let (lo, hi) = table.split_at_mut(m);
            hi[0] += &lo[m - w];
        }
    }
    table
}

/// `P(n; a)`.
pub fn count_nonneg(n: u64, a: &WeightVector) -> BigInt {
    nonneg_table(n, a).swap_remove(n as usize)
}

/// `N(n; a)`.
pub fn count_positive(n: u64, a: &WeightVector) -> BigInt {
    match n.checked_sub(a.sum()) {
        Some(m) => count_nonneg(m, a),
        None => BigInt::zero(),
    }
}

/// `N(n; a)` in machine integers for the identity hot loops.
///
/// Callers guarantee `N(n; a) <= C(n-1, k-1) < 2^64`; every table cell is
/// bounded by the final count of a prefix of the weights, so no cell can
/// overflow either. `scratch` is reused across calls.
pub(crate) fn count_positive_u64(n: u64, a: &[u64], scratch: &mut Vec<u64>) -> u64 {
    let total: u64 = a.iter().sum();
    let Some(m) = n.checked_sub(total) else {
        return 0;
    };
    let m = m as usize;
    scratch.clear();
    scratch.resize(m + 1, 0);
    scratch[0] = 1;
    for &w in a {
        let w = w as usize;
        for i in w..=m {
            scratch[i] += scratch[i - w];
        }
    }
    scratch[m]
}

/// Main term `n^{k-1} / ((k-1)! a_1 ... a_k)` of `N(n; a)`.
pub fn main_term(n: u64, a: &WeightVector) -> Result<BigRational> {
    a.require_coprime()?;
    let k = a.len();
    let num = num_traits::pow(BigInt::from(n), k - 1);
    let den = factorial(k - 1) * a.product();
    Ok(BigRational::new(num, den))
}

/// `(c_{k-1}, c_{k-2})`: the two leading coefficients of the polynomial
/// part of `P(n; a)`.
pub fn leading_coeffs(a: &WeightVector) -> Result<(BigRational, BigRational)> {
    a.require_coprime()?;
    let k = a.len();
    if k < 2 {
        return Err(Error::InvalidArgument("leading_coeffs needs k >= 2".into()));
    }
    let prod = a.product();
    let top = BigRational::new(BigInt::one(), factorial(k - 1) * &prod);
    let next = BigRational::new(BigInt::from(a.sum()), BigInt::from(2) * factorial(k - 2) * prod);
    Ok((top, next))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolyReport {
    /// `lcm(a)`.
    pub period: u64,
    /// `k - 1`.
    pub degree: usize,
    /// `max |Δ_L^k P(n; a)|` over the tested range.
    pub max_abs_kth_difference: BigInt,
    /// Number of k-th differences evaluated.
    pub differences_checked: u64,
}

/// k-th finite difference with step `L = lcm(a)` of `n ↦ P(n; a)`, taken at
/// every `n` with `n + kL <= n_max`. Vanishes identically iff `P` agrees
/// with a quasi-polynomial of degree `<= k-1` and period `L` on the range.
pub fn quasipoly_check(a: &WeightVector, n_max: u64) -> Result<QuasiPolyReport> {
    a.require_coprime()?;
    let k = a.len();
    let period = a.lcm();
    let span = (k as u64 + 1) * period;
    if n_max < span {
        return Err(Error::RangeTooSmall(format!(
            "n_max = {n_max} < (k+1)*lcm(a) = {span}"
        )));
    }
    let table = nonneg_table(n_max, a);
    let weights: Vec<BigInt> = (0..=k)
        .map(|i| {
            let c = binomial(k as u64, i as u64);
            if (k - i).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
        .collect();
    let step = period as usize;
    let last = n_max as usize - k * step;
    let mut max_abs = BigInt::zero();
    for n in 0..=last {
        let diff: BigInt = weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * &table[n + i * step])
            .sum();
        let d = diff.abs();
        if d > max_abs {
            max_abs = d;
        }
    }
    Ok(QuasiPolyReport {
        period,
        degree: k - 1,
        max_abs_kth_difference: max_abs,
        differences_checked: last as u64 + 1,
    })
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}
