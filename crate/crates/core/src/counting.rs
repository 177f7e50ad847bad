//! Exact counts of k-compositions of n under a coprimality constraint.
//!
//! - `R_k(n)`: `gcd(x_1, ..., x_k) = 1`
//! - `A_{k,s}(n)`: the first s summands are coprime to the last k-s
//! - `B_{k,t}(n)`: the summands are t-wise relatively prime
//!
//! Each family has a brute-force route and an identity route; the two are
//! expected to agree exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::multifunc::{
    eval_multiplicative, lambda_diagonal, psi_diagonal, ConstraintKind, CoprimalityConstraint,
    Kernels, LocalFn, Scratch,
};
use crate::numtheory::{self, binomial, binomial_u64, gcd, jordan_totient, mobius, PrimeTable};
use crate::partitions::{count_positive_u64, factorial};

/// Default cap on the nominal number of λ/ψ evaluations in the identity
/// routes, and on `n^{k-1}` for brute-force enumeration.
pub const DEFAULT_WORK_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountQuery {
    pub n: u64,
    pub constraint: CoprimalityConstraint,
    pub method: Method,
}

impl CountQuery {
    pub fn new(n: u64, constraint: CoprimalityConstraint, method: Method) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero("count query"));
        }
        Ok(CountQuery { n, constraint, method })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    pub work_budget: u128,
    pub kernels: Kernels,
    pub mode: Mode,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            work_budget: DEFAULT_WORK_BUDGET,
            kernels: Kernels::STANDARD,
            mode: Mode::default(),
        }
    }
}

/// Number of k-compositions of n, `C(n-1, k-1)`.
pub fn total_compositions(n: u64, k: usize) -> BigInt {
    if n == 0 || k == 0 {
        return BigInt::zero();
    }
    binomial(n - 1, k as u64 - 1)
}

/// Runs a query by its chosen method.
pub fn count(q: &CountQuery, opts: &CountOptions) -> Result<BigInt> {
    let k = q.constraint.k();
    match q.method {
        Method::BruteForce => {
            check_budget(brute_work(q.n, k), opts.work_budget)?;
            Ok(brute_count_with(q.n, &q.constraint, opts.mode))
        }
        Method::Identity => {
            if q.n < k as u64 {
                return Ok(BigInt::zero());
            }
            match q.constraint.kind() {
                ConstraintKind::AllCoprime => Ok(mobius_r(q.n, k)),
                ConstraintKind::SplitCoprime(s) => identity_a_with(q.n, k, s, opts),
                ConstraintKind::TWiseCoprime(t) => identity_b_with(q.n, k, t, opts),
            }
        }
    }
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Nominal brute-force cost, `n^{k-1}`.
pub fn brute_work(n: u64, k: usize) -> u128 {
    (n as u128).saturating_pow(k.saturating_sub(1) as u32)
}

/// Brute-force count by enumerating `x_1, ..., x_{k-1}` with `x_k`
/// determined. Parallel over `x_1` in [`Mode::Parallel`].
pub fn brute_count(n: u64, constraint: &CoprimalityConstraint) -> BigInt {
    brute_count_with(n, constraint, Mode::default())
}

pub fn brute_count_with(n: u64, constraint: &CoprimalityConstraint, mode: Mode) -> BigInt {
    BigInt::from(brute_count_u64(n, constraint, mode))
}

/// Counts fit in `u64` whenever `C(n-1, k-1)` does; enumeration beyond
/// that is far outside any feasible budget, so this asserts it.
pub(crate) fn brute_count_u64(n: u64, constraint: &CoprimalityConstraint, mode: Mode) -> u64 {
    let k = constraint.k();
    if n < k as u64 {
        return 0;
    }
    assert!(
        binomial_u64(n - 1, k as u64 - 1).is_some(),
        "composition count exceeds u64"
    );
    let e = Enumerator {
        n,
        k,
        kind: constraint.kind(),
        table: PrimeTable::global(),
    };
    let top = n - (k as u64 - 1);
    exec::sum_range(mode, 1..top + 1, |x1| e.count_with_first(x1) as u128) as u64
}

struct Enumerator<'a> {
    n: u64,
    k: usize,
    kind: ConstraintKind,
    table: &'a PrimeTable,
}

impl Enumerator<'_> {
    fn count_with_first(&self, x1: u64) -> u64 {
        let mut xs = vec![0u64; self.k];
        xs[0] = x1;
        self.rec(&mut xs, 1, self.n - x1, x1)
    }

    /// `depth` coordinates are placed, summing to `n - rem`; `g` is their gcd.
    fn rec(&self, xs: &mut [u64], depth: usize, rem: u64, g: u64) -> u64 {
        let left = self.k - depth;
        if self.kind == ConstraintKind::AllCoprime && g == 1 {
            // Any completion keeps the gcd at 1.
            return binomial_u64(rem - 1, left as u64 - 1).expect("bounded by C(n-1,k-1)");
        }
        if left == 1 {
            return self.admissible(xs, depth, rem, g) as u64;
        }
        let mut c = 0;
        for x in 1..=rem - (left as u64 - 1) {
            if !self.admissible(xs, depth, x, g) {
                continue;
            }
            xs[depth] = x;
            c += self.rec(xs, depth + 1, rem - x, gcd(g, x));
        }
        c
    }

    /// Whether `x` may be placed at position `depth` given `xs[..depth]`.
    /// Every violated constraint involves the newest coordinate, so checking
    /// only those constraints prunes exactly.
    fn admissible(&self, xs: &[u64], depth: usize, x: u64, g: u64) -> bool {
        match self.kind {
            ConstraintKind::AllCoprime => depth + 1 < self.k || gcd(g, x) == 1,
            ConstraintKind::SplitCoprime(s) => {
                depth < s || xs[..s].iter().all(|&a| gcd(a, x) == 1)
            }
            ConstraintKind::TWiseCoprime(2) => xs[..depth].iter().all(|&a| gcd(a, x) == 1),
            ConstraintKind::TWiseCoprime(t) => {
                // A prime may divide at most t-1 coordinates.
                let placed = &xs[..depth];
                let ok = |p: u64| 1 + placed.iter().filter(|&&a| a % p == 0).count() < t;
                if x <= self.table.bound() {
                    let mut fine = true;
                    self.table.for_each_prime_power(x, |p, _| fine &= ok(p));
                    fine
                } else {
                    numtheory::factorize(x)
                        .expect("summand within factorization range")
                        .primes()
                        .all(ok)
                }
            }
        }
    }
}

/// `R_k(n) = Σ_{d | n} C(d-1, k-1) μ(n/d)`.
pub fn mobius_r(n: u64, k: usize) -> BigInt {
    assert!(n >= 1 && k >= 1, "mobius_r needs n >= 1, k >= 1");
    numtheory::divisors(n)
        .into_iter()
        .map(|d| match mobius(n / d) {
            0 => BigInt::zero(),
            m => binomial(d - 1, k as u64 - 1) * m,
        })
        .sum()
}

/// `a_{k,t} = Σ_{j=t}^{k-1} (-1)^{j-t} s(k-1, j) C(j, t)` for `t = 1..k-1`.
pub fn a_coefficients(k: usize) -> Vec<BigInt> {
    assert!(k >= 2, "a_coefficients needs k >= 2");
    let s = numtheory::stirling_first_row(k - 1);
    (1..k)
        .map(|t| {
            (t..k)
                .map(|j| {
                    let term = &s[j] * binomial(j as u64, t as u64);
                    if (j - t) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

/// `R_k(n) = (1/(k-1)!) Σ_t a_{k,t} J_t(n)`; the division must be exact.
pub fn jordan_r(n: u64, k: usize) -> Result<BigInt> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("jordan_r needs k >= 2, got {k}")));
    }
    if n < k as u64 {
        return Err(Error::InvalidArgument(format!("jordan_r needs n >= k, got n={n}, k={k}")));
    }
    let a = a_coefficients(k);
    let sum: BigInt = a
        .iter()
        .enumerate()
        .map(|(i, c)| c * jordan_totient(i as u32 + 1, n))
        .sum();
    let (q, r) = sum.div_rem(&factorial(k - 1));
    if !r.is_zero() {
        return Err(Error::Consistency(format!(
            "Jordan sum for R_{k}({n}) not divisible by (k-1)!"
        )));
    }
    Ok(q)
}

/// Nominal tuple-loop cost of the identity routes, `Σ_{δ | n} (n/δ)^k`
/// over squarefree δ.
pub fn identity_work(n: u64, k: usize) -> u128 {
    numtheory::divisors(n)
        .into_iter()
        .filter(|&d| mobius(d) != 0)
        .map(|d| ((n / d) as u128).saturating_pow(k as u32))
        .fold(0u128, u128::saturating_add)
}

/// `A_{k,s}(n)` via the λ divisor-sum identity.
pub fn identity_a(n: u64, k: usize, s: usize) -> Result<BigInt> {
    identity_a_with(n, k, s, &CountOptions::default())
}

pub fn identity_a_with(n: u64, k: usize, s: usize, opts: &CountOptions) -> Result<BigInt> {
    CoprimalityConstraint::split(k, s)?;
    identity_sum(n, k, s, opts.kernels.lambda_local, |delta| lambda_diagonal(k, delta), opts)
}

/// `B_{k,t}(n)` via the ψ divisor-sum identity.
pub fn identity_b(n: u64, k: usize, t: usize) -> Result<BigInt> {
    identity_b_with(n, k, t, &CountOptions::default())
}

pub fn identity_b_with(n: u64, k: usize, t: usize, opts: &CountOptions) -> Result<BigInt> {
    CoprimalityConstraint::t_wise(k, t)?;
    identity_sum(n, k, t, opts.kernels.psi_local, |delta| psi_diagonal(k, t, delta), opts)
}

/// `Σ_{δ | n} w(δ) Σ_j f(j) N(n/δ; j)` where `j` ranges over k-tuples in
/// `[1, n/δ]^k` with `gcd(j) = 1` and `gcd(j_1 ⋯ j_k, δ) = 1`, and
/// `w(δ) = f(δ, ..., δ)` in closed form.
fn identity_sum<W>(n: u64, k: usize, param: usize, local: LocalFn, weight: W, opts: &CountOptions) -> Result<BigInt>
where
    W: Fn(u64) -> i64,
{
    if n < k as u64 {
        return Err(Error::InvalidArgument(format!("identity needs n >= k, got n={n}, k={k}")));
    }
    check_budget(identity_work(n, k), opts.work_budget)?;
    // Every N(n/δ; j) is at most C(n-1, k-1), so the inner sums fit i128
    // once that binomial fits u64.
    if binomial_u64(n - 1, k as u64 - 1).is_none() {
        return Err(Error::InvalidArgument(format!("C({}, {}) exceeds u64", n - 1, k - 1)));
    }
    let table = PrimeTable::global();
    if n > table.bound() {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds the sieve bound")));
    }
    let mut total = 0i128;
    for delta in numtheory::divisors(n) {
        let w = weight(delta);
        if w == 0 {
            continue;
        }
        let m = n / delta;
        // λ and ψ vanish unless every coordinate is squarefree.
        let candidates: Vec<u64> = (1..=m)
            .filter(|&j| table.is_squarefree_small(j) && gcd(j, delta) == 1)
            .collect();
        let walker = TupleWalker {
            k,
            m,
            param,
            local,
            candidates: &candidates,
            table,
        };
        let inner = exec::sum_range_signed(opts.mode, 0..candidates.len() as u64, |i| {
            walker.sum_with_first(i as usize)
        });
        total += w as i128 * inner;
    }
    Ok(BigInt::from(total))
}

struct TupleWalker<'a> {
    k: usize,
    m: u64,
    param: usize,
    local: LocalFn,
    candidates: &'a [u64],
    table: &'a PrimeTable,
}

impl TupleWalker<'_> {
    fn sum_with_first(&self, i: usize) -> i128 {
        let first = self.candidates[i];
        if first + (self.k as u64 - 1) > self.m {
            return 0;
        }
        let mut j = vec![0u64; self.k];
        j[0] = first;
        let mut scratch = Scratch::default();
        let mut dp = Vec::new();
        self.rec(&mut j, 1, first, first, &mut scratch, &mut dp)
    }

    fn rec(&self, j: &mut [u64], depth: usize, used: u64, g: u64, scratch: &mut Scratch, dp: &mut Vec<u64>) -> i128 {
        if depth == self.k {
            if g != 1 {
                return 0;
            }
            let f = eval_multiplicative(self.table, j, self.param, self.local, scratch);
            if f == 0 {
                return 0;
            }
            return f as i128 * count_positive_u64(self.m, j, dp) as i128;
        }
        // N(m; j) = 0 once Σj > m; each later coordinate is at least 1.
        let room = self.m - used - (self.k - depth - 1) as u64;
        let mut acc = 0i128;
        for &x in self.candidates {
            if x > room {
                break;
            }
            j[depth] = x;
            acc += self.rec(j, depth + 1, used + x, gcd(g, x), scratch, dp);
        }
        acc
    }
}

/// Convenience: count with the identity route and return it as `u64`.
pub fn identity_count_u64(q: &CountQuery, opts: &CountOptions) -> Result<u64> {
    count(&CountQuery { method: Method::Identity, ..*q }, opts)?
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("count exceeds u64".into()))
}
