//! Elementary number theory: sieve, factorization, divisors, Möbius,
//! Jordan totients, Stirling numbers of the first kind, binomials.
//!
//! Everything is driven by a smallest-prime-factor table. A process-wide
//! table up to [`DEFAULT_SIEVE_BOUND`] is built lazily on first use and is
//! read-only afterwards, so all functions here are safe to call from any
//! thread.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000;

/// Prime factorization as ascending `(prime, exponent)` pairs. Empty for 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    entries: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|&(p, _)| p)
    }

    pub fn omega(&self) -> usize {
        self.entries.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.entries.iter().all(|&(_, e)| e == 1)
    }

    /// Multiplies the factorization back out. `None` on `u64` overflow.
    pub fn reconstruct(&self) -> Option<u64> {
        self.entries.iter().try_fold(1u64, |acc, &(p, e)| {
            acc.checked_mul(p.checked_pow(e)?)
        })
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.entries {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Smallest-prime-factor table with the list of primes up to its bound.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    bound: u64,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl PrimeTable {
    /// Linear sieve up to `bound` (inclusive).
    pub fn new(bound: u64) -> Self {
        assert!(bound <= u32::MAX as u64, "sieve bound must fit in u32");
        let b = bound.max(1) as usize;
        let mut spf = vec![0u32; b + 1];
        let mut primes = Vec::new();
        for i in 2..=b {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > b {
                    break;
                }
                spf[m] = p;
            }
        }
        PrimeTable {
            bound: b as u64,
            spf,
            primes,
        }
    }

    /// Shared table up to [`DEFAULT_SIEVE_BOUND`].
    pub fn global() -> &'static PrimeTable {
        static TABLE: OnceLock<PrimeTable> = OnceLock::new();
        TABLE.get_or_init(|| PrimeTable::new(DEFAULT_SIEVE_BOUND))
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Primes `<= limit`; `limit` is clamped to the table bound.
    pub fn primes_up_to(&self, limit: u64) -> &[u32] {
        let end = self.primes.partition_point(|&p| (p as u64) <= limit);
        &self.primes[..end]
    }

    /// Smallest prime factor of `n`, for `2 <= n <= bound`.
    #[inline]
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.bound {
            n >= 2 && self.spf(n) == n
        } else {
            self.factorize(n).map(|f| f.entries == [(n, 1)]).unwrap_or(false)
        }
    }

    /// Table lookup below the bound; above it, trial division by the sieved
    /// primes, with the remaining cofactor declared prime if below bound².
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Zero("factorize"));
        }
        let mut entries = Vec::new();
        let mut m = n;
        if m > self.bound {
            for &p in &self.primes {
                let p = p as u64;
                if p * p > m {
                    break;
                }
                if m.is_multiple_of(p) {
                    let mut e = 0;
                    while m.is_multiple_of(p) {
                        m /= p;
                        e += 1;
                    }
                    entries.push((p, e));
                }
                if m <= self.bound {
                    break;
                }
            }
            if m > self.bound {
                let b = self.bound as u128;
                if (m as u128) >= b * b {
                    return Err(Error::OutOfSieveRange(n));
                }
                entries.push((m, 1));
                return Ok(Factorization { entries });
            }
        }
        while m > 1 {
            let p = self.spf(m);
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            entries.push((p, e));
        }
        Ok(Factorization { entries })
    }

    /// Calls `f(prime, exponent)` for each prime power dividing `n`.
    /// `n` must lie in `1..=bound`; no allocation.
    #[inline]
    pub fn for_each_prime_power<F: FnMut(u64, u32)>(&self, n: u64, mut f: F) {
        let mut m = n;
        while m > 1 {
            let p = self.spf(m);
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            f(p, e);
        }
    }

    /// `true` iff `n` (in `1..=bound`) has no repeated prime factor.
    #[inline]
    pub fn is_squarefree_small(&self, n: u64) -> bool {
        let mut m = n;
        while m > 1 {
            let p = self.spf(m);
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        true
    }
}

fn table_for(n: u64) -> std::borrow::Cow<'static, PrimeTable> {
    let global = PrimeTable::global();
    if n <= global.bound() || (n as u128) < (global.bound() as u128).pow(2) {
        std::borrow::Cow::Borrowed(global)
    } else {
        let root = (n as f64).sqrt() as u64 + 2;
        std::borrow::Cow::Owned(PrimeTable::new(root))
    }
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let global = PrimeTable::global();
    if limit <= global.bound() {
        global.primes_up_to(limit).iter().map(|&p| p as u64).collect()
    } else {
        PrimeTable::new(limit).primes().iter().map(|&p| p as u64).collect()
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    table_for(n).factorize(n)
}

fn factorize_or_panic(n: u64, what: &'static str) -> Factorization {
    assert!(n >= 1, "{what} is defined for n >= 1");
    factorize(n).expect("input within factorization range")
}

/// Möbius function. Panics on `n = 0`.
pub fn mobius(n: u64) -> i8 {
    let f = factorize_or_panic(n, "mobius");
    if !f.is_squarefree() {
        0
    } else if f.omega().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of distinct prime factors. Panics on `n = 0`.
pub fn omega(n: u64) -> usize {
    factorize_or_panic(n, "omega").omega()
}

/// Ascending divisors of `n`. Panics on `n = 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    factorize_or_panic(n, "divisors").divisors()
}

/// `J_t(n) = n^t ∏_{p | n} (1 - p^{-t})`, computed as
/// `∏_{p^e || n} p^{t(e-1)} (p^t - 1)`.
pub fn jordan_totient(t: u32, n: u64) -> BigInt {
    assert!(t >= 1, "jordan_totient requires t >= 1");
    let f = factorize_or_panic(n, "jordan_totient");
    jordan_totient_of(t, &f)
}

pub fn jordan_totient_of(t: u32, f: &Factorization) -> BigInt {
    let mut acc = BigInt::one();
    for &(p, e) in f.entries() {
        let pt = num_traits::pow(BigInt::from(p), t as usize);
        acc *= num_traits::pow(pt.clone(), (e - 1) as usize) * (pt - 1u32);
    }
    acc
}

/// Signed Stirling numbers of the first kind, `s(n, k)`.
pub fn stirling_first_signed(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling_first_row(n).swap_remove(k)
}

/// Row `s(n, 0..=n)` via `s(m+1, j) = s(m, j-1) - m s(m, j)`.
pub fn stirling_first_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 0..n {
        let mut next = vec![BigInt::zero(); m + 2];
        for (j, slot) in next.iter_mut().enumerate() {
            if j >= 1 {
                *slot += &row[j - 1];
            }
            if j <= m {
                *slot -= &row[j] * BigInt::from(m);
            }
        }
        row = next;
    }
    row
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient in `u64`, `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

#[inline]
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
