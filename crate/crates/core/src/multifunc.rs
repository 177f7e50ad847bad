//! Multiplicative functions of k variables.
//!
//! `θ_{k,s}` and `ρ_{k,t}` are the indicator functions of the split-coprime
//! and t-wise coprime conditions; `λ_{k,s}` and `ψ_{k,t}` are the functions
//! whose divisor-tuple sums give them back. All four are multiplicative, so
//! each is evaluated on an integer tuple as a product of prime-local values
//! over the primes dividing some coordinate.

use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numtheory::{self, binomial_u64, gcd, PrimeTable};

/// One prime's exponent pattern `(ν_1, ..., ν_k)` across a k-tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentTuple {
    nu: Vec<u32>,
}

impl ExponentTuple {
    pub fn new(nu: Vec<u32>) -> Result<Self> {
        if nu.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "exponent tuple needs length >= 2, got {}",
                nu.len()
            )));
        }
        Ok(ExponentTuple { nu })
    }

    pub fn k(&self) -> usize {
        self.nu.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.nu
    }

    fn expect_len(&self, k: usize) -> Result<()> {
        if self.nu.len() == k {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: k,
                got: self.nu.len(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    /// `gcd(x_1, ..., x_k) = 1`.
    AllCoprime,
    /// `gcd(x_1 ⋯ x_s, x_{s+1} ⋯ x_k) = 1`.
    SplitCoprime(usize),
    /// Every t of the k summands have gcd 1.
    TWiseCoprime(usize),
}

/// A constraint kind together with the number of variables it applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoprimalityConstraint {
    k: usize,
    kind: ConstraintKind,
}

impl CoprimalityConstraint {
    pub fn new(k: usize, kind: ConstraintKind) -> Result<Self> {
        let ok = match kind {
            ConstraintKind::AllCoprime => k >= 2,
            ConstraintKind::SplitCoprime(s) => k >= 2 && s >= 1 && s < k,
            ConstraintKind::TWiseCoprime(t) => t >= 2 && t <= k,
        };
        if ok {
            Ok(CoprimalityConstraint { k, kind })
        } else {
            Err(Error::InvalidConstraint(format!("{kind} is not valid for k = {k}")))
        }
    }

    pub fn all_coprime(k: usize) -> Result<Self> {
        Self::new(k, ConstraintKind::AllCoprime)
    }

    pub fn split(k: usize, s: usize) -> Result<Self> {
        Self::new(k, ConstraintKind::SplitCoprime(s))
    }

    pub fn t_wise(k: usize, t: usize) -> Result<Self> {
        Self::new(k, ConstraintKind::TWiseCoprime(t))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> ConstraintKind {
        self.kind
    }

    /// Short family tag: `R`, `A` or `B`.
    pub fn family(&self) -> &'static str {
        match self.kind {
            ConstraintKind::AllCoprime => "R",
            ConstraintKind::SplitCoprime(_) => "A",
            ConstraintKind::TWiseCoprime(_) => "B",
        }
    }

    /// `s` or `t`; `0` for the all-coprime family.
    pub fn parameter(&self) -> usize {
        match self.kind {
            ConstraintKind::AllCoprime => 0,
            ConstraintKind::SplitCoprime(s) => s,
            ConstraintKind::TWiseCoprime(t) => t,
        }
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintKind::AllCoprime => write!(f, "all-coprime"),
            ConstraintKind::SplitCoprime(s) => write!(f, "split-coprime(s={s})"),
            ConstraintKind::TWiseCoprime(t) => write!(f, "{t}-wise-coprime"),
        }
    }
}

impl fmt::Display for CoprimalityConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (k={})", self.kind, self.k)
    }
}

/// Prime-local value of a k-variable function, given its parameter (`s` or
/// `t`) and the exponent pattern. Callers validate lengths and ranges.
pub type LocalFn = fn(usize, &[u32]) -> i64;

/// The pair of local tables used by the divisor-sum identities.
///
/// Only [`Kernels::STANDARD`] is mathematically meaningful. The flipped
/// variants negate every non-constant local value.
#[derive(Clone, Copy)]
pub struct Kernels {
    pub lambda_local: LocalFn,
    pub psi_local: LocalFn,
}

impl Kernels {
    pub const STANDARD: Kernels = Kernels {
        lambda_local: lambda_local_raw,
        psi_local: psi_local_raw,
    };

    pub fn flipped_lambda() -> Self {
        Kernels {
            lambda_local: |s, nu| flip_nonconstant(lambda_local_raw(s, nu), nu),
            ..Self::STANDARD
        }
    }

    pub fn flipped_psi() -> Self {
        Kernels {
            psi_local: |t, nu| flip_nonconstant(psi_local_raw(t, nu), nu),
            ..Self::STANDARD
        }
    }
}

impl Default for Kernels {
    fn default() -> Self {
        Self::STANDARD
    }
}

impl fmt::Debug for Kernels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let std = Kernels::STANDARD;
        f.debug_struct("Kernels")
            .field("lambda_standard", &(self.lambda_local as usize == std.lambda_local as usize))
            .field("psi_standard", &(self.psi_local as usize == std.psi_local as usize))
            .finish()
    }
}

fn flip_nonconstant(v: i64, nu: &[u32]) -> i64 {
    if nu.iter().all(|&e| e == 0) {
        v
    } else {
        -v
    }
}

fn check_split(k: usize, s: usize) -> Result<()> {
    if k >= 2 && s >= 1 && s < k {
        Ok(())
    } else {
        Err(Error::InvalidConstraint(format!("need 1 <= s <= k-1, got k={k}, s={s}")))
    }
}

fn check_t_wise(k: usize, t: usize) -> Result<()> {
    if t >= 2 && t <= k {
        Ok(())
    } else {
        Err(Error::InvalidConstraint(format!("need 2 <= t <= k, got k={k}, t={t}")))
    }
}

fn check_tuple(k: usize, n: &[u64]) -> Result<()> {
    if n.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            got: n.len(),
        });
    }
    if n.contains(&0) {
        return Err(Error::InvalidArgument("tuple coordinates must be positive".into()));
    }
    Ok(())
}

#[inline]
fn sign(e: u32) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub(crate) fn theta_local_raw(s: usize, nu: &[u32]) -> i64 {
    let (left, right) = nu.split_at(s);
    (left.iter().all(|&e| e == 0) || right.iter().all(|&e| e == 0)) as i64
}

pub(crate) fn rho_local_raw(t: usize, nu: &[u32]) -> i64 {
    (nu.iter().filter(|&&e| e >= 1).count() < t) as i64
}

pub(crate) fn lambda_local_raw(s: usize, nu: &[u32]) -> i64 {
    if nu.iter().all(|&e| e == 0) {
        return 1;
    }
    if nu.iter().any(|&e| e > 1) {
        return 0;
    }
    let (left, right) = nu.split_at(s);
    let hit_left = left.contains(&1);
    let hit_right = right.contains(&1);
    if hit_left && hit_right {
        sign(nu.iter().sum::<u32>() - 1)
    } else {
        0
    }
}

pub(crate) fn psi_local_raw(t: usize, nu: &[u32]) -> i64 {
    if nu.iter().all(|&e| e == 0) {
        return 1;
    }
    if nu.iter().any(|&e| e > 1) {
        return 0;
    }
    let j: u32 = nu.iter().sum();
    if (j as usize) < t {
        return 0;
    }
    let c = binomial_u64(j as u64 - 1, t as u64 - 1).expect("small binomial") as i64;
    sign(j - t as u32 + 1) * c
}

/// `θ_{k,s}(p^{ν_1}, ..., p^{ν_k})`.
pub fn theta_local(k: usize, s: usize, nu: &ExponentTuple) -> Result<u8> {
    check_split(k, s)?;
    nu.expect_len(k)?;
    Ok(theta_local_raw(s, nu.as_slice()) as u8)
}

/// `ρ_{k,t}(p^{ν_1}, ..., p^{ν_k})`.
pub fn rho_local(k: usize, t: usize, nu: &ExponentTuple) -> Result<u8> {
    check_t_wise(k, t)?;
    nu.expect_len(k)?;
    Ok(rho_local_raw(t, nu.as_slice()) as u8)
}

/// `λ_{k,s}(p^{ν_1}, ..., p^{ν_k})`.
pub fn lambda_local(k: usize, s: usize, nu: &ExponentTuple) -> Result<i64> {
    check_split(k, s)?;
    nu.expect_len(k)?;
    Ok(lambda_local_raw(s, nu.as_slice()))
}

/// `ψ_{k,t}(p^{ν_1}, ..., p^{ν_k})`.
pub fn psi_local(k: usize, t: usize, nu: &ExponentTuple) -> Result<i64> {
    check_t_wise(k, t)?;
    nu.expect_len(k)?;
    Ok(psi_local_raw(t, nu.as_slice()))
}

/// Reusable buffers for evaluating multiplicative functions on tuples.
#[derive(Debug, Default)]
pub(crate) struct Scratch {
    primes: Vec<u64>,
    nu: Vec<u32>,
}

/// Pushes the distinct primes dividing some coordinate (the radical of the
/// coordinate-wise lcm) into `out`.
fn support_primes(table: &PrimeTable, n: &[u64], out: &mut Vec<u64>) {
    out.clear();
    for &x in n {
        if x <= table.bound() {
            table.for_each_prime_power(x, |p, _| {
                if !out.contains(&p) {
                    out.push(p);
                }
            });
        } else {
            let f = numtheory::factorize(x).expect("coordinate within factorization range");
            for p in f.primes() {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
}

#[inline]
fn valuation(mut x: u64, p: u64) -> u32 {
    let mut e = 0;
    while x.is_multiple_of(p) {
        x /= p;
        e += 1;
    }
    e
}

/// Product of `local(param, ν_p(n))` over the support primes of `n`.
pub(crate) fn eval_multiplicative(
    table: &PrimeTable,
    n: &[u64],
    param: usize,
    local: LocalFn,
    scratch: &mut Scratch,
) -> i64 {
    let Scratch { primes, nu } = scratch;
    support_primes(table, n, primes);
    nu.clear();
    nu.resize(n.len(), 0);
    let mut acc = 1i64;
    for &p in primes.iter() {
        for (slot, &x) in nu.iter_mut().zip(n) {
            *slot = valuation(x, p);
        }
        let v = local(param, nu);
        if v == 0 {
            return 0;
        }
        acc *= v;
    }
    acc
}

fn theta_direct(s: usize, n: &[u64]) -> bool {
    let (left, right) = n.split_at(s);
    left.iter().all(|&a| right.iter().all(|&b| gcd(a, b) == 1))
}

/// `true` iff every t-subset of `n` has gcd 1.
fn rho_direct(t: usize, n: &[u64]) -> bool {
    fn rec(n: &[u64], start: usize, left: usize, g: u64) -> bool {
        if left == 0 {
            return g == 1;
        }
        (start..=n.len() - left).all(|i| {
            let g2 = gcd(g, n[i]);
            // Once the running gcd is 1 every completion has gcd 1.
            g2 == 1 || rec(n, i + 1, left - 1, g2)
        })
    }
    rec(n, 0, t, 0)
}

/// `θ_{k,s}(n_1, ..., n_k)`, evaluated by a direct gcd test and as a product
/// of local values; the two must agree.
pub fn theta(k: usize, s: usize, n: &[u64]) -> Result<u8> {
    check_split(k, s)?;
    check_tuple(k, n)?;
    let direct = theta_direct(s, n) as i64;
    let local = eval_multiplicative(PrimeTable::global(), n, s, theta_local_raw, &mut Scratch::default());
    if direct != local {
        return Err(Error::Consistency(format!(
            "theta_({k},{s}){n:?}: gcd test gives {direct}, local product gives {local}"
        )));
    }
    Ok(direct as u8)
}

/// `ρ_{k,t}(n_1, ..., n_k)`, evaluated over all t-subsets and as a product
/// of local values; the two must agree.
pub fn rho(k: usize, t: usize, n: &[u64]) -> Result<u8> {
    check_t_wise(k, t)?;
    check_tuple(k, n)?;
    let direct = rho_direct(t, n) as i64;
    let local = eval_multiplicative(PrimeTable::global(), n, t, rho_local_raw, &mut Scratch::default());
    if direct != local {
        return Err(Error::Consistency(format!(
            "rho_({k},{t}){n:?}: subset gcds give {direct}, local product gives {local}"
        )));
    }
    Ok(direct as u8)
}

/// `λ_{k,s}(j_1, ..., j_k)`.
pub fn lambda(k: usize, s: usize, j: &[u64]) -> Result<i64> {
    check_split(k, s)?;
    check_tuple(k, j)?;
    Ok(eval_multiplicative(PrimeTable::global(), j, s, lambda_local_raw, &mut Scratch::default()))
}

/// `ψ_{k,t}(j_1, ..., j_k)`.
pub fn psi(k: usize, t: usize, j: &[u64]) -> Result<i64> {
    check_t_wise(k, t)?;
    check_tuple(k, j)?;
    Ok(eval_multiplicative(PrimeTable::global(), j, t, psi_local_raw, &mut Scratch::default()))
}

/// `true` iff the sum of λ (split constraints) or ψ (t-wise constraints)
/// over all divisor tuples of `n` equals θ or ρ at `n`.
pub fn convolution_check(constraint: &CoprimalityConstraint, n: &[u64]) -> Result<bool> {
    convolution_check_with(&Kernels::STANDARD, constraint, n)
}

pub fn convolution_check_with(
    kernels: &Kernels,
    constraint: &CoprimalityConstraint,
    n: &[u64],
) -> Result<bool> {
    let k = constraint.k();
    check_tuple(k, n)?;
    let (param, local, indicator) = match constraint.kind() {
        ConstraintKind::SplitCoprime(s) => (s, kernels.lambda_local, theta(k, s, n)?),
        ConstraintKind::TWiseCoprime(t) => (t, kernels.psi_local, rho(k, t, n)?),
        ConstraintKind::AllCoprime => {
            return Err(Error::InvalidConstraint(
                "convolution_check needs a split or t-wise constraint".into(),
            ))
        }
    };
    let table = PrimeTable::global();
    let divs: Vec<Vec<u64>> = n.iter().map(|&x| numtheory::divisors(x)).collect();
    Ok(divisor_tuple_sum(table, &divs, param, local) == indicator as i64)
}

/// Sum of `local`-multiplicative values over the cartesian product of the
/// divisor lists.
pub(crate) fn divisor_tuple_sum(table: &PrimeTable, divs: &[Vec<u64>], param: usize, local: LocalFn) -> i64 {
    let k = divs.len();
    let mut idx = vec![0usize; k];
    let mut d: Vec<u64> = divs.iter().map(|v| v[0]).collect();
    let mut scratch = Scratch::default();
    let mut sum = 0i64;
    loop {
        sum += eval_multiplicative(table, &d, param, local, &mut scratch);
        let mut i = 0;
        loop {
            if i == k {
                return sum;
            }
            idx[i] += 1;
            if idx[i] < divs[i].len() {
                d[i] = divs[i][idx[i]];
                break;
            }
            idx[i] = 0;
            d[i] = divs[i][0];
            i += 1;
        }
    }
}

/// `λ_{k,s}(δ, ..., δ)` in closed form: `(-1)^{(k-1)ω(δ)} μ²(δ)`.
pub fn lambda_diagonal(k: usize, delta: u64) -> i64 {
    let f = numtheory::factorize(delta).expect("delta within factorization range");
    if !f.is_squarefree() {
        return 0;
    }
    sign(((k - 1) * f.omega()) as u32)
}

/// `ψ_{k,t}(δ, ..., δ)` in closed form: `((-1)^{k-t+1} C(k-1,t-1))^{ω(δ)} μ²(δ)`.
pub fn psi_diagonal(k: usize, t: usize, delta: u64) -> i64 {
    let f = numtheory::factorize(delta).expect("delta within factorization range");
    if !f.is_squarefree() {
        return 0;
    }
    let base = sign((k - t + 1) as u32)
        * numtheory::binomial(k as u64 - 1, t as u64 - 1).to_i64().expect("small binomial");
    base.pow(f.omega() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn et(nu: &[u32]) -> ExponentTuple {
        ExponentTuple::new(nu.to_vec()).unwrap()
    }

    #[test]
    fn theta_local_examples() {
        assert_eq!(theta_local(3, 1, &et(&[0, 0, 0])).unwrap(), 1);
        assert_eq!(theta_local(3, 1, &et(&[1, 2, 0])).unwrap(), 0);
        assert_eq!(theta_local(3, 2, &et(&[0, 0, 5])).unwrap(), 1);
        assert!(matches!(
            theta_local(4, 1, &et(&[0, 0, 0])),
            Err(Error::LengthMismatch { expected: 4, got: 3 })
        ));
        assert!(theta_local(3, 3, &et(&[0, 0, 0])).is_err());
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(3, 1, &[2, 3, 5]).unwrap(), 1);
        assert_eq!(theta(3, 1, &[2, 4, 3]).unwrap(), 0);
        assert_eq!(theta(3, 2, &[2, 3, 5]).unwrap(), 1);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(3, 2, &[1, 1, 4]).unwrap(), 1);
        assert_eq!(rho(3, 2, &[2, 2, 3]).unwrap(), 0);
        assert_eq!(rho(3, 3, &[2, 2, 3]).unwrap(), 1);
        assert!(rho(3, 4, &[1, 1, 1]).is_err());
        assert!(rho(3, 2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_local(3, 1, &et(&[1, 1, 1])).unwrap(), 1);
        assert_eq!(lambda_local(3, 1, &et(&[1, 0, 0])).unwrap(), 0);
        assert_eq!(lambda_local(3, 1, &et(&[1, 1, 0])).unwrap(), -1);
        assert_eq!(lambda(3, 1, &[1, 1, 1]).unwrap(), 1);
        assert_eq!(lambda(3, 1, &[2, 2, 2]).unwrap(), 1);
        assert_eq!(lambda(3, 1, &[2, 6, 3]).unwrap(), 0);
        assert_eq!(lambda(3, 1, &[6, 2, 3]).unwrap(), 1);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_local(3, 2, &et(&[1, 1, 0])).unwrap(), -1);
        assert_eq!(psi_local(3, 2, &et(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(psi_local(3, 2, &et(&[2, 1, 1])).unwrap(), 0);
        assert_eq!(psi(3, 2, &[1, 1, 1]).unwrap(), 1);
        assert_eq!(psi(3, 2, &[2, 2, 2]).unwrap(), 2);
        assert_eq!(psi(3, 2, &[6, 6, 1]).unwrap(), 1);
    }

    #[test]
    fn convolution_examples() {
        let a31 = CoprimalityConstraint::split(3, 1).unwrap();
        let b32 = CoprimalityConstraint::t_wise(3, 2).unwrap();
        let b33 = CoprimalityConstraint::t_wise(3, 3).unwrap();
        assert!(convolution_check(&a31, &[2, 3, 4]).unwrap());
        assert!(convolution_check(&b32, &[1, 1, 1]).unwrap());
        assert!(convolution_check(&b33, &[2, 2, 2]).unwrap());
        let r = CoprimalityConstraint::all_coprime(3).unwrap();
        assert!(convolution_check(&r, &[1, 1, 1]).is_err());
    }

    #[test]
    fn convolution_fails_with_flipped_kernels() {
        let a31 = CoprimalityConstraint::split(3, 1).unwrap();
        let b32 = CoprimalityConstraint::t_wise(3, 2).unwrap();
        assert!(!convolution_check_with(&Kernels::flipped_lambda(), &a31, &[2, 2, 1]).unwrap());
        assert!(!convolution_check_with(&Kernels::flipped_psi(), &b32, &[2, 2, 1]).unwrap());
    }

    #[test]
    fn constraint_validation() {
        assert!(CoprimalityConstraint::all_coprime(1).is_err());
        assert!(CoprimalityConstraint::split(3, 0).is_err());
        assert!(CoprimalityConstraint::split(3, 3).is_err());
        assert!(CoprimalityConstraint::t_wise(3, 1).is_err());
        assert!(CoprimalityConstraint::t_wise(3, 4).is_err());
        assert_eq!(CoprimalityConstraint::t_wise(4, 4).unwrap().family(), "B");
    }

    #[test]
    fn diagonal_closed_forms() {
        for delta in 1..=1000u64 {
            for k in 2..=5usize {
                let diag = vec![delta; k];
                for s in 1..k {
                    assert_eq!(lambda(k, s, &diag).unwrap(), lambda_diagonal(k, delta), "k={k} s={s} d={delta}");
                }
                for t in 2..=k {
                    assert_eq!(psi(k, t, &diag).unwrap(), psi_diagonal(k, t, delta), "k={k} t={t} d={delta}");
                }
            }
        }
    }

    #[test]
    fn lambda_on_all_p_is_alternating() {
        for &p in &[2u64, 3, 5, 7, 11] {
            for k in 2..=6usize {
                let expect = if (k - 1) % 2 == 0 { 1 } else { -1 };
                assert_eq!(lambda(k, 1, &vec![p; k]).unwrap(), expect);
            }
        }
    }

    #[test]
    fn theta_block_swap_symmetry_and_rho_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let k = rng.gen_range(2..=5usize);
            let n: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=60)).collect();
            for s in 1..k {
                let mut swapped = n[s..].to_vec();
                swapped.extend_from_slice(&n[..s]);
                assert_eq!(theta(k, s, &n).unwrap(), theta(k, k - s, &swapped).unwrap());
            }
            let mut perm = n.clone();
            perm.shuffle(&mut rng);
            for t in 2..=k {
                assert_eq!(rho(k, t, &n).unwrap(), rho(k, t, &perm).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn lambda_psi_vanish_off_squarefree(
            base in prop::collection::vec(1u64..40, 3..5),
            idx in 0usize..4,
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
        ) {
            let k = base.len();
            let mut j = base.clone();
            j[idx % k] *= p * p;
            for s in 1..k {
                prop_assert_eq!(lambda(k, s, &j).unwrap(), 0);
            }
            for t in 2..=k {
                prop_assert_eq!(psi(k, t, &j).unwrap(), 0);
            }
        }

        #[test]
        fn diagonal_factoring(
            j in prop::collection::vec(1u64..30, 3..5),
            delta in 1u64..60,
        ) {
            let k = j.len();
            let scaled: Vec<u64> = j.iter().map(|&x| x * delta).collect();
            let prod_gcd = j.iter().fold(1u64, |g, &x| g.max(gcd(x, delta)));
            for s in 1..k {
                let got = lambda(k, s, &scaled).unwrap();
                if prod_gcd != 1 {
                    prop_assert_eq!(got, 0);
                } else {
                    prop_assert_eq!(got, lambda(k, s, &j).unwrap() * lambda(k, s, &vec![delta; k]).unwrap());
                }
            }
            for t in 2..=k {
                let got = psi(k, t, &scaled).unwrap();
                if prod_gcd != 1 {
                    prop_assert_eq!(got, 0);
                } else {
                    prop_assert_eq!(got, psi(k, t, &j).unwrap() * psi(k, t, &vec![delta; k]).unwrap());
                }
            }
        }
    }
}
