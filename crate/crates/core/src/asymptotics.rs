//! Euler-product constants, local correction factors, main terms and
//! empirical residual scans for the split-coprime and t-wise coprime
//! counts.
//!
//! Every truncated product `∏_{p <= P} N(p)/p^m` is accumulated as a sum of
//! `log1p((N(p) - p^m)/p^m)`. The deviation `N(p) - p^m` is computed
//! exactly and converted to `f64` once per prime, and the logs are summed
//! with compensation over fixed-size prime chunks that are reduced in
//! order, so the result does not depend on the execution mode or thread
//! count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::counting::{brute_count_u64, brute_work, DEFAULT_WORK_BUDGET};
use crate::error::{Error, Result};
use crate::exec::{self, CompensatedSum, Mode};
use crate::multifunc::{
    eval_multiplicative, ConstraintKind, CoprimalityConstraint, Kernels, LocalFn, Scratch,
};
use crate::numtheory::{self, binomial, gcd, jordan_totient, PrimeTable};
use crate::partitions::factorial;
use crate::polynomials::{build_f, build_g, elementary_symmetric, IntegerPolynomial};

/// Primes per chunk in the product reduction.
const PRIME_CHUNK: usize = 4096;

pub const DEFAULT_PRIME_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EulerProductResult {
    pub value: f64,
    /// Natural log of `value`, as accumulated.
    pub log_value: f64,
    pub prime_bound: u64,
    /// Heuristic size of `|log(full product / truncated product)|`.
    pub tail_bound_estimate: f64,
    pub factor_count: usize,
}

/// A local factor `numerator(p) / p^denom_exp`.
#[derive(Debug, Clone)]
struct LocalFactor {
    numerator: IntegerPolynomial,
    denom_exp: usize,
}

impl LocalFactor {
    /// `numerator(x) - x^m`; its degree is at most `m - 2` for every
    /// product in this module, which is what makes the products converge.
    fn deviation(&self) -> IntegerPolynomial {
        &self.numerator - &IntegerPolynomial::monomial(self.denom_exp)
    }

    fn exact(&self, p: u64) -> BigRational {
        BigRational::new(
            self.numerator.eval_u64(p),
            num_traits::pow(BigInt::from(p), self.denom_exp),
        )
    }
}

fn c_factor(k: usize, s: usize) -> Result<LocalFactor> {
    let f = build_f(k, s)?;
    Ok(LocalFactor {
        numerator: &IntegerPolynomial::monomial(k - 1) - &f,
        denom_exp: k - 1,
    })
}

fn d_factor(k: usize, t: usize) -> Result<LocalFactor> {
    Ok(LocalFactor {
        numerator: build_g(k, t)?,
        denom_exp: k - 1,
    })
}

fn h_factor(k: usize, s: usize) -> Result<LocalFactor> {
    let f = build_f(k, s)?;
    let x_f = &IntegerPolynomial::monomial(1) * &f;
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let numerator = &(&IntegerPolynomial::monomial(k) - &x_f) - &IntegerPolynomial::constant(sign);
    Ok(LocalFactor {
        numerator,
        denom_exp: k,
    })
}

fn l_constant(k: usize, t: usize) -> BigInt {
    let c = binomial(k as u64 - 1, t as u64 - 1);
    if (k - t + 1).is_multiple_of(2) {
        c
    } else {
        -c
    }
}

fn l_factor(k: usize, t: usize) -> Result<LocalFactor> {
    let g = build_g(k, t)?;
    let numerator = &(&IntegerPolynomial::monomial(1) * &g) + &IntegerPolynomial::constant(l_constant(k, t));
    Ok(LocalFactor {
        numerator,
        denom_exp: k,
    })
}

/// Per-prime hook that may veto a factor (returns an error) or skip it.
type PrimeCheck<'a> = &'a (dyn Fn(u64) -> Result<()> + Sync);

fn euler_product(
    factor: &LocalFactor,
    prime_bound: u64,
    skip: &(dyn Fn(u64) -> bool + Sync),
    check: Option<PrimeCheck<'_>>,
    mode: Mode,
) -> Result<EulerProductResult> {
    if prime_bound < 2 {
        return Err(Error::InvalidArgument("prime_bound must be >= 2".into()));
    }
    let deviation = factor.deviation();
    if let Some(d) = deviation.degree() {
        if d + 2 > factor.denom_exp {
            return Err(Error::Consistency(format!(
                "local factor deviates by degree {d} over p^{}",
                factor.denom_exp
            )));
        }
    }
    let owned;
    let primes: &[u32] = if prime_bound <= PrimeTable::global().bound() {
        PrimeTable::global().primes_up_to(prime_bound)
    } else {
        owned = PrimeTable::new(prime_bound);
        owned.primes()
    };
    let chunks: Vec<&[u32]> = primes.chunks(PRIME_CHUNK).collect();
    let m = factor.denom_exp;
    let partials = exec::map_collect(mode, &chunks, |chunk| -> Result<(CompensatedSum, usize)> {
        let mut acc = CompensatedSum::new();
        let mut count = 0;
        for &p in chunk.iter() {
            let p = p as u64;
            if skip(p) {
                continue;
            }
            if let Some(check) = check {
                check(p)?;
            }
            let den = num_traits::pow(BigInt::from(p), m);
            let dev = deviation.eval_u64(p);
            // Factor must lie in (0, 1]: -den < dev <= 0.
            if dev.is_positive() || -&dev >= den {
                return Err(Error::Consistency(format!(
                    "local factor at p = {p} is {}/{}, outside (0, 1]",
                    &den + &dev,
                    den
                )));
            }
            count += 1;
            if !dev.is_zero() {
                let x = ratio_to_f64(&dev, &den);
                acc.add(x.ln_1p());
            }
        }
        Ok((acc, count))
    });
    let mut total = CompensatedSum::new();
    let mut factor_count = 0;
    for part in partials {
        let (acc, count) = part?;
        total.merge(&acc);
        factor_count += count;
    }
    let log_value = total.value();
    Ok(EulerProductResult {
        value: log_value.exp(),
        log_value,
        prime_bound,
        tail_bound_estimate: tail_estimate(&deviation, m, prime_bound),
        factor_count,
    })
}

/// `num / den` to `f64` with one rounding per operand.
fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    BigRational::new(num.clone(), den.clone())
        .to_f64()
        .expect("finite ratio")
}

/// `Σ|coeffs of deviation| · Σ_{p > P} p^{-e}` with `e = m - deg`, the sum
/// over primes approximated by `P^{1-e} / ((e-1) ln P)`.
fn tail_estimate(deviation: &IntegerPolynomial, m: usize, prime_bound: u64) -> f64 {
    let Some(deg) = deviation.degree() else {
        return 0.0;
    };
    let e = (m - deg) as f64;
    let weight = deviation.abs_coeff_sum().to_f64().unwrap_or(f64::INFINITY);
    let p = prime_bound as f64;
    weight * p.powf(1.0 - e) / ((e - 1.0) * p.ln())
}

fn no_skip(_: u64) -> bool {
    false
}

/// `C_{k,s} = ∏_p (1 - F_{k,s}(p)/p^{k-1})`, truncated at `prime_bound`.
pub fn constant_c(k: usize, s: usize, prime_bound: u64) -> Result<EulerProductResult> {
    constant_c_with(k, s, prime_bound, Mode::default())
}

pub fn constant_c_with(k: usize, s: usize, prime_bound: u64, mode: Mode) -> Result<EulerProductResult> {
    euler_product(&c_factor(k, s)?, prime_bound, &no_skip, None, mode)
}

/// `D_{k,t} = ∏_p G_{k,t}(p)/p^{k-1}`, truncated at `prime_bound`.
pub fn constant_d(k: usize, t: usize, prime_bound: u64) -> Result<EulerProductResult> {
    constant_d_with(k, t, prime_bound, Mode::default())
}

pub fn constant_d_with(k: usize, t: usize, prime_bound: u64, mode: Mode) -> Result<EulerProductResult> {
    euler_product(&d_factor(k, t)?, prime_bound, &no_skip, None, mode)
}

/// `H_{k,s}(1, ..., 1) = ∏_p (1 - (p F_{k,s}(p) + (-1)^k)/p^k)`. Each
/// factor is also checked against `u^s + u^{k-s} - u^k` with `u = 1 - 1/p`.
pub fn h_at_ones(k: usize, s: usize, prime_bound: u64) -> Result<EulerProductResult> {
    let factor = h_factor(k, s)?;
    let check = |p: u64| -> Result<()> {
        let lhs = factor.exact(p);
        let rhs = h_factor_power_form(k, s, p);
        if lhs == rhs {
            Ok(())
        } else {
            Err(Error::Consistency(format!("H_({k},{s}) factor mismatch at p = {p}")))
        }
    };
    euler_product(&factor, prime_bound, &no_skip, Some(&check), Mode::default())
}

/// `L_{k,t}(1, ..., 1) = ∏_p (p G_{k,t}(p) + (-1)^{k-t+1} C(k-1,t-1))/p^k`.
/// Each factor is also checked against
/// `1 - Σ_{j=t}^k (-1)^{j-t} C(j-1,t-1) e_j(1/p, ..., 1/p)`.
pub fn l_at_ones(k: usize, t: usize, prime_bound: u64) -> Result<EulerProductResult> {
    let factor = l_factor(k, t)?;
    let check = |p: u64| -> Result<()> {
        if factor.exact(p) == l_factor_symmetric_form(k, t, p) {
            Ok(())
        } else {
            Err(Error::Consistency(format!("L_({k},{t}) factor mismatch at p = {p}")))
        }
    };
    euler_product(&factor, prime_bound, &no_skip, Some(&check), Mode::default())
}

/// `u^s + u^{k-s} - u^k`, `u = 1 - 1/p`.
pub fn h_factor_power_form(k: usize, s: usize, p: u64) -> BigRational {
    let u = BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(p));
    num_traits::pow(u.clone(), s) + num_traits::pow(u.clone(), k - s) - num_traits::pow(u, k)
}

/// `1 - (p F_{k,s}(p) + (-1)^k)/p^k`.
pub fn h_factor_polynomial_form(k: usize, s: usize, p: u64) -> Result<BigRational> {
    Ok(h_factor(k, s)?.exact(p))
}

/// `1 - Σ_{j=t}^k (-1)^{j-t} C(j-1,t-1) e_j(1/p, ..., 1/p)`.
pub fn l_factor_symmetric_form(k: usize, t: usize, p: u64) -> BigRational {
    let vals = vec![BigRational::new(BigInt::one(), BigInt::from(p)); k];
    let mut acc = BigRational::one();
    for j in t..=k {
        let c = BigRational::from_integer(binomial(j as u64 - 1, t as u64 - 1));
        let term = c * elementary_symmetric(j, &vals);
        if (j - t).is_multiple_of(2) {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

/// `(p G_{k,t}(p) + (-1)^{k-t+1} C(k-1,t-1))/p^k`.
pub fn l_factor_polynomial_form(k: usize, t: usize, p: u64) -> Result<BigRational> {
    Ok(l_factor(k, t)?.exact(p))
}

fn distinct_primes(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::Zero("local factor"));
    }
    Ok(numtheory::factorize(n)?.primes().collect())
}

/// `f_{k,s}(n) = ∏_{p | n} (1 + (-1)^{k-1}/(p^{k-1} - F_{k,s}(p)))`.
pub fn local_f(k: usize, s: usize, n: u64) -> Result<BigRational> {
    let f = build_f(k, s)?;
    let sign = if (k - 1).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let mut acc = BigRational::one();
    for p in distinct_primes(n)? {
        let den = num_traits::pow(BigInt::from(p), k - 1) - f.eval_u64(p);
        if den.is_zero() {
            return Err(Error::Consistency(format!("p^(k-1) = F_({k},{s})(p) at p = {p}")));
        }
        acc *= BigRational::one() + BigRational::new(sign.clone(), den);
    }
    Ok(acc)
}

/// `g_{k,t}(n) = ∏_{p | n} (1 + (-1)^{k-t+1} C(k-1,t-1)/G_{k,t}(p))`.
pub fn local_g(k: usize, t: usize, n: u64) -> Result<BigRational> {
    let g = build_g(k, t)?;
    let c = l_constant(k, t);
    let mut acc = BigRational::one();
    for p in distinct_primes(n)? {
        let den = g.eval_u64(p);
        if den.is_zero() {
            return Err(Error::Consistency(format!("G_({k},{t})(p) = 0 at p = {p}")));
        }
        acc *= BigRational::one() + BigRational::new(c.clone(), den);
    }
    Ok(acc)
}

/// `n^{k-1}/(k-1)!` as `f64`.
fn volume(n: u64, k: usize) -> f64 {
    ratio_to_f64(&num_traits::pow(BigInt::from(n), k - 1), &factorial(k - 1))
}

fn require_n_ge_k(n: u64, k: usize) -> Result<()> {
    if n < k as u64 {
        Err(Error::InvalidArgument(format!("main term needs n >= k, got n={n}, k={k}")))
    } else {
        Ok(())
    }
}

/// `C_{k,s} f_{k,s}(n) n^{k-1}/(k-1)!`.
pub fn main_term_a(n: u64, k: usize, s: usize, c: &EulerProductResult) -> Result<f64> {
    require_n_ge_k(n, k)?;
    let f = local_f(k, s, n)?.to_f64().expect("finite");
    Ok(c.value * f * volume(n, k))
}

/// `D_{k,t} g_{k,t}(n) n^{k-1}/(k-1)!`.
pub fn main_term_b(n: u64, k: usize, t: usize, d: &EulerProductResult) -> Result<f64> {
    require_n_ge_k(n, k)?;
    let g = local_g(k, t, n)?.to_f64().expect("finite");
    Ok(d.value * g * volume(n, k))
}

/// `J_{k-1}(n)/(k-1)!`, the main term of `R_k(n)`.
pub fn main_term_r(n: u64, k: usize) -> Result<f64> {
    require_n_ge_k(n, k)?;
    if k < 2 {
        return Err(Error::InvalidArgument("main_term_r needs k >= 2".into()));
    }
    Ok(ratio_to_f64(&jordan_totient(k as u32 - 1, n), &factorial(k - 1)))
}

/// Truncated sum of `f(j)/(j_1 ⋯ j_k)` over `j ∈ [1, j_bound]^k` with
/// `gcd(j) = 1` and `gcd(j_1 ⋯ j_k, δ) = 1`.
fn truncated_tuple_sum(k: usize, param: usize, local: LocalFn, delta: u64, j_bound: u64) -> f64 {
    let table = PrimeTable::global();
    let candidates: Vec<u64> = (1..=j_bound)
        .filter(|&j| gcd(j, delta) == 1 && table.is_squarefree_small(j))
        .collect();
    let partials = exec::map_collect(Mode::default(), &candidates, |&first| {
        let mut acc = CompensatedSum::new();
        let mut j = vec![0u64; k];
        j[0] = first;
        let mut scratch = Scratch::default();
        walk(&candidates, &mut j, 1, first, &mut |tuple| {
            let v = eval_multiplicative(table, tuple, param, local, &mut scratch);
            if v != 0 {
                let prod: f64 = tuple.iter().map(|&x| x as f64).product();
                acc.add(v as f64 / prod);
            }
        });
        acc
    });
    let mut total = CompensatedSum::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}

/// Visits every completion of `j[..depth]` over `candidates` whose overall
/// gcd is 1.
fn walk(candidates: &[u64], j: &mut [u64], depth: usize, g: u64, visit: &mut dyn FnMut(&[u64])) {
    if depth == j.len() {
        if g == 1 {
            visit(j);
        }
        return;
    }
    for &x in candidates {
        j[depth] = x;
        walk(candidates, j, depth + 1, gcd(g, x), visit);
    }
}

fn require_squarefree(delta: u64) -> Result<()> {
    if delta == 0 || !numtheory::factorize(delta)?.is_squarefree() {
        return Err(Error::InvalidArgument(format!("delta = {delta} must be squarefree")));
    }
    Ok(())
}

/// `(Σ_j λ(j)/(j_1⋯j_k) truncated at j_bound, ∏_{p ∤ δ, p <= prime_bound} (1 - F(p)/p^{k-1}))`.
///
/// The two agree only in the limit; the gap is reported, not asserted.
pub fn t_delta_check(k: usize, s: usize, delta: u64, j_bound: u64, prime_bound: u64) -> Result<(f64, f64)> {
    t_delta_check_with(&Kernels::STANDARD, k, s, delta, j_bound, prime_bound)
}

pub fn t_delta_check_with(
    kernels: &Kernels,
    k: usize,
    s: usize,
    delta: u64,
    j_bound: u64,
    prime_bound: u64,
) -> Result<(f64, f64)> {
    CoprimalityConstraint::split(k, s)?;
    require_squarefree(delta)?;
    let skip = move |p: u64| delta.is_multiple_of(p);
    let product = euler_product(&c_factor(k, s)?, prime_bound, &skip, None, Mode::default())?;
    let sum = truncated_tuple_sum(k, s, kernels.lambda_local, delta, j_bound);
    Ok((sum, product.value))
}

/// ψ analogue of [`t_delta_check`], against `∏_{p ∤ δ} G(p)/p^{k-1}`.
pub fn v_delta_check(k: usize, t: usize, delta: u64, j_bound: u64, prime_bound: u64) -> Result<(f64, f64)> {
    v_delta_check_with(&Kernels::STANDARD, k, t, delta, j_bound, prime_bound)
}

pub fn v_delta_check_with(
    kernels: &Kernels,
    k: usize,
    t: usize,
    delta: u64,
    j_bound: u64,
    prime_bound: u64,
) -> Result<(f64, f64)> {
    CoprimalityConstraint::t_wise(k, t)?;
    require_squarefree(delta)?;
    let skip = move |p: u64| delta.is_multiple_of(p);
    let product = euler_product(&d_factor(k, t)?, prime_bound, &skip, None, Mode::default())?;
    let sum = truncated_tuple_sum(k, t, kernels.psi_local, delta, j_bound);
    Ok((sum, product.value))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualRow {
    pub n: u64,
    pub exact_count: BigInt,
    pub main_term: f64,
    /// `exact - main`.
    pub residual: f64,
    /// `residual / n^{k-2}`.
    pub normalized_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub constraint: CoprimalityConstraint,
    pub rows: Vec<ResidualRow>,
    /// `true` when the work budget stopped the scan before the last `n`.
    pub truncated: bool,
    /// Euler-product constant used for the main terms (1 for `R`).
    pub constant: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub prime_bound: u64,
    pub work_budget: u128,
    pub mode: Mode,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            prime_bound: DEFAULT_PRIME_BOUND,
            work_budget: DEFAULT_WORK_BUDGET,
            mode: Mode::default(),
        }
    }
}

/// Pairs exact brute-force counts with main-term predictions.
///
/// The budget applies to each `n` separately (`n^{k-1}` per row, matching
/// [`crate::counting::count`]); the scan stops at the first `n` that
/// exceeds it and sets `truncated`.
pub fn residual_scan(constraint: &CoprimalityConstraint, n_list: &[u64], opts: &ScanOptions) -> Result<ScanReport> {
    let k = constraint.k();
    if let Some(&bad) = n_list.iter().find(|&&n| n < k as u64) {
        return Err(Error::InvalidArgument(format!("scan needs n >= k, got n={bad}, k={k}")));
    }
    let constant = match constraint.kind() {
        ConstraintKind::AllCoprime => None,
        ConstraintKind::SplitCoprime(s) => Some(constant_c_with(k, s, opts.prime_bound, opts.mode)?),
        ConstraintKind::TWiseCoprime(t) => Some(constant_d_with(k, t, opts.prime_bound, opts.mode)?),
    };
    let feasible = n_list
        .iter()
        .take_while(|&&n| brute_work(n, k) <= opts.work_budget)
        .count();
    let truncated = feasible < n_list.len();
    let mut rows = Vec::with_capacity(feasible);
    for &n in &n_list[..feasible] {
        let exact = brute_count_u64(n, constraint, opts.mode);
        let main = match (constraint.kind(), &constant) {
            (ConstraintKind::SplitCoprime(s), Some(c)) => main_term_a(n, k, s, c)?,
            (ConstraintKind::TWiseCoprime(t), Some(d)) => main_term_b(n, k, t, d)?,
            _ => main_term_r(n, k)?,
        };
        let residual = exact as f64 - main;
        let scale = (n as f64).powi(k as i32 - 2);
        rows.push(ResidualRow {
            n,
            exact_count: BigInt::from(exact),
            main_term: main,
            residual,
            normalized_residual: residual / scale,
        });
    }
    Ok(ScanReport {
        constraint: *constraint,
        rows,
        truncated,
        constant: constant.map_or(1.0, |c| c.value),
    })
}

/// Least-squares slope of `ln|normalized_residual|` against `ln ln n`.
/// `None` with fewer than two usable rows.
pub fn growth_exponent(rows: &[ResidualRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.n >= 3 && r.normalized_residual != 0.0)
        .map(|r| ((r.n as f64).ln().ln(), r.normalized_residual.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    // Reference values from an independent 30-digit evaluation of
    // ∏(1 - 2/p²) and ∏(1 - 3/p²) over p <= 10^6.
    const C31_REF_1E6: f64 = 0.322_634_142_672_745_87;
    const D32_REF_1E6: f64 = 0.125_487_006_420_712_56;

    #[test]
    fn single_factor_constants() {
        assert_eq!(constant_c(3, 1, 2).unwrap().value, 0.5);
        assert_eq!(constant_d(3, 2, 2).unwrap().value, 0.25);
        assert_eq!(constant_c(3, 1, 2).unwrap().factor_count, 1);
    }

    #[test]
    fn calibrated_constants() {
        let c = constant_c(3, 1, 1_000_000).unwrap();
        assert!((c.value - C31_REF_1E6).abs() < 1e-14, "{}", c.value);
        assert_eq!(c.factor_count, 78_498);
        let d = constant_d(3, 2, 1_000_000).unwrap();
        assert!((d.value - D32_REF_1E6).abs() < 1e-14, "{}", d.value);
    }

    #[test]
    fn collapse_at_t_equals_k() {
        for k in 3..=8 {
            let d = constant_d(k, k, 10_000).unwrap();
            assert_eq!(d.value, 1.0);
            assert_eq!(d.tail_bound_estimate, 0.0);
        }
    }

    #[test]
    fn tail_estimate_decreases() {
        let a = constant_c(4, 2, 1_000).unwrap().tail_bound_estimate;
        let b = constant_c(4, 2, 100_000).unwrap().tail_bound_estimate;
        assert!(a > b && b > 0.0);
    }

    #[test]
    fn modes_are_bit_identical() {
        let a = constant_c_with(5, 2, 300_000, Mode::Sequential).unwrap();
        let b = constant_c_with(5, 2, 300_000, Mode::Parallel).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn h_and_l_single_factors() {
        assert_eq!(h_at_ones(3, 1, 2).unwrap().value, 5.0 / 8.0);
        assert_eq!(h_at_ones(4, 1, 2).unwrap().value, 9.0 / 16.0);
        assert_eq!(l_at_ones(3, 2, 2).unwrap().value, 0.5);
        let l33 = l_at_ones(3, 3, 3).unwrap().value;
        assert!((l33 - (7.0 / 8.0) * (26.0 / 27.0)).abs() < 1e-15);
    }

    #[test]
    fn l_at_t_equals_k_is_inverse_zeta() {
        // ∏_{p <= 10^5} (1 - p^{-3}) against a direct f64 product.
        let direct: f64 = numtheory::primes_up_to(100_000)
            .iter()
            .map(|&p| 1.0 - (p as f64).powi(-3))
            .product();
        let l = l_at_ones(3, 3, 100_000).unwrap().value;
        assert!((l - direct).abs() < 1e-12);
    }

    #[test]
    fn local_factor_examples() {
        assert_eq!(local_f(3, 1, 1).unwrap(), BigRational::one());
        assert_eq!(local_f(3, 1, 2).unwrap(), r(3, 2));
        assert_eq!(local_f(3, 1, 6).unwrap(), r(12, 7));
        assert_eq!(local_g(3, 2, 1).unwrap(), BigRational::one());
        assert_eq!(local_g(3, 2, 2).unwrap(), r(3, 1));
        assert_eq!(local_g(3, 2, 6).unwrap(), r(4, 1));
        for k in 3..=6usize {
            for n in 1..=300u64 {
                let j = jordan_totient(k as u32 - 1, n);
                let expect = BigRational::new(j, num_traits::pow(BigInt::from(n), k - 1));
                assert_eq!(local_g(k, k, n).unwrap(), expect);
            }
        }
    }

    #[test]
    fn main_term_examples() {
        let unit = EulerProductResult {
            value: 1.0,
            log_value: 0.0,
            prime_bound: 2,
            tail_bound_estimate: 0.0,
            factor_count: 0,
        };
        let n = 97u64;
        let f = local_f(3, 1, n).unwrap().to_f64().unwrap();
        assert!((main_term_a(n, 3, 1, &unit).unwrap() - f * 97.0 * 97.0 / 2.0).abs() < 1e-9);
        let d = constant_d(3, 2, 1_000_000).unwrap();
        let m = main_term_b(6, 3, 2, &d).unwrap();
        assert!((m - d.value * 4.0 * 18.0).abs() < 1e-12);
        assert!((m - 9.035).abs() < 0.01, "{m}");
        // Odd prime power: one local factor 1 + 1/(q² - 2).
        let c = constant_c(3, 1, 1_000_000).unwrap();
        let n = 3u64.pow(5);
        let expect = c.value * (1.0 + 1.0 / 7.0) * (n * n) as f64 / 2.0;
        assert!((main_term_a(n, 3, 1, &c).unwrap() - expect).abs() < 1e-9 * expect);
        assert!(main_term_a(2, 3, 1, &c).is_err());
    }

    #[test]
    fn main_term_b_collapses_to_jordan() {
        for k in 3..=5usize {
            let d = constant_d(k, k, 1_000).unwrap();
            for n in k as u64..300 {
                let b = main_term_b(n, k, k, &d).unwrap();
                let r = main_term_r(n, k).unwrap();
                assert!((b - r).abs() <= 1e-9 * r, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn t_and_v_single_term() {
        let (sum, _) = t_delta_check(3, 1, 1, 1, 1_000).unwrap();
        assert_eq!(sum, 1.0);
        let (sum, _) = v_delta_check(3, 2, 1, 1, 1_000).unwrap();
        assert_eq!(sum, 1.0);
        let (_, prod) = v_delta_check(4, 4, 1, 4, 1_000).unwrap();
        assert_eq!(prod, 1.0);
        assert!(t_delta_check(3, 1, 4, 8, 100).is_err());
    }

    #[test]
    fn t_delta_skips_primes_of_delta() {
        let (_, with2) = t_delta_check(3, 1, 1, 1, 1_000_000).unwrap();
        let (_, without2) = t_delta_check(3, 1, 2, 1, 1_000_000).unwrap();
        assert!((with2 / without2 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn scan_minimal_row() {
        for c in [
            CoprimalityConstraint::all_coprime(3).unwrap(),
            CoprimalityConstraint::split(3, 1).unwrap(),
            CoprimalityConstraint::t_wise(3, 2).unwrap(),
        ] {
            let rep = residual_scan(&c, &[3], &ScanOptions::default()).unwrap();
            assert_eq!(rep.rows[0].exact_count, BigInt::one());
            assert!(rep.rows[0].main_term > 0.0);
            assert!(!rep.truncated);
        }
    }

    #[test]
    fn scan_truncates_on_budget() {
        let c = CoprimalityConstraint::split(3, 1).unwrap();
        let opts = ScanOptions {
            work_budget: 100 * 100,
            ..ScanOptions::default()
        };
        let rep = residual_scan(&c, &[50, 100, 150, 200], &opts).unwrap();
        assert!(rep.truncated);
        assert_eq!(rep.rows.len(), 2);
    }

    #[test]
    fn growth_exponent_recovers_power_of_log() {
        let rows: Vec<ResidualRow> = [100u64, 1_000, 10_000, 100_000]
            .iter()
            .map(|&n| ResidualRow {
                n,
                exact_count: BigInt::zero(),
                main_term: 0.0,
                residual: 0.0,
                normalized_residual: 3.0 * (n as f64).ln().powi(2),
            })
            .collect();
        assert!((growth_exponent(&rows).unwrap() - 2.0).abs() < 1e-12);
    }
}
