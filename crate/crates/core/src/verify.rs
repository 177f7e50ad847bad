//! Self-verification suites.
//!
//! Each check cross-examines two independently computed quantities over a
//! fixed (or seeded) case set and reports how many cases disagreed. The CLI
//! `verify` command and the acceptance tests run the same functions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{
    self, constant_c_with, constant_d_with, growth_exponent, h_factor_polynomial_form,
    h_factor_power_form, l_factor_polynomial_form, l_factor_symmetric_form, local_f, local_g,
    main_term_r, residual_scan, ScanOptions,
};
use crate::counting::{self, brute_count_with, identity_a_with, identity_b_with, jordan_r, mobius_r, CountOptions};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::multifunc::{convolution_check_with, CoprimalityConstraint, Kernels};
use crate::numtheory::{self, jordan_totient};
use crate::partitions::{count_nonneg, count_positive, quasipoly_check, WeightVector};
use crate::polynomials::{build_f, build_g, g_forms};

const MAX_DETAIL: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases_run: u64,
    pub failures: u64,
    /// The first few failing cases, human readable.
    pub detail: Vec<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            cases_run: 0,
            failures: 0,
            detail: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases_run > 0
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases_run += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.detail.len() < MAX_DETAIL {
            self.detail.push(msg);
        }
    }

    fn absorb(&mut self, other: Vec<(bool, String)>) {
        for (ok, msg) in other {
            self.record(ok, || msg);
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases_run,
            self.failures
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Convolution,
    Partitions,
    Asymptotics,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "identities" => Ok(Suite::Identities),
            "convolution" => Ok(Suite::Convolution),
            "partitions" => Ok(Suite::Partitions),
            "asymptotics" => Ok(Suite::Asymptotics),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub kernels: Kernels,
    pub seed: u64,
    pub mode: Mode,
    pub work_budget: u128,
    pub prime_bound: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            kernels: Kernels::STANDARD,
            seed: 0,
            mode: Mode::default(),
            work_budget: counting::DEFAULT_WORK_BUDGET,
            prime_bound: asymptotics::DEFAULT_PRIME_BOUND,
        }
    }
}

impl VerifyOptions {
    fn count_options(&self) -> CountOptions {
        CountOptions {
            work_budget: self.work_budget,
            kernels: self.kernels,
            mode: self.mode,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        out.push(r_family(opts));
        out.push(a_family(opts));
        out.push(b_family(opts));
        out.push(lambert_partition(opts));
    }
    if matches!(suite, Suite::Convolution | Suite::All) {
        out.push(convolution_exhaustive_k3(opts));
        out.push(convolution_random_k4(opts));
    }
    if matches!(suite, Suite::Partitions | Suite::All) {
        out.push(quasipolynomial(opts));
        out.push(partition_shift(opts));
    }
    if matches!(suite, Suite::Asymptotics | Suite::All) {
        out.push(polynomial_structure(opts));
        out.push(euler_factor_identities(opts));
        out.push(constant_stability(opts));
        out.push(local_factor_bounds(opts));
        out.push(collapse_chain(opts));
        out.push(truncated_sums(opts));
        out.push(main_term_accuracy(opts));
    }
    out
}

/// Möbius route, Jordan route and enumeration agree on `R_k(n)` for
/// `2 <= k <= 5`, `k <= n <= 60`.
pub fn r_family(opts: &VerifyOptions) -> CheckResult {
    let mut c = CheckResult::new("r_family_oracles");
    for k in 2..=5usize {
        let constraint = CoprimalityConstraint::all_coprime(k).expect("valid k");
        for n in k as u64..=60 {
            let brute = brute_count_with(n, &constraint, opts.mode);
            let mob = mobius_r(n, k);
            let jor = jordan_r(n, k);
            c.record(jor.as_ref() == Ok(&brute) && mob == brute, || {
                format!("R_{k}({n}): brute {brute}, mobius {mob}, jordan {jor:?}")
            });
        }
    }
    c
}

fn identity_vs_brute(
    name: &'static str,
    opts: &VerifyOptions,
    params: impl Fn(usize) -> std::ops::RangeInclusive<usize>,
    make: fn(usize, usize) -> Result<CoprimalityConstraint>,
    identity: fn(u64, usize, usize, &CountOptions) -> Result<BigInt>,
) -> CheckResult {
    let mut c = CheckResult::new(name);
    let copts = opts.count_options();
    for k in 3..=4usize {
        for p in params(k) {
            let constraint = make(k, p).expect("valid parameters");
            let ns: Vec<u64> = (k as u64..=30).collect();
            let rows = exec::map_collect(opts.mode, &ns, |&n| {
                let brute = brute_count_with(n, &constraint, Mode::Sequential);
                let via = identity(n, k, p, &copts);
                (via.as_ref() == Ok(&brute), format!("{constraint} n={n}: brute {brute}, identity {via:?}"))
            });
            c.absorb(rows);
        }
    }
    c
}

/// Divisor-sum representation of `A_{k,s}(n)` against enumeration.
pub fn a_family(opts: &VerifyOptions) -> CheckResult {
    identity_vs_brute("a_family_identity", opts, |k| 1..=k - 1, CoprimalityConstraint::split, identity_a_with)
}

/// Divisor-sum representation of `B_{k,t}(n)` against enumeration.
pub fn b_family(opts: &VerifyOptions) -> CheckResult {
    identity_vs_brute("b_family_identity", opts, |k| 2..=k, CoprimalityConstraint::t_wise, identity_b_with)
}

/// `Σ_{d | n} R_k(n/d) = C(n-1, k-1)` for `n <= 200`, `k <= 5`.
pub fn lambert_partition(_opts: &VerifyOptions) -> CheckResult {
    let mut c = CheckResult::new("lambert_partition");
    for k in 1..=5usize {
        for n in 1..=200u64 {
            let lhs: BigInt = numtheory::divisors(n).iter().map(|&d| mobius_r(n / d, k)).sum();
            let rhs = counting::total_compositions(n, k);
            c.record(lhs == rhs, || format!("k={k} n={n}: {lhs} vs {rhs}"));
        }
    }
    c
}

/// Every k=3 tuple with coordinates <= 36 against both split and both
/// t-wise constraints.
pub fn convolution_exhaustive_k3(opts: &VerifyOptions) -> CheckResult {
    let constraints = [
        CoprimalityConstraint::split(3, 1),
        CoprimalityConstraint::split(3, 2),
        CoprimalityConstraint::t_wise(3, 2),
        CoprimalityConstraint::t_wise(3, 3),
    ]
    .map(|c| c.expect("valid"));
    let firsts: Vec<u64> = (1..=36).collect();
    let per_first = exec::map_collect(opts.mode, &firsts, |&a| {
        let mut rows = Vec::new();
        for b in 1..=36u64 {
            for cc in 1..=36u64 {
                for constraint in &constraints {
                    let n = [a, b, cc];
                    let r = convolution_check_with(&opts.kernels, constraint, &n);
                    if !matches!(r, Ok(true)) {
                        rows.push((false, format!("{constraint} at {n:?}: {r:?}")));
                    } else {
                        rows.push((true, String::new()));
                    }
                }
            }
        }
        rows
    });
    let mut c = CheckResult::new("convolution_k3_exhaustive");
    for rows in per_first {
        c.absorb(rows);
    }
    c
}

/// 1000 seeded random k=4 tuples with coordinates <= 24, each against all
/// split and t-wise constraints.
pub fn convolution_random_k4(opts: &VerifyOptions) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let tuples: Vec<[u64; 4]> = (0..1000)
        .map(|_| std::array::from_fn(|_| rng.gen_range(1..=24u64)))
        .collect();
    let constraints: Vec<CoprimalityConstraint> = (1..=3)
        .map(|s| CoprimalityConstraint::split(4, s))
        .chain((2..=4).map(|t| CoprimalityConstraint::t_wise(4, t)))
        .map(|c| c.expect("valid"))
        .collect();
    let per_tuple = exec::map_collect(opts.mode, &tuples, |n| {
        constraints
            .iter()
            .map(|constraint| {
                let r = convolution_check_with(&opts.kernels, constraint, n);
                (matches!(r, Ok(true)), format!("{constraint} at {n:?}: {r:?}"))
            })
            .collect::<Vec<_>>()
    });
    let mut c = CheckResult::new("convolution_k4_random");
    for rows in per_tuple {
        c.absorb(rows);
    }
    c
}

/// k-th differences at step `lcm(a)` of `P(n; a)` vanish on `[0, 300]`.
pub fn quasipolynomial(_opts: &VerifyOptions) -> CheckResult {
    let mut c = CheckResult::new("quasipolynomial");
    for a in [vec![1, 2, 3], vec![2, 3, 5], vec![1, 1, 2, 3]] {
        let w = WeightVector::new(a.clone()).expect("positive weights");
        match quasipoly_check(&w, 300) {
            Ok(rep) => {
                c.cases_run += rep.differences_checked - 1;
                c.record(rep.max_abs_kth_difference.is_zero(), || {
                    format!("a={a:?}: max |difference| = {}", rep.max_abs_kth_difference)
                });
            }
            Err(e) => c.record(false, || format!("a={a:?}: {e}")),
        }
    }
    c
}

/// `N(n; a)` against a direct enumeration of positive solutions for small
/// weight vectors.
pub fn partition_shift(_opts: &VerifyOptions) -> CheckResult {
    fn enumerate(n: u64, a: &[u64]) -> u64 {
        match a {
            [] => 0,
            [last] => u64::from(n >= *last && n.is_multiple_of(*last)),
            [first, rest @ ..] => {
                let mut total = 0;
                let mut used = *first;
                while used < n {
                    total += enumerate(n - used, rest);
                    used += first;
                }
                total
            }
        }
    }
    let mut c = CheckResult::new("partition_positive_solutions");
    for a in [vec![1, 2, 3], vec![2, 3, 5], vec![1, 1, 2, 3], vec![3, 4], vec![1, 1, 1, 1, 1]] {
        let w = WeightVector::new(a.clone()).expect("positive weights");
        for n in 0..=60u64 {
            let direct = BigInt::from(enumerate(n, &a));
            let dp = count_positive(n, &w);
            let shifted = n
                .checked_sub(w.sum())
                .map_or_else(BigInt::zero, |m| count_nonneg(m, &w));
            c.record(dp == direct && shifted == direct, || {
                format!("a={a:?} n={n}: dp {dp}, shifted {shifted}, direct {direct}")
            });
        }
    }
    c
}

/// Degrees, symmetry and the two forms of `G` for `3 <= k <= 12`.
pub fn polynomial_structure(_opts: &VerifyOptions) -> CheckResult {
    let mut c = CheckResult::new("polynomial_structure");
    for k in 3..=12usize {
        for s in 1..k {
            let f = build_f(k, s);
            let mirror = build_f(k, k - s);
            c.record(
                matches!((&f, &mirror), (Ok(a), Ok(b)) if a == b && a.degree() == Some(k - 3)),
                || format!("F_({k},{s}): {f:?} vs mirror {mirror:?}"),
            );
        }
        for t in 2..=k {
            let (first, second) = g_forms(k, t);
            let g = build_g(k, t);
            c.record(
                first == second && matches!(&g, Ok(p) if p.degree() == Some(k - 1)),
                || format!("G_({k},{t}): forms {first} / {second}, built {g:?}"),
            );
        }
        let gkk = build_g(k, k);
        c.record(
            matches!(&gkk, Ok(p) if *p == crate::IntegerPolynomial::monomial(k - 1)),
            || format!("G_({k},{k}) = {gkk:?}"),
        );
    }
    c
}

/// Per-prime rational identities for the local factors at `z = (1, ..., 1)`,
/// all primes <= 1000 and `k <= 8`.
pub fn euler_factor_identities(opts: &VerifyOptions) -> CheckResult {
    let primes = numtheory::primes_up_to(1000);
    let mut cases: Vec<(usize, usize, bool)> = Vec::new();
    for k in 3..=8usize {
        cases.extend((1..k).map(|s| (k, s, true)));
        cases.extend((2..=k).map(|t| (k, t, false)));
    }
    let rows = exec::map_collect(opts.mode, &cases, |&(k, j, is_h)| {
        primes
            .iter()
            .map(|&p| {
                let (lhs, rhs) = if is_h {
                    (h_factor_polynomial_form(k, j, p), h_factor_power_form(k, j, p))
                } else {
                    (l_factor_polynomial_form(k, j, p), l_factor_symmetric_form(k, j, p))
                };
                let ok = lhs.as_ref() == Ok(&rhs);
                let tag = if is_h { "H" } else { "L" };
                (ok, format!("{tag}_({k},{j}) at p={p}: {lhs:?} vs {rhs:?}"))
            })
            .collect::<Vec<_>>()
    });
    let mut c = CheckResult::new("euler_factor_identities");
    for r in rows {
        c.absorb(r);
    }
    c
}

/// `C_{k,s}` and `D_{k,t}` at prime bounds `10^5` and `10^6` agree within
/// `10^-6`, and `D_{k,k} = 1`, for `k ∈ {3, 4, 5}`.
pub fn constant_stability(opts: &VerifyOptions) -> CheckResult {
    let mut c = CheckResult::new("constant_stability");
    for k in 3..=5usize {
        for s in 1..k {
            let lo = constant_c_with(k, s, 100_000, opts.mode);
            let hi = constant_c_with(k, s, 1_000_000, opts.mode);
            c.record(
                matches!((&lo, &hi), (Ok(a), Ok(b)) if (a.value - b.value).abs() < 1e-6),
                || format!("C_({k},{s}): {lo:?} vs {hi:?}"),
            );
        }
        for t in 2..=k {
            let lo = constant_d_with(k, t, 100_000, opts.mode);
            let hi = constant_d_with(k, t, 1_000_000, opts.mode);
            let exact_one = t != k || matches!((&lo, &hi), (Ok(a), Ok(b)) if a.value == 1.0 && b.value == 1.0);
            c.record(
                exact_one && matches!((&lo, &hi), (Ok(a), Ok(b)) if (a.value - b.value).abs() < 1e-6),
                || format!("D_({k},{t}): {lo:?} vs {hi:?}"),
            );
        }
    }
    c
}

/// `2/3 < f_{k,1}(n) < 2` and `1/(2k) < g_{k,2}(n) < 2k` for `n <= 10^5`,
/// `k ∈ {3, 4, 5}`, compared as exact rationals.
pub fn local_factor_bounds(opts: &VerifyOptions) -> CheckResult {
    let mut c = CheckResult::new("local_factor_bounds");
    for k in 3..=5usize {
        let (f_lo, f_hi) = (ratio(2, 3), ratio(2, 1));
        let (g_lo, g_hi) = (ratio(1, 2 * k as i64), ratio(2 * k as i64, 1));
        let rows = exec::map_range(opts.mode, 1..100_001, |n| {
            let f = local_f(k, 1, n);
            let g = local_g(k, 2, n);
            let ok = matches!(&f, Ok(v) if *v > f_lo && *v < f_hi)
                && matches!(&g, Ok(v) if *v > g_lo && *v < g_hi);
            (ok, n, f, g)
        });
        for (ok, n, f, g) in rows {
            c.record(ok, || format!("k={k} n={n}: f={f:?} g={g:?}"));
        }
    }
    c
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `D_{k,k} = 1`, `g_{k,k}(n) = J_{k-1}(n)/n^{k-1}`, and the t=k main term
/// of `B` equals `J_{k-1}(n)/(k-1)!` to `10^-9` relative.
pub fn collapse_chain(opts: &VerifyOptions) -> CheckResult {
    let mut c = CheckResult::new("collapse_chain");
    for k in 3..=6usize {
        let d = match constant_d_with(k, k, opts.prime_bound, opts.mode) {
            Ok(d) => d,
            Err(e) => {
                c.record(false, || format!("D_({k},{k}): {e}"));
                continue;
            }
        };
        c.record(d.value == 1.0, || format!("D_({k},{k}) = {}", d.value));
        for n in k as u64..=500 {
            let g = local_g(k, k, n);
            let expect = BigRational::new(jordan_totient(k as u32 - 1, n), num_traits::pow(BigInt::from(n), k - 1));
            let b = asymptotics::main_term_b(n, k, k, &d);
            let r = main_term_r(n, k);
            let close = matches!((&b, &r), (Ok(b), Ok(r)) if (b - r).abs() <= 1e-9 * r.abs());
            c.record(g.as_ref() == Ok(&expect) && close, || {
                format!("k={k} n={n}: g={g:?}, main B={b:?}, main R={r:?}")
            });
        }
    }
    c
}

/// Truncated λ and ψ sums for k=3 at `j_bound = 32` lie within 0.05 of the
/// full Euler products, for squarefree `δ ∈ {1, 2, 3, 6}`.
pub fn truncated_sums(opts: &VerifyOptions) -> CheckResult {
    let mut c = CheckResult::new("truncated_sums");
    for delta in [1u64, 2, 3, 6] {
        let t = asymptotics::t_delta_check_with(&opts.kernels, 3, 1, delta, 32, opts.prime_bound);
        c.record(matches!(t, Ok((s, p)) if (s - p).abs() < 0.05), || {
            format!("T delta={delta}: {t:?}")
        });
        let v = asymptotics::v_delta_check_with(&opts.kernels, 3, 2, delta, 32, opts.prime_bound);
        c.record(matches!(v, Ok((s, p)) if (s - p).abs() < 0.05), || {
            format!("V delta={delta}: {v:?}")
        });
    }
    c
}

pub const ACCURACY_POINTS: [u64; 4] = [1_000, 2_000, 5_000, 10_000];

/// For `A_{3,1}` and `B_{3,2}`: relative error of the main term at most
/// 0.10 at `n = 10^3` and 0.03 at `n = 10^4`, and the growth exponent of the
/// normalized residual in `ln n` at most 2.5.
pub fn main_term_accuracy(opts: &VerifyOptions) -> CheckResult {
    let mut c = CheckResult::new("main_term_accuracy");
    let scan_opts = ScanOptions {
        prime_bound: opts.prime_bound,
        work_budget: opts.work_budget,
        mode: opts.mode,
    };
    for constraint in [CoprimalityConstraint::split(3, 1), CoprimalityConstraint::t_wise(3, 2)] {
        let constraint = constraint.expect("valid");
        let report = match residual_scan(&constraint, &ACCURACY_POINTS, &scan_opts) {
            Ok(r) => r,
            Err(e) => {
                c.record(false, || format!("{constraint}: {e}"));
                continue;
            }
        };
        c.record(!report.truncated, || format!("{constraint}: scan truncated by work budget"));
        for row in &report.rows {
            let limit = match row.n {
                1_000 => 0.10,
                10_000 => 0.03,
                _ => continue,
            };
            let rel = (row.exact_count.to_f64().unwrap_or(f64::NAN) / row.main_term - 1.0).abs();
            c.record(rel <= limit, || format!("{constraint} n={}: relative error {rel}", row.n));
        }
        let slope = growth_exponent(&report.rows);
        c.record(matches!(slope, Some(s) if s <= 2.5), || {
            format!("{constraint}: growth exponent {slope:?}")
        });
    }
    c
}
