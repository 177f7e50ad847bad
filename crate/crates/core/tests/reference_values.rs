//! Values produced by an independent implementation (separate sieve,
//! separate enumeration, plain float products) and frozen here.

use compcount::asymptotics::{constant_c, constant_d, t_delta_check, v_delta_check};
use compcount::counting::brute_count;
use compcount::CoprimalityConstraint;
use num_bigint::BigInt;

// (k, s, C at 10^5, C at 10^6)
const C_TABLE: &[(usize, usize, f64, f64)] = &[
    (3, 1, 0.32263461660543413, 0.3226341426727461),
    (3, 2, 0.32263461660543413, 0.3226341426727461),
    (4, 1, 0.38159048435435255, 0.3815896435559089),
    (4, 2, 0.2539487030356361, 0.25394795696673206),
    (4, 3, 0.38159048435435255, 0.3815896435559089),
    (5, 1, 0.2677880432156462, 0.2677872564907338),
    (5, 2, 0.11842710748283598, 0.11842658559907553),
    (5, 3, 0.11842710748283598, 0.11842658559907553),
    (5, 4, 0.2677880432156462, 0.2677872564907338),
];

// (k, t, D at 10^5, D at 10^6)
const D_TABLE: &[(usize, usize, f64, f64)] = &[
    (3, 2, 0.12548728292159195, 0.12548700642071253),
    (3, 3, 1.0, 1.0),
    (4, 2, 0.19680109361284284, 0.1968002263503294),
    (4, 3, 0.40454563362608037, 0.40454563361940826),
    (5, 2, 0.01312917091126879, 0.01312907448244807),
    (5, 3, 0.5084136475120631, 0.5084136474911002),
    (5, 4, 0.6381505912691819, 0.6381505912691819),
];

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs()
}

#[test]
fn split_constants_match_reference() {
    for &(k, s, lo, hi) in C_TABLE {
        let a = constant_c(k, s, 100_000).unwrap().value;
        let b = constant_c(k, s, 1_000_000).unwrap().value;
        assert!(close(a, lo, 1e-12), "C({k},{s}) at 1e5: {a} vs {lo}");
        assert!(close(b, hi, 1e-12), "C({k},{s}) at 1e6: {b} vs {hi}");
    }
}

#[test]
fn t_wise_constants_match_reference() {
    for &(k, t, lo, hi) in D_TABLE {
        let a = constant_d(k, t, 100_000).unwrap().value;
        let b = constant_d(k, t, 1_000_000).unwrap().value;
        assert!(close(a, lo, 1e-12), "D({k},{t}) at 1e5: {a} vs {lo}");
        assert!(close(b, hi, 1e-12), "D({k},{t}) at 1e6: {b} vs {hi}");
    }
}

#[test]
fn large_brute_counts() {
    let a = CoprimalityConstraint::split(3, 1).unwrap();
    let b = CoprimalityConstraint::t_wise(3, 2).unwrap();
    for (n, ea, eb) in [
        (1_000u64, 252_572u64, 205_515u64),
        (2_000, 1_010_534, 821_991),
        (5_000, 6_313_342, 5_135_067),
    ] {
        assert_eq!(brute_count(n, &a), BigInt::from(ea), "A_3,1({n})");
        assert_eq!(brute_count(n, &b), BigInt::from(eb), "B_3,2({n})");
    }
}

// (delta, j_bound, T sum, V sum) for k = 3, s = 1, t = 2.
const TRUNCATED: &[(u64, u64, f64, f64)] = &[
    (1, 8, 0.268072562, -0.014557823),
    (1, 16, 0.317895258, 0.112149010),
    (1, 30, 0.313638866, 0.109801998),
    (1, 32, 0.311557700, 0.106680250),
    (2, 8, 0.656961451, 0.485442177),
    (2, 16, 0.646375984, 0.482897309),
    (2, 30, 0.636826858, 0.475376341),
    (2, 32, 0.634745692, 0.472254593),
    (3, 8, 0.379183673, 0.068775510),
    (3, 16, 0.411228592, 0.162149010),
    (3, 30, 0.406790793, 0.166128529),
    (3, 32, 0.404709628, 0.163006781),
    (6, 8, 0.879183673, 0.818775510),
    (6, 16, 0.850820428, 0.776230642),
    (6, 30, 0.832201007, 0.748301511),
    (6, 32, 0.830119842, 0.745179763),
];

// (delta, T product, V product) over all primes <= 10^6.
const PRODUCTS: &[(u64, f64, f64)] = &[
    (1, 0.32263414, 0.12548701),
    (2, 0.64526829, 0.50194803),
    (3, 0.41481533, 0.18823051),
    (6, 0.82963065, 0.75292204),
];

#[test]
fn truncated_sums_match_reference() {
    for &(delta, j, t_ref, v_ref) in TRUNCATED {
        let (t, _) = t_delta_check(3, 1, delta, j, 100).unwrap();
        let (v, _) = v_delta_check(3, 2, delta, j, 100).unwrap();
        assert!((t - t_ref).abs() < 1e-8, "T delta={delta} J={j}: {t}");
        assert!((v - v_ref).abs() < 1e-8, "V delta={delta} J={j}: {v}");
    }
}

#[test]
fn delta_products_match_reference() {
    for &(delta, t_ref, v_ref) in PRODUCTS {
        let (_, t) = t_delta_check(3, 1, delta, 1, 1_000_000).unwrap();
        let (_, v) = v_delta_check(3, 2, delta, 1, 1_000_000).unwrap();
        assert!((t - t_ref).abs() < 1e-8, "T product delta={delta}: {t}");
        assert!((v - v_ref).abs() < 1e-8, "V product delta={delta}: {v}");
    }
}

#[test]
fn truncated_sums_approach_products() {
    for &(delta, t_ref, v_ref) in PRODUCTS {
        let (t, _) = t_delta_check(3, 1, delta, 32, 100).unwrap();
        let (v, _) = v_delta_check(3, 2, delta, 32, 100).unwrap();
        assert!((t - t_ref).abs() < 0.05 && (v - v_ref).abs() < 0.05, "delta={delta}");
    }
    // Products truncated at primes <= 30 against sums truncated at 30.
    let (t, tp) = t_delta_check(3, 1, 1, 30, 30).unwrap();
    let (v, vp) = v_delta_check(3, 2, 1, 30, 30).unwrap();
    assert!((tp - 0.3273397200).abs() < 1e-9 && (vp - 0.1282428922).abs() < 1e-9);
    assert!((t - tp).abs() < 0.05 && (v - vp).abs() < 0.05);
}
