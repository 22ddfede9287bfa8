//! Independent reference computations used by the integration tests. None
//! of these call into the algebra code they are compared against.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn mul_trunc(a: &[Q], b: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(1 − t^n)^α` through `t^degree`, by the binomial series.
fn binomial_power(n: usize, alpha: &Q, degree: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); degree + 1];
    let mut coeff = Q::one();
    let mut k = 0usize;
    while k * n <= degree {
        let sign = if k.is_multiple_of(2) { Q::one() } else { -Q::one() };
        out[k * n] = &coeff * sign;
        coeff = coeff * (alpha - q(k as i64)) / q(k as i64 + 1);
        k += 1;
    }
    out
}

/// Artin-Hasse coefficients from the product formula
/// `E_p(t) = Π_{p ∤ n} (1 − t^n)^{−μ(n)/n}`.
pub fn ah_by_product(p: u64, degree: usize) -> Vec<Q> {
    let mut acc = vec![Q::zero(); degree + 1];
    acc[0] = Q::one();
    for n in 1..=degree {
        if (n as u64).is_multiple_of(p) {
            continue;
        }
        let mu = mobius(n as u64);
        if mu == 0 {
            continue;
        }
        let alpha = Q::new(BigInt::from(-mu), BigInt::from(n));
        acc = mul_trunc(&acc, &binomial_power(n, &alpha, degree), degree + 1);
    }
    acc
}

/// `a/b mod p` for `p ∤ b`.
pub fn reduce(c: &Q, p: u64) -> u64 {
    let pm = BigInt::from(p);
    let num = c.numer().mod_floor(&pm).to_u64().unwrap();
    let den = c.denom().mod_floor(&pm).to_u64().unwrap();
    assert!(den != 0, "denominator divisible by {p}");
    num * pow_mod(den, p - 2, p) % p
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Witt vectors over `F_p` as integers mod `p^m`: `(a_i) ↦ Σ p^i T(a_i)`
/// with `T(a) = a^{p^{m−1}} mod p^m` the Teichmüller lift.
pub fn witt_to_integer(p: u64, entries: &[u64]) -> u64 {
    let m = entries.len() as u32;
    let modulus = p.pow(m);
    entries
        .iter()
        .enumerate()
        .map(|(i, &a)| p.pow(i as u32) * pow_mod(a, p.pow(m - 1), modulus) % modulus)
        .sum::<u64>()
        % modulus
}

/// Plain `Vec<Vec<u64>>` matrices mod a prime.
pub type Naive = Vec<Vec<u64>>;

pub fn naive_mul(a: &Naive, b: &Naive, p: u64) -> Naive {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j] % p).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

pub fn naive_identity(n: usize) -> Naive {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn naive_is_zero(a: &Naive) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// `Σ c_i X^i` with `c` from the product-formula oracle, evaluated until
/// the powers of `X` vanish.
pub fn naive_ah_exp(x: &Naive, p: u64) -> Naive {
    let n = x.len();
    let coeffs = ah_by_product(p, n);
    let mut acc = naive_identity(n);
    let mut power = naive_identity(n);
    for c in coeffs.iter().skip(1) {
        power = naive_mul(&power, x, p);
        if naive_is_zero(&power) {
            break;
        }
        let c = reduce(c, p);
        for i in 0..n {
            for j in 0..n {
                acc[i][j] = (acc[i][j] + c * power[i][j]) % p;
            }
        }
    }
    acc
}

/// Multiplicative order of an invertible matrix by repeated multiplication.
pub fn naive_order(u: &Naive, p: u64) -> u64 {
    let id = naive_identity(u.len());
    let mut cur = u.clone();
    let mut k = 1;
    while cur != id {
        cur = naive_mul(&cur, u, p);
        k += 1;
    }
    k
}

pub fn is_p_free(c: &Q, p: u64) -> bool {
    !c.denom().abs().is_multiple_of(&BigInt::from(p))
}
