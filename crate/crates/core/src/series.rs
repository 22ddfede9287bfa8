//! Truncated power series over `Q` and `F_p`, with the Artin-Hasse exponential.
//!
//! The rational coefficients `C_i` of `E_p(t) = exp(t + t^p/p + t^{p^2}/p^2 + ...)`
//! are computed exactly as the product of `exp(t^{p^j}/p^j)` over the finitely
//! many `p^j ≤ N`, then reduced mod `p`. Reduction fails loudly if a
//! denominator is divisible by `p`; that would be a bug, not a tolerance.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{is_prime, Field, FieldScalar};

/// Exact rational in lowest terms with positive denominator.
pub type Rational = BigRational;

/// `C_0 + C_1 t + ... + C_N t^N` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<Rational>,
}

impl RationalSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Argument("a series needs at least one coefficient".into()));
        }
        Ok(RationalSeries { coeffs })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Truncation degree `N`; the series is known modulo `t^{N+1}`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `"num/den"` strings, one per coefficient.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }

    /// Reduces every coefficient under `Z_(p) → F_p`.
    pub fn reduce_mod(&self, p: u32) -> Result<FpSeries> {
        let field = Field::prime(p)?;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| reduce_rational(c, field).ok_or_else(|| Error::Integrality {
                p,
                index: i,
                value: c.to_string(),
            }))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpSeries { field, coeffs })
    }
}

/// `num * den^{-1} mod p`, or `None` if `p` divides the denominator.
pub fn reduce_rational(c: &Rational, field: Field) -> Option<FieldScalar> {
    let p = BigInt::from(field.p());
    let den = c.denom().mod_floor(&p).to_i64()?;
    if den == 0 {
        return None;
    }
    let num = c.numer().mod_floor(&p).to_i64()?;
    let inv = field.from_int(den).inv()?;
    Some(field.from_int(num) * inv)
}

/// Truncated series over a prime field `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpSeries {
    field: Field,
    coeffs: Vec<FieldScalar>,
}

impl FpSeries {
    pub fn new(field: Field, coeffs: Vec<FieldScalar>) -> Result<Self> {
        if field.e() != 1 {
            return Err(Error::Argument("FpSeries lives over a prime field".into()));
        }
        if coeffs.is_empty() {
            return Err(Error::Argument("a series needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::Mismatch("coefficient outside the series field".into()));
        }
        Ok(FpSeries { field, coeffs })
    }

    pub fn from_ints(p: u32, coeffs: &[i64]) -> Result<Self> {
        let field = Field::prime(p)?;
        FpSeries::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldScalar {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    /// Canonical representatives in `[0, p)`.
    pub fn to_ints(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.coords()[0]).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// Keeps coefficients up to `t^degree` (never extends).
    pub fn truncate(&self, degree: usize) -> FpSeries {
        let len = (degree + 1).min(self.coeffs.len());
        FpSeries {
            field: self.field,
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    fn check_same_field(&self, other: &FpSeries) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Mismatch(format!(
                "series over {:?} and {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }
}

/// Cauchy product, truncated to the shorter of the two inputs.
pub fn series_mul(a: &FpSeries, b: &FpSeries) -> Result<FpSeries> {
    a.check_same_field(b)?;
    let len = a.coeffs.len().min(b.coeffs.len());
    Ok(FpSeries {
        field: a.field,
        coeffs: mul_trunc(a.field, &a.coeffs, &b.coeffs, len),
    })
}

fn mul_trunc(field: Field, a: &[FieldScalar], b: &[FieldScalar], len: usize) -> Vec<FieldScalar> {
    let mut out = vec![field.zero(); len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `f(g(t))` for `g` with zero constant term, truncated to the shorter input.
pub fn series_compose(f: &FpSeries, g: &FpSeries) -> Result<FpSeries> {
    f.check_same_field(g)?;
    if !g.coeff(0).is_zero() {
        return Err(Error::Argument(
            "inner series of a composition must have zero constant term".into(),
        ));
    }
    let len = f.coeffs.len().min(g.coeffs.len());
    let field = f.field;
    let mut out = vec![field.zero(); len];
    let mut power = vec![field.zero(); len];
    power[0] = field.one();
    for (k, &fk) in f.coeffs.iter().enumerate().take(len) {
        if k > 0 {
            power = mul_trunc(field, &power, &g.coeffs, len);
        }
        for i in 0..len {
            out[i] += fk * power[i];
        }
    }
    Ok(FpSeries { field, coeffs: out })
}

/// Compositional inverse `l` with `l(s(t)) ≡ t mod t^{N+1}`.
pub fn series_reversion(s: &FpSeries) -> Result<FpSeries> {
    if !s.coeff(0).is_zero() {
        return Err(Error::Argument("reversion needs a zero constant term".into()));
    }
    let a1 = s.coeff(1);
    let a1_inv = a1
        .inv()
        .ok_or_else(|| Error::Argument("reversion needs a unit linear coefficient".into()))?;
    let field = s.field;
    let len = s.coeffs.len();
    let mut out = vec![field.zero(); len];
    if len < 2 {
        return Ok(FpSeries { field, coeffs: out });
    }
    out[1] = a1_inv;
    // powers[k] = s^k truncated
    let mut powers: Vec<Vec<FieldScalar>> = vec![vec![field.zero(); len]; len];
    powers[1] = s.coeffs.clone();
    for k in 2..len {
        powers[k] = mul_trunc(field, &powers[k - 1], &s.coeffs, len);
    }
    for n in 2..len {
        let mut acc = field.zero();
        for (k, pk) in powers.iter().enumerate().take(n).skip(1) {
            acc += out[k] * pk[n];
        }
        // [t^n] s^n = a1^n
        out[n] = -acc * a1_inv.pow(n as u64);
    }
    Ok(FpSeries { field, coeffs: out })
}

/// Multiplicative inverse of a series with unit constant term.
pub fn series_inverse(s: &FpSeries) -> Result<FpSeries> {
    let c0_inv = s
        .coeff(0)
        .inv()
        .ok_or_else(|| Error::Argument("series inverse needs a unit constant term".into()))?;
    let field = s.field;
    let len = s.coeffs.len();
    let mut out = vec![field.zero(); len];
    out[0] = c0_inv;
    for n in 1..len {
        let mut acc = field.zero();
        for k in 1..=n {
            acc += s.coeffs[k] * out[n - k];
        }
        out[n] = -acc * c0_inv;
    }
    Ok(FpSeries { field, coeffs: out })
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::Argument(format!("{p} is not prime")))
    }
}

fn rational_mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `C_0..C_N` of the Artin-Hasse exponential, exactly.
pub fn ah_rational_coeffs(p: u32, degree: usize) -> Result<RationalSeries> {
    check_prime(p)?;
    let len = degree + 1;
    let mut acc = vec![Rational::zero(); len];
    acc[0] = Rational::one();
    let mut pj: usize = 1;
    while pj <= degree {
        // exp(t^{pj}/pj) = sum_k t^{k pj} / (pj^k k!)
        let mut factor = vec![Rational::zero(); len];
        let step = Rational::new(BigInt::one(), BigInt::from(pj));
        let mut term = Rational::one();
        let mut k = 0usize;
        while k * pj < len {
            factor[k * pj] = term.clone();
            k += 1;
            term = &term * &step / BigInt::from(k);
        }
        acc = rational_mul_trunc(&acc, &factor, len);
        pj = match pj.checked_mul(p as usize) {
            Some(v) => v,
            None => break,
        };
    }
    debug_assert_eq!(acc, ah_rational_coeffs_by_recurrence(p, degree)?.coeffs);
    RationalSeries::new(acc)
}

/// The same coefficients from `(n+1) C_{n+1} = Σ_{p^j - 1 ≤ n} C_{n-(p^j-1)}`,
/// which follows from `E_p' = E_p · (1 + t^{p-1} + t^{p^2-1} + ...)`.
pub fn ah_rational_coeffs_by_recurrence(p: u32, degree: usize) -> Result<RationalSeries> {
    check_prime(p)?;
    let mut c = vec![Rational::one()];
    for n in 0..degree {
        let mut sum = Rational::zero();
        let mut pj: usize = 1;
        while pj - 1 <= n {
            sum += &c[n - (pj - 1)];
            pj = match pj.checked_mul(p as usize) {
                Some(v) => v,
                None => break,
            };
        }
        c.push(sum / BigInt::from(n + 1));
    }
    RationalSeries::new(c)
}

/// `e_p(t)`: the Artin-Hasse coefficients reduced mod `p`.
pub fn ah_coeffs_mod_p(p: u32, degree: usize) -> Result<FpSeries> {
    ah_rational_coeffs(p, degree)?.reduce_mod(p)
}

/// The multiplicative inverse of `e_p(t)` (the mod-p image of `F_p(t)`).
pub fn ah_inverse_coeffs(p: u32, degree: usize) -> Result<FpSeries> {
    series_inverse(&ah_coeffs_mod_p(p, degree)?)
}

/// Minimum degree kept in the process-wide coefficient caches.
const CACHE_MIN_DEGREE: usize = 64;

type SeriesCache = RwLock<HashMap<u32, Arc<FpSeries>>>;

fn cached<F>(cache: &'static OnceLock<SeriesCache>, p: u32, degree: usize, build: F) -> Result<Arc<FpSeries>>
where
    F: Fn(usize) -> Result<FpSeries>,
{
    let cache = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(s) = cache.read().expect("series cache poisoned").get(&p) {
        if s.degree() >= degree {
            return Ok(Arc::clone(s));
        }
    }
    let target = degree.max(CACHE_MIN_DEGREE);
    let built = Arc::new(build(target)?);
    let mut guard = cache.write().expect("series cache poisoned");
    let entry = guard.entry(p).or_insert_with(|| Arc::clone(&built));
    if entry.degree() < target {
        *entry = Arc::clone(&built);
    }
    Ok(Arc::clone(entry))
}

/// Shared `e_p(t)` of degree at least `degree`.
pub fn ah_coeffs_cached(p: u32, degree: usize) -> Result<Arc<FpSeries>> {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    cached(&CACHE, p, degree, |d| ah_coeffs_mod_p(p, d))
}

/// Shared compositional inverse of `e_p(t) - 1`, of degree at least `degree`.
pub fn ah_log_coeffs_cached(p: u32, degree: usize) -> Result<Arc<FpSeries>> {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    cached(&CACHE, p, degree, |d| {
        let e = ah_coeffs_cached(p, d)?.truncate(d);
        let mut shifted = e.coeffs.clone();
        shifted[0] = e.field.zero();
        series_reversion(&FpSeries {
            field: e.field,
            coeffs: shifted,
        })
    })
}
