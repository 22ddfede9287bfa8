//! Additive group of Witt vectors of length `m ≤ 3` over `F_{p^e}`.
//!
//! The sum polynomials `S_n` come from the ghost components
//! `w_n(x) = Σ_{i≤n} p^i x_i^{p^{n−i}}` via
//! `S_n = (w_n(a) + w_n(b) − Σ_{i<n} p^i S_i^{p^{n−i}}) / p^n`, computed over
//! `Z`, reduced mod `p` once and cached per `(p, m)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{is_prime, Field, FieldScalar};
use crate::matrix::EntryRepr;
use crate::zpoly::{ReducedPoly, ZPoly};

/// Longest supported Witt vector.
pub const MAX_LENGTH: usize = 3;

fn check_length(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Argument("Witt vectors have length ≥ 1".into()));
    }
    if m > MAX_LENGTH {
        return Err(Error::Unsupported(format!(
            "Witt vectors of length {m}; at most {MAX_LENGTH} are supported"
        )));
    }
    Ok(())
}

/// Ghost component `w_n` of the variables `x_0..x_n` (indices into a ring of `nvars`).
pub fn ghost(p: u32, n: usize, vars: &[ZPoly]) -> ZPoly {
    let nvars = vars[0].nvars();
    let mut acc = ZPoly::zero(nvars);
    for (i, v) in vars.iter().enumerate().take(n + 1) {
        let exp = p.pow((n - i) as u32);
        acc = acc.add(&v.pow(exp).scale(&BigInt::from(p).pow(i as u32)));
    }
    acc
}

/// `[S_0, …, S_{m−1}]` over `Z` in the variables `a_0..a_{m−1}, b_0..b_{m−1}`.
pub fn witt_sum_polys(p: u32, m: usize) -> Result<Vec<ZPoly>> {
    if !is_prime(p as u64) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    check_length(m)?;
    let nvars = 2 * m;
    let a: Vec<ZPoly> = (0..m).map(|i| ZPoly::var(nvars, i)).collect();
    let b: Vec<ZPoly> = (0..m).map(|i| ZPoly::var(nvars, m + i)).collect();
    let mut sums: Vec<ZPoly> = Vec::with_capacity(m);
    for n in 0..m {
        let mut num = ghost(p, n, &a).add(&ghost(p, n, &b));
        for (i, s) in sums.iter().enumerate() {
            let exp = p.pow((n - i) as u32);
            num = num.sub(&s.pow(exp).scale(&BigInt::from(p).pow(i as u32)));
        }
        let s_n = num
            .div_exact(&BigInt::from(p).pow(n as u32))
            .expect("ghost recursion divides exactly by p^n");
        sums.push(s_n);
    }
    Ok(sums)
}

/// Reduced sum polynomials for `(p, m)`, shared process-wide.
pub fn witt_law(p: u32, m: usize) -> Result<Arc<Vec<ReducedPoly>>> {
    type Cache = RwLock<HashMap<(u32, usize), Arc<Vec<ReducedPoly>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(law) = cache.read().expect("witt cache poisoned").get(&(p, m)) {
        return Ok(Arc::clone(law));
    }
    let reduced: Vec<ReducedPoly> = witt_sum_polys(p, m)?
        .iter()
        .map(|s| s.reduce_mod(p))
        .collect();
    let law = Arc::new(reduced);
    Ok(cache
        .write()
        .expect("witt cache poisoned")
        .entry((p, m))
        .or_insert(law)
        .clone())
}

/// `(a_0, …, a_{m−1})` with entries in `F_{p^e}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WittVector {
    field: Field,
    entries: Vec<FieldScalar>,
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({self})")
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl WittVector {
    pub fn new(field: Field, entries: Vec<FieldScalar>) -> Result<Self> {
        check_length(entries.len())?;
        if entries.iter().any(|x| x.field() != field) {
            return Err(Error::Mismatch("Witt entry outside the vector field".into()));
        }
        Ok(WittVector { field, entries })
    }

    pub fn zero(field: Field, m: usize) -> Result<Self> {
        WittVector::new(field, vec![field.zero(); m])
    }

    /// `(1, 0, …, 0)`.
    pub fn unit(field: Field, m: usize) -> Result<Self> {
        let mut v = WittVector::zero(field, m)?;
        v.entries[0] = field.one();
        Ok(v)
    }

    pub fn from_ints(field: Field, entries: &[i64]) -> Result<Self> {
        WittVector::new(field, entries.iter().map(|&x| field.from_int(x)).collect())
    }

    /// Comma-separated entries, e.g. `"1,0,1"` (`"c0:c1"` for `e = 2` entries).
    pub fn parse(field: Field, text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|s| field.parse_scalar(s))
            .collect::<Result<Vec<_>>>()?;
        WittVector::new(field, entries)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[FieldScalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(
            self.entries
                .iter()
                .map(|&x| EntryRepr::from_scalar(x))
                .collect::<Vec<_>>(),
        )
        .expect("entries serialize")
    }

    /// Every vector of length `m` over `field`, in lexicographic coordinate order.
    pub fn enumerate(field: Field, m: usize) -> Result<Vec<WittVector>> {
        check_length(m)?;
        let elements: Vec<FieldScalar> = field.elements().collect();
        let q = elements.len();
        let total = q.pow(m as u32);
        Ok((0..total)
            .map(|mut k| {
                let mut entries = Vec::with_capacity(m);
                for _ in 0..m {
                    entries.push(elements[k % q]);
                    k /= q;
                }
                WittVector {
                    field,
                    entries,
                }
            })
            .collect())
    }

    fn check_compatible(&self, other: &WittVector) -> Result<()> {
        if self.field != other.field || self.len() != other.len() {
            return Err(Error::Mismatch(format!(
                "Witt vectors of length {} over {:?} and {} over {:?}",
                self.len(),
                self.field,
                other.len(),
                other.field
            )));
        }
        Ok(())
    }

    /// Random vector, entries drawn as in [`Field::random`].
    pub fn random<R: rand_core::RngCore + ?Sized>(field: Field, m: usize, rng: &mut R) -> Result<Self> {
        WittVector::new(field, (0..m).map(|_| field.random(rng)).collect())
    }
}

fn eval_sum(law: &[ReducedPoly], n: usize, a: &WittVector, b: &[FieldScalar]) -> FieldScalar {
    let mut values = a.entries.clone();
    values.extend_from_slice(b);
    law[n].eval(a.field, &values)
}

/// Witt addition `u ⊞ v`.
pub fn witt_add(u: &WittVector, v: &WittVector) -> Result<WittVector> {
    u.check_compatible(v)?;
    let law = witt_law(u.field.p(), u.len())?;
    let entries = (0..u.len()).map(|n| eval_sum(&law, n, u, &v.entries)).collect();
    Ok(WittVector {
        field: u.field,
        entries,
    })
}

/// The inverse `⊟w`, solved one coordinate at a time: `S_n` is
/// `a_n + b_n` plus terms in lower coordinates.
pub fn witt_neg(w: &WittVector) -> Result<WittVector> {
    let law = witt_law(w.field.p(), w.len())?;
    let mut b = vec![w.field.zero(); w.len()];
    for n in 0..w.len() {
        let partial = eval_sum(&law, n, w, &b);
        b[n] = -partial;
    }
    Ok(WittVector {
        field: w.field,
        entries: b,
    })
}

/// `(a_0, a_1, …, a_{m−1}) ↦ (0, a_0^p, …, a_{m−2}^p)`.
pub fn witt_pow_p(w: &WittVector) -> WittVector {
    let mut entries = vec![w.field.zero()];
    entries.extend(w.entries[..w.len() - 1].iter().map(|a| a.frobenius()));
    WittVector {
        field: w.field,
        entries,
    }
}

/// Order of `w` in `W_m`, found by iterating the `p`-power map.
pub fn witt_order(w: &WittVector) -> u64 {
    let p = w.field.p() as u64;
    let mut order = 1;
    let mut cur = w.clone();
    while !cur.is_zero() {
        cur = witt_pow_p(&cur);
        order *= p;
    }
    order
}

/// `n · (1, 0, …, 0)` in `W_m(F_p)`, by double-and-add on `n mod p^m`.
pub fn witt_from_integer(field: Field, m: usize, n: i64) -> Result<WittVector> {
    if field.e() != 1 {
        return Err(Error::Argument(
            "witt_from_integer is defined over the prime field only".into(),
        ));
    }
    check_length(m)?;
    let modulus = (field.p() as i64).pow(m as u32);
    let mut k = n.rem_euclid(modulus);
    let mut acc = WittVector::zero(field, m)?;
    let mut base = WittVector::unit(field, m)?;
    while k > 0 {
        if k & 1 == 1 {
            acc = witt_add(&acc, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = witt_add(&base, &base)?;
        }
    }
    Ok(acc)
}

/// Checks `w_n(S) = w_n(a) + w_n(b)` symbolically for all `n < m`.
pub fn ghost_identity_holds(p: u32, m: usize) -> Result<bool> {
    let sums = witt_sum_polys(p, m)?;
    let nvars = 2 * m;
    let a: Vec<ZPoly> = (0..m).map(|i| ZPoly::var(nvars, i)).collect();
    let b: Vec<ZPoly> = (0..m).map(|i| ZPoly::var(nvars, m + i)).collect();
    Ok((0..m).all(|n| ghost(p, n, &sums) == ghost(p, n, &a).add(&ghost(p, n, &b))))
}
