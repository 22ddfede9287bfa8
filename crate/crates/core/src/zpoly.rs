//! Sparse multivariate polynomials with big-integer coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{Field, FieldScalar};

pub type Monomial = Vec<u32>;

/// A polynomial in `nvars` variables over `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl ZPoly {
    pub fn zero(nvars: usize) -> Self {
        ZPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = ZPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut mono = vec![0; nvars];
        mono[i] = 1;
        let mut p = ZPoly::zero(nvars);
        p.terms.insert(mono, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[u32]) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        if k.is_zero() {
            return ZPoly::zero(self.nvars);
        }
        ZPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = ZPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(mono, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> ZPoly {
        let mut acc = ZPoly::constant(self.nvars, BigInt::one());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<ZPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(ZPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Coefficients reduced into `[0, p)`; zero terms dropped.
    pub fn reduce_mod(&self, p: u32) -> ReducedPoly {
        let modulus = BigInt::from(p);
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let r = c.mod_floor(&modulus);
                debug_assert!(!r.is_negative());
                let r = r.to_u32().expect("residue fits");
                (r != 0).then(|| (m.clone(), r))
            })
            .collect();
        ReducedPoly {
            nvars: self.nvars,
            p,
            terms,
        }
    }
}

/// A polynomial with coefficients in `F_p`, evaluable over any `F_{p^e}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPoly {
    nvars: usize,
    p: u32,
    terms: Vec<(Monomial, u32)>,
}

impl ReducedPoly {
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn eval(&self, field: Field, values: &[FieldScalar]) -> FieldScalar {
        assert_eq!(values.len(), self.nvars, "wrong number of values");
        assert_eq!(field.p(), self.p, "characteristic mismatch");
        let mut acc = field.zero();
        for (mono, c) in &self.terms {
            let mut t = field.from_int(*c as i64);
            for (v, &k) in values.iter().zip(mono) {
                if k > 0 {
                    t *= v.pow(k as u64);
                }
                if t.is_zero() {
                    break;
                }
            }
            acc += t;
        }
        acc
    }
}
