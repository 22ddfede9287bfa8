//! Prime fields `F_p` and their quadratic extensions `F_{p^2}`.
//!
//! A [`Field`] is a small `Copy` context carrying the characteristic, the
//! extension degree and (for `e = 2`) the modulus polynomial. Elements are
//! stored as coordinate pairs over the basis `1, x`; for `e = 1` the second
//! coordinate is always zero.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand_core::RngCore;

use crate::error::{Error, Result};

/// Raw coordinates of a field element over the basis `1, x`.
pub type Coords = [u32; 2];

pub(crate) const ZERO: Coords = [0, 0];
pub(crate) const ONE: Coords = [1, 0];

/// Trial-division primality test; the fields in scope are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The field `F_{p^e}` for `e ∈ {1, 2}`.
///
/// For `e = 2` the modulus is the monic quadratic `x^2 + m1*x + m0` that is
/// lowest in lexicographic order of `(m1, m0)` among irreducible ones.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
    e: u8,
    /// `[m0, m1]` of the modulus `x^2 + m1*x + m0`; unused when `e = 1`.
    modulus: Coords,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(
                f,
                "F_{}^2[x^2+{}x+{}]",
                self.p, self.modulus[1], self.modulus[0]
            )
        }
    }
}

impl Field {
    pub fn new(p: u32, e: u8) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::Argument(format!("{p} is not prime")));
        }
        match e {
            1 => Ok(Field {
                p,
                e,
                modulus: ZERO,
            }),
            2 => Ok(Field {
                p,
                e,
                modulus: lowest_irreducible_quadratic(p),
            }),
            _ => Err(Error::Unsupported(format!(
                "extension degree {e}; only 1 and 2 are supported"
            ))),
        }
    }

    /// Shorthand for `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Field::new(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u8 {
        self.e
    }

    /// `[m0, m1]` of the modulus `x^2 + m1*x + m0` (zero for prime fields).
    pub fn modulus(&self) -> Coords {
        self.modulus
    }

    /// Number of elements `p^e`.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.e as u32)
    }

    /// The prime subfield of this field.
    pub fn base(&self) -> Field {
        Field {
            p: self.p,
            e: 1,
            modulus: ZERO,
        }
    }

    pub fn zero(&self) -> FieldScalar {
        FieldScalar::raw(*self, ZERO)
    }

    pub fn one(&self) -> FieldScalar {
        FieldScalar::raw(*self, ONE)
    }

    /// Image of an integer under `Z → F_p ⊆ F_{p^e}`.
    pub fn from_int(&self, n: i64) -> FieldScalar {
        FieldScalar::raw(*self, [self.reduce_int(n), 0])
    }

    /// Builds an element from reduced coordinates.
    pub fn from_coords(&self, c: Coords) -> Result<FieldScalar> {
        let p = self.p;
        if c[0] >= p || c[1] >= p || (self.e == 1 && c[1] != 0) {
            return Err(Error::Argument(format!(
                "coordinates {c:?} are not a reduced element of {self:?}"
            )));
        }
        Ok(FieldScalar::raw(*self, c))
    }

    /// All field elements, in coordinate order `(c0, c1)` with `c0` fastest.
    pub fn elements(&self) -> impl Iterator<Item = FieldScalar> + '_ {
        let field = *self;
        (0..self.order()).map(move |k| {
            let c0 = (k % field.p as u64) as u32;
            let c1 = (k / field.p as u64) as u32;
            FieldScalar::raw(field, [c0, c1])
        })
    }

    /// Uniform-ish sample: each coordinate is `next_u64() mod p`.
    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> FieldScalar {
        FieldScalar::raw(*self, self.random_coords(rng))
    }

    /// A sample from the multiplicative group.
    pub fn random_nonzero<R: RngCore + ?Sized>(&self, rng: &mut R) -> FieldScalar {
        loop {
            let c = self.random_coords(rng);
            if c != ZERO {
                return FieldScalar::raw(*self, c);
            }
        }
    }

    pub(crate) fn random_coords<R: RngCore + ?Sized>(&self, rng: &mut R) -> Coords {
        let p = self.p as u64;
        let c0 = (rng.next_u64() % p) as u32;
        let c1 = if self.e == 2 {
            (rng.next_u64() % p) as u32
        } else {
            0
        };
        [c0, c1]
    }

    pub(crate) fn reduce_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub(crate) fn add(&self, a: Coords, b: Coords) -> Coords {
        let p = self.p as u64;
        [
            ((a[0] as u64 + b[0] as u64) % p) as u32,
            ((a[1] as u64 + b[1] as u64) % p) as u32,
        ]
    }

    #[inline]
    pub(crate) fn neg(&self, a: Coords) -> Coords {
        let p = self.p;
        [(p - a[0]) % p, (p - a[1]) % p]
    }

    #[inline]
    pub(crate) fn sub(&self, a: Coords, b: Coords) -> Coords {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: Coords, b: Coords) -> Coords {
        let p = self.p as u64;
        if self.e == 1 {
            return [((a[0] as u64 * b[0] as u64) % p) as u32, 0];
        }
        let (a0, a1, b0, b1) = (a[0] as u64, a[1] as u64, b[0] as u64, b[1] as u64);
        let (m0, m1) = (self.modulus[0] as u64, self.modulus[1] as u64);
        // x^2 = -m1*x - m0
        let hi = a1 * b1 % p;
        let c0 = (a0 * b0 % p + (p - m0) * hi % p) % p;
        let c1 = ((a0 * b1 + a1 * b0) % p + (p - m1) * hi % p) % p;
        [c0 as u32, c1 as u32]
    }

    pub(crate) fn pow(&self, a: Coords, mut k: u64) -> Coords {
        let mut base = a;
        let mut acc = ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub(crate) fn inv(&self, a: Coords) -> Option<Coords> {
        if a == ZERO {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    /// Parses an entry: `"c"` (an integer, reduced mod p) or `"c0:c1"` for
    /// `e = 2` coordinates.
    pub fn parse_scalar(&self, s: &str) -> Result<FieldScalar> {
        let s = s.trim();
        let parse = |t: &str| -> Result<i64> {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::parse(format!("{s:?}"), "expected an integer"))
        };
        match s.split_once(':') {
            None => Ok(self.from_int(parse(s)?)),
            Some((a, b)) => {
                if self.e != 2 {
                    return Err(Error::parse(
                        format!("{s:?}"),
                        "coordinate pairs need an extension field (e = 2)",
                    ));
                }
                Ok(FieldScalar::raw(
                    *self,
                    [self.reduce_int(parse(a)?), self.reduce_int(parse(b)?)],
                ))
            }
        }
    }
}

fn lowest_irreducible_quadratic(p: u32) -> Coords {
    let p64 = p as u64;
    for m1 in 0..p64 {
        for m0 in 0..p64 {
            let has_root = (0..p64).any(|x| (x * x + m1 * x + m0) % p64 == 0);
            if !has_root {
                return [m0 as u32, m1 as u32];
            }
        }
    }
    unreachable!("every prime field has an irreducible quadratic")
}

/// An element of `F_{p^e}` together with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    field: Field,
    c: Coords,
}

impl FieldScalar {
    #[inline]
    pub(crate) fn raw(field: Field, c: Coords) -> Self {
        FieldScalar { field, c }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coords(&self) -> Coords {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c == ZERO
    }

    pub fn is_one(&self) -> bool {
        self.c == ONE
    }

    pub fn inv(&self) -> Option<FieldScalar> {
        self.field.inv(self.c).map(|c| FieldScalar::raw(self.field, c))
    }

    pub fn pow(&self, k: u64) -> FieldScalar {
        FieldScalar::raw(self.field, self.field.pow(self.c, k))
    }

    /// The Frobenius `a ↦ a^p`.
    pub fn frobenius(&self) -> FieldScalar {
        self.pow(self.field.p as u64)
    }

    /// Moves an element of the prime subfield into `target` (same `p`).
    pub fn embed(&self, target: Field) -> Result<FieldScalar> {
        if self.field == target {
            return Ok(*self);
        }
        if self.field.p != target.p || self.c[1] != 0 {
            return Err(Error::Mismatch(format!(
                "cannot embed {self} from {:?} into {target:?}",
                self.field
            )));
        }
        Ok(FieldScalar::raw(target, self.c))
    }

    fn check(&self, other: &FieldScalar) {
        assert_eq!(self.field, other.field, "field mismatch");
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.e == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "{}:{}", self.c[0], self.c[1])
        }
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: FieldScalar) -> FieldScalar {
        self.check(&rhs);
        FieldScalar::raw(self.field, self.field.add(self.c, rhs.c))
    }
}

impl Sub for FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: FieldScalar) -> FieldScalar {
        self.check(&rhs);
        FieldScalar::raw(self.field, self.field.sub(self.c, rhs.c))
    }
}

impl Mul for FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: FieldScalar) -> FieldScalar {
        self.check(&rhs);
        FieldScalar::raw(self.field, self.field.mul(self.c, rhs.c))
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar::raw(self.field, self.field.neg(self.c))
    }
}

impl AddAssign for FieldScalar {
    fn add_assign(&mut self, rhs: FieldScalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldScalar {
    fn sub_assign(&mut self, rhs: FieldScalar) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldScalar {
    fn mul_assign(&mut self, rhs: FieldScalar) {
        *self = *self * rhs;
    }
}
