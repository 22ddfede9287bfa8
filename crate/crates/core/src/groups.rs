//! Classical groups `GL_n, SL_n, SO_n, Sp_n` inside `GL_n`, their Lie
//! algebras, and seeded sampling of nilpotent elements and group elements.

use std::fmt;
use std::str::FromStr;

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coords, Field, ZERO};
use crate::linalg;
use crate::matrix::{jordan_nilpotent, jordan_type, FpMatrix, JordanType};
use crate::rng;
use crate::springer::ah_exp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    #[serde(rename = "GL")]
    Gl,
    #[serde(rename = "SL")]
    Sl,
    #[serde(rename = "SO")]
    So,
    #[serde(rename = "Sp")]
    Sp,
}

impl GroupKind {
    pub const ALL: [GroupKind; 4] = [GroupKind::Gl, GroupKind::Sl, GroupKind::So, GroupKind::Sp];

    /// Whether `p` is accepted for this kind (orthogonal and symplectic need `p ≠ 2`).
    pub fn admits_prime(self, p: u32) -> bool {
        match self {
            GroupKind::Gl | GroupKind::Sl => true,
            GroupKind::So | GroupKind::Sp => p != 2,
        }
    }

    pub fn admits_dimension(self, n: usize) -> bool {
        match self {
            GroupKind::Sp => n >= 2 && n.is_multiple_of(2),
            _ => n >= 1,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Gl => "GL",
            GroupKind::Sl => "SL",
            GroupKind::So => "SO",
            GroupKind::Sp => "Sp",
        })
    }
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "GL" => Ok(GroupKind::Gl),
            "SL" => Ok(GroupKind::Sl),
            "SO" => Ok(GroupKind::So),
            "SP" => Ok(GroupKind::Sp),
            other => Err(Error::Usage(format!("unknown group kind {other:?}"))),
        }
    }
}

/// A classical group of `n × n` matrices over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    n: usize,
    field: Field,
    form: Option<FpMatrix>,
    default_form: bool,
}

/// Antidiagonal form: `J_{i, n+1−i} = 1`, with the lower half negated for `Sp`.
pub fn default_form(kind: GroupKind, n: usize, field: Field) -> Option<FpMatrix> {
    match kind {
        GroupKind::Gl | GroupKind::Sl => None,
        GroupKind::So | GroupKind::Sp => {
            let mut j = FpMatrix::zero(field, n);
            for i in 0..n {
                let negate = kind == GroupKind::Sp && i >= n / 2;
                j.set(i, n - 1 - i, field.from_int(if negate { -1 } else { 1 }));
            }
            Some(j)
        }
    }
}

impl GroupSpec {
    /// The group with its default form.
    pub fn new(kind: GroupKind, n: usize, field: Field) -> Result<Self> {
        Self::check(kind, n, field)?;
        Ok(GroupSpec {
            kind,
            n,
            field,
            form: default_form(kind, n, field),
            default_form: true,
        })
    }

    /// An orthogonal or symplectic group for an explicit invertible form.
    pub fn with_form(kind: GroupKind, form: FpMatrix) -> Result<Self> {
        let n = form.n();
        let field = form.field();
        Self::check(kind, n, field)?;
        let t = form.transpose();
        match kind {
            GroupKind::Gl | GroupKind::Sl => {
                return Err(Error::Argument(format!("{kind} carries no form")))
            }
            GroupKind::So if t != form => {
                return Err(Error::Argument("SO needs a symmetric form".into()))
            }
            GroupKind::Sp if t != -&form => {
                return Err(Error::Argument("Sp needs a skew-symmetric form".into()))
            }
            _ => {}
        }
        if form.det().is_zero() {
            return Err(Error::Argument("the form must be invertible".into()));
        }
        let default_form = default_form(kind, n, field).as_ref() == Some(&form);
        Ok(GroupSpec {
            kind,
            n,
            field,
            form: Some(form),
            default_form,
        })
    }

    fn check(kind: GroupKind, n: usize, field: Field) -> Result<()> {
        if !kind.admits_prime(field.p()) {
            return Err(Error::Argument(format!(
                "{kind} is excluded in characteristic {}",
                field.p()
            )));
        }
        if !kind.admits_dimension(n) {
            return Err(Error::Argument(format!("{kind}_{n} is not a valid dimension")));
        }
        Ok(())
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn form(&self) -> Option<&FpMatrix> {
        self.form.as_ref()
    }

    pub fn has_default_form(&self) -> bool {
        self.default_form
    }

    pub fn label(&self) -> String {
        format!("{}_{}", self.kind, self.n)
    }

    fn check_matrix(&self, g: &FpMatrix) -> Result<()> {
        if g.n() != self.n || g.field() != self.field {
            return Err(Error::Mismatch(format!(
                "{} over {:?} vs a {}x{} matrix over {:?}",
                self.label(),
                self.field,
                g.n(),
                g.n(),
                g.field()
            )));
        }
        Ok(())
    }

    fn form_or_err(&self) -> Result<&FpMatrix> {
        self.form
            .as_ref()
            .ok_or_else(|| Error::Argument(format!("{} is missing its form", self.label())))
    }

    /// Whether the Jordan type occurs among nilpotents of the Lie algebra:
    /// even parts with even multiplicity for `SO`, odd parts for `Sp`.
    pub fn realizes(&self, t: &JordanType) -> bool {
        if t.n() != self.n {
            return false;
        }
        let parity = match self.kind {
            GroupKind::Gl | GroupKind::Sl => return true,
            GroupKind::So => 0,
            GroupKind::Sp => 1,
        };
        let parts = t.parts();
        parts
            .iter()
            .filter(|&&l| l % 2 == parity)
            .all(|&l| parts.iter().filter(|&&k| k == l).count() % 2 == 0)
    }
}

/// Group membership: `det ≠ 0`, `det = 1`, or `gᵀJg = J` (with `det = 1` for `SO`).
pub fn in_group(spec: &GroupSpec, g: &FpMatrix) -> Result<bool> {
    spec.check_matrix(g)?;
    Ok(match spec.kind {
        GroupKind::Gl => !g.det().is_zero(),
        GroupKind::Sl => g.det().is_one(),
        GroupKind::So => {
            let j = spec.form_or_err()?;
            &(&g.transpose() * j) * g == *j && g.det().is_one()
        }
        GroupKind::Sp => {
            let j = spec.form_or_err()?;
            &(&g.transpose() * j) * g == *j
        }
    })
}

/// Lie algebra membership: `tr X = 0` for `sl`, `XᵀJ + JX = 0` for `so`/`sp`.
pub fn in_lie_algebra(spec: &GroupSpec, x: &FpMatrix) -> Result<bool> {
    spec.check_matrix(x)?;
    Ok(match spec.kind {
        GroupKind::Gl => true,
        GroupKind::Sl => x.trace().is_zero(),
        GroupKind::So | GroupKind::Sp => {
            let j = spec.form_or_err()?;
            (&(&x.transpose() * j) + &(j * x)).is_zero()
        }
    })
}

/// Basis of `Lie(G) ∩ {X : X_{ij} = 0 unless (i, j) ∈ support}`.
fn lie_subspace_basis(spec: &GroupSpec, support: &[(usize, usize)]) -> Vec<FpMatrix> {
    let field = spec.field;
    let n = spec.n;
    let unit = |k: usize| {
        let (i, j) = support[k];
        FpMatrix::unit(field, n, i, j)
    };
    let images: Vec<Vec<Coords>> = (0..support.len())
        .map(|k| lie_defect(spec, &unit(k)))
        .collect();
    if images.first().is_none_or(|v| v.is_empty()) {
        return (0..support.len()).map(unit).collect();
    }
    // rows = equations, columns = support coordinates
    let neq = images[0].len();
    let rows: Vec<Vec<Coords>> = (0..neq)
        .map(|r| images.iter().map(|img| img[r]).collect())
        .collect();
    linalg::null_space(field, &rows, support.len())
        .into_iter()
        .map(|v| {
            let mut m = FpMatrix::zero(field, n);
            for (k, c) in v.into_iter().enumerate() {
                if c != ZERO {
                    let (i, j) = support[k];
                    m.set(i, j, field.from_coords(c).expect("reduced"));
                }
            }
            m
        })
        .collect()
}

/// The linear map whose kernel is `Lie(G)` (empty for `gl`).
fn lie_defect(spec: &GroupSpec, x: &FpMatrix) -> Vec<Coords> {
    match spec.kind {
        GroupKind::Gl => Vec::new(),
        GroupKind::Sl => vec![x.trace().coords()],
        GroupKind::So | GroupKind::Sp => {
            let j = spec.form.as_ref().expect("orthogonal and symplectic groups carry a form");
            let d = &(&x.transpose() * j) + &(j * x);
            (0..spec.n)
                .flat_map(|a| (0..spec.n).map(move |b| (a, b)))
                .map(|(a, b)| d.get(a, b).coords())
                .collect()
        }
    }
}

/// Samples nilpotent elements of `Lie(G)` and elements of `G`.
///
/// Nilpotents are drawn from `Lie(G) ∩ {strictly upper triangular}` (a
/// nilpotent subalgebra for the default forms) and conjugated by a group
/// element `t · e_p(U₁) · e_p(L) · e_p(U₂)` with `t` a random torus element and
/// `U_i`, `L` random upper/lower nilpotents of `Lie(G)`.
#[derive(Clone, Debug)]
pub struct NilpotentSampler {
    spec: GroupSpec,
    upper: Vec<FpMatrix>,
    lower: Vec<FpMatrix>,
}

impl NilpotentSampler {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        if !spec.has_default_form() {
            return Err(Error::Argument(
                "sampling needs the default antidiagonal form".into(),
            ));
        }
        let n = spec.n;
        let upper_support: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let lower_support: Vec<(usize, usize)> = upper_support.iter().map(|&(i, j)| (j, i)).collect();
        let upper = lie_subspace_basis(&spec, &upper_support);
        let lower = lie_subspace_basis(&spec, &lower_support);
        Ok(NilpotentSampler { spec, upper, lower })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Basis of the upper nilpotent subalgebra.
    pub fn upper_basis(&self) -> &[FpMatrix] {
        &self.upper
    }

    fn combination<R: RngCore + ?Sized>(&self, basis: &[FpMatrix], keep: Option<u64>, rng: &mut R) -> FpMatrix {
        let field = self.spec.field;
        let mut x = FpMatrix::zero(field, self.spec.n);
        for b in basis {
            // keep each generator with probability keep/8 when sparse
            if let Some(k) = keep {
                if rng.next_u64() % 8 >= k {
                    continue;
                }
            }
            let c = field.random(rng);
            if !c.is_zero() {
                x = &x + &b.scale(c);
            }
        }
        x
    }

    /// Dense random element of the upper nilpotent subalgebra.
    pub fn sample_upper<R: RngCore + ?Sized>(&self, rng: &mut R) -> FpMatrix {
        self.combination(&self.upper, None, rng)
    }

    /// Upper nilpotent with a random sparsity level, covering smaller orbits.
    pub fn sample_upper_sparse<R: RngCore + ?Sized>(&self, rng: &mut R) -> FpMatrix {
        let keep = 1 + rng.next_u64() % 7;
        self.combination(&self.upper, Some(keep), rng)
    }

    fn torus_element<R: RngCore + ?Sized>(&self, rng: &mut R) -> FpMatrix {
        let field = self.spec.field;
        let n = self.spec.n;
        let mut t = FpMatrix::identity(field, n);
        match self.spec.kind {
            GroupKind::Gl => {
                for i in 0..n {
                    t.set(i, i, field.random_nonzero(rng));
                }
            }
            GroupKind::Sl => {
                let mut prod = field.one();
                for i in 0..n - 1 {
                    let x = field.random_nonzero(rng);
                    prod *= x;
                    t.set(i, i, x);
                }
                t.set(n - 1, n - 1, prod.inv().expect("nonzero"));
            }
            GroupKind::So | GroupKind::Sp => {
                for i in 0..n / 2 {
                    let x = field.random_nonzero(rng);
                    t.set(i, i, x);
                    t.set(n - 1 - i, n - 1 - i, x.inv().expect("nonzero"));
                }
            }
        }
        t
    }

    /// A random element of `G`.
    pub fn group_element<R: RngCore + ?Sized>(&self, rng: &mut R) -> FpMatrix {
        let t = self.torus_element(rng);
        let u1 = ah_exp(&self.sample_upper(rng)).expect("upper elements are nilpotent");
        let l = ah_exp(&self.combination(&self.lower, None, rng)).expect("lower elements are nilpotent");
        let u2 = ah_exp(&self.sample_upper(rng)).expect("upper elements are nilpotent");
        &(&(&t * &u1) * &l) * &u2
    }

    /// `g X g⁻¹` for a fresh group element `g`.
    pub fn conjugate<R: RngCore + ?Sized>(&self, x: &FpMatrix, rng: &mut R) -> FpMatrix {
        let g = self.group_element(rng);
        let g_inv = g.inverse().expect("group elements are invertible");
        &(&g * x) * &g_inv
    }

    /// A conjugated nilpotent of random density.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> FpMatrix {
        let x = if rng.next_u64().is_multiple_of(2) {
            self.sample_upper(rng)
        } else {
            self.sample_upper_sparse(rng)
        };
        self.conjugate(&x, rng)
    }

    /// A conjugated nilpotent of the requested Jordan type.
    pub fn sample_of_type<R: RngCore + ?Sized>(&self, t: &JordanType, rng: &mut R) -> Result<FpMatrix> {
        if !self.spec.realizes(t) {
            return Err(Error::Domain(format!(
                "no nilpotent of type {t} in Lie({})",
                self.spec.label()
            )));
        }
        let x = match self.spec.kind {
            GroupKind::Gl | GroupKind::Sl => jordan_nilpotent(t, self.spec.field),
            GroupKind::So | GroupKind::Sp => {
                const ATTEMPTS: usize = 20_000;
                let found = (0..ATTEMPTS).find_map(|_| {
                    let x = self.sample_upper_sparse(rng);
                    (jordan_type(&x).ok().as_ref() == Some(t)).then_some(x)
                });
                found.ok_or_else(|| {
                    Error::Domain(format!(
                        "no nilpotent of type {t} found in Lie({}) after {ATTEMPTS} draws",
                        self.spec.label()
                    ))
                })?
            }
        };
        Ok(self.conjugate(&x, rng))
    }
}

/// A seeded nilpotent element of `Lie(G)`, of the given Jordan type if any.
pub fn random_nilpotent(spec: &GroupSpec, t: Option<&JordanType>, seed: u64) -> Result<FpMatrix> {
    let sampler = NilpotentSampler::new(spec.clone())?;
    let mut rng = rng::seeded(seed);
    match t {
        Some(t) => sampler.sample_of_type(t, &mut rng),
        None => Ok(sampler.sample(&mut rng)),
    }
}
