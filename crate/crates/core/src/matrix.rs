//! Dense square matrices over `F_{p^e}`, nilpotent Jordan forms, orders and
//! commutants, plus the JSON matrix file format.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coords, Field, FieldScalar, ONE, ZERO};
use crate::linalg;

/// An `n × n` matrix whose entries all lie in one field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: Field,
    n: usize,
    data: Vec<Coords>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zero(field: Field, n: usize) -> Self {
        FpMatrix {
            field,
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = FpMatrix::zero(field, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// The matrix unit `E_{ij}` (0-based indices).
    pub fn unit(field: Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = FpMatrix::zero(field, n);
        m.data[i * n + j] = ONE;
        m
    }

    pub fn from_fn(field: Field, n: usize, mut f: impl FnMut(usize, usize) -> FieldScalar) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = f(i, j);
                assert_eq!(x.field(), field, "entry outside the matrix field");
                data.push(x.coords());
            }
        }
        FpMatrix { field, n, data }
    }

    /// Integer rows, reduced into the prime subfield.
    pub fn from_ints(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("matrix rows must form a square".into()));
        }
        Ok(FpMatrix::from_fn(field, n, |i, j| field.from_int(rows[i][j])))
    }

    pub(crate) fn from_vector(field: Field, n: usize, v: Vec<Coords>) -> Self {
        debug_assert_eq!(v.len(), n * n);
        FpMatrix { field, n, data: v }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FieldScalar {
        FieldScalar::raw(self.field, self.data[i * self.n + j])
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldScalar) {
        assert_eq!(x.field(), self.field, "entry outside the matrix field");
        self.data[i * self.n + j] = x.coords();
    }

    pub(crate) fn raw(&self, i: usize, j: usize) -> Coords {
        self.data[i * self.n + j]
    }

    /// Row-major coordinates, used as a vector in `F^{n^2}`.
    pub(crate) fn as_vector(&self) -> &[Coords] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == ZERO)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.raw(i, j) == if i == j { ONE } else { ZERO }))
    }

    pub fn same_shape(&self, other: &FpMatrix) -> Result<()> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::Mismatch(format!(
                "{}x{} over {:?} vs {}x{} over {:?}",
                self.n, self.n, self.field, other.n, other.n, other.field
            )));
        }
        Ok(())
    }

    fn assert_shape(&self, other: &FpMatrix) {
        if let Err(e) = self.same_shape(other) {
            panic!("{e}");
        }
    }

    pub fn scale(&self, s: FieldScalar) -> FpMatrix {
        assert_eq!(s.field(), self.field, "scalar outside the matrix field");
        let f = self.field;
        FpMatrix {
            field: f,
            n: self.n,
            data: self.data.iter().map(|&x| f.mul(x, s.coords())).collect(),
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        let n = self.n;
        let mut out = FpMatrix::zero(self.field, n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn trace(&self) -> FieldScalar {
        let f = self.field;
        let t = (0..self.n).fold(ZERO, |acc, i| f.add(acc, self.raw(i, i)));
        FieldScalar::raw(f, t)
    }

    /// Entrywise Frobenius `a ↦ a^p`.
    pub fn frobenius(&self) -> FpMatrix {
        let f = self.field;
        let p = f.p() as u64;
        FpMatrix {
            field: f,
            n: self.n,
            data: self.data.iter().map(|&x| f.pow(x, p)).collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.field, self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &FpMatrix) -> FpMatrix {
        &(self * other) - &(other * self)
    }

    pub fn commutes_with(&self, other: &FpMatrix) -> bool {
        self * other == other * self
    }

    fn rows(&self) -> Vec<Vec<Coords>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.field, &self.rows(), self.n)
    }

    pub fn det(&self) -> FieldScalar {
        let f = self.field;
        let n = self.n;
        let mut a = self.rows();
        let mut det = ONE;
        for col in 0..n {
            let Some(sel) = (col..n).find(|&i| a[i][col] != ZERO) else {
                return f.zero();
            };
            if sel != col {
                a.swap(sel, col);
                det = f.neg(det);
            }
            let pivot = a[col][col];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("nonzero pivot");
            for i in col + 1..n {
                if a[i][col] == ZERO {
                    continue;
                }
                let factor = f.mul(a[i][col], inv);
                let (top, bottom) = a.split_at_mut(i);
                for (x, &y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        FieldScalar::raw(f, det)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        let f = self.field;
        let n = self.n;
        let mut aug: Vec<Vec<Coords>> = (0..n)
            .map(|i| {
                let mut r = self.data[i * n..(i + 1) * n].to_vec();
                r.extend((0..n).map(|j| if i == j { ONE } else { ZERO }));
                r
            })
            .collect();
        let pivots = linalg::rref(f, &mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let data = aug.iter().flat_map(|r| r[n..].iter().copied()).collect();
        Some(FpMatrix { field: f, n, data })
    }

    /// Least `k ≥ 0` with `self^k = 0`, or `None` when not nilpotent.
    pub fn nilpotency_degree(&self) -> Option<usize> {
        let mut power = FpMatrix::identity(self.field, self.n);
        for k in 0..=self.n {
            if power.is_zero() {
                return Some(k);
            }
            power = &power * self;
        }
        None
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_degree().is_some()
    }

    pub fn is_unipotent(&self) -> bool {
        (self - &FpMatrix::identity(self.field, self.n)).is_nilpotent()
    }

    /// Serializes to the JSON matrix file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("matrix serializes")
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            p: self.field.p(),
            e: self.field.e(),
            n: self.n,
            entries: (0..self.n)
                .map(|i| (0..self.n).map(|j| EntryRepr::from_scalar(self.get(i, j))).collect())
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        FpMatrix::from_file(&file)
    }

    pub fn from_file(file: &MatrixFile) -> Result<Self> {
        let field = Field::new(file.p, file.e).map_err(|e| Error::parse("p/e", e.to_string()))?;
        let n = file.n;
        if file.entries.len() != n {
            return Err(Error::parse(
                "entries",
                format!("expected {n} rows, found {}", file.entries.len()),
            ));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in file.entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::parse(
                    format!("entries[{i}]"),
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
            for (j, entry) in row.iter().enumerate() {
                let x = entry
                    .to_scalar(field)
                    .map_err(|msg| Error::parse(format!("entries[{i}][{j}]"), msg))?;
                data.push(x.coords());
            }
        }
        Ok(FpMatrix { field, n, data })
    }
}

impl Add for &FpMatrix {
    type Output = FpMatrix;
    fn add(self, rhs: &FpMatrix) -> FpMatrix {
        self.assert_shape(rhs);
        let f = self.field;
        FpMatrix {
            field: f,
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }
}

impl Sub for &FpMatrix {
    type Output = FpMatrix;
    fn sub(self, rhs: &FpMatrix) -> FpMatrix {
        self.assert_shape(rhs);
        let f = self.field;
        FpMatrix {
            field: f,
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }
}

impl Neg for &FpMatrix {
    type Output = FpMatrix;
    fn neg(self) -> FpMatrix {
        let f = self.field;
        FpMatrix {
            field: f,
            n: self.n,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }
}

impl Mul for &FpMatrix {
    type Output = FpMatrix;
    fn mul(self, rhs: &FpMatrix) -> FpMatrix {
        self.assert_shape(rhs);
        let f = self.field;
        let n = self.n;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.data[k * n + j];
                    if b != ZERO {
                        out[i * n + j] = f.add(out[i * n + j], f.mul(a, b));
                    }
                }
            }
        }
        FpMatrix {
            field: f,
            n,
            data: out,
        }
    }
}

/// Wire form of the matrix file: `{"p","e","n","entries"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub p: u32,
    pub e: u8,
    pub n: usize,
    pub entries: Vec<Vec<EntryRepr>>,
}

/// One entry: an integer for `e = 1`, a coordinate pair for `e = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryRepr {
    Int(u64),
    Pair([u64; 2]),
}

impl EntryRepr {
    pub fn from_scalar(x: FieldScalar) -> Self {
        let c = x.coords();
        if x.field().e() == 1 {
            EntryRepr::Int(c[0] as u64)
        } else {
            EntryRepr::Pair([c[0] as u64, c[1] as u64])
        }
    }

    pub fn to_scalar(self, field: Field) -> std::result::Result<FieldScalar, String> {
        let p = field.p() as u64;
        let coords = match (self, field.e()) {
            (EntryRepr::Int(v), 1) => [v, 0],
            (EntryRepr::Pair(c), 2) => c,
            (EntryRepr::Int(_), _) => return Err("e = 2 entries must be coefficient pairs".into()),
            (EntryRepr::Pair(_), _) => return Err("e = 1 entries must be integers".into()),
        };
        if coords.iter().any(|&c| c >= p) {
            return Err(format!("entry {coords:?} is not reduced mod {p}"));
        }
        field
            .from_coords([coords[0] as u32, coords[1] as u32])
            .map_err(|e| e.to_string())
    }
}

/// A partition of `n` listing nilpotent Jordan block sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanType(Vec<usize>);

impl JordanType {
    /// Accepts block sizes in any order; stores them weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Argument("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Argument("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(JordanType(parts))
    }

    pub fn regular(n: usize) -> Self {
        JordanType(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Rank of `J^k` for the Jordan matrix of this type.
    pub fn rank_of_power(&self, k: usize) -> usize {
        self.0.iter().map(|&l| l.saturating_sub(k)).sum()
    }

    /// The transposed partition.
    pub fn conjugate(&self) -> Vec<usize> {
        let largest = self.0[0];
        (1..=largest)
            .map(|k| self.0.iter().filter(|&&l| l >= k).count())
            .collect()
    }

    /// `dim {Z : ZJ = JZ} = Σ (λ'_i)^2`.
    pub fn commutant_dim(&self) -> usize {
        self.conjugate().iter().map(|c| c * c).sum()
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Block-diagonal sum of nilpotent Jordan blocks (ones on the superdiagonal).
pub fn jordan_nilpotent(t: &JordanType, field: Field) -> FpMatrix {
    let n = t.n();
    let mut m = FpMatrix::zero(field, n);
    let mut start = 0;
    for &size in t.parts() {
        for i in start..start + size - 1 {
            m.data[i * n + i + 1] = ONE;
        }
        start += size;
    }
    m
}

/// Jordan type of a nilpotent matrix, read off from ranks of its powers.
pub fn jordan_type(x: &FpMatrix) -> Result<JordanType> {
    let degree = x
        .nilpotency_degree()
        .ok_or_else(|| Error::Domain("matrix is not nilpotent".into()))?;
    let n = x.n();
    if n == 0 {
        return Err(Error::Argument("empty matrix".into()));
    }
    let mut ranks = vec![n];
    let mut power = FpMatrix::identity(x.field(), n);
    for _ in 0..degree.max(1) {
        power = &power * x;
        ranks.push(power.rank());
    }
    ranks.push(0);
    // blocks of size ≥ k = rank(X^{k-1}) - rank(X^k)
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 1..at_least.len() + 1 {
        let ge_k = at_least[k - 1];
        let ge_next = at_least.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k, ge_k - ge_next));
    }
    JordanType::new(parts)
}

/// Least `m` with `X^{p^m} = 0`; zero exactly for the zero matrix.
pub fn nilpotent_order(x: &FpMatrix) -> Result<u32> {
    if !x.is_nilpotent() {
        return Err(Error::Domain("nilpotent_order needs a nilpotent matrix".into()));
    }
    let p = x.field().p() as u64;
    let mut m = 0;
    let mut power = x.clone();
    while !power.is_zero() {
        power = power.pow(p);
        m += 1;
    }
    Ok(m)
}

/// Multiplicative order of a unipotent matrix (a power of `p`).
pub fn unipotent_order(u: &FpMatrix) -> Result<u64> {
    if !u.is_unipotent() {
        return Err(Error::Domain("unipotent_order needs a unipotent matrix".into()));
    }
    let p = u.field().p() as u64;
    let mut order = 1u64;
    let mut power = u.clone();
    while !power.is_identity() {
        power = power.pow(p);
        order *= p;
    }
    Ok(order)
}

/// The commutant `{Z : ZA = AZ}` as a linear subspace of `gl_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerSpace {
    pub dimension: usize,
    pub basis: Vec<FpMatrix>,
}

impl CentralizerSpace {
    fn rows(&self) -> Vec<Vec<Coords>> {
        self.basis.iter().map(|b| b.as_vector().to_vec()).collect()
    }

    /// Exact membership of `z` in the span of the basis.
    pub fn contains(&self, z: &FpMatrix) -> bool {
        let Some(first) = self.basis.first() else {
            return z.is_zero();
        };
        let ncols = first.n() * first.n();
        let mut rows = self.rows();
        rows.push(z.as_vector().to_vec());
        linalg::rank(first.field(), &rows, ncols) == self.dimension
    }

    /// Subspace equality by mutual containment.
    pub fn same_space(&self, other: &CentralizerSpace) -> bool {
        self.dimension == other.dimension
            && self.basis.iter().all(|b| other.contains(b))
            && other.basis.iter().all(|b| self.contains(b))
    }
}

/// Null space of `Z ↦ ZA − AZ` on the `n^2` coordinates of `Z`.
pub fn centralizer_space(a: &FpMatrix) -> CentralizerSpace {
    let f = a.field();
    let n = a.n();
    let nn = n * n;
    let mut rows = Vec::with_capacity(nn);
    for i in 0..n {
        for j in 0..n {
            // coefficient of Z_{xy} in (ZA − AZ)_{ij}: [x=i] A_{yj} − [y=j] A_{ix}
            let mut row = vec![ZERO; nn];
            for y in 0..n {
                row[i * n + y] = f.add(row[i * n + y], a.raw(y, j));
            }
            for x in 0..n {
                row[x * n + j] = f.sub(row[x * n + j], a.raw(i, x));
            }
            rows.push(row);
        }
    }
    let basis: Vec<FpMatrix> = linalg::null_space(f, &rows, nn)
        .into_iter()
        .map(|v| FpMatrix::from_vector(f, n, v))
        .collect();
    CentralizerSpace {
        dimension: basis.len(),
        basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn jt(parts: &[usize]) -> JordanType {
        JordanType::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn jordan_examples() {
        let j3 = jordan_nilpotent(&jt(&[3]), f(5));
        for i in 0..3 {
            for j in 0..3 {
                let expect = (i, j) == (0, 1) || (i, j) == (1, 2);
                assert_eq!(j3.get(i, j).is_one(), expect);
                assert_eq!(j3.get(i, j).is_zero(), !expect);
            }
        }
        assert!(jordan_nilpotent(&jt(&[1, 1]), f(3)).is_zero());
        let j21 = jordan_nilpotent(&jt(&[2, 1]), f(2));
        assert_eq!(j21.nilpotency_degree(), Some(2));
        assert!(JordanType::new(vec![]).is_err());
        assert!(JordanType::new(vec![2, 0]).is_err());
    }

    #[test]
    fn nilpotent_order_examples() {
        assert_eq!(nilpotent_order(&jordan_nilpotent(&jt(&[3]), f(2))).unwrap(), 2);
        assert_eq!(nilpotent_order(&FpMatrix::zero(f(7), 4)).unwrap(), 0);
        assert_eq!(nilpotent_order(&jordan_nilpotent(&jt(&[5]), f(2))).unwrap(), 3);
        assert!(matches!(
            nilpotent_order(&FpMatrix::identity(f(3), 2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn unipotent_order_of_unit_upper() {
        let u = &FpMatrix::identity(f(2), 3) + &jordan_nilpotent(&jt(&[3]), f(2));
        assert_eq!(unipotent_order(&u).unwrap(), 4);
        assert!(unipotent_order(&FpMatrix::zero(f(2), 2)).is_err());
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer_space(&FpMatrix::zero(f(3), 3)).dimension, 9);
        for n in 1..6 {
            let j = jordan_nilpotent(&JordanType::regular(n), f(3));
            assert_eq!(centralizer_space(&j).dimension, n);
        }
        let j21 = jordan_nilpotent(&jt(&[2, 1]), f(5));
        let c = centralizer_space(&j21);
        assert_eq!(c.dimension, 5);
        assert!(c.basis.iter().all(|z| z.commutes_with(&j21)));
    }

    #[test]
    fn determinant_and_inverse() {
        let fld = f(3);
        let d = FpMatrix::from_ints(fld, &[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(d.det(), fld.from_int(2));
        let a = FpMatrix::from_ints(fld, &[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(a.det() * inv.det(), fld.one());
        let singular = FpMatrix::from_ints(fld, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert!(singular.inverse().is_none());
        assert!(singular.det().is_zero());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let fld = Field::new(3, 2).unwrap();
        let mut m = FpMatrix::identity(fld, 2);
        m.set(0, 1, fld.from_coords([2, 1]).unwrap());
        let text = m.to_json();
        assert_eq!(
            text,
            r#"{"p":3,"e":2,"n":2,"entries":[[[1,0],[2,1]],[[0,0],[1,0]]]}"#
        );
        assert_eq!(FpMatrix::from_json(&text).unwrap(), m);
        let m1 = jordan_nilpotent(&jt(&[2]), f(5));
        assert_eq!(m1.to_json(), r#"{"p":5,"e":1,"n":2,"entries":[[0,1],[0,0]]}"#);

        let bad = r#"{"p":3,"e":1,"n":2,"entries":[[0,1],[0,3]]}"#;
        match FpMatrix::from_json(bad) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "entries[1][1]"),
            other => panic!("unexpected {other:?}"),
        }
        let short = r#"{"p":3,"e":1,"n":2,"entries":[[0,1]]}"#;
        assert!(matches!(FpMatrix::from_json(short), Err(Error::Parse { .. })));
        let garbage = "{\"p\":3,";
        match FpMatrix::from_json(garbage) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 1")),
            other => panic!("unexpected {other:?}"),
        }
        let pair_in_prime = r#"{"p":3,"e":1,"n":1,"entries":[[[1,0]]]}"#;
        assert!(FpMatrix::from_json(pair_in_prime).is_err());
    }

    fn partition_strategy() -> impl Strategy<Value = JordanType> {
        prop::collection::vec(1usize..5, 1..4).prop_map(|v| JordanType::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn jordan_power_ranks(t in partition_strategy(), p in prop::sample::select(vec![2u32, 3, 5])) {
            let j = jordan_nilpotent(&t, f(p));
            let mut power = FpMatrix::identity(f(p), t.n());
            for k in 0..=t.n() {
                prop_assert_eq!(power.rank(), t.rank_of_power(k));
                power = &power * &j;
            }
            prop_assert_eq!(jordan_type(&j).unwrap(), t.clone());
            prop_assert_eq!(centralizer_space(&j).dimension, t.commutant_dim());
        }
    }
}
