//! Exponential-type maps from nilpotent to unipotent matrices.
//!
//! * [`truncated_exp`] / [`truncated_log`]: the degree `< p` exponential and
//!   logarithm on `[p]`-nilpotent matrices.
//! * [`phi_seq`]: `1 + Σ a_i Y^i` for an arbitrary coefficient sequence.
//! * [`ah_exp`] / [`ah_log`]: the reduced Artin-Hasse exponential `e_p(X)`
//!   and its inverse, defined on every nilpotent matrix.
//! * [`witt_embed`]: `W_m → GL_n`, `(a_i) ↦ Π e_p(a_i X^{p^i})`.
//! * [`bch`] / [`bch_dynkin`]: two independent Baker-Campbell-Hausdorff
//!   products, via `log(exp·exp)` and via Dynkin's commutator expansion.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};
use crate::matrix::{nilpotent_order, FpMatrix};
use crate::series::{ah_coeffs_cached, ah_log_coeffs_cached, reduce_rational, Rational};
use crate::witt::WittVector;

/// Coefficients `a_1, a_2, ...` of `φ_a(Y) = 1 + Σ a_i Y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSequence {
    field: Field,
    a: Vec<FieldScalar>,
}

impl CoefficientSequence {
    /// `a[0]` is `a_1`.
    pub fn new(field: Field, a: Vec<FieldScalar>) -> Result<Self> {
        if a.iter().any(|x| x.field() != field) {
            return Err(Error::Mismatch("coefficient outside the sequence field".into()));
        }
        Ok(CoefficientSequence { field, a })
    }

    /// `a_i = c_i`, the reduced Artin-Hasse coefficients, for `1 ≤ i < n`.
    pub fn artin_hasse(field: Field, n: usize) -> Result<Self> {
        let c = ah_coeffs_cached(field.p(), n)?;
        let a = (1..n.max(1))
            .map(|i| c.coeff(i).embed(field))
            .collect::<Result<Vec<_>>>()?;
        CoefficientSequence::new(field, a)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldScalar] {
        &self.a
    }

    /// `a_1`, the scalar by which the tangent map acts.
    pub fn tangent_scalar(&self) -> FieldScalar {
        self.a.first().copied().unwrap_or_else(|| self.field.zero())
    }
}

/// `Σ_{i < len} coeffs[i] X^i` by Horner's rule.
fn eval_poly(coeffs: &[FieldScalar], x: &FpMatrix) -> FpMatrix {
    let n = x.n();
    let field = x.field();
    let mut acc = FpMatrix::zero(field, n);
    for &c in coeffs.iter().rev() {
        acc = &acc * x;
        if !c.is_zero() {
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
    }
    acc
}

fn inverse_factorials(field: Field, count: usize) -> Vec<FieldScalar> {
    let mut out = Vec::with_capacity(count);
    let mut fact = field.one();
    for i in 0..count {
        if i > 0 {
            fact *= field.from_int(i as i64);
        }
        out.push(fact.inv().expect("i! is a unit for i < p"));
    }
    out
}

fn require_p_nilpotent(x: &FpMatrix, what: &str) -> Result<()> {
    if x.pow(x.field().p() as u64).is_zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what}: X^p ≠ 0")))
    }
}

/// `Σ_{i<p} X^i / i!` for `X^p = 0`.
pub fn truncated_exp(x: &FpMatrix) -> Result<FpMatrix> {
    require_p_nilpotent(x, "truncated_exp")?;
    let field = x.field();
    Ok(eval_poly(&inverse_factorials(field, field.p() as usize), x))
}

/// `Σ_{1≤i<p} (−1)^{i+1} (u−1)^i / i` for `(u−1)^p = 0`.
pub fn truncated_log(u: &FpMatrix) -> Result<FpMatrix> {
    let field = u.field();
    let nil = u - &FpMatrix::identity(field, u.n());
    require_p_nilpotent(&nil, "truncated_log")?;
    let p = field.p() as i64;
    let mut coeffs = vec![field.zero()];
    for i in 1..p {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        coeffs.push(field.from_int(sign) * field.from_int(i).inv().expect("i < p"));
    }
    Ok(eval_poly(&coeffs, &nil))
}

/// `φ_a(Y) = 1 + Σ_{i≥1} a_i Y^i` for nilpotent `Y` and `a_1 ≠ 0`.
pub fn phi_seq(a: &CoefficientSequence, y: &FpMatrix) -> Result<FpMatrix> {
    if a.field != y.field() {
        return Err(Error::Mismatch("sequence and matrix fields differ".into()));
    }
    if a.tangent_scalar().is_zero() {
        return Err(Error::Argument("φ_a needs a_1 ≠ 0".into()));
    }
    let degree = y
        .nilpotency_degree()
        .ok_or_else(|| Error::Domain("φ_a needs a nilpotent matrix".into()))?;
    let mut coeffs = vec![y.field().one()];
    coeffs.extend(a.a.iter().copied().take(degree.saturating_sub(1)));
    Ok(eval_poly(&coeffs, y))
}

/// `e_p(X) = Σ c_i X^i`, truncated at the nilpotency degree of `X`.
pub fn ah_exp(x: &FpMatrix) -> Result<FpMatrix> {
    let degree = x
        .nilpotency_degree()
        .ok_or_else(|| Error::Domain("ah_exp needs a nilpotent matrix".into()))?;
    let field = x.field();
    let c = ah_coeffs_cached(field.p(), degree)?;
    let coeffs = c.coeffs()[..degree.max(1)]
        .iter()
        .map(|ci| ci.embed(field))
        .collect::<Result<Vec<_>>>()?;
    Ok(eval_poly(&coeffs, x))
}

/// The nilpotent `X` with `e_p(X) = u`, from the compositional inverse of
/// `e_p(t) − 1` evaluated at `u − 1`.
pub fn ah_log(u: &FpMatrix) -> Result<FpMatrix> {
    let field = u.field();
    let nil = u - &FpMatrix::identity(field, u.n());
    let degree = nil
        .nilpotency_degree()
        .ok_or_else(|| Error::Domain("ah_log needs a unipotent matrix".into()))?;
    let l = ah_log_coeffs_cached(field.p(), degree)?;
    let coeffs = l.coeffs()[..degree.max(1)]
        .iter()
        .map(|ci| ci.embed(field))
        .collect::<Result<Vec<_>>>()?;
    Ok(eval_poly(&coeffs, &nil))
}

/// `(a_0, …, a_{m−1}) ↦ e_p(a_0 X) e_p(a_1 X^p) ⋯ e_p(a_{m−1} X^{p^{m−1}})`
/// where `m` is the nilpotent order of `X`.
pub fn witt_embed(x: &FpMatrix, w: &WittVector) -> Result<FpMatrix> {
    if w.field() != x.field() {
        return Err(Error::Mismatch("Witt vector and matrix fields differ".into()));
    }
    let m = nilpotent_order(x)? as usize;
    if m != w.len() {
        return Err(Error::Domain(format!(
            "X has nilpotent order p^{m} but the Witt vector has length {}",
            w.len()
        )));
    }
    let p = x.field().p() as u64;
    let mut acc = FpMatrix::identity(x.field(), x.n());
    let mut power = x.clone();
    for (i, &a) in w.entries().iter().enumerate() {
        if i > 0 {
            power = power.pow(p);
        }
        if !a.is_zero() {
            acc = &acc * &ah_exp(&power.scale(a))?;
        }
    }
    Ok(acc)
}

/// `log(exp(X)·exp(Y))` with the degree `< p` exponential and logarithm.
pub fn bch(x: &FpMatrix, y: &FpMatrix) -> Result<FpMatrix> {
    x.same_shape(y)?;
    let product = &truncated_exp(x)? * &truncated_exp(y)?;
    truncated_log(&product)
        .map_err(|_| Error::Domain("bch: (exp X · exp Y − 1)^p ≠ 0".into()))
}

/// A word in `X` (`false`) and `Y` (`true`) with its rational coefficient.
type DynkinTable = Vec<(Vec<bool>, Rational)>;

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Dynkin's expansion of `log(e^X e^Y)` through total degree `maxdeg`, grouped
/// by right-nested commutator word.
pub fn dynkin_table(maxdeg: usize) -> Arc<DynkinTable> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<DynkinTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("dynkin cache poisoned").get(&maxdeg) {
        return Arc::clone(t);
    }
    let table = Arc::new(build_dynkin_table(maxdeg));
    cache
        .write()
        .expect("dynkin cache poisoned")
        .entry(maxdeg)
        .or_insert(table)
        .clone()
}

fn build_dynkin_table(maxdeg: usize) -> DynkinTable {
    let mut words: BTreeMap<Vec<bool>, Rational> = BTreeMap::new();
    for degree in 1..=maxdeg {
        for n in 1..=degree {
            let mut pairs = Vec::with_capacity(n);
            enumerate_pairs(n, degree, &mut pairs, &mut |pairs| {
                let mut denom = BigInt::from(n * degree);
                let mut word = Vec::with_capacity(degree);
                for &(r, s) in pairs {
                    denom *= factorial(r) * factorial(s);
                    word.extend(std::iter::repeat_n(false, r));
                    word.extend(std::iter::repeat_n(true, s));
                }
                let sign = if n % 2 == 1 { 1 } else { -1 };
                let coeff = Rational::new(BigInt::from(sign), denom);
                *words.entry(word).or_insert_with(Rational::zero) += coeff;
            });
        }
    }
    words.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// All sequences of `n` pairs `(r_i, s_i)` with `r_i + s_i ≥ 1` summing to `total`.
type PairVisitor<'a> = dyn FnMut(&[(usize, usize)]) + 'a;

fn enumerate_pairs(n: usize, total: usize, prefix: &mut Vec<(usize, usize)>, visit: &mut PairVisitor) {
    if n == 0 {
        if total == 0 {
            visit(prefix);
        }
        return;
    }
    // leave at least one unit for each remaining pair
    for size in 1..=total.saturating_sub(n - 1) {
        for r in 0..=size {
            prefix.push((r, size - r));
            enumerate_pairs(n - 1, total - size, prefix, visit);
            prefix.pop();
        }
    }
}

fn nested_commutator(word: &[bool], x: &FpMatrix, y: &FpMatrix) -> FpMatrix {
    let letter = |b: bool| if b { y } else { x };
    let (last, init) = word.split_last().expect("nonempty word");
    let mut acc = letter(*last).clone();
    for &b in init.iter().rev() {
        acc = letter(b).commutator(&acc);
    }
    acc
}

/// Dynkin-form BCH through total degree `maxdeg ≤ p − 1`, coefficients
/// reduced mod `p`.
pub fn bch_dynkin(x: &FpMatrix, y: &FpMatrix, maxdeg: usize) -> Result<FpMatrix> {
    x.same_shape(y)?;
    let field = x.field();
    let p = field.p() as usize;
    if maxdeg == 0 || maxdeg >= p {
        return Err(Error::Argument(format!(
            "bch_dynkin degree must be in 1..={}, got {maxdeg}",
            p - 1
        )));
    }
    require_p_nilpotent(x, "bch_dynkin")?;
    require_p_nilpotent(y, "bch_dynkin")?;
    let mut acc = FpMatrix::zero(field, x.n());
    for (word, coeff) in dynkin_table(maxdeg).iter() {
        let c = reduce_rational(coeff, field)
            .expect("Dynkin coefficients below degree p are p-integral");
        if c.is_zero() {
            continue;
        }
        acc = &acc + &nested_commutator(word, x, y).scale(c);
    }
    Ok(acc)
}

/// The `s^1` coefficient of the matrix polynomial `s ↦ f(s)` of degree at
/// most `degree_bound`, recovered by Lagrange interpolation on the first
/// `degree_bound + 1` field elements.
pub fn tangent_coefficient(
    field: Field,
    degree_bound: usize,
    f: impl Fn(FieldScalar) -> Result<FpMatrix>,
) -> Result<FpMatrix> {
    if degree_bound as u64 >= field.order() {
        return Err(Error::Argument(format!(
            "need {} interpolation points but {field:?} has only {}",
            degree_bound + 1,
            field.order()
        )));
    }
    let points: Vec<FieldScalar> = field.elements().take(degree_bound + 1).collect();
    let mut acc: Option<FpMatrix> = None;
    for (k, &sk) in points.iter().enumerate() {
        // numerator Π_{j≠k} (s − s_j), tracked as coefficients [c0, c1, ...]
        let mut poly = vec![field.one()];
        let mut denom = field.one();
        for (j, &sj) in points.iter().enumerate() {
            if j == k {
                continue;
            }
            let mut next = vec![field.zero(); poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i] -= c * sj;
                next[i + 1] += c;
            }
            poly = next;
            denom *= sk - sj;
        }
        let weight = poly.get(1).copied().unwrap_or_else(|| field.zero())
            * denom.inv().expect("distinct points");
        let term = f(sk)?.scale(weight);
        acc = Some(match acc {
            None => term,
            Some(a) => &a + &term,
        });
    }
    Ok(acc.expect("at least one point"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{jordan_nilpotent, JordanType};

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn j(n: usize, p: u32) -> FpMatrix {
        jordan_nilpotent(&JordanType::regular(n), f(p))
    }

    fn id(p: u32, n: usize) -> FpMatrix {
        FpMatrix::identity(f(p), n)
    }

    fn m(p: u32, rows: &[Vec<i64>]) -> FpMatrix {
        FpMatrix::from_ints(f(p), rows).unwrap()
    }

    #[test]
    fn truncated_exp_examples() {
        assert!(truncated_exp(&FpMatrix::zero(f(5), 3)).unwrap().is_identity());
        assert_eq!(truncated_exp(&j(2, 2)).unwrap(), &id(2, 2) + &j(2, 2));
        let expect = m(3, &[vec![1, 1, 2], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(truncated_exp(&j(3, 3)).unwrap(), expect);
        assert!(matches!(truncated_exp(&j(3, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn truncated_log_examples() {
        assert!(truncated_log(&id(3, 3)).unwrap().is_zero());
        let u = m(3, &[vec![1, 1, 2], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(truncated_log(&u).unwrap(), j(3, 3));
        assert!(truncated_log(&(&id(2, 3) + &j(3, 2))).is_err());
    }

    #[test]
    fn phi_seq_examples() {
        let fld = f(2);
        let y = j(3, 2);
        let a = CoefficientSequence::new(fld, vec![fld.one(), fld.zero()]).unwrap();
        assert_eq!(phi_seq(&a, &y).unwrap(), &id(2, 3) + &y);
        let a = CoefficientSequence::new(fld, vec![fld.one(), fld.one()]).unwrap();
        assert_eq!(phi_seq(&a, &y).unwrap(), &(&id(2, 3) + &y) + &y.pow(2));
        let bad = CoefficientSequence::new(fld, vec![fld.zero(), fld.one()]).unwrap();
        assert!(matches!(phi_seq(&bad, &y), Err(Error::Argument(_))));
        assert!(matches!(phi_seq(&a, &id(2, 3)), Err(Error::Domain(_))));
        let ah = CoefficientSequence::artin_hasse(fld, 3).unwrap();
        assert_eq!(phi_seq(&ah, &y).unwrap(), ah_exp(&y).unwrap());
    }

    #[test]
    fn ah_exp_examples() {
        assert!(ah_exp(&FpMatrix::zero(f(3), 4)).unwrap().is_identity());
        let x = j(3, 2);
        let e = ah_exp(&x).unwrap();
        assert_eq!(e, &(&id(2, 3) + &x) + &x.pow(2));
        assert_eq!(e.pow(2), &id(2, 3) + &x.pow(2));
        assert_eq!(e.pow(2), ah_exp(&x.pow(2)).unwrap());
        assert!(matches!(ah_exp(&id(2, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn ah_log_examples() {
        assert!(ah_log(&id(5, 3)).unwrap().is_zero());
        let x = j(3, 2);
        assert_eq!(ah_log(&ah_exp(&x).unwrap()).unwrap(), x);
        for n in 1..9 {
            for p in [2, 3, 5] {
                let x = j(n, p);
                let u = ah_exp(&x).unwrap();
                assert_eq!(ah_log(&u).unwrap(), x);
                assert_eq!(ah_exp(&ah_log(&u).unwrap()).unwrap(), u);
            }
        }
        assert!(matches!(ah_log(&FpMatrix::zero(f(3), 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn bch_examples() {
        let p = 5;
        let x = m(p, &[vec![0, 1, 2], vec![0, 0, 3], vec![0, 0, 0]]);
        let y = m(p, &[vec![0, 4, 1], vec![0, 0, 1], vec![0, 0, 0]]);
        // commuting: X and X^2
        assert_eq!(bch(&x, &x.pow(2)).unwrap(), &x + &x.pow(2));
        let half = f(p).from_int(2).inv().unwrap();
        let expect = &(&x + &y) + &x.commutator(&y).scale(half);
        assert_eq!(bch(&x, &y).unwrap(), expect);
        assert_eq!(bch_dynkin(&x, &y, 2).unwrap(), expect);
        assert_eq!(bch_dynkin(&x, &y, 1).unwrap(), &x + &y);
        assert!(bch(&x, &(-&x)).unwrap().is_zero());
        assert!(matches!(bch_dynkin(&x, &y, 5), Err(Error::Argument(_))));
        assert!(matches!(bch_dynkin(&x, &y, 0), Err(Error::Argument(_))));
    }

    #[test]
    fn dynkin_low_degree_coefficients() {
        // log(e^X e^Y) = X + Y + [X,Y]/2 + [X,[X,Y]]/12 − [Y,[X,Y]]/12 + ...
        let t = dynkin_table(3);
        let get = |w: &[bool]| {
            t.iter()
                .find(|(word, _)| word == w)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::zero)
        };
        let q = |a: i64, b: i64| Rational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(get(&[false]), q(1, 1));
        assert_eq!(get(&[true]), q(1, 1));
        // XY and YX both present; their evaluated sum is [X,Y]/2
        assert_eq!(get(&[false, true]) - get(&[true, false]), q(1, 2));
    }

    #[test]
    fn witt_embed_small() {
        let x = j(3, 2);
        let fld = f(2);
        let zero = WittVector::zero(fld, 2).unwrap();
        assert!(witt_embed(&x, &zero).unwrap().is_identity());
        let unit = WittVector::unit(fld, 2).unwrap();
        assert_eq!(witt_embed(&x, &unit).unwrap(), ah_exp(&x).unwrap());
        let two = crate::witt::witt_add(&unit, &unit).unwrap();
        let expect = &id(2, 3) + &x.pow(2);
        assert_eq!(witt_embed(&x, &two).unwrap(), expect);
        let shifted = WittVector::new(fld, vec![fld.zero(), fld.one()]).unwrap();
        assert_eq!(witt_embed(&x, &shifted).unwrap(), expect);
        assert_eq!(witt_embed(&x, &unit).unwrap().pow(2), expect);
        let wrong_len = WittVector::zero(fld, 3).unwrap();
        assert!(matches!(witt_embed(&x, &wrong_len), Err(Error::Domain(_))));
    }

    #[test]
    fn tangent_of_truncated_exp_is_identity() {
        let x = j(3, 5);
        let t = tangent_coefficient(f(5), 4, |s| truncated_exp(&x.scale(s))).unwrap();
        assert_eq!(t, x);
        assert!(tangent_coefficient(f(3), 3, |s| truncated_exp(&x.scale(s))).is_err());
    }
}
