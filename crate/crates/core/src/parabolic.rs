//! Standard parabolic subgroups of `GL_n` given by a block composition.

use std::fmt;
use std::str::FromStr;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::matrix::FpMatrix;
use crate::rng;
use crate::springer::truncated_exp;

/// Ordered block sizes `(b_1, …, b_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::Argument(format!(
                "a composition needs positive blocks, got {blocks:?}"
            )));
        }
        Ok(Composition(blocks))
    }

    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `2^{n−1}` compositions of `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Composition> {
        fn go(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition(prefix.clone()));
                return;
            }
            for b in 1..=rest {
                prefix.push(b);
                go(rest - b, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Usage(format!("bad block size {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(blocks).map_err(|e| Error::Usage(e.to_string()))
    }
}

/// The parabolic `P ⊂ GL_n(F_{p^e})` of block-upper-triangular matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicGL {
    comp: Composition,
    field: Field,
    block_of: Vec<usize>,
}

impl ParabolicGL {
    pub fn new(comp: Composition, field: Field) -> Self {
        let block_of = comp
            .blocks()
            .iter()
            .enumerate()
            .flat_map(|(k, &b)| std::iter::repeat_n(k, b))
            .collect();
        ParabolicGL {
            comp,
            field,
            block_of,
        }
    }

    pub fn composition(&self) -> &Composition {
        &self.comp
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    /// Index of the block containing row/column `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    fn nilradical_positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n)
            .flat_map(move |i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.block_of[i] < self.block_of[j])
    }

    /// `E_{ij}` for `i` in an earlier block than `j`, row-major.
    pub fn nilradical_basis(&self) -> Vec<FpMatrix> {
        self.nilradical_positions()
            .map(|(i, j)| FpMatrix::unit(self.field, self.n(), i, j))
            .collect()
    }

    pub fn in_nilradical(&self, x: &FpMatrix) -> bool {
        x.n() == self.n()
            && x.field() == self.field
            && (0..self.n()).all(|i| {
                (0..self.n()).all(|j| self.block_of[i] < self.block_of[j] || x.get(i, j).is_zero())
            })
    }

    /// Whether `g` is block-upper-triangular and invertible.
    pub fn contains(&self, g: &FpMatrix) -> bool {
        g.n() == self.n()
            && g.field() == self.field
            && (0..self.n()).all(|i| {
                (0..self.n()).all(|j| self.block_of[i] <= self.block_of[j] || g.get(i, j).is_zero())
            })
            && !g.det().is_zero()
    }

    /// Length of the lower central series of the nilradical, computed by
    /// bracketing spanning sets until the span vanishes.
    pub fn nilpotence_class(&self) -> usize {
        let base = self.nilradical_basis();
        let mut current = base.clone();
        let mut class = 0;
        while !current.is_empty() {
            class += 1;
            let brackets: Vec<FpMatrix> = current
                .iter()
                .flat_map(|a| base.iter().map(move |b| a.commutator(b)))
                .filter(|c| !c.is_zero())
                .collect();
            current = span_basis(self.field, &brackets);
        }
        class
    }

    /// Nilpotence class `< p`.
    pub fn is_restricted(&self) -> bool {
        self.nilpotence_class() < self.field.p() as usize
    }

    /// `ε_P(X)`: the degree `< p` exponential on the nilradical.
    pub fn eps(&self, x: &FpMatrix) -> Result<FpMatrix> {
        if !self.is_restricted() {
            return Err(Error::Domain(format!(
                "parabolic {} has nilpotence class {} ≥ p = {}",
                self.comp,
                self.nilpotence_class(),
                self.field.p()
            )));
        }
        if !self.in_nilradical(x) {
            return Err(Error::Domain(format!(
                "matrix is not in the nilradical of parabolic {}",
                self.comp
            )));
        }
        truncated_exp(x)
    }

    /// Random element of the nilradical.
    pub fn sample_nilradical<R: RngCore + ?Sized>(&self, rng: &mut R) -> FpMatrix {
        let mut x = FpMatrix::zero(self.field, self.n());
        let positions: Vec<(usize, usize)> = self.nilradical_positions().collect();
        for (i, j) in positions {
            x.set(i, j, self.field.random(rng));
        }
        x
    }

    /// Random invertible block-upper-triangular matrix: Levi blocks are
    /// unit lower triangular · diagonal · unit upper triangular, plus a
    /// random nilradical part.
    pub fn sample_element<R: RngCore + ?Sized>(&self, rng: &mut R) -> FpMatrix {
        let n = self.n();
        let field = self.field;
        let mut lower = FpMatrix::identity(field, n);
        let mut upper = FpMatrix::identity(field, n);
        for i in 0..n {
            upper.set(i, i, field.random_nonzero(rng));
            for j in 0..n {
                if i > j && self.block_of[i] == self.block_of[j] {
                    lower.set(i, j, field.random(rng));
                } else if i < j {
                    upper.set(i, j, field.random(rng));
                }
            }
        }
        &lower * &upper
    }
}

/// A basis of the span of `mats`.
fn span_basis(field: Field, mats: &[FpMatrix]) -> Vec<FpMatrix> {
    let Some(first) = mats.first() else {
        return Vec::new();
    };
    let n = first.n();
    let mut rows: Vec<Vec<_>> = mats.iter().map(|m| m.as_vector().to_vec()).collect();
    let pivots = linalg::rref(field, &mut rows, n * n);
    rows.truncate(pivots.len());
    rows.into_iter()
        .map(|v| FpMatrix::from_vector(field, n, v))
        .collect()
}

/// Seeded element of `P`.
pub fn random_p_element(p: &ParabolicGL, seed: u64) -> FpMatrix {
    p.sample_element(&mut rng::seeded(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::springer::truncated_log;

    fn par(blocks: &[usize], p: u32) -> ParabolicGL {
        ParabolicGL::new(Composition::new(blocks.to_vec()).unwrap(), Field::prime(p).unwrap())
    }

    fn unit(n: usize, i: usize, j: usize, p: u32) -> FpMatrix {
        FpMatrix::unit(Field::prime(p).unwrap(), n, i, j)
    }

    #[test]
    fn nilradical_examples() {
        assert!(par(&[3], 2).nilradical_basis().is_empty());
        assert_eq!(par(&[2, 1], 2).nilradical_basis(), vec![unit(3, 0, 2, 2), unit(3, 1, 2, 2)]);
        assert_eq!(
            par(&[1, 1, 1], 2).nilradical_basis(),
            vec![unit(3, 0, 1, 2), unit(3, 0, 2, 2), unit(3, 1, 2, 2)]
        );
    }

    #[test]
    fn class_examples() {
        assert_eq!(par(&[4], 3).nilpotence_class(), 0);
        assert_eq!(par(&[1, 1, 1], 3).nilpotence_class(), 2);
        assert_eq!(par(&[2, 1], 3).nilpotence_class(), 1);
        assert!(!par(&[1, 1, 1], 2).is_restricted());
        assert!(par(&[1, 1, 1], 3).is_restricted());
        assert!(par(&[2, 1], 2).is_restricted());
        for n in 1..=6 {
            for comp in Composition::all(n) {
                let r = comp.len();
                let p = ParabolicGL::new(comp, Field::prime(5).unwrap());
                assert_eq!(p.nilpotence_class(), r - 1);
            }
        }
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(Composition::all(4).len(), 8);
        assert!(Composition::all(5).iter().all(|c| c.n() == 5));
        assert_eq!("2,1".parse::<Composition>().unwrap().blocks(), &[2, 1]);
        assert!("2,0".parse::<Composition>().is_err());
        assert!("".parse::<Composition>().is_err());
    }

    #[test]
    fn eps_examples() {
        let f2 = Field::prime(2).unwrap();
        let p = par(&[2, 1], 2);
        assert!(p.eps(&FpMatrix::zero(f2, 3)).unwrap().is_identity());
        let x = &unit(3, 0, 2, 2) + &unit(3, 1, 2, 2);
        assert_eq!(p.eps(&x).unwrap(), &FpMatrix::identity(f2, 3) + &x);

        let f3 = Field::prime(3).unwrap();
        let j3 = FpMatrix::from_ints(f3, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        let expected =
            FpMatrix::from_ints(f3, &[vec![1, 1, 2], vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
        assert_eq!(par(&[1, 1, 1], 3).eps(&j3).unwrap(), expected);

        assert!(matches!(par(&[1, 1, 1], 2).eps(&FpMatrix::zero(f2, 3)), Err(Error::Domain(_))));
        assert!(matches!(par(&[2, 1], 3).eps(&j3), Err(Error::Domain(_))));
    }

    #[test]
    fn sampled_elements() {
        let p = par(&[2, 1, 2], 3);
        let g = random_p_element(&p, 17);
        assert!(p.contains(&g));
        assert_eq!(g, random_p_element(&p, 17));
        assert!(p.contains(&FpMatrix::identity(p.field(), 5)));
        let mut r = rng::seeded(4);
        for _ in 0..50 {
            let x = p.sample_nilradical(&mut r);
            let u = p.eps(&x).unwrap();
            assert!(p.contains(&u));
            assert_eq!(truncated_log(&u).unwrap(), x);
            let g = p.sample_element(&mut r);
            assert!(p.contains(&g));
            let y = &(&g * &x) * &g.inverse().unwrap();
            assert!(p.in_nilradical(&y));
        }
    }
}
