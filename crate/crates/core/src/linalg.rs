//! Row reduction over `F_{p^e}` on plain coordinate rows.

use crate::field::{Coords, Field, ZERO};

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. Rows are dense and all of length `ncols`.
pub fn rref(field: Field, rows: &mut Vec<Vec<Coords>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != ZERO) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == ZERO {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: Field, rows: &[Vec<Coords>], ncols: usize) -> usize {
    let mut rows = rows.to_vec();
    rref(field, &mut rows, ncols).len()
}

/// Basis of `{v : A v = 0}` where `A` is given by its rows.
pub fn null_space(field: Field, rows: &[Vec<Coords>], ncols: usize) -> Vec<Vec<Coords>> {
    let mut rows = rows.to_vec();
    let pivots = rref(field, &mut rows, ncols);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![ZERO; ncols];
        v[free] = [1, 0];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = field.neg(rows[r][free]);
        }
        basis.push(v);
    }
    basis
}
