//! Exact linear algebra: fraction-free determinants over integral domains and
//! row reduction over fields.

use crate::error::{Error, Result};
use crate::field::Field;

/// An integral domain with exact division, enough for Bareiss elimination.
pub trait Domain {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `a / b`, required to be exact.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

/// A field viewed as a [`Domain`].
pub struct FieldDomain<'a, F>(pub &'a F);

impl<F: Field> Domain for FieldDomain<'_, F> {
    type Elem = F::Elem;
    fn zero(&self) -> F::Elem {
        self.0.zero()
    }
    fn one(&self) -> F::Elem {
        self.0.one()
    }
    fn is_zero(&self, a: &F::Elem) -> bool {
        self.0.is_zero(a)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &F::Elem) -> F::Elem {
        self.0.neg(a)
    }
    fn exact_div(&self, a: &F::Elem, b: &F::Elem) -> Result<F::Elem> {
        self.0.div(a, b)
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det<D: Domain>(d: &D, mut m: Vec<Vec<D::Elem>>) -> Result<D::Elem> {
    let n = m.len();
    if n == 0 {
        return Ok(d.one());
    }
    let mut negate = false;
    let mut prev = d.one();
    for k in 0..n - 1 {
        if d.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !d.is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(d.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = d.sub(&d.mul(&m[i][j], &m[k][k]), &d.mul(&m[i][k], &m[k][j]));
                m[i][j] = d.exact_div(&num, &prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg(&det) } else { det })
}

/// Row-reduced echelon form in place; returns pivot columns.
///
/// Pivots are taken as the first nonzero entry in each column.
pub fn rref<F: Field>(f: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b`; `None` when inconsistent. Free variables are set to 0.
pub fn solve<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// A basis of the right kernel `{x : A x = 0}`, one vector per free column,
/// in ascending order of the free column.
pub fn nullspace<F: Field>(f: &F, a: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = a.to_vec();
    let pivots = rref(f, &mut m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&m[r][free]);
            }
            v
        })
        .collect()
}

/// Transposes a rectangular matrix.
pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

/// Inverse of a square matrix.
pub fn inverse<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> Result<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let mut aug: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Inconsistent("singular matrix".into()));
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
