//! Dense matrices over a [`Field`]: echelon forms, kernels, solving, inverses.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;
use crate::poly::UniPoly;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::LengthMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    /// Rows may be empty; `cols` fixes the width in that case.
    pub fn from_rows_with_cols(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Self::zeros(field, 0, cols));
        }
        let m = Self::from_rows(field, rows)?;
        if m.cols != cols {
            return Err(Error::LengthMismatch { expected: cols, got: m.cols });
        }
        Ok(m)
    }

    pub fn from_cols(field: F, cols: Vec<Vec<F::Elem>>) -> Result<Self> {
        Ok(Self::from_rows(field, cols)?.transpose())
    }

    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        let r = rows
            .iter()
            .map(|row| row.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, r).expect("rectangular input")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn cols_vec(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, got: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: v.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let cols = idx.iter().map(|&j| self.col(j)).collect::<Vec<_>>();
        let mut m = Self::zeros(self.field.clone(), self.rows, idx.len());
        for (jj, c) in cols.into_iter().enumerate() {
            for (i, v) in c.into_iter().enumerate() {
                m.set(i, jj, v);
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows_with_cols(self.field.clone(), self.cols, rows).expect("same width")
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch { expected: self.cols, got: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field.clone(), self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.rank()
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_basis(&self) -> Self {
        let (m, piv) = self.rref();
        m.select_rows(&(0..piv.len()).collect::<Vec<_>>())
    }

    /// Basis of `{v : M v = 0}` as the rows of a matrix in reduced row echelon form.
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        let k = Self::from_rows_with_cols(f.clone(), self.cols, basis).expect("same width");
        k.row_basis()
    }

    /// Some `x` with `M x = b`.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, got: b.len() });
        }
        let f = &self.field;
        let mut aug = Self::zeros(f.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Degenerate(format!("{n}x{n} matrix is singular")));
        }
        Ok(m.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn det(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch { expected: self.rows, got: self.cols });
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if piv != c {
                m.swap_rows(piv, c);
                det = f.neg(&det);
            }
            let pv = m.get(c, c).clone();
            det = f.mul(&det, &pv);
            let inv = f.inv(&pv)?;
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |f, a, b| f.sub(a, b))
    }

    fn zip(&self, other: &Self, g: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::LengthMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| g(&self.field, a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        self.map(self.field.clone(), |a| self.field.mul(a, s))
    }

    /// Characteristic polynomial `det(x I - M)`, via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Result<UniPoly<F>> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch { expected: self.rows, got: self.cols });
        }
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !f.is_zero(h.get(i, m - 1))) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                h.swap_cols(i, m);
            }
            let inv = f.inv(h.get(m, m - 1))?;
            for j in m + 1..n {
                let u = f.mul(h.get(j, m - 1), &inv);
                if f.is_zero(&u) {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(j, c), &f.mul(&u, h.get(m, c)));
                    h.set(j, c, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, m), &f.mul(&u, h.get(r, j)));
                    h.set(r, m, v);
                }
            }
        }
        let x = UniPoly::x(f.clone());
        let mut p = vec![UniPoly::constant(f.clone(), f.one())];
        for m in 1..=n {
            let lin = x.sub(&UniPoly::constant(f.clone(), h.get(m - 1, m - 1).clone()));
            let mut pm = lin.mul(&p[m - 1]);
            let mut t = f.one();
            for i in 1..m {
                t = f.mul(&t, h.get(m - i, m - i - 1));
                let c = f.mul(&t, h.get(m - i - 1, m - 1));
                pm = pm.sub(&p[m - i - 1].scale(&c));
            }
            p.push(pm);
        }
        Ok(p.pop().unwrap())
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// True when both matrices have the same row space.
    pub fn same_row_space(&self, other: &Self) -> bool {
        self.cols == other.cols && self.row_basis() == other.row_basis()
    }

    pub fn map<G: Field>(&self, field: G, mut g: impl FnMut(&F::Elem) -> G::Elem) -> Matrix<G> {
        let data = self.data.iter().map(&mut g).collect();
        Matrix { field, rows: self.rows, cols: self.cols, data }
    }
}

/// Incrementally maintained echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    width: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduce `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in *p..self.width {
                if !f.is_zero(&row[j]) {
                    v[j] = f.sub(&v[j], &f.mul(&c, &row[j]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| self.field.is_zero(x))
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let piv = self.pivot_columns();
        (0..self.width).filter(|j| !piv.contains(j)).collect()
    }

    /// Adds `v`; returns true if the rank grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let f = &self.field;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for x in v.iter_mut().skip(p) {
            *x = f.mul(x, &inv);
        }
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaloisField, Rationals};

    #[test]
    fn kernel_of_grid_matrix() {
        let k = GaloisField::prime(5).unwrap();
        let m = Matrix::from_i64(
            k,
            &[
                &[-1, -1, -1, 0, 0, 0, 1, 1, 1],
                &[-1, 0, 1, -1, 0, 1, -1, 0, 1],
                &[1, 1, 1, 1, 1, 1, 1, 1, 1],
            ],
        );
        let ker = m.kernel();
        assert_eq!(ker.nrows(), 6);
        assert!(m.mul(&ker.transpose()).unwrap().is_zero());
    }

    #[test]
    fn inverse_and_det() {
        let q = Rationals;
        let m = Matrix::from_i64(q, &[&[2, 1], &[7, 4]]);
        assert_eq!(m.det().unwrap(), q.from_i64(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(q, 2));
        let s = Matrix::from_i64(q, &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_err());
        assert_eq!(s.det().unwrap(), q.zero());
    }

    #[test]
    fn charpoly_matches_determinant() {
        let k = GaloisField::prime(7).unwrap();
        let m = Matrix::from_i64(k.clone(), &[&[1, 2, 0, 3], &[4, 0, 5, 1], &[0, 6, 2, 2], &[1, 1, 1, 0]]);
        let chi = m.charpoly().unwrap();
        assert_eq!(chi.degree(), Some(4));
        for t in 0..7 {
            let lam = Matrix::identity(k.clone(), 4).scale(&k.from_i64(t));
            assert_eq!(chi.eval(&k.from_i64(t)), lam.sub(&m).unwrap().det().unwrap());
        }
    }

    #[test]
    fn solve_inconsistent() {
        let q = Rationals;
        let m = Matrix::from_i64(q, &[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[q.from_i64(1), q.from_i64(3)]).unwrap().is_none());
        let x = m.solve(&[q.from_i64(1), q.from_i64(2)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![q.from_i64(1), q.from_i64(2)]);
    }
}
