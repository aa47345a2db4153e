//! Dense matrices over a finite field.
//!
//! Matrices act on column vectors: column `j` holds the image of basis vector `j`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElem};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.elem(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn shape_err(what: &str, a: &Matrix, b: &Matrix) -> Error {
    Error::ShapeMismatch(format!("{what}: {}x{} vs {}x{}", a.rows, a.cols, b.rows, b.cols))
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// `c * I_n`.
    pub fn scalar(c: &FieldElem, n: usize) -> Matrix {
        let mut m = Matrix::zeros(c.field(), n, n);
        for i in 0..n {
            m.data[i * n + i] = c.value();
        }
        m
    }

    /// Elementary matrix `e_{ij}` (zero-based indices).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        m.data[i * n + j] = 1;
        m
    }

    /// Row-major encoded values.
    pub fn from_values(field: &Field, rows: usize, cols: usize, data: Vec<u64>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&v) = data.iter().find(|&&v| v >= field.order()) {
            return Err(Error::InvalidElement(format!(
                "entry {v} out of range for field of order {}",
                field.order()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Rows of integers reduced into the prime subfield.
    pub fn from_rows(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&v| field.int(v)).collect();
        Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, cols: &[Vec<u64>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn values(&self) -> &[u64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn elem(&self, i: usize, j: usize) -> FieldElem {
        FieldElem::raw(&self.field, self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value() == Some(1)
    }

    /// `Some(c)` iff the matrix is square and equals `c * I`.
    pub fn scalar_value(&self) -> Option<u64> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { 0 } else { self.get(0, 0) };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { c } else { 0 };
                if self.get(i, j) != expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(shape_err("add", self, other));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Result<Matrix> {
        if c.field() != &self.field {
            return Err(Error::MixedFields);
        }
        Ok(self.scale_raw(c.value()))
    }

    pub(crate) fn scale_raw(&self, c: u64) -> Matrix {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(shape_err("mul", self, other));
        }
        Ok(self.mul_raw(other))
    }

    pub(crate) fn mul_raw(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        out.data[base + j] = f.add(out.data[base + j], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product `A v`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(
                    0,
                    |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.add(acc, f.mul(a, b)) },
                )
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(shape_err("pow", self, self));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            base = base.mul_raw(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if !self.is_square() || self.rows != other.rows || !other.is_square() {
            return Err(shape_err("commutator", self, other));
        }
        self.mul_raw(other).sub(&other.mul_raw(self))
    }

    /// Evaluate a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Result<Matrix> {
        if f.field() != &self.field {
            return Err(Error::MixedFields);
        }
        if !self.is_square() {
            return Err(shape_err("eval_poly", self, self));
        }
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for &c in f.values().iter().rev() {
            acc = acc.mul_raw(self);
            for i in 0..n {
                acc.data[i * n + i] = self.field.add(acc.data[i * n + i], c);
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : A v = 0}` read off the reduced
    /// echelon form: one vector per free column, that coordinate set to 1.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; self.cols];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<FieldElem> {
        if !self.is_square() {
            return Err(shape_err("det", self, self));
        }
        let f = self.field.clone();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = 1u64;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Ok(f.zero());
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(FieldElem::raw(&f, det))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(shape_err("inverse", self, self));
        }
        let n = self.rows;
        let aug = Matrix::hstack(&[self.clone(), Matrix::identity(&self.field, n)])?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(0, n, n, n))
    }

    /// Some `X` with `A X = B`, if one exists.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        self.same_field(b)?;
        if self.rows != b.rows {
            return Err(shape_err("solve", self, b));
        }
        let aug = Matrix::hstack(&[self.clone(), b.clone()])?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(&self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    pub fn hstack(parts: &[Matrix]) -> Result<Matrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::ShapeMismatch("empty hstack".into()))?;
        let rows = first.rows;
        let mut cols = 0;
        for p in parts {
            first.same_field(p)?;
            if p.rows != rows {
                return Err(shape_err("hstack", first, p));
            }
            cols += p.cols;
        }
        let mut out = Matrix::zeros(&first.field, rows, cols);
        let mut c0 = 0;
        for p in parts {
            out.place(0, c0, p);
            c0 += p.cols;
        }
        Ok(out)
    }

    fn place(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    /// Block-diagonal matrix.
    pub fn direct_sum(parts: &[Matrix]) -> Result<Matrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::ShapeMismatch("empty direct sum".into()))?;
        for p in parts {
            first.same_field(p)?;
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(&first.field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.place(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        Ok(out)
    }

    /// Kronecker product: block `(i, j)` is `a_{ij} B`.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block matrix from an `r x s` grid of equally sized blocks.
    pub fn assemble_grid(grid: &[Vec<Matrix>]) -> Result<Matrix> {
        let first = grid
            .first()
            .and_then(|row| row.first())
            .ok_or_else(|| Error::ShapeMismatch("empty grid".into()))?;
        let (br, bc) = (first.rows, first.cols);
        let s = grid[0].len();
        for row in grid {
            if row.len() != s {
                return Err(Error::ShapeMismatch("ragged block grid".into()));
            }
            for b in row {
                first.same_field(b)?;
                if b.rows != br || b.cols != bc {
                    return Err(shape_err("assemble_grid", first, b));
                }
            }
        }
        let mut out = Matrix::zeros(&first.field, grid.len() * br, s * bc);
        for (i, row) in grid.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                out.place(i * br, j * bc, b);
            }
        }
        Ok(out)
    }

    /// `T^{-1} A T`.
    pub fn conjugate(&self, t: &Matrix) -> Result<Matrix> {
        let tinv = t.inverse()?;
        tinv.mul(self)?.mul(t)
    }

    pub fn map_field(&self, emb: &Embedding) -> Result<Matrix> {
        if emb.source() != &self.field {
            return Err(Error::MixedFields);
        }
        Ok(Matrix {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| emb.map_raw(v)).collect(),
        })
    }
}
