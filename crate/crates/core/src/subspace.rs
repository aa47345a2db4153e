use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// A subspace of `F^n` held as a reduced echelon basis.
///
/// Every basis vector has a leading 1 at its pivot (its first nonzero
/// coordinate) and every other basis vector is zero there; vectors are sorted
/// by pivot. The basis is therefore canonical for the subspace, so `==`
/// compares subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(field: &Field, ambient: usize) -> SubspaceBasis {
        SubspaceBasis {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> SubspaceBasis {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        SubspaceBasis {
            field: field.clone(),
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<u64>]) -> SubspaceBasis {
        let mut s = SubspaceBasis::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Column span of a matrix.
    pub fn column_span(m: &Matrix) -> SubspaceBasis {
        SubspaceBasis::span(m.field(), m.rows(), &m.columns())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.field, self.ambient, &self.basis)
    }

    fn reduce(&self, v: &mut [u64]) {
        let f = &self.field;
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }

    /// `v` reduced modulo the subspace; zero at every pivot. The entries at
    /// the non-pivot positions are the coordinates of `v` in the quotient.
    pub fn residue(&self, v: &[u64]) -> Vec<u64> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span. Returns the new normalized basis vector when the
    /// dimension grows, `None` when `v` was already in the span.
    pub fn insert(&mut self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field.clone();
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let pc = w.iter().position(|&x| x != 0)?;
        let inv = f.inv(w[pc]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for b in self.basis.iter_mut() {
            let c = b[pc];
            if c == 0 {
                continue;
            }
            for (x, &y) in b.iter_mut().zip(&w) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.basis.insert(pos, w.clone());
        Some(w)
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Standard basis vectors completing this basis to a basis of `F^n`,
    /// taken in index order (the non-pivot coordinates).
    pub fn completion(&self) -> Vec<Vec<u64>> {
        (0..self.ambient)
            .filter(|i| !self.pivots.contains(i))
            .map(|i| {
                let mut v = vec![0; self.ambient];
                v[i] = 1;
                v
            })
            .collect()
    }

    /// Annihilator `{v : u . v = 0 for all u in self}`.
    pub fn annihilator(&self) -> SubspaceBasis {
        if self.basis.is_empty() {
            return SubspaceBasis::full(&self.field, self.ambient);
        }
        let rows = Matrix::from_columns(&self.field, self.ambient, &self.basis).transpose();
        SubspaceBasis::span(&self.field, self.ambient, &rows.kernel())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.field != other.field || self.ambient != other.ambient {
            return Err(Error::MixedFields);
        }
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_basis_is_order_independent() {
        let f = Field::prime(5).unwrap();
        let a = vec![1, 2, 3];
        let b = vec![0, 1, 4];
        let s1 = SubspaceBasis::span(&f, 3, &[a.clone(), b.clone()]);
        let c: Vec<u64> = a.iter().zip(&b).map(|(&x, &y)| f.add(x, f.mul(2, y))).collect();
        let s2 = SubspaceBasis::span(&f, 3, &[c, b]);
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
        assert!(s1.contains(&a));
        assert!(!s1.contains(&[0, 0, 1]));
        assert_eq!(s1.completion().len(), 1);
    }

    #[test]
    fn annihilator_dimension() {
        let f = Field::prime(3).unwrap();
        let s = SubspaceBasis::span(&f, 4, &[vec![1, 0, 2, 0], vec![0, 1, 1, 1]]);
        let ann = s.annihilator();
        assert_eq!(ann.dim(), 2);
        for u in s.vectors() {
            for v in ann.vectors() {
                let dot = u.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(dot, 0);
            }
        }
    }
}
