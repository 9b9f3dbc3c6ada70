//! Dense exact matrices with reduced row echelon form, right kernels,
//! determinants and inverses. No pivoting tolerances: entries are exact
//! field elements and a pivot is any nonzero entry.

use crate::field::{FieldSpec, Scalar};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of row reduction: the echelon form plus rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: DenseMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl DenseMatrix {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch);
        }
        if data.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(DenseMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        DenseMatrix {
            field,
            rows,
            cols,
            data: vec![z; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> DenseMatrix {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| {
            self[(j, i)].clone()
        })
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix, Error> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimMismatch);
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.try_mul(&rhs[(k, j)])?;
                    out[(i, j)] = out[(i, j)].try_add(&t)?;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix, Error> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimMismatch);
        }
        Ok(Self::from_fn(self.field, self.rows, self.cols, |i, j| {
            &self[(i, j)] - &rhs[(i, j)]
        }))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimMismatch);
        }
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self[(i, j)].is_zero() && !v[j].is_zero() {
                    out[i] = out[i].try_add(&self[(i, j)].try_mul(&v[j])?)?;
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form, exact.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().unwrap();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].try_mul(&inv).unwrap();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = f.try_mul(&m[(r, j)]).unwrap();
                        m[(i, j)] = m[(i, j)].try_sub(&t).unwrap();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel in the canonical echelon parametrization:
    /// one vector per free column, with entry 1 at that column.
    pub fn right_kernel(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = matrix[(row, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> Result<Scalar, Error> {
        if self.rows != self.cols {
            return Err(Error::DimMismatch);
        }
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(self.field.zero());
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = det.neg();
            }
            det = det.try_mul(&m[(c, c)])?;
            let inv = m[(c, c)].inv().unwrap();
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].try_mul(&inv)?;
                for j in c..m.cols {
                    let t = f.try_mul(&m[(c, j)])?;
                    m[(i, j)] = m[(i, j)].try_sub(&t)?;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<DenseMatrix, Error> {
        if self.rows != self.cols {
            return Err(Error::DimMismatch);
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.field.one();
        }
        let red = aug.rref();
        if red.rank < n || red.pivots.iter().take(n).copied().ne(0..n) {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(self.field, n, n, |i, j| {
            red.matrix[(i, n + j)].clone()
        }))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn promote(&self, to: FieldSpec) -> Result<DenseMatrix, Error> {
        let data = self
            .data
            .iter()
            .map(|s| s.promote(to))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DenseMatrix {
            field: to,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{}", self[(i, j)]))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn identity_has_full_rank_and_empty_kernel() {
        let m = DenseMatrix::identity(fp(5), 3);
        let r = m.rref();
        assert_eq!(r.rank, 3);
        assert!(m.right_kernel().is_empty());
    }

    #[test]
    fn zero_matrix_has_rank_zero_and_full_kernel() {
        let m = DenseMatrix::zeros(fp(7), 2, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.right_kernel().len(), 4);
    }

    #[test]
    fn mixed_field_entries_rejected() {
        let a = fp(5).one();
        let b = fp(7).one();
        assert_eq!(
            DenseMatrix::new(fp(5), 1, 2, vec![a, b]),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn kernel_vectors_are_killed_by_the_matrix() {
        let f = fp(11);
        let m = DenseMatrix::from_fn(f, 3, 5, |i, j| f.from_i64(((i * 5 + j) % 7) as i64));
        for v in m.right_kernel() {
            let out = m.mul_vec(&v).unwrap();
            assert!(out.iter().all(|s| s.is_zero()));
        }
        assert_eq!(m.rank() + m.right_kernel().len(), 5);
    }

    #[test]
    fn determinant_matches_rank() {
        let f = fp(13);
        let m = DenseMatrix::from_fn(f, 3, 3, |i, j| f.from_i64((i as i64 + 1) * (j as i64 + 2)));
        // rank-1 outer product
        assert_eq!(m.rank(), 1);
        assert!(m.det().unwrap().is_zero());
        let id = DenseMatrix::identity(f, 4);
        assert!(id.det().unwrap().is_one());
    }

    #[test]
    fn inverse_over_rationals() {
        let f = FieldSpec::rational();
        let m = DenseMatrix::new(
            f,
            2,
            2,
            vec![f.from_i64(2), f.from_i64(1), f.from_i64(7), f.from_i64(4)],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), DenseMatrix::identity(f, 2));
        let sing = DenseMatrix::from_fn(f, 2, 2, |_, _| f.one());
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }
}
