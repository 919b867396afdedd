//! Row-compressed sparse matrices over the rationals.
//!
//! Representation matrices of the larger modules (up to 2176 × 2176) have a
//! handful of nonzeros per row, so they are stored here rather than densely.

use rayon::prelude::*;

use super::matrix::Matrix;
use super::modular::ModMatrix;
use crate::scalar::Rational;

pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

/// `a + s·b` for sorted sparse rows.
pub fn axpy_row(a: &[(usize, Rational)], s: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = s * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, trip: Vec<(usize, usize, Rational)>) -> Self {
        let mut data: Vec<SparseRow> = vec![Vec::new(); rows];
        for (r, c, v) in trip {
            assert!(r < rows && c < cols, "triplet out of range");
            data[r].push((c, v));
        }
        for row in &mut data {
            row.sort_by_key(|e| e.0);
            let mut merged: SparseRow = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 += &v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        SparseMatrix { rows, cols, data }
    }

    pub fn from_dense(m: &Matrix<Rational>) -> Self {
        let data = (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: m.rows(), cols: m.cols(), data }
    }

    pub fn to_dense(&self) -> Matrix<Rational> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn row_data(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "shape mismatch in sparse product");
        let f = |row: &SparseRow| {
            let mut acc = Rational::zero();
            for (c, a) in row {
                if !v[*c].is_zero() {
                    acc += &(a * &v[*c]);
                }
            }
            acc
        };
        if self.nnz() > 1 << 15 {
            self.data.par_iter().map(f).collect()
        } else {
            self.data.iter().map(f).collect()
        }
    }

    pub fn mul(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in sparse product");
        let data = self
            .data
            .par_iter()
            .map(|row| {
                let mut acc: SparseRow = Vec::new();
                for (k, a) in row {
                    acc = axpy_row(&acc, a, &o.data[*k]);
                }
                acc
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: o.cols, data }
    }

    pub fn add(&self, o: &SparseMatrix) -> SparseMatrix {
        self.axpy(&Rational::one(), o)
    }

    pub fn sub(&self, o: &SparseMatrix) -> SparseMatrix {
        self.axpy(&-Rational::one(), o)
    }

    /// `self + s·o`.
    pub fn axpy(&self, s: &Rational, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| axpy_row(a, s, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Rational) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn commutator(&self, o: &SparseMatrix) -> SparseMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    /// Kronecker product `self ⊗ o` with index `i·o.rows + k`.
    pub fn kron(&self, o: &SparseMatrix) -> SparseMatrix {
        let mut data = Vec::with_capacity(self.rows * o.rows);
        for ra in &self.data {
            for rb in &o.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ca, va) in ra {
                    for (cb, vb) in rb {
                        row.push((ca * o.cols + cb, va * vb));
                    }
                }
                data.push(row);
            }
        }
        SparseMatrix { rows: self.rows * o.rows, cols: self.cols * o.cols, data }
    }

    /// Principal submatrix on the index set `idx`; entries leaving the set are dropped.
    pub fn restrict(&self, idx: &[usize]) -> SparseMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (i, &g) in idx.iter().enumerate() {
            pos[g] = i;
        }
        let data = idx
            .iter()
            .map(|&r| {
                self.data[r]
                    .iter()
                    .filter(|(c, _)| pos[*c] != usize::MAX)
                    .map(|(c, v)| (pos[*c], v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: idx.len(), cols: idx.len(), data }
    }

    /// Submatrix on the given rows and columns (both sorted ascending).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (i, &c) in cols.iter().enumerate() {
            pos[c] = i;
        }
        let data = rows
            .iter()
            .map(|&r| {
                self.data[r]
                    .iter()
                    .filter(|(c, _)| pos[*c] != usize::MAX)
                    .map(|(c, v)| (pos[*c], v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Rows stacked below one another.
    pub fn vstack(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, o.cols, "column counts differ");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        SparseMatrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// `None` if `p` divides a denominator.
    pub fn to_mod(&self, p: u64) -> Option<ModMatrix> {
        let mut m = ModMatrix::zeros(p, self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                m.data[r * self.cols + c] = v.mod_p(p)?;
            }
        }
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_round_trip_and_product() {
        let a = Matrix::from_i64_rows(&[vec![0, 2, 0], vec![1, 0, -1]]);
        let b = Matrix::from_i64_rows(&[vec![1, 0], vec![0, 3], vec![5, 0]]);
        let sa = SparseMatrix::from_dense(&a);
        assert_eq!(sa.to_dense(), a);
        assert_eq!(sa.mul(&SparseMatrix::from_dense(&b)).to_dense(), a.mul(&b));
        assert_eq!(sa.transpose().to_dense(), a.transpose());
        assert_eq!(sa.nnz(), 3);
    }

    #[test]
    fn kron_matches_definition() {
        let a = Matrix::from_i64_rows(&[vec![1, 2], vec![0, 1]]);
        let b = Matrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        let k = SparseMatrix::from_dense(&a).kron(&SparseMatrix::from_dense(&b)).to_dense();
        for i in 0..2 {
            for j in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        assert_eq!(k.get(i * 2 + r, j * 2 + s), &(a.get(i, j) * b.get(r, s)));
                    }
                }
            }
        }
    }

    #[test]
    fn triplets_merge_and_cancel() {
        let m = SparseMatrix::from_triplets(
            2,
            2,
            vec![
                (0, 1, Rational::one()),
                (0, 1, -Rational::one()),
                (1, 0, Rational::new(1, 2)),
                (1, 0, Rational::new(1, 2)),
            ],
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), Rational::one());
    }
}
