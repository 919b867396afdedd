//! Exact sparse elimination over Q with a replayable record of row operations.

use rayon::prelude::*;

use super::matrix::Matrix;
use super::sparse::{axpy_row, SparseMatrix, SparseRow};
use super::LinalgError;
use crate::scalar::{Field, Rational};

/// One pivot step: `row[t] -= f · row[pivot]` for each `(t, f)`.
#[derive(Clone, Debug)]
struct Step {
    pivot_row: usize,
    targets: Vec<(usize, Rational)>,
}

/// Row echelon form of `A` together with the operations that produced it.
#[derive(Clone, Debug)]
pub struct Factorization {
    rows: usize,
    cols: usize,
    steps: Vec<Step>,
    /// `(row, col)` pairs in elimination order; columns strictly increase.
    pivots: Vec<(usize, usize)>,
    /// Reduced pivot rows, indexed like `pivots`.
    upper: Vec<SparseRow>,
    /// Rows that reduced to zero.
    zero_rows: Vec<usize>,
}

/// Outcome of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Solved(Vec<Rational>),
    /// `y` with `yᵀA = 0` and `yᵀb ≠ 0`.
    Inconsistent(Vec<Rational>),
}

impl Solution {
    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            Solution::Solved(x) => Some(x),
            Solution::Inconsistent(_) => None,
        }
    }
}

impl Factorization {
    pub fn new(a: &SparseMatrix) -> Self {
        let mut rows: Vec<SparseRow> = a.row_data().to_vec();
        let mut active: Vec<usize> = (0..a.rows()).filter(|&r| !rows[r].is_empty()).collect();
        let mut zero_rows: Vec<usize> = (0..a.rows()).filter(|&r| rows[r].is_empty()).collect();
        let mut steps = Vec::new();
        let mut pivots = Vec::new();
        let mut upper = Vec::new();
        for c in 0..a.cols() {
            let cands: Vec<usize> =
                active.iter().copied().filter(|&r| rows[r][0].0 == c).collect();
            let Some(&p) = cands.iter().min_by_key(|&&r| (rows[r].len(), r)) else {
                continue;
            };
            let pivot = rows[p].clone();
            let inv = pivot[0].1.recip().unwrap();
            let others: Vec<usize> = cands.into_iter().filter(|&r| r != p).collect();
            let updated: Vec<(usize, Rational, SparseRow)> = others
                .par_iter()
                .map(|&t| {
                    let f = &rows[t][0].1 * &inv;
                    let row = axpy_row(&rows[t], &-&f, &pivot);
                    (t, f, row)
                })
                .collect();
            let mut targets = Vec::with_capacity(updated.len());
            for (t, f, row) in updated {
                debug_assert!(row.first().map_or(true, |e| e.0 > c));
                rows[t] = row;
                targets.push((t, f));
            }
            steps.push(Step { pivot_row: p, targets });
            pivots.push((p, c));
            upper.push(pivot);
            active.retain(|&r| r != p);
            let (live, dead): (Vec<usize>, Vec<usize>) =
                active.into_iter().partition(|&r| !rows[r].is_empty());
            active = live;
            zero_rows.extend(dead);
        }
        zero_rows.extend(active);
        zero_rows.sort_unstable();
        Factorization { rows: a.rows(), cols: a.cols(), steps, pivots, upper, zero_rows }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|p| p.1).collect()
    }

    fn replay(&self, b: &[Rational]) -> Vec<Rational> {
        let mut b = b.to_vec();
        for s in &self.steps {
            let bp = b[s.pivot_row].clone();
            if bp.is_zero() {
                continue;
            }
            for (t, f) in &s.targets {
                b[*t] -= &(f * &bp);
            }
        }
        b
    }

    /// Back substitution for pivot variables given fixed values of the rest.
    fn back_substitute(&self, rhs: &[Rational], x: &mut [Rational]) {
        for (k, (pr, pc)) in self.pivots.iter().enumerate().rev() {
            let row = &self.upper[k];
            let mut acc = rhs[*pr].clone();
            for (j, v) in &row[1..] {
                if !x[*j].is_zero() {
                    acc -= &(v * &x[*j]);
                }
            }
            x[*pc] = &acc / &row[0].1;
        }
    }

    pub fn solve(&self, b: &[Rational]) -> Solution {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let r = self.replay(b);
        if let Some(&bad) = self.zero_rows.iter().find(|&&z| !r[z].is_zero()) {
            return Solution::Inconsistent(self.certificate(bad));
        }
        let mut x = vec![Rational::zero(); self.cols];
        self.back_substitute(&r, &mut x);
        Solution::Solved(x)
    }

    /// Row combination reproducing zero row `z` of the echelon form.
    fn certificate(&self, z: usize) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.rows];
        y[z] = Rational::one();
        for s in self.steps.iter().rev() {
            let mut acc = Rational::zero();
            for (t, f) in &s.targets {
                if !y[*t].is_zero() {
                    acc += &(f * &y[*t]);
                }
            }
            if !acc.is_zero() {
                y[s.pivot_row] -= &acc;
            }
        }
        y
    }

    /// Exact kernel basis, one vector per non-pivot column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for (_, c) in &self.pivots {
            is_pivot[*c] = true;
        }
        let zero = vec![Rational::zero(); self.rows];
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                self.back_substitute(&zero, &mut x);
                x
            })
            .collect()
    }
}

/// Exact rank by sparse elimination.
pub fn rank_exact(m: &Matrix<Rational>) -> usize {
    Factorization::new(&SparseMatrix::from_dense(m)).rank()
}

/// Columns form an exact basis of the kernel of `m`.
pub fn nullspace(m: &Matrix<Rational>) -> Matrix<Rational> {
    let basis = Factorization::new(&SparseMatrix::from_dense(m)).nullspace();
    Matrix::from_columns(m.cols(), &basis)
}

/// Exact solution of `A x = b`, or an inconsistency certificate.
pub fn solve_least_structured(a: &Matrix<Rational>, b: &[Rational]) -> Solution {
    Factorization::new(&SparseMatrix::from_dense(a)).solve(b)
}

/// Checks a `Solution` against the system it claims to solve.
pub fn check_solution(a: &SparseMatrix, b: &[Rational], s: &Solution) -> bool {
    match s {
        Solution::Solved(x) => a.mul_vec(x) == b,
        Solution::Inconsistent(y) => {
            let yta = a.transpose().mul_vec(y);
            let ytb: Rational = y.iter().zip(b).map(|(u, v)| u * v).sum();
            yta.iter().all(Rational::is_zero) && !ytb.is_zero()
        }
    }
}

/// Dense Gauss-Jordan solve of a square system; `None` if singular.
pub fn solve_square<T: Field>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = a.rows();
    assert!(a.is_square() && b.len() == n, "shape mismatch in solve_square");
    let mut aug = a.hstack(&Matrix::from_columns(n, &[b.to_vec()]));
    let x = gauss_jordan(&mut aug, n)?;
    Some(x.column(0))
}

/// Inverse of a square matrix; `None` if singular.
pub fn inverse<T: Field>(a: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.rows();
    assert!(a.is_square(), "inverse of non-square matrix");
    let mut aug = a.hstack(&Matrix::identity(n));
    gauss_jordan(&mut aug, n)
}

fn gauss_jordan<T: Field>(aug: &mut Matrix<T>, n: usize) -> Option<Matrix<T>> {
    let w = aug.cols();
    for c in 0..n {
        let p = (c..n).find(|&r| !aug.get(r, c).is_zero())?;
        if p != c {
            for j in 0..w {
                let a = aug.get(p, j).clone();
                let b = aug.get(c, j).clone();
                aug.set(p, j, b);
                aug.set(c, j, a);
            }
        }
        let inv = aug.get(c, c).inv()?;
        for j in 0..w {
            let v = aug.get(c, j).mul_ref(&inv);
            aug.set(c, j, v);
        }
        for r in 0..n {
            if r == c || aug.get(r, c).is_zero() {
                continue;
            }
            let f = aug.get(r, c).clone();
            for j in 0..w {
                let v = aug.get(c, j);
                if v.is_zero() {
                    continue;
                }
                let nv = aug.get(r, j).sub_ref(&f.mul_ref(v));
                aug.set(r, j, nv);
            }
        }
    }
    let idx: Vec<usize> = (n..w).collect();
    Some(aug.select_columns(&idx))
}

/// Orthogonal projection of `v` onto the column span of `basis` under the dot product.
pub fn orthogonal_project(
    v: &[Rational],
    basis: &Matrix<Rational>,
) -> Result<Vec<Rational>, LinalgError> {
    assert_eq!(v.len(), basis.rows(), "vector length does not match basis");
    let bt = basis.transpose();
    let gram = bt.mul(basis);
    let rhs = bt.mul_vec(v);
    let coef = solve_square(&gram, &rhs).ok_or(LinalgError::DependentBasis)?;
    Ok(basis.mul_vec(&coef))
}
