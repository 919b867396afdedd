//! Rank over Q: multi-modular with a nonsingular-minor certificate, and a
//! fraction-free (Bareiss) oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rayon::prelude::*;

use super::matrix::Matrix;
use super::modular::{random_primes, ModMatrix};
use super::solve::Factorization;
use super::sparse::SparseMatrix;
use crate::scalar::Rational;

/// Evidence for a rank computed modulo several primes.
///
/// The `minor_rows × minor_cols` submatrix is nonsingular modulo each prime,
/// hence nonsingular over Q, so `rank` is a proven lower bound. It is proven
/// exact whenever `rank == min(rows, cols)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub primes: Vec<u64>,
    pub minor_rows: Vec<usize>,
    pub minor_cols: Vec<usize>,
    pub full: bool,
}

impl RankCertificate {
    /// Recomputes the rank of the certified minor by exact rational
    /// elimination.
    pub fn verify_minor(&self, m: &Matrix<Rational>) -> bool {
        let sub = m.select_rows(&self.minor_rows).select_columns(&self.minor_cols);
        Factorization::new(&SparseMatrix::from_dense(&sub)).rank() == self.rank
    }

    /// Re-checks that the certified minor is nonsingular modulo an independent
    /// prime `p`. A nonzero determinant modulo any prime not dividing a
    /// denominator is nonzero over Q, so success is an exact proof.
    pub fn verify_minor_mod(&self, m: &SparseMatrix, p: u64) -> bool {
        m.select(&self.minor_rows, &self.minor_cols)
            .to_mod(p)
            .is_some_and(|mm| mm.rank() == self.rank)
    }
}

const PRIMES: usize = 3;
const MAX_ROUNDS: usize = 4;

/// Multi-modular rank at three random primes in `(2^30, 2^31)`, seeded by `seed`.
///
/// A prime can only lower the rank, so rounds are repeated with fresh primes
/// until all three agree; after `MAX_ROUNDS` the largest value is kept.
pub fn rank_certified(m: &Matrix<Rational>, seed: u64) -> RankCertificate {
    certify(m.rows(), m.cols(), |p| ModMatrix::from_rational(m, p), seed)
}

/// [`rank_certified`] for a sparse matrix.
pub fn rank_certified_sparse(m: &SparseMatrix, seed: u64) -> RankCertificate {
    certify(m.rows(), m.cols(), |p| m.to_mod(p), seed)
}

fn certify(
    rows: usize,
    cols: usize,
    reduce: impl Fn(u64) -> Option<ModMatrix> + Sync,
    seed: u64,
) -> RankCertificate {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<RankCertificate> = None;
    for _ in 0..MAX_ROUNDS {
        let primes = random_primes(&mut rng, PRIMES, false);
        let results: Vec<Option<(u64, super::modular::ModEchelon)>> = primes
            .par_iter()
            .map(|&p| reduce(p).map(|mm| (p, mm.echelon())))
            .collect();
        let ok: Vec<(u64, super::modular::ModEchelon)> = results.into_iter().flatten().collect();
        if ok.is_empty() {
            continue;
        }
        let top = ok.iter().max_by_key(|e| e.1.rank).unwrap();
        let mut minor_rows: Vec<usize> = top.1.pivots.iter().map(|p| p.0).collect();
        let mut minor_cols: Vec<usize> = top.1.pivots.iter().map(|p| p.1).collect();
        minor_rows.sort_unstable();
        minor_cols.sort_unstable();
        let cert = RankCertificate {
            rank: top.1.rank,
            primes: ok.iter().map(|e| e.0).collect(),
            minor_rows,
            minor_cols,
            full: top.1.rank == rows.min(cols),
        };
        let agree = ok.len() == PRIMES && ok.iter().all(|e| e.1.rank == cert.rank);
        if agree {
            return cert;
        }
        if best.as_ref().map_or(true, |b| b.rank < cert.rank) {
            best = Some(cert);
        }
    }
    best.unwrap_or(RankCertificate {
        rank: 0,
        primes: Vec::new(),
        minor_rows: Vec::new(),
        minor_cols: Vec::new(),
        full: rows.min(cols) == 0,
    })
}

/// Rank over Q via the multi-modular path with the default seed.
pub fn rank(m: &Matrix<Rational>) -> usize {
    rank_certified(m, crate::seed()).rank
}

/// Fraction-free Gaussian elimination on the integer matrix obtained by
/// clearing row denominators.
pub fn rank_bareiss(m: &Matrix<Rational>) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[r][j] - &a[r][c] * &a[rank][j]) / &prev;
                a[r][j] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}
