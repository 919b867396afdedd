//! Arithmetic and elimination over prime fields with `p < 2^31`.

use rand::Rng;
use rayon::prelude::*;

use super::matrix::Matrix;
use crate::scalar::Rational;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct random primes in `(2^30, 2^31)`, optionally restricted to `p ≡ 1 mod 4`.
pub fn random_primes<R: Rng>(rng: &mut R, count: usize, one_mod_four: bool) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = rng.gen_range((1u64 << 30) + 1..(1u64 << 31)) | 1;
        if one_mod_four && c % 4 != 1 {
            continue;
        }
        if is_prime(c) && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// A square root of −1 modulo `p ≡ 1 (mod 4)`.
pub fn sqrt_minus_one(p: u64) -> u64 {
    assert!(p % 4 == 1, "p must be 1 mod 4");
    for a in 2..p {
        // a^((p-1)/2) = −1 for a non-residue; then a^((p-1)/4) squares to −1.
        if pow_mod(a, (p - 1) / 2, p) == p - 1 {
            return pow_mod(a, (p - 1) / 4, p);
        }
    }
    unreachable!("no quadratic non-residue")
}

/// Precomputed Barrett constant for fast reduction of values below `p^2`.
#[derive(Clone, Copy)]
struct Barrett {
    p: u64,
    m: u128,
}

impl Barrett {
    fn new(p: u64) -> Self {
        Barrett { p, m: (u64::MAX / p) as u128 }
    }

    #[inline]
    fn reduce(self, x: u64) -> u64 {
        let q = ((x as u128 * self.m) >> 64) as u64;
        let mut r = x - q.wrapping_mul(self.p);
        while r >= self.p {
            r -= self.p;
        }
        r
    }
}

/// Dense matrix over `Z/p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

/// Result of modular row reduction.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    pub rank: usize,
    /// `(row, col)` of each pivot in the original matrix.
    pub pivots: Vec<(usize, usize)>,
}

impl ModMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        ModMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    /// `None` if `p` divides some denominator.
    pub fn from_rational(m: &Matrix<Rational>, p: u64) -> Option<Self> {
        let data = m
            .data()
            .par_iter()
            .map(|x| x.mod_p(p))
            .collect::<Option<Vec<_>>>()?;
        Some(ModMatrix { p, rows: m.rows(), cols: m.cols(), data })
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    /// Row reduction; returns rank and the pivot positions in original indices.
    pub fn echelon(&self) -> ModEchelon {
        let p = self.p;
        let br = Barrett::new(p);
        let cols = self.cols;
        let mut rows: Vec<(usize, Vec<u64>)> = (0..self.rows)
            .map(|r| (r, self.data[r * cols..(r + 1) * cols].to_vec()))
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..cols {
            if top == rows.len() {
                break;
            }
            let Some(pr) = (top..rows.len()).find(|&r| rows[r].1[c] != 0) else {
                continue;
            };
            rows.swap(top, pr);
            let (head, tail) = rows.split_at_mut(top + 1);
            let pivot_row = &mut head[top].1;
            let inv = inv_mod(pivot_row[c], p);
            for v in pivot_row[c..].iter_mut() {
                *v = br.reduce(*v * inv);
            }
            let nz: Vec<(usize, u64)> = (c + 1..cols)
                .filter(|&j| pivot_row[j] != 0)
                .map(|j| (j, pivot_row[j]))
                .collect();
            let update = |row: &mut (usize, Vec<u64>)| {
                let f = row.1[c];
                if f == 0 {
                    return;
                }
                let neg = p - f;
                row.1[c] = 0;
                for &(j, v) in &nz {
                    let x = row.1[j] + br.reduce(neg * v);
                    row.1[j] = if x >= p { x - p } else { x };
                }
            };
            if tail.len() * nz.len() > 1 << 14 {
                tail.par_iter_mut().for_each(update);
            } else {
                tail.iter_mut().for_each(update);
            }
            pivots.push((head[top].0, c));
            top += 1;
        }
        ModEchelon { rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank
    }

    /// Characteristic polynomial of a square matrix via Hessenberg reduction.
    /// Coefficients are returned lowest degree first, monic.
    pub fn charpoly(&self) -> Vec<u64> {
        assert_eq!(self.rows, self.cols, "charpoly needs a square matrix");
        let n = self.rows;
        let p = self.p;
        let mut h = self.data.clone();
        let at = |r: usize, c: usize| r * n + c;
        for k in 0..n.saturating_sub(2) {
            let Some(piv) = (k + 1..n).find(|&r| h[at(r, k)] != 0) else {
                continue;
            };
            if piv != k + 1 {
                for c in 0..n {
                    h.swap(at(piv, c), at(k + 1, c));
                }
                for r in 0..n {
                    h.swap(at(r, piv), at(r, k + 1));
                }
            }
            let inv = inv_mod(h[at(k + 1, k)], p);
            for r in k + 2..n {
                let f = mul_mod(h[at(r, k)], inv, p);
                if f == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = mul_mod(f, h[at(k + 1, c)], p);
                    h[at(r, c)] = (h[at(r, c)] + p - v) % p;
                }
                for rr in 0..n {
                    let v = mul_mod(f, h[at(rr, r)], p);
                    h[at(rr, k + 1)] = (h[at(rr, k + 1)] + v) % p;
                }
            }
        }
        // Recurrence on leading principal submatrices of the Hessenberg form.
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let mut next = vec![0u64; m + 1];
            let prev = &polys[m - 1];
            let d = h[at(m - 1, m - 1)];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = (next[i + 1] + c) % p;
                next[i] = (next[i] + p - mul_mod(d, c, p)) % p;
            }
            let mut t = 1u64;
            for i in 1..m {
                t = mul_mod(t, h[at(m - i, m - i - 1)], p);
                let coef = mul_mod(t, h[at(m - i - 1, m - 1)], p);
                if coef == 0 {
                    continue;
                }
                for (j, &c) in polys[m - i - 1].iter().enumerate() {
                    next[j] = (next[j] + p - mul_mod(coef, c, p)) % p;
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

/// Multiplicity of `r` as a root of `poly` (lowest degree first) over `Z/p`.
pub fn root_multiplicity(poly: &[u64], r: u64, p: u64) -> usize {
    let mut cur = poly.to_vec();
    let mut mult = 0;
    while cur.len() > 1 {
        // Synthetic division by (x − r).
        let deg = cur.len() - 1;
        let mut q = vec![0u64; deg];
        let mut acc = 0u64;
        for i in (0..=deg).rev() {
            acc = (mul_mod(acc, r, p) + cur[i]) % p;
            if i > 0 {
                q[i - 1] = acc;
            }
        }
        if acc != 0 {
            break;
        }
        mult += 1;
        cur = q;
    }
    mult
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primes() {
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert!(!is_prime(1));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let ps = random_primes(&mut rng, 3, true);
        assert_eq!(ps.len(), 3);
        for p in ps {
            assert!(p > 1 << 30 && p < 1 << 31 && p % 4 == 1 && is_prime(p));
            let i = sqrt_minus_one(p);
            assert_eq!(mul_mod(i, i, p), p - 1);
        }
    }

    #[test]
    fn charpoly_of_companion() {
        // Companion matrix of x^3 − 2x^2 + 5x − 7.
        let p = 1_000_000_007;
        let mut m = ModMatrix::zeros(p, 3, 3);
        m.set(1, 0, 1);
        m.set(2, 1, 1);
        m.set(0, 2, 7);
        m.set(1, 2, p - 5);
        m.set(2, 2, 2);
        assert_eq!(m.charpoly(), vec![p - 7, 5, p - 2, 1]);
    }

    #[test]
    fn root_multiplicities() {
        let p = 101;
        // (x − 3)^2 (x + 1) = x^3 − 5x^2 + 3x + 9
        let poly = [9, 3, p - 5, 1];
        assert_eq!(root_multiplicity(&poly, 3, p), 2);
        assert_eq!(root_multiplicity(&poly, p - 1, p), 1);
        assert_eq!(root_multiplicity(&poly, 4, p), 0);
    }

    #[test]
    fn barrett_matches_modulo() {
        let p = 2_147_483_629;
        let b = Barrett::new(p);
        for x in [0u64, 1, p - 1, p, (p - 1) * (p - 1), 123_456_789_012_345] {
            assert_eq!(b.reduce(x), x % p);
        }
    }
}
