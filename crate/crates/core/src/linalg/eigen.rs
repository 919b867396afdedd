//! Simultaneous eigenspaces of commuting operators with Gaussian-rational spectra.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use super::matrix::Matrix;
use super::modular::{mul_mod, random_primes, root_multiplicity, sqrt_minus_one};
use super::sparse::SparseMatrix;
use super::LinalgError;
use crate::scalar::{Field, GaussRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointEigenspace {
    pub eigenvalues: Vec<GaussRational>,
    /// Columns span the eigenspace.
    pub basis: Matrix<GaussRational>,
}

/// Kernel basis of a dense matrix over any exact field (reduced row echelon form).
pub fn nullspace_dense<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let x = a.get(p, j).clone();
                let y = a.get(r, j).clone();
                a.set(p, j, y);
                a.set(r, j, x);
            }
        }
        let inv = a.get(r, c).inv().unwrap();
        for j in c..cols {
            let v = a.get(r, j).mul_ref(&inv);
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..cols {
                if a.get(r, j).is_zero() {
                    continue;
                }
                let v = a.get(i, j).sub_ref(&f.mul_ref(a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![T::zero(); cols];
            x[f] = T::one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = a.get(i, f).neg_ref();
            }
            x
        })
        .collect()
}

/// Minimal polynomial of `v` under `apply`, monic, lowest degree first.
pub fn krylov_minpoly<T: Field>(apply: impl Fn(&[T]) -> Vec<T>, v: Vec<T>) -> Vec<T> {
    let n = v.len();
    if v.iter().all(Field::is_zero) {
        return vec![T::one()];
    }
    let mut seq = vec![v];
    loop {
        let next = apply(seq.last().unwrap());
        seq.push(next);
        let m = Matrix::from_columns(n, &seq);
        if let Some(k) = nullspace_dense(&m).into_iter().next() {
            let lead = k.last().unwrap().inv().expect("Krylov relation must involve the newest vector");
            return k.iter().map(|c| c.mul_ref(&lead)).collect();
        }
    }
}

fn eval(poly: &[GaussRational], x: &GaussRational) -> GaussRational {
    poly.iter().rev().fold(GaussRational::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
}

fn deflate(poly: &[GaussRational], r: &GaussRational) -> Vec<GaussRational> {
    let deg = poly.len() - 1;
    let mut q = vec![GaussRational::zero(); deg];
    let mut acc = GaussRational::zero();
    for i in (1..=deg).rev() {
        acc = acc.mul_ref(r).add_ref(&poly[i]);
        q[i - 1] = acc.clone();
    }
    q
}

/// All roots of `poly` (lowest degree first) provided they are Gaussian
/// rationals; roots are located numerically and then confirmed exactly.
pub fn gaussian_roots(poly: &[GaussRational]) -> Result<Vec<GaussRational>, LinalgError> {
    let deg = poly.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    // Common denominator: every root times `den` is a Gaussian integer.
    let lead = poly[deg].inv().ok_or(LinalgError::NotSplit)?;
    let monic: Vec<GaussRational> = poly.iter().map(|c| c.mul_ref(&lead)).collect();
    let mut den = num_bigint::BigInt::from(1);
    for c in &monic {
        for part in [&c.re, &c.im] {
            den = num_integer::Integer::lcm(&den, &part.denom());
        }
    }
    let approx = durand_kerner(&monic);
    let mut roots = Vec::new();
    let mut rest = monic.clone();
    for (re, im) in approx {
        let d = den.to_f64().unwrap_or(f64::MAX);
        let round = |v: f64| {
            let s = (v * d).round();
            if !s.is_finite() || s.abs() > 9.0e15 {
                return None;
            }
            Some(Rational::from_big(num_bigint::BigInt::from(s as i64), den.clone()))
        };
        let (Some(a), Some(b)) = (round(re), round(im)) else {
            return Err(LinalgError::NotSplit);
        };
        let r = GaussRational::new(a, b);
        if rest.len() > 1 && eval(&rest, &r).is_zero() {
            rest = deflate(&rest, &r);
            roots.push(r);
        }
    }
    if roots.len() != deg {
        return Err(LinalgError::NotSplit);
    }
    Ok(roots)
}

fn durand_kerner(monic: &[GaussRational]) -> Vec<(f64, f64)> {
    let deg = monic.len() - 1;
    let c: Vec<(f64, f64)> = monic.iter().map(|z| (z.re.to_f64(), z.im.to_f64())).collect();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let n = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
    };
    let bound = 1.0 + c[..deg].iter().map(|z| z.0.hypot(z.1)).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..deg)
        .map(|k| {
            let t = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64;
            (bound * 0.5 * t.cos(), bound * 0.5 * t.sin())
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut num = c[deg];
            for k in (0..deg).rev() {
                num = mul(num, z[i]);
                num = (num.0 + c[k].0, num.1 + c[k].1);
            }
            let mut den = (1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    den = mul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let step = div(num, den);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            moved = moved.max(step.0.hypot(step.1));
        }
        if moved < 1e-14 * bound {
            break;
        }
    }
    z
}

fn commute_check(ops: &[Matrix<GaussRational>]) -> Result<(), LinalgError> {
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if !ops[i].commutator(&ops[j]).is_zero() {
                return Err(LinalgError::NonCommuting(i, j));
            }
        }
    }
    Ok(())
}

fn random_vector<T: Field, R: Rng>(rng: &mut R, n: usize) -> Vec<T> {
    (0..n).map(|_| T::from_i64(rng.gen_range(-5..=5))).collect()
}

/// Distinct eigenvalues of a diagonalizable operator, from the Krylov
/// polynomials of two random vectors.
fn spectrum<T: Field, R: Rng>(
    n: usize,
    apply: &(dyn Fn(&[T]) -> Vec<T> + Sync),
    lift: impl Fn(&T) -> GaussRational,
    rng: &mut R,
) -> Result<Vec<GaussRational>, LinalgError> {
    let mut all: Vec<GaussRational> = Vec::new();
    for _ in 0..2 {
        let mp = krylov_minpoly(apply, random_vector::<T, R>(rng, n));
        let lifted: Vec<GaussRational> = mp.iter().map(&lift).collect();
        let roots = gaussian_roots(&lifted)?;
        for (i, r) in roots.iter().enumerate() {
            if roots[..i].contains(r) {
                return Err(LinalgError::NotDiagonalizable);
            }
            if !all.contains(r) {
                all.push(r.clone());
            }
        }
    }
    Ok(all)
}

/// Simultaneous eigenspace decomposition of commuting dense operators.
pub fn joint_eigenspaces(
    ops: &[Matrix<GaussRational>],
) -> Result<Vec<JointEigenspace>, LinalgError> {
    let Some(first) = ops.first() else {
        return Err(LinalgError::Empty);
    };
    let n = first.rows();
    if ops.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(LinalgError::ShapeMismatch);
    }
    commute_check(ops)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(crate::seed());
    let mut spaces = vec![JointEigenspace { eigenvalues: Vec::new(), basis: Matrix::identity(n) }];
    for op in ops {
        let apply = |v: &[GaussRational]| op.mul_vec(v);
        let roots = spectrum(n, &apply, |z| z.clone(), &mut rng)?;
        let mut next = Vec::new();
        for sp in spaces {
            let img = op.mul(&sp.basis);
            let mut found = 0;
            for r in &roots {
                let shifted = img.sub(&sp.basis.scale(r));
                let ker = nullspace_dense(&shifted);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let coeff = Matrix::from_columns(sp.basis.cols(), &ker);
                let mut vals = sp.eigenvalues.clone();
                vals.push(r.clone());
                next.push(JointEigenspace { eigenvalues: vals, basis: sp.basis.mul(&coeff) });
            }
            if found != sp.basis.cols() {
                return Err(LinalgError::NotDiagonalizable);
            }
        }
        spaces = next;
    }
    Ok(spaces)
}

/// Dimensions of the joint eigenspaces of commuting sparse rational operators.
///
/// Candidate eigenvalues per operator come from exact Krylov polynomials.
/// Multiplicities are read off the characteristic polynomial, modulo a prime
/// `p ≡ 1 (mod 4)`, of a generic combination `Σ c_k A_k` restricted to each
/// connected block of the operators' common sparsity pattern. The result is
/// accepted only when every block's multiplicities add up to its size.
pub fn joint_eigenspace_dims(
    ops: &[SparseMatrix],
    seed: u64,
) -> Result<BTreeMap<Vec<GaussRational>, usize>, LinalgError> {
    let Some(first) = ops.first() else {
        return Err(LinalgError::Empty);
    };
    let n = first.rows();
    if ops.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(LinalgError::ShapeMismatch);
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if !ops[i].commutator(&ops[j]).is_zero() {
                return Err(LinalgError::NonCommuting(i, j));
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut spectra = Vec::new();
    for op in ops {
        let apply = |v: &[Rational]| op.mul_vec(v);
        spectra.push(spectrum(n, &apply, |q| GaussRational::real(q.clone()), &mut rng)?);
    }
    let mut tuples: Vec<Vec<GaussRational>> = vec![Vec::new()];
    for s in &spectra {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                s.iter().map(move |r| {
                    let mut u = t.clone();
                    u.push(r.clone());
                    u
                })
            })
            .collect();
    }
    let blocks = sparsity_blocks(ops, n);
    'primes: for attempt in 0..8u64 {
        let p = random_primes(&mut rng, 1, true)[0];
        let ip = sqrt_minus_one(p);
        let base = 2 + attempt as i64;
        let coeffs: Vec<Rational> = (0..ops.len())
            .map(|k| Rational::from_int(base.pow(k as u32) * (1 + 7 * k as i64)))
            .collect();
        let mut keys = Vec::with_capacity(tuples.len());
        for t in &tuples {
            let mut re = Rational::zero();
            let mut im = Rational::zero();
            for (c, z) in coeffs.iter().zip(t) {
                re += &(c * &z.re);
                im += &(c * &z.im);
            }
            let (Some(a), Some(b)) = (re.mod_p(p), im.mod_p(p)) else {
                continue 'primes;
            };
            keys.push((a + mul_mod(b, ip, p)) % p);
        }
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != keys.len() {
            continue;
        }
        let combo = ops
            .iter()
            .zip(&coeffs)
            .fold(SparseMatrix::zeros(n, n), |acc, (op, c)| acc.axpy(c, op));
        let counts: Result<Vec<Vec<usize>>, LinalgError> = blocks
            .par_iter()
            .map(|idx| {
                let sub = combo.restrict(idx).to_mod(p).ok_or(LinalgError::BadPrime)?;
                let cp = sub.charpoly();
                let mult: Vec<usize> = keys.iter().map(|&k| root_multiplicity(&cp, k, p)).collect();
                if mult.iter().sum::<usize>() != idx.len() {
                    return Err(LinalgError::NotSplit);
                }
                Ok(mult)
            })
            .collect();
        let counts = match counts {
            Ok(c) => c,
            Err(LinalgError::BadPrime) => continue,
            Err(e) => return Err(e),
        };
        let mut out = BTreeMap::new();
        for (ti, t) in tuples.iter().enumerate() {
            let d: usize = counts.iter().map(|c| c[ti]).sum();
            if d > 0 {
                out.insert(t.clone(), d);
            }
        }
        return Ok(out);
    }
    Err(LinalgError::BadPrime)
}

/// Connected components of the graph joining `i` and `j` whenever some
/// operator has a nonzero `(i, j)` entry; each component is invariant.
fn sparsity_blocks(ops: &[SparseMatrix], n: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for op in ops {
        for r in 0..n {
            for (c, _) in op.row(r) {
                let (a, b) = (find(&mut parent, r), find(&mut parent, *c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussRational {
        GaussRational::new(Rational::from_int(re), Rational::from_int(im))
    }

    #[test]
    fn identity_has_one_space() {
        let sp = joint_eigenspaces(&[Matrix::identity(3)]).unwrap();
        assert_eq!(sp.len(), 1);
        assert_eq!(sp[0].eigenvalues, vec![g(1, 0)]);
        assert_eq!(sp[0].basis.cols(), 3);
    }

    #[test]
    fn rotation_generator() {
        let j = Matrix::from_rows(vec![vec![g(0, 0), g(-1, 0)], vec![g(1, 0), g(0, 0)]]);
        let sp = joint_eigenspaces(&[j.clone()]).unwrap();
        let mut vals: Vec<String> = sp.iter().map(|s| s.eigenvalues[0].to_string()).collect();
        vals.sort();
        assert_eq!(vals, vec!["-1i", "1i"]);
        for s in &sp {
            assert_eq!(s.basis.cols(), 1);
            let v = s.basis.column(0);
            let jv = j.mul_vec(&v);
            let lv: Vec<_> = v.iter().map(|x| x.mul_ref(&s.eigenvalues[0])).collect();
            assert_eq!(jv, lv);
        }
    }

    #[test]
    fn non_commuting_rejected() {
        let a = Matrix::from_rows(vec![vec![g(0, 0), g(1, 0)], vec![g(0, 0), g(0, 0)]]);
        let b = a.transpose();
        assert_eq!(joint_eigenspaces(&[a, b]), Err(LinalgError::NonCommuting(0, 1)));
    }

    #[test]
    fn roots_of_product_polynomial() {
        // (x − 1/2)(x + 3i)(x − 2 + i/3)
        let roots = [
            GaussRational::real(Rational::new(1, 2)),
            g(0, -3),
            GaussRational::new(Rational::from_int(2), Rational::new(-1, 3)),
        ];
        let mut poly = vec![GaussRational::one()];
        for r in &roots {
            let mut next = vec![GaussRational::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = next[i + 1].add_ref(c);
                next[i] = next[i].sub_ref(&c.mul_ref(r));
            }
            poly = next;
        }
        let mut found = gaussian_roots(&poly).unwrap();
        found.sort_by_key(|z| z.to_string());
        let mut want = roots.to_vec();
        want.sort_by_key(|z| z.to_string());
        assert_eq!(found, want);
        // x^2 − 2 has no Gaussian-rational roots.
        assert_eq!(gaussian_roots(&[g(-2, 0), g(0, 0), g(1, 0)]), Err(LinalgError::NotSplit));
    }

    #[test]
    fn modular_dims_match_exact_on_small_case() {
        let rot = |a: usize, b: usize, n: usize| {
            let mut m = Matrix::<Rational>::zeros(n, n);
            m.set(a, b, Rational::from_int(-1));
            m.set(b, a, Rational::one());
            m
        };
        let ops = [rot(0, 1, 4), rot(2, 3, 4).scale(&Rational::from_int(2))];
        let dims = joint_eigenspace_dims(
            &ops.iter().map(SparseMatrix::from_dense).collect::<Vec<_>>(),
            7,
        )
        .unwrap();
        assert_eq!(dims.len(), 4);
        assert!(dims.values().all(|&d| d == 1));
        assert!(dims.contains_key(&vec![g(0, 1), g(0, 0)]));
        assert!(dims.contains_key(&vec![g(0, 0), g(0, -2)]));
    }
}
