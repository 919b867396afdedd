//! Weights of type B_r: dominance, the Weyl dimension formula, Freudenthal
//! multiplicities and Casimir eigenvalues, all with the standard dot product.

use std::collections::{BTreeMap, BTreeSet};

use crate::scalar::Rational;

use super::RepError;

pub type Weight = Vec<Rational>;

fn half() -> Rational {
    Rational::new(1, 2)
}

/// `ρ = (r − ½, r − 3/2, …, ½)`.
pub fn rho(r: usize) -> Weight {
    (0..r).map(|i| Rational::from_int((r - i) as i64) - half()).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn add(a: &[Rational], b: &[Rational]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Positive roots `e_i ± e_j (i<j)` and `e_i`.
pub fn positive_roots(r: usize) -> Vec<Weight> {
    let unit = |i: usize, s: i64| {
        let mut v = vec![Rational::zero(); r];
        v[i] = Rational::from_int(s);
        v
    };
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            out.push(add(&unit(i, 1), &unit(j, -1)));
            out.push(add(&unit(i, 1), &unit(j, 1)));
        }
    }
    for i in 0..r {
        out.push(unit(i, 1));
    }
    out
}

/// Entries all integral or all half-odd-integral.
pub fn is_integral(w: &[Rational]) -> bool {
    let two = Rational::from_int(2);
    if w.iter().any(|x| !(x * &two).is_integer()) {
        return false;
    }
    let ints = w.iter().filter(|x| x.is_integer()).count();
    ints == 0 || ints == w.len()
}

/// `λ₁ ≥ … ≥ λ_r ≥ 0` and integral.
pub fn is_dominant(w: &[Rational]) -> bool {
    is_integral(w)
        && w.windows(2).all(|p| p[0] >= p[1])
        && w.last().map_or(true, |x| x.signum() >= 0)
}

/// Representative in the dominant chamber (absolute values, sorted descending).
pub fn dominant_of(w: &[Rational]) -> Weight {
    let mut v: Weight = w.iter().map(Rational::abs).collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

pub fn weyl_dimension(lambda: &[Rational]) -> Result<u64, RepError> {
    if !is_dominant(lambda) {
        return Err(RepError::NotDominant(lambda.to_vec()));
    }
    let r = lambda.len();
    let rho = rho(r);
    let lr = add(lambda, &rho);
    let mut num = Rational::one();
    for a in positive_roots(r) {
        num = num * dot(&lr, &a) / dot(&rho, &a);
    }
    Ok(num.as_small().map(|(n, _)| n as u64).expect("Weyl dimension is a small integer"))
}

/// `⟨λ, λ + 2ρ⟩`.
pub fn casimir_value(lambda: &[Rational]) -> Rational {
    let two_rho: Weight = rho(lambda.len()).iter().map(|x| x * Rational::from_int(2)).collect();
    dot(lambda, &add(lambda, &two_rho))
}

/// Height of `λ − μ` in simple roots, `None` unless it is a nonnegative integer combination.
fn depth(lambda: &[Rational], mu: &[Rational]) -> Option<i64> {
    let mut partial = Rational::zero();
    let mut total = 0i64;
    for (l, m) in lambda.iter().zip(mu) {
        partial += &(l - m);
        if !partial.is_integer() || partial.signum() < 0 {
            return None;
        }
        total += partial.as_small()?.0;
    }
    Some(total)
}

fn dominant_below(lambda: &[Rational]) -> Vec<Weight> {
    fn rec(lambda: &[Rational], prefix: &mut Weight, cap: &Rational, out: &mut Vec<Weight>) {
        let i = prefix.len();
        if i == lambda.len() {
            if depth(lambda, prefix).is_some() {
                out.push(prefix.clone());
            }
            return;
        }
        let mut x = cap.clone();
        while x.signum() >= 0 {
            prefix.push(x.clone());
            rec(lambda, prefix, &x, out);
            prefix.pop();
            x -= &Rational::one();
        }
    }
    let mut out = Vec::new();
    if let Some(top) = lambda.first() {
        rec(lambda, &mut Vec::new(), top, &mut out);
    } else {
        out.push(Vec::new());
    }
    out
}

/// Multiplicities of the dominant weights of the irreducible module `V(λ)`.
pub fn dominant_multiplicities(lambda: &[Rational]) -> Result<BTreeMap<Weight, u64>, RepError> {
    if !is_dominant(lambda) {
        return Err(RepError::NotDominant(lambda.to_vec()));
    }
    let r = lambda.len();
    let rho = rho(r);
    let roots = positive_roots(r);
    let mut doms = dominant_below(lambda);
    doms.sort_by_key(|m| depth(lambda, m).unwrap());
    let lr = add(lambda, &rho);
    let top = dot(&lr, &lr);
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for mu in doms {
        if mu.as_slice() == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut acc = Rational::zero();
        for a in &roots {
            let mut nu = add(&mu, a);
            loop {
                let d = dominant_of(&nu);
                if depth(lambda, &d).is_none() {
                    break;
                }
                let m = mult.get(&d).copied().unwrap_or(0);
                acc += &(Rational::from_int(m as i64) * dot(&nu, a));
                nu = add(&nu, a);
            }
        }
        let mr = add(&mu, &rho);
        let value = Rational::from_int(2) * acc / (&top - dot(&mr, &mr));
        let m = value.as_small().filter(|&(_, d)| d == 1).map(|(n, _)| n);
        match m {
            Some(m) if m > 0 => {
                mult.insert(mu, m as u64);
            }
            _ => return Err(RepError::Freudenthal(mu)),
        }
    }
    Ok(mult)
}

/// The Weyl-group orbit (signed permutations) of `w`.
pub fn orbit(w: &[Rational]) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    let mut perm: Vec<usize> = (0..w.len()).collect();
    fn permute(k: usize, perm: &mut Vec<usize>, w: &[Rational], out: &mut BTreeSet<Weight>) {
        if k == perm.len() {
            let base: Weight = perm.iter().map(|&i| w[i].clone()).collect();
            for signs in 0u32..(1 << w.len()) {
                let v = base
                    .iter()
                    .enumerate()
                    .map(|(i, x)| if signs >> i & 1 == 1 { -x } else { x.clone() })
                    .collect();
                out.insert(v);
            }
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(k + 1, perm, w, out);
            perm.swap(k, i);
        }
    }
    permute(0, &mut perm, w, &mut out);
    out
}

/// Full weight multiset of `V(λ)`.
pub fn freudenthal_multiplicities(lambda: &[Rational]) -> Result<BTreeMap<Weight, u64>, RepError> {
    let mut out = BTreeMap::new();
    for (mu, m) in dominant_multiplicities(lambda)? {
        for w in orbit(&mu) {
            out.insert(w, m);
        }
    }
    Ok(out)
}

/// Parses a weight written with entries like `"3/2"`.
pub fn weight(entries: &[&str]) -> Weight {
    entries.iter().map(|s| s.parse().expect("weight entry")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64], den: i64) -> Weight {
        v.iter().map(|&x| Rational::new(x, den)).collect()
    }

    #[test]
    fn weyl_dimensions_of_named_weights() {
        assert_eq!(weyl_dimension(&w(&[1, 1, 1, 1], 2)).unwrap(), 16);
        assert_eq!(weyl_dimension(&w(&[1, 1, 1, 1], 1)).unwrap(), 126);
        assert_eq!(weyl_dimension(&w(&[3, 3, 3, 3], 2)).unwrap(), 672);
        assert_eq!(weyl_dimension(&w(&[1, 0, 0, 0], 1)).unwrap(), 9);
        assert_eq!(weyl_dimension(&w(&[1, 1, 0, 0], 1)).unwrap(), 36);
        assert_eq!(weyl_dimension(&w(&[1, 1, 1, 0], 1)).unwrap(), 84);
        assert!(weyl_dimension(&w(&[0, 1, 0, 0], 1)).is_err());
        assert!(weyl_dimension(&w(&[2, 1, 1, 1], 2)).is_err());
    }

    #[test]
    fn vector_and_spin_weights() {
        let v = freudenthal_multiplicities(&w(&[1, 0, 0, 0], 1)).unwrap();
        assert_eq!(v.len(), 9);
        assert!(v.values().all(|&m| m == 1));
        assert!(v.contains_key(&w(&[0, 0, 0, 0], 1)));
        let s = freudenthal_multiplicities(&w(&[1, 1, 1, 1], 2)).unwrap();
        assert_eq!(s.len(), 16);
        assert!(s.values().all(|&m| m == 1));
        let d = freudenthal_multiplicities(&w(&[1, 1, 1, 1], 1)).unwrap();
        assert_eq!(d.values().sum::<u64>(), 126);
        // Adjoint: zero weight has multiplicity equal to the rank.
        let adj = freudenthal_multiplicities(&w(&[1, 1, 0, 0], 1)).unwrap();
        assert_eq!(adj[&w(&[0, 0, 0, 0], 1)], 4);
    }

    #[test]
    fn freudenthal_totals_match_weyl_sweep() {
        let two = Rational::from_int(2);
        for den in [1i64, 2] {
            let top = if den == 1 { 2 } else { 3 };
            for a in 0..=top {
                for b in 0..=a {
                    for c in 0..=b {
                        for d in 0..=c {
                            let lam = w(&[a, b, c, d], den);
                            if den == 2 && [a, b, c, d].iter().any(|x| x % 2 == 0) {
                                continue;
                            }
                            assert!(lam.iter().all(|x| *x <= two));
                            let total: u64 =
                                freudenthal_multiplicities(&lam).unwrap().values().sum();
                            assert_eq!(total, weyl_dimension(&lam).unwrap(), "{lam:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn casimir_values() {
        assert_eq!(casimir_value(&w(&[1, 0, 0, 0], 1)), Rational::from_int(8));
        assert_eq!(casimir_value(&w(&[1, 1, 1, 1], 2)), Rational::from_int(9));
        assert_eq!(casimir_value(&w(&[1, 1, 0, 0], 1)), Rational::from_int(14));
        assert_eq!(casimir_value(&w(&[1, 1, 1, 0], 1)), Rational::from_int(18));
    }

    #[test]
    fn low_rank_sanity() {
        // B_1 = so(3): V(j) has dimension 2j + 1.
        for twice_j in 0..8i64 {
            let lam = vec![Rational::new(twice_j, 2)];
            assert_eq!(weyl_dimension(&lam).unwrap(), (twice_j + 1) as u64);
            assert_eq!(
                freudenthal_multiplicities(&lam).unwrap().values().sum::<u64>(),
                (twice_j + 1) as u64
            );
        }
    }
}
