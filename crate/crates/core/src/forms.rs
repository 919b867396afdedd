//! Alternating k-forms on R^n with dense coefficients over increasing index tuples.

use serde::{Deserialize, Serialize};

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("ambient dimensions differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("contraction needs a form of degree at least 2, got {0}")]
    DegreeTooLow(usize),
    #[error("expected a form of degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("index tuple {0:?} is not strictly increasing within 1..=n")]
    BadIndex(Vec<usize>),
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All strictly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Lexicographic rank of a strictly increasing tuple among `k`-subsets of `0..n`.
pub fn tuple_index(n: usize, t: &[usize]) -> usize {
    let k = t.len();
    let mut idx = 0;
    let mut prev = 0;
    for (i, &v) in t.iter().enumerate() {
        for skip in prev..v {
            idx += binomial(n - skip - 1, k - i - 1);
        }
        prev = v + 1;
    }
    idx
}

/// Sorts `t` and returns the permutation sign, or `None` on a repeated index.
pub fn sort_with_sign(t: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = t.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// An alternating `k`-form on R^n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KForm {
    n: usize,
    k: usize,
    coeffs: Vec<Rational>,
}

impl KForm {
    pub fn zero(n: usize, k: usize) -> Self {
        KForm { n, k, coeffs: vec![Rational::zero(); binomial(n, k)] }
    }

    /// Panics if `coeffs.len() != C(n, k)`.
    pub fn from_coeffs(n: usize, k: usize, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), binomial(n, k), "coefficient count must be C(n,k)");
        KForm { n, k, coeffs }
    }

    /// The 1-form dual to the vector `v`.
    pub fn from_vector(v: &[Rational]) -> Self {
        KForm { n: v.len(), k: 1, coeffs: v.to_vec() }
    }

    /// `e_{t_1} ∧ … ∧ e_{t_k}` for a 0-based index tuple in any order.
    pub fn basis(n: usize, t: &[usize]) -> Result<Self, FormError> {
        let mut f = Self::zero(n, t.len());
        let (s, sign) = sort_with_sign(t).ok_or_else(|| FormError::BadIndex(t.to_vec()))?;
        if s.last().is_some_and(|&m| m >= n) {
            return Err(FormError::BadIndex(t.to_vec()));
        }
        f.coeffs[tuple_index(n, &s)] = Rational::from_int(sign as i64);
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Coefficient at a strictly increasing tuple.
    pub fn coeff(&self, t: &[usize]) -> &Rational {
        &self.coeffs[tuple_index(self.n, t)]
    }

    pub fn set_coeff(&mut self, t: &[usize], v: Rational) {
        let i = tuple_index(self.n, t);
        self.coeffs[i] = v;
    }

    /// Value on basis vectors `e_{t_1}, …, e_{t_k}` in any order.
    pub fn eval_basis(&self, t: &[usize]) -> Rational {
        assert_eq!(t.len(), self.k, "wrong number of arguments");
        match sort_with_sign(t) {
            None => Rational::zero(),
            Some((s, sign)) => {
                let c = self.coeff(&s);
                if sign < 0 {
                    -c
                } else {
                    c.clone()
                }
            }
        }
    }

    /// Value on arbitrary vectors, as `Σ_I c_I det(v_j[i])_{i∈I}`.
    pub fn eval(&self, vs: &[&[Rational]]) -> Rational {
        assert_eq!(vs.len(), self.k, "wrong number of arguments");
        let mut acc = Rational::zero();
        for (t, c) in combinations(self.n, self.k).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let m: Vec<Vec<Rational>> =
                t.iter().map(|&i| vs.iter().map(|v| v[i].clone()).collect()).collect();
            acc += &(c * &det(m));
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.n, self.k), (o.n, o.k), "form shapes differ");
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        KForm { n: self.n, k: self.k, coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        KForm { n: self.n, k: self.k, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `Σ_{I increasing} S_I S'_I`.
    pub fn inner(&self, o: &Self) -> Rational {
        assert_eq!((self.n, self.k), (o.n, o.k), "form shapes differ");
        self.coeffs
            .iter()
            .zip(&o.coeffs)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Interior product with a vector in the first slot.
    pub fn insert(&self, x: &[Rational]) -> KForm {
        assert!(self.k >= 1, "cannot insert into a 0-form");
        let mut out = KForm::zero(self.n, self.k - 1);
        for (t, c) in combinations(self.n, self.k).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            for (pos, &i) in t.iter().enumerate() {
                if x[i].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = t.iter().enumerate().filter(|e| e.0 != pos).map(|e| *e.1).collect();
                let v = &x[i] * c;
                let idx = tuple_index(self.n, &rest);
                if pos % 2 == 0 {
                    out.coeffs[idx] += &v;
                } else {
                    out.coeffs[idx] -= &v;
                }
            }
        }
        out
    }

    /// `self ∧ v` for a vector `v`.
    pub fn wedge_vector(&self, v: &[Rational]) -> KForm {
        let k = self.k;
        let coeffs = combinations(self.n, k + 1)
            .iter()
            .map(|t| {
                let mut acc = Rational::zero();
                for s in 0..=k {
                    if v[t[s]].is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> =
                        t.iter().enumerate().filter(|e| e.0 != s).map(|e| *e.1).collect();
                    let term = self.coeff(&rest) * &v[t[s]];
                    if (k - s) % 2 == 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
                acc
            })
            .collect();
        KForm::from_coeffs(self.n, k + 1, coeffs)
    }
}

fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip().unwrap();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for j in c..n {
                let v = &f * &m[c][j];
                m[r][j] -= &v;
            }
        }
    }
    d
}

/// `X ∧ Y` with `(X∧Y)(Z,W) = ⟨X,Z⟩⟨Y,W⟩ − ⟨X,W⟩⟨Y,Z⟩`.
pub fn wedge(x: &[Rational], y: &[Rational]) -> Result<KForm, FormError> {
    if x.len() != y.len() {
        return Err(FormError::DimensionMismatch(x.len(), y.len()));
    }
    let n = x.len();
    let coeffs = combinations(n, 2)
        .iter()
        .map(|t| &x[t[0]] * &y[t[1]] - &x[t[1]] * &y[t[0]])
        .collect();
    Ok(KForm { n, k: 2, coeffs })
}

/// `(S ⌟ T)(X…) = Σ_{i<j} S(e_i,e_j) T(e_i,e_j,X…)`.
pub fn contract2(s: &KForm, t: &KForm) -> Result<KForm, FormError> {
    if s.n != t.n {
        return Err(FormError::DimensionMismatch(s.n, t.n));
    }
    if s.k != 2 {
        return Err(FormError::WrongDegree { expected: 2, got: s.k });
    }
    if t.k < 2 {
        return Err(FormError::DegreeTooLow(t.k));
    }
    let n = s.n;
    let mut out = KForm::zero(n, t.k - 2);
    let pairs = combinations(n, 2);
    for (rest, slot) in combinations(n, t.k - 2).iter().zip(out.coeffs.iter_mut()) {
        let mut acc = Rational::zero();
        for (pair, sc) in pairs.iter().zip(&s.coeffs) {
            if sc.is_zero() || rest.contains(&pair[0]) || rest.contains(&pair[1]) {
                continue;
            }
            let mut idx = pair.clone();
            idx.extend_from_slice(rest);
            let v = t.eval_basis(&idx);
            if !v.is_zero() {
                acc += &(sc * &v);
            }
        }
        *slot = acc;
    }
    Ok(out)
}

/// Wire form: `{"n","k","terms":[{"idx":[1-based],"c":"p/q"}]}`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct KFormJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TermJson {
    pub idx: Vec<usize>,
    pub c: Rational,
}

impl KForm {
    pub fn to_json(&self) -> KFormJson {
        let terms = combinations(self.n, self.k)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| TermJson { idx: t.iter().map(|i| i + 1).collect(), c: c.clone() })
            .collect();
        KFormJson { n: self.n, k: self.k, terms }
    }

    pub fn from_json(j: &KFormJson) -> Result<Self, FormError> {
        let mut f = KForm::zero(j.n, j.k);
        for term in &j.terms {
            let ok = term.idx.len() == j.k
                && term.idx.iter().all(|&i| i >= 1 && i <= j.n)
                && term.idx.windows(2).all(|w| w[0] < w[1]);
            if !ok {
                return Err(FormError::BadIndex(term.idx.clone()));
            }
            let t: Vec<usize> = term.idx.iter().map(|i| i - 1).collect();
            let i = tuple_index(j.n, &t);
            f.coeffs[i] += &term.c;
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    }

    #[test]
    fn tuple_indexing_is_lexicographic() {
        for (n, k) in [(16, 3), (7, 2), (5, 5), (6, 0), (16, 4)] {
            let all = combinations(n, k);
            assert_eq!(all.len(), binomial(n, k));
            for (i, t) in all.iter().enumerate() {
                assert_eq!(tuple_index(n, t), i);
            }
        }
    }

    #[test]
    fn wedge_examples() {
        let w = wedge(&e(4, 0), &e(4, 1)).unwrap();
        assert_eq!(w.coeff(&[0, 1]), &Rational::one());
        assert_eq!(w.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
        let x = vec![Rational::from_int(2), Rational::new(1, 3), Rational::zero()];
        assert!(wedge(&x, &x).unwrap().is_zero());
        assert!(wedge(&x, &e(4, 0)).is_err());
    }

    #[test]
    fn contraction_examples() {
        let s = wedge(&e(5, 0), &e(5, 1)).unwrap();
        let t = KForm::basis(5, &[0, 1, 2]).unwrap();
        assert_eq!(contract2(&s, &t).unwrap(), KForm::from_vector(&e(5, 2)));
        let u = KForm::basis(5, &[2, 3, 4]).unwrap();
        assert!(contract2(&s, &u).unwrap().is_zero());
        assert_eq!(contract2(&s, &KForm::zero(5, 1)), Err(FormError::DegreeTooLow(1)));
        // For 2-forms the contraction is the inner product.
        let a = KForm::from_coeffs(4, 2, (1..=6).map(Rational::from).collect());
        let b = KForm::from_coeffs(4, 2, (0..6).map(|i| Rational::new(i - 2, 3)).collect());
        assert_eq!(contract2(&a, &b).unwrap().coeffs()[0], a.inner(&b));
    }

    #[test]
    fn evaluation_and_insertion_agree() {
        let t = KForm::from_coeffs(5, 3, (0..10).map(|i| Rational::new(i * i - 7, 2)).collect());
        let x: Vec<Rational> = (0..5).map(|i| Rational::new(i + 1, 3)).collect();
        let y: Vec<Rational> = (0..5).map(|i| Rational::from_int(2 - i)).collect();
        let z = e(5, 3);
        let direct = t.eval(&[&x, &y, &z]);
        let via = t.insert(&x).insert(&y).eval(&[&z]);
        assert_eq!(direct, via);
        assert_eq!(t.eval_basis(&[2, 0, 1]), t.coeff(&[0, 1, 2]).clone());
        assert_eq!(t.eval_basis(&[1, 0, 2]), -t.coeff(&[0, 1, 2]));
        assert!(t.eval(&[&x, &x, &y]).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let t = KForm::from_coeffs(4, 2, (0..6).map(|i| Rational::new(i - 3, 2)).collect());
        let j = serde_json::to_string(&t.to_json()).unwrap();
        let back = KForm::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, t);
        let bad = KFormJson {
            n: 4,
            k: 2,
            terms: vec![TermJson { idx: vec![2, 1], c: Rational::one() }],
        };
        assert!(KForm::from_json(&bad).is_err());
    }
}
