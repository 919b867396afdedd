//! Reductive homogeneous spaces given by structure constants: natural
//! reductivity, canonical torsion, the intrinsic torsion Γ, and the built-in
//! S¹ × S¹⁵ = (S¹ × Spin(9))/Spin(7).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordSystem, DIM};
use crate::forms::{combinations, KForm};
use crate::linalg::solve::{inverse, solve_square};
use crate::linalg::{nullspace, Matrix};
use crate::rep::action::generators;
use crate::scalar::Rational;
use crate::torsion::{embed_three_form, GammaTensor, TorsionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomogeneousError {
    #[error("malformed space: {0}")]
    Shape(String),
    #[error("not naturally reductive at basis triple ({0}, {1}, {2})")]
    NotNaturallyReductive(usize, usize, usize),
    #[error("[X_{0}, ·]_n is not skew under the identification")]
    NotSkew(usize),
    #[error("no identification n ≅ R^16 supplied")]
    NoIdentification,
    #[error("identification is not an isometry onto R^16")]
    NotIsometry,
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
}

type Vector = Vec<Rational>;

/// `g = h ⊕ n` with `[h, n] ⊆ n`; bracket tables are indexed by basis positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductiveSpace {
    pub dim_h: usize,
    pub dim_n: usize,
    /// `[n_i, n_j]` as `dim_h + dim_n` coordinates (h-part first).
    pub bracket_nn: Vec<Vec<Vector>>,
    /// `[h_a, n_i]` as `dim_n` coordinates.
    pub bracket_hn: Vec<Vec<Vector>>,
    /// `[h_a, h_b]` as `dim_h` coordinates; needed only for the full Jacobi check.
    pub bracket_hh: Option<Vec<Vec<Vector>>>,
    pub metric_n: Matrix<Rational>,
    /// `16 × dim_n`; column `i` is the image of `n_i` in R^16.
    pub identification: Option<Matrix<Rational>>,
}

fn zero(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

fn axpy(acc: &mut [Rational], s: &Rational, v: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += &(s * b);
        }
    }
}

impl ReductiveSpace {
    pub fn validate(&self) -> Result<(), HomogeneousError> {
        let (h, n) = (self.dim_h, self.dim_n);
        let bad = |s: &str| Err(HomogeneousError::Shape(s.to_string()));
        if self.bracket_nn.len() != n
            || self.bracket_nn.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != h + n))
        {
            return bad("bracket_nn must be dim_n × dim_n vectors of length dim_h + dim_n");
        }
        if self.bracket_hn.len() != h
            || self.bracket_hn.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return bad("bracket_hn must be dim_h × dim_n vectors of length dim_n");
        }
        if let Some(hh) = &self.bracket_hh {
            if hh.len() != h || hh.iter().any(|r| r.len() != h || r.iter().any(|v| v.len() != h)) {
                return bad("bracket_hh must be dim_h × dim_h vectors of length dim_h");
            }
            for a in 0..h {
                for b in 0..h {
                    if hh[a][b].iter().zip(&hh[b][a]).any(|(x, y)| x != &-y) {
                        return bad("bracket_hh is not antisymmetric");
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.bracket_nn[i][j].iter().zip(&self.bracket_nn[j][i]).any(|(x, y)| x != &-y) {
                    return bad("bracket_nn is not antisymmetric");
                }
            }
        }
        if self.metric_n.rows() != n || self.metric_n.cols() != n || !self.metric_n.is_symmetric() {
            return bad("metric_n must be a symmetric dim_n × dim_n matrix");
        }
        if let Some(j) = &self.identification {
            if j.rows() != DIM || j.cols() != n {
                return bad("identification must be 16 × dim_n");
            }
        }
        Ok(())
    }

    fn dim(&self) -> usize {
        self.dim_h + self.dim_n
    }

    /// Bracket of two basis elements of `g`, h-basis first.
    fn bracket_basis(&self, x: usize, y: usize) -> Option<Vector> {
        let (h, d) = (self.dim_h, self.dim());
        let mut out = zero(d);
        match (x < h, y < h) {
            (true, true) => {
                let v = &self.bracket_hh.as_ref()?[x][y];
                out[..h].clone_from_slice(v);
            }
            (true, false) => out[h..].clone_from_slice(&self.bracket_hn[x][y - h]),
            (false, true) => {
                for (o, v) in out[h..].iter_mut().zip(&self.bracket_hn[y][x - h]) {
                    *o = -v;
                }
            }
            (false, false) => out.clone_from_slice(&self.bracket_nn[x - h][y - h]),
        }
        Some(out)
    }

    fn bracket_vec(&self, x: usize, v: &[Rational]) -> Option<Vector> {
        let mut out = zero(self.dim());
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.bracket_basis(x, k)?);
            }
        }
        Some(out)
    }

    /// Jacobi identity on every basis triple whose brackets are known. Returns
    /// the first failing triple and the number of triples checked.
    pub fn check_jacobi(&self) -> (Option<(usize, usize, usize)>, usize) {
        let d = self.dim();
        let triples: Vec<Vec<usize>> = combinations(d, 3)
            .into_iter()
            .filter(|t| self.bracket_hh.is_some() || t[0] >= self.dim_h)
            .collect();
        let count = triples.len();
        let bad = triples
            .par_iter()
            .find_first(|t| {
                let (x, y, z) = (t[0], t[1], t[2]);
                let jac = |a: usize, b: usize, c: usize| -> Vector {
                    self.bracket_vec(a, &self.bracket_basis(b, c).unwrap()).unwrap()
                };
                let (p, q, r) = (jac(x, y, z), jac(y, z, x), jac(z, x, y));
                p.iter().zip(&q).zip(&r).any(|((a, b), c)| !(a + b + c).is_zero())
            })
            .map(|t| (t[0], t[1], t[2]));
        (bad, count)
    }

    /// n-part of `[n_i, n_j]`.
    pub fn bracket_n(&self, i: usize, j: usize) -> &[Rational] {
        &self.bracket_nn[i][j][self.dim_h..]
    }

    fn g(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mv = self.metric_n.mul_vec(v);
        u.iter().zip(&mv).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalReductivity {
    pub naturally_reductive: bool,
    /// First basis triple violating `([X,Y]_n, Z) + (Y, [X,Z]_n) = 0`.
    pub violation: Option<(usize, usize, usize)>,
}

pub fn check_naturally_reductive(sp: &ReductiveSpace) -> NaturalReductivity {
    let n = sp.dim_n;
    let unit = |i: usize| {
        let mut v = zero(n);
        v[i] = Rational::one();
        v
    };
    let violation = (0..n * n * n).into_par_iter().find_first(|&idx| {
        let (x, y, z) = (idx / (n * n), idx / n % n, idx % n);
        let a = sp.g(sp.bracket_n(x, y), &unit(z));
        let b = sp.g(&unit(y), sp.bracket_n(x, z));
        !(a + b).is_zero()
    });
    let violation = violation.map(|idx| (idx / (n * n), idx / n % n, idx % n));
    NaturalReductivity { naturally_reductive: violation.is_none(), violation }
}

/// `T(X,Y,Z) = −([X,Y]_n, Z)` as a 3-form on n, in the basis of n.
pub fn canonical_torsion(sp: &ReductiveSpace) -> Result<KForm, HomogeneousError> {
    if let Some((x, y, z)) = check_naturally_reductive(sp).violation {
        return Err(HomogeneousError::NotNaturallyReductive(x, y, z));
    }
    let n = sp.dim_n;
    let full = torsion_array(sp);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = &full[(i * n + j) * n + k];
                if *v != -&full[(j * n + i) * n + k] || *v != -&full[(i * n + k) * n + j] {
                    return Err(HomogeneousError::NotNaturallyReductive(i, j, k));
                }
            }
        }
    }
    let coeffs = combinations(n, 3).iter().map(|t| full[(t[0] * n + t[1]) * n + t[2]].clone()).collect();
    Ok(KForm::from_coeffs(n, 3, coeffs))
}

/// Full array `−([X_i,X_j]_n, X_k)`, index `(i·n + j)·n + k`.
pub fn torsion_array(sp: &ReductiveSpace) -> Vec<Rational> {
    let n = sp.dim_n;
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let gb = sp.metric_n.transpose().mul_vec(sp.bracket_n(i, j));
            out.extend(gb.into_iter().map(|x| -x));
        }
    }
    out
}

fn identification(sp: &ReductiveSpace) -> Result<(&Matrix<Rational>, Matrix<Rational>), HomogeneousError> {
    let j = sp.identification.as_ref().ok_or(HomogeneousError::NoIdentification)?;
    if sp.dim_n != DIM || j.transpose().mul(j) != sp.metric_n {
        return Err(HomogeneousError::NotIsometry);
    }
    let jinv = inverse(j).ok_or(HomogeneousError::NotIsometry)?;
    Ok((j, jinv))
}

/// Transports a 3-form on n to R^16 through the identification.
pub fn transport_three_form(sp: &ReductiveSpace, t: &KForm) -> Result<KForm, HomogeneousError> {
    let (_, jinv) = identification(sp)?;
    let n = DIM;
    // Contract one slot at a time with J⁻¹.
    let mut arr = vec![Rational::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                arr[(i * n + j) * n + k] = t.eval_basis(&[i, j, k]);
            }
        }
    }
    for slot in 0..3 {
        let mut next = vec![Rational::zero(); n * n * n];
        for idx in 0..n * n * n {
            let mut digits = [idx / (n * n), idx / n % n, idx % n];
            let a = digits[slot];
            let mut acc = Rational::zero();
            for i in 0..n {
                let c = jinv.get(i, a);
                if c.is_zero() {
                    continue;
                }
                digits[slot] = i;
                let v = &arr[(digits[0] * n + digits[1]) * n + digits[2]];
                if !v.is_zero() {
                    acc += &(c * v);
                }
            }
            next[idx] = acc;
        }
        arr = next;
    }
    let coeffs = combinations(n, 3).iter().map(|t| arr[(t[0] * n + t[1]) * n + t[2]].clone()).collect();
    Ok(KForm::from_coeffs(n, 3, coeffs))
}

/// `[X_i, ·]_n` transported to R^16 for each basis element of n.
fn transported_ad(sp: &ReductiveSpace) -> Result<Vec<Matrix<Rational>>, HomogeneousError> {
    let (j, jinv) = identification(sp)?;
    let n = sp.dim_n;
    (0..n)
        .map(|i| {
            let cols: Vec<Vector> = (0..n).map(|k| sp.bracket_n(i, k).to_vec()).collect();
            let ad = Matrix::from_columns(n, &cols);
            let e = j.mul(&ad).mul(&jinv);
            if !e.is_skew() {
                return Err(HomogeneousError::NotSkew(i));
            }
            Ok(e)
        })
        .collect()
}

/// `Γ(X) = ½ pr_m([X, ·]_n)` under the identification n ≅ R^16.
pub fn gamma_from_brackets(sys: &CliffordSystem, sp: &ReductiveSpace) -> Result<GammaTensor, HomogeneousError> {
    let (_, jinv) = identification(sp)?;
    let half = Rational::new(1, 2);
    let parts: Vec<Vector> = transported_ad(sp)?
        .iter()
        .map(|e| sys.m_coords(e).iter().map(|x| x * &half).collect())
        .collect();
    // e_k = Σ_i (J⁻¹)_{ik} J n_i.
    let rows = (0..DIM)
        .map(|k| {
            let mut acc = zero(crate::torsion::M_DIM);
            for (i, p) in parts.iter().enumerate() {
                axpy(&mut acc, jinv.get(i, k), p);
            }
            acc
        })
        .collect();
    Ok(GammaTensor::from_rows(rows)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaIdentity {
    /// `Γ` equals the embedding of the 3-form `−½ T^can`.
    pub as_three_form: bool,
    /// `⟨Γ(X)Y, Z⟩ = −½ T^can(X,Y,Z)` entrywise.
    pub entrywise: bool,
}

/// Compares `Γ` with `−½ T^can` in both readings.
pub fn check_gamma_identity(sys: &CliffordSystem, sp: &ReductiveSpace) -> Result<GammaIdentity, HomogeneousError> {
    let gamma = gamma_from_brackets(sys, sp)?;
    let t = transport_three_form(sp, &canonical_torsion(sp)?)?;
    let half_t = t.scale(&Rational::new(-1, 2));
    let as_three_form = embed_three_form(sys, &half_t)? == gamma;
    let vals = gamma.values(sys);
    let entrywise = (0..DIM).all(|a| {
        (0..DIM).all(|b| (0..DIM).all(|c| *vals[a].get(c, b) == half_t.eval_basis(&[a, b, c])))
    });
    Ok(GammaIdentity { as_three_form, entrywise })
}

/// Transported `ad(h_a)` lies in spin(9) for every `a`.
pub fn isotropy_preserves_structure(sys: &CliffordSystem, sp: &ReductiveSpace) -> Result<bool, HomogeneousError> {
    let (j, jinv) = identification(sp)?;
    for a in 0..sp.dim_h {
        let cols: Vec<Vector> = sp.bracket_hn[a].clone();
        let ad = Matrix::from_columns(sp.dim_n, &cols);
        let e = j.mul(&ad).mul(&jinv);
        match sys.split_so16(&e) {
            Ok((_, m)) if m.is_zero() => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// `(S¹ × Spin(9))/Spin(7)`: `h` is the stabilizer of `e16` in spin(9), `n = Rξ ⊕ h^⊥`.
///
/// The metric on `h^⊥` is `¼ tr(AᵀB)` and `A ↦ D·A·e16` with `D = diag(2·Id_8, Id_8)`
/// identifies it isometrically with `e16^⊥`; `ξ ↦ xi_scale · e16`, `|ξ|² = xi_scale²`.
pub fn build_sphere_example(sys: &CliffordSystem, xi_scale: i64) -> Result<ReductiveSpace, HomogeneousError> {
    let gens = generators(sys);
    let k = gens.len();
    let mut e16 = zero(DIM);
    e16[DIM - 1] = Rational::one();
    let combo = |v: &[Rational]| {
        let mut m = Matrix::zeros(DIM, DIM);
        for (g, c) in gens.iter().zip(v) {
            if !c.is_zero() {
                m = m.add(&g.scale(c));
            }
        }
        m
    };
    // Coordinates over X_k = ½ I_αI_β: [X_a, X_b] has coordinates 2·⟨·, ω⟩/8.
    let coords = |m: &Matrix<Rational>| -> Vector {
        sys.spin9_coords(m).iter().map(|x| x * Rational::from_int(2)).collect()
    };
    let action = Matrix::from_columns(DIM, &gens.iter().map(|g| g.mul_vec(&e16)).collect::<Vec<_>>());
    let h_basis = nullspace(&action).columns();
    if h_basis.len() != 21 {
        return Err(HomogeneousError::Construction(format!("stabilizer has dimension {}", h_basis.len())));
    }
    let n_basis = nullspace(&Matrix::from_columns(k, &h_basis).transpose()).columns();
    let (dh, dn) = (h_basis.len(), n_basis.len() + 1);
    let mut all = h_basis.clone();
    all.extend(n_basis.iter().cloned());
    let change = Matrix::from_columns(k, &all);
    // Coordinates of a spin(9) element over h ⊕ h^⊥.
    let split = |v: &[Rational]| -> Result<(Vector, Vector), HomogeneousError> {
        let c = solve_square(&change, v)
            .ok_or_else(|| HomogeneousError::Construction("h ⊕ h^⊥ is not a basis".into()))?;
        Ok((c[..dh].to_vec(), c[dh..].to_vec()))
    };
    let mats_h: Vec<Matrix<Rational>> = h_basis.iter().map(|v| combo(v)).collect();
    let mats_n: Vec<Matrix<Rational>> = n_basis.iter().map(|v| combo(v)).collect();
    let xi = dn - 1;
    let mut bracket_nn = vec![vec![zero(dh + dn); dn]; dn];
    for i in 0..xi {
        for j in 0..xi {
            let (hp, np) = split(&coords(&mats_n[i].commutator(&mats_n[j])))?;
            let mut v = hp;
            v.extend(np);
            v.push(Rational::zero());
            bracket_nn[i][j] = v;
        }
    }
    let mut bracket_hn = vec![vec![zero(dn); dn]; dh];
    for a in 0..dh {
        for i in 0..xi {
            let (hp, np) = split(&coords(&mats_h[a].commutator(&mats_n[i])))?;
            if hp.iter().any(|x| !x.is_zero()) {
                return Err(HomogeneousError::Construction("[h, n] is not contained in n".into()));
            }
            let mut v = np;
            v.push(Rational::zero());
            bracket_hn[a][i] = v;
        }
    }
    let mut bracket_hh = vec![vec![zero(dh); dh]; dh];
    for a in 0..dh {
        for b in 0..dh {
            let (hp, np) = split(&coords(&mats_h[a].commutator(&mats_h[b])))?;
            if np.iter().any(|x| !x.is_zero()) {
                return Err(HomogeneousError::Construction("h is not a subalgebra".into()));
            }
            bracket_hh[a][b] = hp;
        }
    }
    let quarter = Rational::new(1, 4);
    let mut metric = Matrix::zeros(dn, dn);
    for i in 0..xi {
        for j in 0..xi {
            let v = mats_n[i].transpose().mul(&mats_n[j]).trace() * &quarter;
            metric.set(i, j, v);
        }
    }
    metric.set(xi, xi, Rational::from_int(xi_scale * xi_scale));
    let mut d = Matrix::identity(DIM);
    for r in 0..8 {
        d.set(r, r, Rational::from_int(2));
    }
    let mut cols: Vec<Vector> = mats_n.iter().map(|m| d.mul(m).mul_vec(&e16)).collect();
    cols.push(e16.iter().map(|x| x * Rational::from_int(xi_scale)).collect());
    let sp = ReductiveSpace {
        dim_h: dh,
        dim_n: dn,
        bracket_nn,
        bracket_hn,
        bracket_hh: Some(bracket_hh),
        metric_n: metric,
        identification: Some(Matrix::from_columns(DIM, &cols)),
    };
    sp.validate()?;
    identification(&sp)?;
    Ok(sp)
}

/// Abelian `n = R^k`, trivial `h`, standard metric.
pub fn abelian(k: usize) -> ReductiveSpace {
    ReductiveSpace {
        dim_h: 0,
        dim_n: k,
        bracket_nn: vec![vec![zero(k); k]; k],
        bracket_hn: Vec::new(),
        bracket_hh: Some(Vec::new()),
        metric_n: Matrix::identity(k),
        identification: (k == DIM).then(|| Matrix::identity(DIM)),
    }
}

/// JSON form; matrices are nested arrays of fraction strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductiveSpaceJson {
    pub dim_h: usize,
    pub dim_n: usize,
    pub bracket_nn: Vec<Vec<Vector>>,
    pub bracket_hn: Vec<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket_hh: Option<Vec<Vec<Vector>>>,
    pub metric_n: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identification: Option<Vec<Vector>>,
}

impl ReductiveSpace {
    pub fn to_json(&self) -> ReductiveSpaceJson {
        let rows = |m: &Matrix<Rational>| (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        ReductiveSpaceJson {
            dim_h: self.dim_h,
            dim_n: self.dim_n,
            bracket_nn: self.bracket_nn.clone(),
            bracket_hn: self.bracket_hn.clone(),
            bracket_hh: self.bracket_hh.clone(),
            metric_n: rows(&self.metric_n),
            identification: self.identification.as_ref().map(rows),
        }
    }

    /// Shapes are checked before any matrix is built.
    pub fn from_json(j: ReductiveSpaceJson) -> Result<Self, HomogeneousError> {
        let square = |rows: &[Vector], r: usize, c: usize, what: &str| {
            if rows.len() != r || rows.iter().any(|x| x.len() != c) {
                return Err(HomogeneousError::Shape(format!("{what} must be {r} × {c}")));
            }
            Ok(Matrix::from_rows(rows.to_vec()))
        };
        let metric_n = square(&j.metric_n, j.dim_n, j.dim_n, "metric_n")?;
        let identification = match &j.identification {
            Some(rows) => Some(square(rows, DIM, j.dim_n, "identification")?),
            None => None,
        };
        let sp = ReductiveSpace {
            dim_h: j.dim_h,
            dim_n: j.dim_n,
            bracket_nn: j.bracket_nn,
            bracket_hn: j.bracket_hn,
            bracket_hh: j.bracket_hh,
            metric_n,
            identification,
        };
        sp.validate()?;
        Ok(sp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion::{admissible_torsion, classify_gamma, Admissibility};

    fn sys() -> CliffordSystem {
        CliffordSystem::build_standard().unwrap()
    }

    #[test]
    fn abelian_space() {
        let s = sys();
        let a = abelian(DIM);
        assert!(check_naturally_reductive(&a).naturally_reductive);
        assert!(canonical_torsion(&a).unwrap().is_zero());
        assert!(gamma_from_brackets(&s, &a).unwrap().is_zero());
        assert_eq!(a.check_jacobi().0, None);
    }

    #[test]
    fn sphere_example() {
        let s = sys();
        let sp = build_sphere_example(&s, 1).unwrap();
        assert_eq!((sp.dim_h, sp.dim_n), (21, 16));
        assert!(check_naturally_reductive(&sp).naturally_reductive);
        let (bad, count) = sp.check_jacobi();
        assert_eq!((bad, count), (None, 7770));
        assert!(isotropy_preserves_structure(&s, &sp).unwrap());
        let t = canonical_torsion(&sp).unwrap();
        assert!(!t.is_zero());
        let gamma = gamma_from_brackets(&s, &sp).unwrap();
        let r = classify_gamma(&s, &gamma);
        assert!(r.admissible);
        assert!(!r.norm_sqr.is_zero());
        let id = check_gamma_identity(&s, &sp).unwrap();
        assert!(id.as_three_form);
        let t16 = transport_three_form(&sp, &t).unwrap();
        assert_eq!(admissible_torsion(&s, &gamma), Admissibility::Torsion(t16));
    }

    #[test]
    fn rescaled_circle() {
        let s = sys();
        let sp = build_sphere_example(&s, 2).unwrap();
        assert!(check_naturally_reductive(&sp).naturally_reductive);
        assert!(check_gamma_identity(&s, &sp).unwrap().as_three_form);
    }

    #[test]
    fn perturbed_metric_breaks_natural_reductivity() {
        let s = sys();
        let mut sp = build_sphere_example(&s, 1).unwrap();
        let v = sp.metric_n.get(0, 0) * Rational::from_int(3);
        sp.metric_n.set(0, 0, v);
        let nr = check_naturally_reductive(&sp);
        assert!(!nr.naturally_reductive);
        assert!(matches!(canonical_torsion(&sp), Err(HomogeneousError::NotNaturallyReductive(..))));
    }

    #[test]
    fn json_round_trip() {
        let s = sys();
        let sp = build_sphere_example(&s, 1).unwrap();
        let text = serde_json::to_string(&sp.to_json()).unwrap();
        let back = ReductiveSpace::from_json(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, sp);
        let mut j = sp.to_json();
        j.metric_n.pop();
        assert!(ReductiveSpace::from_json(j).is_err());
    }
}
