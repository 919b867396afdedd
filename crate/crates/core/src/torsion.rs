//! Intrinsic torsion of Spin(9)-structures: the embeddings of Λ¹ and Λ³ into
//! R^16 ⊗ m, the maps Φ and Ψ into R^16 ⊗ S², classification into the four
//! irreducible types and recovery of the torsion 3-form.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordSystem, OctonionTable, DIM};
use crate::forms::{combinations, KForm};
use crate::linalg::solve::Factorization;
use crate::linalg::{joint_eigenspace_dims, Matrix, SparseMatrix};
use crate::rep::action::sym_index;
use crate::rep::{decompose, isotypic_apply, rep_action, DecompositionReport, RepError, Space, Weight};
use crate::scalar::Rational;

pub const M_DIM: usize = 84;
pub const SPIN9_DIM: usize = 36;
/// Number of `(y, z)` pairs with `y ≤ z` in R^16.
pub const SYM_DIM: usize = DIM * (DIM + 1) / 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TorsionError {
    #[error("expected a {expected}-form on R^16, got degree {k} on R^{n}")]
    WrongForm { expected: usize, n: usize, k: usize },
    #[error("Γ(e_{0}) has a nonzero spin(9)-part")]
    NotInM(usize),
    #[error("Σ(e_{0}) has a nonzero m-part")]
    NotInSpin9(usize),
    #[error("expected {expected} rows of {width} entries")]
    Shape { expected: usize, width: usize },
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn eighth() -> Rational {
    Rational::new(1, 8)
}

/// A tensor in R^16 ⊗ V stored as 16 coordinate rows over a fixed orthogonal basis of V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisTensor<const W: usize> {
    rows: Vec<Vec<Rational>>,
}

/// Element of R^16 ⊗ m: `Γ(e_i) = Σ_c rows[i][c] · I_αI_βI_γ`.
pub type GammaTensor = BasisTensor<M_DIM>;
/// Element of R^16 ⊗ spin(9): `Σ(e_i) = Σ_k rows[i][k] · I_αI_β`.
pub type SpinTensor = BasisTensor<SPIN9_DIM>;

impl<const W: usize> BasisTensor<W> {
    pub fn zero() -> Self {
        BasisTensor { rows: vec![vec![Rational::zero(); W]; DIM] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, TorsionError> {
        if rows.len() != DIM || rows.iter().any(|r| r.len() != W) {
            return Err(TorsionError::Shape { expected: DIM, width: W });
        }
        Ok(BasisTensor { rows })
    }

    /// Coordinates flattened with index `i · W + c`.
    pub fn from_vector(v: &[Rational]) -> Self {
        assert_eq!(v.len(), DIM * W, "vector has wrong length");
        BasisTensor { rows: v.chunks(W).map(<[Rational]>::to_vec).collect() }
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        self.rows.concat()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Rational::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_vector(&self.to_vector().iter().zip(o.to_vector()).map(|(a, b)| a + &b).collect::<Vec<_>>())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        BasisTensor { rows: self.rows.iter().map(|r| r.iter().map(|x| x * s).collect()).collect() }
    }

    /// `Σ_i ⟨T(e_i), T(e_i)⟩` with `⟨A,B⟩ = ½ tr(AᵀB)`; each basis element has norm² 8.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from_int(8) * self.rows.iter().flatten().map(|x| x * x).sum::<Rational>()
    }
}

fn values(basis: &[Matrix<Rational>], rows: &[Vec<Rational>]) -> Vec<Matrix<Rational>> {
    rows.iter()
        .map(|r| {
            let mut m = Matrix::zeros(DIM, DIM);
            for (b, c) in basis.iter().zip(r) {
                if !c.is_zero() {
                    m = m.add(&b.scale(c));
                }
            }
            m
        })
        .collect()
}

impl GammaTensor {
    /// `Γ(e_i)` as a skew matrix.
    pub fn values(&self, sys: &CliffordSystem) -> Vec<Matrix<Rational>> {
        values(sys.sigma_matrices(), &self.rows)
    }

    /// From the 16 matrices `Γ(e_i)`; each must lie in m.
    pub fn from_matrices(sys: &CliffordSystem, ms: &[Matrix<Rational>]) -> Result<Self, TorsionError> {
        if ms.len() != DIM {
            return Err(TorsionError::Shape { expected: DIM, width: M_DIM });
        }
        let mut rows = Vec::with_capacity(DIM);
        for (i, m) in ms.iter().enumerate() {
            let (g, mp) = sys.split_so16(m).map_err(|_| TorsionError::NotInM(i + 1))?;
            if !g.is_zero() {
                return Err(TorsionError::NotInM(i + 1));
            }
            rows.push(sys.m_coords(&mp));
        }
        Ok(BasisTensor { rows })
    }
}

impl SpinTensor {
    pub fn values(&self, sys: &CliffordSystem) -> Vec<Matrix<Rational>> {
        values(sys.omega_matrices(), &self.rows)
    }

    pub fn from_matrices(sys: &CliffordSystem, ms: &[Matrix<Rational>]) -> Result<Self, TorsionError> {
        if ms.len() != DIM {
            return Err(TorsionError::Shape { expected: DIM, width: SPIN9_DIM });
        }
        let mut rows = Vec::with_capacity(DIM);
        for (i, m) in ms.iter().enumerate() {
            let (g, mp) = sys.split_so16(m).map_err(|_| TorsionError::NotInSpin9(i + 1))?;
            if !mp.is_zero() {
                return Err(TorsionError::NotInSpin9(i + 1));
            }
            rows.push(sys.spin9_coords(&g));
        }
        Ok(BasisTensor { rows })
    }
}

/// Trilinear array `t(X,Y,Z)` symmetric in `(Y,Z)`, stored as `t[x][(y,z)]`, `y ≤ z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymCubic {
    data: Vec<Rational>,
}

impl SymCubic {
    pub fn zero() -> Self {
        SymCubic { data: vec![Rational::zero(); DIM * SYM_DIM] }
    }

    /// Index `x · 136 + sym_index(y, z)`.
    pub fn from_vector(v: Vec<Rational>) -> Self {
        assert_eq!(v.len(), DIM * SYM_DIM, "vector has wrong length");
        SymCubic { data: v }
    }

    pub fn as_vector(&self) -> &[Rational] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> &Rational {
        &self.data[x * SYM_DIM + sym_index(DIM, y, z)]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// Matrix of the quadratic form `Y ↦ t(x, Y, Y)`.
    pub fn quadratic_form(&self, x: usize) -> Matrix<Rational> {
        let mut q = Matrix::zeros(DIM, DIM);
        for y in 0..DIM {
            for z in 0..DIM {
                q.set(y, z, self.get(x, y, z).clone());
            }
        }
        q
    }
}

/// `F(A)(X,Y,Z) = ⟨A(Y)X, Z⟩ + ⟨A(Z)X, Y⟩` for `A(e_y) = ms[y]`.
fn cubic_of(ms: &[Matrix<Rational>]) -> SymCubic {
    let mut t = SymCubic::zero();
    for x in 0..DIM {
        for y in 0..DIM {
            for z in y..DIM {
                let v = ms[y].get(z, x) + ms[z].get(y, x);
                t.data[x * SYM_DIM + sym_index(DIM, y, z)] = v;
            }
        }
    }
    t
}

/// `Ψ(Γ)(X,Y,Z) = g(Γ(Y)X, Z) + g(Γ(Z)X, Y)`.
pub fn psi_map(sys: &CliffordSystem, gamma: &GammaTensor) -> SymCubic {
    cubic_of(&gamma.values(sys))
}

/// `Φ(Σ)(X,Y,Z) = g(Σ(Z)X, Y) + g(Σ(Y)X, Z)`.
pub fn phi_map(sys: &CliffordSystem, sigma: &SpinTensor) -> SymCubic {
    cubic_of(&sigma.values(sys))
}

/// Matrix of `F` on `R^n ⊗ span(basis)`: column `y · len + k` is `e_y ⊗ basis[k]`,
/// row `x · n(n+1)/2 + sym_index(y', z)`.
pub fn cubic_operator(n: usize, basis: &[Matrix<Rational>]) -> SparseMatrix {
    let len = basis.len();
    let sym = n * (n + 1) / 2;
    let trip: Vec<(usize, usize, Rational)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|y| {
            let mut out = Vec::new();
            for (k, b) in basis.iter().enumerate() {
                let col = y * len + k;
                for x in 0..n {
                    for w in 0..n {
                        let v = b.get(w, x);
                        if v.is_zero() {
                            continue;
                        }
                        let row = x * sym + sym_index(n, y, w);
                        out.push((row, col, v.clone()));
                        if w == y {
                            out.push((row, col, v.clone()));
                        }
                    }
                }
            }
            out
        })
        .collect();
    SparseMatrix::from_triplets(n * sym, n * len, trip)
}

/// Matrix sending the coefficients of a 3-form `T` on R^n to the coordinates
/// `scale_k · (b_k ⌟ T)(e_x)`, index `x · len + k`.
pub fn contraction_operator(n: usize, basis: &[Matrix<Rational>], scales: &[Rational]) -> SparseMatrix {
    let len = basis.len();
    let tuples = combinations(n, 3);
    let trip: Vec<(usize, usize, Rational)> = tuples
        .par_iter()
        .enumerate()
        .flat_map_iter(|(col, t)| {
            let mut out = Vec::new();
            for s in 0..3 {
                let x = t[s];
                let rest: Vec<usize> = t.iter().copied().filter(|&i| i != x).collect();
                // T(e_a, e_b, e_x) = (−1)^(2−s) for the basis form e_t.
                let sign = if s == 1 { -Rational::one() } else { Rational::one() };
                for (k, b) in basis.iter().enumerate() {
                    // b as a 2-form: b(e_a, e_b) = B[b][a].
                    let v = b.get(rest[1], rest[0]);
                    if !v.is_zero() {
                        out.push((x * len + k, col, v * &sign * &scales[k]));
                    }
                }
            }
            out
        })
        .collect();
    SparseMatrix::from_triplets(n * len, tuples.len(), trip)
}

fn check_form(f: &KForm, k: usize) -> Result<(), TorsionError> {
    if f.n() != DIM || f.degree() != k {
        return Err(TorsionError::WrongForm { expected: k, n: f.n(), k: f.degree() });
    }
    Ok(())
}

/// `Γ(X) = (1/8) Σ_{α<β<γ} ⟨I_αI_βI_γ μ, X⟩ · I_αI_βI_γ`.
pub fn embed_one_form(sys: &CliffordSystem, mu: &KForm) -> Result<GammaTensor, TorsionError> {
    check_form(mu, 1)?;
    let imgs: Vec<Vec<Rational>> = sys.sigma_matrices().iter().map(|s| s.mul_vec(mu.coeffs())).collect();
    let rows = (0..DIM).map(|i| imgs.iter().map(|v| &v[i] * &eighth()).collect()).collect();
    Ok(BasisTensor { rows })
}

/// `Γ(X) = (1/8) Σ_{α<β<γ} (σ_{αβγ} ⌟ μ)(X) · I_αI_βI_γ`.
pub fn embed_three_form(sys: &CliffordSystem, mu: &KForm) -> Result<GammaTensor, TorsionError> {
    check_form(mu, 3)?;
    Ok(GammaTensor::from_vector(&context(sys).embed3.mul_vec(mu.coeffs())))
}

/// `Σ(X) = Σ_{α<β} ⟨I_αI_β v, X⟩ · I_αI_β`.
pub fn sigma_of_vector(sys: &CliffordSystem, v: &[Rational]) -> SpinTensor {
    let imgs: Vec<Vec<Rational>> = sys.omega_matrices().iter().map(|w| w.mul_vec(v)).collect();
    BasisTensor { rows: (0..DIM).map(|i| imgs.iter().map(|u| u[i].clone()).collect()).collect() }
}

/// `Σ(X) = −(1/8) Σ_{α<β} (ω_{αβ} ⌟ Γ)(X) · I_αI_β` for a 3-form Γ.
pub fn sigma_of_three_form(sys: &CliffordSystem, g3: &KForm) -> Result<SpinTensor, TorsionError> {
    check_form(g3, 3)?;
    let scales = vec![-eighth(); SPIN9_DIM];
    let op = contraction_operator(DIM, sys.omega_matrices(), &scales);
    Ok(SpinTensor::from_vector(&op.mul_vec(g3.coeffs())))
}

/// `Y ↦ Ψ(embed_one_form(v))(v, Y, Y)` for `v = e_x`.
pub fn quadratic_form_psi(sys: &CliffordSystem, x: usize) -> Matrix<Rational> {
    let mut v = vec![Rational::zero(); DIM];
    v[x] = Rational::one();
    let g = embed_one_form(sys, &KForm::from_vector(&v)).expect("vector on R^16");
    psi_map(sys, &g).quadratic_form(x)
}

/// `Y ↦ Φ(sigma_of_vector(v))(v, Y, Y)` for `v = e_x`.
pub fn quadratic_form_phi(sys: &CliffordSystem, x: usize) -> Matrix<Rational> {
    let mut v = vec![Rational::zero(); DIM];
    v[x] = Rational::one();
    phi_map(sys, &sigma_of_vector(sys, &v)).quadratic_form(x)
}

/// Eigenvalues of a rational symmetric matrix with multiplicities, by
/// decreasing multiplicity then increasing value.
pub fn quadratic_spectrum(q: &Matrix<Rational>, seed: u64) -> Result<Vec<(Rational, usize)>, TorsionError> {
    let dims = joint_eigenspace_dims(&[SparseMatrix::from_dense(q)], seed).map_err(RepError::from)?;
    let mut out: Vec<(Rational, usize)> = dims.into_iter().map(|(v, d)| (v[0].re.clone(), d)).collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// `a = c · b` for some rational `c`.
pub fn proportional(a: &Matrix<Rational>, b: &Matrix<Rational>) -> bool {
    let pivot = b.data().iter().zip(a.data()).find(|(y, _)| !y.is_zero());
    match pivot {
        None => a.data().iter().all(Rational::is_zero),
        Some((y, x)) => *a == b.scale(&(x / y)),
    }
}

/// `S_α(Y,Z) = −S(I_α Y, Z) + S(Y, I_α Z)` as a matrix.
pub fn s_alpha(sys: &CliffordSystem, s: &KForm, alpha: usize) -> Result<Matrix<Rational>, TorsionError> {
    check_form(s, 2)?;
    assert!((1..=9).contains(&alpha), "α must lie in 1..=9");
    // Gram matrix S(e_i, e_j).
    let g = crate::clifford::form_to_matrix(s).transpose();
    let i = sys.i(alpha);
    Ok(g.mul(i).sub(&i.mul(&g)))
}

/// Right-hand side `Σ_β M_{αβ} I_β + ½ S_α` with `S = X ⌟ T`, for each α.
pub fn nabla_model(
    sys: &CliffordSystem,
    m: &Matrix<Rational>,
    t: &KForm,
    x: &[Rational],
) -> Result<Vec<Matrix<Rational>>, TorsionError> {
    check_form(t, 3)?;
    let s = t.insert(x);
    let half = Rational::new(1, 2);
    (1..=9)
        .map(|a| {
            let mut acc = s_alpha(sys, &s, a)?.scale(&half);
            for b in 1..=9 {
                let c = m.get(a - 1, b - 1);
                if !c.is_zero() {
                    acc = acc.add(&sys.i(b).scale(c));
                }
            }
            Ok(acc)
        })
        .collect()
}

/// Labels of the four irreducible summands of R^16 ⊗ m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GammaType {
    R16,
    P1,
    P2,
    P3,
}

impl GammaType {
    pub const ALL: [GammaType; 4] = [GammaType::R16, GammaType::P1, GammaType::P2, GammaType::P3];

    pub fn dim(self) -> u64 {
        match self {
            GammaType::R16 => 16,
            GammaType::P1 => 128,
            GammaType::P2 => 432,
            GammaType::P3 => 768,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GammaType::R16 => "R16",
            GammaType::P1 => "P1",
            GammaType::P2 => "P2",
            GammaType::P3 => "P3",
        }
    }
}

/// Cached data for one Clifford system.
pub struct TorsionContext {
    table: OctonionTable,
    /// Casimir of spin(9) on R^16 ⊗ m.
    pub casimir: SparseMatrix,
    pub report: DecompositionReport,
    /// Highest weight of each type, indexed like `GammaType::ALL`.
    pub weights: [Weight; 4],
    pub embed3: SparseMatrix,
    embed3_lu: OnceLock<Factorization>,
}

impl TorsionContext {
    pub fn new(sys: &CliffordSystem) -> Result<Self, TorsionError> {
        let rep = rep_action(sys, Space::V16TensorM)?;
        let report = decompose(&rep)?;
        let find = |t: GammaType| -> Result<Weight, TorsionError> {
            match report.with_dim(t.dim()).as_slice() {
                [c] if c.mult == 1 => Ok(c.weight.clone()),
                _ => Err(RepError::NotClosed(format!("{} component", t.name())).into()),
            }
        };
        let weights = [find(GammaType::R16)?, find(GammaType::P1)?, find(GammaType::P2)?, find(GammaType::P3)?];
        let embed3 = contraction_operator(DIM, sys.sigma_matrices(), &vec![eighth(); M_DIM]);
        Ok(TorsionContext {
            table: sys.table().clone(),
            casimir: rep.casimir(),
            report,
            weights,
            embed3,
            embed3_lu: OnceLock::new(),
        })
    }

    pub fn weight(&self, t: GammaType) -> &Weight {
        &self.weights[t as usize]
    }

    /// Isotypic component of `Γ` of the given type.
    pub fn component(&self, gamma: &GammaTensor, t: GammaType) -> GammaTensor {
        let v = isotypic_apply(&self.casimir, &self.report, self.weight(t), &gamma.to_vector())
            .expect("Casimir values of the four types are distinct");
        GammaTensor::from_vector(&v)
    }

    fn embed3_lu(&self) -> &Factorization {
        self.embed3_lu.get_or_init(|| Factorization::new(&self.embed3))
    }
}

static STANDARD: OnceLock<TorsionContext> = OnceLock::new();

/// Context for `sys`; cached for the standard table, rebuilt otherwise.
pub fn context(sys: &CliffordSystem) -> std::borrow::Cow<'static, TorsionContext> {
    let std_ctx = STANDARD.get_or_init(|| {
        TorsionContext::new(&CliffordSystem::build_standard().expect("standard system"))
            .expect("standard torsion context")
    });
    if sys.table() == &std_ctx.table {
        std::borrow::Cow::Borrowed(std_ctx)
    } else {
        std::borrow::Cow::Owned(TorsionContext::new(sys).expect("context for a verified system"))
    }
}

impl Clone for TorsionContext {
    fn clone(&self) -> Self {
        TorsionContext {
            table: self.table.clone(),
            casimir: self.casimir.clone(),
            report: self.report.clone(),
            weights: self.weights.clone(),
            embed3: self.embed3.clone(),
            embed3_lu: OnceLock::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub norm_sqr: Rational,
    pub r16: Rational,
    pub p1: Rational,
    pub p2: Rational,
    pub p3: Rational,
    pub admissible: bool,
}

impl ClassificationReport {
    pub fn norm_of(&self, t: GammaType) -> &Rational {
        match t {
            GammaType::R16 => &self.r16,
            GammaType::P1 => &self.p1,
            GammaType::P2 => &self.p2,
            GammaType::P3 => &self.p3,
        }
    }
}

pub fn classify_gamma(sys: &CliffordSystem, gamma: &GammaTensor) -> ClassificationReport {
    let ctx = context(sys);
    let norms: Vec<Rational> =
        GammaType::ALL.par_iter().map(|&t| ctx.component(gamma, t).norm_sqr()).collect();
    ClassificationReport {
        norm_sqr: gamma.norm_sqr(),
        admissible: norms[0].is_zero() && norms[3].is_zero(),
        r16: norms[0].clone(),
        p1: norms[1].clone(),
        p2: norms[2].clone(),
        p3: norms[3].clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    /// The torsion form `T = −2·T'` where `embed_three_form(T') = Γ`.
    Torsion(KForm),
    /// Norms of the offending R^16- and P3-components.
    Refused { r16: Rational, p3: Rational },
}

/// Decides admissibility exactly and recovers the torsion form.
pub fn admissible_torsion(sys: &CliffordSystem, gamma: &GammaTensor) -> Admissibility {
    admissible_torsion_tol(sys, gamma, &Rational::zero())
}

/// As [`admissible_torsion`], treating component norms `≤ tol` as zero; the
/// torsion is then recovered from the P1⊕P2-part.
pub fn admissible_torsion_tol(sys: &CliffordSystem, gamma: &GammaTensor, tol: &Rational) -> Admissibility {
    let ctx = context(sys);
    let r16 = ctx.component(gamma, GammaType::R16).norm_sqr();
    let p3 = ctx.component(gamma, GammaType::P3).norm_sqr();
    if r16 > *tol || p3 > *tol {
        return Admissibility::Refused { r16, p3 };
    }
    let target = if tol.is_zero() {
        gamma.clone()
    } else {
        ctx.component(gamma, GammaType::P1).add(&ctx.component(gamma, GammaType::P2))
    };
    let t = ctx
        .embed3_lu()
        .solve(&target.to_vector())
        .solution()
        .expect("P1 ⊕ P2 lies in the image of the 3-form embedding")
        .to_vec();
    let t = KForm::from_coeffs(DIM, 3, t);
    Admissibility::Torsion(t.scale(&Rational::from_int(-2)))
}

/// `{"n":16, "basis":"sigma", "rows":[[84 fractions] × 16]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaJson {
    pub n: usize,
    pub basis: String,
    pub rows: Vec<Vec<Rational>>,
}

impl GammaTensor {
    pub fn to_json(&self) -> GammaJson {
        GammaJson { n: DIM, basis: "sigma".into(), rows: self.rows.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::contract2;
    use crate::linalg::rank;
    use crate::rep::weights::weight;

    fn sys() -> CliffordSystem {
        CliffordSystem::build_standard().unwrap()
    }

    fn e(i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); DIM];
        v[i] = Rational::one();
        v
    }

    fn e123() -> KForm {
        KForm::basis(DIM, &[0, 1, 2]).unwrap()
    }

    #[test]
    fn zero_inputs() {
        let s = sys();
        assert!(embed_one_form(&s, &KForm::zero(DIM, 1)).unwrap().is_zero());
        assert!(embed_three_form(&s, &KForm::zero(DIM, 3)).unwrap().is_zero());
        assert!(psi_map(&s, &GammaTensor::zero()).is_zero());
        assert!(phi_map(&s, &SpinTensor::zero()).is_zero());
        assert!(sigma_of_vector(&s, &vec![Rational::zero(); DIM]).is_zero());
        assert!(sigma_of_three_form(&s, &KForm::zero(DIM, 3)).unwrap().is_zero());
        assert!(s_alpha(&s, &KForm::zero(DIM, 2), 4).unwrap().is_zero());
        assert!(embed_one_form(&s, &KForm::zero(DIM, 2)).is_err());
    }

    #[test]
    fn embed_three_form_matches_contraction_definition() {
        let s = sys();
        let mu = KForm::basis(DIM, &[0, 4, 9]).unwrap().add(&KForm::basis(DIM, &[2, 3, 15]).unwrap().scale(&Rational::new(-3, 5)));
        let fast = embed_three_form(&s, &mu).unwrap();
        for (c, sig) in s.sigma_forms().iter().enumerate() {
            let one = contract2(sig, &mu).unwrap();
            for i in 0..DIM {
                assert_eq!(fast.rows()[i][c], one.coeffs()[i].clone() * eighth());
            }
        }
    }

    #[test]
    fn sigma_of_three_form_matches_contraction_definition() {
        let s = sys();
        let g3 = e123();
        let fast = sigma_of_three_form(&s, &g3).unwrap();
        for (k, w) in s.omega_forms().iter().enumerate() {
            let one = contract2(w, &g3).unwrap();
            for i in 0..DIM {
                assert_eq!(fast.rows()[i][k], -(one.coeffs()[i].clone() * eighth()));
            }
        }
    }

    #[test]
    fn cubic_operator_matches_definition() {
        let s = sys();
        let g = embed_three_form(&s, &e123()).unwrap();
        let op = cubic_operator(DIM, s.sigma_matrices());
        assert_eq!(op.mul_vec(&g.to_vector()), psi_map(&s, &g).as_vector());
    }

    #[test]
    fn psi_of_embedded_vector_matches_sigma_sum() {
        // Ψ(Γ)(X,Y,Y) = ¼ Σ σ(e16,Y) σ(X,Y) for Γ = embed(e16).
        let s = sys();
        let g = embed_one_form(&s, &KForm::from_vector(&e(15))).unwrap();
        let psi = psi_map(&s, &g);
        let sig = s.sigma_forms();
        let ys = [e(0), e(9), e(3).iter().zip(e(12)).map(|(a, b)| a + &b).collect::<Vec<_>>()];
        for x in [0, 15] {
            for y in &ys {
                let lhs: Rational = (0..DIM)
                    .flat_map(|a| (0..DIM).map(move |b| (a, b)))
                    .map(|(a, b)| psi.get(x, a, b) * &y[a] * &y[b])
                    .sum();
                let rhs: Rational = sig
                    .iter()
                    .map(|f| f.eval(&[&e(15), y]) * f.eval(&[&e(x), y]))
                    .sum::<Rational>()
                    * Rational::new(1, 4);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn quadratic_forms_at_e16() {
        let s = sys();
        let qpsi = quadratic_form_psi(&s, 15);
        let qphi = quadratic_form_phi(&s, 15);
        assert!(qpsi.mul_vec(&e(15)).iter().all(Rational::is_zero));
        assert!(qphi.mul_vec(&e(15)).iter().all(Rational::is_zero));
        // Constant-8 identity at X = e16: ½ Q_Φ + 4 Q_Ψ = 8 (|Y|² − y16²).
        let mut want = Matrix::identity(DIM).scale(&Rational::from_int(8));
        want.set(15, 15, Rational::zero());
        assert_eq!(qphi.scale(&Rational::new(1, 2)).add(&qpsi.scale(&Rational::from_int(4))), want);
        assert_eq!(qpsi.trace(), Rational::from_int(21));
        let r = Rational::new;
        assert_eq!(quadratic_spectrum(&qpsi, 1).unwrap(), vec![(r(7, 4), 8), (r(1, 1), 7), (r(0, 1), 1)]);
        assert_eq!(quadratic_spectrum(&qphi, 1).unwrap(), vec![(r(2, 1), 8), (r(8, 1), 7), (r(0, 1), 1)]);
        assert!(!proportional(&qpsi, &qphi));
        assert!(proportional(&qpsi.scale(&r(-3, 2)), &qpsi));
    }

    #[test]
    fn embed_one_form_is_pure_r16() {
        let s = sys();
        let g = embed_one_form(&s, &KForm::from_vector(&e(4))).unwrap();
        let r = classify_gamma(&s, &g);
        assert_eq!(r.r16, r.norm_sqr);
        assert!(r.p1.is_zero() && r.p2.is_zero() && r.p3.is_zero());
        assert!(!r.admissible);
        let cols: Vec<Vec<Rational>> = (0..DIM)
            .map(|i| embed_one_form(&s, &KForm::from_vector(&e(i))).unwrap().to_vector())
            .collect();
        assert_eq!(rank(&Matrix::from_columns(DIM * M_DIM, &cols)), 16);
    }

    #[test]
    fn embedded_three_forms_are_admissible() {
        let s = sys();
        let tau = e123();
        let g = embed_three_form(&s, &tau).unwrap();
        let r = classify_gamma(&s, &g);
        assert!(r.admissible);
        assert_eq!(&r.p1 + &r.p2, r.norm_sqr);
        assert_eq!(admissible_torsion(&s, &g), Admissibility::Torsion(tau.scale(&Rational::from_int(-2))));
        assert_eq!(admissible_torsion(&s, &GammaTensor::zero()), Admissibility::Torsion(KForm::zero(DIM, 3)));
        let bad = embed_one_form(&s, &KForm::from_vector(&e(15))).unwrap();
        match admissible_torsion(&s, &bad) {
            Admissibility::Refused { r16, p3 } => assert!(!r16.is_zero() && p3.is_zero()),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn component_weights() {
        let ctx = context(&sys());
        assert_eq!(ctx.weight(GammaType::R16), &weight(&["1/2", "1/2", "1/2", "1/2"]));
        assert_eq!(ctx.weight(GammaType::P1), &weight(&["3/2", "1/2", "1/2", "1/2"]));
        assert_eq!(ctx.weight(GammaType::P2), &weight(&["3/2", "3/2", "1/2", "1/2"]));
        assert_eq!(ctx.weight(GammaType::P3), &weight(&["3/2", "3/2", "3/2", "1/2"]));
    }

    #[test]
    fn tolerance_mode_projects_small_noise() {
        let s = sys();
        let tau = e123();
        let g = embed_three_form(&s, &tau).unwrap();
        let noise = embed_one_form(&s, &KForm::from_vector(&e(2))).unwrap().scale(&Rational::new(1, 1000));
        let noisy = g.add(&noise);
        assert!(matches!(admissible_torsion(&s, &noisy), Admissibility::Refused { .. }));
        assert_eq!(
            admissible_torsion_tol(&s, &noisy, &Rational::new(1, 1000)),
            Admissibility::Torsion(tau.scale(&Rational::from_int(-2)))
        );
    }

    #[test]
    fn from_matrices_rejects_spin9_parts() {
        let s = sys();
        let mut ms = vec![Matrix::zeros(DIM, DIM); DIM];
        ms[3] = s.omega_matrices()[2].clone();
        assert_eq!(GammaTensor::from_matrices(&s, &ms), Err(TorsionError::NotInM(4)));
        assert!(SpinTensor::from_matrices(&s, &ms).is_ok());
        ms[3] = s.sigma_matrices()[2].clone();
        assert_eq!(SpinTensor::from_matrices(&s, &ms), Err(TorsionError::NotInSpin9(4)));
        let g = GammaTensor::from_matrices(&s, &ms).unwrap();
        assert_eq!(g.values(&s), ms);
    }
}
