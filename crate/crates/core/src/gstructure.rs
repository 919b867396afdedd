//! G-structures `G ⊂ SO(n)` given by a basis of `g ⊂ so(n)`: the maps Θ₁, Θ₂,
//! the kernel/image comparison with Ψ ⊕ Φ, admissible torsion types and the
//! dimension inequality.

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{form_to_matrix, matrix_to_form, CliffordSystem, OctonionTable, DIM};
use crate::forms::{binomial, combinations, KForm};
use crate::linalg::solve::Factorization;
use crate::linalg::{joint_eigenspace_dims, nullspace, rank_certified_sparse, Matrix, SparseMatrix};
use crate::rep::Representation;
use crate::scalar::Rational;
use crate::torsion::{context, contraction_operator, cubic_operator, GammaType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GStructureError {
    #[error("unknown group {0:?}; expected spin9, g2 or spin7")]
    UnknownGroup(String),
    #[error("basis element {0} is not a skew {1}×{1} matrix")]
    NotSkew(usize, usize),
    #[error("basis of g is linearly dependent")]
    Dependent,
    #[error("g is not closed under the commutator")]
    NotClosed,
    #[error("construction check failed: {0}")]
    Construction(String),
}

type Vector = Vec<Rational>;

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

/// Scales a nonzero vector to a primitive integer vector with positive leading entry.
fn primitive(v: Vector) -> Vector {
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let l = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    let lead_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let q = Rational::from_big(x / &g, num_bigint::BigInt::one());
            if lead_neg {
                -q
            } else {
                q
            }
        })
        .collect()
}

/// Exact Gram–Schmidt; fails on dependent input.
fn orthogonalize(vs: &[Vector]) -> Result<Vec<Vector>, GStructureError> {
    let mut out: Vec<(Vector, Rational)> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for (u, nu) in &out {
            let c = dot(&w, u) / nu;
            if !c.is_zero() {
                for (a, b) in w.iter_mut().zip(u) {
                    *a -= &(&c * b);
                }
            }
        }
        if w.iter().all(Rational::is_zero) {
            return Err(GStructureError::Dependent);
        }
        let w = primitive(w);
        let nu = dot(&w, &w);
        out.push((w, nu));
    }
    Ok(out.into_iter().map(|(w, _)| w).collect())
}

/// Orthogonal splitting `so(n) = g ⊕ m` under `⟨A,B⟩ = ½ tr(AᵀB)`.
#[derive(Clone, Debug)]
pub struct GStructure {
    pub label: String,
    pub n: usize,
    pub g_basis: Vec<Matrix<Rational>>,
    pub m_basis: Vec<Matrix<Rational>>,
}

/// Outcome of the structural checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureChecks {
    pub dim_g: usize,
    pub dim_m: usize,
    pub closed: bool,
    pub orthogonal: bool,
    pub g_preserves_m: bool,
}

impl StructureChecks {
    pub fn ok(&self, n: usize) -> bool {
        self.closed && self.orthogonal && self.g_preserves_m && self.dim_g + self.dim_m == binomial(n, 2)
    }
}

fn norms(basis: &[Matrix<Rational>]) -> Vec<Rational> {
    basis.iter().map(|b| b.half_trace_inner(b)).collect()
}

impl GStructure {
    /// Orthogonalizes the given basis of `g` and computes `m = g^⊥`.
    pub fn from_g_basis(label: &str, n: usize, basis: &[Matrix<Rational>]) -> Result<Self, GStructureError> {
        for (i, b) in basis.iter().enumerate() {
            if b.rows() != n || b.cols() != n || !b.is_skew() {
                return Err(GStructureError::NotSkew(i, n));
            }
        }
        let coords: Vec<Vector> = basis.iter().map(|b| matrix_to_form(b).coeffs().to_vec()).collect();
        let g = orthogonalize(&coords)?;
        let len = binomial(n, 2);
        let comp = if g.is_empty() {
            Matrix::identity(len).columns()
        } else {
            nullspace(&Matrix::from_rows(g.clone())).columns()
        };
        let m = orthogonalize(&comp)?;
        let to_mats = |vs: &[Vector]| -> Vec<Matrix<Rational>> {
            vs.iter().map(|v| form_to_matrix(&KForm::from_coeffs(n, 2, v.clone()))).collect()
        };
        let gs = GStructure { label: label.into(), n, g_basis: to_mats(&g), m_basis: to_mats(&m) };
        if !gs.check().closed {
            return Err(GStructureError::NotClosed);
        }
        Ok(gs)
    }

    /// `spin9_16`, `g2_7` or `spin7_8` (short names `spin9`, `g2`, `spin7` also accepted).
    pub fn builtin(label: &str, sys: &CliffordSystem) -> Result<Self, GStructureError> {
        let gs = match label {
            "spin9_16" | "spin9" => GStructure {
                label: "spin9_16".into(),
                n: DIM,
                g_basis: sys.omega_matrices().to_vec(),
                m_basis: sys.sigma_matrices().to_vec(),
            },
            "spin7_8" | "spin7" => {
                let a: Vec<Matrix<Rational>> = (1..8).map(|j| sys.table().right_mult(j)).collect();
                let half = Rational::new(1, 2);
                let basis: Vec<Matrix<Rational>> = combinations(7, 2)
                    .iter()
                    .map(|t| a[t[0]].mul(&a[t[1]]).scale(&half))
                    .collect();
                Self::from_g_basis("spin7_8", 8, &basis)?
            }
            "g2_7" | "g2" => Self::from_g_basis("g2_7", 7, &g2_basis(sys.table()))?,
            other => return Err(GStructureError::UnknownGroup(other.to_string())),
        };
        let want = match gs.label.as_str() {
            "spin9_16" => (36, 84),
            "spin7_8" => (21, 7),
            _ => (14, 7),
        };
        let checks = gs.check();
        if (checks.dim_g, checks.dim_m) != want || !checks.ok(gs.n) {
            return Err(GStructureError::Construction(format!("{}: {checks:?}", gs.label)));
        }
        Ok(gs)
    }

    pub fn check(&self) -> StructureChecks {
        let gn = norms(&self.g_basis);
        let in_span = |x: &Matrix<Rational>, basis: &[Matrix<Rational>], ns: &[Rational]| {
            let mut acc = Matrix::zeros(self.n, self.n);
            for (b, nu) in basis.iter().zip(ns) {
                let c = b.half_trace_inner(x) / nu;
                if !c.is_zero() {
                    acc = acc.add(&b.scale(&c));
                }
            }
            acc == *x
        };
        let mn = norms(&self.m_basis);
        let closed = self.g_basis.par_iter().enumerate().all(|(i, a)| {
            self.g_basis[i + 1..].iter().all(|b| in_span(&a.commutator(b), &self.g_basis, &gn))
        });
        let orthogonal = self
            .g_basis
            .iter()
            .all(|a| self.m_basis.iter().all(|b| a.half_trace_inner(b).is_zero()));
        let g_preserves_m = self
            .g_basis
            .par_iter()
            .all(|a| self.m_basis.iter().all(|b| in_span(&a.commutator(b), &self.m_basis, &mn)));
        StructureChecks {
            dim_g: self.g_basis.len(),
            dim_m: self.m_basis.len(),
            closed,
            orthogonal,
            g_preserves_m,
        }
    }

    fn inv_norms(basis: &[Matrix<Rational>]) -> Vec<Rational> {
        norms(basis).iter().map(|x| x.recip().unwrap()).collect()
    }

    /// `Θ₁(T) = Σ_i (σ_i ⌟ T) ⊗ σ_i` over an orthonormal basis of m, in
    /// coordinates `x · dim m + k` over `m_basis`.
    pub fn theta1_operator(&self) -> SparseMatrix {
        contraction_operator(self.n, &self.m_basis, &Self::inv_norms(&self.m_basis))
    }

    /// `Θ₂(T) = Σ_j (μ_j ⌟ T) ⊗ μ_j` over an orthonormal basis of g.
    pub fn theta2_operator(&self) -> SparseMatrix {
        contraction_operator(self.n, &self.g_basis, &Self::inv_norms(&self.g_basis))
    }

    fn so_basis(&self) -> Vec<Matrix<Rational>> {
        self.m_basis.iter().chain(&self.g_basis).cloned().collect()
    }

    /// `Θ₁ ⊕ Θ₂` into `R^n ⊗ so(n)`, coordinates `x · dim so(n) + k` over `m_basis ++ g_basis`.
    pub fn theta_operator(&self) -> SparseMatrix {
        let b = self.so_basis();
        contraction_operator(self.n, &b, &Self::inv_norms(&b))
    }

    /// `Ψ ⊕ Φ` on `R^n ⊗ so(n)` in the coordinates of [`Self::theta_operator`].
    pub fn psi_phi_operator(&self) -> SparseMatrix {
        cubic_operator(self.n, &self.so_basis())
    }

    pub fn theta1(&self, t: &KForm) -> Vector {
        self.theta1_operator().mul_vec(t.coeffs())
    }

    pub fn theta2(&self, t: &KForm) -> Vector {
        self.theta2_operator().mul_vec(t.coeffs())
    }

    /// Action of each g basis element on `R^n` (the matrices themselves).
    pub fn defining_rep(&self) -> Representation {
        Representation {
            label: format!("R{}", self.n),
            gens: self.g_basis.iter().map(SparseMatrix::from_dense).collect(),
        }
    }

    /// Adjoint action of g on m in coordinates over `m_basis`.
    pub fn m_rep(&self) -> Representation {
        let mn = norms(&self.m_basis);
        let gens = self
            .g_basis
            .par_iter()
            .map(|a| {
                let mut trip = Vec::new();
                for (c, b) in self.m_basis.iter().enumerate() {
                    let img = a.commutator(b);
                    for (d, bd) in self.m_basis.iter().enumerate() {
                        let v = bd.half_trace_inner(&img) / &mn[d];
                        if !v.is_zero() {
                            trip.push((d, c, v));
                        }
                    }
                }
                SparseMatrix::from_triplets(self.m_basis.len(), self.m_basis.len(), trip)
            })
            .collect();
        Representation { label: "m".into(), gens }
    }

    /// Casimir `−Σ X_k²/|X_k|²` of g on a representation given over `g_basis`.
    pub fn casimir(&self, rep: &Representation) -> SparseMatrix {
        let inv = Self::inv_norms(&self.g_basis);
        let n = rep.dim();
        rep.gens
            .iter()
            .zip(&inv)
            .fold(SparseMatrix::zeros(n, n), |acc, (x, s)| acc.axpy(&-s, &x.mul(x)))
    }
}

/// `g₂ = {A ∈ so(7) : A·φ = 0}` for `φ(x,y,z) = ⟨xy, z⟩` on the imaginary octonions.
pub fn g2_basis(table: &OctonionTable) -> Vec<Matrix<Rational>> {
    let n = 7;
    let phi = |i: usize, j: usize, k: usize| -> i64 {
        let (s, c) = table.mul(i + 1, j + 1);
        if c == k + 1 {
            s as i64
        } else {
            0
        }
    };
    let pairs = combinations(n, 2);
    let triples = combinations(n, 3);
    // Rows: (A·φ)(e_i,e_j,e_k) for i<j<k; columns: A = E_{ba} − E_{ab} for pair (a,b).
    let mut rows = vec![vec![Rational::zero(); pairs.len()]; triples.len()];
    for (c, pr) in pairs.iter().enumerate() {
        let mut a = Matrix::<Rational>::zeros(n, n);
        a.set(pr[1], pr[0], Rational::one());
        a.set(pr[0], pr[1], -Rational::one());
        for (r, t) in triples.iter().enumerate() {
            let mut acc = 0i64;
            for slot in 0..3 {
                for l in 0..n {
                    let v = a.get(l, t[slot]);
                    if v.is_zero() {
                        continue;
                    }
                    let mut u = [t[0], t[1], t[2]];
                    u[slot] = l;
                    acc -= v.as_small().unwrap().0 * phi(u[0], u[1], u[2]);
                }
            }
            rows[r][c] = Rational::from_int(acc);
        }
    }
    let ker = nullspace(&Matrix::from_rows(rows));
    ker.columns()
        .into_iter()
        .map(|v| form_to_matrix(&KForm::from_coeffs(n, 2, v)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelImage {
    pub lambda3_dim: usize,
    pub composition_zero: bool,
    pub rank_theta: usize,
    pub rank_psi_phi: usize,
    pub kernel_dim: usize,
    pub primes: Vec<u64>,
    /// Both ranks certified by nonsingular minors and equal dimensions.
    pub equal: bool,
}

/// Compares `ker(Ψ ⊕ Φ)` with `im(Θ₁ ⊕ Θ₂)`.
///
/// The composition is checked to be zero exactly, so `im ⊆ ker`; the rank of
/// `Ψ ⊕ Φ` is certified from below by a nonsingular minor, which bounds the
/// kernel from above, and `Θ₁ ⊕ Θ₂` has full column rank.
pub fn kernel_image_check(gs: &GStructure, seed: u64) -> KernelImage {
    let theta = gs.theta_operator();
    let f = gs.psi_phi_operator();
    let composition_zero = f.mul(&theta).is_zero();
    let (ct, cf) = rayon::join(|| rank_certified_sparse(&theta, seed), || rank_certified_sparse(&f, seed ^ 0x9e37));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x51);
    let check = crate::linalg::modular::random_primes(&mut rng, 1, false)[0];
    let minors_ok = ct.verify_minor_mod(&theta, check) && cf.verify_minor_mod(&f, check);
    let kernel_dim = f.cols() - cf.rank;
    let lambda3_dim = binomial(gs.n, 3);
    KernelImage {
        lambda3_dim,
        composition_zero,
        rank_theta: ct.rank,
        rank_psi_phi: cf.rank,
        kernel_dim,
        primes: ct.primes.iter().chain(&cf.primes).copied().collect(),
        equal: composition_zero && minors_ok && ct.full && ct.rank == kernel_dim,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeComponent {
    pub name: String,
    pub dim: usize,
    /// Dimension of the intersection with `im Θ₁`.
    pub in_image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypesReport {
    pub group: String,
    pub total_dim: usize,
    pub image_dim: usize,
    pub excluded_dim: usize,
    pub components: Vec<TypeComponent>,
    /// The conformal type `v ↦ (X ↦ pr_m(v∧X))` lies in `im Θ₁`.
    pub conformal_in_image: bool,
}

fn component_names(label: &str, dim: usize) -> String {
    let name = match (label, dim) {
        ("g2_7", 1) => "R1",
        ("g2_7", 7) => "R7",
        ("g2_7", 14) => "Lambda2_14",
        ("g2_7", 27) => "Lambda3_27",
        ("spin7_8", 8) => "Delta7",
        ("spin7_8", 48) => "K",
        _ => "",
    };
    if name.is_empty() {
        format!("dim{dim}")
    } else {
        name.to_string()
    }
}

/// `X ↦ pr_m(v ∧ X)` for `v = e_i`, in Θ₁ coordinates.
fn conformal_type(gs: &GStructure, i: usize) -> Vector {
    let dm = gs.m_basis.len();
    let inv = GStructure::inv_norms(&gs.m_basis);
    let mut out = vec![Rational::zero(); gs.n * dm];
    for x in 0..gs.n {
        for (k, b) in gs.m_basis.iter().enumerate() {
            // ⟨e_i ∧ e_x, b⟩ = b(e_i, e_x) = B[x][i].
            out[x * dm + k] = b.get(x, i) * &inv[k];
        }
    }
    out
}

/// Splits `R^n ⊗ m` into Casimir eigenspaces and locates `im Θ₁`.
pub fn admissible_types_report(gs: &GStructure, sys: &CliffordSystem, seed: u64) -> TypesReport {
    let theta1 = gs.theta1_operator();
    let lu = Factorization::new(&theta1);
    let image_dim = lu.rank();
    let total_dim = theta1.rows();
    let in_image = |v: &[Rational]| lu.solve(v).solution().is_some();
    let conformal_in_image = (0..gs.n).all(|i| in_image(&conformal_type(gs, i)));
    let components = if gs.label == "spin9_16" {
        let ctx = context(sys);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let v: Vector = (0..total_dim).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect();
        let gamma = crate::torsion::GammaTensor::from_vector(&v);
        GammaType::ALL
            .iter()
            .map(|&t| {
                let part = ctx.component(&gamma, t).to_vector();
                let dim = t.dim() as usize;
                // Each type occurs once, so it meets the invariant image fully or trivially.
                let inside = !part.iter().all(Rational::is_zero) && in_image(&part);
                TypeComponent { name: t.name().into(), dim, in_image: if inside { dim } else { 0 } }
            })
            .collect()
    } else {
        small_components(gs, &theta1, seed)
    };
    TypesReport {
        group: gs.label.clone(),
        total_dim,
        image_dim,
        excluded_dim: total_dim - image_dim,
        components,
        conformal_in_image,
    }
}

fn small_components(gs: &GStructure, theta1: &SparseMatrix, seed: u64) -> Vec<TypeComponent> {
    let rep = gs.defining_rep().tensor(&gs.m_rep());
    let c = gs.casimir(&rep);
    let spectrum = joint_eigenspace_dims(&[c.clone()], seed).expect("Casimir has rational spectrum");
    let image = theta1.to_dense();
    let img_rank = crate::linalg::rank_exact(&image);
    spectrum
        .iter()
        .map(|(val, &dim)| {
            let shifted = c.sub(&SparseMatrix::identity(c.rows()).scale(&val[0].re));
            let e = nullspace(&shifted.to_dense());
            let both = crate::linalg::rank_exact(&e.hstack(&image));
            TypeComponent { name: component_names(&gs.label, dim), dim, in_image: dim + img_rank - both }
        })
        .collect()
}

/// `Θ₁(G·T) = G·Θ₁(T)` for the given generators (indices into `g_basis`).
pub fn theta1_equivariant(gs: &GStructure, gens: &[usize]) -> bool {
    let theta1 = gs.theta1_operator();
    let l3 = gs.defining_rep().exterior_power(3);
    let tm = gs.defining_rep().tensor(&gs.m_rep());
    gens.par_iter().all(|&k| theta1.mul(&l3.gens[k]) == tm.gens[k].mul(&theta1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub lower: u64,
    pub upper: i64,
    pub nonempty: bool,
}

/// Integer intervals `⌈(n²−1)/3⌉ ≤ dim g ≤ ⌊(n²−3n+2)/2⌋` for `2 ≤ n ≤ n_max`.
pub fn dimension_inequality_scan(n_max: u64) -> Vec<ScanRow> {
    (2..=n_max)
        .map(|n| {
            let lower = (n * n - 1).div_ceil(3);
            let upper = ((n * n + 2) as i64 - 3 * n as i64).div_euclid(2);
            ScanRow { n, lower, upper, nonempty: lower as i64 <= upper }
        })
        .collect()
}

/// First `(n, dim g)` with a nonempty interval.
pub fn minimal_pair(rows: &[ScanRow]) -> Option<(u64, u64)> {
    rows.iter().find(|r| r.nonempty).map(|r| (r.n, r.lower))
}

/// `{"n": int, "g_basis": [matrix, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub n: usize,
    pub g_basis: Vec<Matrix<Rational>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys() -> CliffordSystem {
        CliffordSystem::build_standard().unwrap()
    }

    #[test]
    fn builtin_dimensions() {
        let s = sys();
        for (l, n, g, m) in [("g2", 7, 14, 7), ("spin7", 8, 21, 7), ("spin9", 16, 36, 84)] {
            let gs = GStructure::builtin(l, &s).unwrap();
            assert_eq!((gs.n, gs.g_basis.len(), gs.m_basis.len()), (n, g, m));
        }
        assert!(GStructure::builtin("so3", &s).is_err());
    }

    #[test]
    fn spin9_theta1_is_the_embedding() {
        let s = sys();
        let gs = GStructure::builtin("spin9", &s).unwrap();
        let tau = KForm::basis(DIM, &[1, 5, 11]).unwrap();
        let g = crate::torsion::embed_three_form(&s, &tau).unwrap();
        assert_eq!(gs.theta1(&tau), g.to_vector());
    }

    #[test]
    fn small_kernel_image() {
        let s = sys();
        let g2 = kernel_image_check(&GStructure::builtin("g2", &s).unwrap(), 7);
        assert_eq!((g2.kernel_dim, g2.rank_theta, g2.equal), (35, 35, true));
        let sp7 = GStructure::builtin("spin7", &s).unwrap();
        let k = kernel_image_check(&sp7, 7);
        assert_eq!((k.kernel_dim, k.rank_theta, k.equal), (56, 56, true));
        assert_eq!(crate::linalg::rank_exact(&sp7.theta1_operator().to_dense()), 56);
    }

    #[test]
    fn g2_types() {
        let s = sys();
        let gs = GStructure::builtin("g2", &s).unwrap();
        let r = admissible_types_report(&gs, &s, 3);
        let mut dims: Vec<(usize, usize)> = r.components.iter().map(|c| (c.dim, c.in_image)).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![(1, 1), (7, 7), (14, 0), (27, 27)]);
        assert_eq!((r.total_dim, r.image_dim), (49, 35));
        assert!(r.conformal_in_image);
        assert!(theta1_equivariant(&gs, &(0..14).collect::<Vec<_>>()));
    }

    #[test]
    fn spin7_types() {
        let s = sys();
        let gs = GStructure::builtin("spin7", &s).unwrap();
        let r = admissible_types_report(&gs, &s, 3);
        let mut dims: Vec<(usize, usize)> = r.components.iter().map(|c| (c.dim, c.in_image)).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![(8, 8), (48, 48)]);
        assert_eq!(r.excluded_dim, 0);
        assert!(theta1_equivariant(&gs, &(0..21).collect::<Vec<_>>()));
    }

    #[test]
    fn custom_basis_is_orthogonalized() {
        // so(3) ⊂ so(4) acting on the first three coordinates, given non-orthogonally.
        let e = |a: usize, b: usize| {
            let mut m = Matrix::<Rational>::zeros(4, 4);
            m.set(b, a, Rational::one());
            m.set(a, b, -Rational::one());
            m
        };
        let basis = vec![e(0, 1), e(0, 1).add(&e(0, 2)), e(1, 2)];
        let gs = GStructure::from_g_basis("so3", 4, &basis).unwrap();
        assert!(gs.check().ok(4));
        assert_eq!(gs.m_basis.len(), 3);
        let bad = vec![e(0, 1), e(2, 3), e(0, 2)];
        assert_eq!(GStructure::from_g_basis("x", 4, &bad).unwrap_err(), GStructureError::NotClosed);
        assert_eq!(GStructure::from_g_basis("x", 4, &[e(0, 1), e(0, 1)]).unwrap_err(), GStructureError::Dependent);
    }

    #[test]
    fn scan() {
        let rows = dimension_inequality_scan(32);
        let at = |n: u64| rows.iter().find(|r| r.n == n).unwrap().clone();
        assert!(!at(7).nonempty);
        assert_eq!((at(7).lower, at(7).upper), (16, 15));
        assert_eq!((at(8).lower, at(8).upper), (21, 21));
        assert_eq!((at(9).lower, at(9).upper), (27, 28));
        assert_eq!(minimal_pair(&rows), Some((8, 21)));
    }
}
