//! Matrices of the spin(9) action on the spaces built from R^16.

use std::str::FromStr;

use rayon::prelude::*;

use crate::clifford::{CliffordSystem, DIM};
use crate::forms::{combinations, sort_with_sign, tuple_index};
use crate::linalg::{Matrix, SparseMatrix};
use crate::scalar::Rational;

use super::RepError;

/// A representation of spin(9) given by the images of the 36 generators
/// `X_{αβ} = ½ I_αI_β`, listed in lexicographic order of `(α, β)`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub label: String,
    pub gens: Vec<SparseMatrix>,
}

/// Positions of `(1,2), (3,4), (5,6), (7,8)` among the 36 pairs.
pub fn cartan_positions() -> [usize; 4] {
    [0, 1, 2, 3].map(|k| tuple_index(9, &[2 * k, 2 * k + 1]))
}

/// `H_k = ½ I_{2k−1} I_{2k}` on R^16.
pub fn cartan_basis(sys: &CliffordSystem) -> Vec<Matrix<Rational>> {
    let g = generators(sys);
    cartan_positions().iter().map(|&p| g[p].clone()).collect()
}

/// The 36 generators `½ I_αI_β` on R^16.
pub fn generators(sys: &CliffordSystem) -> Vec<Matrix<Rational>> {
    let h = Rational::new(1, 2);
    sys.omega_matrices().iter().map(|m| m.scale(&h)).collect()
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.gens.first().map_or(0, SparseMatrix::rows)
    }

    pub fn cartan(&self) -> Vec<SparseMatrix> {
        cartan_positions().iter().map(|&p| self.gens[p].clone()).collect()
    }

    /// `C = −Σ X²`; acts as `⟨λ, λ+2ρ⟩` on an irreducible of highest weight `λ`.
    pub fn casimir(&self) -> SparseMatrix {
        let squares: Vec<SparseMatrix> = self.gens.par_iter().map(|x| x.mul(x)).collect();
        let n = self.dim();
        squares.iter().fold(SparseMatrix::zeros(n, n), |acc, s| acc.sub(s))
    }

    pub fn defining(sys: &CliffordSystem) -> Self {
        let gens = generators(sys).iter().map(SparseMatrix::from_dense).collect();
        Representation { label: "V16".into(), gens }
    }

    /// Induced action on `Λ^k` in the basis `e_{i_1}∧…∧e_{i_k}`, `i_1<…<i_k`.
    pub fn exterior_power(&self, k: usize) -> Self {
        let n = self.dim();
        let tuples = combinations(n, k);
        let gens = self
            .gens
            .par_iter()
            .map(|x| {
                let xt = x.transpose();
                let mut trip = Vec::new();
                for (col, t) in tuples.iter().enumerate() {
                    for s in 0..k {
                        for (j, v) in xt.row(t[s]) {
                            let mut u = t.clone();
                            u[s] = *j;
                            if let Some((sorted, sign)) = sort_with_sign(&u) {
                                let row = tuple_index(n, &sorted);
                                let val = if sign < 0 { -v } else { v.clone() };
                                trip.push((row, col, val));
                            }
                        }
                    }
                }
                SparseMatrix::from_triplets(tuples.len(), tuples.len(), trip)
            })
            .collect();
        Representation { label: format!("Lambda{k}({})", self.label), gens }
    }

    /// Action `B ↦ XB − BX` on symmetric matrices, coordinates `B_{yz}` for `y ≤ z`.
    pub fn sym2(&self) -> Self {
        let n = self.dim();
        let pairs = sym_pairs(n);
        let gens = self
            .gens
            .par_iter()
            .map(|x| {
                let xt = x.transpose();
                let mut trip = Vec::new();
                for (row, &(y, z)) in pairs.iter().enumerate() {
                    // (XB)_{yz} = Σ_w X_{yw} B_{wz}
                    for (w, v) in x.row(y) {
                        trip.push((row, sym_index(n, *w, z), v.clone()));
                    }
                    // −(BX)_{yz} = −Σ_w B_{yw} X_{wz}
                    for (w, v) in xt.row(z) {
                        trip.push((row, sym_index(n, y, *w), -v));
                    }
                }
                SparseMatrix::from_triplets(pairs.len(), pairs.len(), trip)
            })
            .collect();
        Representation { label: format!("Sym2({})", self.label), gens }
    }

    /// `X ⊗ 1 + 1 ⊗ Y`, index `a · dim(other) + b`.
    pub fn tensor(&self, other: &Representation) -> Self {
        let (ia, ib) = (SparseMatrix::identity(self.dim()), SparseMatrix::identity(other.dim()));
        let gens = self
            .gens
            .par_iter()
            .zip(&other.gens)
            .map(|(x, y)| x.kron(&ib).add(&ia.kron(y)))
            .collect();
        Representation { label: format!("{}⊗{}", self.label, other.label), gens }
    }

    /// Conjugation action on the span of an orthogonal family of 16×16
    /// matrices, in coordinates over that family. Fails if the span is not preserved.
    pub fn conjugation(
        sys: &CliffordSystem,
        label: &str,
        basis: &[Matrix<Rational>],
    ) -> Result<Self, RepError> {
        let norms: Vec<Rational> = basis.iter().map(|b| b.half_trace_inner(b)).collect();
        let gens: Result<Vec<SparseMatrix>, RepError> = generators(sys)
            .par_iter()
            .map(|x| {
                let mut trip = Vec::new();
                for (c, b) in basis.iter().enumerate() {
                    let img = x.commutator(b);
                    let mut rebuilt = Matrix::zeros(DIM, DIM);
                    for (d, bd) in basis.iter().enumerate() {
                        let coef = bd.half_trace_inner(&img) / &norms[d];
                        if !coef.is_zero() {
                            rebuilt = rebuilt.add(&bd.scale(&coef));
                            trip.push((d, c, coef));
                        }
                    }
                    if rebuilt != img {
                        return Err(RepError::NotClosed(label.to_string()));
                    }
                }
                Ok(SparseMatrix::from_triplets(basis.len(), basis.len(), trip))
            })
            .collect();
        Ok(Representation { label: label.into(), gens: gens? })
    }
}

fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|y| (y..n).map(move |z| (y, z))).collect()
}

/// Position of `B_{yz}` in the `y ≤ z` ordering.
pub fn sym_index(n: usize, y: usize, z: usize) -> usize {
    let (a, b) = if y <= z { (y, z) } else { (z, y) };
    a * n - a * a.saturating_sub(1) / 2 + (b - a)
}

/// The products `I_aI_bI_cI_d`, `a<b<c<d`: symmetric, traceless, spanning a copy of Λ⁴(R⁹).
pub fn d126_basis(sys: &CliffordSystem) -> Vec<Matrix<Rational>> {
    combinations(9, 4)
        .iter()
        .map(|t| sys.matrices()[t[0]].mul(&sys.matrices()[t[1]]).mul(&sys.matrices()[t[2]]).mul(&sys.matrices()[t[3]]))
        .collect()
}

/// Named spaces accepted by [`rep_action`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    V16,
    M,
    Spin9,
    Adjoint,
    Lambda3,
    Sym2,
    D126,
    V16TensorM,
    V16TensorSpin9,
    V16TensorSym2,
    V16TensorD126,
}

impl Space {
    pub const ALL: [Space; 11] = [
        Space::V16,
        Space::M,
        Space::Spin9,
        Space::Adjoint,
        Space::Lambda3,
        Space::Sym2,
        Space::D126,
        Space::V16TensorM,
        Space::V16TensorSpin9,
        Space::V16TensorSym2,
        Space::V16TensorD126,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Space::V16 => "v16",
            Space::M => "m",
            Space::Spin9 => "spin9",
            Space::Adjoint => "adjoint",
            Space::Lambda3 => "lambda3",
            Space::Sym2 => "sym2",
            Space::D126 => "d126",
            Space::V16TensorM => "v16-tensor-m",
            Space::V16TensorSpin9 => "v16-tensor-spin9",
            Space::V16TensorSym2 => "v16-tensor-sym2",
            Space::V16TensorD126 => "v16-tensor-d126",
        }
    }
}

impl FromStr for Space {
    type Err = RepError;
    fn from_str(s: &str) -> Result<Self, RepError> {
        Space::ALL
            .iter()
            .copied()
            .find(|sp| sp.name() == s)
            .ok_or_else(|| RepError::UnknownSpace(s.to_string()))
    }
}

/// Generators acting on the named space.
pub fn rep_action(sys: &CliffordSystem, space: Space) -> Result<Representation, RepError> {
    let v = Representation::defining(sys);
    let m = || Representation::conjugation(sys, "m", sys.sigma_matrices());
    let spin9 = || Representation::conjugation(sys, "spin9", sys.omega_matrices());
    let d126 = || Representation::conjugation(sys, "D126", &d126_basis(sys));
    Ok(match space {
        Space::V16 => v,
        Space::M => m()?,
        Space::Spin9 => spin9()?,
        Space::Adjoint => v.exterior_power(2),
        Space::Lambda3 => v.exterior_power(3),
        Space::Sym2 => v.sym2(),
        Space::D126 => d126()?,
        Space::V16TensorM => v.tensor(&m()?),
        Space::V16TensorSpin9 => v.tensor(&spin9()?),
        Space::V16TensorSym2 => v.tensor(&v.sym2()),
        Space::V16TensorD126 => v.tensor(&d126()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys() -> CliffordSystem {
        CliffordSystem::build_standard().unwrap()
    }

    #[test]
    fn sym_index_enumerates_pairs() {
        let n = 16;
        for (k, &(y, z)) in sym_pairs(n).iter().enumerate() {
            assert_eq!(sym_index(n, y, z), k);
            assert_eq!(sym_index(n, z, y), k);
        }
    }

    #[test]
    fn cartan_elements() {
        let s = sys();
        let h = cartan_basis(&s);
        let quarter = Matrix::identity(DIM).scale(&Rational::new(-1, 4));
        for a in &h {
            assert_eq!(a.mul(a), quarter);
            for b in &h {
                assert!(a.commutator(b).is_zero());
            }
        }
    }

    #[test]
    fn dimensions() {
        let s = sys();
        let dims: Vec<usize> = [Space::Lambda3, Space::Sym2, Space::M, Space::Spin9, Space::D126]
            .iter()
            .map(|&sp| rep_action(&s, sp).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![560, 136, 84, 36, 126]);
        assert!("nope".parse::<Space>().is_err());
    }

    #[test]
    fn generators_form_a_representation() {
        // [ρ(X_a), ρ(X_b)] = ρ([X_a, X_b]) with the bracket read off on R^16.
        let s = sys();
        let g = generators(&s);
        let coords = |m: &Matrix<Rational>| {
            let c = s.spin9_coords(m);
            // X = ½ω, so coefficients over X are twice those over ω.
            c.iter().map(|x| x * Rational::from_int(2)).collect::<Vec<_>>()
        };
        for sp in [Space::M, Space::Lambda3, Space::Sym2, Space::D126] {
            let r = rep_action(&s, sp).unwrap();
            for (a, b) in [(0, 1), (0, 8), (3, 20), (11, 35)] {
                let br = coords(&g[a].commutator(&g[b]));
                let lhs = r.gens[a].commutator(&r.gens[b]);
                let mut rhs = SparseMatrix::zeros(r.dim(), r.dim());
                for (k, c) in br.iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.axpy(c, &r.gens[k]);
                    }
                }
                assert_eq!(lhs, rhs, "{sp:?} {a} {b}");
            }
        }
    }

    #[test]
    fn leibniz_on_decomposable_tensors() {
        let s = sys();
        let v = Representation::defining(&s);
        let l3 = v.exterior_power(3);
        let x = &v.gens[5];
        let e = |i: usize| {
            let mut u = vec![Rational::zero(); DIM];
            u[i] = Rational::one();
            u
        };
        let (a, b, c) = (e(0), e(7), e(12));
        let wedge3 = |p: &[Rational], q: &[Rational], r: &[Rational]| {
            crate::forms::wedge(p, q).unwrap().wedge_vector(r).coeffs().to_vec()
        };
        let lhs = l3.gens[5].mul_vec(&wedge3(&a, &b, &c));
        let (xa, xb, xc) = (x.mul_vec(&a), x.mul_vec(&b), x.mul_vec(&c));
        let rhs: Vec<Rational> = wedge3(&xa, &b, &c)
            .iter()
            .zip(wedge3(&a, &xb, &c))
            .zip(wedge3(&a, &b, &xc))
            .map(|((p, q), r)| p + &q + &r)
            .collect();
        assert_eq!(lhs, rhs);
    }
}
