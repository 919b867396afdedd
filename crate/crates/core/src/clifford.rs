//! The Spin(9) Clifford system on R^16 = R^8 ⊕ R^8 built from octonions, the
//! 2-form systems ω and σ, and the splitting so(16) = spin(9) ⊕ m.

use serde::{Deserialize, Serialize};

use crate::forms::{combinations, KForm};
use crate::linalg::Matrix;
use crate::scalar::Rational;

pub const DIM: usize = 16;

/// Oriented lines of the Fano plane: `e_a e_b = e_c` for each cyclic rotation.
pub const FANO_TRIPLES: [[usize; 3]; 7] =
    [[1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [5, 6, 1], [6, 7, 2], [7, 1, 3]];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("Clifford relation failed: {0}")]
    Relation(String),
    #[error("index tuple must be strictly increasing within 1..=9, got {0:?}")]
    BadIndex(Vec<usize>),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("matrix must be {DIM}x{DIM}")]
    WrongShape,
    #[error("malformed octonion table: {0}")]
    Table(String),
}

/// Products `e_i e_j = sign · e_k` of the octonion units, `e_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctonionTable {
    prod: [[(i8, u8); 8]; 8],
}

impl OctonionTable {
    pub fn standard() -> Self {
        let mut prod = [[(1i8, 0u8); 8]; 8];
        for i in 0..8 {
            prod[0][i] = (1, i as u8);
            prod[i][0] = (1, i as u8);
        }
        for i in 1..8 {
            prod[i][i] = (-1, 0);
        }
        for t in FANO_TRIPLES {
            for r in 0..3 {
                let (a, b, c) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                prod[a][b] = (1, c as u8);
                prod[b][a] = (-1, c as u8);
            }
        }
        OctonionTable { prod }
    }

    /// `e_i e_j` as `(sign, k)`.
    pub fn mul(&self, i: usize, j: usize) -> (i8, usize) {
        let (s, k) = self.prod[i][j];
        (s, k as usize)
    }

    /// Overrides one product; used to exercise failure reporting.
    pub fn with_entry(mut self, i: usize, j: usize, sign: i8, k: usize) -> Self {
        self.prod[i][j] = (sign, k as u8);
        self
    }

    /// Parses the 7×7 products of imaginary units written as `"e3"`, `"-e5"`, `"1"`, `"-1"`.
    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self, CliffordError> {
        if rows.len() != 7 || rows.iter().any(|r| r.len() != 7) {
            return Err(CliffordError::Table("expected 7 rows of 7 entries".into()));
        }
        let mut t = Self::standard();
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                let (sign, body) = match s.strip_prefix('-') {
                    Some(b) => (-1, b),
                    None => (1, s.strip_prefix('+').unwrap_or(s)),
                };
                let k = if body == "1" {
                    0
                } else {
                    body.strip_prefix('e')
                        .and_then(|d| d.parse::<usize>().ok())
                        .filter(|&d| (1..=7).contains(&d))
                        .ok_or_else(|| CliffordError::Table(format!("bad entry {s:?}")))?
                };
                t.prod[i + 1][j + 1] = (sign, k as u8);
            }
        }
        Ok(t)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (1..8)
            .map(|i| {
                (1..8)
                    .map(|j| {
                        let (s, k) = self.mul(i, j);
                        let body = if k == 0 { "1".to_string() } else { format!("e{k}") };
                        if s < 0 {
                            format!("-{body}")
                        } else {
                            body
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Matrix of right multiplication `x ↦ x·e_j` on R^8 with basis `e_0..e_7`.
    pub fn right_mult(&self, j: usize) -> Matrix<Rational> {
        let mut m = Matrix::zeros(8, 8);
        for i in 0..8 {
            let (s, k) = self.mul(i, j);
            m.set(k, i, Rational::from_int(s as i64));
        }
        m
    }
}

/// Outcome of one named relation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CliffordSystem {
    table: OctonionTable,
    i: Vec<Matrix<Rational>>,
    pairs: Vec<(usize, usize)>,
    omega: Vec<Matrix<Rational>>,
    triples: Vec<(usize, usize, usize)>,
    sigma: Vec<Matrix<Rational>>,
}

fn block(a: &Matrix<Rational>) -> Matrix<Rational> {
    let mut m = Matrix::zeros(DIM, DIM);
    for r in 0..8 {
        for c in 0..8 {
            m.set(r, 8 + c, a.get(r, c).clone());
            m.set(8 + c, r, a.get(r, c).clone());
        }
    }
    m
}

impl CliffordSystem {
    /// The standard system; every relation is verified before returning.
    pub fn build_standard() -> Result<Self, CliffordError> {
        Self::from_table(OctonionTable::standard())
    }

    /// Builds and verifies; fails with the first violated relation.
    pub fn from_table(table: OctonionTable) -> Result<Self, CliffordError> {
        let sys = Self::from_table_unchecked(table);
        match sys.verify().into_iter().find(|c| !c.ok) {
            Some(bad) => Err(CliffordError::Relation(format!("{}: {}", bad.name, bad.detail))),
            None => Ok(sys),
        }
    }

    /// Builds the matrices without checking any relation.
    pub fn from_table_unchecked(table: OctonionTable) -> Self {
        let mut i: Vec<Matrix<Rational>> = (1..8).map(|j| block(&table.right_mult(j))).collect();
        i.push(block(&Matrix::identity(8)));
        let mut i9 = Matrix::identity(DIM);
        for r in 8..DIM {
            i9.set(r, r, -Rational::one());
        }
        i.push(i9);
        let pairs: Vec<(usize, usize)> =
            combinations(9, 2).into_iter().map(|t| (t[0], t[1])).collect();
        let omega = pairs.iter().map(|&(a, b)| i[a].mul(&i[b])).collect();
        let triples: Vec<(usize, usize, usize)> =
            combinations(9, 3).into_iter().map(|t| (t[0], t[1], t[2])).collect();
        let sigma = triples.iter().map(|&(a, b, c)| i[a].mul(&i[b]).mul(&i[c])).collect();
        CliffordSystem { table, i, pairs, omega, triples, sigma }
    }

    pub fn table(&self) -> &OctonionTable {
        &self.table
    }

    /// `I_α` for `α` in `1..=9`.
    pub fn i(&self, alpha: usize) -> &Matrix<Rational> {
        &self.i[alpha - 1]
    }

    pub fn matrices(&self) -> &[Matrix<Rational>] {
        &self.i
    }

    /// `I_αI_β` for the `k`-th pair in lexicographic order (0-based positions).
    pub fn omega_matrices(&self) -> &[Matrix<Rational>] {
        &self.omega
    }

    pub fn sigma_matrices(&self) -> &[Matrix<Rational>] {
        &self.sigma
    }

    /// 1-based `(α, β)` of each spin(9) basis element.
    pub fn pair_labels(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    }

    /// 1-based `(α, β, γ)` of each m basis element.
    pub fn triple_labels(&self) -> Vec<(usize, usize, usize)> {
        self.triples.iter().map(|&(a, b, c)| (a + 1, b + 1, c + 1)).collect()
    }

    /// Position of `I_αI_β` in the ω list.
    pub fn pair_index(&self, alpha: usize, beta: usize) -> Result<usize, CliffordError> {
        if !(1 <= alpha && alpha < beta && beta <= 9) {
            return Err(CliffordError::BadIndex(vec![alpha, beta]));
        }
        Ok(crate::forms::tuple_index(9, &[alpha - 1, beta - 1]))
    }

    pub fn triple_index(&self, a: usize, b: usize, c: usize) -> Result<usize, CliffordError> {
        if !(1 <= a && a < b && b < c && c <= 9) {
            return Err(CliffordError::BadIndex(vec![a, b, c]));
        }
        Ok(crate::forms::tuple_index(9, &[a - 1, b - 1, c - 1]))
    }

    /// Every defining relation, in a fixed order.
    pub fn verify(&self) -> Vec<RelationCheck> {
        let mut out = Vec::new();
        let id = Matrix::identity(DIM);
        let mut push = |name: String, ok: bool, detail: String| {
            out.push(RelationCheck { name, ok, detail })
        };
        for a in 0..9 {
            let m = &self.i[a];
            push(format!("I{}^2 = Id", a + 1), m.mul(m) == id, String::new());
            push(format!("I{} symmetric", a + 1), m.is_symmetric(), String::new());
            let tr = m.trace();
            push(format!("tr I{} = 0", a + 1), tr.is_zero(), format!("trace {tr}"));
        }
        for a in 0..9 {
            for b in a + 1..9 {
                let ok = self.i[a].anticommutator(&self.i[b]).is_zero();
                push(format!("I{}I{} + I{}I{} = 0", a + 1, b + 1, b + 1, a + 1), ok, String::new());
            }
        }
        for (k, &(a, b)) in self.pairs.iter().enumerate() {
            push(format!("I{}I{} skew", a + 1, b + 1), self.omega[k].is_skew(), String::new());
        }
        for (k, &(a, b, c)) in self.triples.iter().enumerate() {
            push(format!("I{}I{}I{} skew", a + 1, b + 1, c + 1), self.sigma[k].is_skew(), String::new());
        }
        out
    }

    /// 2-form `ω_{αβ}(X,Y) = ⟨I_αI_β X, Y⟩`.
    pub fn omega_form(&self, alpha: usize, beta: usize) -> Result<KForm, CliffordError> {
        Ok(matrix_to_form(&self.omega[self.pair_index(alpha, beta)?]))
    }

    /// 2-form `σ_{αβγ}(X,Y) = ⟨I_αI_βI_γ X, Y⟩`.
    pub fn sigma_form(&self, a: usize, b: usize, c: usize) -> Result<KForm, CliffordError> {
        Ok(matrix_to_form(&self.sigma[self.triple_index(a, b, c)?]))
    }

    pub fn omega_forms(&self) -> Vec<KForm> {
        self.omega.iter().map(matrix_to_form).collect()
    }

    pub fn sigma_forms(&self) -> Vec<KForm> {
        self.sigma.iter().map(matrix_to_form).collect()
    }

    /// `Σ ω(X,Y)·ω + Σ σ(X,Y)·σ` over all 120 basis forms.
    pub fn basis_expansion_sum(&self, x: &[Rational], y: &[Rational]) -> KForm {
        self.omega_forms().iter().chain(&self.sigma_forms()).fold(KForm::zero(DIM, 2), |acc, f| {
            let c = f.eval(&[x, y]);
            if c.is_zero() {
                acc
            } else {
                acc.add(&f.scale(&c))
            }
        })
    }

    /// Coordinates of a skew matrix over the ω basis (`⟨A,ω⟩/8`).
    pub fn spin9_coords(&self, a: &Matrix<Rational>) -> Vec<Rational> {
        coords(&self.omega, a)
    }

    /// Coordinates of a skew matrix over the σ basis (`⟨A,σ⟩/8`).
    pub fn m_coords(&self, a: &Matrix<Rational>) -> Vec<Rational> {
        coords(&self.sigma, a)
    }

    pub fn from_spin9_coords(&self, c: &[Rational]) -> Matrix<Rational> {
        combine(&self.omega, c)
    }

    pub fn from_m_coords(&self, c: &[Rational]) -> Matrix<Rational> {
        combine(&self.sigma, c)
    }

    /// `A = g_part + m_part` with `g_part ∈ spin(9)`, `m_part ∈ m`.
    pub fn split_so16(
        &self,
        a: &Matrix<Rational>,
    ) -> Result<(Matrix<Rational>, Matrix<Rational>), CliffordError> {
        if a.rows() != DIM || a.cols() != DIM {
            return Err(CliffordError::WrongShape);
        }
        if !a.is_skew() {
            return Err(CliffordError::NotSkew);
        }
        let g = self.from_spin9_coords(&self.spin9_coords(a));
        let m = self.from_m_coords(&self.m_coords(a));
        if g.add(&m) != *a {
            return Err(CliffordError::Relation("ω and σ do not span so(16)".into()));
        }
        Ok((g, m))
    }

    /// Expansion `φ = (1/8)(Σ c_ω ω + Σ c_σ σ)` with `c = ⟨φ, ·⟩`.
    pub fn expand_in_omega_sigma(&self, phi: &KForm) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!((phi.n(), phi.degree()), (DIM, 2), "expected a 2-form on R^16");
        let c_omega = self.omega.iter().map(|m| matrix_to_form(m).inner(phi)).collect();
        let c_sigma = self.sigma.iter().map(|m| matrix_to_form(m).inner(phi)).collect();
        (c_omega, c_sigma)
    }
}

fn coords(basis: &[Matrix<Rational>], a: &Matrix<Rational>) -> Vec<Rational> {
    let eighth = Rational::new(1, 8);
    basis.iter().map(|b| b.half_trace_inner(a) * &eighth).collect()
}

fn combine(basis: &[Matrix<Rational>], c: &[Rational]) -> Matrix<Rational> {
    let mut m = Matrix::zeros(DIM, DIM);
    for (b, x) in basis.iter().zip(c) {
        if !x.is_zero() {
            m = m.add(&b.scale(x));
        }
    }
    m
}

/// The 2-form `S(X,Y) = ⟨A X, Y⟩`, so `S(e_i,e_j) = A[j][i]`.
pub fn matrix_to_form(a: &Matrix<Rational>) -> KForm {
    let n = a.rows();
    let coeffs = combinations(n, 2).iter().map(|t| a.get(t[1], t[0]).clone()).collect();
    KForm::from_coeffs(n, 2, coeffs)
}

/// Inverse of [`matrix_to_form`] on 2-forms.
pub fn form_to_matrix(s: &KForm) -> Matrix<Rational> {
    assert_eq!(s.degree(), 2, "expected a 2-form");
    let n = s.n();
    let mut a = Matrix::zeros(n, n);
    for (t, c) in combinations(n, 2).iter().zip(s.coeffs()) {
        a.set(t[1], t[0], c.clone());
        a.set(t[0], t[1], -c);
    }
    a
}

/// JSON bundle of the nine matrices and the table they came from.
#[derive(Serialize)]
pub struct CliffordBundle<'a> {
    pub octonion_table: Vec<Vec<String>>,
    pub matrices: &'a [Matrix<Rational>],
}

impl CliffordSystem {
    pub fn bundle(&self) -> CliffordBundle<'_> {
        CliffordBundle { octonion_table: self.table.to_strings(), matrices: &self.i }
    }
}

#[derive(Deserialize)]
pub struct OctonionTableJson {
    pub products: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::wedge;

    fn sys() -> CliffordSystem {
        CliffordSystem::build_standard().unwrap()
    }

    fn e(i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); DIM];
        v[i] = Rational::one();
        v
    }

    #[test]
    fn octonion_table_is_alternative_on_units() {
        // Each imaginary unit squares to −1 and distinct units anticommute.
        let t = OctonionTable::standard();
        for i in 1..8 {
            assert_eq!(t.mul(i, i), (-1, 0));
            for j in 1..8 {
                if i != j {
                    let (s1, k1) = t.mul(i, j);
                    let (s2, k2) = t.mul(j, i);
                    assert_eq!((k1, s1), (k2, -s2));
                    assert_ne!(k1, 0);
                }
            }
        }
    }

    #[test]
    fn standard_relations_hold() {
        let s = sys();
        assert!(s.verify().iter().all(|c| c.ok));
        assert_eq!(s.verify().len(), 27 + 36 + 36 + 84);
    }

    #[test]
    fn i9_acts_on_e16() {
        let s = sys();
        let v = s.i(9).mul_vec(&e(15));
        assert_eq!(v, e(15).iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn images_of_unit_vectors_are_orthonormal() {
        let s = sys();
        let mut mixed = e(0);
        mixed[15] = Rational::one();
        for (v, norm) in [(e(0), 1), (e(15), 1), (mixed, 2)] {
            let imgs: Vec<Vec<Rational>> = s.matrices().iter().map(|m| m.mul_vec(&v)).collect();
            for a in 0..9 {
                for b in 0..9 {
                    let d: Rational = imgs[a].iter().zip(&imgs[b]).map(|(x, y)| x * y).sum();
                    let want = if a == b { Rational::from_int(norm) } else { Rational::zero() };
                    assert_eq!(d, want, "alpha {a} beta {b}");
                }
            }
        }
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let bad = OctonionTable::standard().with_entry(1, 2, -1, 4);
        let err = CliffordSystem::from_table(bad).unwrap_err();
        assert!(matches!(err, CliffordError::Relation(_)));
    }

    #[test]
    fn table_string_round_trip() {
        let t = OctonionTable::standard();
        assert_eq!(OctonionTable::from_strings(&t.to_strings()).unwrap(), t);
        let mut rows = t.to_strings();
        rows[0][0] = "e9".into();
        assert!(OctonionTable::from_strings(&rows).is_err());
    }

    #[test]
    fn forms_are_orthogonal_with_norm_eight() {
        let s = sys();
        let all: Vec<KForm> = s.omega_forms().into_iter().chain(s.sigma_forms()).collect();
        assert_eq!(all.len(), 120);
        for (a, fa) in all.iter().enumerate() {
            for (b, fb) in all.iter().enumerate().skip(a) {
                let want = if a == b { Rational::from_int(8) } else { Rational::zero() };
                assert_eq!(fa.inner(fb), want);
            }
        }
        let w = s.omega_form(1, 2).unwrap();
        assert!(w.eval(&[&e(3), &e(3)]).is_zero());
        assert!(s.omega_form(2, 1).is_err());
        assert!(s.sigma_form(1, 1, 2).is_err());
    }

    #[test]
    fn pairing_convention_lock() {
        // ⟨e1∧e2, ω⟩ = ω(e1, e2) for all 36 ω.
        let s = sys();
        let w12 = wedge(&e(0), &e(1)).unwrap();
        for w in s.omega_forms() {
            assert_eq!(w12.inner(&w), w.eval(&[&e(0), &e(1)]));
        }
    }

    #[test]
    fn split_basis_elements() {
        let s = sys();
        let w = &s.omega_matrices()[0];
        let (g, m) = s.split_so16(w).unwrap();
        assert_eq!((&g, m.is_zero()), (w, true));
        let sg = &s.sigma_matrices()[0];
        let (g, m) = s.split_so16(sg).unwrap();
        assert_eq!((g.is_zero(), &m), (true, sg));
        assert_eq!(s.split_so16(&Matrix::identity(16)), Err(CliffordError::NotSkew));
    }

    #[test]
    fn expansion_of_omega12() {
        let s = sys();
        let (co, cs) = s.expand_in_omega_sigma(&s.omega_form(1, 2).unwrap());
        assert_eq!(co[0], Rational::from_int(8));
        assert!(co[1..].iter().all(Rational::is_zero));
        assert!(cs.iter().all(Rational::is_zero));
    }

    #[test]
    fn form_matrix_round_trip() {
        let s = sys();
        for m in s.sigma_matrices().iter().take(5) {
            assert_eq!(&form_to_matrix(&matrix_to_form(m)), m);
        }
    }
}
