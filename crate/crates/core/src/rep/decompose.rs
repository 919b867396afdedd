//! Highest-weight peeling and Casimir isotypic projectors.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{joint_eigenspace_dims, Matrix, SparseMatrix};
use crate::scalar::Rational;

use super::action::Representation;
use super::weights::{casimir_value, freudenthal_multiplicities, is_dominant, weyl_dimension, Weight};
use super::RepError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub weight: Weight,
    pub mult: u64,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub components: Vec<Component>,
    pub total: u64,
}

impl DecompositionReport {
    pub fn mult_of(&self, weight: &[Rational]) -> u64 {
        self.components.iter().find(|c| c.weight == weight).map_or(0, |c| c.mult)
    }

    /// Components with the given irreducible dimension.
    pub fn with_dim(&self, dim: u64) -> Vec<&Component> {
        self.components.iter().filter(|c| c.dim == dim).collect()
    }
}

/// Weight multiset of a representation from its Cartan eigenvalues `±i·w`.
pub fn weight_multiset(rep: &Representation) -> Result<BTreeMap<Weight, u64>, RepError> {
    let dims = joint_eigenspace_dims(&rep.cartan(), crate::seed())?;
    let mut out = BTreeMap::new();
    for (tuple, d) in dims {
        let w: Weight = tuple
            .iter()
            .map(|z| if z.re.is_zero() { Ok(z.im.clone()) } else { Err(RepError::NonWeight(format!("{z:?}"))) })
            .collect::<Result<_, _>>()?;
        out.insert(w, d as u64);
    }
    Ok(out)
}

/// Peels off the lexicographically largest dominant weight until nothing is left.
pub fn peel(mut weights: BTreeMap<Weight, u64>) -> Result<DecompositionReport, RepError> {
    let total = weights.values().sum();
    let mut components = Vec::new();
    while let Some((top, &m)) = weights.iter().rev().find(|(w, _)| is_dominant(w)) {
        let top = top.clone();
        if weights.keys().next_back() != Some(&top) {
            // Largest weight overall is not dominant.
            return Err(RepError::NotDominant(weights.keys().next_back().unwrap().clone()));
        }
        for (w, k) in freudenthal_multiplicities(&top)? {
            let have = weights.get(&w).copied().unwrap_or(0);
            if have < k * m {
                return Err(RepError::NegativeMultiplicity(w));
            }
            if have == k * m {
                weights.remove(&w);
            } else {
                weights.insert(w, have - k * m);
            }
        }
        components.push(Component { dim: weyl_dimension(&top)?, weight: top, mult: m });
    }
    if let Some(w) = weights.keys().next() {
        return Err(RepError::NotDominant(w.clone()));
    }
    Ok(DecompositionReport { components, total })
}

pub fn decompose(rep: &Representation) -> Result<DecompositionReport, RepError> {
    peel(weight_multiset(rep)?)
}

/// Applies `Π_{μ≠λ} (C − c_μ)/(c_λ − c_μ)` to `v`, with `μ` running over the other occurring highest weights.
pub fn isotypic_apply(
    casimir: &SparseMatrix,
    report: &DecompositionReport,
    lambda: &[Rational],
    v: &[Rational],
) -> Result<Vec<Rational>, RepError> {
    if report.mult_of(lambda) == 0 {
        return Err(RepError::Absent(lambda.to_vec()));
    }
    let cl = casimir_value(lambda);
    let mut out = v.to_vec();
    for c in &report.components {
        if c.weight == lambda {
            continue;
        }
        let cm = casimir_value(&c.weight);
        if cm == cl {
            return Err(RepError::CasimirCollision(lambda.to_vec(), c.weight.clone()));
        }
        let denom = (&cl - &cm).recip().unwrap();
        let cv = casimir.mul_vec(&out);
        out = cv.iter().zip(&out).map(|(a, b)| (a - &(&cm * b)) * &denom).collect();
    }
    Ok(out)
}

/// Dense isotypic projector, built column by column.
pub fn isotypic_projector(
    rep: &Representation,
    report: &DecompositionReport,
    lambda: &[Rational],
) -> Result<Matrix<Rational>, RepError> {
    let c = rep.casimir();
    let n = rep.dim();
    let cols: Result<Vec<Vec<Rational>>, RepError> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            isotypic_apply(&c, report, lambda, &e)
        })
        .collect();
    Ok(Matrix::from_columns(n, &cols?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordSystem;
    use crate::linalg::rank;
    use crate::rep::action::{rep_action, Space};
    use crate::rep::weights::weight;

    fn sys() -> CliffordSystem {
        CliffordSystem::build_standard().unwrap()
    }

    fn dims(r: &DecompositionReport) -> Vec<(u64, u64)> {
        let mut v: Vec<(u64, u64)> = r.components.iter().map(|c| (c.dim, c.mult)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn spin_representation() {
        let r = decompose(&rep_action(&sys(), Space::V16).unwrap()).unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].weight, weight(&["1/2", "1/2", "1/2", "1/2"]));
        let ws = weight_multiset(&rep_action(&sys(), Space::V16).unwrap()).unwrap();
        assert_eq!(ws.len(), 16);
        assert!(ws.keys().all(|w| w.iter().all(|x| x.abs() == Rational::new(1, 2))));
    }

    #[test]
    fn small_spaces() {
        let s = sys();
        let adj = decompose(&rep_action(&s, Space::Adjoint).unwrap()).unwrap();
        assert_eq!(dims(&adj), vec![(36, 1), (84, 1)]);
        assert_eq!(adj.mult_of(&weight(&["1", "1", "0", "0"])), 1);
        assert_eq!(adj.mult_of(&weight(&["1", "1", "1", "0"])), 1);
        let m = decompose(&rep_action(&s, Space::M).unwrap()).unwrap();
        assert_eq!(m.components[0].weight, weight(&["1", "1", "1", "0"]));
        let sym = decompose(&rep_action(&s, Space::Sym2).unwrap()).unwrap();
        assert_eq!(dims(&sym), vec![(1, 1), (9, 1), (126, 1)]);
        let d = decompose(&rep_action(&s, Space::D126).unwrap()).unwrap();
        assert_eq!(d.components[0].weight, weight(&["1", "1", "1", "1"]));
    }

    #[test]
    fn lambda3_projectors() {
        let s = sys();
        let rep = rep_action(&s, Space::Lambda3).unwrap();
        let r = decompose(&rep).unwrap();
        assert_eq!(dims(&r), vec![(128, 1), (432, 1)]);
        let p1 = isotypic_projector(&rep, &r, &r.with_dim(128)[0].weight).unwrap();
        let p2 = isotypic_projector(&rep, &r, &r.with_dim(432)[0].weight).unwrap();
        assert_eq!(rank(&p1), 128);
        assert_eq!(rank(&p2), 432);
        assert_eq!(p1.add(&p2), Matrix::identity(560));
        assert_eq!(p1.mul(&p1), p1);
        let g = rep.gens[7].to_dense();
        assert_eq!(g.mul(&p1), p1.mul(&g));
    }

    #[test]
    fn casimir_scalar_on_spin9_and_m() {
        let s = sys();
        for (sp, val) in [(Space::V16, 9), (Space::Spin9, 14), (Space::M, 18), (Space::D126, 20)] {
            let rep = rep_action(&s, sp).unwrap();
            let n = rep.dim();
            assert_eq!(rep.casimir(), SparseMatrix::identity(n).scale(&Rational::from_int(val)));
        }
    }

    #[test]
    fn invariant_under_change_of_basis() {
        use rand::{Rng, SeedableRng};
        let s = sys();
        let rep = rep_action(&s, Space::Spin9).unwrap();
        let n = rep.dim();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(crate::seed());
        // Unit upper triangular, hence invertible with an explicit inverse.
        let mut p = Matrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.1) {
                    p.set(i, j, Rational::from_int(rng.gen_range(-3..=3)));
                }
            }
        }
        let pinv = crate::linalg::solve::inverse(&p).unwrap();
        let conj = Representation {
            label: "conj".into(),
            gens: rep
                .gens
                .iter()
                .map(|g| SparseMatrix::from_dense(&pinv.mul(&g.to_dense()).mul(&p)))
                .collect(),
        };
        assert_eq!(decompose(&conj).unwrap(), decompose(&rep).unwrap());
    }

    #[test]
    fn peeling_rejects_non_representations() {
        let mut w = BTreeMap::new();
        w.insert(weight(&["1", "0", "0", "0"]), 1u64);
        assert!(matches!(peel(w), Err(RepError::NegativeMultiplicity(_))));
    }
}
