//! Verification suites and the manifest they produce.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::{CliffordSystem, OctonionTable, DIM};
use crate::forms::{binomial, combinations, wedge, KForm};
use crate::gstructure::{
    admissible_types_report, dimension_inequality_scan, kernel_image_check, minimal_pair, theta1_equivariant,
    GStructure,
};
use crate::homogeneous::{
    build_sphere_example, canonical_torsion, check_gamma_identity, check_naturally_reductive, gamma_from_brackets,
    isotropy_preserves_structure, transport_three_form,
};
use crate::linalg::solve::Factorization;
use crate::linalg::Matrix;
use crate::rep::weights::{weight, weyl_dimension};
use crate::rep::{decompose, rep_action, DecompositionReport, Space};
use crate::scalar::Rational;
use crate::torsion::{
    admissible_torsion, classify_gamma, context, cubic_operator, embed_one_form, embed_three_form, phi_map, psi_map,
    proportional, quadratic_form_phi, quadratic_form_psi, quadratic_spectrum, sigma_of_three_form, Admissibility,
    GammaTensor, GammaType, M_DIM,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub name: String,
    /// The identity or count being checked.
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub suite: String,
    pub seed: u64,
    pub entries: Vec<Entry>,
    pub overall: Status,
}

impl Manifest {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn first_failure(&self) -> Option<&Entry> {
        self.entries.iter().find(|e| e.status == Status::Fail)
    }

    /// One line per entry, then the overall verdict.
    pub fn table(&self) -> String {
        let width = self.entries.iter().map(|e| e.name.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for e in &self.entries {
            let pad = width - e.name.chars().count();
            out.push_str(&format!("{}  {}{}", e.status, e.name, " ".repeat(pad)));
            if let Some(ms) = e.elapsed_ms {
                out.push_str(&format!("  {ms:>7} ms"));
            }
            if !e.details.is_empty() {
                out.push_str(&format!("  {}", e.details));
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
        let failed = self.entries.iter().filter(|e| e.status == Status::Fail).count();
        out.push_str(&format!(
            "{}: suite {} ({} checks, {} failed)\n",
            self.overall,
            self.suite,
            self.entries.len(),
            failed
        ));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Clifford,
    Lemma1,
    Theorem1,
    Decompositions,
    Homogeneous,
    GStructure,
    All,
}

impl Suite {
    pub const SECTIONS: [Suite; 6] = [
        Suite::Clifford,
        Suite::Lemma1,
        Suite::Theorem1,
        Suite::Decompositions,
        Suite::Homogeneous,
        Suite::GStructure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Lemma1 => "lemma1",
            Suite::Theorem1 => "theorem1",
            Suite::Decompositions => "decompositions",
            Suite::Homogeneous => "homogeneous",
            Suite::GStructure => "gstructure",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::SECTIONS
            .iter()
            .chain(&[Suite::All])
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub table: OctonionTable,
    pub seed: u64,
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { table: OctonionTable::standard(), seed: crate::seed(), timings: false }
    }
}

/// Small random rational with numerator in `-5..=5` and denominator in `1..=4`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng)).collect()
}

/// Random k-form on R^n with about `density` of its coefficients nonzero.
pub fn random_form(rng: &mut impl Rng, n: usize, k: usize, density: f64) -> KForm {
    let coeffs = (0..binomial(n, k))
        .map(|_| if rng.gen_bool(density) { random_rational(rng) } else { Rational::zero() })
        .collect();
    KForm::from_coeffs(n, k, coeffs)
}

struct Recorder {
    timings: bool,
    entries: Vec<Entry>,
}

impl Recorder {
    fn check(&mut self, name: &str, anchor: &str, f: impl FnOnce() -> (bool, String)) {
        let t = Instant::now();
        let (ok, details) = f();
        let elapsed_ms = self.timings.then(|| t.elapsed().as_millis() as u64);
        self.entries.push(Entry {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::of(ok),
            elapsed_ms,
            details,
        });
    }
}

/// Runs one suite, or all sections concurrently; entries keep declaration order.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Manifest {
    let sys = CliffordSystem::from_table_unchecked(opts.table.clone());
    let sections: Vec<Suite> = match suite {
        Suite::All => Suite::SECTIONS.to_vec(),
        s => vec![s],
    };
    let relations_ok = sys.verify().iter().all(|c| c.ok);
    let parts: Vec<Vec<Entry>> = sections
        .par_iter()
        .map(|&s| {
            let mut r = Recorder { timings: opts.timings, entries: Vec::new() };
            if s != Suite::Clifford && !relations_ok {
                r.check(&format!("{}.prerequisites", s.name()), "Clifford relations", || {
                    (false, "skipped: Clifford relations fail for this octonion table".into())
                });
            } else {
                run_section(s, &sys, opts.seed, &mut r);
            }
            r.entries
        })
        .collect();
    let entries: Vec<Entry> = parts.into_iter().flatten().collect();
    let overall = Status::of(entries.iter().all(|e| e.status == Status::Pass));
    Manifest { suite: suite.name().into(), seed: opts.seed, entries, overall }
}

fn run_section(s: Suite, sys: &CliffordSystem, seed: u64, r: &mut Recorder) {
    match s {
        Suite::Clifford => clifford_suite(sys, r),
        Suite::Lemma1 => lemma1_suite(sys, seed, r),
        Suite::Theorem1 => theorem1_suite(sys, seed, r),
        Suite::Decompositions => decompositions_suite(sys, r),
        Suite::Homogeneous => homogeneous_suite(sys, r),
        Suite::GStructure => gstructure_suite(sys, seed, r),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

fn clifford_suite(sys: &CliffordSystem, r: &mut Recorder) {
    for c in sys.verify() {
        r.check(&format!("clifford.relation {}", c.name), "I_a² = Id, I_a = I_aᵀ, I_aI_b = −I_bI_a, tr I_a = 0", || {
            (c.ok, c.detail.clone())
        });
    }
    r.check("clifford.forms_orthogonal_norm8", "⟨ω,ω'⟩ = 8δ over the 120 forms ω_ab, σ_abc", || {
        let forms: Vec<KForm> = sys.omega_forms().into_iter().chain(sys.sigma_forms()).collect();
        let bad = (0..forms.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let forms = &forms;
                (i..forms.len()).map(move |j| (i, j))
            })
            .find_first(|&(i, j)| {
                let want = if i == j { Rational::from_int(8) } else { Rational::zero() };
                forms[i].inner(&forms[j]) != want
            });
        match bad {
            None => (forms.len() == binomial(DIM, 2), format!("{} forms, basis of Λ²(R^16)", forms.len())),
            Some((i, j)) => (false, format!("pair ({i}, {j}) violates the Gram identity")),
        }
    });
    r.check("clifford.split_so16", "so(16) = spin(9) ⊕ m", || {
        let ok = sys.omega_matrices().iter().all(|w| {
            sys.split_so16(w).is_ok_and(|(g, m)| &g == w && m.is_zero())
        }) && sys.sigma_matrices().iter().all(|s| {
            sys.split_so16(s).is_ok_and(|(g, m)| g.is_zero() && &m == s)
        });
        (ok, "36 + 84 basis elements split onto themselves".into())
    });
}

fn lemma1_suite(sys: &CliffordSystem, seed: u64, r: &mut Recorder) {
    let anchor = "Σ ω(X,Y)ω + Σ σ(X,Y)σ = 8·X∧Y";
    let check_pair = |x: &[Rational], y: &[Rational]| {
        sys.basis_expansion_sum(x, y) == wedge(x, y).expect("same length").scale(&Rational::from_int(8))
    };
    r.check("lemma1.basis_pairs", anchor, || {
        let e = |i: usize| {
            let mut v = vec![Rational::zero(); DIM];
            v[i] = Rational::one();
            v
        };
        let pairs = combinations(DIM, 2);
        let bad = pairs.par_iter().find_first(|p| !check_pair(&e(p[0]), &e(p[1])));
        let c = sys.basis_expansion_sum(&e(0), &e(1)).coeff(&[0, 1]).clone();
        match bad {
            None => (true, format!("{} pairs, constant {c}", pairs.len())),
            Some(p) => (false, format!("fails at (e{}, e{})", p[0] + 1, p[1] + 1)),
        }
    });
    r.check("lemma1.random_pairs", anchor, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1e);
        let pairs: Vec<(Vec<Rational>, Vec<Rational>)> =
            (0..50).map(|_| (random_vector(&mut rng, DIM), random_vector(&mut rng, DIM))).collect();
        let bad = pairs.par_iter().position_first(|(x, y)| !check_pair(x, y));
        match bad {
            None => (true, "50 random rational pairs, constant 8".into()),
            Some(k) => (false, format!("fails at random pair {k}")),
        }
    });
}

fn e16() -> Vec<Rational> {
    let mut v = vec![Rational::zero(); DIM];
    v[DIM - 1] = Rational::one();
    v
}

/// Eigenvalues on the 8- and 7-dimensional eigenspaces, if the pattern is (8, 7, 1) with kernel ∋ e16.
fn pattern(q: &Matrix<Rational>, seed: u64) -> Option<(Rational, Rational)> {
    let spec = quadratic_spectrum(q, seed).ok()?;
    let kernel_e16 = q.mul_vec(&e16()).iter().all(Rational::is_zero);
    match spec.as_slice() {
        [(a, 8), (b, 7), (z, 1)] if z.is_zero() && kernel_e16 => Some((a.clone(), b.clone())),
        _ => None,
    }
}

fn ratio_string(p: &Option<(Rational, Rational)>) -> String {
    match p {
        Some((a, b)) => format!("{a} on dim 8, {b} on dim 7 (ratio {})", a / b),
        None => "pattern (8,7,1) not found".into(),
    }
}

/// Checks shared by the manifest and the acceptance harness.
pub struct QuadraticFormsAtE16 {
    pub psi: Option<(Rational, Rational)>,
    pub phi: Option<(Rational, Rational)>,
    pub proportional: bool,
    pub lemma_identity: bool,
    pub trace_psi: Rational,
}

pub fn quadratic_forms_at_e16(sys: &CliffordSystem, seed: u64) -> QuadraticFormsAtE16 {
    let qpsi = quadratic_form_psi(sys, DIM - 1);
    let qphi = quadratic_form_phi(sys, DIM - 1);
    let mut want = Matrix::identity(DIM).scale(&Rational::from_int(8));
    want.set(DIM - 1, DIM - 1, Rational::zero());
    let lemma_identity = qphi.scale(&Rational::new(1, 2)).add(&qpsi.scale(&Rational::from_int(4))) == want;
    QuadraticFormsAtE16 {
        psi: pattern(&qpsi, seed),
        phi: pattern(&qphi, seed),
        proportional: proportional(&qpsi, &qphi),
        lemma_identity,
        trace_psi: qpsi.trace(),
    }
}

/// `Φ(Σ(τ)) = Ψ(embed(τ))` and `admissible_torsion(embed(τ)) = −2τ` on `count` random 3-forms.
pub fn theorem1_round_trips(sys: &CliffordSystem, seed: u64, count: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3f);
    let taus: Vec<KForm> = (0..count).map(|_| random_form(&mut rng, DIM, 3, 0.05)).collect();
    let minus_two = Rational::from_int(-2);
    taus.par_iter().enumerate().try_for_each(|(k, tau)| {
        let gamma = embed_three_form(sys, tau).map_err(|e| e.to_string())?;
        let sigma = sigma_of_three_form(sys, tau).map_err(|e| e.to_string())?;
        if phi_map(sys, &sigma) != psi_map(sys, &gamma) {
            return Err(format!("Φ∘Σ ≠ Ψ∘embed at random form {k}"));
        }
        match admissible_torsion(sys, &gamma) {
            Admissibility::Torsion(t) if t == tau.scale(&minus_two) => Ok(()),
            _ => Err(format!("torsion ≠ −2τ at random form {k}")),
        }
    })
}

/// `Ψ(Γ) ∈ im Φ ⇔ Γ admissible` on `count` admissible and `count` non-admissible random Γ.
pub fn image_characterization(sys: &CliffordSystem, seed: u64, count: usize) -> Result<(), String> {
    let phi = Factorization::new(&cubic_operator(DIM, sys.omega_matrices()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1c);
    let mut cases = Vec::new();
    for k in 0..2 * count {
        let tau = random_form(&mut rng, DIM, 3, 0.03);
        let mut gamma = embed_three_form(sys, &tau).expect("3-form");
        if k >= count {
            // Add a nonzero R^16 part, or a random element of R^16 ⊗ m with a P3 part.
            if k % 2 == 0 {
                let v = KForm::from_vector(&random_vector(&mut rng, DIM));
                if v.is_zero() {
                    continue;
                }
                gamma = gamma.add(&embed_one_form(sys, &v).expect("1-form"));
            } else {
                let sparse: Vec<Rational> = (0..DIM * M_DIM)
                    .map(|_| if rng.gen_bool(0.01) { random_rational(&mut rng) } else { Rational::zero() })
                    .collect();
                gamma = gamma.add(&GammaTensor::from_vector(&sparse));
            }
        }
        cases.push(gamma);
    }
    cases.par_iter().enumerate().try_for_each(|(k, gamma)| {
        let admissible = classify_gamma(sys, gamma).admissible;
        let in_image = phi.solve(psi_map(sys, gamma).as_vector()).solution().is_some();
        let expected = k < count;
        if admissible != expected || in_image != admissible {
            return Err(format!("case {k}: admissible {admissible}, Ψ(Γ) ∈ im Φ {in_image}"));
        }
        Ok(())
    })
}

fn theorem1_suite(sys: &CliffordSystem, seed: u64, r: &mut Recorder) {
    let q = quadratic_forms_at_e16(sys, seed);
    r.check("theorem1.quadratic_forms_multiplicities", "Q_Ψ, Q_Φ at e16: eigenspaces (8,7,1), kernel ∋ e16", || {
        (q.psi.is_some() && q.phi.is_some(), format!("Q_Ψ: {}; Q_Φ: {}", ratio_string(&q.psi), ratio_string(&q.phi)))
    });
    r.check("theorem1.quadratic_form_psi_ratio", "Q_Ψ nonzero eigenvalues in ratio 1:4", || {
        let ok = q.psi.as_ref().is_some_and(|(a, b)| a / b == Rational::new(1, 4));
        (ok, format!("{}; trace {}", ratio_string(&q.psi), q.trace_psi))
    });
    r.check("theorem1.quadratic_form_phi_ratio", "Q_Φ nonzero eigenvalues in ratio 7:4", || {
        let ok = q.phi.as_ref().is_some_and(|(a, b)| a / b == Rational::new(7, 4));
        (ok, ratio_string(&q.phi))
    });
    r.check("theorem1.not_proportional", "no c with Q_Ψ = c·Q_Φ", || (!q.proportional, String::new()));
    r.check("theorem1.quadratic_identity", "½Q_Φ + 4Q_Ψ = 8(|Y|² − y16²)", || (q.lemma_identity, String::new()));
    r.check("theorem1.embed_one_form_refused", "Γ = embed(e16) is not admissible", || {
        let g = embed_one_form(sys, &KForm::from_vector(&e16())).expect("1-form");
        match admissible_torsion(sys, &g) {
            Admissibility::Refused { r16, p3 } => (!r16.is_zero() && p3.is_zero(), format!("R16 norm² {r16}")),
            Admissibility::Torsion(_) => (false, "accepted".into()),
        }
    });
    r.check("theorem1.component_dimensions", "R^16 ⊗ m = R16 ⊕ P1 ⊕ P2 ⊕ P3", || {
        let ctx = context(sys);
        let dims: Vec<u64> = GammaType::ALL.iter().map(|&t| ctx.report.with_dim(t.dim()).len() as u64 * t.dim()).collect();
        (dims == [16, 128, 432, 768] && ctx.report.total == 1344, format!("{dims:?}"))
    });
    r.check("theorem1.orthogonal_decomposition", "|Γ|² = Σ component norms", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0d);
        let g = GammaTensor::from_vector(&random_vector(&mut rng, DIM * M_DIM));
        let c = classify_gamma(sys, &g);
        let sum = &(&c.r16 + &c.p1) + &(&c.p2 + &c.p3);
        (sum == c.norm_sqr && !c.admissible, format!("|Γ|² = {}", c.norm_sqr))
    });
    r.check("theorem1.round_trip", "Φ(Σ(τ)) = Ψ(embed τ), T = −2τ", || match theorem1_round_trips(sys, seed, 100) {
        Ok(()) => (true, "100 random 3-forms".into()),
        Err(e) => (false, e),
    });
    r.check("theorem1.image_characterization", "Ψ(Γ) ∈ im Φ ⇔ (R16 ⊕ P3)-part = 0", || {
        match image_characterization(sys, seed, 20) {
            Ok(()) => (true, "20 admissible, 20 non-admissible".into()),
            Err(e) => (false, e),
        }
    });
}

fn sorted_dims(r: &DecompositionReport) -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> = r.components.iter().map(|c| (c.dim, c.mult)).collect();
    v.sort_unstable();
    v
}

fn decompositions_suite(sys: &CliffordSystem, r: &mut Recorder) {
    let run = |space: Space| rep_action(sys, space).and_then(|rep| decompose(&rep)).map_err(|e| e.to_string());
    let cases: [(&str, Space, &str, Vec<(u64, u64)>); 4] = [
        ("decompositions.lambda3", Space::Lambda3, "Λ³(R^16) = P1 ⊕ P2", vec![(128, 1), (432, 1)]),
        ("decompositions.v16_tensor_m", Space::V16TensorM, "R^16 ⊗ m = R16 ⊕ P1 ⊕ P2 ⊕ P3", vec![(16, 1), (128, 1), (432, 1), (768, 1)]),
        ("decompositions.v16_tensor_spin9", Space::V16TensorSpin9, "R^16 ⊗ spin(9) = R16 ⊕ P1 ⊕ P2", vec![(16, 1), (128, 1), (432, 1)]),
        (
            "decompositions.v16_tensor_sym2",
            Space::V16TensorSym2,
            "R^16 ⊗ S²R^16 = 3R16 ⊕ 2P1 ⊕ P2 ⊕ P3 ⊕ D672",
            vec![(16, 3), (128, 2), (432, 1), (672, 1), (768, 1)],
        ),
    ];
    for (name, space, anchor, want) in cases {
        r.check(name, anchor, || match run(space) {
            Ok(rep) => {
                let got = sorted_dims(&rep);
                (got == want, format!("(dim, mult) {got:?}, total {}", rep.total))
            }
            Err(e) => (false, e),
        });
    }
    r.check("decompositions.v16_tensor_d126", "R^16 ⊗ D126 ⊃ P2 ⊕ P3 ⊕ D672, remainder 144", || match run(Space::V16TensorD126) {
        Ok(rep) => {
            let d672 = rep.mult_of(&weight(&["3/2", "3/2", "3/2", "3/2"]));
            let once = rep.with_dim(432).len() == 1 && rep.with_dim(768).len() == 1 && d672 == 1;
            let rest: u64 = rep.components.iter().filter(|c| c.dim == 16 || c.dim == 128).map(|c| c.dim * c.mult).sum();
            (once && rest == 144 && rep.total == 2016, format!("remainder {rest}, total {}", rep.total))
        }
        Err(e) => (false, e),
    });
    r.check("decompositions.weyl_dimensions", "dim V(λ) for R16, D126, D672", || {
        let dims: Vec<u64> = [["1/2", "1/2", "1/2", "1/2"], ["1", "1", "1", "1"], ["3/2", "3/2", "3/2", "3/2"]]
            .iter()
            .map(|w| weyl_dimension(&weight(w)).unwrap_or(0))
            .collect();
        (dims == [16, 126, 672], format!("{dims:?}"))
    });
}

fn homogeneous_suite(sys: &CliffordSystem, r: &mut Recorder) {
    let sp = match build_sphere_example(sys, 1) {
        Ok(sp) => sp,
        Err(e) => {
            r.check("homogeneous.sphere_construction", "dim h = 21, dim n = 16", || (false, e.to_string()));
            return;
        }
    };
    r.check("homogeneous.sphere_dimensions", "dim h = 21, dim n = 16", || {
        ((sp.dim_h, sp.dim_n) == (21, 16), format!("dim h {}, dim n {}", sp.dim_h, sp.dim_n))
    });
    r.check("homogeneous.jacobi", "Jacobi identity on all basis triples", || {
        let (bad, count) = sp.check_jacobi();
        (bad.is_none(), format!("{count} triples"))
    });
    r.check("homogeneous.naturally_reductive", "([X,Y]_n, Z) + (Y, [X,Z]_n) = 0", || {
        let nr = check_naturally_reductive(&sp);
        (nr.naturally_reductive, nr.violation.map(|t| format!("violated at {t:?}")).unwrap_or_default())
    });
    r.check("homogeneous.naturally_reductive_rescaled", "same with |ξ|² = 4", || {
        match build_sphere_example(sys, 2) {
            Ok(sp2) => (check_naturally_reductive(&sp2).naturally_reductive, String::new()),
            Err(e) => (false, e.to_string()),
        }
    });
    r.check("homogeneous.isotropy_preserves_structure", "[h, span I_a] ⊆ span I_a", || {
        match isotropy_preserves_structure(sys, &sp) {
            Ok(ok) => (ok, String::new()),
            Err(e) => (false, e.to_string()),
        }
    });
    let gamma = gamma_from_brackets(sys, &sp);
    r.check("homogeneous.gamma_type", "Γ of type P1 ⊕ P2", || match &gamma {
        Ok(g) => {
            let c = classify_gamma(sys, g);
            (c.admissible && !c.norm_sqr.is_zero(), format!("P1 {}, P2 {}", c.p1, c.p2))
        }
        Err(e) => (false, e.to_string()),
    });
    for scale in [1, 2] {
        r.check(&format!("homogeneous.gamma_identity_xi{scale}"), "Γ = −½T^can", || {
            let sp = build_sphere_example(sys, scale).expect("built above");
            match check_gamma_identity(sys, &sp) {
                Ok(id) => (id.as_three_form, format!("as 3-form {}, entrywise {}", id.as_three_form, id.entrywise)),
                Err(e) => (false, e.to_string()),
            }
        });
    }
    r.check("homogeneous.torsion_end_to_end", "admissible_torsion(Γ) = T^can", || {
        let t = canonical_torsion(&sp).and_then(|t| transport_three_form(&sp, &t));
        match (&gamma, t) {
            (Ok(g), Ok(t16)) => (admissible_torsion(sys, g) == Admissibility::Torsion(t16), String::new()),
            (Err(e), _) => (false, e.to_string()),
            (_, Err(e)) => (false, e.to_string()),
        }
    });
}

fn gstructure_suite(sys: &CliffordSystem, seed: u64, r: &mut Recorder) {
    let mut groups = Vec::new();
    for label in ["spin9_16", "g2_7", "spin7_8"] {
        match GStructure::builtin(label, sys) {
            Ok(gs) => {
                let c = gs.check();
                r.check(&format!("gstructure.{label}.structure"), "[g,g] ⊆ g, g ⊥ m, [g,m] ⊆ m", || {
                    (c.ok(gs.n), format!("dim g {}, dim m {}", c.dim_g, c.dim_m))
                });
                groups.push(gs);
            }
            Err(e) => r.check(&format!("gstructure.{label}.structure"), "construction", || (false, e.to_string())),
        }
    }
    let want = [("spin9_16", 560), ("g2_7", 35), ("spin7_8", 56)];
    let results: Vec<_> = groups.par_iter().map(|gs| kernel_image_check(gs, seed)).collect();
    for (gs, k) in groups.iter().zip(&results) {
        let expect = want.iter().find(|w| w.0 == gs.label).map(|w| w.1);
        r.check(&format!("gstructure.{}.kernel_image", gs.label), "ker(Ψ ⊕ Φ) = im(Θ1 ⊕ Θ2)", || {
            (
                k.equal && Some(k.kernel_dim) == expect,
                format!("rank Θ {}, dim ker {}, composition zero {}", k.rank_theta, k.kernel_dim, k.composition_zero),
            )
        });
    }
    for gs in &groups {
        let rep = admissible_types_report(gs, sys, seed);
        let find = |name: &str| rep.components.iter().find(|c| c.name == name);
        let (anchor, ok) = match gs.label.as_str() {
            "spin9_16" => (
                "im Θ1 = P1 ⊕ P2; R16 and P3 excluded",
                ["P1", "P2"].iter().all(|n| find(n).is_some_and(|c| c.in_image == c.dim))
                    && ["R16", "P3"].iter().all(|n| find(n).is_some_and(|c| c.in_image == 0))
                    && rep.image_dim == 560
                    && !rep.conformal_in_image,
            ),
            "g2_7" => (
                "R7 type inside im Θ1",
                find("R7").is_some_and(|c| c.in_image == 7) && rep.image_dim == 35 && rep.conformal_in_image,
            ),
            _ => ("im Θ1 = R^8 ⊗ m", rep.excluded_dim == 0 && rep.image_dim == 56),
        };
        let summary: Vec<String> = rep.components.iter().map(|c| format!("{} {}/{}", c.name, c.in_image, c.dim)).collect();
        r.check(&format!("gstructure.{}.types", gs.label), anchor, || {
            (ok, format!("image {}/{}; {}", rep.image_dim, rep.total_dim, summary.join(", ")))
        });
    }
    if let Some(spin9) = groups.iter().find(|g| g.label == "spin9_16") {
        r.check("gstructure.spin9_16.theta1_is_embedding", "Θ1(τ) = embed(τ)", || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7e);
            let ok = (0..20).all(|_| {
                let tau = random_form(&mut rng, DIM, 3, 0.05);
                spin9.theta1(&tau) == embed_three_form(sys, &tau).expect("3-form").to_vector()
            });
            (ok, "20 random 3-forms".into())
        });
        r.check("gstructure.spin9_16.image_is_admissible", "im Θ1 = admissible subspace of classify_gamma", || {
            let theta = spin9.theta1_operator().to_dense();
            let bad = (0..theta.cols())
                .into_par_iter()
                .find_first(|&c| !classify_gamma(sys, &GammaTensor::from_vector(&theta.column(c))).admissible);
            let admissible_dim = GammaType::P1.dim() + GammaType::P2.dim();
            let rank = crate::linalg::rank_exact(&theta) as u64;
            match bad {
                None => (rank == admissible_dim, format!("rank {rank} = dim(P1 ⊕ P2) {admissible_dim}")),
                Some(c) => (false, format!("column {c} not admissible")),
            }
        });
    }
    for gs in &groups {
        let gens: Vec<usize> = if gs.label == "spin9_16" { vec![0, 7, 15, 22, 35] } else { (0..gs.g_basis.len()).collect() };
        r.check(&format!("gstructure.{}.theta1_equivariant", gs.label), "Θ1(G·T) = G·Θ1(T)", || {
            (theta1_equivariant(gs, &gens), format!("{} generators", gens.len()))
        });
    }
    let rows = dimension_inequality_scan(32);
    r.check("gstructure.scan_minimal_pair", "minimal (n, dim g) = (8, 21)", || {
        let m = minimal_pair(&rows);
        (m == Some((8, 21)), format!("{m:?}"))
    });
    r.check("gstructure.scan_n7_empty", "n = 7: ⌈48/3⌉ > ⌊30/2⌋", || {
        let n7 = rows.iter().find(|x| x.n == 7).expect("n = 7 scanned");
        (!n7.nonempty, format!("[{}, {}]", n7.lower, n7.upper))
    });
}

