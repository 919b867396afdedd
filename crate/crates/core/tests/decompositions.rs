use spin9kit::clifford::CliffordSystem;
use spin9kit::rep::weights::weight;
use spin9kit::rep::{decompose, rep_action, DecompositionReport, Space};

fn dims(r: &DecompositionReport) -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> = r.components.iter().map(|c| (c.dim, c.mult)).collect();
    v.sort_unstable();
    v
}

fn run(space: Space) -> DecompositionReport {
    let s = CliffordSystem::build_standard().unwrap();
    decompose(&rep_action(&s, space).unwrap()).unwrap()
}

#[test]
fn v16_tensor_m() {
    let r = run(Space::V16TensorM);
    assert_eq!(dims(&r), vec![(16, 1), (128, 1), (432, 1), (768, 1)]);
    assert_eq!(r.total, 1344);
}

#[test]
fn v16_tensor_spin9() {
    let r = run(Space::V16TensorSpin9);
    assert_eq!(dims(&r), vec![(16, 1), (128, 1), (432, 1)]);
    assert_eq!(r.total, 576);
}

#[test]
fn v16_tensor_sym2() {
    let r = run(Space::V16TensorSym2);
    assert_eq!(dims(&r), vec![(16, 3), (128, 2), (432, 1), (672, 1), (768, 1)]);
    assert_eq!(r.mult_of(&weight(&["3/2", "3/2", "3/2", "3/2"])), 1);
    assert_eq!(r.total, 2176);
}

#[test]
fn v16_tensor_d126() {
    let r = run(Space::V16TensorD126);
    let p2 = r.with_dim(432).len();
    let p3 = r.with_dim(768).len();
    let d672 = r.mult_of(&weight(&["3/2", "3/2", "3/2", "3/2"]));
    assert_eq!((p2, p3, d672), (1, 1, 1));
    let rest: u64 = r
        .components
        .iter()
        .filter(|c| c.dim == 16 || c.dim == 128)
        .map(|c| c.dim * c.mult)
        .sum();
    assert_eq!(rest, 144);
    assert_eq!(r.total, 16 * 126);
}
