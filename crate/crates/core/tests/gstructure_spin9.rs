use spin9kit::clifford::CliffordSystem;
use spin9kit::gstructure::{admissible_types_report, kernel_image_check, theta1_equivariant, GStructure};

#[test]
fn spin9_kernel_equals_image() {
    let sys = CliffordSystem::build_standard().unwrap();
    let gs = GStructure::builtin("spin9", &sys).unwrap();
    let k = kernel_image_check(&gs, 11);
    assert_eq!(k.lambda3_dim, 560);
    assert!(k.composition_zero);
    assert_eq!((k.rank_theta, k.kernel_dim), (560, 560));
    assert!(k.equal);
}

#[test]
fn spin9_types() {
    let sys = CliffordSystem::build_standard().unwrap();
    let gs = GStructure::builtin("spin9", &sys).unwrap();
    let r = admissible_types_report(&gs, &sys, 5);
    assert_eq!((r.total_dim, r.image_dim, r.excluded_dim), (1344, 560, 784));
    let got: Vec<(String, usize, usize)> = r.components.iter().map(|c| (c.name.clone(), c.dim, c.in_image)).collect();
    assert_eq!(
        got,
        vec![
            ("R16".into(), 16, 0),
            ("P1".into(), 128, 128),
            ("P2".into(), 432, 432),
            ("P3".into(), 768, 0)
        ]
    );
    assert!(!r.conformal_in_image);
    assert!(theta1_equivariant(&gs, &[0, 7, 20, 35]));
}
