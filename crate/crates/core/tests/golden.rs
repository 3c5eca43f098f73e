//! Reproduction of the frozen [8, 4, 6] matrices over GF(11).

mod common;

use common::*;
use sparsepm::linalg::vandermonde;
use sparsepm::pm::{generator_matrix, RegeneratingCode};
use sparsepm::sparse::{sparsify_encoding, BuildOptions};
use sparsepm::pm::ValidationOptions;
use sparsepm::systematic::remap_generic;
use sparsepm::{build_systematic, Construction, Matrix, Scalar};

#[test]
fn psi_and_lambda() {
    let f = f11();
    let xs: Vec<Scalar> = (1..=8).map(Scalar::new).collect();
    assert_eq!(vandermonde(&xs, 6, &f).unwrap().to_u32_rows(), rows(&PSI));
    let code = vanilla_846();
    assert_eq!(code.encoding().psi().to_u32_rows(), rows(&PSI));
    let lambda: Vec<u32> = code.encoding().lambda().iter().map(|s| s.value()).collect();
    assert_eq!(lambda, LAMBDA);
}

#[test]
fn phi_alpha_and_submatrix_examples() {
    let code = vanilla_846();
    assert_eq!(code.encoding().phi_alpha().to_u32_rows(), vec![vec![1, 1, 1], vec![2, 4, 8], vec![3, 9, 5]]);
    let psi = code.encoding().psi();
    assert_eq!(psi.submatrix(&[1, 3], &[0]).unwrap().to_u32_rows(), vec![vec![2], vec![4]]);
}

#[test]
fn generator() {
    let code = vanilla_846();
    assert_eq!(generator_matrix(code.encoding()).matrix().to_u32_rows(), rows(&G));
    // unit message e_0: node 0 stores (1, 0, 0), i.e. column 0 of G per node
    let mut e0 = vec![Scalar::ZERO; 12];
    e0[0] = Scalar::ONE;
    let stored = code.encode_message(&e0).unwrap();
    assert_eq!(stored.row(0), &[Scalar::ONE, Scalar::ZERO, Scalar::ZERO]);
    for i in 0..8 {
        for c in 0..3 {
            assert_eq!(stored.get(i, c).value(), G[3 * i + c][0]);
        }
    }
}

#[test]
fn g_k_inverse() {
    let f = f11();
    let g = matrix(&G, &f);
    let top: Vec<usize> = (0..12).collect();
    let g_k = g.select_rows(&top).unwrap();
    assert!(g_k.invert().unwrap().matmul(&g_k).unwrap().is_identity());
}

#[test]
fn systematic_vanilla() {
    let sys = remap_generic(vanilla_846(), Construction::Vanilla).unwrap();
    assert_eq!(sys.generator().matrix().to_u32_rows(), systematic_rows(&G_SYS_PARITY));
    let built = build_systematic(8, 4, 6, &f11(), &BuildOptions::with_construction(Construction::Vanilla)).unwrap();
    assert_eq!(built.generator(), sys.generator());
}

#[test]
fn sparsified_psi_and_generators() {
    let enc = sparsify_encoding(vanilla_846().encoding(), &ValidationOptions::default()).unwrap();
    assert_eq!(enc.psi().to_u32_rows(), rows(&PSI_PRIME));
    assert_eq!(generator_matrix(&enc).matrix().to_u32_rows(), rows(&G_PRIME));
    let sparse = build_systematic(8, 4, 6, &f11(), &BuildOptions::default()).unwrap();
    assert_eq!(sparse.generator().matrix().to_u32_rows(), systematic_rows(&G_PRIME_SYS_PARITY));
    // the transfer-based route lands on the same systematic generator
    let rbt = build_systematic(8, 4, 6, &f11(), &BuildOptions::with_construction(Construction::Rbt)).unwrap();
    assert_eq!(rbt.generator(), sparse.generator());
}

#[test]
fn already_systematic_generator_is_unchanged() {
    let f = f11();
    let g = Matrix::from_rows(&systematic_rows(&G_SYS_PARITY), &f).unwrap();
    let top: Vec<usize> = (0..12).collect();
    let remap = g.select_rows(&top).unwrap().invert().unwrap();
    assert_eq!(g.matmul(&remap).unwrap(), g);
}

#[test]
fn text_format_of_systematic_generator() {
    let sys = build_systematic(8, 4, 6, &f11(), &BuildOptions::with_construction(Construction::Vanilla)).unwrap();
    let text = sys.generator().matrix().to_text();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("24 12 11"));
    assert_eq!(lines.nth(12), Some("4 2 1 2 7 8 0 0 3 2 5 7"));
    assert_eq!(&Matrix::from_text(&text).unwrap(), sys.generator().matrix());
}
