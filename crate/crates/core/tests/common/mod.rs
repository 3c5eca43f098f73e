//! Frozen reference values for the [8, 4, 6] code over GF(11) with
//! evaluation points 1..=8, and shared builders.
#![allow(dead_code)]

use sparsepm::pm::{build_vandermonde_encoding, ProductMatrixCode, ValidationOptions};
use sparsepm::{CodeParams, Field, Matrix};

pub const PSI: [[u32; 6]; 8] = [
    [1, 1, 1, 1, 1, 1],
    [2, 4, 8, 5, 10, 9],
    [3, 9, 5, 4, 1, 3],
    [4, 5, 9, 3, 1, 4],
    [5, 3, 4, 9, 1, 5],
    [6, 3, 7, 9, 10, 5],
    [7, 5, 2, 3, 10, 4],
    [8, 9, 6, 4, 10, 3],
];

pub const LAMBDA: [u32; 8] = [1, 8, 5, 9, 4, 7, 2, 6];

pub const G: [[u32; 12]; 24] = [
    [1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0],
    [0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0],
    [0, 0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1],
    [2, 4, 8, 0, 0, 0, 5, 10, 9, 0, 0, 0],
    [0, 2, 0, 4, 8, 0, 0, 5, 0, 10, 9, 0],
    [0, 0, 2, 0, 4, 8, 0, 0, 5, 0, 10, 9],
    [3, 9, 5, 0, 0, 0, 4, 1, 3, 0, 0, 0],
    [0, 3, 0, 9, 5, 0, 0, 4, 0, 1, 3, 0],
    [0, 0, 3, 0, 9, 5, 0, 0, 4, 0, 1, 3],
    [4, 5, 9, 0, 0, 0, 3, 1, 4, 0, 0, 0],
    [0, 4, 0, 5, 9, 0, 0, 3, 0, 1, 4, 0],
    [0, 0, 4, 0, 5, 9, 0, 0, 3, 0, 1, 4],
    [5, 3, 4, 0, 0, 0, 9, 1, 5, 0, 0, 0],
    [0, 5, 0, 3, 4, 0, 0, 9, 0, 1, 5, 0],
    [0, 0, 5, 0, 3, 4, 0, 0, 9, 0, 1, 5],
    [6, 3, 7, 0, 0, 0, 9, 10, 5, 0, 0, 0],
    [0, 6, 0, 3, 7, 0, 0, 9, 0, 10, 5, 0],
    [0, 0, 6, 0, 3, 7, 0, 0, 9, 0, 10, 5],
    [7, 5, 2, 0, 0, 0, 3, 10, 4, 0, 0, 0],
    [0, 7, 0, 5, 2, 0, 0, 3, 0, 10, 4, 0],
    [0, 0, 7, 0, 5, 2, 0, 0, 3, 0, 10, 4],
    [8, 9, 6, 0, 0, 0, 4, 10, 3, 0, 0, 0],
    [0, 8, 0, 9, 6, 0, 0, 4, 0, 10, 3, 0],
    [0, 0, 8, 0, 9, 6, 0, 0, 4, 0, 10, 3],
];

/// Rows 13..=24 of the systematic vanilla generator; rows 1..=12 are I.
pub const G_SYS_PARITY: [[u32; 12]; 12] = [
    [4, 2, 1, 2, 7, 8, 0, 0, 3, 2, 5, 7],
    [8, 0, 0, 7, 1, 9, 10, 0, 3, 9, 2, 5],
    [1, 6, 10, 7, 8, 10, 0, 10, 4, 10, 3, 9],
    [5, 7, 4, 2, 3, 0, 1, 3, 5, 4, 4, 9],
    [9, 2, 10, 9, 0, 3, 9, 4, 8, 3, 4, 4],
    [9, 2, 9, 3, 0, 0, 10, 2, 7, 8, 7, 2],
    [10, 7, 7, 4, 6, 8, 5, 10, 5, 10, 0, 4],
    [5, 7, 4, 4, 0, 8, 7, 4, 4, 8, 10, 0],
    [9, 9, 0, 6, 8, 9, 4, 2, 7, 0, 8, 3],
    [7, 5, 0, 5, 4, 6, 2, 7, 2, 10, 3, 7],
    [5, 8, 5, 7, 6, 0, 1, 9, 9, 0, 10, 3],
    [8, 0, 8, 4, 6, 10, 5, 3, 8, 6, 3, 6],
];

pub const PSI_PRIME: [[u32; 6]; 8] = [
    [1, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 8, 0],
    [0, 0, 1, 0, 0, 5],
    [4, 5, 4, 3, 1, 3],
    [4, 2, 10, 5, 8, 7],
    [3, 10, 9, 10, 4, 8],
    [4, 4, 2, 8, 8, 4],
    [10, 3, 1, 5, 7, 6],
];

pub const G_PRIME: [[u32; 12]; 24] = [
    [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 8, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 8, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 8, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 5, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 5, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 5],
    [4, 5, 4, 0, 0, 0, 3, 1, 3, 0, 0, 0],
    [0, 4, 0, 5, 4, 0, 0, 3, 0, 1, 3, 0],
    [0, 0, 4, 0, 5, 4, 0, 0, 3, 0, 1, 3],
    [4, 2, 10, 0, 0, 0, 5, 8, 7, 0, 0, 0],
    [0, 4, 0, 2, 10, 0, 0, 5, 0, 8, 7, 0],
    [0, 0, 4, 0, 2, 10, 0, 0, 5, 0, 8, 7],
    [3, 10, 9, 0, 0, 0, 10, 4, 8, 0, 0, 0],
    [0, 3, 0, 10, 9, 0, 0, 10, 0, 4, 8, 0],
    [0, 0, 3, 0, 10, 9, 0, 0, 10, 0, 4, 8],
    [4, 4, 2, 0, 0, 0, 8, 8, 4, 0, 0, 0],
    [0, 4, 0, 4, 2, 0, 0, 8, 0, 8, 4, 0],
    [0, 0, 4, 0, 4, 2, 0, 0, 8, 0, 8, 4],
    [10, 3, 1, 0, 0, 0, 5, 7, 6, 0, 0, 0],
    [0, 10, 0, 3, 1, 0, 0, 5, 0, 7, 6, 0],
    [0, 0, 10, 0, 3, 1, 0, 0, 5, 0, 7, 6],
];

/// Rows 13..=24 of the systematic sparse generator; rows 1..=12 are I.
pub const G_PRIME_SYS_PARITY: [[u32; 12]; 12] = [
    [8, 2, 4, 5, 0, 0, 10, 0, 0, 10, 0, 0],
    [0, 2, 0, 4, 10, 3, 0, 9, 0, 0, 5, 0],
    [0, 0, 4, 0, 0, 9, 8, 3, 7, 0, 0, 9],
    [9, 9, 6, 3, 0, 0, 9, 0, 0, 4, 0, 0],
    [0, 4, 0, 7, 9, 2, 0, 4, 0, 0, 9, 0],
    [0, 0, 3, 0, 0, 1, 1, 2, 10, 0, 0, 8],
    [9, 10, 2, 3, 0, 0, 5, 0, 0, 7, 0, 0],
    [0, 1, 0, 9, 6, 6, 0, 2, 0, 0, 4, 0],
    [0, 0, 7, 0, 0, 4, 4, 6, 9, 0, 0, 1],
    [1, 6, 6, 5, 0, 0, 8, 0, 0, 5, 0, 0],
    [0, 5, 0, 1, 9, 6, 0, 2, 0, 0, 1, 0],
    [0, 0, 6, 0, 0, 7, 1, 6, 9, 0, 0, 9],
];

pub fn f11() -> Field {
    Field::prime(11).unwrap()
}

pub fn rows<const C: usize>(m: &[[u32; C]]) -> Vec<Vec<u32>> {
    m.iter().map(|r| r.to_vec()).collect()
}

/// `I₁₂` stacked on the given parity rows.
pub fn systematic_rows(parity: &[[u32; 12]; 12]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (0..12).map(|i| (0..12).map(|j| u32::from(i == j)).collect()).collect();
    out.extend(rows(parity));
    out
}

pub fn params_846() -> CodeParams {
    CodeParams::new(8, 4, 6, &f11()).unwrap()
}

pub fn vanilla_846() -> ProductMatrixCode {
    let p = params_846();
    let enc = build_vandermonde_encoding(&p, None, &ValidationOptions::default()).unwrap();
    ProductMatrixCode::new(p, enc).unwrap()
}

pub fn matrix<const C: usize>(m: &[[u32; C]], f: &Field) -> Matrix {
    Matrix::from_rows(m, f).unwrap()
}
