//! Sparse systematic product-matrix MSR regenerating codes.
//!
//! The crate builds `[n, k, d]` minimum-storage regenerating codes from a
//! product-matrix encoding, converts them to systematic form, and offers two
//! routes to systematic generators with many zeros: sparsifying the encoding
//! matrix, or applying a repair-by-transfer style basis change. Codes with
//! `d > 2k - 2` are obtained by shortening a larger base code.

pub mod analysis;
pub mod error;
pub mod field;
pub mod linalg;
pub mod pm;
pub mod sparse;
pub mod systematic;

pub use error::{Error, Property, Result};
pub use field::{Field, FieldKind, Scalar};
pub use linalg::Matrix;
pub use pm::{CodeParams, EncodingMatrix, MessageMatrix, ProductMatrixCode, RegeneratingCode};

pub use sparse::{build_sparse_systematic, build_systematic, BuildOptions};
pub use systematic::{Construction, SystematicCode};
