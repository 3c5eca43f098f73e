//! Verification and measurement: sparsity reports, certification and the
//! encoding benchmark.

pub mod bench;
pub mod certify;
pub mod sparsity;

pub use bench::{benchmark_encode, BenchComparison, BenchOptions, BenchResult, EncodeKernel};
pub use certify::{certify, certify_systematic, CertifyOptions, Certification, CheckResult};
pub use sparsity::{rbt_sys_violations, row_bound_violations, row_bounds, sparsity_report, SparsityReport};
