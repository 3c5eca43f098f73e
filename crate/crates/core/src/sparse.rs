//! Sparse systematic constructions.
//!
//! * [`sparsify_encoding`] right-multiplies `Φ` by `Φ_α⁻¹`, so the first α
//!   nodes have identity rows and the remapped generator is d-sparse.
//! * [`rbt_transform`] lets every node store `c_iᵀP`; with `P = Φ_αᵀ` each
//!   helper of one of the first α nodes forwards a stored symbol as is.
//! * [`shorten`] derives `[n, k, d]` codes with `d > 2k - 2` from an
//!   `[n+i, k+i, d+i]` parent in the base regime.
//! * [`equivalence_check`] confirms that a `P`-transformed code is a
//!   symbol-remapped product-matrix code with encoding matrix `[ΦP⁻ᵀ | ΛΦP⁻ᵀ]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::pm::code::{encode, GeneratorMatrix, ProductMatrixCode, RegeneratingCode};
use crate::pm::encoding::{build_vandermonde_encoding, select_prime_field, EncodingMatrix, ValidationOptions};
use crate::pm::message::{pack_message, unpack_message, MessageMatrix};
use crate::pm::params::CodeParams;
pub use crate::systematic::Construction;
use crate::systematic::{remap_generic, SystematicCode};

/// `Φ′ = ΦΦ_α⁻¹` with `Λ` unchanged; Properties 1–3 are checked again.
pub fn sparsify_encoding(enc: &EncodingMatrix, opts: &ValidationOptions) -> Result<EncodingMatrix> {
    let phi_alpha_inv = enc.phi_alpha().invert()?;
    let phi = enc.phi().matmul(&phi_alpha_inv)?;
    EncodingMatrix::from_phi_lambda(phi, enc.lambda().to_vec())?.validate(opts)
}

/// `P = Φ_αᵀ`, the transform that turns repair of the first α nodes into
/// plain symbol transfer.
pub fn rbt_matrix(enc: &EncodingMatrix) -> Matrix {
    enc.phi_alpha().transpose()
}

/// Every node stores `c_iᵀP` instead of `c_iᵀ`.
pub fn rbt_transform(code: ProductMatrixCode, p: Matrix) -> Result<ProductMatrixCode> {
    code.with_transform(p)
}

/// Omits the first `iα` rows and columns of a systematic generator.
pub fn shorten(g: &GeneratorMatrix, i: usize) -> Result<GeneratorMatrix> {
    let alpha = g.alpha();
    let cut = i * alpha;
    if i == 0 {
        return Ok(g.clone());
    }
    if cut >= g.message_len() || i >= g.nodes() {
        return Err(Error::BadShorteningIndex(format!("cannot omit {i} nodes from a {}-node generator", g.nodes())));
    }
    let m = g.matrix();
    for r in 0..cut {
        for c in 0..m.cols() {
            let expected = if r == c { Scalar::ONE } else { Scalar::ZERO };
            if m.get(r, c) != expected {
                return Err(Error::BadShorteningIndex("generator is not systematic on the omitted nodes".into()));
            }
        }
    }
    let rows: Vec<usize> = (cut..m.rows()).collect();
    let cols: Vec<usize> = (cut..m.cols()).collect();
    GeneratorMatrix::new(m.submatrix(&rows, &cols)?, alpha)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub construction: Construction,
    /// Evaluation points for the (parent) Vandermonde matrix; `1..=n′` when absent.
    pub xs: Option<Vec<u32>>,
    pub validation: ValidationOptions,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { construction: Construction::Sparse, xs: None, validation: ValidationOptions::default() }
    }
}

impl BuildOptions {
    pub fn with_construction(construction: Construction) -> Self {
        BuildOptions { construction, ..Default::default() }
    }
}

/// Smallest prime field in which the (parent) Vandermonde construction on
/// `1..=n′` passes validation.
pub fn auto_prime_field(n: usize, k: usize, d: usize, opts: &ValidationOptions) -> Result<Field> {
    let probe = CodeParams::new(n, k, d, &Field::prime(2)?)?;
    let parent = probe.parent();
    Ok(select_prime_field(parent.n, parent.k, parent.d, opts)?.0)
}

/// Builds a systematic `[n, k, d]` code.
///
/// For `d = 2k - 2` the chosen construction is applied directly. For larger
/// `d` the `[n+i, k+i, d+i]` parent is built, remapped and shortened; the
/// sparse constructions then go through the transform `P = Φ_αᵀ` on the
/// parent, so `Sparse` and `Rbt` coincide there.
pub fn build_systematic(n: usize, k: usize, d: usize, field: &Field, opts: &BuildOptions) -> Result<SystematicCode> {
    let params = CodeParams::new(n, k, d, field)?;
    let parent = params.parent();
    let enc = build_vandermonde_encoding(&parent, opts.xs.as_deref(), &opts.validation)?;
    let shortened = !params.is_base_regime();
    let (base, construction) = match opts.construction {
        Construction::Vanilla => (ProductMatrixCode::new(parent, enc)?, Construction::Vanilla),
        Construction::Sparse if !shortened => {
            let enc = sparsify_encoding(&enc, &opts.validation)?;
            (ProductMatrixCode::new(parent, enc)?, Construction::Sparse)
        }
        Construction::Sparse | Construction::Rbt => {
            let p = rbt_matrix(&enc);
            (rbt_transform(ProductMatrixCode::new(parent, enc)?, p)?, Construction::Rbt)
        }
        Construction::Inclusion => {
            if shortened {
                return Err(Error::DesignMismatch("the inclusion route needs d = 2k - 2".into()));
            }
            let enc = sparsify_encoding(&enc, &opts.validation)?;
            return crate::systematic::remap_via_inclusion(ProductMatrixCode::new(parent, enc)?);
        }
    };
    remap_generic(base, construction)?.shortened(params.shortening())
}

/// [`build_systematic`] with the sparse construction and default options.
pub fn build_sparse_systematic(n: usize, k: usize, d: usize, field: &Field) -> Result<SystematicCode> {
    build_systematic(n, k, d, field, &BuildOptions::default())
}

/// Outcome of [`equivalence_check`].
#[derive(Clone, Debug)]
pub struct Equivalence {
    /// `[ΦP⁻ᵀ | ΛΦP⁻ᵀ]`.
    pub psi_prime: EncodingMatrix,
    /// `T(S) = P⁻ᵀSP⁻¹` on both halves, as a `B × B` matrix on packed messages.
    pub remap: Matrix,
    pub samples: usize,
    pub mismatches: usize,
}

impl Equivalence {
    pub fn verdict(&self) -> bool {
        self.mismatches == 0
    }
}

/// `T(Sᵃ, Sᵇ) = (P⁻ᵀSᵃP⁻¹, P⁻ᵀSᵇP⁻¹)`.
pub fn congruence(msg: &MessageMatrix, p_inv: &Matrix) -> Result<MessageMatrix> {
    let p_inv_t = p_inv.transpose();
    let sa = p_inv_t.matmul(&msg.sa)?.matmul(p_inv)?;
    let sb = p_inv_t.matmul(&msg.sb)?.matmul(p_inv)?;
    MessageMatrix::new(sa, sb)
}

/// Checks that storing `c_iᵀP` in the untransformed `code` after remapping
/// the message by `T` equals encoding with `[ΦP⁻ᵀ | ΛΦP⁻ᵀ]`, on `samples`
/// random messages.
pub fn equivalence_check(code: &ProductMatrixCode, p: &Matrix, samples: usize, seed: u64) -> Result<Equivalence> {
    if code.is_transformed() {
        return Err(Error::DesignMismatch("equivalence check starts from an untransformed code".into()));
    }
    let params = code.params();
    let f = &params.field;
    let enc = code.encoding();
    let p_inv = p.invert()?;
    let phi_prime = enc.phi().matmul(&p_inv.transpose())?;
    let psi_prime = EncodingMatrix::from_phi_lambda(phi_prime, enc.lambda().to_vec())?;
    let transformed = code.clone().with_transform(p.clone())?;

    let mut remap = Matrix::zeros(params.b, params.b, f);
    for t in 0..params.b {
        let mut e = vec![Scalar::ZERO; params.b];
        e[t] = Scalar::ONE;
        let col = unpack_message(&congruence(&pack_message(&e, params.alpha, f)?, &p_inv)?)?;
        for (u, v) in col.into_iter().enumerate() {
            remap.set(u, t, v);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0;
    for _ in 0..samples {
        let m: Vec<Scalar> = (0..params.b).map(|_| f.reduce(rng.gen::<u64>())).collect();
        let msg = pack_message(&m, params.alpha, f)?;
        let lhs = transformed.encode_message(&unpack_message(&congruence(&msg, &p_inv)?)?)?;
        let rhs = encode(&psi_prime, &msg)?;
        let via_matrix = transformed.encode_message(&remap.mul_vec(&m)?)?;
        if lhs != rhs || via_matrix != rhs {
            mismatches += 1;
        }
    }
    Ok(Equivalence { psi_prime, remap, samples, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PSI_PRIME: [[u32; 6]; 8] = [
        [1, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 8, 0],
        [0, 0, 1, 0, 0, 5],
        [4, 5, 4, 3, 1, 3],
        [4, 2, 10, 5, 8, 7],
        [3, 10, 9, 10, 4, 8],
        [4, 4, 2, 8, 8, 4],
        [10, 3, 1, 5, 7, 6],
    ];

    fn f11() -> Field {
        Field::prime(11).unwrap()
    }

    fn vanilla_enc() -> EncodingMatrix {
        let p = CodeParams::new(8, 4, 6, &f11()).unwrap();
        build_vandermonde_encoding(&p, None, &ValidationOptions::default()).unwrap()
    }

    #[test]
    fn sparsified_psi_matches_frozen_values() {
        let enc = vanilla_enc();
        let sparse = sparsify_encoding(&enc, &ValidationOptions::default()).unwrap();
        assert_eq!(sparse.psi().to_u32_rows(), PSI_PRIME.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        assert_eq!(sparse.lambda(), enc.lambda());
        // idempotent once the top block is the identity
        let again = sparsify_encoding(&sparse, &ValidationOptions::default()).unwrap();
        assert_eq!(again, sparse);
    }

    #[test]
    fn identity_transform_changes_nothing() {
        let p = CodeParams::new(8, 4, 6, &f11()).unwrap();
        let code = ProductMatrixCode::new(p, vanilla_enc()).unwrap();
        let same = rbt_transform(code.clone(), Matrix::identity(3, &f11())).unwrap();
        assert_eq!(same.generator(), code.generator());
        let eq = equivalence_check(&code, &Matrix::identity(3, &f11()), 10, 1).unwrap();
        assert_eq!(eq.psi_prime.psi(), code.encoding().psi());
        assert!(eq.remap.is_identity());
        assert!(eq.verdict());
    }

    #[test]
    fn singular_transform_is_rejected() {
        let p = CodeParams::new(8, 4, 6, &f11()).unwrap();
        let code = ProductMatrixCode::new(p, vanilla_enc()).unwrap();
        let singular = Matrix::from_rows(&[[1, 1, 1], [1, 1, 1], [0, 0, 1]], &f11()).unwrap();
        assert!(matches!(rbt_transform(code.clone(), singular.clone()), Err(Error::Singular)));
        assert!(matches!(equivalence_check(&code, &singular, 1, 1), Err(Error::Singular)));
    }

    #[test]
    fn congruence_preserves_symmetry() {
        let f = f11();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p_inv = rbt_matrix(&vanilla_enc()).invert().unwrap();
        for _ in 0..50 {
            let m: Vec<Scalar> = (0..12).map(|_| Scalar::new(rng.gen_range(0..11))).collect();
            let out = congruence(&pack_message(&m, 3, &f).unwrap(), &p_inv).unwrap();
            assert!(out.sa.is_symmetric() && out.sb.is_symmetric());
        }
    }

    #[test]
    fn shorten_checks() {
        let code = build_systematic(8, 4, 6, &f11(), &BuildOptions::default()).unwrap();
        let g = code.generator();
        assert_eq!(&shorten(g, 0).unwrap(), g);
        let s = shorten(g, 1).unwrap();
        assert_eq!((s.nodes(), s.message_len()), (7, 9));
        assert!(matches!(shorten(g, 4), Err(Error::BadShorteningIndex(_))));
        let non_sys = crate::pm::code::generator_matrix(&vanilla_enc());
        assert!(matches!(shorten(&non_sys, 1), Err(Error::BadShorteningIndex(_))));
    }

    #[test]
    fn inclusion_build_needs_base_regime() {
        let opts = BuildOptions::with_construction(Construction::Inclusion);
        let f = Field::prime(23).unwrap();
        assert!(matches!(build_systematic(9, 4, 7, &f, &opts), Err(Error::DesignMismatch(_))));
        assert!(build_systematic(8, 4, 6, &f11(), &opts).is_ok());
    }

    #[test]
    fn auto_field_uses_parent() {
        let opts = ValidationOptions::default();
        assert_eq!(auto_prime_field(8, 4, 6, &opts).unwrap().order(), 11);
        assert_eq!(auto_prime_field(9, 4, 7, &opts).unwrap().order(), 23);
        assert_eq!(auto_prime_field(17, 8, 15, &opts).unwrap().order(), 43);
    }
}
