//! Systematic remapping: pre-multiplying messages so that the first `k`
//! nodes store raw message symbols.
//!
//! Two routes are provided. The generic route uses `G_k⁻¹` and yields an
//! identity top block. The inclusion route places the message into the
//! first `k` nodes with the triangular map `f_ι` and decodes that back to a
//! product-matrix message; its top block is the permutation matrix of `f_ι`.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::pm::code::{check_helpers, GeneratorMatrix, ProductMatrixCode, RegeneratingCode};
use crate::pm::decode::decode_with_identity_encoding;
use crate::pm::message::{pack_message, packed_position, unpack_message, Half, MessageMatrix};
use crate::pm::params::CodeParams;

/// How a systematic code was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    /// Vandermonde encoding matrix, generic remap.
    Vanilla,
    /// Encoding matrix with `Φ_α = I`, generic remap.
    Sparse,
    /// Vandermonde encoding with every node storing `c_iᵀΦ_αᵀ`, generic remap.
    Rbt,
    /// Triangular-inclusion remap of an identity-topped encoding.
    Inclusion,
}

impl Construction {
    pub fn label(self) -> &'static str {
        match self {
            Construction::Vanilla => "vanilla",
            Construction::Sparse => "sparse",
            Construction::Rbt => "rbt",
            Construction::Inclusion => "inclusion",
        }
    }
}

impl std::fmt::Display for Construction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vanilla" => Ok(Construction::Vanilla),
            "sparse" => Ok(Construction::Sparse),
            "rbt" => Ok(Construction::Rbt),
            "inclusion" => Ok(Construction::Inclusion),
            other => Err(Error::Parse(format!("unknown construction {other:?}"))),
        }
    }
}

/// A remapped product-matrix code, possibly shortened from a larger parent.
#[derive(Clone, Debug)]
pub struct SystematicCode {
    params: CodeParams,
    base: ProductMatrixCode,
    construction: Construction,
    shortening: usize,
    remap: Matrix,
    parent_generator: GeneratorMatrix,
    generator: GeneratorMatrix,
}

impl SystematicCode {
    /// Builds `G·remap` over `base` without shortening.
    pub fn from_remap(base: ProductMatrixCode, remap: Matrix, construction: Construction) -> Result<Self> {
        let g = base.generator().matrix().matmul(&remap)?;
        let generator = GeneratorMatrix::new(g, base.params().alpha)?;
        Ok(SystematicCode {
            params: base.params().clone(),
            base,
            construction,
            shortening: 0,
            remap,
            parent_generator: generator.clone(),
            generator,
        })
    }

    /// Drops `i` leading nodes and `iα` leading message symbols, yielding
    /// the `[n-i, k-i, d-i]` code. Only valid on an identity-topped generator.
    pub fn shortened(self, i: usize) -> Result<Self> {
        if self.shortening != 0 {
            return Err(Error::BadShorteningIndex("code is already shortened".into()));
        }
        if i == 0 {
            return Ok(self);
        }
        let p = &self.params;
        if i + 2 > p.k {
            return Err(Error::BadShorteningIndex(format!("cannot drop {i} nodes from a code with k = {}", p.k)));
        }
        let generator = crate::sparse::shorten(&self.parent_generator, i)?;
        let params = CodeParams::new(p.n - i, p.k - i, p.d - i, &p.field)?;
        Ok(SystematicCode { params, shortening: i, generator, ..self })
    }

    pub fn base(&self) -> &ProductMatrixCode {
        &self.base
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    /// Number of dummy nodes removed from the parent.
    pub fn shortening(&self) -> usize {
        self.shortening
    }

    /// The parent's `B′ × B′` remap (`B′ = B` when not shortened).
    pub fn remap(&self) -> &Matrix {
        &self.remap
    }

    pub fn parent_generator(&self) -> &GeneratorMatrix {
        &self.parent_generator
    }

    /// Parity nodes `k .. n` only.
    pub fn parity_generator(&self) -> Result<Matrix> {
        let ids: Vec<usize> = (self.params.k..self.params.n).collect();
        self.generator.stack_nodes(&ids)
    }

    fn parent_helpers(&self, helpers: &[usize]) -> Vec<usize> {
        (0..self.shortening).chain(helpers.iter().map(|h| h + self.shortening)).collect()
    }
}

impl RegeneratingCode for SystematicCode {
    fn params(&self) -> &CodeParams {
        &self.params
    }

    fn generator(&self) -> &GeneratorMatrix {
        &self.generator
    }

    fn encode_message(&self, m: &[Scalar]) -> Result<Matrix> {
        if m.len() != self.params.b {
            return Err(Error::LengthMismatch { expected: self.params.b, actual: m.len() });
        }
        self.generator.encode(m)
    }

    fn repair_vector(&self, failed: usize) -> Result<Vec<Scalar>> {
        if failed >= self.params.n {
            return Err(Error::IndexOutOfRange { index: failed, limit: self.params.n });
        }
        self.base.repair_vector(failed + self.shortening)
    }

    /// Dummy helpers always send zero, so their columns are dropped.
    fn repair_matrix(&self, failed: usize, helpers: &[usize]) -> Result<Matrix> {
        check_helpers(self.params.n, self.params.d, failed, helpers)?;
        let s = self.shortening;
        let full = self.base.repair_matrix(failed + s, &self.parent_helpers(helpers))?;
        let cols: Vec<usize> = (s..s + self.params.d).collect();
        full.select_cols(&cols)
    }
}

/// `G_k⁻¹` for the top `B` rows of `g`.
pub fn generic_remap_matrix(g: &GeneratorMatrix) -> Result<Matrix> {
    let b = g.message_len();
    let rows: Vec<usize> = (0..b).collect();
    g.matrix().select_rows(&rows)?.invert()
}

/// The generic route: `G_sys = G·G_k⁻¹`.
pub fn remap_generic(base: ProductMatrixCode, construction: Construction) -> Result<SystematicCode> {
    let remap = generic_remap_matrix(base.generator())?;
    SystematicCode::from_remap(base, remap, construction)
}

/// Embeds `(Sᵃ, Sᵇ)` into the k×α block: the upper triangle of the first α
/// rows takes `Sᵃ` (diagonal included), the strict lower triangle takes
/// `Sᵇ`, and the last row takes the diagonal of `Sᵇ`.
pub fn triangular_inclusion(msg: &MessageMatrix, params: &CodeParams) -> Result<Matrix> {
    params.require_base_regime()?;
    let alpha = params.alpha;
    if msg.alpha() != alpha {
        return Err(Error::DimensionMismatch(format!("message alpha {} vs code alpha {alpha}", msg.alpha())));
    }
    let mut c = Matrix::zeros(alpha + 1, alpha, msg.field());
    for r in 0..alpha {
        for col in 0..alpha {
            let v = if r <= col { msg.sa.get(r, col) } else { msg.sb.get(r, col) };
            c.set(r, col, v);
        }
        c.set(alpha, r, msg.sb.get(r, r));
    }
    Ok(c)
}

/// Cell of the k×α block that `f_ι` sends packed symbol `t` to.
pub fn inclusion_cell(alpha: usize, t: usize) -> (usize, usize) {
    match packed_position(alpha, t) {
        (Half::A, r, c) => (r, c),
        (Half::B, r, c) if r == c => (alpha, r),
        (Half::B, r, c) => (c, r),
    }
}

/// `f_ι` as a `B × B` permutation matrix from packed symbols to node-major
/// stored positions of the first `k` nodes.
pub fn inclusion_permutation(params: &CodeParams) -> Result<Matrix> {
    params.require_base_regime()?;
    let alpha = params.alpha;
    let b = params.b;
    let mut q = Matrix::zeros(b, b, &params.field);
    for t in 0..b {
        let (i, c) = inclusion_cell(alpha, t);
        q.set(i * alpha + c, t, Scalar::ONE);
    }
    Ok(q)
}

/// The inclusion route computed column by column: column `t` of the remap
/// is the product-matrix message whose first `k` nodes hold `f_ι(e_t)`,
/// recovered with the identity-block decoder.
pub fn remap_via_inclusion(base: ProductMatrixCode) -> Result<SystematicCode> {
    if base.is_transformed() {
        return Err(Error::DesignMismatch("inclusion route needs an untransformed code".into()));
    }
    let params = base.params().clone();
    params.require_base_regime()?;
    let f = &params.field;
    let mut remap = Matrix::zeros(params.b, params.b, f);
    for t in 0..params.b {
        let mut e = vec![Scalar::ZERO; params.b];
        e[t] = Scalar::ONE;
        let c_k = triangular_inclusion(&pack_message(&e, params.alpha, f)?, &params)?;
        let col = unpack_message(&decode_with_identity_encoding(base.encoding(), &c_k)?)?;
        for (u, v) in col.into_iter().enumerate() {
            remap.set(u, t, v);
        }
    }
    SystematicCode::from_remap(base, remap, Construction::Inclusion)
}

/// `G_k⁻¹Q`: the inclusion-route remap for any base-regime code, including
/// ones without an identity block.
pub fn inclusion_remap_matrix(code: &ProductMatrixCode) -> Result<Matrix> {
    let q = inclusion_permutation(code.params())?;
    generic_remap_matrix(code.generator())?.matmul(&q)
}

fn column_set(alpha: usize, t: usize) -> [usize; 2] {
    let (_, r, c) = packed_position(alpha, t);
    [r, c]
}

/// Nonzero remap entries `(output, input)` where output symbol `(r, c)`
/// of the product-matrix message depends on an input symbol that does not
/// lie in both column `r` and column `c` of the systematic message.
pub fn column_dependency_violations(remap: &Matrix, alpha: usize) -> Vec<(usize, usize)> {
    let b = alpha * (alpha + 1);
    let mut out = Vec::new();
    for u in 0..b {
        let [r, c] = column_set(alpha, u);
        for t in 0..b {
            let cols = column_set(alpha, t);
            if !remap.get(u, t).is_zero() && !(cols.contains(&r) && cols.contains(&c)) {
                out.push((u, t));
            }
        }
    }
    out
}

/// Nonzero remap entries where an output in the first column depends on
/// an input outside the first column.
pub fn first_column_violations(remap: &Matrix, alpha: usize) -> Vec<(usize, usize)> {
    let b = alpha * (alpha + 1);
    let mut out = Vec::new();
    for u in (0..b).filter(|&u| column_set(alpha, u).contains(&0)) {
        for t in 0..b {
            if !remap.get(u, t).is_zero() && !column_set(alpha, t).contains(&0) {
                out.push((u, t));
            }
        }
    }
    out
}

/// Packed indices of the symbols in column `j` of a message matrix.
pub fn column_symbols(alpha: usize, j: usize) -> Vec<usize> {
    (0..alpha * (alpha + 1)).filter(|&t| column_set(alpha, t).contains(&j)).collect()
}
