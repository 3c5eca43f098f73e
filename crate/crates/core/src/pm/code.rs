//! Encoding, generator matrices and exact repair for product-matrix codes.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{dot, Matrix};
use crate::pm::decode::decode_generic;
use crate::pm::encoding::EncodingMatrix;
use crate::pm::message::{pack_message, packed_index, Half, MessageMatrix};
use crate::pm::params::CodeParams;

/// Encodes a message matrix directly: node `i` stores
/// `c_iᵀ = φ_iᵀSᵃ + λ_i φ_iᵀSᵇ`. Row `i` of the result is node `i`.
pub fn encode(enc: &EncodingMatrix, msg: &MessageMatrix) -> Result<Matrix> {
    if msg.alpha() != enc.alpha() {
        return Err(Error::DimensionMismatch(format!("message alpha {} vs code alpha {}", msg.alpha(), enc.alpha())));
    }
    let f = enc.field();
    let a = enc.phi().matmul(&msg.sa)?;
    let b = enc.phi().matmul(&msg.sb)?;
    let mut out = Matrix::zeros(enc.n(), enc.alpha(), f);
    for i in 0..enc.n() {
        let l = enc.lambda()[i];
        for c in 0..enc.alpha() {
            out.set(i, c, f.mul_add(a.get(i, c), l, b.get(i, c)));
        }
    }
    Ok(out)
}

/// The `nα × B` matrix taking a packed message to all stored symbols,
/// node-major: rows `iα .. (i+1)α` belong to node `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    matrix: Matrix,
    alpha: usize,
}

impl GeneratorMatrix {
    pub fn new(matrix: Matrix, alpha: usize) -> Result<Self> {
        if alpha == 0 || !matrix.rows().is_multiple_of(alpha) {
            return Err(Error::DimensionMismatch(format!("{} rows is not a multiple of alpha = {alpha}", matrix.rows())));
        }
        Ok(GeneratorMatrix { matrix, alpha })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn nodes(&self) -> usize {
        self.matrix.rows() / self.alpha
    }

    pub fn message_len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    /// Node `i`'s α×B block.
    pub fn node_block(&self, i: usize) -> Result<Matrix> {
        self.stack_nodes(&[i])
    }

    /// Node blocks of `ids`, stacked in the given order.
    pub fn stack_nodes(&self, ids: &[usize]) -> Result<Matrix> {
        let rows: Vec<usize> = ids.iter().flat_map(|&i| i * self.alpha..(i + 1) * self.alpha).collect();
        self.matrix.select_rows(&rows)
    }

    /// `G·m`, reshaped so that row `i` holds node `i`'s symbols.
    pub fn encode(&self, m: &[Scalar]) -> Result<Matrix> {
        let flat = self.matrix.mul_vec(m)?;
        Matrix::from_vec(self.nodes(), self.alpha, flat, self.field())
    }
}

/// Generator matrix of the untransformed code, assembled from `Ψ`
/// coefficients and the packed message layout (not by encoding unit vectors).
pub fn generator_matrix(enc: &EncodingMatrix) -> GeneratorMatrix {
    let (n, alpha) = (enc.n(), enc.alpha());
    let f = enc.field();
    let mut g = Matrix::zeros(n * alpha, alpha * (alpha + 1), f);
    for i in 0..n {
        let phi = enc.phi_row(i);
        let l = enc.lambda()[i];
        for c in 0..alpha {
            for (r, &p) in phi.iter().enumerate() {
                g.set(i * alpha + c, packed_index(alpha, Half::A, r, c), p);
                g.set(i * alpha + c, packed_index(alpha, Half::B, r, c), f.mul(l, p));
            }
        }
    }
    GeneratorMatrix { matrix: g, alpha }
}

pub(crate) fn check_helpers(n: usize, d: usize, failed: usize, helpers: &[usize]) -> Result<()> {
    let bad = || Error::BadHelperCount { expected: d, actual: helpers.len() };
    if failed >= n {
        return Err(Error::IndexOutOfRange { index: failed, limit: n });
    }
    if helpers.len() != d {
        return Err(bad());
    }
    for (j, &h) in helpers.iter().enumerate() {
        if h >= n {
            return Err(Error::IndexOutOfRange { index: h, limit: n });
        }
        if h == failed || helpers[..j].contains(&h) {
            return Err(bad());
        }
    }
    Ok(())
}

/// α×d matrix taking the helper symbols `c_hᵀφ_f` to `c_f`:
/// `Mφ_f = Ψ_d⁻¹·y` and `c_f = Sᵃφ_f + λ_f·Sᵇφ_f`.
fn untransformed_repair_matrix(enc: &EncodingMatrix, failed: usize, helpers: &[usize]) -> Result<Matrix> {
    check_helpers(enc.n(), enc.d(), failed, helpers)?;
    let f = enc.field();
    let alpha = enc.alpha();
    let inv = enc.psi().select_rows(helpers)?.invert()?;
    let l = enc.lambda()[failed];
    let mut out = Matrix::zeros(alpha, enc.d(), f);
    for r in 0..alpha {
        for c in 0..enc.d() {
            out.set(r, c, f.mul_add(inv.get(r, c), l, inv.get(alpha + r, c)));
        }
    }
    Ok(out)
}

/// Repairs node `failed` of the untransformed code from the helper symbols
/// `c_hᵀφ_f` sent by `helpers` (same order).
pub fn repair(enc: &EncodingMatrix, failed: usize, helpers: &[usize], symbols: &[Scalar]) -> Result<Vec<Scalar>> {
    if symbols.len() != helpers.len() {
        return Err(Error::LengthMismatch { expected: helpers.len(), actual: symbols.len() });
    }
    untransformed_repair_matrix(enc, failed, helpers)?.mul_vec(symbols)
}

/// What the helpers of one repair sent, together with the vector they
/// each dotted their stored data with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairBundle {
    pub failed: usize,
    pub helpers: Vec<usize>,
    pub symbols: Vec<Scalar>,
    pub repair_vector: Vec<Scalar>,
}

/// Common interface of all codes in this crate: encoding with a generator,
/// repair of one node from `d` helpers sending one symbol each, and
/// decoding from any `k` nodes.
pub trait RegeneratingCode {
    fn params(&self) -> &CodeParams;

    fn generator(&self) -> &GeneratorMatrix;

    /// Stored symbols for a packed message; row `i` is node `i`.
    fn encode_message(&self, m: &[Scalar]) -> Result<Matrix>;

    /// The vector every helper dots its stored data with when `failed` is repaired.
    fn repair_vector(&self, failed: usize) -> Result<Vec<Scalar>>;

    /// α×d matrix taking the helper symbols, in `helpers` order, to the
    /// replacement content of `failed`.
    fn repair_matrix(&self, failed: usize, helpers: &[usize]) -> Result<Matrix>;

    fn helper_symbol(&self, failed: usize, stored: &[Scalar]) -> Result<Scalar> {
        let v = self.repair_vector(failed)?;
        if stored.len() != v.len() {
            return Err(Error::LengthMismatch { expected: v.len(), actual: stored.len() });
        }
        Ok(dot(&self.params().field, stored, &v))
    }

    /// Collects helper symbols from the full stored contents (row per node).
    fn gather_repair(&self, failed: usize, helpers: &[usize], stored: &Matrix) -> Result<RepairBundle> {
        let p = self.params();
        check_helpers(p.n, p.d, failed, helpers)?;
        let v = self.repair_vector(failed)?;
        let symbols = helpers.iter().map(|&h| dot(&p.field, stored.row(h), &v)).collect();
        Ok(RepairBundle { failed, helpers: helpers.to_vec(), symbols, repair_vector: v })
    }

    fn repair(&self, failed: usize, helpers: &[usize], symbols: &[Scalar]) -> Result<Vec<Scalar>> {
        if symbols.len() != helpers.len() {
            return Err(Error::LengthMismatch { expected: helpers.len(), actual: symbols.len() });
        }
        self.repair_matrix(failed, helpers)?.mul_vec(symbols)
    }

    /// Recovers the packed message from `k` nodes' contents.
    fn decode(&self, ids: &[usize], data: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        decode_generic(self.generator(), ids, data)
    }
}

/// A product-matrix code in the base regime `d = 2k - 2`, optionally with
/// every node storing `c_iᵀP` for a fixed invertible α×α matrix `P`.
#[derive(Clone, Debug)]
pub struct ProductMatrixCode {
    params: CodeParams,
    enc: EncodingMatrix,
    transform: Option<(Matrix, Matrix)>,
    generator: GeneratorMatrix,
}

impl ProductMatrixCode {
    pub fn new(params: CodeParams, enc: EncodingMatrix) -> Result<Self> {
        params.require_base_regime()?;
        if enc.n() != params.n || enc.alpha() != params.alpha {
            return Err(Error::DimensionMismatch(format!(
                "encoding matrix is {}x{} for {}",
                enc.n(),
                enc.d(),
                params
            )));
        }
        if enc.field() != &params.field {
            return Err(Error::FieldMismatch);
        }
        let generator = generator_matrix(&enc);
        Ok(ProductMatrixCode { params, enc, transform: None, generator })
    }

    /// Switches to storing `c_iᵀP`; node `i`'s generator block becomes `PᵀG_i`.
    pub fn with_transform(self, p: Matrix) -> Result<Self> {
        if p.rows() != self.params.alpha || !p.is_square() {
            return Err(Error::DimensionMismatch(format!("transform must be {0}x{0}", self.params.alpha)));
        }
        let p_inv = p.invert()?;
        let base = generator_matrix(&self.enc);
        let pt = p.transpose();
        let mut blocks = Vec::with_capacity(self.params.n);
        for i in 0..self.params.n {
            blocks.push(pt.matmul(&base.node_block(i)?)?);
        }
        let stacked = blocks
            .iter()
            .skip(1)
            .try_fold(blocks[0].clone(), |acc, b| acc.vstack(b))?;
        let generator = GeneratorMatrix::new(stacked, self.params.alpha)?;
        Ok(ProductMatrixCode { transform: Some((p, p_inv)), generator, ..self })
    }

    pub fn encoding(&self) -> &EncodingMatrix {
        &self.enc
    }

    pub fn transform(&self) -> Option<&Matrix> {
        self.transform.as_ref().map(|(p, _)| p)
    }

    pub fn is_transformed(&self) -> bool {
        self.transform.is_some()
    }
}

impl RegeneratingCode for ProductMatrixCode {
    fn params(&self) -> &CodeParams {
        &self.params
    }

    fn generator(&self) -> &GeneratorMatrix {
        &self.generator
    }

    fn encode_message(&self, m: &[Scalar]) -> Result<Matrix> {
        let msg = pack_message(m, self.params.alpha, &self.params.field)?;
        let c = encode(&self.enc, &msg)?;
        match &self.transform {
            Some((p, _)) => c.matmul(p),
            None => Ok(c),
        }
    }

    fn repair_vector(&self, failed: usize) -> Result<Vec<Scalar>> {
        if failed >= self.params.n {
            return Err(Error::IndexOutOfRange { index: failed, limit: self.params.n });
        }
        let phi = self.enc.phi_row(failed);
        match &self.transform {
            Some((_, p_inv)) => p_inv.mul_vec(phi),
            None => Ok(phi.to_vec()),
        }
    }

    fn repair_matrix(&self, failed: usize, helpers: &[usize]) -> Result<Matrix> {
        let r = untransformed_repair_matrix(&self.enc, failed, helpers)?;
        match &self.transform {
            Some((p, _)) => p.transpose().matmul(&r),
            None => Ok(r),
        }
    }
}
