//! Data collection: recovering the message from any `k` nodes.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::pm::code::GeneratorMatrix;
use crate::pm::encoding::EncodingMatrix;
use crate::pm::message::MessageMatrix;

/// Precomputed inverse of the `kα × B` generator rows of a fixed node set,
/// for decoding many stripes with the same survivors.
#[derive(Clone, Debug)]
pub struct Decoder {
    ids: Vec<usize>,
    alpha: usize,
    inverse: Matrix,
}

impl Decoder {
    pub fn new(g: &GeneratorMatrix, ids: &[usize]) -> Result<Self> {
        let alpha = g.alpha();
        let k = g.message_len() / alpha;
        if ids.len() != k {
            return Err(Error::BadCount { expected: k, actual: ids.len() });
        }
        if let Some(&i) = ids.iter().find(|&&i| i >= g.nodes()) {
            return Err(Error::IndexOutOfRange { index: i, limit: g.nodes() });
        }
        let distinct = ids.iter().collect::<std::collections::HashSet<_>>().len();
        if distinct != k {
            return Err(Error::BadCount { expected: k, actual: distinct });
        }
        let inverse = g.stack_nodes(ids)?.invert()?;
        Ok(Decoder { ids: ids.to_vec(), alpha, inverse })
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// Decodes from the nodes' symbols concatenated in `ids` order.
    pub fn decode_flat(&self, symbols: &[Scalar]) -> Result<Vec<Scalar>> {
        self.inverse.mul_vec(symbols)
    }

    pub fn decode(&self, data: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        if data.len() != self.ids.len() {
            return Err(Error::BadCount { expected: self.ids.len(), actual: data.len() });
        }
        let mut flat = Vec::with_capacity(self.ids.len() * self.alpha);
        for row in data {
            if row.len() != self.alpha {
                return Err(Error::LengthMismatch { expected: self.alpha, actual: row.len() });
            }
            flat.extend_from_slice(row);
        }
        self.decode_flat(&flat)
    }
}

/// Decodes by inverting the stacked generator rows of `ids`. Works for any
/// linear code with an invertible `kα × B` restriction.
pub fn decode_generic(g: &GeneratorMatrix, ids: &[usize], data: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
    Decoder::new(g, ids)?.decode(data)
}

/// Decodes `C_k = Ψ_k M` when the first α rows of `Φ_k` are the identity and
/// its last row is `rᵀ`, i.e. `Ψ_k = [I Λ; rᵀ λrᵀ]`.
///
/// `c_k` is the (α+1)×α block of stored symbols, `lambda` the α+1 diagonal
/// entries of `Λ_k`. Off-diagonal entries come from pairs of symmetric
/// positions; the diagonal of `Sᵇ` from the last row. Needs every `r_i`
/// nonzero and distinct `λ`.
pub fn decode_identity_block(c_k: &Matrix, lambda: &[Scalar], r: &[Scalar]) -> Result<MessageMatrix> {
    let alpha = c_k.cols();
    let f = c_k.field().clone();
    if c_k.rows() != alpha + 1 || lambda.len() != alpha + 1 || r.len() != alpha {
        return Err(Error::DimensionMismatch(format!(
            "need a {}x{alpha} block with {} lambdas and |r| = {alpha}",
            alpha + 1,
            alpha + 1
        )));
    }
    if let Some(i) = r.iter().position(|x| x.is_zero()) {
        return Err(Error::DesignMismatch(format!("r[{i}] is zero")));
    }
    for i in 0..lambda.len() {
        if lambda[..i].contains(&lambda[i]) {
            return Err(Error::DesignMismatch(format!("lambda[{i}] repeats")));
        }
    }
    let lam = lambda[alpha];
    let mut sa = Matrix::zeros(alpha, alpha, &f);
    let mut sb = Matrix::zeros(alpha, alpha, &f);
    for i in 0..alpha {
        for j in i + 1..alpha {
            let diff = f.sub(c_k.get(i, j), c_k.get(j, i));
            let b = f.div(diff, f.sub(lambda[i], lambda[j]))?;
            let a = f.sub(c_k.get(i, j), f.mul(lambda[i], b));
            for (x, y) in [(i, j), (j, i)] {
                sa.set(x, y, a);
                sb.set(x, y, b);
            }
        }
    }
    // C1·r = Sᵃr + ΛSᵇr and the last row gives Sᵃr + λSᵇr.
    let top: Vec<usize> = (0..alpha).collect();
    let c1 = c_k.select_rows(&top)?.mul_vec(r)?;
    let c2 = c_k.row(alpha);
    for i in 0..alpha {
        let sb_r = f.div(f.sub(c1[i], c2[i]), f.sub(lambda[i], lam))?;
        let rest = (0..alpha)
            .filter(|&j| j != i)
            .fold(f.zero(), |acc, j| f.mul_add(acc, sb.get(i, j), r[j]));
        let b = f.div(f.sub(sb_r, rest), r[i])?;
        sb.set(i, i, b);
        sa.set(i, i, f.sub(c_k.get(i, i), f.mul(lambda[i], b)));
    }
    MessageMatrix::new(sa, sb)
}

/// [`decode_identity_block`] applied to the first `k = α + 1` nodes of an
/// encoding matrix whose top α rows of `Φ` form the identity.
pub fn decode_with_identity_encoding(enc: &EncodingMatrix, c_k: &Matrix) -> Result<MessageMatrix> {
    let alpha = enc.alpha();
    if !enc.phi_alpha().is_identity() {
        return Err(Error::DesignMismatch("top alpha rows of phi are not the identity".into()));
    }
    decode_identity_block(c_k, &enc.lambda()[..=alpha], enc.phi_row(alpha))
}
