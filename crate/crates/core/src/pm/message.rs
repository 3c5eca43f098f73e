//! Message matrices and the canonical packing of `B = α(α+1)` symbols.
//!
//! `Sᵃ` takes `m[0 .. B/2]` and `Sᵇ` takes `m[B/2 .. B]`; within each half
//! the upper triangle (diagonal included) is filled row by row and mirrored.
//! For α = 3:
//!
//! ```text
//! Sa = [m0 m1 m2]    Sb = [m6 m7  m8 ]
//!      [m1 m3 m4]         [m7 m9  m10]
//!      [m2 m4 m5]         [m8 m10 m11]
//! ```

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Half {
    A,
    B,
}

/// Number of free entries in one α×α symmetric matrix.
pub fn half_len(alpha: usize) -> usize {
    alpha * (alpha + 1) / 2
}

/// Packed-vector index of entry `(r, c)` of `Sᵃ` or `Sᵇ`.
pub fn packed_index(alpha: usize, half: Half, r: usize, c: usize) -> usize {
    let (r, c) = if r <= c { (r, c) } else { (c, r) };
    // rows above r hold r*alpha - r(r-1)/2 entries
    let within = r * alpha - r * r.saturating_sub(1) / 2 + (c - r);
    match half {
        Half::A => within,
        Half::B => half_len(alpha) + within,
    }
}

/// Inverse of [`packed_index`]: which half and which upper-triangle cell
/// `(r, c)`, `r <= c`, a packed index refers to.
pub fn packed_position(alpha: usize, t: usize) -> (Half, usize, usize) {
    let h = half_len(alpha);
    let (half, mut rem) = if t < h { (Half::A, t) } else { (Half::B, t - h) };
    for r in 0..alpha {
        let row_len = alpha - r;
        if rem < row_len {
            return (half, r, r + rem);
        }
        rem -= row_len;
    }
    panic!("packed index {t} out of range for alpha = {alpha}");
}

/// The pair of symmetric α×α blocks stacked as `M = [Sᵃ; Sᵇ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageMatrix {
    pub sa: Matrix,
    pub sb: Matrix,
}

impl MessageMatrix {
    /// Checked constructor; both halves must be square, symmetric and of equal size.
    pub fn new(sa: Matrix, sb: Matrix) -> Result<Self> {
        if !sa.is_square() || sa.rows() != sb.rows() || !sb.is_square() {
            return Err(Error::DimensionMismatch("message halves must be equal square matrices".into()));
        }
        if sa.field() != sb.field() {
            return Err(Error::FieldMismatch);
        }
        if !sa.is_symmetric() || !sb.is_symmetric() {
            return Err(Error::AsymmetryDetected);
        }
        Ok(MessageMatrix { sa, sb })
    }

    pub fn alpha(&self) -> usize {
        self.sa.rows()
    }

    pub fn field(&self) -> &Field {
        self.sa.field()
    }

    /// `[Sᵃ; Sᵇ]` as a 2α×α matrix.
    pub fn stacked(&self) -> Matrix {
        self.sa.vstack(&self.sb).expect("halves have equal width")
    }
}

/// Packs `B = α(α+1)` symbols into `(Sᵃ, Sᵇ)`.
pub fn pack_message(m: &[Scalar], alpha: usize, field: &Field) -> Result<MessageMatrix> {
    let b = alpha * (alpha + 1);
    if m.len() != b {
        return Err(Error::LengthMismatch { expected: b, actual: m.len() });
    }
    let mut sa = Matrix::zeros(alpha, alpha, field);
    let mut sb = Matrix::zeros(alpha, alpha, field);
    for r in 0..alpha {
        for c in r..alpha {
            let va = m[packed_index(alpha, Half::A, r, c)];
            let vb = m[packed_index(alpha, Half::B, r, c)];
            for (i, j) in [(r, c), (c, r)] {
                sa.set(i, j, va);
                sb.set(i, j, vb);
            }
        }
    }
    Ok(MessageMatrix { sa, sb })
}

/// Reads the packed vector back out; both halves must be symmetric.
pub fn unpack_message(msg: &MessageMatrix) -> Result<Vec<Scalar>> {
    if !msg.sa.is_symmetric() || !msg.sb.is_symmetric() {
        return Err(Error::AsymmetryDetected);
    }
    let alpha = msg.alpha();
    let mut m = vec![Scalar::ZERO; alpha * (alpha + 1)];
    for r in 0..alpha {
        for c in r..alpha {
            m[packed_index(alpha, Half::A, r, c)] = msg.sa.get(r, c);
            m[packed_index(alpha, Half::B, r, c)] = msg.sb.get(r, c);
        }
    }
    Ok(m)
}
