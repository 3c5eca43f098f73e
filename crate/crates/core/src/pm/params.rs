use crate::error::{Error, Result};
use crate::field::Field;

/// Parameters of an `[n, k, d](α, β = 1)` minimum-storage regenerating code.
///
/// `α = d - k + 1` symbols per node and `B = kα` message symbols. The
/// product-matrix construction itself needs `d = 2k - 2`; larger `d` is
/// reached by shortening (see [`crate::sparse::shorten`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub alpha: usize,
    pub beta: usize,
    pub b: usize,
    pub field: Field,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, d: usize, field: &Field) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidRegime(format!("k = {k}, need k >= 2")));
        }
        if d < 2 * k - 2 {
            return Err(Error::InvalidRegime(format!("d = {d} < 2k - 2 = {}", 2 * k - 2)));
        }
        if d >= n {
            return Err(Error::InvalidRegime(format!("d = {d} must be at most n - 1 = {}", n.saturating_sub(1))));
        }
        let alpha = d - k + 1;
        Ok(CodeParams { n, k, d, alpha, beta: 1, b: k * alpha, field: field.clone() })
    }

    /// `d - (2k - 2)`: how many dummy nodes a shortened construction needs.
    pub fn shortening(&self) -> usize {
        self.d - (2 * self.k - 2)
    }

    pub fn is_base_regime(&self) -> bool {
        self.shortening() == 0
    }

    /// Parameters of the `[n+i, k+i, d+i]` parent that shortens to `self`.
    pub fn parent(&self) -> CodeParams {
        let i = self.shortening();
        CodeParams::new(self.n + i, self.k + i, self.d + i, &self.field).expect("parent of valid params is valid")
    }

    /// Total stored symbols `nα`.
    pub fn stored_symbols(&self) -> usize {
        self.n * self.alpha
    }

    pub(crate) fn require_base_regime(&self) -> Result<()> {
        if self.is_base_regime() {
            Ok(())
        } else {
            Err(Error::DesignMismatch(format!(
                "product-matrix encoding needs d = 2k - 2, got [{}, {}, {}]",
                self.n, self.k, self.d
            )))
        }
    }
}

impl std::fmt::Display for CodeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[n={}, k={}, d={}](alpha={}, B={}) over {}", self.n, self.k, self.d, self.alpha, self.b, self.field)
    }
}
