//! Nonzero accounting for generator matrices and the row-sparsity bounds
//! the constructions guarantee.

use std::fmt::Write as _;

use crate::linalg::Matrix;
use crate::pm::code::{GeneratorMatrix, RegeneratingCode};
use crate::pm::params::CodeParams;
use crate::systematic::{Construction, SystematicCode};

#[derive(Clone, Debug, PartialEq)]
pub struct SparsityReport {
    pub rows: usize,
    pub cols: usize,
    pub alpha: usize,
    /// First parity node; rows from `parity_start * alpha` on are parity rows.
    pub parity_start: usize,
    pub row_nonzeros: Vec<usize>,
    /// Largest row count within each node's α rows.
    pub node_max: Vec<usize>,
    pub zero_fraction: f64,
    pub parity_zero_fraction: f64,
    pub pattern: Vec<Vec<bool>>,
}

fn zero_fraction(nonzeros: usize, cells: usize) -> f64 {
    if cells == 0 {
        0.0
    } else {
        1.0 - nonzeros as f64 / cells as f64
    }
}

pub fn sparsity_report(g: &GeneratorMatrix, params: &CodeParams) -> SparsityReport {
    let m = g.matrix();
    let alpha = g.alpha();
    let pattern: Vec<Vec<bool>> = (0..m.rows()).map(|r| m.row(r).iter().map(|s| !s.is_zero()).collect()).collect();
    let row_nonzeros: Vec<usize> = pattern.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    let node_max = row_nonzeros.chunks(alpha).map(|c| c.iter().copied().max().unwrap_or(0)).collect();
    let total: usize = row_nonzeros.iter().sum();
    let parity_start = params.k.min(g.nodes());
    let parity: usize = row_nonzeros[parity_start * alpha..].iter().sum();
    let parity_cells = (m.rows() - parity_start * alpha) * m.cols();
    SparsityReport {
        rows: m.rows(),
        cols: m.cols(),
        alpha,
        parity_start,
        zero_fraction: zero_fraction(total, m.rows() * m.cols()),
        parity_zero_fraction: zero_fraction(parity, parity_cells),
        row_nonzeros,
        node_max,
        pattern,
    }
}

impl SparsityReport {
    pub fn total_nonzeros(&self) -> usize {
        self.row_nonzeros.iter().sum()
    }

    pub fn parity_nonzeros(&self) -> usize {
        self.row_nonzeros[self.parity_start * self.alpha..].iter().sum()
    }

    pub fn max_row(&self) -> usize {
        self.row_nonzeros.iter().copied().max().unwrap_or(0)
    }

    /// `key: value` lines.
    pub fn to_records(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "rows: {}", self.rows);
        let _ = writeln!(s, "cols: {}", self.cols);
        let _ = writeln!(s, "alpha: {}", self.alpha);
        let _ = writeln!(s, "nonzeros: {}", self.total_nonzeros());
        let _ = writeln!(s, "parity_nonzeros: {}", self.parity_nonzeros());
        let _ = writeln!(s, "max_row_nonzeros: {}", self.max_row());
        let _ = writeln!(s, "zero_fraction: {:.6}", self.zero_fraction);
        let _ = writeln!(s, "parity_zero_fraction: {:.6}", self.parity_zero_fraction);
        let maxes: Vec<String> = self.node_max.iter().map(|m| m.to_string()).collect();
        let _ = writeln!(s, "node_max_row_nonzeros: {}", maxes.join(","));
        s
    }

    /// One tab-separated line per generator row: row, node, symbol, nonzeros, parity flag.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("row\tnode\tsymbol\tnonzeros\tparity\n");
        for (r, nnz) in self.row_nonzeros.iter().enumerate() {
            let node = r / self.alpha;
            let _ = writeln!(s, "{r}\t{node}\t{}\t{nnz}\t{}", r % self.alpha, u8::from(node >= self.parity_start));
        }
        s
    }

    /// `x` for nonzero entries and `.` for zeros, one line per row.
    pub fn pattern_text(&self) -> String {
        self.pattern
            .iter()
            .map(|r| r.iter().map(|&b| if b { 'x' } else { '.' }).collect::<String>() + "\n")
            .collect()
    }
}

/// Per-symbol nonzero bound for every node block, when the construction
/// guarantees one: `d` for every row of a sparse base-regime code; for a
/// code shortened by `i`, `k` for the first `i` rows and `d` for the rest.
pub fn row_bounds(code: &SystematicCode) -> Option<Vec<usize>> {
    let p = code.params();
    let sparse = matches!(code.construction(), Construction::Sparse | Construction::Rbt | Construction::Inclusion);
    if !sparse {
        return None;
    }
    let i = code.shortening();
    Some((0..p.alpha).map(|r| if r < i { p.k } else { p.d }).collect())
}

/// Rows `(row, nonzeros, bound)` exceeding the per-symbol bound.
pub fn row_bound_violations(g: &Matrix, alpha: usize, bounds: &[usize]) -> Vec<(usize, usize, usize)> {
    (0..g.rows())
        .filter_map(|r| {
            let nnz = g.row(r).iter().filter(|s| !s.is_zero()).count();
            let bound = bounds[r % alpha];
            (nnz > bound).then_some((r, nnz, bound))
        })
        .collect()
}

/// Pairs `(helper, failed)` where repairing one of the first α nodes does
/// not amount to the helper forwarding its stored symbol number `failed`.
pub fn rbt_sys_violations<C: RegeneratingCode>(code: &C, stored: &Matrix) -> crate::Result<Vec<(usize, usize)>> {
    let p = code.params();
    let mut out = Vec::new();
    for j in 0..p.alpha.min(p.n) {
        for i in (0..p.n).filter(|&i| i != j) {
            if code.helper_symbol(j, stored.row(i))? != stored.get(i, j) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}
