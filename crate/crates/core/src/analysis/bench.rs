//! Byte-level GF(2^8) encoding throughput of sparse versus dense generators.
//!
//! A workload is `B` message columns of `L` bytes each (symbol `t` of every
//! stripe lives in column `t`). Only parity rows are computed, each as an
//! XOR of table lookups over the nonzero coefficients of its generator row,
//! so zero coefficients cost nothing. Work proceeds in cache-sized tiles.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::pm::code::RegeneratingCode;
use crate::systematic::SystematicCode;

const TILE: usize = 4096;

/// Parity rows of a generator as lists of `(column, multiplication table)`.
pub struct EncodeKernel {
    rows: Vec<Vec<(usize, [u8; 256])>>,
    cols: usize,
}

impl EncodeKernel {
    /// Zero coefficients are skipped.
    pub fn sparse(g: &Matrix) -> Result<Self> {
        Self::build(g, true)
    }

    /// Every coefficient is multiplied, zeros included.
    pub fn dense(g: &Matrix) -> Result<Self> {
        Self::build(g, false)
    }

    fn build(g: &Matrix, skip_zeros: bool) -> Result<Self> {
        let f = g.field();
        if !f.is_binary() {
            return Err(Error::InvalidField(format!("byte encoding needs GF(2^8), got {f}")));
        }
        let rows = (0..g.rows())
            .map(|r| {
                g.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !(skip_zeros && c.is_zero()))
                    .map(|(t, c)| (t, f.mul_table_row(c.value() as u8)))
                    .collect()
            })
            .collect();
        Ok(EncodeKernel { rows, cols: g.cols() })
    }

    /// Multiply-accumulate operations per message byte column.
    pub fn terms(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Encodes `columns` (one slice per message symbol, equal lengths) into
    /// one output buffer per generator row.
    pub fn encode(&self, columns: &[&[u8]], out: &mut [Vec<u8>]) {
        assert_eq!(columns.len(), self.cols, "one column per message symbol");
        assert_eq!(out.len(), self.rows.len(), "one output per generator row");
        let len = columns.first().map_or(0, |c| c.len());
        for buf in out.iter_mut() {
            buf.clear();
            buf.resize(len, 0);
        }
        let mut start = 0;
        while start < len {
            let end = (start + TILE).min(len);
            for (row, buf) in self.rows.iter().zip(out.iter_mut()) {
                let dst = &mut buf[start..end];
                for (t, table) in row {
                    let src = &columns[*t][start..end];
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d ^= table[s as usize];
                    }
                }
            }
            start = end;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchResult {
    pub label: String,
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Message bytes encoded per repetition.
    pub bytes: usize,
    /// Parity-row nonzero coefficients.
    pub terms: usize,
    pub median: Duration,
    /// Bytes per second; absent for an empty workload.
    pub throughput: Option<f64>,
    /// Throughput relative to the baseline of the same run.
    pub speedup: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchComparison {
    pub sparse: BenchResult,
    pub dense: BenchResult,
    /// Ratio of parity nonzeros, dense over sparse.
    pub predicted_speedup: f64,
    /// Zero-skipping and full multiplication produced identical parity.
    pub paths_identical: bool,
}

impl BenchComparison {
    pub fn measured_speedup(&self) -> Option<f64> {
        self.sparse.speedup
    }

    /// Measured over predicted speedup.
    pub fn agreement(&self) -> Option<f64> {
        self.measured_speedup().map(|s| s / self.predicted_speedup)
    }

    pub fn to_records(&self) -> String {
        let mut s = String::new();
        for r in [&self.sparse, &self.dense] {
            let _ = writeln!(s, "{}.code: [{}, {}, {}] over {}", r.label, r.n, r.k, r.d, r.field);
            let _ = writeln!(s, "{}.bytes: {}", r.label, r.bytes);
            let _ = writeln!(s, "{}.parity_terms: {}", r.label, r.terms);
            let _ = writeln!(s, "{}.median_seconds: {:.6}", r.label, r.median.as_secs_f64());
            let tp = r.throughput.map_or("none".to_string(), |t| format!("{:.1}", t / (1 << 20) as f64));
            let _ = writeln!(s, "{}.throughput_mib_s: {tp}", r.label);
        }
        let _ = writeln!(s, "predicted_speedup: {:.4}", self.predicted_speedup);
        let measured = self.measured_speedup().map_or("none".to_string(), |x| format!("{x:.4}"));
        let _ = writeln!(s, "measured_speedup: {measured}");
        let _ = writeln!(s, "paths_identical: {}", self.paths_identical);
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("label\tfield\tn\tk\td\tbytes\tterms\tseconds\tthroughput\tspeedup\n");
        for r in [&self.sparse, &self.dense] {
            let opt = |x: Option<f64>| x.map_or("".to_string(), |v| format!("{v:.4}"));
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.6}\t{}\t{}",
                r.label,
                r.field,
                r.n,
                r.k,
                r.d,
                r.bytes,
                r.terms,
                r.median.as_secs_f64(),
                opt(r.throughput),
                opt(r.speedup)
            );
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchOptions {
    /// Target message bytes; rounded down to a multiple of `B`.
    pub workload_bytes: usize,
    /// Timed repetitions after one discarded warmup; at least 1.
    pub repetitions: usize,
    pub seed: u64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { workload_bytes: 64 << 20, repetitions: 5, seed: 0xBE4C }
    }
}

fn median(mut times: Vec<Duration>) -> Duration {
    times.sort_unstable();
    times[times.len() / 2]
}

fn time_kernel(kernel: &EncodeKernel, columns: &[&[u8]], out: &mut [Vec<u8>], reps: usize) -> Duration {
    kernel.encode(columns, out);
    let times = (0..reps.max(1))
        .map(|_| {
            let start = Instant::now();
            kernel.encode(columns, out);
            std::hint::black_box(&out);
            start.elapsed()
        })
        .collect();
    median(times)
}

fn describe(label: &str, field: &Field, code: &SystematicCode, bytes: usize, terms: usize, time: Duration) -> BenchResult {
    let p = code.params();
    let secs = time.as_secs_f64();
    BenchResult {
        label: label.to_string(),
        field: field.to_string(),
        n: p.n,
        k: p.k,
        d: p.d,
        bytes,
        terms,
        median: time,
        throughput: (bytes > 0 && secs > 0.0).then(|| bytes as f64 / secs),
        speedup: None,
    }
}

/// Times parity encoding of one random workload with both codes'
/// generators and checks that zero skipping leaves the output unchanged.
pub fn benchmark_encode(sparse: &SystematicCode, dense: &SystematicCode, opts: &BenchOptions) -> Result<BenchComparison> {
    let (ps, pd) = (sparse.params(), dense.params());
    if (ps.n, ps.k, ps.d) != (pd.n, pd.k, pd.d) || ps.field != pd.field {
        return Err(Error::DimensionMismatch("benchmarked codes must share parameters and field".into()));
    }
    let field = ps.field.clone();
    let g_sparse = sparse.parity_generator()?;
    let g_dense = dense.parity_generator()?;
    let k_sparse = EncodeKernel::sparse(&g_sparse)?;
    let k_dense = EncodeKernel::sparse(&g_dense)?;

    let col_len = opts.workload_bytes / ps.b;
    let bytes = col_len * ps.b;
    let mut data = vec![0u8; bytes];
    ChaCha8Rng::seed_from_u64(opts.seed).fill_bytes(&mut data);
    let columns: Vec<&[u8]> = if col_len == 0 { vec![&[][..]; ps.b] } else { data.chunks(col_len).collect() };

    let mut out_sparse = vec![Vec::new(); g_sparse.rows()];
    let mut out_dense = vec![Vec::new(); g_dense.rows()];
    let t_sparse = time_kernel(&k_sparse, &columns, &mut out_sparse, opts.repetitions);
    let t_dense = time_kernel(&k_dense, &columns, &mut out_dense, opts.repetitions);

    // the same sparse generator through the full-multiplication path
    let mut out_full = vec![Vec::new(); g_sparse.rows()];
    EncodeKernel::dense(&g_sparse)?.encode(&columns, &mut out_full);
    let paths_identical = out_full == out_sparse;

    let mut s = describe(sparse.construction().label(), &field, sparse, bytes, k_sparse.terms(), t_sparse);
    let mut d = describe(dense.construction().label(), &field, dense, bytes, k_dense.terms(), t_dense);
    if s.label == d.label {
        s.label.push_str("_a");
        d.label.push_str("_b");
    }
    if let (Some(a), Some(b)) = (s.throughput, d.throughput) {
        s.speedup = Some(a / b);
        d.speedup = Some(1.0);
    }
    let predicted_speedup = k_dense.terms() as f64 / k_sparse.terms().max(1) as f64;
    Ok(BenchComparison { sparse: s, dense: d, predicted_speedup, paths_identical })
}
