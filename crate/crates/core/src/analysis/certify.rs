//! Certification of MDS, exact repair, generator consistency and the
//! systematic and sparsity structure of a code.
//!
//! Subset checks run exhaustively when the number of cases is at most
//! [`CertifyOptions::exhaustive_limit`] and on a seeded sample otherwise.
//! Cases are checked in parallel; results are merged in case order, so the
//! record is deterministic for a given seed.

use std::fmt::Write as _;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::sparsity::{row_bound_violations, row_bounds};
use crate::field::Scalar;
use crate::pm::code::RegeneratingCode;
use crate::systematic::SystematicCode;

/// Witnesses kept per check.
const MAX_WITNESSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub exhaustive_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { exhaustive_limit: 10_000, samples: 500, seed: 0xC0DE }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub exhaustive: bool,
    pub failures: usize,
    pub witnesses: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn from_outcomes(name: &'static str, exhaustive: bool, outcomes: Vec<Option<String>>) -> Self {
        let cases = outcomes.len();
        let failed: Vec<String> = outcomes.into_iter().flatten().collect();
        CheckResult {
            name,
            cases,
            exhaustive,
            failures: failed.len(),
            witnesses: failed.into_iter().take(MAX_WITNESSES).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certification {
    pub code: String,
    pub checks: Vec<CheckResult>,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `key: value` lines, one group per check.
    pub fn to_records(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "code: {}", self.code);
        let _ = writeln!(s, "passed: {}", self.passed());
        for c in &self.checks {
            let _ = writeln!(s, "{}.cases: {}", c.name, c.cases);
            let _ = writeln!(s, "{}.exhaustive: {}", c.name, c.exhaustive);
            let _ = writeln!(s, "{}.failures: {}", c.name, c.failures);
            for w in &c.witnesses {
                let _ = writeln!(s, "{}.witness: {w}", c.name);
            }
        }
        s
    }

    /// One tab-separated line per check.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("check\tcases\texhaustive\tfailures\n");
        for c in &self.checks {
            let _ = writeln!(s, "{}\t{}\t{}\t{}", c.name, c.cases, c.exhaustive, c.failures);
        }
        s
    }
}

fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &[usize], r: usize) -> Vec<usize> {
    let mut s: Vec<usize> = rand::seq::index::sample(rng, pool.len(), r).into_iter().map(|i| pool[i]).collect();
    s.sort_unstable();
    s
}

fn random_message(rng: &mut ChaCha8Rng, code: &impl RegeneratingCode) -> Vec<Scalar> {
    let p = code.params();
    (0..p.b).map(|_| p.field.reduce(rng.gen::<u64>())).collect()
}

/// Every `k`-subset of nodes has a full-rank stacked generator block.
pub fn check_mds<C: RegeneratingCode + Sync>(code: &C, opts: &CertifyOptions) -> CheckResult {
    let p = code.params();
    let exhaustive = binomial(p.n, p.k) <= opts.exhaustive_limit;
    let subsets: Vec<Vec<usize>> = if exhaustive {
        (0..p.n).combinations(p.k).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x4D44);
        let all: Vec<usize> = (0..p.n).collect();
        (0..opts.samples).map(|_| random_subset(&mut rng, &all, p.k)).collect()
    };
    let outcomes = subsets
        .par_iter()
        .map(|ids| match code.generator().stack_nodes(ids) {
            Ok(block) if block.rank() == p.b => None,
            Ok(block) => Some(format!("nodes {ids:?} have rank {}", block.rank())),
            Err(e) => Some(format!("nodes {ids:?}: {e}")),
        })
        .collect();
    CheckResult::from_outcomes("mds", exhaustive, outcomes)
}

/// Every (failed node, `d` helpers) case rebuilds the lost row exactly from
/// exactly `d` transferred symbols.
pub fn check_repair<C: RegeneratingCode + Sync>(code: &C, opts: &CertifyOptions) -> CheckResult {
    let p = code.params();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5245);
    let m = random_message(&mut rng, code);
    let stored = match code.encode_message(&m) {
        Ok(s) => s,
        Err(e) => return CheckResult::from_outcomes("repair", true, vec![Some(format!("encoding failed: {e}"))]),
    };
    let exhaustive = (p.n as u64).saturating_mul(binomial(p.n - 1, p.d)) <= opts.exhaustive_limit;
    let cases: Vec<(usize, Vec<usize>)> = if exhaustive {
        (0..p.n)
            .flat_map(|f| (0..p.n).filter(move |&h| h != f).combinations(p.d).map(move |h| (f, h)))
            .collect()
    } else {
        (0..opts.samples)
            .map(|_| {
                let f = rng.gen_range(0..p.n);
                let pool: Vec<usize> = (0..p.n).filter(|&h| h != f).collect();
                (f, random_subset(&mut rng, &pool, p.d))
            })
            .collect()
    };
    let outcomes = cases
        .par_iter()
        .map(|(f, helpers)| {
            let bundle = match code.gather_repair(*f, helpers, &stored) {
                Ok(b) => b,
                Err(e) => return Some(format!("node {f} from {helpers:?}: {e}")),
            };
            if bundle.symbols.len() != p.d {
                return Some(format!("node {f}: {} symbols transferred", bundle.symbols.len()));
            }
            match code.repair(*f, helpers, &bundle.symbols) {
                Ok(row) if row == stored.row(*f) => None,
                Ok(_) => Some(format!("node {f} from {helpers:?}: wrong content")),
                Err(e) => Some(format!("node {f} from {helpers:?}: {e}")),
            }
        })
        .collect();
    CheckResult::from_outcomes("repair", exhaustive, outcomes)
}

/// The generator agrees with the code's own encoder on random messages.
pub fn check_consistency<C: RegeneratingCode>(code: &C, opts: &CertifyOptions) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x434F);
    let outcomes = (0..opts.samples.clamp(1, 50))
        .map(|i| {
            let m = random_message(&mut rng, code);
            match (code.generator().encode(&m), code.encode_message(&m)) {
                (Ok(a), Ok(b)) if a == b => None,
                (Ok(a), Ok(b)) => {
                    let bad = (0..a.rows()).find(|&r| a.row(r) != b.row(r)).unwrap_or(0);
                    Some(format!("message {i}: node {bad} differs"))
                }
                (Err(e), _) | (_, Err(e)) => Some(format!("message {i}: {e}")),
            }
        })
        .collect();
    CheckResult::from_outcomes("consistency", false, outcomes)
}

/// MDS, repair and consistency.
pub fn certify<C: RegeneratingCode + Sync>(code: &C, opts: &CertifyOptions) -> Certification {
    Certification {
        code: code.params().to_string(),
        checks: vec![check_mds(code, opts), check_repair(code, opts), check_consistency(code, opts)],
    }
}

/// The generator reproduces the parent code on zero-padded, remapped
/// messages; this ties `G_sys` to the product-matrix encoder.
fn check_remap(code: &SystematicCode, opts: &CertifyOptions) -> CheckResult {
    let p = code.params();
    let s = code.shortening();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x524D);
    let outcomes = (0..opts.samples.clamp(1, 50))
        .map(|i| {
            let m = random_message(&mut rng, code);
            let mut padded = vec![Scalar::ZERO; s * p.alpha];
            padded.extend_from_slice(&m);
            let result = code.remap().mul_vec(&padded).and_then(|pm| code.base().encode_message(&pm)).and_then(|parent| {
                let ours = code.encode_message(&m)?;
                Ok((0..p.n).all(|r| ours.row(r) == parent.row(r + s)) && (0..s).all(|r| parent.row(r).iter().all(|x| x.is_zero())))
            });
            match result {
                Ok(true) => None,
                Ok(false) => Some(format!("message {i}: systematic generator disagrees with the parent encoder")),
                Err(e) => Some(format!("message {i}: {e}")),
            }
        })
        .collect();
    CheckResult::from_outcomes("remap", false, outcomes)
}

fn check_systematic(code: &SystematicCode) -> CheckResult {
    let p = code.params();
    let ids: Vec<usize> = (0..p.k).collect();
    let top = code.generator().stack_nodes(&ids);
    let outcome = match top {
        Ok(t) if t.is_identity() => None,
        Ok(t) => {
            let is_perm = (0..t.rows()).all(|r| {
                let row = t.row(r);
                row.iter().filter(|x| !x.is_zero()).count() == 1 && row.iter().all(|x| x.is_zero() || *x == Scalar::ONE)
            });
            if is_perm && t.rank() == t.rows() {
                None
            } else {
                Some("top block is neither the identity nor a permutation".to_string())
            }
        }
        Err(e) => Some(e.to_string()),
    };
    CheckResult::from_outcomes("systematic", true, vec![outcome])
}

fn check_row_bounds(code: &SystematicCode) -> Option<CheckResult> {
    let bounds = row_bounds(code)?;
    let g = code.generator().matrix();
    let bad = row_bound_violations(g, code.params().alpha, &bounds);
    let outcomes = (0..g.rows())
        .map(|r| bad.iter().find(|v| v.0 == r).map(|&(_, nnz, bound)| format!("row {r}: {nnz} nonzeros, bound {bound}")))
        .collect();
    Some(CheckResult::from_outcomes("row_bounds", true, outcomes))
}

/// [`certify`] plus remap consistency, the systematic top block and, when
/// the construction guarantees them, row-sparsity bounds.
pub fn certify_systematic(code: &SystematicCode, opts: &CertifyOptions) -> Certification {
    let mut cert = certify(code, opts);
    cert.code = format!("{} ({})", code.params(), code.construction());
    cert.checks.push(check_remap(code, opts));
    cert.checks.push(check_systematic(code));
    cert.checks.extend(check_row_bounds(code));
    cert
}
