//! The `n × d` encoding matrix `Ψ = [Φ | ΛΦ]` and its three structural
//! properties:
//!
//! 1. every α rows of `Φ` are linearly independent,
//! 2. every d rows of `Ψ` are linearly independent,
//! 3. the diagonal entries of `Λ` are pairwise distinct.
//!
//! Properties 1 and 2 are checked over all row subsets when that is cheap
//! (at most [`ValidationOptions::exhaustive_limit`] subsets each), otherwise on
//! a fixed-seed random sample.

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Property, Result};
use crate::field::{next_prime, Field, Scalar};
use crate::linalg::{vandermonde, Matrix};
use crate::pm::params::CodeParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationOptions {
    pub exhaustive_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { exhaustive_limit: 100_000, samples: 1000, seed: 0x5EED }
    }
}

/// How thoroughly Properties 1 and 2 were checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub exhaustive: bool,
    pub phi_subsets: usize,
    pub psi_subsets: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingMatrix {
    psi: Matrix,
    phi: Matrix,
    lambda: Vec<Scalar>,
    validation: Option<ValidationReport>,
}

impl EncodingMatrix {
    /// Assembles `Ψ = [Φ | ΛΦ]`. Nothing is validated yet.
    pub fn from_phi_lambda(phi: Matrix, lambda: Vec<Scalar>) -> Result<Self> {
        if lambda.len() != phi.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{} lambda entries for {} rows of phi",
                lambda.len(),
                phi.rows()
            )));
        }
        let field = phi.field().clone();
        if let Some(bad) = lambda.iter().find(|s| s.value() >= field.order()) {
            return Err(Error::InvalidScalar { value: bad.value(), order: field.order() });
        }
        let lambda_phi = Matrix::diagonal(&lambda, &field).matmul(&phi)?;
        let psi = phi.hstack(&lambda_phi)?;
        Ok(EncodingMatrix { psi, phi, lambda, validation: None })
    }

    pub fn psi(&self) -> &Matrix {
        &self.psi
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn field(&self) -> &Field {
        self.phi.field()
    }

    pub fn n(&self) -> usize {
        self.phi.rows()
    }

    pub fn alpha(&self) -> usize {
        self.phi.cols()
    }

    pub fn d(&self) -> usize {
        self.psi.cols()
    }

    /// Row `i` of `Φ`: node `i`'s repair vector in the untransformed code.
    pub fn phi_row(&self, i: usize) -> &[Scalar] {
        self.phi.row(i)
    }

    /// `Φ_α`, the top α×α block of `Φ`.
    pub fn phi_alpha(&self) -> Matrix {
        let ids: Vec<usize> = (0..self.alpha()).collect();
        self.phi.submatrix(&ids, &ids).expect("n > alpha")
    }

    pub fn validation(&self) -> Option<ValidationReport> {
        self.validation
    }

    /// Checks Properties 1–3 and records how thoroughly they were checked.
    pub fn validate(mut self, opts: &ValidationOptions) -> Result<Self> {
        self.validation = Some(check_properties(&self, opts)?);
        Ok(self)
    }
}

fn binomial(n: usize, r: usize) -> u128 {
    let r = r.min(n - r.min(n));
    (0..r).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Row subsets of size `r` out of `n`: all of them, or a fixed-seed sample.
fn row_subsets(n: usize, r: usize, opts: &ValidationOptions, salt: u64) -> (bool, Vec<Vec<usize>>) {
    if binomial(n, r) <= opts.exhaustive_limit as u128 {
        (true, (0..n).combinations(r).collect())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ salt);
        let subsets = (0..opts.samples)
            .map(|_| {
                let mut s = rand::seq::index::sample(&mut rng, n, r).into_vec();
                s.sort_unstable();
                s
            })
            .collect();
        (false, subsets)
    }
}

fn check_properties(enc: &EncodingMatrix, opts: &ValidationOptions) -> Result<ValidationReport> {
    let (n, alpha, d) = (enc.n(), enc.alpha(), enc.d());
    if d != 2 * alpha || n <= d {
        return Err(Error::DimensionMismatch(format!("psi is {n}x{d} with alpha = {alpha}")));
    }
    for (i, l) in enc.lambda.iter().enumerate() {
        if let Some(j) = enc.lambda[..i].iter().position(|x| x == l) {
            return Err(Error::PropertyViolation { property: Property::DistinctLambda, witness: vec![j, i] });
        }
    }
    let (phi_exhaustive, phi_sets) = row_subsets(n, alpha, opts, 1);
    for rows in &phi_sets {
        if enc.phi.select_rows(rows)?.rank() < alpha {
            return Err(Error::PropertyViolation { property: Property::PhiRows, witness: rows.clone() });
        }
    }
    let (psi_exhaustive, psi_sets) = row_subsets(n, d, opts, 2);
    for rows in &psi_sets {
        if enc.psi.select_rows(rows)?.rank() < d {
            return Err(Error::PropertyViolation { property: Property::PsiRows, witness: rows.clone() });
        }
    }
    Ok(ValidationReport {
        exhaustive: phi_exhaustive && psi_exhaustive,
        phi_subsets: phi_sets.len(),
        psi_subsets: psi_sets.len(),
    })
}

/// Vandermonde encoding matrix `Ψ[i][j] = x_i^(j+1)`, so `Φ` is its first α
/// columns and `λ_i = x_i^α`.
///
/// With explicit `xs` only that point set is tried. Without, the points
/// `1, 2, …, n` are tried first, then the first `n` nonzero elements (in
/// increasing order) whose α-th powers are pairwise distinct.
pub fn build_vandermonde_encoding(
    params: &CodeParams,
    xs: Option<&[u32]>,
    opts: &ValidationOptions,
) -> Result<EncodingMatrix> {
    params.require_base_regime()?;
    let field = &params.field;
    let candidates: Vec<Vec<u32>> = match xs {
        Some(xs) => vec![xs.to_vec()],
        None => {
            let mut c = vec![(1..=params.n as u32).collect::<Vec<_>>()];
            if let Some(greedy) = distinct_power_points(params.n, params.alpha, field) {
                if greedy != c[0] {
                    c.push(greedy);
                }
            }
            c
        }
    };
    let mut last_err = None;
    for xs in candidates {
        match vandermonde_candidate(params, &xs, opts) {
            Ok(enc) => return Ok(enc),
            Err(e @ Error::PropertyViolation { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one candidate"))
}

fn vandermonde_candidate(params: &CodeParams, xs: &[u32], opts: &ValidationOptions) -> Result<EncodingMatrix> {
    let field = &params.field;
    if xs.len() != params.n {
        return Err(Error::LengthMismatch { expected: params.n, actual: xs.len() });
    }
    let points = xs.iter().map(|&x| field.elem(x)).collect::<Result<Vec<_>>>()?;
    let lambda: Vec<Scalar> = points.iter().map(|&x| field.pow(x, params.alpha as u64)).collect();
    // Colliding points collide in lambda too; report that before the
    // Vandermonde builder rejects the duplicate.
    for (i, l) in lambda.iter().enumerate() {
        if let Some(j) = lambda[..i].iter().position(|x| x == l) {
            return Err(Error::PropertyViolation { property: Property::DistinctLambda, witness: vec![j, i] });
        }
    }
    let psi = vandermonde(&points, params.d, field)?;
    let cols: Vec<usize> = (0..params.alpha).collect();
    let phi = psi.select_cols(&cols)?;
    let enc = EncodingMatrix::from_phi_lambda(phi, lambda)?;
    debug_assert_eq!(enc.psi, psi);
    enc.validate(opts)
}

fn distinct_power_points(n: usize, alpha: usize, field: &Field) -> Option<Vec<u32>> {
    let mut seen = std::collections::HashSet::new();
    let points: Vec<u32> = field
        .elements()
        .skip(1)
        .filter(|&x| seen.insert(field.pow(x, alpha as u64)))
        .take(n)
        .map(|x| x.value())
        .collect();
    (points.len() == n).then_some(points)
}

/// Smallest prime `p > n` for which the Vandermonde matrix on `1, …, n`
/// satisfies Properties 1–3 for the given base-regime parameters.
pub fn select_prime_field(n: usize, k: usize, d: usize, opts: &ValidationOptions) -> Result<(Field, EncodingMatrix)> {
    let xs: Vec<u32> = (1..=n as u32).collect();
    let mut p = next_prime(n as u32 + 1);
    loop {
        let field = Field::prime(p)?;
        let params = CodeParams::new(n, k, d, &field)?;
        params.require_base_regime()?;
        match build_vandermonde_encoding(&params, Some(&xs), opts) {
            Ok(enc) => return Ok((field, enc)),
            Err(Error::PropertyViolation { .. }) => p = next_prime(p + 1),
            Err(e) => return Err(e),
        }
    }
}
