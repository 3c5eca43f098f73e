//! Subcommand implementations. Each takes parsed arguments and reports
//! through the returned value or files it writes.

use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use sparsepm::analysis::{benchmark_encode, certify_systematic, sparsity_report, BenchOptions, CertifyOptions};
use sparsepm::pm::{Decoder, RegeneratingCode, ValidationOptions};
use sparsepm::sparse::auto_prime_field;
use sparsepm::{Construction, Field, Scalar, SystematicCode};

use crate::descriptor::{generate, sha256, Descriptor, DESCRIPTOR_FILE, G_FILE, G_SYS_FILE, PSI_FILE};
use crate::share::{node_id, share_path, Share};

#[derive(Debug, Parser)]
#[command(name = "sparsepm", version, about = "Sparse systematic product-matrix MSR codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write its matrices and descriptor.
    Gen(GenArgs),
    /// Encode a file into one share per node.
    Encode(EncodeArgs),
    /// Rebuild one node's share from d helper shares.
    Repair(RepairArgs),
    /// Recover the original file from k shares.
    Decode(DecodeArgs),
    /// Check MDS, exact repair and the systematic structure.
    Certify(CertifyArgs),
    /// Report generator sparsity.
    Analyze(AnalyzeArgs),
    /// Time parity encoding against the non-sparse construction.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub d: usize,
    /// Prime field order; the smallest working prime is chosen when omitted.
    #[arg(long, conflicts_with = "gf256")]
    pub q: Option<u32>,
    /// Work over GF(2^8).
    #[arg(long)]
    pub gf256: bool,
    /// vanilla, sparse, rbt or inclusion.
    #[arg(long, default_value = "sparse")]
    pub construction: Construction,
    /// Seed for sampled validation.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated evaluation points for the (parent) Vandermonde matrix.
    #[arg(long, value_delimiter = ',')]
    pub xs: Option<Vec<u32>>,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    /// Descriptor written by `gen`.
    #[arg(long)]
    pub code: PathBuf,
    /// Raw bytes over GF(2^8); whitespace-separated decimal symbols over a prime field.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct RepairArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// 0-based id of the node to rebuild.
    #[arg(long)]
    pub failed: usize,
    /// Exactly d files named `node_<id>.share`.
    #[arg(long = "helper", required = true, num_args = 1..)]
    pub helpers: Vec<PathBuf>,
    /// Output file; defaults to `node_<failed>.share` next to the first helper.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// Share files; the first k distinct nodes are used.
    #[arg(long = "share", required = true, num_args = 1..)]
    pub shares: Vec<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// Enumerate subsets when there are at most this many, otherwise sample.
    #[arg(long, default_value_t = CertifyOptions::default().exhaustive_limit)]
    pub exhaustive_limit: u64,
    #[arg(long, default_value_t = CertifyOptions::default().samples)]
    pub samples: usize,
    #[arg(long, default_value_t = CertifyOptions::default().seed)]
    pub seed: u64,
    /// Writes certify.txt and certify.tsv here when given.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// Writes sparsity.txt, sparsity.tsv and pattern.txt here when given.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Code to time; must be over GF(2^8).
    #[arg(long)]
    pub code: PathBuf,
    /// Baseline descriptor; the vanilla code with the same points by default.
    #[arg(long)]
    pub baseline: Option<PathBuf>,
    #[arg(long, default_value_t = BenchOptions::default().workload_bytes)]
    pub bytes: usize,
    #[arg(long, default_value_t = BenchOptions::default().repetitions)]
    pub repetitions: usize,
    #[arg(long, default_value_t = BenchOptions::default().seed)]
    pub seed: u64,
    /// Writes bench.txt and bench.tsv here when given.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

/// A descriptor with its rebuilt code and identifying hash.
pub struct LoadedCode {
    pub descriptor: Descriptor,
    pub code: SystematicCode,
    pub hash: [u8; 32],
}

impl LoadedCode {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let descriptor = Descriptor::from_toml(&text).with_context(|| format!("parsing {}", path.display()))?;
        let code = descriptor.rebuild()?;
        Ok(LoadedCode { descriptor, code, hash: sha256(text.as_bytes()) })
    }

    fn field(&self) -> &Field {
        &self.code.params().field
    }

    fn alpha(&self) -> usize {
        self.code.params().alpha
    }

    fn read_share(&self, path: &Path) -> Result<Share> {
        let share = Share::read(path, self.field(), self.alpha())?;
        ensure!(share.descriptor_hash == self.hash, "{} was not produced with this code descriptor", path.display());
        Ok(share)
    }
}

pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Gen(a) => gen(&a),
        Command::Encode(a) => encode(&a),
        Command::Repair(a) => repair(&a),
        Command::Decode(a) => decode(&a),
        Command::Certify(a) => certify(&a),
        Command::Analyze(a) => analyze(&a),
        Command::Bench(a) => bench(&a),
    }
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn gen(a: &GenArgs) -> Result<String> {
    let field = match (a.gf256, a.q) {
        (true, _) => Field::gf256(),
        (false, Some(q)) => Field::prime(q)?,
        (false, None) => {
            let opts = ValidationOptions { seed: a.seed, ..ValidationOptions::default() };
            auto_prime_field(a.n, a.k, a.d, &opts)?
        }
    };
    let g = generate(a.n, a.k, a.d, &field, a.construction, a.seed, a.xs.clone())?;
    std::fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    write(&a.out_dir, PSI_FILE, &g.psi_text)?;
    write(&a.out_dir, G_FILE, &g.g_text)?;
    write(&a.out_dir, G_SYS_FILE, &g.g_sys_text)?;
    write(&a.out_dir, DESCRIPTOR_FILE, &g.descriptor.to_toml()?)?;
    Ok(format!("{} code {} written to {}", g.code.construction(), g.code.params(), a.out_dir.display()))
}

/// Message symbols for a file: over GF(2^8) the bytes behind a `u64` length
/// header, zero-padded to whole stripes; over a prime field the decimal
/// symbols, which must fill whole stripes.
pub fn read_message(path: &Path, field: &Field, b: usize) -> Result<Vec<Scalar>> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    if field.is_binary() {
        let mut framed = (bytes.len() as u64).to_le_bytes().to_vec();
        framed.extend_from_slice(&bytes);
        framed.resize(framed.len().div_ceil(b) * b, 0);
        return Ok(framed.into_iter().map(|x| Scalar::new(u32::from(x))).collect());
    }
    let text = String::from_utf8(bytes).context("prime-field input must be decimal text")?;
    let symbols = text
        .split_whitespace()
        .map(|t| {
            let v: u32 = t.parse().with_context(|| format!("bad symbol {t:?}"))?;
            Ok(field.elem(v)?)
        })
        .collect::<Result<Vec<_>>>()?;
    ensure!(
        !symbols.is_empty() && symbols.len() % b == 0,
        "prime-field input holds {} symbols, need a positive multiple of B = {b}",
        symbols.len()
    );
    Ok(symbols)
}

/// Inverse of [`read_message`].
pub fn write_message(path: &Path, field: &Field, b: usize, symbols: &[Scalar]) -> Result<()> {
    let bytes = if field.is_binary() {
        ensure!(symbols.len() >= 8, "decoded data is too short for a length header");
        let raw: Vec<u8> = symbols.iter().map(|s| s.value() as u8).collect();
        let len = u64::from_le_bytes(raw[..8].try_into().expect("8 bytes"));
        let len = usize::try_from(len).ok().filter(|&l| l <= raw.len() - 8).context("length header exceeds decoded data")?;
        raw[8..8 + len].to_vec()
    } else {
        let mut text = String::new();
        for stripe in symbols.chunks(b) {
            let line: Vec<String> = stripe.iter().map(|s| s.to_string()).collect();
            text.push_str(&line.join(" "));
            text.push('\n');
        }
        text.into_bytes()
    };
    std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

pub fn encode(a: &EncodeArgs) -> Result<String> {
    let lc = LoadedCode::load(&a.code)?;
    let p = lc.code.params().clone();
    let message = read_message(&a.input, &p.field, p.b)?;
    let stripes = message.len() / p.b;
    let g = lc.code.generator().matrix();
    let mut nodes = vec![Vec::with_capacity(stripes * p.alpha); p.n];
    for m in message.chunks(p.b) {
        let coded = g.mul_vec(m)?;
        for (node, chunk) in nodes.iter_mut().zip(coded.chunks(p.alpha)) {
            node.extend_from_slice(chunk);
        }
    }
    std::fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    for (i, symbols) in nodes.into_iter().enumerate() {
        let share = Share { descriptor_hash: lc.hash, stripes: stripes as u64, symbols };
        share.write(&share_path(&a.out_dir, i), &p.field)?;
    }
    Ok(format!("encoded {stripes} stripes into {} shares in {}", p.n, a.out_dir.display()))
}

pub fn repair(a: &RepairArgs) -> Result<String> {
    let lc = LoadedCode::load(&a.code)?;
    let p = lc.code.params().clone();
    ensure!(a.failed < p.n, "node {} out of range for n = {}", a.failed, p.n);
    ensure!(a.helpers.len() == p.d, "repair needs exactly d = {} helper shares, got {}", p.d, a.helpers.len());
    let ids = a.helpers.iter().map(|h| node_id(h)).collect::<Result<Vec<_>>>()?;
    let shares = a.helpers.iter().map(|h| lc.read_share(h)).collect::<Result<Vec<_>>>()?;
    let stripes = shares[0].stripes;
    ensure!(shares.iter().all(|s| s.stripes == stripes), "helper shares disagree on the stripe count");

    let v = lc.code.repair_vector(a.failed)?;
    let r = lc.code.repair_matrix(a.failed, &ids)?;
    let mut out = Vec::with_capacity(shares[0].symbols.len());
    for s in 0..stripes as usize {
        let window = s * p.alpha..(s + 1) * p.alpha;
        let sent: Vec<Scalar> = shares.iter().map(|h| sparsepm::linalg::dot(&p.field, &h.symbols[window.clone()], &v)).collect();
        out.extend(r.mul_vec(&sent)?);
    }
    let path = match &a.out {
        Some(path) => path.clone(),
        None => share_path(a.helpers[0].parent().unwrap_or(Path::new(".")), a.failed),
    };
    Share { descriptor_hash: lc.hash, stripes, symbols: out }.write(&path, &p.field)?;
    Ok(format!("rebuilt node {} from {} helpers into {}", a.failed, p.d, path.display()))
}

pub fn decode(a: &DecodeArgs) -> Result<String> {
    let lc = LoadedCode::load(&a.code)?;
    let p = lc.code.params().clone();
    let mut ids = Vec::new();
    let mut shares = Vec::new();
    for path in &a.shares {
        let id = node_id(path)?;
        ensure!(id < p.n, "node {id} out of range for n = {}", p.n);
        if ids.len() < p.k && !ids.contains(&id) {
            ids.push(id);
            shares.push(lc.read_share(path)?);
        }
    }
    ensure!(ids.len() == p.k, "decoding needs k = {} distinct shares, got {}", p.k, ids.len());
    let stripes = shares[0].stripes;
    ensure!(shares.iter().all(|s| s.stripes == stripes), "shares disagree on the stripe count");
    let decoder = Decoder::new(lc.code.generator(), &ids)?;
    let mut message = Vec::with_capacity(stripes as usize * p.b);
    let mut gathered = Vec::with_capacity(p.b);
    for s in 0..stripes as usize {
        gathered.clear();
        for share in &shares {
            gathered.extend_from_slice(&share.symbols[s * p.alpha..(s + 1) * p.alpha]);
        }
        message.extend(decoder.decode_flat(&gathered)?);
    }
    write_message(&a.out, &p.field, p.b, &message)?;
    Ok(format!("decoded {stripes} stripes from nodes {ids:?} into {}", a.out.display()))
}

pub fn certify(a: &CertifyArgs) -> Result<String> {
    let lc = LoadedCode::load(&a.code)?;
    let opts = CertifyOptions { exhaustive_limit: a.exhaustive_limit, samples: a.samples, seed: a.seed };
    let cert = certify_systematic(&lc.code, &opts);
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir)?;
        write(dir, "certify.txt", &cert.to_records())?;
        write(dir, "certify.tsv", &cert.to_tsv())?;
    }
    let report = cert.to_records();
    if !cert.passed() {
        bail!("certification failed\n{report}");
    }
    Ok(report)
}

pub fn analyze(a: &AnalyzeArgs) -> Result<String> {
    let lc = LoadedCode::load(&a.code)?;
    let report = sparsity_report(lc.code.generator(), lc.code.params());
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir)?;
        write(dir, "sparsity.txt", &report.to_records())?;
        write(dir, "sparsity.tsv", &report.to_tsv())?;
        write(dir, "pattern.txt", &report.pattern_text())?;
    }
    Ok(report.to_records())
}

pub fn bench(a: &BenchArgs) -> Result<String> {
    let lc = LoadedCode::load(&a.code)?;
    ensure!(lc.field().is_binary(), "benchmarking needs a GF(2^8) code");
    let baseline = match &a.baseline {
        Some(path) => LoadedCode::load(path)?.code,
        None => {
            let d = &lc.descriptor;
            generate(d.n, d.k, d.d, lc.field(), Construction::Vanilla, d.seed, Some(d.xs.clone()))?.code
        }
    };
    let opts = BenchOptions { workload_bytes: a.bytes, repetitions: a.repetitions, seed: a.seed };
    let cmp = benchmark_encode(&lc.code, &baseline, &opts)?;
    ensure!(cmp.paths_identical, "zero-skipping and full encoding disagree");
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir)?;
        write(dir, "bench.txt", &cmp.to_records())?;
        write(dir, "bench.tsv", &cmp.to_tsv())?;
    }
    Ok(cmp.to_records())
}
