//! The code descriptor: everything needed to rebuild a generated code
//! exactly, plus content hashes of the emitted matrices.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sparsepm::pm::{build_vandermonde_encoding, CodeParams, RegeneratingCode, ValidationOptions};
use sparsepm::sparse::BuildOptions;
use sparsepm::{build_systematic, Construction, Field, FieldKind, SystematicCode};

pub const PSI_FILE: &str = "psi.txt";
pub const G_FILE: &str = "g.txt";
pub const G_SYS_FILE: &str = "g_sys.txt";
pub const DESCRIPTOR_FILE: &str = "code.toml";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    /// `prime` or `binary`.
    pub kind: String,
    pub order: u32,
    /// The prime, or the reduction polynomial as an integer.
    pub modulus: u32,
}

impl FieldSpec {
    pub fn from_field(f: &Field) -> Self {
        match f.kind() {
            FieldKind::Prime { modulus } => FieldSpec { kind: "prime".into(), order: modulus, modulus },
            FieldKind::Binary { poly } => FieldSpec { kind: "binary".into(), order: f.order(), modulus: u32::from(poly) },
        }
    }

    pub fn to_field(&self) -> Result<Field> {
        let field = match self.kind.as_str() {
            "prime" => Field::prime(self.modulus)?,
            "binary" => Field::binary(u16::try_from(self.modulus).context("reduction polynomial out of range")?)?,
            other => bail!("unknown field kind {other:?}"),
        };
        if field.order() != self.order {
            bail!("field order {} does not match modulus {}", self.order, self.modulus);
        }
        Ok(field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixHashes {
    pub psi: String,
    pub g: String,
    pub g_sys: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descriptor {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub alpha: usize,
    pub b: usize,
    pub construction: String,
    pub seed: u64,
    /// Dummy nodes removed from the parent code.
    pub shortening: usize,
    /// Evaluation points of the parent Vandermonde matrix.
    pub xs: Vec<u32>,
    pub field: FieldSpec,
    pub sha256: MatrixHashes,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sha256(bytes: &[u8]) -> [u8; 32] {
    Sha256::digest(bytes).into()
}

/// A built code with its matrix files rendered in the text format.
pub struct Generated {
    pub code: SystematicCode,
    pub descriptor: Descriptor,
    pub psi_text: String,
    pub g_text: String,
    pub g_sys_text: String,
}

fn validation(seed: u64) -> ValidationOptions {
    ValidationOptions { seed, ..ValidationOptions::default() }
}

/// Builds the code and its descriptor. Without explicit points, the ones the
/// construction settles on are recorded so that rebuilding is exact.
pub fn generate(n: usize, k: usize, d: usize, field: &Field, construction: Construction, seed: u64, xs: Option<Vec<u32>>) -> Result<Generated> {
    let params = CodeParams::new(n, k, d, field)?;
    let xs = match xs {
        Some(xs) => xs,
        None => {
            let enc = build_vandermonde_encoding(&params.parent(), None, &validation(seed))?;
            enc.phi().col(0).iter().map(|s| s.value()).collect()
        }
    };
    let code = build(n, k, d, field, construction, seed, &xs)?;
    let psi_text = code.base().encoding().psi().to_text();
    let g_text = code.base().generator().matrix().to_text();
    let g_sys_text = code.generator().matrix().to_text();
    let p = code.params();
    let descriptor = Descriptor {
        n,
        k,
        d,
        alpha: p.alpha,
        b: p.b,
        construction: code.construction().label().to_string(),
        seed,
        shortening: code.shortening(),
        xs,
        field: FieldSpec::from_field(field),
        sha256: MatrixHashes {
            psi: sha256_hex(psi_text.as_bytes()),
            g: sha256_hex(g_text.as_bytes()),
            g_sys: sha256_hex(g_sys_text.as_bytes()),
        },
    };
    Ok(Generated { code, descriptor, psi_text, g_text, g_sys_text })
}

fn build(n: usize, k: usize, d: usize, field: &Field, construction: Construction, seed: u64, xs: &[u32]) -> Result<SystematicCode> {
    let opts = BuildOptions { construction, xs: Some(xs.to_vec()), validation: validation(seed) };
    Ok(build_systematic(n, k, d, field, &opts)?)
}

impl Descriptor {
    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    /// Rebuilds the code and checks it against the recorded generator hash.
    pub fn rebuild(&self) -> Result<SystematicCode> {
        let field = self.field.to_field()?;
        let construction: Construction = self.construction.parse()?;
        let code = build(self.n, self.k, self.d, &field, construction, self.seed, &self.xs)?;
        let hash = sha256_hex(code.generator().matrix().to_text().as_bytes());
        if hash != self.sha256.g_sys {
            bail!("rebuilt systematic generator does not match the descriptor (sha256 {hash})");
        }
        Ok(code)
    }
}
