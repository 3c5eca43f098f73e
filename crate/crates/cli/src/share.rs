//! Node share files: an 8-byte magic, the SHA-256 of the code descriptor,
//! a little-endian `u64` stripe count, then the node's symbols stripe by
//! stripe (α per stripe). Symbols take one byte in GF(2^8) and four
//! little-endian bytes in prime fields.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use sparsepm::{Field, Scalar};

pub const MAGIC: &[u8; 8] = b"PMSHARE1";
const HEADER: usize = 8 + 32 + 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Share {
    pub descriptor_hash: [u8; 32],
    pub stripes: u64,
    pub symbols: Vec<Scalar>,
}

fn width(field: &Field) -> usize {
    if field.is_binary() {
        1
    } else {
        4
    }
}

impl Share {
    pub fn to_bytes(&self, field: &Field) -> Vec<u8> {
        let w = width(field);
        let mut out = Vec::with_capacity(HEADER + self.symbols.len() * w);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.descriptor_hash);
        out.extend_from_slice(&self.stripes.to_le_bytes());
        for s in &self.symbols {
            if w == 1 {
                out.push(s.value() as u8);
            } else {
                out.extend_from_slice(&s.value().to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], field: &Field, alpha: usize) -> Result<Self> {
        if bytes.len() < HEADER || &bytes[..8] != MAGIC {
            bail!("not a share file");
        }
        let descriptor_hash: [u8; 32] = bytes[8..40].try_into().expect("32 bytes");
        let stripes = u64::from_le_bytes(bytes[40..48].try_into().expect("8 bytes"));
        let w = width(field);
        let body = &bytes[HEADER..];
        let expected = usize::try_from(stripes).ok().and_then(|s| s.checked_mul(alpha * w));
        if expected != Some(body.len()) {
            bail!("share holds {} bytes of symbols, header promises {stripes} stripes of {alpha}", body.len());
        }
        let symbols = body
            .chunks(w)
            .map(|c| {
                let v = if w == 1 { u32::from(c[0]) } else { u32::from_le_bytes(c.try_into().expect("4 bytes")) };
                field.elem(v).map_err(anyhow::Error::from)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Share { descriptor_hash, stripes, symbols })
    }

    pub fn read(path: &Path, field: &Field, alpha: usize) -> Result<Self> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_bytes(&bytes, field, alpha).with_context(|| format!("in {}", path.display()))
    }

    pub fn write(&self, path: &Path, field: &Field) -> Result<()> {
        std::fs::write(path, self.to_bytes(field)).with_context(|| format!("writing {}", path.display()))
    }
}

pub fn share_path(dir: &Path, node: usize) -> PathBuf {
    dir.join(format!("node_{node}.share"))
}

/// Node id from a `node_<id>.share` file name.
pub fn node_id(path: &Path) -> Result<usize> {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    name.strip_prefix("node_")
        .and_then(|s| s.strip_suffix(".share"))
        .and_then(|s| s.parse().ok())
        .with_context(|| format!("{} is not named node_<id>.share", path.display()))
}
