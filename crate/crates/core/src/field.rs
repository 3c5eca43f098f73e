//! Exact arithmetic over prime fields GF(p) and over GF(2^8).
//!
//! A [`Field`] is an immutable context object; [`Scalar`]s are plain values
//! that only make sense together with the field they were produced in. Every
//! operation takes the field explicitly, so several fields can coexist in one
//! process without global state.
//!
//! GF(2^8) multiplication goes through 256-entry log/antilog tables built when
//! the field is constructed. A carry-less shift-and-reduce multiply is kept
//! alongside as a reference implementation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Reduction polynomial x^8 + x^4 + x^3 + x^2 + 1.
pub const GF256_POLY: u16 = 0x11D;

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u32 = 1 << 31;

/// A field element. The value is always in `[0, q)` for the field it belongs to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    /// Wraps a raw value without range checking. Use [`Field::elem`] when the
    /// value comes from outside.
    #[inline]
    pub const fn new(value: u32) -> Self {
        Scalar(value)
    }

    #[inline]
    pub const fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// GF(p), p prime.
    Prime { modulus: u32 },
    /// GF(2^8) with the given degree-8 reduction polynomial (bit 8 set).
    Binary { poly: u16 },
}

#[derive(Debug)]
struct Gf256Tables {
    /// `exp[i] = g^i`, doubled so that `exp[log a + log b]` needs no reduction.
    exp: [u8; 512],
    log: [u8; 256],
}

/// Field context: the kind, modulus and (for GF(2^8)) the lookup tables.
#[derive(Clone)]
pub struct Field {
    kind: FieldKind,
    tables: Option<Arc<Gf256Tables>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime { modulus } => write!(f, "GF({modulus})"),
            FieldKind::Binary { poly } => write!(f, "GF(2^8)/{poly:#x}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Field {
    /// GF(p). Fails unless `p` is a prime below 2^31.
    pub fn prime(modulus: u32) -> Result<Self> {
        if modulus >= MAX_PRIME || !is_prime(modulus) {
            return Err(Error::InvalidField(format!("{modulus} is not a prime below 2^31")));
        }
        Ok(Field { kind: FieldKind::Prime { modulus }, tables: None })
    }

    /// GF(2^8) with the default reduction polynomial 0x11D.
    pub fn gf256() -> Self {
        Field::binary(GF256_POLY).expect("0x11D is irreducible")
    }

    /// GF(2^8) with a caller-chosen reduction polynomial.
    pub fn binary(poly: u16) -> Result<Self> {
        if poly >> 8 != 1 {
            return Err(Error::InvalidField(format!("{poly:#x} is not a degree-8 polynomial")));
        }
        if !is_irreducible_gf2(poly) {
            return Err(Error::InvalidField(format!("{poly:#x} is reducible over GF(2)")));
        }
        Ok(Field { kind: FieldKind::Binary { poly }, tables: Some(Arc::new(build_tables(poly))) })
    }

    /// Field of the given order: a prime, or 256 for GF(2^8)/0x11D.
    pub fn from_order(q: u32) -> Result<Self> {
        if q == 256 {
            Ok(Field::gf256())
        } else {
            Field::prime(q)
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Number of elements q.
    pub fn order(&self) -> u32 {
        match self.kind {
            FieldKind::Prime { modulus } => modulus,
            FieldKind::Binary { .. } => 256,
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self.kind, FieldKind::Binary { .. })
    }

    /// Range-checked conversion from an integer.
    pub fn elem(&self, value: u32) -> Result<Scalar> {
        if value < self.order() {
            Ok(Scalar(value))
        } else {
            Err(Error::InvalidScalar { value, order: self.order() })
        }
    }

    /// Reduces an arbitrary integer into the field (prime fields: mod p;
    /// GF(2^8): low byte).
    pub fn reduce(&self, value: u64) -> Scalar {
        match self.kind {
            FieldKind::Prime { modulus } => Scalar((value % modulus as u64) as u32),
            FieldKind::Binary { .. } => Scalar((value & 0xFF) as u32),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::ZERO
    }

    pub fn one(&self) -> Scalar {
        Scalar::ONE
    }

    /// All field elements in increasing integer order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.order()).map(Scalar)
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        match self.kind {
            FieldKind::Prime { modulus } => {
                let s = a.0 as u64 + b.0 as u64;
                let m = modulus as u64;
                Scalar(if s >= m { s - m } else { s } as u32)
            }
            FieldKind::Binary { .. } => Scalar(a.0 ^ b.0),
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        match self.kind {
            FieldKind::Prime { modulus } => Scalar(if a.0 == 0 { 0 } else { modulus - a.0 }),
            FieldKind::Binary { .. } => a,
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        match self.kind {
            FieldKind::Prime { modulus } => Scalar(((a.0 as u64 * b.0 as u64) % modulus as u64) as u32),
            FieldKind::Binary { .. } => {
                if a.0 == 0 || b.0 == 0 {
                    return Scalar::ZERO;
                }
                let t = self.tables();
                Scalar(t.exp[t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize] as u32)
            }
        }
    }

    /// `a + b * c`, the inner step of every dot product.
    #[inline]
    pub fn mul_add(&self, a: Scalar, b: Scalar, c: Scalar) -> Scalar {
        self.add(a, self.mul(b, c))
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(match self.kind {
            // Fermat: a^(p-2).
            FieldKind::Prime { modulus } => self.pow(a, modulus as u64 - 2),
            FieldKind::Binary { .. } => {
                let t = self.tables();
                Scalar(t.exp[(255 - t.log[a.0 as usize] as usize) % 255] as u32)
            }
        })
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Table-free GF(2^8) product (shift-and-reduce). Only defined for binary
    /// fields; used to cross-check the log/antilog tables.
    pub fn mul_carryless(&self, a: Scalar, b: Scalar) -> Scalar {
        let FieldKind::Binary { poly } = self.kind else {
            panic!("mul_carryless on a prime field");
        };
        Scalar(gf2_mulmod(a.0 as u8, b.0 as u8, poly) as u32)
    }

    /// The 256-entry multiplication row for `c` (GF(2^8) only). The encoding
    /// kernels use this to turn a scalar-times-vector into one lookup per byte.
    pub fn mul_table_row(&self, c: u8) -> [u8; 256] {
        let t = self.tables();
        let mut row = [0u8; 256];
        if c != 0 {
            let lc = t.log[c as usize] as usize;
            for (x, out) in row.iter_mut().enumerate().skip(1) {
                *out = t.exp[lc + t.log[x] as usize];
            }
        }
        row
    }

    fn tables(&self) -> &Gf256Tables {
        self.tables.as_deref().expect("binary field carries tables")
    }
}

fn gf2_mulmod(mut a: u8, mut b: u8, poly: u16) -> u8 {
    let low = (poly & 0xFF) as u8;
    let mut p = 0u8;
    while b != 0 {
        if b & 1 != 0 {
            p ^= a;
        }
        let carry = a & 0x80 != 0;
        a <<= 1;
        if carry {
            a ^= low;
        }
        b >>= 1;
    }
    p
}

fn build_tables(poly: u16) -> Gf256Tables {
    // The polynomial is irreducible, so the multiplicative group is cyclic of
    // order 255; x need not be primitive, so search for a generator.
    let generator = (2u16..256)
        .map(|g| g as u8)
        .find(|&g| multiplicative_order(g, poly) == 255)
        .expect("GF(2^8)* is cyclic");
    let mut exp = [0u8; 512];
    let mut log = [0u8; 256];
    let mut x = 1u8;
    for (i, e) in exp.iter_mut().take(255).enumerate() {
        *e = x;
        log[x as usize] = i as u8;
        x = gf2_mulmod(x, generator, poly);
    }
    for i in 255..512 {
        exp[i] = exp[i - 255];
    }
    Gf256Tables { exp, log }
}

fn multiplicative_order(g: u8, poly: u16) -> u32 {
    let mut x = g;
    let mut order = 1;
    while x != 1 {
        x = gf2_mulmod(x, g, poly);
        order += 1;
        if order > 255 {
            return 0;
        }
    }
    order
}

/// Trial-division primality test.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let n = n as u64;
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u32) -> u32 {
    (n.max(2)..MAX_PRIME).find(|&p| is_prime(p)).expect("prime below 2^31")
}

fn gf2_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn gf2_rem(mut a: u32, b: u32) -> u32 {
    let db = gf2_degree(b);
    while a != 0 && gf2_degree(a) >= db {
        a ^= b << (gf2_degree(a) - db);
    }
    a
}

/// Irreducibility over GF(2) of a degree-8 polynomial: no factor of degree 1..=4.
fn is_irreducible_gf2(poly: u16) -> bool {
    let poly = poly as u32;
    (2u32..32).all(|divisor| gf2_rem(poly, divisor) != 0)
}
