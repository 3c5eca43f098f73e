//! The product-matrix MSR construction: parameters, message layout,
//! encoding matrices, encoding, repair and decoding.

pub mod code;
pub mod decode;
pub mod encoding;
pub mod message;
pub mod params;

pub use code::{encode, generator_matrix, repair, GeneratorMatrix, ProductMatrixCode, RegeneratingCode, RepairBundle};
pub use decode::{decode_generic, decode_identity_block, Decoder};
pub use encoding::{build_vandermonde_encoding, select_prime_field, EncodingMatrix, ValidationOptions, ValidationReport};
pub use message::{pack_message, packed_index, packed_position, unpack_message, Half, MessageMatrix};
pub use params::CodeParams;
