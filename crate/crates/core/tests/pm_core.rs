//! Encoding, exhaustive MDS and repair, and decoder agreement.

mod common;

use common::*;
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparsepm::pm::decode::decode_with_identity_encoding;
use sparsepm::pm::{encode, pack_message, repair, Decoder, RegeneratingCode, ValidationOptions};
use sparsepm::sparse::{sparsify_encoding, BuildOptions};
use sparsepm::{build_systematic, CodeParams, Error, Field, Scalar};

fn random_message(rng: &mut ChaCha8Rng, b: usize, q: u32) -> Vec<Scalar> {
    (0..b).map(|_| Scalar::new(rng.gen_range(0..q))).collect()
}

#[test]
fn zero_message_encodes_to_zero() {
    let code = vanilla_846();
    assert!(code.encode_message(&[Scalar::ZERO; 12]).unwrap().is_zero());
    let bundle = code.gather_repair(3, &[0, 1, 2, 4, 5, 6], &code.encode_message(&[Scalar::ZERO; 12]).unwrap()).unwrap();
    assert!(bundle.symbols.iter().all(|s| s.is_zero()));
}

#[test]
fn repair_of_first_node_for_unit_message() {
    let code = vanilla_846();
    let mut m = vec![Scalar::ZERO; 12];
    m[0] = Scalar::ONE;
    let stored = code.encode_message(&m).unwrap();
    let helpers = [1, 2, 3, 4, 5, 6];
    let symbols: Vec<Scalar> = helpers.iter().map(|&h| code.helper_symbol(0, stored.row(h)).unwrap()).collect();
    assert_eq!(repair(code.encoding(), 0, &helpers, &symbols).unwrap(), stored.row(0));
}

#[test]
fn generator_consistency_on_random_messages() {
    let code = vanilla_846();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let m = random_message(&mut rng, 12, 11);
        let msg = pack_message(&m, 3, &f11()).unwrap();
        let direct = encode(code.encoding(), &msg).unwrap();
        assert_eq!(code.generator().encode(&m).unwrap(), direct);
        assert_eq!(code.encoding().psi().matmul(&msg.stacked()).unwrap(), direct);
    }
}

#[test]
fn exhaustive_mds_and_repair_for_vanilla_and_systematic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sys = build_systematic(8, 4, 6, &f11(), &BuildOptions::default()).unwrap();
    let m = random_message(&mut rng, 12, 11);
    for code in [&vanilla_846() as &dyn RegeneratingCode, &sys] {
        let stored = code.encode_message(&m).unwrap();
        let mut decoded = 0;
        for ids in (0..8).combinations(4) {
            let data: Vec<Vec<Scalar>> = ids.iter().map(|&i| stored.row(i).to_vec()).collect();
            assert_eq!(code.decode(&ids, &data).unwrap(), m);
            decoded += 1;
        }
        assert_eq!(decoded, 70);
        let mut repaired = 0;
        for f in 0..8 {
            for helpers in (0..8).filter(|&h| h != f).combinations(6) {
                let bundle = code.gather_repair(f, &helpers, &stored).unwrap();
                assert_eq!(bundle.symbols.len(), 6);
                assert_eq!(code.repair(f, &helpers, &bundle.symbols).unwrap(), stored.row(f));
                repaired += 1;
            }
        }
        assert_eq!(repaired, 56);
    }
}

#[test]
fn decoding_from_first_k_of_systematic_code_is_the_identity() {
    let sys = build_systematic(8, 4, 6, &f11(), &BuildOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let m = random_message(&mut rng, 12, 11);
    let stored = sys.encode_message(&m).unwrap();
    let flat: Vec<Scalar> = (0..4).flat_map(|i| stored.row(i).to_vec()).collect();
    assert_eq!(flat, m);
    assert_eq!(Decoder::new(sys.generator(), &[0, 1, 2, 3]).unwrap().decode_flat(&flat).unwrap(), m);
}

#[test]
fn too_few_nodes_is_a_bad_count() {
    let code = vanilla_846();
    let data = vec![vec![Scalar::ZERO; 3]; 3];
    assert!(matches!(code.decode(&[0, 1, 2], &data), Err(Error::BadCount { expected: 4, actual: 3 })));
}

fn identity_block_agreement(n: usize, k: usize, d: usize, field: &Field, seed: u64) {
    let params = CodeParams::new(n, k, d, field).unwrap();
    let enc = sparsepm::pm::build_vandermonde_encoding(&params, None, &ValidationOptions::default()).unwrap();
    let enc = sparsify_encoding(&enc, &ValidationOptions::default()).unwrap();
    let code = sparsepm::pm::ProductMatrixCode::new(params.clone(), enc).unwrap();
    let ids: Vec<usize> = (0..k).collect();
    let decoder = Decoder::new(code.generator(), &ids).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let m = random_message(&mut rng, params.b, field.order());
        let stored = code.encode_message(&m).unwrap();
        let c_k = stored.select_rows(&ids).unwrap();
        let fast = sparsepm::pm::unpack_message(&decode_with_identity_encoding(code.encoding(), &c_k).unwrap()).unwrap();
        let generic = decoder.decode_flat(c_k.as_slice()).unwrap();
        assert_eq!(fast, m);
        assert_eq!(generic, m);
    }
}

#[test]
fn identity_block_decoder_agrees_with_generic() {
    identity_block_agreement(8, 4, 6, &f11(), 13);
    identity_block_agreement(12, 6, 10, &Field::prime(13).unwrap(), 14);
}

#[test]
fn zero_block_decodes_to_zero() {
    let code = vanilla_846();
    let enc = sparsify_encoding(code.encoding(), &ValidationOptions::default()).unwrap();
    let zero = sparsepm::Matrix::zeros(4, 3, &f11());
    let msg = decode_with_identity_encoding(&enc, &zero).unwrap();
    assert!(msg.sa.is_zero() && msg.sb.is_zero());
}

#[test]
fn vanilla_node_blocks_have_interleaved_d_sparse_rows() {
    let g = vanilla_846().generator().matrix().clone();
    for r in 0..24 {
        assert_eq!(g.row(r).iter().filter(|s| !s.is_zero()).count(), 6, "row {r}");
        assert_eq!(g.row(r).iter().map(|s| s.value()).collect::<Vec<_>>(), G[r]);
    }
}

#[test]
fn gf256_code_round_trips() {
    let f = Field::gf256();
    let code = build_systematic(10, 5, 8, &f, &BuildOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let m = random_message(&mut rng, 20, 256);
    let stored = code.encode_message(&m).unwrap();
    for ids in (0..10).combinations(5).step_by(7) {
        let data: Vec<Vec<Scalar>> = ids.iter().map(|&i| stored.row(i).to_vec()).collect();
        assert_eq!(code.decode(&ids, &data).unwrap(), m);
    }
    let helpers: Vec<usize> = (1..9).collect();
    let bundle = code.gather_repair(0, &helpers, &stored).unwrap();
    assert_eq!(code.repair(0, &helpers, &bundle.symbols).unwrap(), stored.row(0));
}
