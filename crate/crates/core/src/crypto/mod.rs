//! Deterministic cryptographic primitives shared by all modules.
//!
//! The PRF is HMAC-SHA256; the PRG is counter-mode expansion of SHA-256.
//! Blind signatures are raw RSA over `Prefix_t || EphID`: raw RSA with a
//! public fixed prefix is multiplicative-forgery-prone, and padding-secure
//! schemes (PSS etc.) are deliberately out of scope here. All operations are
//! pure functions of their inputs; key material is immutable after creation.

mod hash;
mod merkle;
mod rsa;

use thiserror::Error;

pub use hash::{auth_tag, prf, prg, sha256};
pub use merkle::{merkle_build, merkle_prove, merkle_verify, MerkleProof, MerkleTree};
pub use rsa::{
    blind, blind_int, blind_with_multiplier, sign_batch, sign_batch_seq, sign_blinded, to_fixed_be,
    unblind, verify_batch, verify_batch_seq, verify_int, verify_signature, DayKeyPair,
    DayPublicKey,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CryptoError {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("blinding factor is not invertible modulo N")]
    InvalidBlindingFactor,
    #[error("index {index} out of range for {len} leaves")]
    IndexOutOfRange { index: usize, len: usize },
}
