//! SHA-256, HMAC-SHA256, and the PRF/PRG built on them.

use sha2::{Digest, Sha256};

use super::CryptoError;
use crate::types::{AuthTag, EphId, Seed, AUTH_TAG_LEN, SEED_LEN};

const BLOCK_LEN: usize = 64;

pub fn sha256(data: &[u8]) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(data);
    let mut out = [0u8; 32];
    out.copy_from_slice(&hasher.finalize());
    out
}

/// HMAC-SHA256 over an arbitrary-length key (RFC 2104).
pub(crate) fn hmac_sha256(key: &[u8], message: &[u8]) -> [u8; 32] {
    let mut block = [0u8; BLOCK_LEN];
    if key.len() > BLOCK_LEN {
        block[..32].copy_from_slice(&sha256(key));
    } else {
        block[..key.len()].copy_from_slice(key);
    }

    let mut inner = Sha256::new();
    let ipad: Vec<u8> = block.iter().map(|b| b ^ 0x36).collect();
    inner.update(&ipad);
    inner.update(message);
    let inner_hash = inner.finalize();

    let mut outer = Sha256::new();
    let opad: Vec<u8> = block.iter().map(|b| b ^ 0x5c).collect();
    outer.update(&opad);
    outer.update(&inner_hash);

    let mut out = [0u8; 32];
    out.copy_from_slice(&outer.finalize());
    out
}

/// Keyed PRF: HMAC-SHA256 of `label` under a 32-byte key.
pub fn prf(key: &[u8], label: &[u8]) -> Result<[u8; 32], CryptoError> {
    if key.len() != SEED_LEN {
        return Err(CryptoError::InvalidArgument("prf key must be 32 bytes"));
    }
    Ok(hmac_sha256(key, label))
}

/// Infallible PRF over a fixed-width key, for internal derivations.
pub(crate) fn prf_fixed(key: &Seed, label: &[u8]) -> [u8; 32] {
    hmac_sha256(key, label)
}

/// Deterministic expansion of a 32-byte seed: block `i` is
/// `SHA-256(seed || be32(i))`, so outputs are prefix-consistent across
/// lengths.
pub fn prg(seed: &[u8], out_len: usize) -> Result<Vec<u8>, CryptoError> {
    if seed.len() != SEED_LEN {
        return Err(CryptoError::InvalidArgument("prg seed must be 32 bytes"));
    }
    if out_len == 0 {
        return Err(CryptoError::InvalidArgument("prg output length is zero"));
    }
    let mut out = Vec::with_capacity(out_len.div_ceil(32) * 32);
    let mut counter: u32 = 0;
    while out.len() < out_len {
        let mut hasher = Sha256::new();
        hasher.update(seed);
        hasher.update(counter.to_be_bytes());
        out.extend_from_slice(&hasher.finalize());
        counter += 1;
    }
    out.truncate(out_len);
    Ok(out)
}

pub(crate) fn prg_fixed(seed: &Seed, out_len: usize) -> Vec<u8> {
    prg(seed, out_len).expect("fixed-width seed and nonzero length")
}

/// 13-byte beacon authenticator: HMAC-SHA256 of the EphID under the interval
/// key, truncated to 104 bits.
pub fn auth_tag(key: &Seed, ephid: &EphId) -> AuthTag {
    let mac = hmac_sha256(key, ephid.as_bytes());
    let mut tag = [0u8; AUTH_TAG_LEN];
    tag.copy_from_slice(&mac[..AUTH_TAG_LEN]);
    AuthTag(tag)
}

#[cfg(test)]
mod tests {
    use super::*;

    // RFC 4231 test case 2.
    #[test]
    fn hmac_matches_rfc4231() {
        let tag = hmac_sha256(b"Jefe", b"what do ya want for nothing?");
        assert_eq!(
            hex::encode(tag),
            "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843"
        );
    }

    #[test]
    fn hmac_handles_long_keys() {
        // RFC 4231 test case 6: 131-byte key is hashed down first.
        let key = vec![0xaau8; 131];
        let tag = hmac_sha256(&key, b"Test Using Larger Than Block-Size Key - Hash Key First");
        assert_eq!(
            hex::encode(tag),
            "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54"
        );
    }

    #[test]
    fn prf_is_deterministic() {
        let key = [7u8; 32];
        let a = prf(&key, b"broadcast key").unwrap();
        let b = prf(&key, b"broadcast key").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn prf_separates_labels() {
        let key = [7u8; 32];
        let a = prf(&key, b"broadcast key 1").unwrap();
        let b = prf(&key, b"broadcast key 2").unwrap();
        assert_ne!(a, b);
    }

    // Frozen from an independent HMAC-SHA256 implementation.
    #[test]
    fn prf_regression_vector() {
        let out = prf(&[0u8; 32], b"broadcast key").unwrap();
        assert_eq!(
            hex::encode(out),
            "7c0e632124721e388416257f1697bbdfac09c694ff7bb9a6a6b41fd6770b5f72"
        );
    }

    #[test]
    fn prf_rejects_wrong_key_length() {
        assert!(matches!(
            prf(&[0u8; 16], b"x"),
            Err(CryptoError::InvalidArgument(_))
        ));
    }

    #[test]
    fn prg_prefix_consistency() {
        let seed = [3u8; 32];
        let short = prg(&seed, 16).unwrap();
        let long = prg(&seed, 64).unwrap();
        assert_eq!(short, long[..16]);
    }

    #[test]
    fn prg_separates_seeds() {
        let a = prg(&[1u8; 32], 32).unwrap();
        let b = prg(&[2u8; 32], 32).unwrap();
        assert_ne!(a, b);
    }

    // Frozen from an independent counter-mode SHA-256 expansion.
    #[test]
    fn prg_regression_vector() {
        let out = prg(&[0u8; 32], 13).unwrap();
        assert_eq!(hex::encode(&out), "6db65fd59fd356f6729140571b");
        let long = prg(&[0u8; 32], 64).unwrap();
        assert_eq!(
            hex::encode(&long),
            "6db65fd59fd356f6729140571b5bcd6bb3b83492a16e1bf0a3884442fc3c8a0e\
             2158a8906d5e2c2be001bac943ab9cab4063536e1c546b40221fdf8db031a4bb"
        );
    }

    #[test]
    fn prg_rejects_zero_length() {
        assert!(matches!(
            prg(&[0u8; 32], 0),
            Err(CryptoError::InvalidArgument(_))
        ));
    }

    #[test]
    fn auth_tag_is_deterministic_and_13_bytes() {
        let key = [9u8; 32];
        let ephid = EphId([4u8; 13]);
        let a = auth_tag(&key, &ephid);
        let b = auth_tag(&key, &ephid);
        assert_eq!(a, b);
        assert_eq!(a.as_bytes().len(), 13);
    }

    // Frozen from an independent HMAC-SHA256 implementation, truncated.
    #[test]
    fn auth_tag_regression_vector() {
        let tag = auth_tag(&[0u8; 32], &EphId([0u8; 13]));
        assert_eq!(hex::encode(tag.as_bytes()), "9a8d4d9a2d9d68f48ebe674e8e");
    }
}
