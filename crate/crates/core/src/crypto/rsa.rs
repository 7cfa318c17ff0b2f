//! Raw-RSA blind signatures over `Prefix_t || EphID`.
//!
//! Every day `t` has a fresh key pair `(e_t, d_t, N)` and a public random
//! prefix that pads the 104-bit EphID up to the modulus width. Messages are
//! the integer `Prefix_t * 2^104 + EphID`; blinding multiplies by
//! `rhat^{e_t}`, signing raises to `d_t`, and unblinding divides the blinding
//! factor back out.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::CryptoError;
use crate::types::EphId;

/// Bit width of an EphID inside the padded message.
const EPHID_BITS: u32 = 104;

/// Public half of a day key: enough to blind, unblind, and verify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DayPublicKey {
    pub day_index: u32,
    /// Verification exponent `e_t`.
    pub verify_exp: BigUint,
    /// Modulus `N`.
    pub modulus: BigUint,
    /// Per-day public padding value `Prefix_t` (top bit clear).
    pub prefix: BigUint,
    /// Declared bit length of the prefix field.
    pub prefix_bits: u32,
}

impl DayPublicKey {
    /// Serialized width of one group element in bytes.
    pub fn modulus_width(&self) -> usize {
        ((self.modulus.bits() + 7) / 8) as usize
    }

    /// The padded message `Prefix_t || EphID` as an integer.
    pub fn padded_message(&self, ephid: &EphId) -> BigUint {
        let id = BigUint::from_bytes_be(ephid.as_bytes());
        (&self.prefix << EPHID_BITS) | id
    }
}

/// Signing key pair for one day. The signing exponent never leaves this
/// struct except through [`DayKeyPair::sign_exp`] for persistence.
#[derive(Debug, Clone)]
pub struct DayKeyPair {
    public: DayPublicKey,
    sign_exp: BigUint,
}

impl DayKeyPair {
    /// Generates a fresh day key: two random primes, `e = 65537`,
    /// `d = e^-1 mod lcm(p-1, q-1)`, and a random prefix of
    /// `modulus_bits - 104` bits with the top bit clear. The pair is
    /// probe-checked (sign then verify a test message) before being returned.
    pub fn generate<R: Rng + ?Sized>(
        day_index: u32,
        modulus_bits: u32,
        rng: &mut R,
    ) -> Result<DayKeyPair, CryptoError> {
        if modulus_bits < 128 || modulus_bits % 2 != 0 {
            return Err(CryptoError::InvalidArgument(
                "modulus must be an even bit count of at least 128",
            ));
        }
        let e = BigUint::from(65537u32);
        loop {
            let (p, q) = gen_prime_pair(modulus_bits / 2, rng);
            let lambda = (&p - 1u32).lcm(&(&q - 1u32));
            if (&e).gcd(&lambda) != BigUint::one() {
                continue;
            }
            let d = e.modinv(&lambda).expect("gcd(e, lambda) = 1");
            let n = &p * &q;
            if n.bits() != u64::from(modulus_bits) {
                continue;
            }

            let prefix_bits = modulus_bits - EPHID_BITS;
            // Top bit clear keeps every padded message below N.
            let prefix = rng.gen_biguint(u64::from(prefix_bits) - 1);

            let pair = DayKeyPair {
                public: DayPublicKey {
                    day_index,
                    verify_exp: e.clone(),
                    modulus: n,
                    prefix,
                    prefix_bits,
                },
                sign_exp: d,
            };
            if pair.probe_check() {
                return Ok(pair);
            }
        }
    }

    /// Rebuilds a key pair from stored components, probe-checking the
    /// exponents. Width invariants are not enforced, which permits the toy
    /// moduli used in tests and small simulations.
    pub fn from_parts(
        day_index: u32,
        verify_exp: BigUint,
        sign_exp: BigUint,
        modulus: BigUint,
        prefix: BigUint,
        prefix_bits: u32,
    ) -> Result<DayKeyPair, CryptoError> {
        if modulus.bits() < 8 {
            return Err(CryptoError::InvalidArgument("modulus too small"));
        }
        let pair = DayKeyPair {
            public: DayPublicKey {
                day_index,
                verify_exp,
                modulus,
                prefix,
                prefix_bits,
            },
            sign_exp,
        };
        if !pair.probe_check() {
            return Err(CryptoError::InvalidArgument(
                "exponents fail the sign/verify probe",
            ));
        }
        Ok(pair)
    }

    pub fn public(&self) -> &DayPublicKey {
        &self.public
    }

    /// Signing exponent `d_t`, exposed for key-file persistence only.
    pub fn sign_exp(&self) -> &BigUint {
        &self.sign_exp
    }

    /// Signs a blinded value: `blinded^{d_t} mod N`.
    pub fn sign_blinded(&self, blinded: &BigUint) -> Result<BigUint, CryptoError> {
        if blinded.is_zero() || *blinded >= self.public.modulus {
            return Err(CryptoError::InvalidArgument(
                "blinded value out of range (0, N)",
            ));
        }
        Ok(blinded.modpow(&self.sign_exp, &self.public.modulus))
    }

    fn probe_check(&self) -> bool {
        let probe = BigUint::from(2u32);
        if probe >= self.public.modulus {
            return false;
        }
        let signed = probe.modpow(&self.sign_exp, &self.public.modulus);
        signed.modpow(&self.public.verify_exp, &self.public.modulus) == probe
    }
}

/// Free-function form of [`DayKeyPair::sign_blinded`].
pub fn sign_blinded(blinded: &BigUint, keys: &DayKeyPair) -> Result<BigUint, CryptoError> {
    keys.sign_blinded(blinded)
}

/// Blinds an arbitrary message integer: `m * rhat^{e_t} mod N`.
pub fn blind_int(
    message: &BigUint,
    rhat: &BigUint,
    keys: &DayPublicKey,
) -> Result<BigUint, CryptoError> {
    check_blinding_factor(rhat, &keys.modulus)?;
    let multiplier = rhat.modpow(&keys.verify_exp, &keys.modulus);
    Ok(message * multiplier % &keys.modulus)
}

/// Blinds an EphID: `(Prefix_t || EphID) * rhat^{e_t} mod N`.
pub fn blind(ephid: &EphId, rhat: &BigUint, keys: &DayPublicKey) -> Result<BigUint, CryptoError> {
    blind_int(&keys.padded_message(ephid), rhat, keys)
}

/// Blinds with a precomputed multiplier `r = rhat^{e_t} mod N`, the form the
/// seed hierarchy derives in bulk.
pub fn blind_with_multiplier(ephid: &EphId, multiplier: &BigUint, keys: &DayPublicKey) -> BigUint {
    keys.padded_message(ephid) * multiplier % &keys.modulus
}

/// Removes a blinding factor: `sd_blinded * rhat^-1 mod N`.
pub fn unblind(
    sd_blinded: &BigUint,
    rhat: &BigUint,
    keys: &DayPublicKey,
) -> Result<BigUint, CryptoError> {
    check_blinding_factor(rhat, &keys.modulus)?;
    let inverse = rhat
        .modinv(&keys.modulus)
        .ok_or(CryptoError::InvalidBlindingFactor)?;
    Ok(sd_blinded * inverse % &keys.modulus)
}

/// Checks `sd^{e_t} mod N == m` for an arbitrary message integer.
pub fn verify_int(message: &BigUint, sd: &BigUint, keys: &DayPublicKey) -> bool {
    if sd.is_zero() || *sd >= keys.modulus {
        return false;
    }
    sd.modpow(&keys.verify_exp, &keys.modulus) == *message
}

/// Checks `sd^{e_t} mod N == Prefix_t || EphID`. Malformed signatures return
/// `false` rather than an error.
pub fn verify_signature(ephid: &EphId, sd: &BigUint, keys: &DayPublicKey) -> bool {
    verify_int(&keys.padded_message(ephid), sd, keys)
}

fn check_blinding_factor(rhat: &BigUint, modulus: &BigUint) -> Result<(), CryptoError> {
    if rhat.is_zero() || rhat >= modulus || rhat.gcd(modulus) != BigUint::one() {
        return Err(CryptoError::InvalidBlindingFactor);
    }
    Ok(())
}

/// Serializes a group element as a fixed-width big-endian byte string.
pub fn to_fixed_be(value: &BigUint, width: usize) -> Result<Vec<u8>, CryptoError> {
    let bytes = value.to_bytes_be();
    if bytes.len() > width {
        return Err(CryptoError::InvalidArgument(
            "value wider than the requested field",
        ));
    }
    let mut out = vec![0u8; width - bytes.len()];
    out.extend_from_slice(&bytes);
    Ok(out)
}

/// Signs a batch of blinded values, in parallel when the `parallel` feature
/// is enabled.
pub fn sign_batch(values: &[BigUint], keys: &DayKeyPair) -> Result<Vec<BigUint>, CryptoError> {
    #[cfg(feature = "parallel")]
    {
        values.par_iter().map(|v| keys.sign_blinded(v)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        sign_batch_seq(values, keys)
    }
}

/// Sequential twin of [`sign_batch`].
pub fn sign_batch_seq(values: &[BigUint], keys: &DayKeyPair) -> Result<Vec<BigUint>, CryptoError> {
    values.iter().map(|v| keys.sign_blinded(v)).collect()
}

/// Verifies a batch of `(EphID, SD)` pairs, in parallel when the `parallel`
/// feature is enabled. Returns `true` only if every pair verifies.
pub fn verify_batch(pairs: &[(EphId, BigUint)], keys: &DayPublicKey) -> bool {
    #[cfg(feature = "parallel")]
    {
        pairs
            .par_iter()
            .all(|(ephid, sd)| verify_signature(ephid, sd, keys))
    }
    #[cfg(not(feature = "parallel"))]
    {
        verify_batch_seq(pairs, keys)
    }
}

/// Sequential twin of [`verify_batch`].
pub fn verify_batch_seq(pairs: &[(EphId, BigUint)], keys: &DayPublicKey) -> bool {
    pairs
        .iter()
        .all(|(ephid, sd)| verify_signature(ephid, sd, keys))
}

/// Generates two distinct primes of `bits` bits each. Child RNG streams are
/// split off deterministically so the search can run on both primes at once.
fn gen_prime_pair<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> (BigUint, BigUint) {
    #[cfg(feature = "parallel")]
    {
        use rand::SeedableRng;
        let mut seed_a = [0u8; 32];
        let mut seed_b = [0u8; 32];
        rng.fill_bytes(&mut seed_a);
        rng.fill_bytes(&mut seed_b);
        let (p, q) = rayon::join(
            || gen_prime(bits, &mut rand_chacha::ChaCha12Rng::from_seed(seed_a)),
            || gen_prime(bits, &mut rand_chacha::ChaCha12Rng::from_seed(seed_b)),
        );
        if p == q {
            let q2 = gen_prime(bits, rng);
            (p, q2)
        } else {
            (p, q)
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let p = gen_prime(bits, rng);
        loop {
            let q = gen_prime(bits, rng);
            if q != p {
                return (p, q);
            }
        }
    }
}

fn gen_prime<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> BigUint {
    assert!(bits >= 16, "prime width too small");
    let top = BigUint::from(3u32) << (bits - 2);
    loop {
        // Top two bits set so the product has the full width; low bit set.
        let mut candidate = rng.gen_biguint(u64::from(bits));
        candidate |= &top;
        candidate |= BigUint::one();
        if passes_trial_division(&candidate) && miller_rabin(&candidate, 32, rng) {
            return candidate;
        }
    }
}

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = 8192usize;
        let mut sieve = vec![true; limit];
        let mut primes = Vec::new();
        for i in 2..limit {
            if sieve[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < limit {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        primes
    })
}

fn passes_trial_division(candidate: &BigUint) -> bool {
    for &p in small_primes() {
        let p_big = BigUint::from(p);
        if *candidate == p_big {
            return true;
        }
        if (candidate % p_big).is_zero() {
            return false;
        }
    }
    true
}

/// Miller-Rabin with random bases; `rounds = 32` gives an error bound of
/// 2^-64 per candidate.
fn miller_rabin<R: Rng + ?Sized>(candidate: &BigUint, rounds: u32, rng: &mut R) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if *candidate < BigUint::from(4u32) {
        return *candidate == two || *candidate == BigUint::from(3u32);
    }
    if (candidate % &two).is_zero() {
        return false;
    }

    let n_minus_one = candidate - &one;
    let trailing = n_minus_one.trailing_zeros().unwrap_or(0);
    let odd_part = &n_minus_one >> trailing;

    'rounds: for _ in 0..rounds {
        let base = rng.gen_biguint_range(&two, &n_minus_one);
        let mut x = base.modpow(&odd_part, candidate);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..trailing {
            x = x.modpow(&two, candidate);
            if x == n_minus_one {
                continue 'rounds;
            }
        }
        return false;
    }
    true
}
