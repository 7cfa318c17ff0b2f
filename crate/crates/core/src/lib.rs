//! Blind-signed ephemeral identifiers for digital contact tracing.
//!
//! A daily signer issues RSA blind signatures over ephemeral identifiers
//! (EphIDs) through a cut-and-choose audit, so that broadcast identifiers are
//! tied to a verified real-world identity without the signer learning which
//! identifier belongs to whom. Broadcast beacons carry a truncated MAC under a
//! TESLA key chain, letting receivers verify identifiers in place when the
//! interval key is released and drop bogus traffic before it reaches long-term
//! storage.
//!
//! Module map:
//! - [`crypto`]: PRF/PRG, raw-RSA blind-signature arithmetic, truncated MACs,
//!   Merkle trees.
//! - [`ephid`]: per-day seed hierarchy and EphID/blinding derivation.
//! - [`registration`]: the cut-and-choose issuance protocol and its wire
//!   format.
//! - [`tesla`]: key chains, authenticator issuance and retrieval, datagram
//!   key release.
//! - [`beacon`]: the 31-byte broadcast beacon codec.
//! - [`store`]: the receiver pipeline (buffer, verify in place, persist,
//!   prune).
//! - [`exposure`]: positive-case publication, matching, and response-code
//!   tallying on a bulletin board.
//!
//! Batch operations use rayon when the `parallel` feature (default) is
//! enabled; `*_seq` variants always run sequentially.

pub mod beacon;
pub mod clock;
pub mod crypto;
pub mod ephid;
pub mod exposure;
pub mod registration;
pub mod store;
pub mod tesla;

mod types;

pub use types::{AuthTag, EphId, Seed, AUTH_TAG_LEN, EPHID_LEN, SEED_LEN};
