use std::fmt;

/// Width of an ephemeral identifier in bytes (104 bits).
pub const EPHID_LEN: usize = 13;

/// Width of a beacon authenticator in bytes (104 bits).
pub const AUTH_TAG_LEN: usize = 13;

/// Width of all secret seeds and chain keys in bytes.
pub const SEED_LEN: usize = 32;

/// 32-byte secret seed or chain key.
pub type Seed = [u8; SEED_LEN];

/// A 13-byte ephemeral identifier broadcast in beacons.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EphId(pub [u8; EPHID_LEN]);

impl EphId {
    pub fn as_bytes(&self) -> &[u8; EPHID_LEN] {
        &self.0
    }

    /// Reads an identifier from a byte slice of exactly [`EPHID_LEN`] bytes.
    pub fn from_slice(bytes: &[u8]) -> Option<Self> {
        let arr: [u8; EPHID_LEN] = bytes.try_into().ok()?;
        Some(EphId(arr))
    }
}

impl fmt::Display for EphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for EphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EphId({self})")
    }
}

impl AsRef<[u8]> for EphId {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

/// A 13-byte truncated MAC authenticating one EphID for one interval.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct AuthTag(pub [u8; AUTH_TAG_LEN]);

impl AuthTag {
    pub fn as_bytes(&self) -> &[u8; AUTH_TAG_LEN] {
        &self.0
    }

    pub fn from_slice(bytes: &[u8]) -> Option<Self> {
        let arr: [u8; AUTH_TAG_LEN] = bytes.try_into().ok()?;
        Some(AuthTag(arr))
    }
}

impl fmt::Display for AuthTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AuthTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AuthTag({self})")
    }
}

impl AsRef<[u8]> for AuthTag {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}
