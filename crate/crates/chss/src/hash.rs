//! Level-indexed one-way functions `h_ℓ` and the coefficient-wise masking
//! operator `H_ℓ`.
//!
//! The `std-v1` family hashes `family_id ‖ 0x00 ‖ level (u32 BE) ‖ input
//! (u64 BE)` with SHA-256 and keeps the top `⌊log2 p⌋` bits, so outputs lie in
//! `[0, 2^⌊log2 p⌋) ⊆ [0, p)`. That range is not uniform over F_p unless p is
//! a power of two. Distinct levels are separated by the level tag.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::poly::Polynomial;

pub const STD_V1: &str = "std-v1";
/// Identity stub for tests and the counting oracle. Not one-way.
pub const TEST_IDENTITY: &str = "test-identity";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    StdV1,
    Identity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashFamily {
    family_id: String,
    kind: Kind,
    p: PrimeModulus,
    levels: usize,
    out_bits: u32,
}

impl HashFamily {
    pub fn new(family_id: &str, p: PrimeModulus, levels: usize) -> Result<Self> {
        let kind = match family_id {
            STD_V1 => Kind::StdV1,
            TEST_IDENTITY => Kind::Identity,
            other => return Err(Error::UnknownHashFamily(other.to_string())),
        };
        if levels == 0 {
            return Err(Error::InvalidArgument("hash family needs at least one level".into()));
        }
        Ok(HashFamily {
            family_id: family_id.to_string(),
            kind,
            p,
            levels,
            out_bits: p.floor_log2(),
        })
    }

    pub fn id(&self) -> &str {
        &self.family_id
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn out_bits(&self) -> u32 {
        self.out_bits
    }

    pub fn is_identity(&self) -> bool {
        self.kind == Kind::Identity
    }

    /// `h_ℓ(input)`.
    pub fn h(&self, level: usize, input: u64) -> Result<u64> {
        if level == 0 || level > self.levels {
            return Err(Error::LevelOutOfRange {
                level,
                m: self.levels,
            });
        }
        if input >= self.p.value() {
            return Err(Error::CoefficientOutOfRange {
                value: input,
                p: self.p.value(),
            });
        }
        Ok(self.h_unchecked(level, input))
    }

    pub(crate) fn h_unchecked(&self, level: usize, input: u64) -> u64 {
        match self.kind {
            Kind::Identity => input,
            Kind::StdV1 => {
                let mut hasher = Sha256::new();
                hasher.update(self.family_id.as_bytes());
                hasher.update([0u8]);
                hasher.update((level as u32).to_be_bytes());
                hasher.update(input.to_be_bytes());
                let digest = hasher.finalize();
                let mut head = [0u8; 8];
                head.copy_from_slice(&digest[..8]);
                u64::from_be_bytes(head) >> (64 - self.out_bits)
            }
        }
    }

    /// `H_ℓ(c)`: `h_ℓ` applied to each of the `width` coefficients of `c`,
    /// absent coefficients read as zero.
    pub fn mask_poly(&self, level: usize, c: &Polynomial, width: usize) -> Result<Polynomial> {
        if c.modulus() != self.p {
            return Err(Error::ModulusMismatch(self.p.value(), c.modulus().value()));
        }
        if !c.degree_below(width) {
            return Err(Error::WidthExceeded {
                degree: c.len() - 1,
                width,
            });
        }
        // level check once, then the unchecked path per coefficient
        self.h(level, 0)?;
        let coeffs = (0..width).map(|j| self.h_unchecked(level, c.coeff(j))).collect();
        Ok(Polynomial::from_reduced(self.p, coeffs))
    }
}
