//! Conjunctive hierarchical secret sharing over `F_p[x]`.
//!
//! Participants are split into levels `P_1, ..., P_m` with strictly
//! increasing thresholds `t_1 < ... < t_m`. A set `A` is authorized iff it
//! holds at least `t_ℓ` participants from levels `1..=ℓ`, for every `ℓ`.
//! Shares are residues modulo public pairwise coprime polynomials, and
//! secrets are recovered with the polynomial Chinese remainder theorem.
//! Level-indexed one-way functions let lower-level shares take part in
//! higher-level reconstructions.
//!
//! ```
//! use chss::{HashFamily, HierarchyConfig, Polynomial, PrimeModulus, Secret};
//! use rand::SeedableRng;
//!
//! let p = PrimeModulus::new(7)?;
//! let moduli = [[1, 1], [2, 1], [3, 1]]
//!     .iter()
//!     .map(|c| Polynomial::new(p, c.to_vec()))
//!     .collect::<Result<Vec<_>, _>>()?;
//! let cfg = HierarchyConfig::new(p, 1, vec![1, 2], vec![1, 2], moduli, "std-v1")?;
//! let family = HashFamily::new("std-v1", p, cfg.levels())?;
//!
//! let mut rng = rand::rngs::StdRng::seed_from_u64(1);
//! let secret = Secret::new(Polynomial::new(p, vec![5])?, cfg.d0())?;
//! let (shares, bulletin) = chss::split(&secret, &cfg, &family, &mut rng)?;
//!
//! // participant 1 (level 1) plus one top-level participant
//! let pair = [shares[0].clone(), shares[2].clone()];
//! assert_eq!(chss::reconstruct(&bulletin, &family, &pair)?, secret);
//! # Ok::<(), chss::Error>(())
//! ```

pub mod access;
pub mod crt;
pub mod error;
pub mod field;
pub mod hash;
pub mod io;
pub mod oracle;
pub mod poly;
pub mod scheme;

pub use access::{HierarchyConfig, ParticipantSet, ValidationReport, Violation};
pub use crt::{check_pairwise_coprime, crt_solve, CongruenceSystem};
pub use error::{Error, Result};
pub use field::PrimeModulus;
pub use hash::HashFamily;
pub use poly::Polynomial;
pub use scheme::{
    level_residue, reconstruct, recover_level, split, split_with_transcript, LevelPolynomial, PublicBulletin,
    Secret, ShareBundle, Transcript,
};
