//! Share generation and secret reconstruction.
//!
//! The dealer splits `s = s_1 + ... + s_m` into per-level parts, lifts each
//! to a level polynomial `f_ℓ = s_ℓ + α_ℓ·x^d0` of degree below
//! `Σ_{i≤t_ℓ} d_i`, and hands out:
//!
//! * a uniformly random share `c_i` to participants at levels `< m`;
//! * `c_i = f_m mod m_i` to participants at the top level.
//!
//! Lower-level participants reach higher-level polynomials through the
//! published values `u[ℓ,i] = (f_ℓ - H_ℓ(c_i)) mod m_i`. Any authorized set
//! recovers every `f_ℓ` by CRT and the secret as `Σ f_ℓ mod x^d0`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::access::{HierarchyConfig, ParticipantSet};
use crate::crt::CongruenceSystem;
use crate::error::{Error, Result};
use crate::hash::HashFamily;
use crate::poly::Polynomial;

/// A secret polynomial of degree below `d0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Secret(Polynomial);

impl Secret {
    pub fn new(s: Polynomial, d0: usize) -> Result<Self> {
        if !s.degree_below(d0) {
            return Err(Error::SecretTooLarge {
                degree: s.len() - 1,
                d0,
            });
        }
        Ok(Secret(s))
    }

    pub fn random<R: Rng + ?Sized>(cfg: &HierarchyConfig, rng: &mut R) -> Self {
        Secret(Polynomial::random_below(cfg.p(), cfg.d0(), rng))
    }

    pub fn poly(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_poly(self) -> Polynomial {
        self.0
    }
}

/// One participant's private share `c_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShareBundle {
    pub participant: usize,
    pub level: usize,
    pub c: Polynomial,
}

/// `f_ℓ` as recovered by a set of participants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPolynomial {
    pub level: usize,
    pub f: Polynomial,
}

/// The dealer's internal randomness. Only for testing and the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    /// `s_1..s_m`.
    pub secret_parts: Vec<Polynomial>,
    /// `α_1..α_m`.
    pub alphas: Vec<Polynomial>,
    /// `f_1..f_m`.
    pub level_polys: Vec<Polynomial>,
}

/// Everything the dealer publishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicBulletin {
    config: HierarchyConfig,
    hash_family: String,
    u: BTreeMap<(usize, usize), Polynomial>,
}

impl PublicBulletin {
    /// Validates the key domain and degree bounds of `u`.
    pub fn new(
        config: HierarchyConfig,
        hash_family: impl Into<String>,
        u: BTreeMap<(usize, usize), Polynomial>,
    ) -> Result<Self> {
        let expected = bulletin_key_domain(&config);
        let actual: BTreeSet<(usize, usize)> = u.keys().copied().collect();
        if let Some(&(level, id)) = expected.difference(&actual).next() {
            return Err(Error::MissingBulletinEntry { level, id });
        }
        if let Some(&(level, id)) = actual.difference(&expected).next() {
            return Err(Error::MalformedConfig(format!(
                "unexpected bulletin entry for level {level}, participant {id}"
            )));
        }
        for (&(level, id), value) in &u {
            if value.modulus() != config.p() || !value.degree_below(config.degree(id)) {
                return Err(Error::MalformedConfig(format!(
                    "bulletin entry ({level},{id}) is not reduced modulo m_{id}"
                )));
            }
        }
        Ok(PublicBulletin {
            config,
            hash_family: hash_family.into(),
            u,
        })
    }

    pub fn config(&self) -> &HierarchyConfig {
        &self.config
    }

    pub fn hash_family(&self) -> &str {
        &self.hash_family
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Polynomial> {
        &self.u
    }

    pub fn get(&self, level: usize, id: usize) -> Option<&Polynomial> {
        self.u.get(&(level, id))
    }

    /// Rebuilds the hash family this bulletin was produced with.
    pub fn family(&self) -> Result<HashFamily> {
        HashFamily::new(&self.hash_family, self.config.p(), self.config.levels())
    }

    /// Mutable access for negative tests (corrupting a published value).
    pub fn entries_mut(&mut self) -> &mut BTreeMap<(usize, usize), Polynomial> {
        &mut self.u
    }
}

/// `{(ℓ,i) : ℓ < m, i ≤ N_ℓ} ∪ {(m,i) : i ≤ N_{m-1}}`.
pub fn bulletin_key_domain(cfg: &HierarchyConfig) -> BTreeSet<(usize, usize)> {
    let m = cfg.levels();
    let mut keys = BTreeSet::new();
    for level in 1..m {
        for id in 1..=cfg.prefix(level) {
            keys.insert((level, id));
        }
    }
    for id in 1..=cfg.prefix(m - 1) {
        keys.insert((m, id));
    }
    keys
}

fn check_family(cfg: &HierarchyConfig, family: &HashFamily) -> Result<()> {
    if family.p() != cfg.p() {
        return Err(Error::ModulusMismatch(cfg.p().value(), family.p().value()));
    }
    if family.levels() != cfg.levels() {
        return Err(Error::InvalidArgument(format!(
            "hash family has {} levels, config has {}",
            family.levels(),
            cfg.levels()
        )));
    }
    Ok(())
}

fn check_bulletin_family(bulletin: &PublicBulletin, family: &HashFamily) -> Result<()> {
    if family.id() != bulletin.hash_family {
        return Err(Error::HashFamilyMismatch {
            bulletin: bulletin.hash_family.clone(),
            given: family.id().to_string(),
        });
    }
    check_family(&bulletin.config, family)
}

/// Deals `secret`. Returns shares ordered by participant id.
pub fn split<R: Rng + ?Sized>(
    secret: &Secret,
    cfg: &HierarchyConfig,
    family: &HashFamily,
    rng: &mut R,
) -> Result<(Vec<ShareBundle>, PublicBulletin)> {
    let (shares, bulletin, _) = split_with_transcript(secret, cfg, family, rng)?;
    Ok((shares, bulletin))
}

/// [`split`], also returning the dealer's transcript.
///
/// Randomness is consumed in a fixed order: `s_1..s_{m-1}`, `α_1..α_m`,
/// then `r_1..r_{N_{m-1}}`.
pub fn split_with_transcript<R: Rng + ?Sized>(
    secret: &Secret,
    cfg: &HierarchyConfig,
    family: &HashFamily,
    rng: &mut R,
) -> Result<(Vec<ShareBundle>, PublicBulletin, Transcript)> {
    let report = cfg.validate();
    if !report.is_valid() {
        return Err(Error::InvalidConfig(report.to_string()));
    }
    check_family(cfg, family)?;
    let p = cfg.p();
    let d0 = cfg.d0();
    if secret.0.modulus() != p {
        return Err(Error::ModulusMismatch(p.value(), secret.0.modulus().value()));
    }
    if !secret.0.degree_below(d0) {
        return Err(Error::SecretTooLarge {
            degree: secret.0.len() - 1,
            d0,
        });
    }
    let m = cfg.levels();

    let mut secret_parts = Vec::with_capacity(m);
    let mut rest = secret.0.clone();
    for _ in 1..m {
        let part = Polynomial::random_below(p, d0, rng);
        rest = rest.sub(&part)?;
        secret_parts.push(part);
    }
    secret_parts.push(rest);

    let mut alphas = Vec::with_capacity(m);
    let mut level_polys = Vec::with_capacity(m);
    for level in 1..=m {
        let alpha = Polynomial::random_below(p, cfg.level_degree_bound(level) - d0, rng);
        let f = secret_parts[level - 1].add(&alpha.shift(d0))?;
        alphas.push(alpha);
        level_polys.push(f);
    }

    let lower = cfg.prefix(m - 1);
    let mut shares = Vec::with_capacity(cfg.participants());
    for id in 1..=cfg.participants() {
        let c = if id <= lower {
            Polynomial::random_below(p, cfg.degree(id), rng)
        } else {
            level_polys[m - 1].rem(cfg.modulus_of(id))?
        };
        shares.push(ShareBundle {
            participant: id,
            level: cfg.level_of(id)?,
            c,
        });
    }

    let mut u = BTreeMap::new();
    for (level, id) in bulletin_key_domain(cfg) {
        let share = &shares[id - 1];
        let mi = cfg.modulus_of(id);
        let masked = family.mask_poly(level, &share.c, cfg.degree(id))?;
        let value = level_polys[level - 1].sub(&masked)?.rem(mi)?;
        u.insert((level, id), value);
    }

    let bulletin = PublicBulletin::new(cfg.clone(), family.id(), u)?;
    let transcript = Transcript {
        secret_parts,
        alphas,
        level_polys,
    };
    Ok((shares, bulletin, transcript))
}

/// Checks a share against the config layout and degree bound.
pub fn check_share(cfg: &HierarchyConfig, share: &ShareBundle) -> Result<()> {
    cfg.check_participant(share.participant)?;
    let id = share.participant;
    let level = cfg.level_of(id)?;
    if share.level != level {
        return Err(Error::BadShare {
            id,
            reason: format!("claims level {} but participant {id} is at level {level}", share.level),
        });
    }
    if share.c.modulus() != cfg.p() {
        return Err(Error::ModulusMismatch(cfg.p().value(), share.c.modulus().value()));
    }
    if !share.c.degree_below(cfg.degree(id)) {
        return Err(Error::BadShare {
            id,
            reason: format!("share degree must be below {}", cfg.degree(id)),
        });
    }
    Ok(())
}

/// `c_i^(ℓ)`: the residue participant `i` contributes to level `ℓ`'s system.
pub fn level_residue(
    bulletin: &PublicBulletin,
    family: &HashFamily,
    share: &ShareBundle,
    level: usize,
) -> Result<Polynomial> {
    check_bulletin_family(bulletin, family)?;
    let cfg = &bulletin.config;
    cfg.check_level(level)?;
    check_share(cfg, share)?;
    let id = share.participant;
    if id > cfg.prefix(level) {
        return Err(Error::LevelMismatch {
            id,
            participant_level: share.level,
            level,
        });
    }
    let m = cfg.levels();
    if level == m && id > cfg.prefix(m - 1) {
        return Ok(share.c.clone());
    }
    let u = bulletin
        .get(level, id)
        .ok_or(Error::MissingBulletinEntry { level, id })?;
    let masked = family.mask_poly(level, &share.c, cfg.degree(id))?;
    masked.add(u)?.rem(cfg.modulus_of(id))
}

fn distinct_ids(shares: &[ShareBundle]) -> Result<ParticipantSet> {
    let mut set = ParticipantSet::new();
    for s in shares {
        if !set.insert(s.participant) {
            return Err(Error::DuplicateShare(s.participant));
        }
    }
    Ok(set)
}

/// CRT-solves level `ℓ` from every provided share at a level `<= ℓ`.
pub fn recover_level(
    bulletin: &PublicBulletin,
    family: &HashFamily,
    shares: &[ShareBundle],
    level: usize,
) -> Result<LevelPolynomial> {
    check_bulletin_family(bulletin, family)?;
    let cfg = &bulletin.config;
    cfg.check_level(level)?;
    distinct_ids(shares)?;
    let upper = cfg.prefix(level);
    let eligible: Vec<&ShareBundle> = shares.iter().filter(|s| s.participant <= upper).collect();
    let need = cfg.threshold(level);
    if eligible.len() < need {
        return Err(Error::InsufficientShares {
            level,
            have: eligible.len(),
            need,
        });
    }
    let items = eligible
        .iter()
        .map(|s| {
            let residue = level_residue(bulletin, family, s, level)?;
            Ok((cfg.modulus_of(s.participant).clone(), residue))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = CongruenceSystem::new(items)?.solve()?;
    // extra congruences beyond t_ℓ must agree with a polynomial of the honest degree
    if !f.degree_below(cfg.level_degree_bound(level)) {
        return Err(Error::InconsistentShares { level });
    }
    Ok(LevelPolynomial { level, f })
}

/// Recovers the secret `Σ_ℓ f_ℓ mod x^d0` from an authorized set of shares.
pub fn reconstruct(bulletin: &PublicBulletin, family: &HashFamily, shares: &[ShareBundle]) -> Result<Secret> {
    check_bulletin_family(bulletin, family)?;
    let cfg = &bulletin.config;
    for s in shares {
        check_share(cfg, s)?;
    }
    let set = distinct_ids(shares)?;
    if let Some((level, have, need)) = cfg.first_shortfall(&set)? {
        return Err(Error::NotAuthorized { level, have, need });
    }
    let mut sum = Polynomial::zero(cfg.p());
    for level in 1..=cfg.levels() {
        sum = sum.add(&recover_level(bulletin, family, shares, level)?.f)?;
    }
    Secret::new(sum.truncate(cfg.d0()), cfg.d0())
}
