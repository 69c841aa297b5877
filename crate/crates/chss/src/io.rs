//! Text file formats for configs, shares, bulletins and debug transcripts.
//!
//! All formats are compact JSON with a fixed field order, so equal values
//! encode to identical bytes. Polynomials use the comma-separated
//! coefficient encoding; share polynomials are zero-padded to the
//! participant's full width `d_i` so that share files have constant size.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::access::{ConfigFile, HierarchyConfig};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scheme::{PublicBulletin, ShareBundle, Transcript};

/// Deserializes JSON, reporting failures with a byte offset.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: if e.is_eof() { text.len() } else { byte_offset(text, e.line(), e.column()) },
        message: e.to_string(),
    })
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let before: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (before + column.saturating_sub(1)).min(text.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BulletinEntry {
    level: usize,
    participant: usize,
    value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BulletinFile {
    config: ConfigFile,
    hash_family: String,
    u: Vec<BulletinEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShareFile {
    pub participant: usize,
    pub level: usize,
    pub c: String,
    pub config_digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TranscriptFile {
    secret_parts: Vec<String>,
    alphas: Vec<String>,
    level_polys: Vec<String>,
}

impl PublicBulletin {
    fn to_file(&self) -> BulletinFile {
        BulletinFile {
            config: self.config().to_file(),
            hash_family: self.hash_family().to_string(),
            u: self
                .entries()
                .iter()
                .map(|(&(level, participant), value)| BulletinEntry {
                    level,
                    participant,
                    value: value.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("bulletin serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: BulletinFile = parse_json(text)?;
        let config = HierarchyConfig::from_file(file.config)?;
        let p = config.p();
        let mut u = std::collections::BTreeMap::new();
        for entry in file.u {
            config.check_participant(entry.participant)?;
            config.check_level(entry.level)?;
            let value = Polynomial::parse(p, &entry.value)?;
            if u.insert((entry.level, entry.participant), value).is_some() {
                return Err(Error::MalformedConfig(format!(
                    "duplicate bulletin entry ({},{})",
                    entry.level, entry.participant
                )));
            }
        }
        PublicBulletin::new(config, file.hash_family, u)
    }

    /// Hex SHA-256 of the canonical bulletin encoding, which embeds the
    /// config. Shares carry it to bind them to this bulletin.
    pub fn config_digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

impl ShareBundle {
    pub fn to_file(&self, bulletin: &PublicBulletin) -> Result<ShareFile> {
        let width = bulletin.config().degree(self.participant);
        Ok(ShareFile {
            participant: self.participant,
            level: self.level,
            c: self.c.to_padded_string(width)?,
            config_digest: bulletin.config_digest(),
        })
    }

    pub fn to_json(&self, bulletin: &PublicBulletin) -> Result<String> {
        Ok(serde_json::to_string(&self.to_file(bulletin)?).expect("share serializes"))
    }
}

impl ShareFile {
    pub fn from_json(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("share serializes")
    }

    /// Number of field coefficients stored in the share.
    pub fn coefficient_count(&self) -> usize {
        if self.c.trim().is_empty() {
            0
        } else {
            self.c.split(',').count()
        }
    }

    /// Decodes against a bulletin, rejecting shares bound to another one.
    pub fn bind(&self, bulletin: &PublicBulletin) -> Result<ShareBundle> {
        let cfg = bulletin.config();
        cfg.check_participant(self.participant)?;
        if self.config_digest != bulletin.config_digest() {
            return Err(Error::BindingMismatch { id: self.participant });
        }
        let width = cfg.degree(self.participant);
        let c = Polynomial::parse(cfg.p(), &self.c)?;
        if self.coefficient_count() != width {
            return Err(Error::BadShare {
                id: self.participant,
                reason: format!("expected {width} coefficients, found {}", self.coefficient_count()),
            });
        }
        let share = ShareBundle {
            participant: self.participant,
            level: self.level,
            c,
        };
        crate::scheme::check_share(cfg, &share)?;
        Ok(share)
    }
}

impl Transcript {
    pub fn to_json(&self) -> String {
        let strings = |v: &[Polynomial]| v.iter().map(|f| f.to_string()).collect();
        let file = TranscriptFile {
            secret_parts: strings(&self.secret_parts),
            alphas: strings(&self.alphas),
            level_polys: strings(&self.level_polys),
        };
        serde_json::to_string(&file).expect("transcript serializes")
    }

    pub fn from_json(text: &str, cfg: &HierarchyConfig) -> Result<Self> {
        let file: TranscriptFile = parse_json(text)?;
        let parse = |v: Vec<String>| {
            v.iter()
                .map(|s| Polynomial::parse(cfg.p(), s))
                .collect::<Result<Vec<_>>>()
        };
        Ok(Transcript {
            secret_parts: parse(file.secret_parts)?,
            alphas: parse(file.alphas)?,
            level_polys: parse(file.level_polys)?,
        })
    }
}

/// Any of the file kinds, as recognized by [`detect`].
#[derive(Debug, Clone)]
pub enum AnyFile {
    Config(HierarchyConfig),
    Share(ShareFile),
    Bulletin(PublicBulletin),
}

/// Parses a file of unknown kind by its top-level keys.
pub fn detect(text: &str) -> Result<AnyFile> {
    let value: serde_json::Value = parse_json(text)?;
    let obj = value.as_object().ok_or(Error::Parse {
        offset: 0,
        message: "expected a JSON object".into(),
    })?;
    if obj.contains_key("u") {
        Ok(AnyFile::Bulletin(PublicBulletin::from_json(text)?))
    } else if obj.contains_key("config_digest") {
        Ok(AnyFile::Share(ShareFile::from_json(text)?))
    } else if obj.contains_key("moduli") {
        Ok(AnyFile::Config(HierarchyConfig::from_json(text)?))
    } else {
        Err(Error::Parse {
            offset: 0,
            message: "not a config, share or bulletin file".into(),
        })
    }
}
