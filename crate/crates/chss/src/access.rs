//! Hierarchical access structures: level layout, thresholds, moduli, the
//! admissibility conditions on moduli degrees, and Γ-membership.
//!
//! Participants carry 1-based global ids assigned level by level: level 1
//! owns `1..=N_1`, level 2 owns `N_1+1..=N_2`, and so on, where `N_ℓ` is the
//! prefix sum of the level sizes.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::poly::{random_monic_irreducible, Polynomial};

/// Largest `n` for which unauthorized sets are enumerated exhaustively.
pub const MAX_ENUMERATION_PARTICIPANTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyConfig {
    p: PrimeModulus,
    d0: usize,
    level_sizes: Vec<usize>,
    thresholds: Vec<usize>,
    moduli: Vec<Polynomial>,
    hash_family: String,
}

/// One failed admissibility condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum Violation {
    /// Condition (i): a pair of moduli (index 0 is `x^d0`) shares a factor.
    NotCoprime { first: usize, second: usize },
    /// Condition (ii): `d_{i-1} > d_i` (index 0 is `d0`).
    DegreeOrder { index: usize },
    /// Condition (iii) fails at this level.
    DegreeSum { level: usize, lhs: usize, rhs: usize },
    /// `t_{ℓ-1} >= t_ℓ`, or `t_1 = 0`.
    ThresholdMonotonicity { level: usize },
    /// `t_ℓ > N_ℓ`.
    ThresholdFeasibility { level: usize, threshold: usize, available: usize },
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::NotCoprime { .. } => "(i)",
            Violation::DegreeOrder { .. } => "(ii)",
            Violation::DegreeSum { .. } => "(iii)",
            Violation::ThresholdMonotonicity { .. } => "threshold-monotonicity",
            Violation::ThresholdFeasibility { .. } => "threshold-feasibility",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotCoprime { first, second } => {
                write!(f, "(i): moduli m_{first} and m_{second} are not coprime")
            }
            Violation::DegreeOrder { index } => {
                write!(f, "(ii): d_{} > d_{index}", index - 1)
            }
            Violation::DegreeSum { level, lhs, rhs } => {
                write!(f, "(iii): at level {level}, {lhs} > {rhs}")
            }
            Violation::ThresholdMonotonicity { level } => {
                write!(f, "threshold-monotonicity: thresholds not strictly increasing at level {level}")
            }
            Violation::ThresholdFeasibility { level, threshold, available } => write!(
                f,
                "threshold-feasibility: level {level} needs {threshold} but only {available} participants exist up to it"
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: &str) -> bool {
        self.violations.iter().any(|v| v.code() == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&lines.join("; "))
    }
}

/// A set of participant ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParticipantSet(BTreeSet<usize>);

impl ParticipantSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.contains(&id)
    }

    pub fn insert(&mut self, id: usize) -> bool {
        self.0.insert(id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &ParticipantSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<usize> for ParticipantSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ParticipantSet(iter.into_iter().collect())
    }
}

impl fmt::Display for ParticipantSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

impl HierarchyConfig {
    /// Checks structure only (shapes, field, nonconstant moduli). The
    /// admissibility conditions are reported by [`HierarchyConfig::validate`].
    pub fn new(
        p: PrimeModulus,
        d0: usize,
        level_sizes: Vec<usize>,
        thresholds: Vec<usize>,
        moduli: Vec<Polynomial>,
        hash_family: impl Into<String>,
    ) -> Result<Self> {
        if d0 == 0 {
            return Err(Error::MalformedConfig("d0 must be at least 1".into()));
        }
        if level_sizes.is_empty() {
            return Err(Error::MalformedConfig("at least one level is required".into()));
        }
        if level_sizes.contains(&0) {
            return Err(Error::MalformedConfig("level sizes must be positive".into()));
        }
        if thresholds.len() != level_sizes.len() {
            return Err(Error::MalformedConfig(format!(
                "{} levels but {} thresholds",
                level_sizes.len(),
                thresholds.len()
            )));
        }
        let n: usize = level_sizes.iter().sum();
        if moduli.len() != n {
            return Err(Error::MalformedConfig(format!(
                "{n} participants but {} moduli",
                moduli.len()
            )));
        }
        for (i, m) in moduli.iter().enumerate() {
            if m.modulus() != p {
                return Err(Error::MalformedConfig(format!(
                    "modulus m_{} is over F_{}, config uses F_{p}",
                    i + 1,
                    m.modulus()
                )));
            }
            if m.degree().unwrap_or(0) == 0 {
                return Err(Error::MalformedConfig(format!("modulus m_{} is constant", i + 1)));
            }
        }
        Ok(HierarchyConfig {
            p,
            d0,
            level_sizes,
            thresholds,
            moduli,
            hash_family: hash_family.into(),
        })
    }

    /// Draws distinct monic irreducible moduli of the requested degrees,
    /// never `x`, so condition (i) and pairwise coprimality hold by
    /// construction. The remaining conditions are left to
    /// [`HierarchyConfig::validate`].
    pub fn generate<R: Rng + ?Sized>(
        p: PrimeModulus,
        d0: usize,
        level_sizes: Vec<usize>,
        thresholds: Vec<usize>,
        degrees: &[usize],
        hash_family: impl Into<String>,
        rng: &mut R,
    ) -> Result<Self> {
        let n: usize = level_sizes.iter().sum();
        if degrees.len() != n {
            return Err(Error::MalformedConfig(format!(
                "{n} participants but {} degrees",
                degrees.len()
            )));
        }
        let mut moduli: Vec<Polynomial> = Vec::with_capacity(n);
        for &d in degrees {
            let m = random_monic_irreducible(p, d, rng, &moduli)?;
            moduli.push(m);
        }
        Self::new(p, d0, level_sizes, thresholds, moduli, hash_family)
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn d0(&self) -> usize {
        self.d0
    }

    /// `x^d0`.
    pub fn m0(&self) -> Polynomial {
        Polynomial::monomial(self.p, self.d0, 1)
    }

    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    pub fn thresholds(&self) -> &[usize] {
        &self.thresholds
    }

    pub fn moduli(&self) -> &[Polynomial] {
        &self.moduli
    }

    pub fn hash_family(&self) -> &str {
        &self.hash_family
    }

    /// Returns a copy with a different hash family id.
    pub fn with_hash_family(&self, id: impl Into<String>) -> Self {
        HierarchyConfig {
            hash_family: id.into(),
            ..self.clone()
        }
    }

    /// Number of levels `m`.
    pub fn levels(&self) -> usize {
        self.level_sizes.len()
    }

    /// Number of participants `n`.
    pub fn participants(&self) -> usize {
        self.moduli.len()
    }

    /// `t_ℓ`, 1-based.
    pub fn threshold(&self, level: usize) -> usize {
        self.thresholds[level - 1]
    }

    /// `N_ℓ = n_1 + ... + n_ℓ`; `N_0 = 0`.
    pub fn prefix(&self, level: usize) -> usize {
        self.level_sizes[..level].iter().sum()
    }

    /// Modulus `m_i` of participant `id` (1-based).
    pub fn modulus_of(&self, id: usize) -> &Polynomial {
        &self.moduli[id - 1]
    }

    /// `d_i`; `degree(0)` is `d0`.
    pub fn degree(&self, id: usize) -> usize {
        if id == 0 {
            self.d0
        } else {
            self.moduli[id - 1].degree().expect("moduli are nonconstant")
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        (1..=self.participants()).map(|i| self.degree(i)).collect()
    }

    /// `Σ_{i=1}^{t_ℓ} d_i`, the degree bound of the level polynomial `f_ℓ`.
    pub fn level_degree_bound(&self, level: usize) -> usize {
        (1..=self.threshold(level)).map(|i| self.degree(i)).sum()
    }

    pub fn check_participant(&self, id: usize) -> Result<()> {
        if id == 0 || id > self.participants() {
            Err(Error::ParticipantOutOfRange {
                id,
                n: self.participants(),
            })
        } else {
            Ok(())
        }
    }

    pub fn check_level(&self, level: usize) -> Result<()> {
        if level == 0 || level > self.levels() {
            Err(Error::LevelOutOfRange {
                level,
                m: self.levels(),
            })
        } else {
            Ok(())
        }
    }

    /// Level `ℓ` with `N_{ℓ-1} < id <= N_ℓ`.
    pub fn level_of(&self, id: usize) -> Result<usize> {
        self.check_participant(id)?;
        let mut upper = 0;
        for (idx, size) in self.level_sizes.iter().enumerate() {
            upper += size;
            if id <= upper {
                return Ok(idx + 1);
            }
        }
        unreachable!("id checked against n")
    }

    /// Every admissibility condition the config violates.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.participants();

        // (i): x^d0 is coprime to m_i iff m_i(0) != 0
        for (idx, mi) in self.moduli.iter().enumerate() {
            if mi.coeff(0) == 0 {
                violations.push(Violation::NotCoprime { first: 0, second: idx + 1 });
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let g = Polynomial::gcd(&self.moduli[a], &self.moduli[b]).expect("same field, nonzero");
                if !g.is_one() {
                    violations.push(Violation::NotCoprime { first: a + 1, second: b + 1 });
                }
            }
        }
        let degrees = self.degrees();
        violations.extend(Self::check_shape(self.d0, &self.level_sizes, &self.thresholds, &degrees).violations);
        ValidationReport { violations }
    }

    /// The conditions that depend only on `d0`, the layout, the thresholds
    /// and the moduli degrees: threshold order and feasibility, (ii), (iii).
    pub fn check_shape(d0: usize, level_sizes: &[usize], thresholds: &[usize], degrees: &[usize]) -> ValidationReport {
        let mut violations = Vec::new();
        let n = degrees.len();
        let mut available = 0;
        for (idx, &t) in thresholds.iter().enumerate() {
            let level = idx + 1;
            if (level == 1 && t == 0) || (level > 1 && thresholds[idx - 1] >= t) {
                violations.push(Violation::ThresholdMonotonicity { level });
            }
            available += level_sizes.get(idx).copied().unwrap_or(0);
            if t > available {
                violations.push(Violation::ThresholdFeasibility {
                    level,
                    threshold: t,
                    available,
                });
            }
        }

        // (ii)
        for i in 1..=n {
            let prev = if i == 1 { d0 } else { degrees[i - 2] };
            if prev > degrees[i - 1] {
                violations.push(Violation::DegreeOrder { index: i });
            }
        }

        // (iii): d0 + Σ_{i=n-t+2}^{n} d_i <= Σ_{i=1}^{t} d_i; empty sum when t = 1
        for (idx, &t) in thresholds.iter().enumerate() {
            if t == 0 || t > n {
                continue;
            }
            let top: usize = degrees[n + 1 - t..].iter().sum();
            let lhs = d0 + top;
            let rhs: usize = degrees[..t].iter().sum();
            if lhs > rhs {
                violations.push(Violation::DegreeSum { level: idx + 1, lhs, rhs });
            }
        }
        ValidationReport { violations }
    }

    /// Builds a participant set, checking every id.
    pub fn participant_set<I: IntoIterator<Item = usize>>(&self, ids: I) -> Result<ParticipantSet> {
        let set: ParticipantSet = ids.into_iter().collect();
        for id in set.ids() {
            self.check_participant(id)?;
        }
        Ok(set)
    }

    /// `A^(ℓ)`: members of `set` at levels `<= ℓ`.
    pub fn level_prefix(&self, set: &ParticipantSet, level: usize) -> Result<ParticipantSet> {
        self.check_level(level)?;
        let upper = self.prefix(level);
        Ok(set.ids().filter(|&i| i <= upper).collect())
    }

    /// The first level whose prefix threshold `set` misses, with
    /// `(level, have, need)`.
    pub fn first_shortfall(&self, set: &ParticipantSet) -> Result<Option<(usize, usize, usize)>> {
        for id in set.ids() {
            self.check_participant(id)?;
        }
        for level in 1..=self.levels() {
            let have = self.level_prefix(set, level)?.len();
            let need = self.threshold(level);
            if have < need {
                return Ok(Some((level, have, need)));
            }
        }
        Ok(None)
    }

    /// Γ-membership: `|A^(ℓ)| >= t_ℓ` for every level.
    pub fn is_authorized(&self, set: &ParticipantSet) -> Result<bool> {
        Ok(self.first_shortfall(set)?.is_none())
    }

    /// All `B` with `|B| = t_m - 1` and `|B^(ℓ)| >= t_ℓ` for every `ℓ < m`.
    pub fn worst_case_unauthorized_sets(&self) -> Result<Vec<ParticipantSet>> {
        let n = self.participants();
        if n > MAX_ENUMERATION_PARTICIPANTS {
            return Err(Error::BudgetExceeded(format!(
                "{n} participants, enumeration limit is {MAX_ENUMERATION_PARTICIPANTS}"
            )));
        }
        let m = self.levels();
        let size = match self.threshold(m).checked_sub(1) {
            Some(s) => s,
            None => return Ok(Vec::new()),
        };
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let set: ParticipantSet = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let ok = (1..m).all(|level| {
                let upper = self.prefix(level);
                set.ids().filter(|&i| i <= upper).count() >= self.threshold(level)
            });
            if ok {
                out.push(set);
            }
        }
        out.sort();
        Ok(out)
    }

    /// All minimal authorized sets: authorized, and removing any member
    /// breaks authorization.
    pub fn minimal_authorized_sets(&self) -> Result<Vec<ParticipantSet>> {
        let n = self.participants();
        if n > MAX_ENUMERATION_PARTICIPANTS {
            return Err(Error::BudgetExceeded(format!(
                "{n} participants, enumeration limit is {MAX_ENUMERATION_PARTICIPANTS}"
            )));
        }
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let set: ParticipantSet = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            if !self.is_authorized(&set)? {
                continue;
            }
            let minimal = set.ids().all(|drop| {
                let smaller: ParticipantSet = set.ids().filter(|&i| i != drop).collect();
                !self.is_authorized(&smaller).expect("ids in range")
            });
            if minimal {
                out.push(set);
            }
        }
        out.sort();
        Ok(out)
    }

    /// `θ = Σ_{i=1}^{t_m} d_i - Σ_{i∈B} d_i - d0`.
    pub fn theta(&self, adversaries: &ParticipantSet) -> Result<i64> {
        let mut total = self.level_degree_bound(self.levels()) as i64 - self.d0 as i64;
        for id in adversaries.ids() {
            self.check_participant(id)?;
            total -= self.degree(id) as i64;
        }
        Ok(total)
    }

    /// `d0 / max_i d_i`: secret size over the largest share size.
    pub fn information_rate(&self) -> f64 {
        let max = self.degrees().into_iter().max().unwrap_or(self.d0);
        self.d0 as f64 / max as f64
    }

    pub(crate) fn to_file(&self) -> ConfigFile {
        ConfigFile {
            p: self.p.value(),
            d0: self.d0,
            levels: self.level_sizes.clone(),
            thresholds: self.thresholds.clone(),
            moduli: self.moduli.iter().map(|m| m.to_string()).collect(),
            hash_family: self.hash_family.clone(),
        }
    }

    pub(crate) fn from_file(file: ConfigFile) -> Result<Self> {
        let p = PrimeModulus::new(file.p).map_err(|e| Error::MalformedConfig(e.to_string()))?;
        let moduli = file
            .moduli
            .iter()
            .map(|s| Polynomial::parse(p, s))
            .collect::<Result<Vec<_>>>()?;
        HierarchyConfig::new(p, file.d0, file.levels, file.thresholds, moduli, file.hash_family)
    }

    /// Canonical JSON encoding (fixed field order, no whitespace).
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("config serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile = crate::io::parse_json(text)?;
        Self::from_file(file)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ConfigFile {
    pub p: u64,
    pub d0: usize,
    pub levels: Vec<usize>,
    pub thresholds: Vec<usize>,
    pub moduli: Vec<String>,
    pub hash_family: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn poly(p: u64, c: &[u64]) -> Polynomial {
        Polynomial::new(field(p), c.to_vec()).unwrap()
    }

    /// Moduli with the given degrees; not necessarily coprime.
    fn config_with(p: u64, d0: usize, levels: &[usize], t: &[usize], moduli: Vec<Polynomial>) -> HierarchyConfig {
        HierarchyConfig::new(field(p), d0, levels.to_vec(), t.to_vec(), moduli, "std-v1").unwrap()
    }

    /// p = 7 linear moduli x+1, x+2, ...
    fn linear_config(levels: &[usize], t: &[usize]) -> HierarchyConfig {
        let n: usize = levels.iter().sum();
        let moduli = (1..=n as u64).map(|a| poly(7, &[a, 1])).collect();
        config_with(7, 1, levels, t, moduli)
    }

    #[test]
    fn shape_check_without_moduli() {
        let report = HierarchyConfig::check_shape(1, &[1, 2], &[1, 2], &[1, 1, 2]);
        assert!(report.has("(iii)"));
        assert!(!report.has("(ii)"));
        assert!(HierarchyConfig::check_shape(2, &[2, 2], &[1, 3], &[2; 4]).is_valid());
        assert!(HierarchyConfig::check_shape(2, &[1], &[1], &[1]).has("(ii)"));
        assert!(HierarchyConfig::check_shape(1, &[1, 1], &[2, 2], &[1, 1]).has("threshold-monotonicity"));
    }

    #[test]
    fn equal_degrees_are_valid() {
        let cfg = linear_config(&[3], &[2]);
        assert!(cfg.validate().is_valid(), "{}", cfg.validate());
    }

    #[test]
    fn condition_iii_violation() {
        // d0 = 1, degrees 1,1,2 over F_2 (x+1 repeated, deliberately invalid for (i) too)
        let cfg = config_with(
            2,
            1,
            &[1, 2],
            &[1, 2],
            vec![poly(2, &[1, 1]), poly(2, &[1, 1]), poly(2, &[1, 1, 1])],
        );
        let report = cfg.validate();
        assert!(report.violations.contains(&Violation::DegreeSum { level: 2, lhs: 3, rhs: 2 }));
    }

    #[test]
    fn threshold_sequence_checks() {
        let report = linear_config(&[2, 2], &[2, 2]).validate();
        assert!(report.has("threshold-monotonicity"));
        let report = linear_config(&[1, 2], &[2, 3]).validate();
        assert!(report.has("threshold-feasibility"));
        assert!(!report.has("threshold-monotonicity"));
    }

    #[test]
    fn condition_i_and_ii() {
        // m_1 = x shares a factor with x^d0; m_2 = m_3
        let cfg = config_with(
            5,
            1,
            &[3],
            &[2],
            vec![poly(5, &[0, 1]), poly(5, &[1, 1]), poly(5, &[1, 1])],
        );
        let report = cfg.validate();
        assert!(report.violations.contains(&Violation::NotCoprime { first: 0, second: 1 }));
        assert!(report.violations.contains(&Violation::NotCoprime { first: 2, second: 3 }));

        let cfg = config_with(5, 2, &[2], &[1], vec![poly(5, &[1, 1]), poly(5, &[2, 0, 1])]);
        assert!(cfg.validate().violations.contains(&Violation::DegreeOrder { index: 1 }));
    }

    #[test]
    fn structural_errors() {
        let f = field(5);
        assert!(HierarchyConfig::new(f, 0, vec![1], vec![1], vec![poly(5, &[1, 1])], "x").is_err());
        assert!(HierarchyConfig::new(f, 1, vec![2], vec![1], vec![poly(5, &[1, 1])], "x").is_err());
        assert!(HierarchyConfig::new(f, 1, vec![1], vec![1], vec![poly(5, &[3])], "x").is_err());
        assert!(HierarchyConfig::new(f, 1, vec![1], vec![1, 2], vec![poly(5, &[1, 1])], "x").is_err());
        assert!(HierarchyConfig::new(f, 1, vec![1], vec![1], vec![poly(7, &[1, 1])], "x").is_err());
    }

    #[test]
    fn authorization_examples() {
        let cfg = linear_config(&[1, 2], &[1, 2]);
        assert!(cfg.is_authorized(&cfg.participant_set([1, 2]).unwrap()).unwrap());
        assert!(!cfg.is_authorized(&cfg.participant_set([2, 3]).unwrap()).unwrap());
        assert!(cfg.is_authorized(&cfg.participant_set(1..=3).unwrap()).unwrap());
        assert!(matches!(
            cfg.participant_set([4]),
            Err(Error::ParticipantOutOfRange { id: 4, n: 3 })
        ));
        assert_eq!(
            cfg.first_shortfall(&cfg.participant_set([2, 3]).unwrap()).unwrap(),
            Some((1, 0, 1))
        );
    }

    #[test]
    fn level_prefix_examples() {
        let cfg = linear_config(&[2, 3], &[1, 2]);
        let set = cfg.participant_set([1, 3, 5]).unwrap();
        assert_eq!(cfg.level_prefix(&set, 2).unwrap(), set);
        assert_eq!(cfg.level_prefix(&set, 1).unwrap(), cfg.participant_set([1]).unwrap());
        let low = cfg.participant_set([1, 2]).unwrap();
        assert_eq!(cfg.level_prefix(&low, 1).unwrap(), low);
        assert!(matches!(cfg.level_prefix(&set, 3), Err(Error::LevelOutOfRange { .. })));
        assert_eq!(cfg.level_of(2).unwrap(), 1);
        assert_eq!(cfg.level_of(3).unwrap(), 2);
    }

    #[test]
    fn worst_case_examples() {
        let cfg = linear_config(&[3], &[2]);
        let sets = cfg.worst_case_unauthorized_sets().unwrap();
        assert_eq!(sets.len(), 3);
        assert!(sets.iter().all(|s| s.len() == 1));

        let cfg = linear_config(&[1, 2], &[1, 2]);
        assert_eq!(
            cfg.worst_case_unauthorized_sets().unwrap(),
            vec![cfg.participant_set([1]).unwrap()]
        );

        // t_1 = 2 but |B| = t_2 - 1 = 2 must also hit level 1 twice: only {1,2}
        let cfg = linear_config(&[2, 2], &[2, 3]);
        assert_eq!(
            cfg.worst_case_unauthorized_sets().unwrap(),
            vec![cfg.participant_set([1, 2]).unwrap()]
        );

        // t_{m-1} > t_m - 1 only when the sequence is not strictly increasing
        let cfg = linear_config(&[2, 2], &[2, 2]);
        assert!(cfg.worst_case_unauthorized_sets().unwrap().is_empty());

        let big = linear_config(&[6], &[2]);
        assert!(big.worst_case_unauthorized_sets().is_ok());
    }

    #[test]
    fn enumeration_bound() {
        let n = 13;
        let moduli = (1..=n as u64).map(|a| poly(17, &[a, 1])).collect();
        let cfg = config_with(17, 1, &[n], &[2], moduli);
        assert!(matches!(cfg.worst_case_unauthorized_sets(), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn json_round_trip() {
        let cfg = linear_config(&[1, 2], &[1, 2]);
        let text = cfg.to_json();
        assert_eq!(
            text,
            r#"{"p":7,"d0":1,"levels":[1,2],"thresholds":[1,2],"moduli":["1,1","2,1","3,1"],"hash_family":"std-v1"}"#
        );
        let back = HierarchyConfig::from_json(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn information_rate() {
        assert_eq!(linear_config(&[3], &[2]).information_rate(), 1.0);
        let cfg = config_with(5, 1, &[2], &[1], vec![poly(5, &[1, 1]), poly(5, &[2, 0, 1])]);
        assert_eq!(cfg.information_rate(), 0.5);
    }
}
