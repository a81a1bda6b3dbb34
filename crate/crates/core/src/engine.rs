//! Shared state for a run: character tables, configuration-space characters,
//! generator modules and tensor generators, each computed once and optionally
//! persisted.
//!
//! Disk layout under the cache root:
//! * `chartab/n<n>.txt` character tables
//! * `conf/<F>_i<i>_n<n>.txt` decompositions of `F^i_n`
//! * `genmod/<F>_i<i>.txt` generators of `F^i`
//! * `h0/<F>_<i>_<j>.txt` generators of `F^i ⊗ F^j`

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use parking_lot::RwLock;
use serde::Serialize;

use crate::cache::{CharacterStore, DiskCache};
use crate::characters::CharacterVector;
use crate::conf::oracle::{basis_size, oracle_character, DEFAULT_BUDGET};
use crate::conf::plethystic::{calibrate, tier2_character_with, BlockFactors, Calibration, CalibrationCell};
use crate::conf::{ConfError, Family};
use crate::fb_modules::{stabilization_degree, FBModule, Stabilization};
use crate::fi_sharp::{h_zero_with_window, m_functor, GeneratorModule, GeneratorProvenance, DEFAULT_WINDOW};
use crate::rep_algebra::{decompose, kronecker, RepDecomposition};

/// Which character source to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TierPolicy {
    Oracle,
    Plethysm,
    /// The oracle when its basis fits the budget, the plethystic tier otherwise.
    Auto,
}

impl FromStr for TierPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(TierPolicy::Oracle),
            "plethysm" => Ok(TierPolicy::Plethysm),
            "auto" => Ok(TierPolicy::Auto),
            other => Err(format!("unknown tier {other:?} (expected oracle, plethysm or auto)")),
        }
    }
}

/// The source a character actually came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Oracle,
    Plethysm,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Oracle => "oracle",
            Tier::Plethysm => "plethysm",
        })
    }
}

impl FromStr for Tier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Tier::Oracle),
            "plethysm" => Ok(Tier::Plethysm),
            other => Err(format!("unknown tier {other:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub tier: TierPolicy,
    /// Largest oracle basis.
    pub budget: u64,
    /// Degrees checked past each vanishing bound.
    pub window: usize,
    /// Plethystic results are compared with the oracle when its basis is at
    /// most this large.
    pub cross_check_limit: u64,
    pub calibration_degree: usize,
    pub calibration_points: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            tier: TierPolicy::Auto,
            budget: DEFAULT_BUDGET,
            window: DEFAULT_WINDOW,
            cross_check_limit: 20_000,
            calibration_degree: 3,
            calibration_points: 8,
        }
    }
}

/// `F^i` through some degree, with its detected stabilization.
#[derive(Clone, Debug)]
pub struct ConfModule {
    pub family: Family,
    pub degree: usize,
    pub module: FBModule,
    pub stabilization: Stabilization,
    pub sharp_bound: usize,
    pub tier: Tier,
}

impl ConfModule {
    /// Whether stabilization was detected exactly at the sharp bound.
    pub fn is_sharp(&self) -> bool {
        self.stabilization == Stabilization::StableAt(self.sharp_bound)
    }
}

type Tiered<T> = (T, Tier);
type GeneratorMemo<K> = RwLock<HashMap<K, Tiered<Arc<GeneratorModule>>>>;

pub struct Engine {
    store: CharacterStore,
    config: EngineConfig,
    factors: BlockFactors,
    calibration: CalibrationCell,
    conf: RwLock<HashMap<(Family, usize, usize), Tiered<RepDecomposition>>>,
    generators: GeneratorMemo<(Family, usize)>,
    pairs: GeneratorMemo<(Family, usize, usize)>,
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine")
            .field("config", &self.config)
            .field("disk", &self.store.disk().map(DiskCache::root))
            .finish()
    }
}

impl Engine {
    pub fn new(config: EngineConfig, disk: Option<DiskCache>) -> Self {
        let store = match disk {
            Some(d) => CharacterStore::with_disk(d),
            None => CharacterStore::in_memory(),
        };
        Self {
            store,
            config,
            factors: BlockFactors::default(),
            calibration: CalibrationCell::default(),
            conf: RwLock::default(),
            generators: RwLock::default(),
            pairs: RwLock::default(),
        }
    }

    pub fn in_memory() -> Self {
        Self::new(EngineConfig::default(), None)
    }

    pub fn store(&self) -> &CharacterStore {
        &self.store
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    fn disk(&self) -> Option<&DiskCache> {
        self.store.disk()
    }

    pub fn calibration(&self) -> Result<&Calibration, ConfError> {
        self.calibration.get_or_try_init(|| {
            calibrate(
                self.config.calibration_degree,
                self.config.calibration_points,
                self.config.budget,
                &self.factors,
            )
        })
    }

    fn within(&self, degree: usize, n: usize, limit: u64) -> bool {
        basis_size(degree, n) <= BigUint::from(limit)
    }

    /// Character of `F^i_n` under the configured tier policy.
    pub fn conf_character(&self, fam: Family, degree: usize, n: usize) -> Result<Tiered<CharacterVector>, ConfError> {
        let use_oracle = match self.config.tier {
            TierPolicy::Oracle => true,
            TierPolicy::Plethysm => false,
            TierPolicy::Auto => degree == 0 || self.within(degree, n, self.config.budget),
        };
        if use_oracle {
            return Ok((oracle_character(fam, degree, n, self.config.budget)?, Tier::Oracle));
        }
        let conv = self.calibration()?.convention(fam);
        let chi = tier2_character_with(conv, degree, n, &self.factors)?;
        if self.within(degree, n, self.config.cross_check_limit.min(self.config.budget))
            && oracle_character(fam, degree, n, self.config.budget)? != chi
        {
            return Err(ConfError::TierMismatch {
                family: fam,
                degree,
                points: n,
            });
        }
        Ok((chi, Tier::Plethysm))
    }

    /// Decomposition of `F^i_n`.
    pub fn conf_rep(&self, fam: Family, degree: usize, n: usize) -> Result<Tiered<RepDecomposition>, ConfError> {
        let key = (fam, degree, n);
        if let Some(hit) = self.conf.read().get(&key) {
            return Ok(hit.clone());
        }
        let disk_key = format!("conf/{fam}_i{degree}_n{n}.txt");
        let header = format!("conf {fam} i={degree} n={n}");
        let loaded = match self.disk() {
            Some(disk) => disk
                .read(&disk_key)?
                .map(|text| parse_conf_entry(&text, &header, n).ok_or_else(|| corrupt(&disk_key)))
                .transpose()?,
            None => None,
        };
        let value = match loaded {
            Some(v) => v,
            None => {
                let (chi, tier) = self.conf_character(fam, degree, n)?;
                let rep = decompose(&chi, &self.store)?;
                if let Some(disk) = self.disk() {
                    disk.write(&disk_key, &format!("{header}\n{rep}\ntier={tier}\n"))?;
                }
                (rep, tier)
            }
        };
        Ok(self.conf.write().entry(key).or_insert(value).clone())
    }

    /// `F^i` through degree `up_to`, with stabilization searched on that range.
    pub fn conf_fb_module(&self, fam: Family, degree: usize, up_to: usize) -> Result<ConfModule, ConfError> {
        let mut module = FBModule::bounded(up_to);
        let mut tier = Tier::Oracle;
        for n in 0..=up_to {
            let (rep, t) = self.conf_rep(fam, degree, n)?;
            tier = tier.max(t);
            module.insert(n, rep)?;
        }
        let stabilization = stabilization_degree(&module, up_to)?;
        Ok(ConfModule {
            family: fam,
            degree,
            module,
            stabilization,
            sharp_bound: fam.sharp_stable_degree(degree),
            tier,
        })
    }

    /// `H₀(F^i)`, which must live in degrees `[i+1, 2i]` for `i ≥ 1`.
    pub fn conf_generators(&self, fam: Family, degree: usize) -> Result<Tiered<Arc<GeneratorModule>>, ConfError> {
        if let Some(hit) = self.generators.read().get(&(fam, degree)) {
            return Ok(hit.clone());
        }
        let disk_key = format!("genmod/{fam}_i{degree}.txt");
        let loaded = match self.disk() {
            Some(disk) => disk
                .read(&disk_key)?
                .map(|text| parse_tiered_genmod(&text).ok_or_else(|| corrupt(&disk_key)))
                .transpose()?,
            None => None,
        };
        let value = match loaded {
            Some(v) => v,
            None => {
                let bound = 2 * degree;
                let conf = self.conf_fb_module(fam, degree, bound + self.config.window)?;
                let gens = h_zero_with_window(&conf.module, bound, self.config.window)?;
                if degree >= 1 {
                    let (low, high) = (degree + 1, 2 * degree);
                    if let Some((found, _)) = gens.support().find(|(d, _)| *d < low || *d > high) {
                        return Err(ConfError::BandViolation {
                            family: fam,
                            degree,
                            found,
                            low,
                            high,
                        });
                    }
                }
                if let Some(disk) = self.disk() {
                    disk.write(&disk_key, &format!("{}tier={}\n", gens.to_text(), conf.tier))?;
                }
                (Arc::new(gens), conf.tier)
            }
        };
        Ok(self.generators.write().entry((fam, degree)).or_insert(value).clone())
    }

    /// `F^i_n` rebuilt from the generators as `M(H₀(F^i))_n`.
    pub fn conf_power(&self, fam: Family, degree: usize, n: usize) -> Result<RepDecomposition, ConfError> {
        let (gens, _) = self.conf_generators(fam, degree)?;
        Ok(m_functor(&gens, n)?)
    }

    /// `(F^i ⊗ F^j)_n`.
    pub fn tensor_rep(&self, fam: Family, i: usize, j: usize, n: usize) -> Result<RepDecomposition, ConfError> {
        let a = self.conf_power(fam, i, n)?;
        let b = if i == j { a.clone() } else { self.conf_power(fam, j, n)? };
        Ok(kronecker(&a, &b, &self.store)?)
    }

    /// `F^i ⊗ F^j` in degrees `0..=up_to`.
    pub fn tensor_module(&self, fam: Family, i: usize, j: usize, up_to: usize) -> Result<FBModule, ConfError> {
        FBModule::from_fn(up_to, |n| self.tensor_rep(fam, i, j, n))
    }

    /// Vanishing bound used for `H₀(F^i ⊗ F^j)`.
    pub fn pair_bound(i: usize, j: usize) -> usize {
        2 * (i + j)
    }

    /// `H₀(F^i ⊗ F^j)`, computed with vanishing bound `2(i+j)` and checked on
    /// the consistency window.
    pub fn pair_h0(&self, fam: Family, i: usize, j: usize) -> Result<Tiered<Arc<GeneratorModule>>, ConfError> {
        let (i, j) = (i.min(j), i.max(j));
        if let Some(hit) = self.pairs.read().get(&(fam, i, j)) {
            return Ok(hit.clone());
        }
        let disk_key = format!("h0/{fam}_{i}_{j}.txt");
        let loaded = match self.disk() {
            Some(disk) => disk
                .read(&disk_key)?
                .map(|text| parse_tiered_genmod(&text).ok_or_else(|| corrupt(&disk_key)))
                .transpose()?,
            None => None,
        };
        let value = match loaded {
            Some(v) => v,
            None => {
                let tier = self.conf_generators(fam, i)?.1.max(self.conf_generators(fam, j)?.1);
                let bound = Self::pair_bound(i, j);
                let v = self.tensor_module(fam, i, j, bound + self.config.window)?;
                let gens = h_zero_with_window(&v, bound, self.config.window)?;
                if let Some(disk) = self.disk() {
                    disk.write(&disk_key, &format!("{}tier={tier}\n", gens.to_text()))?;
                }
                (Arc::new(gens), tier)
            }
        };
        Ok(self.pairs.write().entry((fam, i, j)).or_insert(value).clone())
    }
}

fn corrupt(key: &str) -> ConfError {
    ConfError::CorruptEntry {
        key: key.to_string(),
        reason: "unreadable entry".into(),
    }
}

fn parse_conf_entry(text: &str, header: &str, n: usize) -> Option<Tiered<RepDecomposition>> {
    let mut lines = text.lines();
    if lines.next()? != header {
        return None;
    }
    let rep = RepDecomposition::parse(lines.next()?, n).ok()?;
    let tier = lines.next()?.strip_prefix("tier=")?.parse().ok()?;
    Some((rep, tier))
}

fn parse_tiered_genmod(text: &str) -> Option<Tiered<Arc<GeneratorModule>>> {
    let gens = GeneratorModule::from_text(text).ok()?;
    if gens.provenance() != GeneratorProvenance::ComputedH0 {
        return None;
    }
    let tier = text.lines().find_map(|l| l.strip_prefix("tier="))?.parse().ok()?;
    Some((Arc::new(gens), tier))
}
