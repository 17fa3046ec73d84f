//! The S(4,12), p = 3 induced-module data for all 3-part partitions of 12, and its recomputation.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::functor::inverse_simple;
use crate::partition::{enumerate_partitions, Partition};
use crate::schur::decomp::{decomposition_row, factors_from_map, factors_to_map, Factor};
use crate::schur::engine::Engine;

pub const APPENDIX_FIXTURE: &str = include_str!("../../../fixtures/appendix_a_p3_n3m4d12.json");
pub const APPENDIX_SHA256: &str = "9d5a365678b4cc8f1f0a584dbb56e403c6a47cfb170845cda9c29bdfbefb6565";
pub const APPENDIX_PATH: &str = "fixtures/appendix_a_p3_n3m4d12.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub sigma: Partition,
    pub nabla_factors: Vec<Factor>,
    pub g43_factors: Vec<Factor>,
    /// Layers as drawn, top first. Kept for reference only.
    #[serde(default)]
    pub display_layers: Vec<Vec<Partition>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCorpus {
    pub p: u32,
    pub n: usize,
    pub m: usize,
    pub d: u32,
    pub entries: Vec<FixtureEntry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl FixtureCorpus {
    /// The corpus shipped with the crate.
    pub fn appendix() -> Result<Self> {
        Self::parse_pinned(APPENDIX_FIXTURE)
    }

    /// Reads a fixture file, which must match the pinned checksum.
    pub fn load(path: &Path) -> Result<Self> {
        Self::parse_pinned(&std::fs::read_to_string(path)?)
    }

    fn parse_pinned(text: &str) -> Result<Self> {
        let sum = sha256_hex(text.as_bytes());
        if sum != APPENDIX_SHA256 {
            return Err(Error::Fixture(format!("checksum {sum} does not match the pinned {APPENDIX_SHA256}")));
        }
        let c: FixtureCorpus = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    /// Transcription checks that need no computation.
    pub fn validate(&self) -> Result<()> {
        let labels: Vec<Partition> = self.entries.iter().map(|e| e.sigma.clone()).collect();
        let mut expected = enumerate_partitions(self.n, self.d);
        let mut got = labels.clone();
        expected.sort();
        got.sort();
        if got != expected {
            return Err(Error::Fixture(format!("entries do not cover Λ⁺({},{})", self.n, self.d)));
        }
        for e in &self.entries {
            let nabla = factors_to_map(&e.nabla_factors);
            let g = factors_to_map(&e.g43_factors);
            if g.get(&e.sigma) != Some(&1) || nabla.get(&e.sigma) != Some(&1) {
                return Err(Error::Fixture(format!("{}: label missing or repeated", e.sigma)));
            }
            for (mu, k) in &g {
                if nabla.get(mu).copied().unwrap_or(0) < *k {
                    return Err(Error::Fixture(format!("{}: G-factor {mu} exceeds ∇", e.sigma)));
                }
                if mu != &e.sigma && mu.len() <= self.n {
                    return Err(Error::Fixture(format!("{}: G-factor {mu} has at most {} parts", e.sigma, self.n)));
                }
            }
            let mut layered: BTreeMap<Partition, u64> = BTreeMap::new();
            for l in e.display_layers.iter().flatten() {
                *layered.entry(l.clone()).or_default() += 1;
            }
            if !e.display_layers.is_empty() && layered != nabla {
                return Err(Error::Fixture(format!("{}: layers disagree with the factor list", e.sigma)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDiff {
    pub sigma: Partition,
    pub nabla_ok: bool,
    pub g43_ok: bool,
    pub nabla_computed: Vec<Factor>,
    pub g43_computed: Vec<Factor>,
    pub submodule_dim: usize,
    pub nabla_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixReport {
    pub entries: Vec<EntryDiff>,
}

impl AppendixReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.nabla_ok && e.g43_ok)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &EntryDiff> {
        self.entries.iter().filter(|e| !(e.nabla_ok && e.g43_ok))
    }
}

/// Recomputes the composition factors of ∇̄(σ) over GL_m and of G^m_n(L(σ)) for every entry.
pub fn reproduce_appendix(engine: &Engine, corpus: &FixtureCorpus) -> Result<AppendixReport> {
    let (n, m, p) = (corpus.n, corpus.m, corpus.p);
    let entries = corpus
        .entries
        .par_iter()
        .map(|e| {
            let row = decomposition_row(engine, &e.sigma, m, p)?;
            let g = inverse_simple(engine, &e.sigma, n, m, p)?;
            Ok(EntryDiff {
                sigma: e.sigma.clone(),
                nabla_ok: row == factors_to_map(&e.nabla_factors),
                g43_ok: g.factor_map() == factors_to_map(&e.g43_factors),
                nabla_computed: factors_from_map(&row),
                g43_computed: g.factors.clone(),
                submodule_dim: g.submodule_dim,
                nabla_dim: g.nabla_dim,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AppendixReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_corpus_is_consistent() {
        let c = FixtureCorpus::appendix().unwrap();
        assert_eq!(c.entries.len(), 19);
        assert_eq!((c.p, c.n, c.m, c.d), (3, 3, 4, 12));
    }

    #[test]
    fn tampering_is_detected() {
        let edited = APPENDIX_FIXTURE.replacen("\"mult\": 1", "\"mult\": 2", 1);
        assert!(matches!(FixtureCorpus::parse_pinned(&edited), Err(Error::Fixture(_))));
        let mut c = FixtureCorpus::appendix().unwrap();
        c.entries[0].g43_factors.push(Factor { mu: crate::part![11, 1], mult: 1 });
        assert!(c.validate().is_err());
    }
}
