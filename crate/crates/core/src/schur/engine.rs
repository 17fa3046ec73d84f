//! Shared memo of constructed modules, with size guards.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;

use crate::character::weyl_dim;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::schur::module::{OpSet, PolyModule};
use crate::schur::nabla::costandard;
use crate::schur::simple::SimpleData;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    pub max_degree: u32,
    pub max_dim: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Self { max_degree: 18, max_dim: 50_000 }
    }
}

type Key = (u32, usize, Partition);

/// Memoizes ∇(λ), simple-module data and simple characters per (p, n, λ).
///
/// Reads are concurrent; a miss computes outside the lock and then inserts.
pub struct Engine {
    guards: Guards,
    opset: OpSet,
    nabla: RwLock<FxHashMap<Key, Arc<PolyModule>>>,
    simple: RwLock<FxHashMap<Key, Arc<SimpleData>>>,
    chars: RwLock<FxHashMap<Key, Arc<BTreeMap<Partition, u64>>>>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new(Guards::default())
    }
}

impl Engine {
    pub fn new(guards: Guards) -> Self {
        Self {
            guards,
            opset: OpSet::PrimePowers,
            nabla: RwLock::default(),
            simple: RwLock::default(),
            chars: RwLock::default(),
        }
    }

    /// Uses every divided power `1 ≤ k ≤ d` instead of prime powers only.
    pub fn with_opset(mut self, opset: OpSet) -> Self {
        self.opset = opset;
        self
    }

    pub fn guards(&self) -> Guards {
        self.guards
    }

    pub fn check_guard(&self, lambda: &Partition, n: usize) -> Result<()> {
        if lambda.len() > n {
            return Err(Error::TooManyParts { partition: lambda.clone(), n });
        }
        if lambda.size() > self.guards.max_degree {
            return Err(Error::Guard {
                label: format!("{lambda} over GL_{n}"),
                reason: format!("degree {} exceeds {}", lambda.size(), self.guards.max_degree),
            });
        }
        let dim = weyl_dim(lambda, n);
        if dim > self.guards.max_dim {
            return Err(Error::Guard {
                label: format!("{lambda} over GL_{n}"),
                reason: format!("dimension {dim} exceeds {}", self.guards.max_dim),
            });
        }
        Ok(())
    }

    /// ∇(λ) over GL_n.
    pub fn nabla(&self, lambda: &Partition, n: usize, p: u32) -> Result<Arc<PolyModule>> {
        let key = (p, n, lambda.clone());
        if let Some(m) = self.nabla.read().unwrap().get(&key) {
            return Ok(m.clone());
        }
        self.check_guard(lambda, n)?;
        let m = if lambda.len() == n && n > 0 {
            let c = lambda.part(n - 1);
            let base = Partition::new(lambda.padded(n).into_iter().map(|x| x - c).collect())?;
            Arc::new(self.nabla(&base, n, p)?.twist(c))
        } else {
            Arc::new(costandard(lambda, n, p, self.opset)?)
        };
        log::debug!("built ∇({lambda}) over GL_{n}, p={p}: dim {}", m.dim());
        Ok(self.nabla.write().unwrap().entry(key).or_insert(m).clone())
    }

    /// Word basis, radical relations and ch L(μ) over GL_n.
    pub fn simple(&self, mu: &Partition, n: usize, p: u32) -> Result<Arc<SimpleData>> {
        let key = (p, n, mu.clone());
        if let Some(s) = self.simple.read().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let nabla = self.nabla(mu, n, p)?;
        let s = Arc::new(SimpleData::from_costandard(&nabla)?);
        self.chars.write().unwrap().entry(key.clone()).or_insert_with(|| Arc::new(s.dominant_character()));
        Ok(self.simple.write().unwrap().entry(key).or_insert(s).clone())
    }

    /// Dominant part of ch L(μ) over GL_n.
    pub fn simple_character(&self, mu: &Partition, n: usize, p: u32) -> Result<Arc<BTreeMap<Partition, u64>>> {
        let key = (p, n, mu.clone());
        if let Some(c) = self.chars.read().unwrap().get(&key) {
            return Ok(c.clone());
        }
        self.simple(mu, n, p)?;
        Ok(self.chars.read().unwrap()[&key].clone())
    }

    /// Pre-loads simple characters (for example from the on-disk cache).
    pub fn seed_characters(&self, n: usize, p: u32, chars: impl IntoIterator<Item = (Partition, BTreeMap<Partition, u64>)>) {
        let mut w = self.chars.write().unwrap();
        for (mu, ch) in chars {
            w.entry((p, n, mu)).or_insert_with(|| Arc::new(ch));
        }
    }

    /// Drops memoized modules (simple characters are kept).
    pub fn clear_modules(&self) {
        self.nabla.write().unwrap().clear();
        self.simple.write().unwrap().clear();
    }
}
