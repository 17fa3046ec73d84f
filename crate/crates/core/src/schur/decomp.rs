//! Decomposition numbers [∇(λ):L(μ)], composition factors and socles.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::{peel_simples, Character};
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};
use crate::schur::engine::Engine;
use crate::schur::module::{PolyModule, Submodule};
use crate::schur::simple::hom_dim;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub mu: Partition,
    pub mult: u64,
}

pub fn factors_from_map(m: &BTreeMap<Partition, u64>) -> Vec<Factor> {
    // dominant labels first
    m.iter().rev().filter(|(_, &c)| c > 0).map(|(mu, &mult)| Factor { mu: mu.clone(), mult }).collect()
}

pub fn factors_to_map(f: &[Factor]) -> BTreeMap<Partition, u64> {
    let mut m = BTreeMap::new();
    for x in f {
        *m.entry(x.mu.clone()).or_insert(0) += x.mult;
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompRow {
    pub lambda: Partition,
    pub factors: Vec<Factor>,
}

/// [∇(λ):L(μ)] for all λ, μ ∈ Λ⁺(n, d).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompTable {
    pub n: usize,
    pub d: u32,
    pub p: u32,
    pub rows: Vec<DecompRow>,
}

impl DecompTable {
    pub fn get(&self, lambda: &Partition, mu: &Partition) -> u64 {
        self.rows
            .iter()
            .find(|r| &r.lambda == lambda)
            .and_then(|r| r.factors.iter().find(|f| &f.mu == mu))
            .map_or(0, |f| f.mult)
    }

    pub fn row(&self, lambda: &Partition) -> Option<&DecompRow> {
        self.rows.iter().find(|r| &r.lambda == lambda)
    }

    /// Diagonal ones, zeros outside the dominance order, and the character identity
    /// ch ∇(λ) = Σ_μ [∇(λ):L(μ)] ch L(μ) using the supplied simple characters.
    pub fn check(&self, simple: &BTreeMap<Partition, BTreeMap<Partition, u64>>) -> Result<()> {
        for row in &self.rows {
            if self.get(&row.lambda, &row.lambda) != 1 {
                return Err(Error::internal(format!("[∇({0}):L({0})] != 1", row.lambda)));
            }
            let mut total = Character::zero(self.n);
            for f in &row.factors {
                if !row.lambda.dominates_unchecked(&f.mu) {
                    return Err(Error::internal(format!("L({}) in ∇({}) outside dominance", f.mu, row.lambda)));
                }
                let ch = simple.get(&f.mu).ok_or_else(|| Error::internal(format!("no character for L({})", f.mu)))?;
                total.add_scaled(&Character::from_dominant(self.n, ch), f.mult);
            }
            if total != Character::weyl(&row.lambda, self.n)? {
                return Err(Error::internal(format!("character identity fails for ∇({})", row.lambda)));
            }
        }
        Ok(())
    }
}

/// Writes a dominant character as a sum of simple characters over GL_n.
pub fn composition_factors(
    engine: &Engine,
    dominant: BTreeMap<Partition, u64>,
    n: usize,
    p: u32,
) -> Result<BTreeMap<Partition, u64>> {
    peel_simples(dominant, |mu| Ok((*engine.simple_character(mu, n, p)?).clone()))
}

/// The row λ of the decomposition matrix over GL_n.
pub fn decomposition_row(engine: &Engine, lambda: &Partition, n: usize, p: u32) -> Result<BTreeMap<Partition, u64>> {
    let ch = Character::weyl(lambda, n)?;
    composition_factors(engine, ch.dominant(), n, p)
}

pub fn decomposition_numbers(engine: &Engine, n: usize, d: u32, p: u32) -> Result<DecompTable> {
    crate::gf::check_prime(p)?;
    let labels = enumerate_partitions(n, d);
    for l in &labels {
        engine.check_guard(l, n)?;
    }
    // build the simple characters in parallel first, then peel
    labels.par_iter().map(|mu| engine.simple_character(mu, n, p).map(|_| ())).collect::<Result<()>>()?;
    let rows = labels
        .iter()
        .map(|l| Ok(DecompRow { lambda: l.clone(), factors: factors_from_map(&decomposition_row(engine, l, n, p)?) }))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompTable { n, d, p, rows })
}

/// Simple characters for all of Λ⁺(n, d), as computed by the engine.
pub fn simple_characters(engine: &Engine, n: usize, d: u32, p: u32) -> Result<BTreeMap<Partition, BTreeMap<Partition, u64>>> {
    enumerate_partitions(n, d)
        .into_iter()
        .map(|mu| Ok((mu.clone(), (*engine.simple_character(&mu, n, p)?).clone())))
        .collect()
}

/// soc(m / sub): the multiplicity of every L(μ) in the socle.
pub fn socle(engine: &Engine, m: &PolyModule, sub: Option<&Submodule>) -> Result<BTreeMap<Partition, u64>> {
    let mut out = BTreeMap::new();
    for w in m.dominant_weights() {
        let mu = Partition::new(m.weight(w).to_vec())?;
        let s = engine.simple(&mu, m.n(), m.p())?;
        let k = hom_dim(&s, m, sub)?;
        if k > 0 {
            out.insert(mu, k as u64);
        }
    }
    Ok(out)
}
