//! Socles of tilting modules over S(n, d) and the tilting module conjecture for SL_n.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::weyl_dim;
use crate::error::{Error, Result};
use crate::functor::multiplicity_in_inverse;
use crate::mullineux::mullineux_conjugate;
use crate::partition::{enumerate_partitions, Partition};
use crate::schur::decomp::{decomposition_row, factors_from_map, Factor};
use crate::schur::engine::Engine;
use crate::weights::{enumerate_x1, hat_partition, weight_to_partition, DominantWeight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingSocleReport {
    pub mu: Partition,
    pub n: usize,
    pub d: u32,
    pub p: u32,
    pub pivot: Partition,
    pub m: usize,
    pub socle: Vec<Factor>,
    pub fastpath_used: bool,
}

impl TiltingSocleReport {
    pub fn socle_map(&self) -> BTreeMap<Partition, u64> {
        self.socle.iter().map(|f| (f.mu.clone(), f.mult)).collect()
    }
}

/// σ ∈ Λ⁺(n, d) with L̄(pivot) a factor of ∇̄(σ) over GL_m, together with
/// [G^m_n(L(σ)) : L̄(pivot)].
fn socle_scan(engine: &Engine, pivot: &Partition, n: usize, m: usize, p: u32) -> Result<BTreeMap<Partition, u64>> {
    let d = pivot.size();
    let mut cands = Vec::new();
    for sigma in enumerate_partitions(n, d) {
        if !sigma.dominates_unchecked(pivot) {
            continue;
        }
        if decomposition_row(engine, &sigma, m, p)?.contains_key(pivot) {
            cands.push(sigma);
        }
    }
    let mults = cands
        .par_iter()
        .map(|s| multiplicity_in_inverse(engine, s, pivot, n, m, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(cands.into_iter().zip(mults).filter(|(_, k)| *k > 0).collect())
}

/// The S(n, d)-socle of T(μ): L(M_p(μ)′) when that label has at most `n` parts,
/// and otherwise the multiplicities [G^m_n(L(σ)) : L̄(M_p(μ)′)] with m = ℓ(M_p(μ)′).
pub fn tilting_socle(engine: &Engine, mu: &Partition, n: usize, p: u32) -> Result<TiltingSocleReport> {
    crate::gf::check_prime(p)?;
    if mu.len() > n {
        return Err(Error::TooManyParts { partition: mu.clone(), n });
    }
    let pivot = mullineux_conjugate(mu, p)?;
    let m = pivot.len();
    let (socle, fast) = if m <= n {
        (BTreeMap::from([(pivot.clone(), 1)]), true)
    } else {
        (socle_scan(engine, &pivot, n, m, p)?, false)
    };
    if socle.is_empty() {
        return Err(Error::internal(format!("empty socle for T({mu})")));
    }
    Ok(TiltingSocleReport { mu: mu.clone(), n, d: mu.size(), p, pivot, m, socle: factors_from_map(&socle), fastpath_used: fast })
}

/// The general path of [`tilting_socle`] forced at rank `m ≥ max(n + 1, ℓ(M_p(μ)′))`.
pub fn tilting_socle_general(engine: &Engine, mu: &Partition, n: usize, m: usize, p: u32) -> Result<BTreeMap<Partition, u64>> {
    let pivot = mullineux_conjugate(mu, p)?;
    if m < pivot.len() || m <= n {
        return Err(Error::Hypotheses(format!("need m > {n} and m >= {}, got {m}", pivot.len())));
    }
    socle_scan(engine, &pivot, n, m, p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialSteinbergReport {
    pub lambda: Partition,
    pub p: u32,
    pub m: usize,
    pub s: usize,
    pub socle_label: Partition,
    pub is_simple_tilting: bool,
    /// Whether ∇(λ) over GL_m was found simple, when within guards.
    pub nabla_simple: Option<bool>,
}

/// Socle of T(λ) over S(m, d) for λ with positive last part and gaps at least p − 1.
pub fn partial_steinberg_report(engine: &Engine, lambda: &Partition, p: u32, m: usize) -> Result<PartialSteinbergReport> {
    crate::gf::check_prime(p)?;
    let n = lambda.len();
    if n == 0 {
        return Err(Error::Hypotheses("empty partition".into()));
    }
    let parts = lambda.parts();
    if parts.windows(2).any(|w| w[0] - w[1] < p - 1) {
        return Err(Error::Hypotheses(format!("consecutive parts of {lambda} differ by less than {}", p - 1)));
    }
    let s = parts[0].div_ceil(p - 1) as usize;
    if m < s {
        return Err(Error::Hypotheses(format!("need m >= {s}, got {m}")));
    }
    let label = mullineux_conjugate(lambda, p)?;
    if label.len() != s || !label.is_p_restricted(p) {
        return Err(Error::internal(format!("M_{p}({lambda})′ = {label} is not p-restricted of length {s}")));
    }
    let simple = parts[n - 1] < p && parts.windows(2).all(|w| w[0] - w[1] == p - 1);
    if simple && label != *lambda {
        return Err(Error::internal(format!("M_{p}({lambda})′ = {label} differs from {lambda}")));
    }
    let nabla_simple = if engine.check_guard(lambda, m).is_ok() {
        Some(engine.simple(lambda, m, p)?.dim() as u128 == weyl_dim(lambda, m))
    } else {
        None
    };
    if simple && nabla_simple == Some(false) {
        return Err(Error::internal(format!("∇({lambda}) over GL_{m} is not simple")));
    }
    Ok(PartialSteinbergReport { lambda: lambda.clone(), p, m, s, socle_label: label, is_simple_tilting: simple, nabla_simple })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub sigma: Partition,
    pub mult: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TmcVerdict {
    pub lambda: DominantWeight,
    pub hat: Partition,
    pub d: u32,
    pub pivot: Partition,
    pub m: usize,
    /// The partition lift of λ in degree d.
    pub target: Partition,
    pub holds: bool,
    pub fastpath_used: bool,
    pub witness: Vec<WitnessEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirrored_from: Option<DominantWeight>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TmcOptions {
    /// Only scan σ with pivot ⊴ σ ⊴ hat.
    pub prune: bool,
    /// Also compute the pruned σ and require their multiplicities to vanish.
    pub verify_pruned: bool,
}

impl Default for TmcOptions {
    fn default() -> Self {
        Self { prune: true, verify_pruned: false }
    }
}

/// λ̂, its pivot M_p(λ̂)′ and the lift λ + (p − 1)(n − 1)·(1ⁿ).
pub fn tmc_labels(lambda: &DominantWeight, p: u32) -> Result<(Partition, Partition, Partition)> {
    let n = lambda.n();
    if !lambda.is_restricted(p, 1) {
        return Err(Error::InvalidWeight(format!("{lambda} is not {p}-restricted")));
    }
    let hat = hat_partition(lambda, p, 1, n)?;
    let pivot = mullineux_conjugate(&hat, p)?;
    let target = weight_to_partition(lambda).add_columns(n, (p - 1) * (n as u32 - 1));
    if target.size() != hat.size() {
        return Err(Error::internal("lift and hat have different degrees"));
    }
    Ok((hat, pivot, target))
}

/// Checks whether [G^m_n(L(σ)) : L̄(M_p(λ̂)′)] is 1 at the lift of λ and 0 for all other σ ∈ Λ⁺(n, d).
pub fn tmc_check_weight(engine: &Engine, lambda: &DominantWeight, p: u32, opts: TmcOptions) -> Result<TmcVerdict> {
    crate::gf::check_prime(p)?;
    let n = lambda.n();
    let (hat, pivot, target) = tmc_labels(lambda, p)?;
    let d = hat.size();
    let m = pivot.len();
    let mut witness = Vec::new();
    let fast = m <= n;
    if fast {
        witness.push(WitnessEntry { sigma: pivot.clone(), mult: 1 });
    } else {
        let all = enumerate_partitions(n, d);
        let in_range = |s: &Partition| s.dominates_unchecked(&pivot) && hat.dominates_unchecked(s);
        for s in all.iter().filter(|s| !opts.prune || in_range(s)) {
            engine.check_guard(s, m)?;
        }
        let scanned: Vec<&Partition> = all.iter().filter(|s| !opts.prune || in_range(s)).collect();
        let mults = scanned
            .par_iter()
            .map(|s| multiplicity_in_inverse(engine, s, &pivot, n, m, p))
            .collect::<Result<Vec<_>>>()?;
        witness = scanned.into_iter().zip(mults).map(|(s, mult)| WitnessEntry { sigma: s.clone(), mult }).collect();
        if opts.prune && opts.verify_pruned {
            for s in all.iter().filter(|s| !in_range(s)) {
                let k = multiplicity_in_inverse(engine, s, &pivot, n, m, p)?;
                if k != 0 {
                    return Err(Error::internal(format!("pruned σ = {s} has multiplicity {k}")));
                }
            }
        }
    }
    let target_mult = witness.iter().find(|w| w.sigma == target).map_or(0, |w| w.mult);
    let holds = target_mult == 1 && witness.iter().all(|w| w.sigma == target || w.mult == 0);
    Ok(TmcVerdict { lambda: lambda.clone(), hat, d, pivot, m, target, holds, fastpath_used: fast, witness, mirrored_from: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedWeight {
    pub lambda: DominantWeight,
    pub d: u32,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TmcScan {
    pub n: usize,
    pub p: u32,
    pub verdicts: Vec<TmcVerdict>,
    pub skipped: Vec<SkippedWeight>,
}

impl TmcScan {
    pub fn all_hold(&self) -> bool {
        self.skipped.is_empty() && self.verdicts.iter().all(|v| v.holds)
    }
}

/// Runs [`tmc_check_weight`] over X_1 for SL_n in ascending degree, computing one weight of
/// each dual pair {λ, −w_0λ} and copying its verdict to the other. Guard failures are
/// recorded and the scan continues.
pub fn tmc_scan(engine: &Engine, n: usize, p: u32, opts: TmcOptions) -> Result<TmcScan> {
    crate::gf::check_prime(p)?;
    if n < 2 {
        return Err(Error::Hypotheses(format!("SL_{n} has no fundamental weights")));
    }
    let mut weights: Vec<(u32, DominantWeight)> = enumerate_x1(n, p)
        .into_iter()
        .map(|l| Ok((hat_partition(&l, p, 1, n)?.size(), l)))
        .collect::<Result<_>>()?;
    weights.sort();
    let mut scan = TmcScan { n, p, ..Default::default() };
    let mut done: BTreeSet<DominantWeight> = BTreeSet::new();
    for (d, lambda) in &weights {
        if done.contains(lambda) {
            continue;
        }
        let dual = lambda.dual();
        done.insert(lambda.clone());
        done.insert(dual.clone());
        match tmc_check_weight(engine, lambda, p, opts) {
            Ok(v) => {
                log::info!("SL_{n}, p={p}: {lambda} d={d} holds={}", v.holds);
                if dual != *lambda {
                    let (hat, pivot, target) = tmc_labels(&dual, p)?;
                    scan.verdicts.push(TmcVerdict {
                        lambda: dual.clone(),
                        d: hat.size(),
                        m: pivot.len(),
                        fastpath_used: false,
                        hat,
                        pivot,
                        target,
                        holds: v.holds,
                        witness: Vec::new(),
                        mirrored_from: Some(lambda.clone()),
                    });
                }
                scan.verdicts.push(v);
            }
            Err(e) if e.is_guard() => {
                log::warn!("SL_{n}, p={p}: {lambda} skipped: {e}");
                for l in [lambda.clone(), dual.clone()].into_iter().collect::<BTreeSet<_>>() {
                    let d = hat_partition(&l, p, 1, n)?.size();
                    scan.skipped.push(SkippedWeight { lambda: l, d, reason: e.to_string() });
                }
            }
            Err(e) => return Err(e),
        }
    }
    scan.verdicts.sort_by(|a, b| (a.d, &a.lambda).cmp(&(b.d, &b.lambda)));
    Ok(scan)
}
