//! The truncation functor F^m_n on labels and the modules G^m_n(L(σ)) ⊆ ∇̄(σ).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::schur::decomp::{composition_factors, decomposition_row, factors_from_map, factors_to_map, Factor};
use crate::schur::engine::Engine;
use crate::schur::module::Submodule;
use crate::schur::simple::hom_lift;

/// F^m_n on a multiset of labels: keeps the ones with at most `n` parts.
pub fn truncate_labels(labels: &BTreeMap<Partition, u64>, n: usize) -> BTreeMap<Partition, u64> {
    labels.iter().filter(|(l, &c)| l.len() <= n && c > 0).map(|(l, &c)| (l.clone(), c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseImageReport {
    pub sigma: Partition,
    pub n: usize,
    pub m: usize,
    pub d: u32,
    pub p: u32,
    pub submodule_dim: usize,
    pub nabla_dim: usize,
    pub rounds: usize,
    pub factors: Vec<Factor>,
}

impl InverseImageReport {
    pub fn factor_map(&self) -> BTreeMap<Partition, u64> {
        factors_to_map(&self.factors)
    }

    pub fn multiplicity(&self, nu: &Partition) -> u64 {
        self.factors.iter().find(|f| &f.mu == nu).map_or(0, |f| f.mult)
    }
}

/// G^m_n(L(σ)): the largest submodule of ∇̄(σ) over GL_m containing the socle L̄(σ)
/// whose other composition factors all have more than `n` parts.
///
/// Grown from the socle by repeatedly adding the isotypic socle components of the
/// quotient whose labels have more than `n` parts.
pub fn inverse_simple(engine: &Engine, sigma: &Partition, n: usize, m: usize, p: u32) -> Result<InverseImageReport> {
    crate::gf::check_prime(p)?;
    if sigma.len() > n {
        return Err(Error::TooManyParts { partition: sigma.clone(), n });
    }
    if m < n {
        return Err(Error::Hypotheses(format!("need n <= m, got n = {n}, m = {m}")));
    }
    let d = sigma.size();
    let nabla = engine.nabla(sigma, m, p)?;
    let (top, h) = nabla.highest().ok_or_else(|| Error::internal("∇ without a highest vector"))?;
    let mut sub = nabla.generated_submodule(&[(top, h.to_vec())]);

    let row = decomposition_row(engine, sigma, m, p)?;
    let candidates: Vec<Partition> = row.keys().filter(|mu| mu.len() > n).cloned().collect();
    let simples = candidates.iter().map(|mu| engine.simple(mu, m, p)).collect::<Result<Vec<_>>>()?;

    let mut rounds = 0;
    loop {
        rounds += 1;
        let lifts = simples
            .par_iter()
            .map(|s| {
                let w = nabla.weight_index(&s.label.padded(m)).expect("factor weight occurs in ∇");
                hom_lift(s, &nabla, Some(&sub)).map(|l| (w, l))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut gens = Vec::new();
        for (w, lift) in lifts {
            for r in 0..lift.dim() {
                let v = lift.basis().row(r);
                if !sub.spaces[w].contains(v) {
                    gens.push((w, v.to_vec()));
                }
            }
        }
        if gens.is_empty() {
            break;
        }
        let before = sub.dim();
        nabla.close(&mut sub, &gens);
        if sub.dim() == before {
            return Err(Error::internal("socle accumulation did not grow"));
        }
    }

    let factors = composition_factors(engine, sub.dominant_character(&nabla), m, p)?;
    check_report(engine, sigma, n, m, p, &sub, &factors)?;
    log::debug!("G^{m}_{n}(L({sigma})), p={p}: dim {} of {} after {rounds} rounds", sub.dim(), nabla.dim());
    Ok(InverseImageReport {
        sigma: sigma.clone(),
        n,
        m,
        d,
        p,
        submodule_dim: sub.dim(),
        nabla_dim: nabla.dim(),
        rounds,
        factors: factors_from_map(&factors),
    })
}

fn check_report(
    engine: &Engine,
    sigma: &Partition,
    n: usize,
    m: usize,
    p: u32,
    sub: &Submodule,
    factors: &BTreeMap<Partition, u64>,
) -> Result<()> {
    let small = truncate_labels(factors, n);
    if small != BTreeMap::from([(sigma.clone(), 1)]) {
        return Err(Error::internal(format!("G^{m}_{n}(L({sigma})) has factors {small:?} with at most {n} parts")));
    }
    let mut total = 0;
    for (mu, &c) in factors {
        total += c * Character::from_dominant(m, &*engine.simple_character(mu, m, p)?).dim();
    }
    if total != sub.dim() as u64 {
        return Err(Error::internal(format!("factor dimensions of G^{m}_{n}(L({sigma})) do not add up")));
    }
    Ok(())
}

/// [G^m_n(L(σ)) : L̄(ν)].
pub fn multiplicity_in_inverse(engine: &Engine, sigma: &Partition, nu: &Partition, n: usize, m: usize, p: u32) -> Result<u64> {
    if nu.len() > m {
        return Err(Error::TooManyParts { partition: nu.clone(), n: m });
    }
    if nu.size() != sigma.size() {
        return Err(Error::SizeMismatch(sigma.clone(), nu.clone()));
    }
    Ok(inverse_simple(engine, sigma, n, m, p)?.multiplicity(nu))
}

/// Labels D_μ of the composition factors of F_n(L(σ)) over the symmetric group:
/// the p-restricted factors of G^m_n(L(σ)), where `m` defaults to the degree.
pub fn schur_functor_simple_factors(
    engine: &Engine,
    sigma: &Partition,
    n: usize,
    p: u32,
    m: Option<usize>,
) -> Result<BTreeMap<Partition, u64>> {
    let d = sigma.size() as usize;
    let m = m.unwrap_or(d).max(n);
    let report = inverse_simple(engine, sigma, n, m, p)?;
    Ok(report.factor_map().into_iter().filter(|(mu, _)| mu.is_p_restricted(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn truncation() {
        let l = BTreeMap::from([(part![8, 4], 1), (part![7, 2, 2, 1], 1)]);
        assert_eq!(truncate_labels(&l, 3), BTreeMap::from([(part![8, 4], 1)]));
        assert_eq!(truncate_labels(&l, 4), l);
        assert!(truncate_labels(&BTreeMap::from([(part![1, 1, 1, 1], 2)]), 3).is_empty());
    }

    #[test]
    fn equal_ranks_give_the_simple() {
        let e = Engine::default();
        let r = inverse_simple(&e, &part![3, 1], 2, 2, 2).unwrap();
        assert_eq!(r.factor_map(), BTreeMap::from([(part![3, 1], 1)]));
        assert!(inverse_simple(&e, &part![3, 1], 3, 2, 2).is_err());
    }

    #[test]
    fn semisimple_regime() {
        let e = Engine::default();
        for sigma in [part![3, 1], part![2, 2], part![2, 1, 1]] {
            let f = schur_functor_simple_factors(&e, &sigma, 3, 5, None).unwrap();
            assert_eq!(f, BTreeMap::from([(sigma.clone(), 1)]));
        }
    }
}
