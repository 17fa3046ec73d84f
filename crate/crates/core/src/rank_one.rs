//! SL_2 checks: G_1T-indecomposability of ∇(λ) and the Andersen–Haboush factorization.

use serde::{Deserialize, Serialize};

use crate::character::{weyl_dim, Character};
use crate::error::{Error, Result};
use crate::gf::{check_prime, FpMatrix, Subspace};
use crate::partition::Partition;
use crate::weights::{weight_to_partition, DominantWeight};

pub const MAX_SL2_WEIGHT: u32 = 40;
const MAX_CHAR_DIM: u128 = 2_000_000;

/// p ∤ λ + 1 or λ = p − 1.
pub fn premet_criterion(lambda: u32, p: u32) -> bool {
    !(lambda + 1).is_multiple_of(p) || lambda == p - 1
}

pub fn premet_criterion_schur(l1: u32, l2: u32, p: u32) -> bool {
    assert!(l1 >= l2, "({l1},{l2}) is not a partition");
    premet_criterion(l1 - l2, p)
}

/// A G_1T-module for SL_2: a weight basis with the actions of e and f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G1TModule {
    pub p: u32,
    pub dim: usize,
    pub weights: Vec<i64>,
    pub e_mat: FpMatrix,
    pub f_mat: FpMatrix,
}

impl G1TModule {
    pub fn new(p: u32, weights: Vec<i64>, e_mat: FpMatrix, f_mat: FpMatrix) -> Result<Self> {
        let dim = weights.len();
        let m = Self { p, dim, weights, e_mat, f_mat };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        for (mat, shift) in [(&self.e_mat, 2), (&self.f_mat, -2)] {
            if mat.rows() != self.dim || mat.cols() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: mat.rows() });
            }
            for r in 0..self.dim {
                for c in 0..self.dim {
                    if mat.get(r, c) != 0 && self.weights[r] != self.weights[c] + shift {
                        return Err(Error::Inconsistent);
                    }
                }
            }
            let mut pow = FpMatrix::identity(self.p, self.dim);
            for _ in 0..self.p {
                pow = pow.mul(mat);
            }
            if !pow.is_zero() {
                return Err(Error::internal("e or f is not p-nilpotent"));
            }
        }
        Ok(())
    }

    /// ∇(λ) = S^λ(V) with basis x^{λ−i} y^i of weight λ − 2i.
    pub fn costandard(lambda: u32, p: u32) -> Result<Self> {
        check_prime(p)?;
        let n = lambda as usize + 1;
        let mut e = FpMatrix::zeros(p, n, n);
        let mut f = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            // e = x ∂/∂y, f = y ∂/∂x
            if i > 0 {
                e.set(i - 1, i, i as u32 % p);
            }
            if i + 1 < n {
                f.set(i + 1, i, (lambda - i as u32) % p);
            }
        }
        let weights = (0..n).map(|i| lambda as i64 - 2 * i as i64).collect();
        Self::new(p, weights, e, f)
    }

    /// A basis of the weight-preserving endomorphisms commuting with e and f.
    pub fn endomorphisms(&self) -> Vec<FpMatrix> {
        let p = self.p;
        let slots: Vec<(usize, usize)> = (0..self.dim)
            .flat_map(|r| (0..self.dim).map(move |c| (r, c)))
            .filter(|&(r, c)| self.weights[r] == self.weights[c])
            .collect();
        let k = slots.len();
        let as_matrix = |x: &[u32]| {
            let mut m = FpMatrix::zeros(p, self.dim, self.dim);
            for (v, &(r, c)) in x.iter().zip(&slots) {
                m.set(r, c, *v);
            }
            m
        };
        // columns: slot variables; rows: entries of φe − eφ and φf − fφ
        let mut sys = FpMatrix::zeros(p, 0, k);
        for a in [&self.e_mat, &self.f_mat] {
            let cols: Vec<FpMatrix> = (0..k)
                .map(|j| {
                    let mut x = vec![0; k];
                    x[j] = 1;
                    let phi = as_matrix(&x);
                    phi.mul(a).add(&a.mul(&phi).scale(p - 1))
                })
                .collect();
            for r in 0..self.dim {
                for c in 0..self.dim {
                    let row: Vec<u32> = cols.iter().map(|m| m.get(r, c)).collect();
                    if row.iter().any(|&v| v != 0) {
                        sys.push_row(&row);
                    }
                }
            }
        }
        let ker = sys.kernel();
        (0..ker.rows()).map(|i| as_matrix(ker.row(i))).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalityMethod {
    Exhaustive,
    Fitting,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoReport {
    pub lambda: u32,
    pub p: u32,
    pub dim_end: usize,
    pub indecomposable: bool,
    pub method: LocalityMethod,
}

fn is_nilpotent(x: &FpMatrix) -> bool {
    let mut pow = x.clone();
    let mut k = 1;
    while k < x.rows() {
        pow = pow.mul(&pow);
        k *= 2;
    }
    pow.is_zero()
}

fn is_invertible(x: &FpMatrix) -> bool {
    x.rank() == x.rows()
}

/// Decides whether the algebra spanned by `basis` (containing 1) is local.
pub fn is_local_algebra(basis: &[FpMatrix], p: u32) -> Result<(bool, LocalityMethod)> {
    let Some(first) = basis.first() else {
        return Err(Error::internal("empty endomorphism algebra"));
    };
    let n = first.rows();
    let k = basis.len();
    if k <= 6 && (p as u64).pow(k as u32) <= 1 << 20 {
        // x² = x for x = Σ c_i b_i, every coefficient vector
        let mut c = vec![0u32; k];
        loop {
            let mut x = FpMatrix::zeros(p, n, n);
            for (ci, b) in c.iter().zip(basis) {
                if *ci != 0 {
                    x = x.add(&b.scale(*ci));
                }
            }
            if !x.is_zero() && x != FpMatrix::identity(p, n) && x.mul(&x) == x {
                return Ok((false, LocalityMethod::Exhaustive));
            }
            let Some(i) = c.iter().position(|&v| v + 1 < p) else { break };
            c[i] += 1;
            c[..i].iter_mut().for_each(|v| *v = 0);
        }
        return Ok((true, LocalityMethod::Exhaustive));
    }

    // every element of a split local algebra is a scalar plus a nilpotent; a non-nilpotent
    // non-invertible element has a nontrivial Fitting idempotent
    let id = FpMatrix::identity(p, n);
    let mut nil = Vec::new();
    for b in basis {
        let mut found = None;
        for c in 0..p {
            let x = b.add(&id.scale((p - c) % p));
            if is_nilpotent(&x) {
                found = Some(x);
                break;
            }
            if !is_invertible(&x) {
                return Ok((false, LocalityMethod::Fitting));
            }
        }
        match found {
            Some(x) => nil.push(x),
            None => return Err(Error::internal("endomorphism without an eigenvalue in GF(p); cannot classify")),
        }
    }
    // the span of the nilpotent parts must be a nilpotent ideal
    let flat = |m: &FpMatrix| -> Vec<u32> { m.to_rows().concat() };
    let mut power: Vec<FpMatrix> = nil.clone();
    for _ in 0..=n {
        let span = Subspace::from_vectors(p, n * n, &power.iter().map(flat).collect::<Vec<_>>());
        if span.dim() == 0 {
            return Ok((true, LocalityMethod::Fitting));
        }
        let mut next = Vec::new();
        for a in (0..span.dim()).map(|i| span.basis().row(i)) {
            let a = FpMatrix::from_residue_rows(p, n, a.chunks(n).map(|r| r.to_vec()).collect());
            for b in &nil {
                let prod = a.mul(b);
                if !prod.is_zero() {
                    next.push(prod);
                }
            }
        }
        power = next;
    }
    Err(Error::internal("could not confirm locality or find an idempotent"))
}

/// Decides G_1T-indecomposability of ∇(λ) for SL_2 from its endomorphism algebra.
pub fn sl2_endomorphism_report(lambda: u32, p: u32) -> Result<EndoReport> {
    if lambda > MAX_SL2_WEIGHT {
        return Err(Error::Guard {
            label: format!("∇({lambda}) for SL_2"),
            reason: format!("weight exceeds {MAX_SL2_WEIGHT}"),
        });
    }
    let m = G1TModule::costandard(lambda, p)?;
    let basis = m.endomorphisms();
    let (indecomposable, method) = is_local_algebra(&basis, p)?;
    Ok(EndoReport { lambda, p, dim_end: basis.len(), indecomposable, method })
}

pub fn sl2_costandard_g1t_indecomposable(lambda: u32, p: u32) -> Result<bool> {
    Ok(sl2_endomorphism_report(lambda, p)?.indecomposable)
}

/// (p^r − 1)ρ + p^r γ.
pub fn steinberg_shift(gamma: &DominantWeight, p: u32, r: u32) -> DominantWeight {
    let q = p.pow(r);
    DominantWeight::new(gamma.coords.iter().map(|&g| q - 1 + q * g).collect())
}

fn guarded_weyl(lambda: &Partition, n: usize) -> Result<Character> {
    let dim = weyl_dim(lambda, n);
    if dim > MAX_CHAR_DIM {
        return Err(Error::Guard { label: format!("{lambda} over GL_{n}"), reason: format!("dimension {dim} exceeds {MAX_CHAR_DIM}") });
    }
    Character::weyl(lambda, n)
}

/// ch ∇((p^r − 1)ρ + p^r γ) = ch St_r · ch ∇(γ)^{(r)} as GL_n characters.
pub fn andersen_haboush_check(n: usize, p: u32, r: u32, gamma: &DominantWeight) -> Result<bool> {
    check_prime(p)?;
    if gamma.n() != n {
        return Err(Error::InvalidWeight(format!("{gamma} is not a weight of SL_{n}")));
    }
    let lhs = guarded_weyl(&weight_to_partition(&steinberg_shift(gamma, p, r)), n)?;
    let st = guarded_weyl(&weight_to_partition(&DominantWeight::steinberg(n, p.pow(r))), n)?;
    let twisted = guarded_weyl(&weight_to_partition(gamma), n)?.frobenius(p.pow(r));
    Ok(lhs == st.mul(&twisted))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergCounterexample {
    pub weight: DominantWeight,
    pub partition: Vec<u32>,
    pub d: u32,
    pub summand_count: u128,
}

/// ∇((p^r − 1)ρ + p^r γ) as a GL_n-module of degree d, splitting over G_rT into dim ∇(γ) copies of St_r.
pub fn steinberg_counterexample(n: usize, p: u32, r: u32, gamma: &DominantWeight) -> Result<SteinbergCounterexample> {
    check_prime(p)?;
    if gamma.n() != n {
        return Err(Error::InvalidWeight(format!("{gamma} is not a weight of SL_{n}")));
    }
    if gamma.is_zero() {
        return Err(Error::Hypotheses("γ = 0 gives St_r itself".into()));
    }
    let weight = steinberg_shift(gamma, p, r);
    let part = weight_to_partition(&weight);
    Ok(SteinbergCounterexample {
        partition: part.padded(n),
        d: part.size(),
        weight,
        summand_count: weyl_dim(&weight_to_partition(gamma), n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[u32]) -> DominantWeight {
        DominantWeight::new(c.to_vec())
    }

    #[test]
    fn criterion_values() {
        assert!(premet_criterion(2, 3));
        assert!(!premet_criterion(5, 3));
        assert!(premet_criterion(0, 7));
        assert!(!premet_criterion_schur(7, 2, 3));
        assert!(premet_criterion_schur(4, 2, 3));
        assert!(premet_criterion_schur(5, 5, 2));
    }

    #[test]
    fn direct_values() {
        let r = sl2_endomorphism_report(2, 3).unwrap();
        assert!(r.indecomposable);
        assert_eq!(r.dim_end, 1);
        assert!(!sl2_costandard_g1t_indecomposable(5, 3).unwrap());
        assert!(sl2_costandard_g1t_indecomposable(4, 3).unwrap());
        assert!(sl2_costandard_g1t_indecomposable(41, 3).unwrap_err().is_guard());
    }

    #[test]
    fn costandard_module() {
        let m = G1TModule::costandard(5, 3).unwrap();
        assert_eq!(m.dim, 6);
        assert_eq!(m.weights, vec![5, 3, 1, -1, -3, -5]);
        let bad = FpMatrix::identity(3, 2);
        assert!(G1TModule::new(3, vec![1, -1], bad.clone(), bad).is_err());
    }

    #[test]
    fn fitting_branch() {
        // a direct sum of two Jordan blocks: decomposable
        let mut a = FpMatrix::zeros(5, 2, 2);
        a.set(0, 0, 1);
        assert!(!is_local_algebra(&[FpMatrix::identity(5, 2), a], 5).unwrap().0);
        let basis: Vec<FpMatrix> = (0..8)
            .map(|i| {
                let mut m = FpMatrix::zeros(7, 9, 9);
                if i == 0 {
                    return FpMatrix::identity(7, 9);
                }
                m.set(0, i, 1);
                m
            })
            .collect();
        assert_eq!(is_local_algebra(&basis, 7).unwrap(), (true, LocalityMethod::Fitting));
    }

    #[test]
    fn andersen_haboush_values() {
        assert!(andersen_haboush_check(2, 3, 1, &w(&[1])).unwrap());
        assert!(andersen_haboush_check(3, 3, 1, &w(&[1, 0])).unwrap());
        assert!(andersen_haboush_check(3, 2, 2, &w(&[0, 0])).unwrap());
        let c = steinberg_counterexample(3, 3, 1, &w(&[1, 0])).unwrap();
        assert_eq!((c.partition, c.d, c.summand_count), (vec![7, 2, 0], 9, 3));
        let c = steinberg_counterexample(2, 3, 1, &w(&[1])).unwrap();
        assert_eq!((c.weight, c.summand_count), (w(&[5]), 2));
        let c = steinberg_counterexample(2, 2, 2, &w(&[1])).unwrap();
        assert_eq!((c.weight, c.summand_count), (w(&[7]), 2));
        assert!(steinberg_counterexample(2, 3, 1, &w(&[0])).is_err());
    }
}
