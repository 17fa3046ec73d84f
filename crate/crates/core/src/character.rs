//! Formal characters of polynomial GL_n-modules and Kostka numbers.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};

/// A finitely supported map from weights (length-`n` vectors) to multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub n: usize,
    pub coeffs: BTreeMap<Vec<u32>, u64>,
}

impl Character {
    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: BTreeMap::new() }
    }

    pub fn dim(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn get(&self, weight: &[u32]) -> u64 {
        self.coeffs.get(weight).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplicities on dominant weights, keyed by partition.
    pub fn dominant(&self) -> BTreeMap<Partition, u64> {
        self.coeffs
            .iter()
            .filter(|(w, _)| w.windows(2).all(|x| x[0] >= x[1]))
            .map(|(w, &c)| (Partition::new(w.clone()).expect("dominant"), c))
            .collect()
    }

    /// The symmetric character with the given dominant-weight multiplicities.
    pub fn from_dominant(n: usize, dominant: &BTreeMap<Partition, u64>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (mu, &c) in dominant {
            if c == 0 {
                continue;
            }
            for w in distinct_permutations(&mu.padded(n)) {
                coeffs.insert(w, c);
            }
        }
        Self { n, coeffs }
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(w, &c)| {
            let mut s = w.clone();
            s.sort_unstable_by(|a, b| b.cmp(a));
            self.get(&s) == c
        })
    }

    pub fn add_scaled(&mut self, other: &Character, k: u64) {
        for (w, &c) in &other.coeffs {
            *self.coeffs.entry(w.clone()).or_insert(0) += c * k;
        }
    }

    /// `self − k·other`, failing if any coefficient would go negative.
    pub fn sub_scaled(&mut self, other: &Character, k: u64) -> Result<()> {
        for (w, &c) in &other.coeffs {
            let cur = self.get(w);
            let take = c * k;
            if take > cur {
                return Err(Error::internal(format!("negative multiplicity at weight {w:?}")));
            }
            if cur == take {
                self.coeffs.remove(w);
            } else {
                self.coeffs.insert(w.clone(), cur - take);
            }
        }
        Ok(())
    }

    /// Weights scaled by q (the Frobenius twist of the character).
    pub fn frobenius(&self, q: u32) -> Character {
        Character {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(w, &c)| (w.iter().map(|x| x * q).collect(), c)).collect(),
        }
    }

    /// Character of a tensor product.
    pub fn mul(&self, other: &Character) -> Character {
        assert_eq!(self.n, other.n);
        let mut coeffs: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (a, &x) in &self.coeffs {
            for (b, &y) in &other.coeffs {
                let w: Vec<u32> = a.iter().zip(b).map(|(s, t)| s + t).collect();
                *coeffs.entry(w).or_insert(0) += x * y;
            }
        }
        Character { n: self.n, coeffs }
    }

    /// ch ∇(λ): the Schur polynomial s_λ(x_1, …, x_n).
    pub fn weyl(lambda: &Partition, n: usize) -> Result<Character> {
        if lambda.len() > n {
            return Err(Error::TooManyParts { partition: lambda.clone(), n });
        }
        let mut k = Kostka::default();
        let dominant: BTreeMap<Partition, u64> = enumerate_partitions(n, lambda.size())
            .into_iter()
            .filter(|mu| lambda.dominates_unchecked(mu))
            .map(|mu| {
                let c = k.get(lambda, mu.parts());
                (mu, c)
            })
            .filter(|(_, c)| *c > 0)
            .collect();
        Ok(Character::from_dominant(n, &dominant))
    }
}

/// dim ∇(λ) over GL_n by the hook-content formula.
pub fn weyl_dim(lambda: &Partition, n: usize) -> u128 {
    if lambda.len() > n {
        return 0;
    }
    let conj = lambda.conjugate();
    let (mut num, mut den) = (1u128, 1u128);
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let content = n as i64 + j as i64 - i as i64;
            let hook = (row as usize - j) + (conj.part(j) as usize - i) - 1;
            num *= content as u128;
            den *= hook as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All distinct rearrangements of `v`, in descending lexicographic order.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = v.to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    // step to the previous permutation in lex order until exhausted
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] > cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] < cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Memoized Kostka numbers K_{λμ} for arbitrary compositions μ.
#[derive(Default)]
pub struct Kostka {
    memo: FxHashMap<(Vec<u32>, Vec<u32>), u64>,
}

impl Kostka {
    /// Number of SSYT of shape `lambda` and content `mu`.
    pub fn get(&mut self, lambda: &Partition, mu: &[u32]) -> u64 {
        if lambda.size() != mu.iter().sum::<u32>() {
            return 0;
        }
        let mut content: Vec<u32> = mu.iter().copied().filter(|&x| x > 0).collect();
        content.sort_unstable();
        self.count(lambda.parts().to_vec(), content)
    }

    // peel off the largest entry as a horizontal strip of the outer shape
    fn count(&mut self, shape: Vec<u32>, content: Vec<u32>) -> u64 {
        if content.is_empty() {
            return u64::from(shape.is_empty());
        }
        if shape.len() > content.len() {
            return 0;
        }
        let key = (shape, content);
        if let Some(&c) = self.memo.get(&key) {
            return c;
        }
        let (shape, content) = key;
        let k = *content.last().unwrap();
        let rest = content[..content.len() - 1].to_vec();
        let mut total = 0;
        let mut inner = Vec::new();
        strip_removals(&shape, k, 0, &mut inner, &mut |inner| {
            let mut s = inner.to_vec();
            while s.last() == Some(&0) {
                s.pop();
            }
            total += self.count(s, rest.clone());
        });
        self.memo.insert((shape, content), total);
        total
    }
}

/// Calls `f` on every ν ⊆ shape with shape/ν a horizontal strip of size `k`.
fn strip_removals(shape: &[u32], k: u32, i: usize, inner: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if i == shape.len() {
        if k == 0 {
            f(inner);
        }
        return;
    }
    let lo = shape.get(i + 1).copied().unwrap_or(0);
    let max_remove = (shape[i] - lo).min(k);
    for r in 0..=max_remove {
        inner.push(shape[i] - r);
        strip_removals(shape, k - r, i + 1, inner, f);
        inner.pop();
    }
}

/// Solves `ch = Σ_μ c_μ ch L(μ)` by peeling dominant weights in descending lex order.
///
/// `simple` must return the dominant character of L(μ) for each partition μ it is asked about.
pub fn peel_simples(
    mut remaining: BTreeMap<Partition, u64>,
    mut simple: impl FnMut(&Partition) -> Result<BTreeMap<Partition, u64>>,
) -> Result<BTreeMap<Partition, u64>> {
    let mut out = BTreeMap::new();
    while let Some((mu, &c)) = remaining.iter().next_back() {
        let mu = mu.clone();
        if c == 0 {
            remaining.remove(&mu);
            continue;
        }
        let ch = simple(&mu)?;
        if ch.get(&mu) != Some(&1) {
            return Err(Error::internal(format!("highest weight {mu} of L({mu}) has multiplicity != 1")));
        }
        for (nu, &m) in &ch {
            let cur = remaining.get(nu).copied().unwrap_or(0);
            if cur < c * m {
                return Err(Error::internal(format!(
                    "negative multiplicity at {nu} while removing {c} x L({mu})"
                )));
            }
            if cur == c * m {
                remaining.remove(nu);
            } else {
                remaining.insert(nu.clone(), cur - c * m);
            }
        }
        out.insert(mu, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::partition::compositions;
    use crate::tableau::ssyt;

    #[test]
    fn dimensions() {
        assert_eq!(Character::weyl(&part![5], 3).unwrap().dim(), 21);
        assert_eq!(Character::weyl(&part![1, 1, 1, 1], 4).unwrap().dim(), 1);
        assert_eq!(Character::weyl(&part![12], 4).unwrap().dim(), 455);
        assert_eq!(Character::weyl(&part![8, 6, 4], 4).unwrap().dim(), 1980);
        assert_eq!(Character::weyl(&Partition::empty(), 3).unwrap().dim(), 1);
        assert!(Character::weyl(&part![1, 1], 1).is_err());
        for (l, n) in [(part![5], 3), (part![8, 6, 4], 4), (part![3, 2, 1], 4), (part![6, 6], 5)] {
            assert_eq!(weyl_dim(&l, n) as u64, Character::weyl(&l, n).unwrap().dim());
        }
        assert_eq!(weyl_dim(&part![1, 1, 1], 2), 0);
    }

    #[test]
    fn kostka_matches_enumeration() {
        let mut k = Kostka::default();
        for d in 0..=7 {
            for lambda in crate::partition::partitions(d) {
                for c in compositions(4, d) {
                    assert_eq!(k.get(&lambda, &c), ssyt(&lambda, &c).len() as u64, "{lambda} {c:?}");
                }
            }
        }
    }

    #[test]
    fn permutations() {
        assert_eq!(distinct_permutations(&[1, 1, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[]).len(), 1);
    }

    #[test]
    fn symmetric_and_arithmetic() {
        let a = Character::weyl(&part![2, 1], 3).unwrap();
        assert!(a.is_symmetric());
        let v = Character::weyl(&part![1], 3).unwrap();
        let mut vv = v.mul(&v);
        assert_eq!(vv.dim(), 9);
        vv.sub_scaled(&Character::weyl(&part![2], 3).unwrap(), 1).unwrap();
        assert_eq!(vv, Character::weyl(&part![1, 1], 3).unwrap());
        assert!(vv.sub_scaled(&a, 1).is_err());
        assert_eq!(v.frobenius(3).get(&[3, 0, 0]), 1);
    }

    #[test]
    fn peeling() {
        // ch V⊗V over GL_2 in terms of Schur functions
        let v = Character::weyl(&part![1], 2).unwrap();
        let got = peel_simples(v.mul(&v).dominant(), |mu| Ok(Character::weyl(mu, 2)?.dominant())).unwrap();
        assert_eq!(got, BTreeMap::from([(part![2], 1), (part![1, 1], 1)]));
    }
}
