//! SL_n dominant weights in fundamental-weight coordinates and their partition lifts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Coefficients of ω_1, …, ω_{n−1} for SL_n.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominantWeight {
    pub coords: Vec<u32>,
}

impl DominantWeight {
    pub fn new(coords: Vec<u32>) -> Self {
        Self { coords }
    }

    pub fn zero(n: usize) -> Self {
        Self { coords: vec![0; n.saturating_sub(1)] }
    }

    /// (p−1)ρ for SL_n.
    pub fn steinberg(n: usize, p: u32) -> Self {
        Self { coords: vec![p - 1; n.saturating_sub(1)] }
    }

    /// The n of SL_n.
    pub fn n(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Whether every coordinate is below `p^r`.
    pub fn is_restricted(&self, p: u32, r: u32) -> bool {
        let q = p.pow(r);
        self.coords.iter().all(|&c| c < q)
    }

    /// −w_0 λ: the coordinates reversed.
    pub fn dual(&self) -> Self {
        Self { coords: self.coords.iter().rev().copied().collect() }
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for DominantWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Self::default());
        }
        let coords = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidWeight(format!("{s:?}: {e}")))?;
        Ok(Self { coords })
    }
}

/// μ_j = λ_j + … + λ_{n−1}, with μ_n = 0.
pub fn weight_to_partition(lambda: &DominantWeight) -> Partition {
    let c = &lambda.coords;
    let parts: Vec<u32> = (0..c.len()).map(|j| c[j..].iter().sum()).collect();
    Partition::new(parts).expect("suffix sums decrease")
}

/// coords_i = μ_i − μ_{i+1} after padding μ to n parts; constant partitions go to 0.
pub fn partition_to_weight(mu: &Partition, n: usize) -> Result<DominantWeight> {
    if mu.len() > n {
        return Err(Error::TooManyParts { partition: mu.clone(), n });
    }
    let v = mu.padded(n);
    Ok(DominantWeight { coords: (0..n.saturating_sub(1)).map(|i| v[i] - v[i + 1]).collect() })
}

/// λ̂ = 2(p^r − 1)ρ + w_0λ lifted to the n-part partition
/// μ_i = 2(p^r − 1)(n − i) + λ_{n−i+1}.
pub fn hat_partition(lambda: &DominantWeight, p: u32, r: u32, n: usize) -> Result<Partition> {
    if lambda.n() != n {
        return Err(Error::InvalidWeight(format!("{lambda} is not a weight of SL_{n}")));
    }
    if !lambda.is_restricted(p, r) {
        return Err(Error::InvalidWeight(format!("{lambda} is not {p}^{r}-restricted")));
    }
    let q1 = p.pow(r) - 1;
    let base = weight_to_partition(lambda).padded(n);
    let parts: Vec<u32> = (1..=n).map(|i| 2 * q1 * (n - i) as u32 + base[n - i]).collect();
    Partition::new(parts)
}

/// X_1 for SL_n: all (n−1)-tuples with entries below p, in lexicographic order.
pub fn enumerate_x1(n: usize, p: u32) -> Vec<DominantWeight> {
    let k = n.saturating_sub(1);
    let mut out = vec![DominantWeight::new(Vec::new())];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..p).map(move |c| {
                    let mut v = w.coords.clone();
                    v.push(c);
                    DominantWeight::new(v)
                })
            })
            .collect();
    }
    out
}

/// ⟨λ, α_0^∨⟩ in type A: the sum of the coordinates.
pub fn alpha0_pairing(lambda: &DominantWeight) -> u32 {
    lambda.coords.iter().sum()
}

/// For λ ∈ X_1 of SL_{n+1} with λ_n > 0, the SL_{m+1} weight
/// (p−1+λ_1, …, p−1+λ_{n−1}, λ_n, 0, …, 0).
pub fn partial_steinberg_weight(lambda: &DominantWeight, p: u32, m: usize) -> Result<DominantWeight> {
    let n = lambda.coords.len();
    if n == 0 || lambda.coords[n - 1] == 0 {
        return Err(Error::Hypotheses(format!("the last coordinate of {lambda} must be positive")));
    }
    if !lambda.is_restricted(p, 1) {
        return Err(Error::Hypotheses(format!("{lambda} is not {p}-restricted")));
    }
    let t = alpha0_pairing(lambda);
    let bound = t.div_ceil(p - 1) as usize + n - 1;
    if m < bound {
        return Err(Error::Hypotheses(format!(
            "need m >= ceil({t}/{}) + {} = {bound}, got m = {m}",
            p - 1,
            n - 1
        )));
    }
    let mut coords: Vec<u32> = lambda.coords[..n - 1].iter().map(|&x| x + p - 1).collect();
    coords.push(lambda.coords[n - 1]);
    coords.resize(m, 0);
    Ok(DominantWeight::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    fn w(c: &[u32]) -> DominantWeight {
        DominantWeight::new(c.to_vec())
    }

    #[test]
    fn lifts() {
        assert_eq!(weight_to_partition(&w(&[1, 1, 1])), part![3, 2, 1]);
        assert_eq!(weight_to_partition(&w(&[5, 0])), part![5]);
        assert_eq!(weight_to_partition(&w(&[0, 1])), part![1, 1]);
        assert_eq!(partition_to_weight(&part![2, 2, 1], 3).unwrap(), w(&[0, 1]));
        assert_eq!(partition_to_weight(&part![4, 4, 4], 3).unwrap(), w(&[0, 0]));
        assert_eq!(partition_to_weight(&part![7], 1).unwrap(), w(&[]));
        assert!(partition_to_weight(&part![1, 1, 1, 1], 3).is_err());
    }

    #[test]
    fn hats() {
        assert_eq!(hat_partition(&w(&[0, 0]), 3, 1, 3).unwrap(), part![8, 4]);
        assert_eq!(hat_partition(&w(&[1]), 3, 1, 2).unwrap(), part![4, 1]);
        for (n, p) in [(2usize, 3u32), (3, 3), (4, 5)] {
            let h = hat_partition(&DominantWeight::steinberg(n, p), p, 1, n).unwrap();
            for i in 0..n - 1 {
                assert_eq!(h.part(i) - h.part(i + 1), p - 1);
            }
        }
        assert!(hat_partition(&w(&[3, 0]), 3, 1, 3).is_err());
        assert_eq!(hat_partition(&w(&[3, 0]), 3, 2, 3).unwrap(), part![32, 16, 3]);
    }

    #[test]
    fn restricted_weights() {
        assert_eq!(enumerate_x1(3, 3).len(), 9);
        assert_eq!(enumerate_x1(2, 5), (0..5).map(|c| w(&[c])).collect::<Vec<_>>());
        assert_eq!(enumerate_x1(4, 2).len(), 8);
        assert_eq!(enumerate_x1(1, 3), vec![w(&[])]);
    }

    #[test]
    fn pairing() {
        assert_eq!(alpha0_pairing(&w(&[1, 1, 1])), 3);
        assert_eq!(alpha0_pairing(&w(&[0])), 0);
        assert_eq!(alpha0_pairing(&DominantWeight::steinberg(3, 3)), 4);
    }

    #[test]
    fn partial_steinberg() {
        assert_eq!(partial_steinberg_weight(&w(&[0, 1]), 3, 2).unwrap(), w(&[2, 1]));
        assert_eq!(partial_steinberg_weight(&w(&[1, 1]), 3, 3).unwrap(), w(&[3, 1, 0]));
        assert_eq!(partial_steinberg_weight(&w(&[2]), 3, 1).unwrap(), w(&[2]));
        let err = partial_steinberg_weight(&w(&[2, 2]), 3, 2).unwrap_err();
        assert!(err.to_string().contains("= 3"), "{err}");
        assert!(partial_steinberg_weight(&w(&[1, 0]), 3, 5).is_err());
    }

    #[test]
    fn round_trip_and_restrictedness() {
        for n in 1..=5 {
            for p in [2u32, 3, 5] {
                for l in enumerate_x1(n, p) {
                    let q = weight_to_partition(&l);
                    assert_eq!(partition_to_weight(&q, n).unwrap(), l);
                    assert!(q.is_p_restricted(p));
                }
            }
        }
    }

    #[test]
    fn hats_are_strictly_decreasing() {
        for n in 1..=4 {
            for p in [2u32, 3, 5] {
                for l in enumerate_x1(n, p) {
                    let h = hat_partition(&l, p, 1, n).unwrap();
                    let v = h.padded(n);
                    assert!(v.windows(2).all(|x| x[0] > x[1]) || n == 1);
                    assert!(h.is_p_regular(p));
                    let expect = (p - 1) * (n * (n - 1)) as u32 + weight_to_partition(&l).size();
                    assert_eq!(h.size(), expect);
                }
            }
        }
    }
}
