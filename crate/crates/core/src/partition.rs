//! Partitions and the box combinatorics used by the Mullineux map.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition with trailing zeros stripped.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Normalizes `parts` (drops zeros); fails if the parts are not weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        Ok(Self(parts))
    }

    /// Sorts an arbitrary composition into a partition.
    pub fn from_composition(c: &[u32]) -> Self {
        let mut v: Vec<u32> = c.iter().copied().filter(|&x| x > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The i-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn padded(&self, n: usize) -> Vec<u32> {
        assert!(self.len() <= n, "{self} has more than {n} parts");
        let mut v = self.0.clone();
        v.resize(n, 0);
        v
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&x| x >= j).count() as u32).collect())
    }

    /// No nonzero part value occurs p or more times.
    pub fn is_p_regular(&self, p: u32) -> bool {
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i..].iter().take_while(|&&x| x == self.0[i]).count();
            if j as u32 >= p {
                return false;
            }
            i += j;
        }
        true
    }

    /// All consecutive differences, including the last part, are below p.
    pub fn is_p_restricted(&self, p: u32) -> bool {
        (0..self.len()).all(|i| self.part(i) - self.part(i + 1) < p)
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.clone(), other.clone()));
        }
        Ok(self.dominates_unchecked(other))
    }

    pub(crate) fn dominates_unchecked(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Adds `c` to each of the first `n` coordinates.
    pub fn add_columns(&self, n: usize, c: u32) -> Partition {
        Partition(self.padded(n).into_iter().map(|x| x + c).filter(|&x| x > 0).collect())
    }

    /// Boxes (row, col) with (row+1, col+1) outside the diagram, from top-right to bottom-left.
    pub fn rim(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let lo = self.part(i + 1).saturating_sub(1) as usize;
            for j in (lo..self.part(i) as usize).rev() {
                out.push((i, j));
            }
        }
        out
    }

    /// The p-segments making up the p-rim.
    ///
    /// Each segment takes the next p rim boxes (fewer only at the end of the rim).
    /// The following segment starts at the first rim box in a row strictly below
    /// the row of the previous segment's last box.
    pub fn rim_segments(&self, p: u32) -> Vec<Vec<(usize, usize)>> {
        let rim = self.rim();
        let p = p as usize;
        let mut segs = Vec::new();
        let mut start = 0;
        while start < rim.len() {
            let end = (start + p).min(rim.len());
            let seg = rim[start..end].to_vec();
            let last_row = seg[seg.len() - 1].0;
            segs.push(seg);
            match rim[end..].iter().position(|b| b.0 > last_row) {
                Some(k) => start = end + k,
                None => break,
            }
        }
        segs
    }

    /// Removes the given boxes, which must leave a partition.
    pub fn remove_boxes(&self, boxes: &[(usize, usize)]) -> Result<Partition> {
        let mut v = self.0.clone();
        for &(i, _) in boxes {
            v[i] -= 1;
        }
        Partition::new(v)
    }
}

impl Ord for Partition {
    /// Lexicographic on parts; a larger partition comes later.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))?;
        Partition::new(parts)
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec()).expect("weakly decreasing parts")
    }
}

impl<const N: usize> From<[u32; N]> for Partition {
    fn from(parts: [u32; N]) -> Self {
        Partition::new(parts.to_vec()).expect("weakly decreasing parts")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for literal partitions in code and tests.
#[macro_export]
macro_rules! part {
    () => { $crate::partition::Partition::empty() };
    ($($x:expr),+ $(,)?) => { $crate::partition::Partition::from([$($x),+]) };
}

/// All partitions of `d`, in descending lexicographic order.
pub fn partitions(d: u32) -> Vec<Partition> {
    enumerate_partitions(d as usize, d)
}

/// Λ⁺(n, d): partitions of `d` with at most `n` parts, in descending lexicographic order.
///
/// Descending lex refines reverse dominance, so dominant labels come first.
pub fn enumerate_partitions(n: usize, d: u32) -> Vec<Partition> {
    fn go(rem: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for k in (1..=max.min(rem)).rev() {
            // the remaining slots must be able to absorb what is left
            if (k as u64) * (slots as u64) < rem as u64 {
                break;
            }
            cur.push(k);
            go(rem - k, k, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, n, &mut Vec::new(), &mut out);
    out
}

/// All compositions of `d` into exactly `n` nonnegative parts, in descending lex order.
pub fn compositions(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(rem);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=rem).rev() {
            cur.push(k);
            go(rem - k, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(d, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn conjugates() {
        assert_eq!(part![5].conjugate(), part![1, 1, 1, 1, 1]);
        assert_eq!(part![4, 4, 2, 2].conjugate(), part![4, 4, 2, 2]);
        assert_eq!(part![8, 4].conjugate(), part![2, 2, 2, 2, 1, 1, 1, 1]);
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn regularity_and_restrictedness() {
        assert!(!part![4, 4, 4].is_p_regular(3));
        assert!(part![8, 4].is_p_regular(3));
        assert!(!part![2, 2, 1].is_p_regular(2));
        assert!(part![2, 1, 1, 1, 1].is_p_restricted(3));
        assert!(!part![5, 1].is_p_restricted(3));
        assert!(part![5, 3, 1].is_p_restricted(7));
    }

    #[test]
    fn dominance() {
        assert!(part![8, 4].dominates(&part![6, 6]).unwrap());
        assert!(!part![6, 6].dominates(&part![8, 4]).unwrap());
        for q in partitions(7) {
            assert!(part![7].dominates(&q).unwrap());
        }
        assert!(part![3].dominates(&part![2]).is_err());
    }

    #[test]
    fn enumeration() {
        let l = enumerate_partitions(3, 5);
        let expect: Vec<Partition> =
            vec![part![5], part![4, 1], part![3, 2], part![3, 1, 1], part![2, 2, 1]];
        assert_eq!(l, expect);
        assert_eq!(enumerate_partitions(3, 12).len(), 19);
        assert_eq!(enumerate_partitions(1, 9), vec![part![9]]);
        assert_eq!(enumerate_partitions(2, 0), vec![Partition::empty()]);
        assert_eq!(partitions(10).len(), 42);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // filter all compositions of d down to weakly decreasing ones
        for n in 1..=4 {
            for d in 0..=9 {
                let brute: Vec<Partition> = compositions(n, d)
                    .into_iter()
                    .filter(|c| c.windows(2).all(|w| w[0] >= w[1]))
                    .map(|c| Partition::new(c).unwrap())
                    .collect();
                assert_eq!(enumerate_partitions(n, d), brute, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn segments() {
        for p in [2u32, 3, 5] {
            let row = Partition::from_composition(&[p]);
            let s = row.rim_segments(p);
            assert_eq!(s.len(), 1);
            assert_eq!(s[0].len(), p as usize);
        }
        assert_eq!(part![2, 1].rim_segments(3), vec![vec![(0, 1), (0, 0), (1, 0)]]);
        // the second segment restarts in row 1 after a full segment ending in row 0
        let s = part![4, 1].rim_segments(3);
        assert_eq!(s, vec![vec![(0, 3), (0, 2), (0, 1)], vec![(1, 0)]]);
        assert_eq!(part![4, 1].rim().len(), 5);
    }

    #[test]
    fn parse_and_display() {
        let q: Partition = "8,4".parse().unwrap();
        assert_eq!(q, part![8, 4]);
        assert_eq!(q.to_string(), "8,4");
        assert_eq!("8,4,0,0".parse::<Partition>().unwrap(), part![8, 4]);
        assert!("4,8".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&q).unwrap(), "[8,4]");
    }

    #[test]
    fn conjugate_swaps_regular_and_restricted() {
        for d in 0..=20 {
            for q in partitions(d) {
                assert_eq!(q.conjugate().conjugate(), q);
                for p in [2, 3, 5, 7] {
                    assert_eq!(q.is_p_restricted(p), q.conjugate().is_p_regular(p));
                }
            }
        }
    }

    #[test]
    fn dominating_partitions_have_few_parts() {
        for n in 1..=4 {
            for d in 0..=12 {
                let all = partitions(d);
                for s in enumerate_partitions(n, d) {
                    for m in &all {
                        if m.dominates(&s).unwrap() {
                            assert!(m.len() <= n, "{m} dominates {s}");
                        }
                    }
                }
            }
        }
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1u32..8, 0..8).prop_map(|v| Partition::from_composition(&v))
    }

    proptest! {
        #![proptest_config(crate::prop_config(256))]

        #[test]
        fn segments_cover_part_of_rim(q in arb_partition(), p in prop::sample::select(vec![2u32, 3, 5])) {
            let rim = q.rim();
            let segs = q.rim_segments(p);
            let n = segs.len();
            for (k, s) in segs.iter().enumerate() {
                if k + 1 < n {
                    prop_assert_eq!(s.len(), p as usize);
                }
                for b in s {
                    prop_assert!(rim.contains(b));
                }
            }
            if !q.is_empty() {
                prop_assert_eq!(segs[0][0], rim[0]);
            }
        }

        #[test]
        fn rim_boxes_are_border(q in arb_partition()) {
            for (i, j) in q.rim() {
                prop_assert!(q.part(i) as usize > j);
                prop_assert!(q.part(i + 1) as usize <= j + 1);
            }
            let expected = if q.is_empty() { 0 } else { q.part(0) as usize + q.len() - 1 };
            prop_assert_eq!(q.rim().len(), expected);
        }
    }
}
