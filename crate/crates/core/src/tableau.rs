//! Semistandard tableaux with prescribed content.

use crate::partition::Partition;

/// Rows of entries, 0-based values.
pub type Tableau = Vec<Vec<u8>>;

/// Ways to add a horizontal strip of `k` boxes to `inner` staying inside `outer`.
fn horizontal_strips(inner: &[u32], outer: &[u32], k: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, rem: u32, inner: &[u32], outer: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == outer.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if i == 0 { outer[0] } else { outer[i].min(inner[i - 1]) };
        let room = cap.saturating_sub(inner[i]);
        for a in 0..=room.min(rem) {
            cur.push(inner[i] + a);
            go(i + 1, rem - a, inner, outer, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, inner, outer, &mut Vec::with_capacity(outer.len()), &mut out);
    out
}

/// All SSYT of shape `shape` whose content is `content` (value v appears `content[v]` times).
pub fn ssyt(shape: &Partition, content: &[u32]) -> Vec<Tableau> {
    let outer = shape.parts().to_vec();
    if content.iter().sum::<u32>() != shape.size() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut t: Tableau = outer.iter().map(|&l| Vec::with_capacity(l as usize)).collect();
    fn go(v: usize, cur: &[u32], outer: &[u32], content: &[u32], t: &mut Tableau, out: &mut Vec<Tableau>) {
        if v == content.len() {
            if cur == outer {
                out.push(t.clone());
            }
            return;
        }
        for next in horizontal_strips(cur, outer, content[v]) {
            for (i, (&a, &b)) in cur.iter().zip(&next).enumerate() {
                for _ in a..b {
                    t[i].push(v as u8);
                }
            }
            go(v + 1, &next, outer, content, t, out);
            for (i, (&a, &b)) in cur.iter().zip(&next).enumerate() {
                let keep = t[i].len() - (b - a) as usize;
                t[i].truncate(keep);
            }
        }
    }
    let start = vec![0u32; outer.len()];
    go(0, &start, &outer, content, &mut t, &mut out);
    out
}

pub fn is_semistandard(t: &Tableau) -> bool {
    for (i, row) in t.iter().enumerate() {
        if row.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        if i > 0 {
            if row.len() > t[i - 1].len() {
                return false;
            }
            if row.iter().zip(&t[i - 1]).any(|(a, b)| a <= b) {
                return false;
            }
        }
    }
    true
}

/// The tableau whose i-th row is filled with the value i.
pub fn canonical(shape: &Partition) -> Tableau {
    shape.parts().iter().enumerate().map(|(i, &l)| vec![i as u8; l as usize]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn small_counts() {
        assert_eq!(ssyt(&part![2, 1], &[1, 1, 1]).len(), 2);
        assert_eq!(ssyt(&part![2, 1], &[2, 1, 0]).len(), 1);
        assert_eq!(ssyt(&part![2, 1], &[0, 1, 2]).len(), 1);
        assert_eq!(ssyt(&part![3], &[1, 1, 1]).len(), 1);
        assert_eq!(ssyt(&part![1, 1, 1], &[1, 1, 1]).len(), 1);
        assert_eq!(ssyt(&part![1, 1, 1], &[2, 1, 0]).len(), 0);
        assert_eq!(ssyt(&part![2, 2], &[1, 1, 1, 1]).len(), 2);
    }

    #[test]
    fn outputs_are_semistandard() {
        for c in crate::partition::compositions(4, 6) {
            for t in ssyt(&part![3, 2, 1], &c) {
                assert!(is_semistandard(&t));
                let mut counts = vec![0u32; 4];
                for row in &t {
                    for &x in row {
                        counts[x as usize] += 1;
                    }
                }
                assert_eq!(counts, c);
            }
        }
    }

    #[test]
    fn canonical_tableau() {
        let t = canonical(&part![3, 1]);
        assert_eq!(t, vec![vec![0, 0, 0], vec![1]]);
        assert_eq!(ssyt(&part![3, 1], &[3, 1]), vec![t]);
    }
}
