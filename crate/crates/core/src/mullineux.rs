//! The Mullineux involution on p-regular partitions.
//!
//! Two independent algorithms are implemented and every evaluation runs both:
//!
//! * the classical symbol algorithm: strip p-rims to get the Mullineux symbol,
//!   transform each column `(a, r)` to `(a, a - r + ε)`, and rebuild the image
//!   from the innermost column outwards;
//! * a step-count construction: at each step the p-rim is stripped except for
//!   the leftmost p-rim box of every row, and that box is also taken from the
//!   last row when p does not divide the p-rim size. The number of boxes removed
//!   at step i is the i-th part of `M_p(λ)′`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MullineuxStep {
    pub before: Partition,
    pub removed: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MullineuxTrace {
    pub input: Partition,
    pub p: u32,
    pub steps: Vec<MullineuxStep>,
    /// `M_p(input)`.
    pub output: Partition,
    /// `M_p(input)′`; its parts are the step counts, so its length is the number of steps.
    pub output_conjugate: Partition,
}

fn check_regular(lambda: &Partition, p: u32) -> Result<()> {
    crate::gf::check_prime(p)?;
    if !lambda.is_p_regular(p) {
        return Err(Error::NotRegular(lambda.clone(), p));
    }
    Ok(())
}

fn p_rim(lambda: &Partition, p: u32) -> Vec<(usize, usize)> {
    lambda.rim_segments(p).into_iter().flatten().collect()
}

/// The Mullineux symbol: one column `(|p-rim|, #rows)` per stripping step.
pub fn mullineux_symbol(lambda: &Partition, p: u32) -> Result<Vec<(u32, u32)>> {
    check_regular(lambda, p)?;
    let mut cur = lambda.clone();
    let mut sym = Vec::new();
    while !cur.is_empty() {
        let rim = p_rim(&cur, p);
        sym.push((rim.len() as u32, cur.len() as u32));
        cur = cur.remove_boxes(&rim)?;
    }
    Ok(sym)
}

/// Partitions with exactly `rows` parts, of total size `size`, containing `inner`.
fn containing(inner: &Partition, rows: usize, size: u32) -> Vec<Partition> {
    fn go(i: usize, rows: usize, rem: u32, max: u32, inner: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == rows {
            if rem == 0 {
                out.push(Partition::new(cur.clone()).expect("decreasing"));
            }
            return;
        }
        let lo = inner.part(i).max(1);
        // later rows need at least one box each and their inner parts
        let later_min: u32 = (i + 1..rows).map(|k| inner.part(k).max(1)).sum();
        if rem < later_min {
            return;
        }
        let hi = max.min(rem - later_min);
        for x in lo..=hi {
            cur.push(x);
            go(i + 1, rows, rem - x, x, inner, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if inner.len() > rows {
        return out;
    }
    go(0, rows, size, size, inner, &mut Vec::new(), &mut out);
    out
}

/// Classical Mullineux map via symbols.
pub fn mullineux_classical(lambda: &Partition, p: u32) -> Result<Partition> {
    let sym = mullineux_symbol(lambda, p)?;
    let mut cur = Partition::empty();
    for &(a, r) in sym.iter().rev() {
        let eps = u32::from(a % p != 0);
        let s = (a + eps)
            .checked_sub(r)
            .ok_or_else(|| Error::internal(format!("bad symbol column ({a},{r}) for {lambda}")))?;
        let mut found = Vec::new();
        for q in containing(&cur, s as usize, cur.size() + a) {
            if !q.is_p_regular(p) {
                continue;
            }
            let rim = p_rim(&q, p);
            if rim.len() as u32 == a && q.remove_boxes(&rim).ok().as_ref() == Some(&cur) {
                found.push(q);
            }
        }
        if found.len() != 1 {
            return Err(Error::internal(format!(
                "symbol column ({a},{s}) over {cur} has {} preimages while mapping {lambda}",
                found.len()
            )));
        }
        cur = found.pop().unwrap();
    }
    Ok(cur)
}

/// Step-count construction; returns the trace whose counts are the parts of `M_p(λ)′`.
pub fn mullineux_steps(lambda: &Partition, p: u32) -> Result<Vec<MullineuxStep>> {
    check_regular(lambda, p)?;
    let mut cur = lambda.clone();
    let mut steps = Vec::new();
    while !cur.is_empty() {
        let rim = p_rim(&cur, p);
        let mut per_row = vec![0u32; cur.len()];
        for &(i, _) in &rim {
            per_row[i] += 1;
        }
        let mut removed: Vec<u32> = per_row.iter().map(|&c| c.saturating_sub(1)).collect();
        if !(rim.len() as u32).is_multiple_of(p) {
            let last = cur.len() - 1;
            removed[last] = per_row[last];
        }
        let total: u32 = removed.iter().sum();
        let next: Vec<u32> = cur.parts().iter().zip(&removed).map(|(x, r)| x - r).collect();
        let next = Partition::new(next).map_err(|_| {
            Error::internal(format!("step construction left a non-partition from {cur}"))
        })?;
        steps.push(MullineuxStep { before: cur, removed: total });
        if total == 0 {
            return Err(Error::internal(format!("step construction stalled on {lambda}")));
        }
        cur = next;
    }
    Ok(steps)
}

pub fn mullineux_trace(lambda: &Partition, p: u32) -> Result<MullineuxTrace> {
    let classical = mullineux_classical(lambda, p)?;
    let steps = mullineux_steps(lambda, p)?;
    let counts: Vec<u32> = steps.iter().map(|s| s.removed).collect();
    let from_steps = Partition::new(counts.clone())
        .map_err(|_| Error::internal(format!("step counts {counts:?} for {lambda} are not a partition")))?;
    if from_steps != classical.conjugate() {
        return Err(Error::internal(format!(
            "algorithm disagreement on {lambda} at p={p}: classical {classical}, steps give {from_steps}′"
        )));
    }
    Ok(MullineuxTrace {
        input: lambda.clone(),
        p,
        steps,
        output: classical,
        output_conjugate: from_steps,
    })
}

/// `M_p(λ)`, computed by both algorithms which must agree.
pub fn mullineux(lambda: &Partition, p: u32) -> Result<Partition> {
    Ok(mullineux_trace(lambda, p)?.output)
}

/// `M_p(λ)′`, always p-restricted.
pub fn mullineux_conjugate(lambda: &Partition, p: u32) -> Result<Partition> {
    Ok(mullineux_trace(lambda, p)?.output_conjugate)
}

/// `⌈λ_1/(p−1)⌉` for partitions whose consecutive differences are all at least `p − 1`.
pub fn predicted_length(lambda: &Partition, p: u32) -> Result<usize> {
    crate::gf::check_prime(p)?;
    if lambda.is_empty() {
        return Err(Error::Hypotheses("the last part must be positive".into()));
    }
    for i in 0..lambda.len() - 1 {
        if lambda.part(i) - lambda.part(i + 1) < p - 1 {
            return Err(Error::Hypotheses(format!(
                "parts {} and {} of {lambda} differ by less than {}",
                i + 1,
                i + 2,
                p - 1
            )));
        }
    }
    let predicted = lambda.part(0).div_ceil(p - 1) as usize;
    let actual = mullineux_conjugate(lambda, p)?.len();
    if predicted != actual {
        return Err(Error::internal(format!(
            "length law fails for {lambda} at p={p}: predicted {predicted}, got {actual}"
        )));
    }
    Ok(predicted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::partition::partitions;

    #[test]
    fn known_values() {
        assert_eq!(mullineux(&part![5], 3).unwrap(), part![3, 2]);
        assert_eq!(mullineux(&part![8, 4], 3).unwrap(), part![4, 4, 2, 2]);
        assert_eq!(mullineux(&part![3, 2, 1], 3).unwrap(), part![5, 1]);
        assert_eq!(mullineux_conjugate(&part![5], 3).unwrap(), part![2, 2, 1]);
        assert_eq!(mullineux_conjugate(&part![3, 2, 1], 3).unwrap(), part![2, 1, 1, 1, 1]);
        assert_eq!(mullineux_conjugate(&part![8, 4], 3).unwrap(), part![4, 4, 2, 2]);
        assert_eq!(mullineux(&part![2], 3).unwrap(), part![1, 1]);
    }

    #[test]
    fn identity_at_two() {
        for d in 0..=12 {
            for q in partitions(d).into_iter().filter(|q| q.is_p_regular(2)) {
                assert_eq!(mullineux(&q, 2).unwrap(), q);
            }
        }
    }

    #[test]
    fn singular_input() {
        assert!(matches!(mullineux(&part![4, 4, 4], 3), Err(Error::NotRegular(..))));
        assert!(mullineux(&part![2], 4).is_err());
    }

    #[test]
    fn symbol_of_five() {
        // (5) at p=3: rim (5) -> p-rim of 3 boxes, leaving (2), then (2) itself
        assert_eq!(mullineux_symbol(&part![5], 3).unwrap(), vec![(3, 1), (2, 1)]);
    }

    #[test]
    fn trace_bookkeeping() {
        let t = mullineux_trace(&part![8, 4], 3).unwrap();
        assert_eq!(t.steps.len(), t.output_conjugate.len());
        assert_eq!(t.steps.iter().map(|s| s.removed).sum::<u32>(), 12);
        assert_eq!(t.steps[0].before, part![8, 4]);
    }

    #[test]
    fn predicted_lengths() {
        assert_eq!(predicted_length(&part![8, 4], 3).unwrap(), 4);
        for p in [2, 3, 5, 7] {
            assert_eq!(predicted_length(&Partition::from_composition(&[p - 1]), p).unwrap(), 1);
        }
        assert_eq!(predicted_length(&part![8, 4], 5).unwrap(), 2);
        assert!(matches!(predicted_length(&part![3, 2], 3), Err(Error::Hypotheses(_))));
    }
}
